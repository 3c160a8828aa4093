"""
Finite groups from Cayley tables or permutation generators, and their
function algebras F(G) and group algebras kG.
"""
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from core.conf import get_setting
from core.exceptions import GroupError, SizeGuardError, SpecFileError
from core.hopf import HopfAlgebra, make_hopf_algebra
from core.serializers import validated

from .serializers import GROUP_FORMAT, GROUP_VERSION, GroupSpecSerializer

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

_CYCLE = re.compile(r'\(([^()]*)\)')


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group given by its Cayley table.

    table[i][j] is the index of g_i g_j. Groups built from permutations keep
    the permutations (0-based image tuples) sorted lexicographically, so the
    identity has index 0.
    """
    table: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    identity: int = 0
    name: str = ''
    permutations: Optional[Tuple[Permutation, ...]] = field(default=None, compare=False, repr=False)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'G'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def inverse(self) -> Tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conjugate(self, h: int, g: int) -> int:
        """h g h^{-1}"""
        return self.table[self.table[h][g]][self.inverse[h]]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"{self} has no element {label!r}", label) from None


def validate_table(table: Sequence[Sequence[int]]) -> int:
    """
    Check the group axioms on a Cayley table.

    Args:
        table: Square index matrix

    Returns:
        Index of the identity element

    Raises:
        GroupError: with the failing index (tuple) as witness
    """
    n = len(table)
    if n == 0:
        raise GroupError("empty Cayley table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"row {i} has {len(row)} entries, expected {n}", i)
        for j, k in enumerate(row):
            if not 0 <= k < n:
                raise GroupError(f"product ({i}, {j}) = {k} lies outside the table", (i, j))
    identity = next(
        (e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))),
        None,
    )
    if identity is None:
        raise GroupError("no identity element")
    for g in range(n):
        if not any(table[g][h] == identity and table[h][g] == identity for h in range(n)):
            raise GroupError(f"element {g} has no inverse", g)
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupError(f"associativity fails at {(a, b, c)}", (a, b, c))
    return identity


def group_from_table(
    table: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    name: str = '',
    max_order: Optional[int] = None,
) -> FiniteGroup:
    _check_order(len(table), max_order)
    identity = validate_table(table)
    labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(len(table)))
    if len(labels) != len(table):
        raise GroupError(f"{len(labels)} labels for a group of order {len(table)}")
    return FiniteGroup(
        table=tuple(tuple(row) for row in table),
        labels=labels,
        identity=identity,
        name=name,
    )


def _check_order(order: int, max_order: Optional[int]) -> None:
    bound = get_setting('HOPFDOUBLE_MAX_GROUP_ORDER') if max_order is None else max_order
    if order > bound:
        raise SizeGuardError(f"group order exceeds the size guard {bound}", order)


# Permutations

def compose(p: Permutation, q: Permutation) -> Permutation:
    """p∘q: apply q first."""
    return tuple(p[i] for i in q)


def cycle_label(p: Permutation) -> str:
    """Cycle notation with 1-based points; 'e' for the identity."""
    wide = len(p) > 9
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = []
        k = start
        while k not in seen:
            seen.add(k)
            cycle.append(str(k + 1))
            k = p[k]
        cycles.append('(' + (' ' if wide else '').join(cycle) + ')')
    return ''.join(cycles) or 'e'


def _split_generators(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
            if depth < 0:
                raise SpecFileError(f"unbalanced parentheses in {text!r}", location='generators')
        if ch == ',' and depth == 0:
            parts.append(''.join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise SpecFileError(f"unbalanced parentheses in {text!r}", location='generators')
    parts.append(''.join(current))
    return [p.strip() for p in parts if p.strip()]


def parse_cycles(text: str) -> List[List[List[int]]]:
    """
    Parse generators like "(12),(123)" or "(1 2)(3 4), (1 2 3 4 5 6 7 8 9 10)".

    Returns:
        One list of 0-based cycles per generator
    """
    generators = []
    for position, part in enumerate(_split_generators(text)):
        location = f"generators[{position}]"
        if part == 'e':
            generators.append([])
            continue
        if _CYCLE.sub('', part).strip():
            raise SpecFileError(f"expected cycles like (12), got {part!r}", location=location)
        cycles = []
        for body in _CYCLE.findall(part):
            body = body.strip()
            tokens = re.split(r'[\s,]+', body) if re.search(r'[\s,]', body) else list(body)
            if not all(t.isdigit() and int(t) > 0 for t in tokens if t):
                raise SpecFileError(f"cycle points must be positive integers in {part!r}", location=location)
            points = [int(t) - 1 for t in tokens if t]
            if len(set(points)) != len(points):
                raise SpecFileError(f"repeated point in cycle ({body})", location=location)
            cycles.append(points)
        generators.append(cycles)
    if not generators:
        raise SpecFileError("no generators given", location='generators')
    return generators


def cycles_to_permutation(cycles: List[List[int]], degree: int) -> Permutation:
    """Product of cycles, the rightmost applied first."""
    result = tuple(range(degree))
    for cycle in cycles:
        image = list(range(degree))
        for k, point in enumerate(cycle):
            image[point] = cycle[(k + 1) % len(cycle)]
        result = compose(result, tuple(image))
    return result


def group_from_permutations(
    generators: Sequence[Permutation],
    name: str = '',
    max_order: Optional[int] = None,
) -> FiniteGroup:
    """Close a set of permutations under composition (breadth-first)."""
    bound = get_setting('HOPFDOUBLE_MAX_GROUP_ORDER') if max_order is None else max_order
    degree = max((len(g) for g in generators), default=1)
    gens = [tuple(g) + tuple(range(len(g), degree)) for g in generators]
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = compose(p, g)
            if q not in seen:
                seen.add(q)
                if len(seen) > bound:
                    raise SizeGuardError(f"group order exceeds the size guard {bound}", len(seen))
                queue.append(q)
    elements = tuple(sorted(seen))
    position = {p: i for i, p in enumerate(elements)}
    table = tuple(tuple(position[compose(p, q)] for q in elements) for p in elements)
    logger.debug("closed %d generators of degree %d to order %d", len(gens), degree, len(elements))
    return FiniteGroup(
        table=table,
        labels=tuple(cycle_label(p) for p in elements),
        identity=0,
        name=name,
        permutations=elements,
    )


def group_from_generators(text: str, name: str = '', max_order: Optional[int] = None) -> FiniteGroup:
    parsed = parse_cycles(text)
    degree = max((p + 1 for cycles in parsed for cycle in cycles for p in cycle), default=1)
    perms = [cycles_to_permutation(cycles, degree) for cycles in parsed]
    return group_from_permutations(perms, name=name or text, max_order=max_order)


def load_group(source: Union[str, Dict[str, Any]], name: str = '', max_order: Optional[int] = None) -> FiniteGroup:
    """
    Build a validated group from a generator string or a parsed group file.

    Args:
        source: "(12),(123)"-style generators, or a dict with either a
            Cayley "table" (plus optional "elements") or "generators"
        name: Display name
        max_order: Size guard override

    Returns:
        FiniteGroup

    Raises:
        SpecFileError: malformed input
        GroupError: the table violates a group axiom
        SizeGuardError: order above the guard
    """
    if isinstance(source, str):
        return group_from_generators(source, name=name, max_order=max_order)
    attrs = validated(GroupSpecSerializer(data=source))
    name = name or attrs.get('name', '')
    if attrs.get('generators'):
        return group_from_generators(attrs['generators'], name=name, max_order=max_order)
    return group_from_table(attrs['table'], attrs.get('elements'), name=name, max_order=max_order)


def cyclic_group(n: int, generator: str = 'g') -> FiniteGroup:
    labels = ['e', generator] + [f"{generator}^{k}" for k in range(2, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(table, labels[:n], name=f"Z{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return group_from_permutations([tuple(range(max(n, 1)))], name=f"S{n}")
    swap = (1, 0) + tuple(range(2, n))
    shift = tuple((i + 1) % n for i in range(n))
    return group_from_permutations([swap, shift], name=f"S{n}")


# Hopf algebras of a group

def function_hopf(G: FiniteGroup, verify: bool = True) -> HopfAlgebra:
    """
    F(G) on the basis δ_g: pointwise product, Δδ_g = Σ_h δ_h⊗δ_{h^{-1}g},
    ε(δ_g) = [g = e], S(δ_g) = δ_{g^{-1}}.
    """
    n = G.order
    inv = G.inverse
    return make_hopf_algebra(
        dim=n,
        mult=[(g, g, g, 1) for g in range(n)],
        comult=[(g, h, G.multiply(inv[h], g), 1) for g in range(n) for h in range(n)],
        counit=[1 if g == G.identity else 0 for g in range(n)],
        antipode=[{inv[g]: 1} for g in range(n)],
        unit=[1] * n,
        basis_labels=G.labels,
        name=f"F({G.name or 'G'})",
        verify=verify,
    )


def group_algebra(G: FiniteGroup, verify: bool = True) -> HopfAlgebra:
    """kG: group product, Δg = g⊗g, ε(g) = 1, S(g) = g^{-1}."""
    n = G.order
    return make_hopf_algebra(
        dim=n,
        mult=[(g, h, G.multiply(g, h), 1) for g in range(n) for h in range(n)],
        comult=[(g, g, g, 1) for g in range(n)],
        counit=[1] * n,
        antipode=[{G.inverse[g]: 1} for g in range(n)],
        unit=[1 if g == G.identity else 0 for g in range(n)],
        basis_labels=G.labels,
        name=f"k{G.name or 'G'}",
        verify=verify,
    )


def group_to_spec(G: FiniteGroup) -> Dict[str, Any]:
    return {
        'format': GROUP_FORMAT,
        'version': GROUP_VERSION,
        'name': G.name,
        'elements': list(G.labels),
        'table': [list(row) for row in G.table],
    }
