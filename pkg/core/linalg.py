"""
Exact linear algebra over the rationals.

Rows are kept as sparse dicts of Python integers (primitive, leading entry
positive). Elimination is fraction-free: two rows are combined with the
cofactors of their pivot gcd, then the content is divided out, so no
denominators appear until kernel vectors are read off at the very end.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exceptions import DimensionMismatch, FieldError
from .tensors import Vector

logger = logging.getLogger(__name__)

IntRow = Dict[int, int]
RowLike = Union[Sequence, Dict[int, Fraction]]
Matrix = Tuple[Tuple[Fraction, ...], ...]


def _as_dict(row: RowLike) -> Dict[int, Fraction]:
    if isinstance(row, dict):
        return {k: v for k, v in row.items() if v}
    return {k: v for k, v in enumerate(row) if v}


def primitive_row(row: RowLike) -> IntRow:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    entries = _as_dict(row)
    if not entries:
        return {}
    denominators = 1
    for value in entries.values():
        d = Fraction(value).denominator
        denominators = denominators * d // gcd(denominators, d)
    ints = {k: int(Fraction(v) * denominators) for k, v in entries.items()}
    return _normalize(ints)


def _normalize(row: IntRow) -> IntRow:
    content = 0
    for value in row.values():
        content = gcd(content, value)
    lead = row[min(row)]
    if lead < 0:
        content = -content
    return {k: v // content for k, v in row.items()}


def _eliminate(row: IntRow, pivot_row: IntRow, col: int) -> IntRow:
    """Combine row with pivot_row so that column col vanishes."""
    a = row[col]
    b = pivot_row[col]
    g = gcd(a, b)
    alpha, beta = a // g, b // g
    out = {k: v * beta for k, v in row.items()}
    for k, v in pivot_row.items():
        total = out.get(k, 0) - alpha * v
        if total:
            out[k] = total
        else:
            out.pop(k, None)
    return out


class EchelonForm:
    """
    Incrementally maintained row echelon form.

    Every stored row has a distinct leading column (its pivot) and is
    primitive; rows are inserted one at a time, so independence of a long
    stream of vectors is decided without materializing a matrix.
    """

    def __init__(self, ncols: Optional[int] = None):
        self.ncols = ncols
        self.rows: Dict[int, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, row: RowLike) -> IntRow:
        """Reduce a row against the stored pivots; returns the remainder."""
        current = primitive_row(row)
        while current:
            lead = min(current)
            pivot_row = self.rows.get(lead)
            if pivot_row is None:
                return current
            current = _eliminate(current, pivot_row, lead)
            if current:
                current = _normalize(current)
        return current

    def insert(self, row: RowLike) -> bool:
        """Add a row; returns True when it was independent of the stored rows."""
        remainder = self.reduce(row)
        if not remainder:
            return False
        if self.ncols is not None and max(remainder) >= self.ncols:
            raise DimensionMismatch(f"column {max(remainder)} outside {self.ncols} columns")
        self.rows[min(remainder)] = remainder
        return True

    def contains(self, row: RowLike) -> bool:
        return not self.reduce(row)

    def reduced_rows(self) -> Dict[int, IntRow]:
        """Reduced echelon form: each pivot column is zero in every other row."""
        rows = {p: dict(r) for p, r in self.rows.items()}
        order = sorted(rows)
        for p in reversed(order):
            pivot_row = rows[p]
            for q in order:
                if q < p and p in rows[q]:
                    rows[q] = _normalize(_eliminate(rows[q], pivot_row, p))
        return rows

    def kernel(self, ncols: Optional[int] = None) -> List[Tuple[Fraction, ...]]:
        """
        Basis of {v : row·v = 0 for every stored row}.

        One vector per free column, with that column set to 1 and the other
        free columns 0.
        """
        ncols = self.ncols if ncols is None else ncols
        if ncols is None:
            raise DimensionMismatch("number of columns unknown")
        rows = self.reduced_rows()
        free = [c for c in range(ncols) if c not in rows]
        basis = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for p, row in rows.items():
                if f in row:
                    v[p] = Fraction(-row[f], row[p])
            basis.append(tuple(v))
        return basis


def echelon(rows: Iterable[RowLike], ncols: Optional[int] = None) -> EchelonForm:
    form = EchelonForm(ncols)
    for row in rows:
        form.insert(row)
    return form


def nullspace(rows: Iterable[RowLike], ncols: Optional[int] = None) -> List[Tuple[Fraction, ...]]:
    """
    Exact kernel basis of the matrix whose rows are given.

    Args:
        rows: Dense sequences or sparse dicts col -> value
        ncols: Column count (required when rows are sparse or there are none)

    Returns:
        Linearly independent vectors spanning {v : Mv = 0}
    """
    rows = list(rows)
    if ncols is None:
        if not rows or isinstance(rows[0], dict):
            raise DimensionMismatch("ncols is required for sparse or empty matrices")
        ncols = len(rows[0])
    for row in rows:
        if not isinstance(row, dict) and len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in a {ncols}-column matrix")
    basis = echelon(rows, ncols).kernel(ncols)
    logger.debug("nullspace: %d rows, %d columns, kernel dimension %d", len(rows), ncols, len(basis))
    return basis


def rank(rows: Iterable[RowLike], ncols: Optional[int] = None) -> int:
    return echelon(rows, ncols).rank


def span_basis(vectors: Sequence[RowLike]) -> List[int]:
    """Indices of a maximal independent subfamily, chosen greedily in order."""
    form = EchelonForm()
    return [i for i, v in enumerate(vectors) if form.insert(v)]


def in_span(vectors: Iterable[RowLike], v: RowLike) -> bool:
    return echelon(vectors).contains(v)


def inverse(rows: Sequence[RowLike], n: int) -> List[Vector]:
    """
    Inverse of an n×n matrix given by (sparse) rows.

    Raises:
        FieldError: the matrix is singular
    """
    form = EchelonForm(2 * n)
    for i, row in enumerate(rows):
        augmented = dict(_as_dict(row))
        augmented[n + i] = Fraction(1)
        form.insert(augmented)
    if form.rank < n or any(p >= n for p in form.rows):
        raise FieldError("matrix is not invertible")
    result: List[Vector] = [dict() for _ in range(n)]
    for p, row in form.reduced_rows().items():
        lead = row[p]
        result[p] = {k - n: Fraction(v, lead) for k, v in row.items() if k >= n}
    return result


# Small dense matrices (representation matrices)

def zero_matrix(n: int, m: Optional[int] = None) -> Matrix:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def as_matrix(values: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in values)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * m
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_combination(terms: Iterable[Tuple[Fraction, Matrix]], n: int, m: Optional[int] = None) -> Matrix:
    """Σ c·M over (c, M) pairs."""
    m = n if m is None else m
    acc = [[Fraction(0)] * m for _ in range(n)]
    for c, mat in terms:
        if not c:
            continue
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if x:
                    acc[i][j] += c * x
    return tuple(tuple(row) for row in acc)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: kron(a, b)[i*p + j][k*q + l] = a[i][k] * b[j][l]."""
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def first_difference(a: Matrix, b: Matrix) -> Optional[Tuple[int, int]]:
    """First (i, j) where a and b differ, or None."""
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return (i, j)
    if len(a) != len(b):
        return (min(len(a), len(b)), 0)
    return None
