"""
Sparse containers for structure constants and algebra coordinates.

Vectors are dicts index -> Fraction with no stored zeros. Tensor-square
elements (of F⊗F, D⊗D, ...) are dicts (i, j) -> Fraction.
"""
import logging
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .exceptions import DimensionMismatch
from .scalars import QQ, ScalarLike

logger = logging.getLogger(__name__)

Vector = Dict[int, Fraction]
TensorVector = Dict[Tuple[int, ...], Fraction]


def clean(v: dict) -> dict:
    """Drop zero coordinates."""
    return {k: c for k, c in v.items() if c != 0}


def accumulate(target: dict, key, value: Fraction) -> None:
    """target[key] += value, removing the key when the sum vanishes."""
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def axpy(target: dict, scale: Fraction, v: dict) -> dict:
    """In place target += scale * v; returns target."""
    if scale:
        for k, c in v.items():
            accumulate(target, k, scale * c)
    return target


def vec_add(*vectors: dict) -> dict:
    out: dict = {}
    for v in vectors:
        axpy(out, 1, v)
    return out


def vec_sub(u: dict, v: dict) -> dict:
    return axpy(dict(u), -1, v)


def vec_scale(v: dict, scale: Fraction) -> dict:
    if not scale:
        return {}
    return {k: scale * c for k, c in v.items()}


def basis_vector(index: int) -> Vector:
    return {index: Fraction(1)}


def to_dense(v: Vector, dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    for k, c in v.items():
        out[k] = c
    return out


def to_sparse(values: Sequence[ScalarLike]) -> Vector:
    return {i: QQ.coerce(c) for i, c in enumerate(values) if c != 0}


def flip(t: TensorVector) -> TensorVector:
    """σ on a tensor-square element."""
    return {(j, i): c for (i, j), c in t.items()}


def outer(u: dict, v: dict) -> TensorVector:
    return {(i, j): a * b for i, a in u.items() for j, b in v.items()}


class SparseTensor3:
    """
    Rank-3 tensor of exact scalars, e.g. m_AB^C or Δ_A^{BC}.

    Entries absent from `entries` are zero; zero values passed in are
    dropped. The object is treated as immutable.
    """

    def __init__(self, dims: Tuple[int, int, int], entries: Dict[Tuple[int, int, int], ScalarLike]):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3 or any(d <= 0 for d in dims):
            raise DimensionMismatch(f"invalid tensor dims {dims}")
        stored = {}
        for key, value in entries.items():
            if len(key) != 3 or any(not 0 <= k < d for k, d in zip(key, dims)):
                raise DimensionMismatch(f"index {key} outside dims {dims}", key)
            value = QQ.coerce(value)
            if value:
                stored[tuple(key)] = value
        self.dims = dims
        self.entries = stored

    @classmethod
    def from_items(cls, dims: Tuple[int, int, int], items: Iterable[Tuple[int, int, int, ScalarLike]]) -> 'SparseTensor3':
        """Build from (A, B, C, value) rows, summing repeated indices."""
        entries: Dict[Tuple[int, int, int], Fraction] = {}
        for a, b, c, value in items:
            accumulate(entries, (a, b, c), QQ.coerce(value))
        return cls(dims, entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor3):
            return NotImplemented
        return self.dims == other.dims and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseTensor3(dims={self.dims}, nnz={self.nnz})"

    def __iter__(self) -> Iterator[Tuple[Tuple[int, int, int], Fraction]]:
        return iter(sorted(self.entries.items()))

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def get(self, a: int, b: int, c: int) -> Fraction:
        return self.entries.get((a, b, c), Fraction(0))

    def items(self) -> List[Tuple[int, int, int, Fraction]]:
        """Stored entries as sorted (A, B, C, value) rows."""
        return [(a, b, c, v) for (a, b, c), v in sorted(self.entries.items())]

    @cached_property
    def by_pair(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]:
        """(A, B) -> ((C, value), ...)"""
        index: Dict[Tuple[int, int], list] = {}
        for (a, b, c), v in sorted(self.entries.items()):
            index.setdefault((a, b), []).append((c, v))
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def by_first(self) -> Dict[int, Tuple[Tuple[int, int, Fraction], ...]]:
        """A -> ((B, C, value), ...)"""
        index: Dict[int, list] = {}
        for (a, b, c), v in sorted(self.entries.items()):
            index.setdefault(a, []).append((b, c, v))
        return {k: tuple(v) for k, v in index.items()}

    def permuted(self, order: Tuple[int, int, int]) -> 'SparseTensor3':
        """Reorder axes: result[key] = self[orig] where key[i] = orig[order[i]]."""
        dims = tuple(self.dims[i] for i in order)
        return SparseTensor3(dims, {tuple(key[i] for i in order): v for key, v in self.entries.items()})

    def contract_first_two(self, x: Vector, y: Vector) -> Vector:
        """Σ_{A,B} x_A y_B T[A, B, ·]"""
        out: Vector = {}
        pairs = self.by_pair
        for a, xa in x.items():
            for b, yb in y.items():
                for c, v in pairs.get((a, b), ()):
                    accumulate(out, c, xa * yb * v)
        return out

    def contract_first(self, x: Vector) -> TensorVector:
        """Σ_A x_A T[A, ·, ·] as a tensor-square element."""
        out: TensorVector = {}
        first = self.by_first
        for a, xa in x.items():
            for b, c, v in first.get(a, ()):
                accumulate(out, (b, c), xa * v)
        return out
