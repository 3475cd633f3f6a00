"""Exact linear algebra over F_q on integer element codes.

Vectors are tuples of codes and matrices are tuples of row tuples.  Every
subspace is stored through the reduced row echelon form of a basis, which
is unique, so equality of subspaces is equality of their RREF rows.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .galois import FieldSpec

Vector = tuple[int, ...]
Rows = tuple[Vector, ...]


def rref_rows(field: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None
              ) -> tuple[Rows, tuple[int, ...]]:
    """RREF of the stacked rows, zero rows dropped; returns (rows, pivots)."""
    mat = [list(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    pivots: list[int] = []
    rank = 0
    nrows = len(mat)
    for col in range(ncols):
        if rank == nrows:
            break
        pr = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        prow = mat[rank]
        lead = prow[col]
        if lead != 1:
            s = inv(lead)
            prow = [mul(s, x) for x in prow]
            mat[rank] = prow
        for i in range(nrows):
            if i != rank:
                f = mat[i][col]
                if f:
                    nf = neg(f)
                    row = mat[i]
                    mat[i] = [add(x, mul(nf, y)) if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        rank += 1
    return tuple(tuple(r) for r in mat[:rank]), tuple(pivots)


def rank_of(field: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    """Rank by forward elimination only (cheaper than a full RREF)."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    rank = 0
    for col in range(ncols):
        pr = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        prow = mat[rank]
        s = neg(inv(prow[col]))
        for i in range(rank + 1, len(mat)):
            f = mat[i][col]
            if f:
                c = mul(f, s)
                mat[i] = [add(x, mul(c, y)) if y else x for x, y in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def transpose(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Rows:
    if not rows:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*rows))


def vec_add(field: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Vector:
    add = field.add
    return tuple(add(x, y) for x, y in zip(a, b))


def vec_scale(field: FieldSpec, c: int, a: Sequence[int]) -> Vector:
    mul = field.mul
    return tuple(mul(c, x) for x in a)


def combine(field: FieldSpec, coeffs: Sequence[int], rows: Sequence[Sequence[int]], n: int) -> Vector:
    """sum_i coeffs[i] * rows[i]."""
    add, mul = field.add, field.mul
    acc = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    acc[j] = add(acc[j], mul(c, x))
    return tuple(acc)


def mat_mul(field: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Rows:
    cols = transpose(b)
    return tuple(tuple(field.dot(row, col) for col in cols) for row in a)


@dataclass(frozen=True)
class MatFq:
    """A rows x cols matrix over ``field``."""

    field: FieldSpec
    rows: int
    cols: int
    entries: Rows

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared dimensions")
        q = self.field.q
        if any(not 0 <= x < q for r in self.entries for x in r):
            raise ValueError(f"entries must be element codes of F_{q}")

    @classmethod
    def of(cls, field: FieldSpec, entries: Sequence[Sequence[int]], cols: int | None = None) -> MatFq:
        entries = tuple(tuple(int(x) for x in r) for r in entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)


def rref(m: MatFq) -> tuple[MatFq, int, tuple[int, ...]]:
    """Full-size RREF (zero rows kept at the bottom), rank and pivot columns."""
    rows, pivots = rref_rows(m.field, m.entries, m.cols)
    padded = rows + tuple((0,) * m.cols for _ in range(m.rows - len(rows)))
    return MatFq(m.field, m.rows, m.cols, padded), len(pivots), pivots


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of F_q^ambient_dim held as its canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: Rows

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Sequence[Sequence[int]]) -> SubspaceBasis:
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, _ = rref_rows(field, vectors, ambient_dim)
        return cls(field, ambient_dim, rows)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> SubspaceBasis:
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> SubspaceBasis:
        return cls(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Coordinates of v in the RREF basis, or None when v is outside."""
        coords = tuple(v[p] for p in self.pivots)
        back = combine(self.field, coords, self.basis, self.ambient_dim)
        return coords if back == tuple(v) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: SubspaceBasis) -> bool:
        return all(self.contains(v) for v in other.basis)

    def vectors(self) -> Iterator[Vector]:
        f = self.field
        for coeffs in product(range(f.q), repeat=self.dim):
            yield combine(f, coeffs, self.basis, self.ambient_dim)


def _same_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _same_ambient(a, b)
    return SubspaceBasis.span(a.field, a.ambient_dim, a.basis + b.basis)


def subspace_intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Zassenhaus: reduce [a|a ; b|0]; rows with zero left half span a ∩ b."""
    _same_ambient(a, b)
    n = a.ambient_dim
    zero = (0,) * n
    stacked = [r + r for r in a.basis] + [r + zero for r in b.basis]
    rows, _ = rref_rows(a.field, stacked, 2 * n)
    inter = [r[n:] for r in rows if not any(r[:n])]
    return SubspaceBasis.span(a.field, n, inter)


def span_of_rows(m: MatFq) -> SubspaceBasis:
    return SubspaceBasis.span(m.field, m.cols, m.entries)


def kernel(m: MatFq) -> SubspaceBasis:
    """Right null space {x : M x = 0}."""
    return SubspaceBasis(m.field, m.cols, kernel_rows(m.field, m.entries, m.cols))


def kernel_rows(field: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> Rows:
    red, pivots = rref_rows(field, rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in zip(red, pivots):
            v[p] = field.neg(r[f])
        out.append(tuple(v))
    red_out, _ = rref_rows(field, out, ncols)
    return red_out


def gaussian_binomial(k: int, r: int, q: int) -> int:
    if not 0 <= r <= k:
        raise ValueError(f"need 0 <= r <= k, got r={r}, k={k}")
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref_templates(k: int, r: int) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
    """Pivot sets of r x k RREF matrices with, per row, its free columns."""
    for piv in combinations(range(k), r):
        pset = set(piv)
        frees = tuple(tuple(j for j in range(p + 1, k) if j not in pset) for p in piv)
        yield piv, frees


def _template_stream(q: int, k: int, piv: tuple[int, ...], frees) -> Iterator[tuple[int, ...]]:
    # Row-major free positions, enumerated in lexicographic order.
    slots = [(i, j) for i, fr in enumerate(frees) for j in fr]
    base = [[0] * k for _ in piv]
    for i, p in enumerate(piv):
        base[i][p] = 1
    for values in product(range(q), repeat=len(slots)):
        for (i, j), v in zip(slots, values):
            base[i][j] = v
        yield tuple(x for row in base for x in row)


def enumerate_subspaces(v: SubspaceBasis, r: int) -> Iterator[SubspaceBasis]:
    """Every r-dimensional subspace of v, once, as RREF coordinate matrices.

    Coordinates are with respect to v's basis, so the yielded subspaces live
    in F_q^{dim v}.  The stream is sorted lexicographically on the
    row-major RREF entries.
    """
    k = v.dim
    if not 0 <= r <= k:
        raise ValueError(f"subspace dimension {r} out of range [0, {k}]")
    field = v.field
    if r == 0:
        yield SubspaceBasis.zero(field, k)
        return
    streams = [_template_stream(field.q, k, piv, fr) for piv, fr in rref_templates(k, r)]
    for flat in heapq.merge(*streams):
        yield SubspaceBasis(field, k, tuple(flat[i * k:(i + 1) * k] for i in range(r)))


def lift(v: SubspaceBasis, sub: SubspaceBasis) -> SubspaceBasis:
    """Map a subspace given in v-coordinates back into v's ambient space."""
    if sub.ambient_dim != v.dim:
        raise ValueError("coordinate subspace does not match the basis")
    vecs = [combine(v.field, row, v.basis, v.ambient_dim) for row in sub.basis]
    return SubspaceBasis.span(v.field, v.ambient_dim, vecs)
