"""Sum-rank metric codes and their elementary metric invariants.

A code lives in M = F_q^{m_1 x n_1} x ... x F_q^{m_t x n_t}.  Block codes
are the shapes with every block 1 x 1, rank-metric codes the shapes with a
single block.  Codewords are flattened block by block, each block row-major,
into vectors of length sum m_i n_i; the code keeps the RREF of its basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import BudgetExceeded
from .fqlinalg import SubspaceBasis, Vector, rank_of, rref_rows, transpose
from .galois import FieldSpec

Matrix = tuple[tuple[int, ...], ...]
Codeword = tuple[Matrix, ...]

DEFAULT_CODEWORD_BUDGET = 1 << 24


@dataclass(frozen=True)
class Shape:
    """Block sizes (m_i, n_i) of the ambient space.

    Only positivity is enforced here; :meth:`check_standard` enforces the
    ordering m_1 >= ... >= m_t and m_i >= n_i that codes require.
    """

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        blocks = tuple((int(m), int(n)) for m, n in self.blocks)
        if not blocks:
            raise ValueError("a shape needs at least one block")
        if any(m < 1 or n < 1 for m, n in blocks):
            raise ValueError(f"block sizes must be positive: {list(blocks)}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def hamming(cls, n: int) -> Shape:
        return cls(((1, 1),) * n)

    @classmethod
    def parse(cls, text: str) -> Shape:
        """Parse "2x2,2x2" or the block-code shorthand "1x1:7"."""
        blocks = []
        for part in text.replace(" ", "").split(","):
            mt = re.fullmatch(r"(\d+)x(\d+)(?::(\d+))?", part)
            if not mt:
                raise ValueError(f"malformed shape block {part!r}")
            m, n, rep = int(mt[1]), int(mt[2]), int(mt[3] or 1)
            blocks.extend([(m, n)] * rep)
        return cls(tuple(blocks))

    def check_standard(self) -> Shape:
        ms = [m for m, _ in self.blocks]
        if any(a < b for a, b in zip(ms, ms[1:])):
            raise ValueError(f"row counts must be non-increasing: {ms}")
        bad = [(m, n) for m, n in self.blocks if m < n]
        if bad:
            raise ValueError(f"blocks need m_i >= n_i, got {bad}")
        return self

    @property
    def t(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(n for _, n in self.blocks)

    @property
    def ambient_dim(self) -> int:
        return sum(m * n for m, n in self.blocks)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for m, n in self.blocks:
            out.append(acc)
            acc += m * n
        return tuple(out)

    @property
    def is_hamming(self) -> bool:
        return all(m == 1 and n == 1 for m, n in self.blocks)

    def column_offset(self, j: int) -> int:
        """n_1 + ... + n_{j-1} for a 1-based block index j."""
        return sum(n for _, n in self.blocks[: j - 1])

    def split(self, vec: Sequence[int]) -> Codeword:
        if len(vec) != self.ambient_dim:
            raise ValueError(f"vector of length {len(vec)} does not fit shape {self}")
        out = []
        for (m, n), off in zip(self.blocks, self.offsets):
            out.append(tuple(tuple(vec[off + i * n: off + (i + 1) * n]) for i in range(m)))
        return tuple(out)

    def flatten(self, word: Sequence[Sequence[Sequence[int]]]) -> Vector:
        if len(word) != self.t:
            raise ValueError(f"codeword has {len(word)} blocks, shape has {self.t}")
        flat: list[int] = []
        for blk, (m, n) in zip(word, self.blocks):
            if len(blk) != m or any(len(r) != n for r in blk):
                raise ValueError(f"block does not have size {m}x{n}")
            for row in blk:
                flat.extend(int(x) for x in row)
        return tuple(flat)

    def to_json(self) -> list[list[int]]:
        return [[m, n] for m, n in self.blocks]

    def __str__(self) -> str:
        return ",".join(f"{m}x{n}" for m, n in self.blocks)


class SumRankCode:
    """An F_q-linear subspace of M, stored as the RREF of its generators."""

    def __init__(self, field: FieldSpec, shape: Shape, vectors: Sequence[Sequence[int]] = ()):
        shape.check_standard()
        q = field.q
        for v in vectors:
            if len(v) != shape.ambient_dim:
                raise ValueError(f"generator of length {len(v)} does not fit shape {shape}")
            if any(not 0 <= x < q for x in v):
                raise ValueError(f"generator entries must be element codes of F_{q}")
        self.field = field
        self.shape = shape
        self.basis, self.pivots = rref_rows(field, vectors, shape.ambient_dim)

    @classmethod
    def from_codewords(cls, field: FieldSpec, shape: Shape, words: Sequence[Codeword]) -> SumRankCode:
        return cls(field, shape, [shape.flatten(w) for w in words])

    @classmethod
    def full(cls, field: FieldSpec, shape: Shape) -> SumRankCode:
        n = shape.ambient_dim
        return cls(field, shape, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, shape: Shape) -> SumRankCode:
        return cls(field, shape, [])

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> list[Codeword]:
        return [self.shape.split(v) for v in self.basis]

    def subspace(self) -> SubspaceBasis:
        return SubspaceBasis(self.field, self.shape.ambient_dim, self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        return self.subspace().coordinates(v)

    def contains(self, other: SumRankCode) -> bool:
        self._compatible(other)
        sub = self.subspace()
        return all(sub.contains(v) for v in other.basis)

    def codeword(self, coeffs: Sequence[int]) -> Vector:
        f = self.field
        acc = [0] * self.shape.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        acc[j] = f.add(acc[j], f.mul(c, x))
        return tuple(acc)

    def _compatible(self, other: SumRankCode) -> None:
        if self.field != other.field or self.shape != other.shape:
            raise ValueError("codes live in different ambient spaces")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SumRankCode) and self.field == other.field
                and self.shape == other.shape and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.basis))

    def __repr__(self) -> str:
        return f"SumRankCode(F_{self.field.q}, shape={self.shape}, k={self.k})"


def span_all(field: FieldSpec, rows: Sequence[Vector], n: int) -> list[Vector]:
    """All q^len(rows) combinations; index = sum c_s q^s over row s."""
    add, mul = field.add, field.mul
    vecs: list[Vector] = [(0,) * n]
    for row in rows:
        scaled = [tuple(mul(c, x) for x in row) for c in range(field.q)]
        new = list(vecs)
        for c in range(1, field.q):
            sr = scaled[c]
            new.extend(tuple(add(a, b) for a, b in zip(v, sr)) for v in vecs)
        vecs = new
    return vecs


def iter_codewords(code: SumRankCode, budget: int = DEFAULT_CODEWORD_BUDGET,
                   include_zero: bool = True) -> Iterator[Vector]:
    """Stream every codeword; two half-spans keep memory at O(q^{k/2})."""
    total = code.field.q ** code.k
    if total > budget:
        raise BudgetExceeded(f"{total} codewords exceed the budget of {budget}")
    n = code.shape.ambient_dim
    half = code.k // 2
    low = span_all(code.field, code.basis[:half], n)
    high = span_all(code.field, code.basis[half:], n)
    add = code.field.add
    for i, h in enumerate(high):
        for j, lo in enumerate(low):
            if i == 0 and j == 0 and not include_zero:
                continue
            yield tuple(add(a, b) for a, b in zip(lo, h))


def block_rank(field: FieldSpec, blk: Matrix) -> int:
    m = len(blk)
    n = len(blk[0]) if m else 0
    if m == 1 or n == 1:
        return int(any(any(r) for r in blk))
    return rank_of(field, blk)


def srk_weight(field: FieldSpec, word: Codeword, shape: Shape | None = None) -> int:
    """Sum of the ranks of the blocks of a codeword."""
    if shape is not None:
        shape.flatten(word)
    return sum(block_rank(field, blk) for blk in word)


def _vector_srk(field: FieldSpec, shape: Shape, vec: Vector) -> int:
    if shape.is_hamming:
        return sum(1 for x in vec if x)
    return srk_weight(field, shape.split(vec))


def min_distance(code: SumRankCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """Exhaustive minimum sum-rank weight over the nonzero codewords."""
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    best = code.shape.n
    for v in iter_codewords(code, budget, include_zero=False):
        w = _vector_srk(code.field, code.shape, v)
        if w < best:
            best = w
            if best == 1:
                break
    return best


def max_srk(code: SumRankCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    best = 0
    for v in iter_codewords(code, budget):
        best = max(best, _vector_srk(code.field, code.shape, v))
        if best == code.shape.n:
            break
    return best


def max_anticode_value(code: SumRankCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """max over codewords of sum m_i rk(C_i), the right side of the anticode bound."""
    best = 0
    f, shape = code.field, code.shape
    for v in iter_codewords(code, budget):
        word = shape.split(v)
        best = max(best, sum(m * block_rank(f, blk) for (m, _), blk in zip(shape.blocks, word)))
    return best


class SupportLattice:
    """Row and column supports of codewords and their joins, memoised.

    The signature of a set of codewords records, per block, the span of all
    block rows (a subspace of F_q^{n_i}) and, for square blocks, the span of
    all block columns.  The weight of the span of the set is the sum over
    blocks of the row-support dimension, or of the smaller of the two
    dimensions when the block is square.
    """

    def __init__(self, field: FieldSpec, shape: Shape):
        self.field = field
        self.shape = shape
        self.square = tuple(m == n for m, n in shape.blocks)
        self._join: dict[tuple, tuple] = {}

    def signature(self, vec: Sequence[int]) -> tuple:
        f = self.field
        sig = []
        for blk, sq, (m, n) in zip(self.shape.split(vec), self.square, self.shape.blocks):
            if n == 1:
                rows = ((1,),) if any(r[0] for r in blk) else ()
            else:
                rows, _ = rref_rows(f, blk, n)
            if sq:
                if m == 1:
                    cols = rows
                else:
                    cols, _ = rref_rows(f, transpose(blk), m)
                sig.append((rows, cols))
            else:
                sig.append((rows, None))
        return tuple(sig)

    def _join_space(self, a: tuple, b: tuple, width: int) -> tuple:
        if not a or a == b:
            return b
        if not b:
            return a
        key = (a, b) if a <= b else (b, a)
        got = self._join.get(key)
        if got is None:
            if len(a) == width:
                got = a
            elif len(b) == width:
                got = b
            else:
                got, _ = rref_rows(self.field, a + b, width)
            self._join[key] = got
        return got

    def join(self, s1: tuple, s2: tuple) -> tuple:
        out = []
        for (r1, c1), (r2, c2), (m, n) in zip(s1, s2, self.shape.blocks):
            rows = self._join_space(r1, r2, n)
            cols = None if c1 is None else self._join_space(c1, c2, m)
            out.append((rows, cols))
        return tuple(out)

    def empty(self) -> tuple:
        return tuple(((), () if sq else None) for sq in self.square)

    @staticmethod
    def weight(sig: tuple) -> int:
        return sum(len(r) if c is None else min(len(r), len(c)) for r, c in sig)

    def of_vectors(self, vectors: Sequence[Sequence[int]]) -> tuple:
        sig = self.empty()
        for v in vectors:
            sig = self.join(sig, self.signature(v))
        return sig


def code_weight(code: SumRankCode) -> int:
    """wt(C): the smallest max sum-rank of a product of optimal anticodes containing C."""
    lat = SupportLattice(code.field, code.shape)
    return lat.weight(lat.of_vectors(code.basis))


def ambient_weight_sequence(shape: Shape) -> tuple[int, ...]:
    """Generalized weights of the whole space: value sum_{i<j} n_i + delta repeated m_j times."""
    out: list[int] = []
    off = 0
    for m, n in shape.blocks:
        for delta in range(1, n + 1):
            out.extend([off + delta] * m)
        off += n
    return tuple(out)


@dataclass(frozen=True)
class MsrdParams:
    """(j, delta) with j 1-based: distance sum_{i<j} n_i + delta + 1."""

    j: int
    delta: int

    def validate(self, shape: Shape) -> MsrdParams:
        if not 1 <= self.j <= shape.t:
            raise ValueError(f"block index j={self.j} outside [1, {shape.t}]")
        n_j = shape.blocks[self.j - 1][1]
        if not 0 <= self.delta <= n_j - 1:
            raise ValueError(f"delta={self.delta} outside [0, {n_j - 1}]")
        return self

    def distance(self, shape: Shape) -> int:
        return shape.column_offset(self.j) + self.delta + 1

    def dimension(self, shape: Shape) -> int:
        blocks = shape.blocks
        return sum(m * n for m, n in blocks[self.j - 1:]) - self.delta * blocks[self.j - 1][0]


def msrd_params_for_distance(shape: Shape, d: int) -> MsrdParams:
    """The unique (j, delta) with d = sum_{i<j} n_i + delta + 1."""
    if not 1 <= d <= shape.n:
        raise ValueError(f"distance {d} outside [1, {shape.n}]")
    off = 0
    for j, (_, n) in enumerate(shape.blocks, start=1):
        if d <= off + n:
            return MsrdParams(j, d - off - 1)
        off += n
    raise AssertionError("unreachable")  # pragma: no cover


def is_msrd(code: SumRankCode, d: int | None = None,
            budget: int = DEFAULT_CODEWORD_BUDGET) -> tuple[bool, MsrdParams | None]:
    if code.k == 0:
        raise ValueError("the zero code is not MSRD")
    if d is None:
        d = min_distance(code, budget)
    params = msrd_params_for_distance(code.shape, d)
    if params.dimension(code.shape) == code.k:
        return True, params
    return False, None


def is_mds(code: SumRankCode, d: int | None = None,
           budget: int = DEFAULT_CODEWORD_BUDGET) -> bool:
    if not code.shape.is_hamming:
        raise ValueError("MDS is defined for block codes (all blocks 1x1)")
    return is_msrd(code, d, budget)[0]
