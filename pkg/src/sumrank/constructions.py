"""Explicit codes and chains of MSRD codes, and the sequence realizers built on them.

Evaluation points are fixed: field elements in code order for Reed-Solomon
codes, the polynomial basis 1, x, x^2, ... of F_{q^m} for Gabidulin and
linearized Reed-Solomon codes.  Every subspace choice takes leading rows of
a canonical RREF basis, so all outputs are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import groupby
from typing import Sequence

from .codes import (
    DEFAULT_CODEWORD_BUDGET,
    Shape,
    SumRankCode,
    is_msrd,
    min_distance,
    msrd_params_for_distance,
)
from .errors import ConstructionError
from .fqlinalg import SubspaceBasis, subspace_intersect
from .galois import FieldExtension, FieldSpec, extension, field_of_order, fq_make
from .weights import check_sequence, generalized_weights, is_subsequence, msrd_weight_sequence


def _field(q: int | FieldSpec) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


@dataclass(frozen=True)
class CodeChain:
    """Nested codes D_d ⊋ D_{d+1} ⊋ ... ⊋ D_n, with distances[i] = d(codes[i])."""

    field: FieldSpec
    shape: Shape
    distances: tuple[int, ...]
    codes: tuple[SumRankCode, ...]
    provenance: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.distances) != len(self.codes) or not self.codes:
            raise ValueError("a chain needs one distance per member and at least one member")
        if list(self.distances) != list(range(self.distances[0], self.distances[-1] + 1)):
            raise ValueError(f"chain distances must be consecutive, got {self.distances}")

    @property
    def head(self) -> SumRankCode:
        return self.codes[0]

    def member(self, h: int) -> SumRankCode:
        if h not in self.distances:
            raise KeyError(f"chain has no member of minimum distance {h}")
        return self.codes[self.distances.index(h)]

    def nesting_failures(self) -> list[str]:
        out = []
        for (h1, a), (h2, b) in zip(zip(self.distances, self.codes), zip(self.distances[1:], self.codes[1:])):
            if not a.contains(b) or a.k == b.k:
                out.append(f"D_{h1} does not strictly contain D_{h2}")
        return out

    def msrd_failures(self, budget: int = DEFAULT_CODEWORD_BUDGET) -> list[str]:
        out = []
        for h, c in zip(self.distances, self.codes):
            d = min_distance(c, budget)
            if d != h:
                out.append(f"D_{h} has minimum distance {d}")
            elif not is_msrd(c, d)[0]:
                out.append(f"D_{h} (dim {c.k}) is not MSRD")
        return out

    def verify(self, budget: int = DEFAULT_CODEWORD_BUDGET) -> CodeChain:
        bad = self.nesting_failures() + self.msrd_failures(budget)
        if bad:
            raise ConstructionError("chain verification failed", bad)
        return self


# ---------------------------------------------------------------- Hamming metric

def _points(f: FieldSpec, n: int) -> list[int]:
    if f.q < n:
        raise ConstructionError(f"need q >= n, got q={f.q}, n={n}")
    return list(range(n))


def rs_code(q: int | FieldSpec, n: int, k: int) -> SumRankCode:
    """Evaluations of 1, x, ..., x^{k-1} at the first n field elements."""
    f = _field(q)
    if not 0 <= k <= n:
        raise ConstructionError(f"need 0 <= k <= n, got k={k}, n={n}")
    pts = _points(f, n)
    rows = [tuple(f.pow(a, i) if a or i else 1 for a in pts) for i in range(k)]
    return SumRankCode(f, Shape.hamming(n), rows)


def rs_chain(q: int | FieldSpec, n: int, verify: bool = True) -> CodeChain:
    f = _field(q)
    codes = tuple(rs_code(f, n, n - h + 1) for h in range(1, n + 1))
    chain = CodeChain(f, Shape.hamming(n), tuple(range(1, n + 1)), codes,
                      {"family": "rs", "q": f.q, "n": n, "modulus": list(f.modulus)})
    return chain.verify() if verify else chain


def extended_rs(q: int | FieldSpec, k: int) -> SumRankCode:
    """p -> (p(a_1), ..., p(a_q), p(inf)) on polynomials of degree < k.

    p(inf) is the coefficient of x^{k-1}, so the code depends on k beyond
    its dimension and consecutive members need not be nested.
    """
    f = _field(q)
    if not 0 <= k <= f.q:
        raise ConstructionError(f"need 0 <= k <= q, got k={k}, q={f.q}")
    rows = []
    for i in range(k):
        evals = tuple(f.pow(a, i) if a or i else 1 for a in f.elements())
        rows.append(evals + (int(i == k - 1),))
    return SumRankCode(f, Shape.hamming(f.q + 1), rows)


def _check_increasing(seq: Sequence[int]) -> None:
    if not seq:
        raise ConstructionError("the sequence is empty")
    if any(x < 1 for x in seq):
        raise ConstructionError("entries must be positive integers")
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise ConstructionError("block-code weights must be strictly increasing")


def realize_hamming(seq: Sequence[int], q: int | FieldSpec, n: int | None = None) -> SumRankCode:
    """Rows f_i(a_1..a_n) with f_i = prod_{s > d_i} (x - a_s): d_r comes from the first r rows."""
    f = _field(q)
    seq = list(seq)
    _check_increasing(seq)
    if n is None:
        n = seq[-1]
    if n < seq[-1]:
        raise ConstructionError(f"length n={n} is below the last weight {seq[-1]}")
    pts = _points(f, n)
    rows = []
    for d in seq:
        row = []
        for a in pts:
            v = 1
            for s in pts[d:]:
                v = f.mul(v, f.sub(a, s))
            row.append(v)
        rows.append(tuple(row))
    code = SumRankCode(f, Shape.hamming(n), rows)
    if code.k != len(seq):  # pragma: no cover
        raise ConstructionError("generator rows are dependent")
    return code


def realize_relative(seq: Sequence[int], q: int | FieldSpec, n: int, k1: int, k2: int
                     ) -> tuple[SumRankCode, SumRankCode]:
    """C1 = C x F_q^{k2} and C2 = 0 x F_q^{k2} with C realizing seq in length n - k2."""
    f = _field(q)
    seq = list(seq)
    bad = []
    if not 0 <= k2 < k1 <= n:
        bad.append(f"need 0 <= k2 < k1 <= n, got k1={k1}, k2={k2}, n={n}")
    if k1 - k2 != len(seq):
        bad.append(f"need k1 - k2 = {len(seq)} (the sequence length), got {k1 - k2}")
    if seq and n - k2 < seq[-1]:
        bad.append(f"need n - k2 >= {seq[-1]}, got {n - k2}")
    if f.q < n - k2:
        bad.append(f"need q >= n - k2 = {n - k2}, got q={f.q}")
    if bad:
        raise ConstructionError(bad[0], bad)
    base = realize_hamming(seq, f, n - k2)
    tail = [tuple(int(i == j) for j in range(k2)) for i in range(k2)]
    rows1 = [v + (0,) * k2 for v in base.basis] + [(0,) * (n - k2) + t for t in tail]
    rows2 = [(0,) * (n - k2) + t for t in tail]
    shape = Shape.hamming(n)
    return SumRankCode(f, shape, rows1), SumRankCode(f, shape, rows2)


# ---------------------------------------------------------------- rank metric

def realize_rank_tall(seq: Sequence[int], q: int | FieldSpec) -> SumRankCode:
    """C_r = sum_{s <= d_r} E_{d_1+...+d_{r-1}+s, s} inside F_q^{(sum d) x d_k}."""
    f = _field(q)
    seq = list(seq)
    if not seq:
        raise ConstructionError("the sequence is empty")
    if any(x < 1 for x in seq):
        raise ConstructionError("entries must be positive integers")
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise ConstructionError("the sequence must be non-decreasing")
    m, n = sum(seq), seq[-1]
    shape = Shape(((m, n),))
    rows = []
    top = 0
    for d in seq:
        v = [0] * (m * n)
        for s in range(d):
            v[(top + s) * n + s] = 1
        rows.append(tuple(v))
        top += d
    return SumRankCode(f, shape, rows)


@dataclass(frozen=True)
class SkewPoly:
    """F = sum_l f_l x^l over F_{q^m} with x acting as D_a(b) = sigma(b) a, sigma = Frobenius."""

    ext: FieldExtension
    coeffs: tuple[int, ...]

    def evaluate(self, a: int, beta: int) -> int:
        big = self.ext.big
        acc, cur = 0, beta
        for c in self.coeffs:
            acc = big.add(acc, big.mul(c, cur))
            cur = big.mul(self.ext.frobenius(cur), a)
        return acc


def _skew_rows(ext: FieldExtension, reps: Sequence[int], n_list: Sequence[int], kmax: int) -> list[tuple]:
    """F_q-basis rows of the evaluation code for degree < kmax, ordered by (l, b).

    Row (l, b) is the expansion of f = b x^l; the first m*k rows therefore
    span the code of degree < k.
    """
    big = ext.big
    blocks = []  # per block, D_a^l(beta_j) for l < kmax
    for a, ni in zip(reps, n_list):
        cur = list(ext.basis[:ni])
        layers = []
        for _ in range(kmax):
            layers.append(cur)
            cur = [big.mul(ext.frobenius(x), a) for x in cur]
        blocks.append(layers)
    rows = []
    for l in range(kmax):
        for b in ext.basis:
            vec: list[int] = []
            for layers in blocks:
                mat = ext.expand_word([big.mul(b, x) for x in layers[l]])
                vec.extend(x for r in mat for x in r)
            rows.append(tuple(vec))
    return rows


def _extension(f: FieldSpec, m: int) -> FieldExtension:
    return extension(fq_make(f.p, f.e * m), f)


def lrs_chain(q: int | FieldSpec, t: int, m: int, n_list: Sequence[int], verify: bool = True) -> CodeChain:
    """Linearized Reed-Solomon codes in (F_q^{m x n_i})_i with D_h of degree < n - h + 1.

    Block i uses the conjugacy representative a_i = gamma^{i-1} for a
    primitive gamma of F_{q^m}; their norms are distinct while t < q.
    """
    f = _field(q)
    n_list = list(n_list)
    bad = []
    if len(n_list) != t:
        bad.append(f"expected {t} block lengths, got {len(n_list)}")
    if f.q <= t:
        bad.append(f"requires q > t, got q={f.q}, t={t}")
    if any(ni > m or ni < 1 for ni in n_list):
        bad.append(f"requires 1 <= n_i <= m={m}, got {n_list}")
    if bad:
        raise ConstructionError(bad[0], bad)
    ext = _extension(f, m)
    gamma = ext.big.primitive
    reps = [ext.big.pow(gamma, i) for i in range(t)]
    n = sum(n_list)
    rows = _skew_rows(ext, reps, n_list, n)
    shape = Shape(tuple((m, ni) for ni in n_list))
    codes = tuple(SumRankCode(f, shape, rows[: m * (n - h + 1)]) for h in range(1, n + 1))
    chain = CodeChain(f, shape, tuple(range(1, n + 1)), codes,
                      {"family": "lrs", "q": f.q, "t": t, "m": m, "n": n_list,
                       "modulus": list(ext.big.modulus)})
    return chain.verify() if verify else chain


def gabidulin_chain(q: int | FieldSpec, m: int, n: int, verify: bool = True) -> CodeChain:
    """Gabidulin codes at points 1, x, ..., x^{n-1}: D_h has q-degree < n - h + 1."""
    f = _field(q)
    if not 1 <= n <= m:
        raise ConstructionError(f"requires 1 <= n <= m, got m={m}, n={n}")
    ext = _extension(f, m)
    rows = _skew_rows(ext, [1], [n], n)
    shape = Shape(((m, n),))
    codes = tuple(SumRankCode(f, shape, rows[: m * (n - h + 1)]) for h in range(1, n + 1))
    chain = CodeChain(f, shape, tuple(range(1, n + 1)), codes,
                      {"family": "gabidulin", "q": f.q, "m": m, "n": n,
                       "modulus": list(ext.big.modulus)})
    return chain.verify() if verify else chain


def _pad_vector(vec: Sequence[int], old: Shape, new: Shape) -> tuple[int, ...]:
    out: list[int] = []
    for blk, (m2, n2) in zip(old.split(vec), new.blocks):
        out.extend(x for r in blk for x in r)
        out.extend([0] * ((m2 - len(blk)) * n2))
    return tuple(out)


def _padded_shape(shape: Shape, m_list: Sequence[int]) -> Shape:
    m_list = list(m_list)
    if len(m_list) != shape.t:
        raise ConstructionError(f"expected {shape.t} row counts, got {len(m_list)}")
    if any(m2 < m for m2, (m, _) in zip(m_list, shape.blocks)):
        raise ConstructionError("padding cannot remove rows")
    if any(a < b for a, b in zip(m_list, m_list[1:])):
        raise ConstructionError("target row counts must be non-increasing")
    return Shape(tuple((m2, n) for m2, (_, n) in zip(m_list, shape.blocks)))


def pad_rows(obj: SumRankCode | CodeChain, m_list: Sequence[int], verify: bool = True
             ) -> SumRankCode | CodeChain:
    """Append zero rows at the bottom of every block.

    For a chain, only the members with h >= sum_{i<j} n_i + 1, where j is
    the first block with m_j = m_t, stay MSRD; the others are dropped.
    """
    if isinstance(obj, SumRankCode):
        new = _padded_shape(obj.shape, m_list)
        return SumRankCode(obj.field, new, [_pad_vector(v, obj.shape, new) for v in obj.basis])
    new = _padded_shape(obj.shape, m_list)
    mt = new.blocks[-1][0]
    j = next(i for i, (m, _) in enumerate(new.blocks, start=1) if m == mt)
    d0 = new.column_offset(j) + 1
    keep = [(h, c) for h, c in zip(obj.distances, obj.codes) if h >= d0]
    if not keep:
        raise ConstructionError(f"no chain member has distance >= {d0}")
    codes = tuple(SumRankCode(c.field, new, [_pad_vector(v, c.shape, new) for v in c.basis])
                  for _, c in keep)
    prov = dict(obj.provenance, padded_rows=list(m_list))
    chain = CodeChain(obj.field, new, tuple(h for h, _ in keep), codes, prov)
    return chain.verify() if verify else chain


def msrd_chain_combined(q: int | FieldSpec, shape: Shape, j: int, delta: int,
                        verify: bool = True) -> CodeChain:
    """MSRD chain when some n_i exceed m_t: full-rank MRD blocks in front, LRS behind.

    C_i has basis (N_s, M_{i,s}) for s <= dim D_i, where the N_s pair up
    k=1 Gabidulin codewords on blocks 1..h and the M_{i,s} are the leading
    basis rows of a padded LRS code on blocks h+1..t.
    """
    f = _field(q)
    shape.check_standard()
    blocks = shape.blocks
    t = shape.t
    mt = blocks[-1][0]
    bad = []
    j_min = next(i for i, (m, _) in enumerate(blocks, start=1) if m == mt)
    if j != j_min:
        bad.append(f"j must be the first block with m_j = m_t, i.e. {j_min}; got {j}")
    big_n = [i for i, (_, n) in enumerate(blocks, start=1) if n > mt]
    if not big_n:
        raise ConstructionError("every n_i <= m_t: use lrs_chain with pad_rows instead")
    h = max(big_n)
    if not 0 <= delta <= blocks[j_min - 1][1] - 1:
        bad.append(f"delta must lie in [0, {blocks[j_min - 1][1] - 1}], got {delta}")
    need = mt * (sum(n for _, n in blocks[j_min - 1:]) - delta)
    if blocks[h - 1][0] < need:
        bad.append(f"requires m_h >= m_t (sum_(i>=j) n_i - delta) = {need}, got m_h={blocks[h - 1][0]}")
    if f.q <= t - h:
        bad.append(f"requires q > t - h = {t - h}, got q={f.q}")
    if bad:
        raise ConstructionError(bad[0], bad)

    mh = blocks[h - 1][0]
    front = Shape(blocks[:h])
    back_n = [n for _, n in blocks[h:]]
    n_front = front.n
    n_back = sum(back_n)
    # N_s: the s-th basis codeword b_s * (g_1, ..., g_{n_l}) of a k=1 Gabidulin code per block
    n_rows = []
    for s in range(mh):
        vec: list[int] = []
        for m_l, n_l in blocks[:h]:
            ext = _extension(f, m_l)
            mat = ext.expand_word([ext.big.mul(ext.basis[s], g) for g in ext.basis[:n_l]])
            vec.extend(x for r in mat for x in r)
        n_rows.append(tuple(vec))
    back = Shape(tuple((mt, n) for n in back_n))
    target = Shape(blocks[h:])
    ext = _extension(f, mt)
    reps = [ext.big.pow(ext.big.primitive, i) for i in range(t - h)]
    m_rows = [_pad_vector(v, back, target) for v in _skew_rows(ext, reps, back_n, n_back)]

    d = shape.column_offset(j) + delta + 1
    dists, codes = [], []
    for i in range(d, shape.n + 1):
        dim = mt * (n_back - (i - n_front) + 1)
        rows = [a + b for a, b in zip(n_rows[:dim], m_rows[:dim])]
        dists.append(i)
        codes.append(SumRankCode(f, shape, rows))
    chain = CodeChain(f, shape, tuple(dists), tuple(codes),
                      {"family": "combined", "q": f.q, "shape": shape.to_json(), "j": j,
                       "delta": delta, "modulus": list(f.modulus)})
    return chain.verify() if verify else chain


def msrd_chain(q: int | FieldSpec, shape: Shape, verify: bool = True) -> CodeChain:
    """A chain of MSRD codes in the given ambient space from whichever family applies."""
    f = _field(q)
    shape.check_standard()
    if shape.is_hamming and f.q >= shape.n:
        return rs_chain(f, shape.n, verify)
    if shape.t == 1:
        m, n = shape.blocks[0]
        return gabidulin_chain(f, m, n, verify)
    mt = shape.blocks[-1][0]
    if all(n <= mt for _, n in shape.blocks):
        chain = lrs_chain(f, shape.t, mt, [n for _, n in shape.blocks], verify=False)
        return pad_rows(chain, [m for m, _ in shape.blocks], verify)
    j = next(i for i, (m, _) in enumerate(shape.blocks, start=1) if m == mt)
    errors = []
    for delta in range(shape.blocks[j - 1][1]):
        try:
            return msrd_chain_combined(f, shape, j, delta, verify)
        except ConstructionError as exc:
            errors = exc.violations
    raise ConstructionError("no known MSRD chain for this shape and field", errors)


# ---------------------------------------------------------------- realizers

def _column_anticode(shape: Shape, field: FieldSpec, j: int, cols: int) -> SubspaceBasis:
    """Blocks 1..j-1 entirely and the first ``cols`` columns of block j."""
    idx = list(range(shape.offsets[j - 1]))
    m, n = shape.blocks[j - 1]
    base = shape.offsets[j - 1]
    idx += [base + r * n + c for r in range(m) for c in range(cols)]
    dim = shape.ambient_dim
    idx.sort()
    return SubspaceBasis(field, dim, tuple(tuple(int(i == x) for i in range(dim)) for x in idx))


def realize_sumrank(seq: Sequence[int], chain: CodeChain, check: bool = True) -> SumRankCode:
    """A subcode of the chain head with generalized weights seq and the chain condition.

    Each maximal run of a value v with length L contributes the first L RREF
    rows of D_v ∩ A, where A holds the matrices supported on the first v columns.
    """
    seq = list(seq)
    shape, f = chain.shape, chain.field
    verdict = check_sequence(shape, seq)
    if not verdict.valid:
        raise ConstructionError(f"inadmissible sequence: {verdict.reason}")
    if not seq:
        raise ConstructionError("the sequence is empty")
    head_seq = msrd_weight_sequence(shape, msrd_params_for_distance(shape, chain.distances[0]))
    if not is_subsequence(seq, head_seq):
        raise ConstructionError(
            f"{tuple(seq)} is not a subsequence of the chain head's weights {head_seq}")
    parts: list[tuple[int, ...]] = []
    for v, run in groupby(seq):
        length = len(list(run))
        if v not in chain.distances:
            raise ConstructionError(f"the chain has no member of minimum distance {v}")
        params = msrd_params_for_distance(shape, v)
        anti = _column_anticode(shape, f, params.j, params.delta + 1)
        inter = subspace_intersect(anti, chain.member(v).subspace())
        if inter.dim < length:
            raise ConstructionError(
                f"internal inconsistency: D_{v} meets the anticode in dim {inter.dim} < {length}")
        parts.extend(inter.basis[:length])
    code = SumRankCode(f, shape, parts)
    if code.k != len(seq):
        raise ConstructionError(f"internal inconsistency: pieces span dim {code.k}, not {len(seq)}")
    if check and generalized_weights(code) != tuple(seq):
        raise ConstructionError("internal inconsistency: realized weights differ from the request")
    return code


def realize_rank_mn(seq: Sequence[int], q: int | FieldSpec, m: int, n: int) -> SumRankCode:
    seq = list(seq)
    bad = []
    if not seq:
        bad.append("the sequence is empty")
    if any(a > b for a, b in zip(seq, seq[1:])):
        bad.append("the sequence must be non-decreasing")
    if n > m:
        bad.append(f"requires n <= m, got m={m}, n={n}")
    if seq and (seq[0] < 1 or seq[-1] > n):
        bad.append(f"entries must lie in [1, n={n}]")
    if len(seq) > m * n:
        bad.append(f"length {len(seq)} exceeds mn={m * n}")
    longest = max((len(list(g)) for _, g in groupby(seq)), default=0)
    if longest > m:
        bad.append(f"a constant run has length {longest} > m={m}")
    if bad:
        raise ConstructionError(bad[0], bad)
    return realize_sumrank(seq, gabidulin_chain(q, m, n))
