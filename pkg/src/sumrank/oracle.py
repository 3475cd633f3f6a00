"""Definition-literal reference computations, deliberately unoptimised.

Nothing here reuses the engine's weight or support code.  The weight of a
subcode D is the minimum of maxsrk(A) over the products A of per-block
optimal anticodes with D inside A, tested by explicit membership of each
basis codeword.  Subcodes are enumerated exhaustively, one RREF at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .codes import Shape, SumRankCode, span_all
from .errors import BudgetExceeded
from .fqlinalg import (
    SubspaceBasis,
    enumerate_subspaces,
    gaussian_binomial,
    rank_of,
    rref_templates,
    transpose,
)
from .galois import FieldSpec, field_of_order

DEFAULT_SUBSPACE_BUDGET = 10**7
DEFAULT_CODEWORD_BUDGET = 1 << 26


@dataclass(frozen=True)
class SearchVerdict:
    exists: bool
    witness: SumRankCode | None
    search_space_size: int


@lru_cache(maxsize=None)
def block_anticodes(field: FieldSpec, m: int, n: int) -> tuple[tuple[int, str, SubspaceBasis], ...]:
    """Optimal anticodes of F_q^{m x n} as (max rank, kind, support subspace).

    kind "rows": all matrices with every row in the support (a subspace of
    F_q^n); kind "cols" (square blocks only): every column in the support.
    """
    out = []
    for u in range(n + 1):
        for sub in enumerate_subspaces(SubspaceBasis.full(field, n), u):
            out.append((u, "rows", sub))
    if m == n:
        for u in range(1, m):
            for sub in enumerate_subspaces(SubspaceBasis.full(field, m), u):
                out.append((u, "cols", sub))
    return tuple(out)


def _in_anticode(blk, kind: str, support: SubspaceBasis) -> bool:
    lines = blk if kind == "rows" else transpose(blk)
    return all(support.contains(line) for line in lines)


def brute_force_anticodes(field: FieldSpec, m: int, n: int) -> list[SubspaceBasis]:
    """Every subspace of F_q^{m x n} meeting dim = m * maxrank, found by search."""
    shape = Shape(((m, n),))
    amb = SubspaceBasis.full(field, m * n)
    found = []
    for r in range(m * n + 1):
        for sub in enumerate_subspaces(amb, r):
            top = max(rank_of(field, shape.split(v)[0]) for v in sub.vectors())
            if r == m * top:
                found.append(sub)
    return found


class _Masks:
    """Per-codeword bitmask of the (block, anticode) pairs containing it."""

    def __init__(self, code: SumRankCode):
        f, shape = code.field, code.shape
        self.slots: list[tuple[int, int]] = []  # (block, max rank) per bit
        per_block = []
        for b, (m, n) in enumerate(shape.blocks):
            acs = block_anticodes(f, m, n)
            per_block.append((len(self.slots), acs))
            self.slots.extend((b, w) for w, _, _ in acs)
        self.t = shape.t
        words = span_all(f, code.basis, shape.ambient_dim)
        masks = []
        for v in words:
            split = shape.split(v)
            mask = 0
            for b, (base, acs) in enumerate(per_block):
                for a, (_, kind, sup) in enumerate(acs):
                    if _in_anticode(split[b], kind, sup):
                        mask |= 1 << (base + a)
            masks.append(mask)
        self.masks = masks
        self._wt: dict[int, int] = {}

    def weight(self, mask: int) -> int:
        w = self._wt.get(mask)
        if w is None:
            best = [None] * self.t
            for bit, (b, r) in enumerate(self.slots):
                if mask >> bit & 1 and (best[b] is None or r < best[b]):
                    best[b] = r
            w = sum(best)
            self._wt[mask] = w
        return w


def _row_indices(q: int, k: int, pivot: int, free: Sequence[int]) -> list[int]:
    base = q**pivot
    out = []
    for vals in product(range(q), repeat=len(free)):
        out.append(base + sum(x * q**j for x, j in zip(vals, free)))
    return out


def _subcode_weights_by_dim(code: SumRankCode, masks: _Masks) -> tuple[list[int | None], int]:
    """Minimum wt over subcodes of each exact dimension, and the subcodes visited."""
    q, k = code.field.q, code.k
    best: list[int | None] = [None] * (k + 1)
    visited = 0
    for r in range(1, k + 1):
        for piv, frees in rref_templates(k, r):
            leaves = [-1]
            for p, fr in zip(piv, frees):
                row = [masks.masks[i] for i in _row_indices(q, k, p, fr)]
                leaves = [a & b for a in leaves for b in row]
            visited += len(leaves)
            for mask in set(leaves):
                w = masks.weight(mask)
                if best[r] is None or w < best[r]:
                    best[r] = w
    return best, visited


def _check_budget(code: SumRankCode, budget: int) -> int:
    q, k = code.field.q, code.k
    total = sum(gaussian_binomial(k, r, q) for r in range(1, k + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} subcodes exceed the oracle budget of {budget}")
    return total


def oracle_generalized_weights(code: SumRankCode, budget: int = DEFAULT_SUBSPACE_BUDGET
                               ) -> tuple[int, ...]:
    """d_r = min{wt(D) : D subcode, dim D >= r}, scanning every subcode."""
    if code.k == 0:
        raise ValueError("generalized weights of the zero code are undefined")
    total = _check_budget(code, budget)
    best, visited = _subcode_weights_by_dim(code, _Masks(code))
    if visited != total:
        raise AssertionError(f"visited {visited} subcodes, expected {total}")
    return tuple(min(best[s] for s in range(r, code.k + 1)) for r in range(1, code.k + 1))


def oracle_relative_weights(c1: SumRankCode, c2: SumRankCode,
                            budget: int = DEFAULT_SUBSPACE_BUDGET) -> tuple[int, ...]:
    """min |supp D| over subcodes D of C1 with D ∩ C2 = 0 and dim D >= r."""
    if not c1.shape.is_hamming:
        raise ValueError("relative weights are defined for block codes only")
    if not c1.contains(c2) or c2.k >= c1.k:
        raise ValueError("need C2 to be a proper subcode of C1")
    _check_budget(c1, budget)
    f, k = c1.field, c1.k
    n = c1.shape.ambient_dim
    c2_rows = [tuple(v) for v in c2.basis]
    span = k - c2.k
    best: list[int | None] = [None] * (k + 1)
    whole = SubspaceBasis(f, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))
    for r in range(1, k + 1):
        for sub in enumerate_subspaces(whole, r):
            words = [c1.codeword(row) for row in sub.basis]
            if rank_of(f, words + c2_rows) != r + c2.k:
                continue
            size = sum(1 for j in range(n) if any(w[j] for w in words))
            if best[r] is None or size < best[r]:
                best[r] = size
    return tuple(min(b for b in best[r:] if b is not None) for r in range(1, span + 1))


def oracle_min_distance(code: SumRankCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """min srk over the nonzero codewords, by plain enumeration of coefficients."""
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    f, shape = code.field, code.shape
    if f.q**code.k > budget:
        raise BudgetExceeded(f"{f.q ** code.k} codewords exceed the budget of {budget}")
    best = None
    for coeffs in product(range(f.q), repeat=code.k):
        if not any(coeffs):
            continue
        word = shape.split(code.codeword(coeffs))
        w = sum(rank_of(f, blk) for blk in word)
        if best is None or w < best:
            best = w
    return best


def oracle_chain_exists(code: SumRankCode, weights: Sequence[int] | None = None,
                        budget: int = DEFAULT_SUBSPACE_BUDGET) -> bool:
    """Is there a flag D_1 < ... < D_k = C with wt(D_r) = d_r for every r?"""
    _check_budget(code, budget)
    d = list(weights) if weights is not None else list(oracle_generalized_weights(code, budget))
    masks = _Masks(code)
    q, k = code.field.q, code.k
    whole = SubspaceBasis.full(code.field, k)

    def wt(sub: SubspaceBasis) -> int:
        mask = -1
        for row in sub.basis:
            mask &= masks.masks[sum(x * q**j for j, x in enumerate(row))]
        return masks.weight(mask)

    alive = [s for s in enumerate_subspaces(whole, 1) if wt(s) == d[0]]
    for r in range(2, k + 1):
        alive = [
            s for s in enumerate_subspaces(whole, r)
            if wt(s) == d[r - 1] and any(s.contains_subspace(a) for a in alive)
        ]
        if not alive:
            return False
    return bool(alive)


def exists_code_with_weights(q: int | FieldSpec, shape: Shape, seq: Sequence[int],
                             budget: int = DEFAULT_SUBSPACE_BUDGET) -> SearchVerdict:
    """Exhaustively look for a |seq|-dimensional code in M with weights seq."""
    field = q if isinstance(q, FieldSpec) else field_of_order(q)
    seq = tuple(seq)
    r = len(seq)
    n = shape.ambient_dim
    size = gaussian_binomial(n, r, field.q)
    if size > budget:
        raise BudgetExceeded(f"{size} candidate codes exceed the budget of {budget}")
    amb = SubspaceBasis.full(field, n)
    scanned = 0
    for sub in enumerate_subspaces(amb, r):
        scanned += 1
        cand = SumRankCode(field, shape, sub.basis)
        if oracle_generalized_weights(cand) == seq:
            if oracle_generalized_weights(SumRankCode(field, shape, cand.basis)) != seq:
                raise AssertionError("witness failed re-verification")  # pragma: no cover
            return SearchVerdict(True, cand, scanned)
    return SearchVerdict(False, None, scanned)
