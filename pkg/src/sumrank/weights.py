"""Generalized, greedy and relative weights, sequence admissibility, bounds.

Generalized weights are computed through optimal anticodes: a subcode D
has wt(D) <= w exactly when D sits inside a product A of per-block optimal
anticodes with max sum-rank w, so

    d_r(C) = min{ maxsrk(A) : A a product of optimal anticodes, dim(C ∩ A) >= r }.

For a block F_q^{m x n} the optimal anticodes are the matrices whose rows
lie in a fixed subspace U of F_q^n (max rank dim U) and, when m = n, also
the matrices whose columns lie in a fixed subspace of F_q^m.  The search
therefore runs over tuples of small subspaces instead of over subcodes.

Greedy weights need explicit subcodes; they are grown level by level from
every minimiser of the previous level, with weights read off a
:class:`~sumrank.codes.SupportLattice`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .codes import (
    DEFAULT_CODEWORD_BUDGET,
    MsrdParams,
    Shape,
    SumRankCode,
    SupportLattice,
    ambient_weight_sequence,
    code_weight,
    max_anticode_value,
    min_distance,
)
from .errors import BudgetExceeded
from .fqlinalg import (
    SubspaceBasis,
    Vector,
    enumerate_subspaces,
    kernel_rows,
    rank_of,
    rref_rows,
)
from .galois import FieldSpec

DEFAULT_ANTICODE_BUDGET = 10**6
DEFAULT_GREEDY_BUDGET = 10**7


@dataclass(frozen=True)
class ChainWitness:
    """Nested subcodes D_1 < ... < D_k (ambient RREF bases) and their weights."""

    subcodes: tuple[SubspaceBasis, ...]
    weights: tuple[int, ...]


# -- generalized weights --------------------------------------------------------

def _block_anticodes(field: FieldSpec, m: int, n: int) -> list[tuple[int, str, tuple]]:
    """(max rank, kind, annihilator rows) for every optimal anticode of a block."""
    out = []
    for u in range(n + 1):
        for sub in enumerate_subspaces(SubspaceBasis.full(field, n), u):
            out.append((u, "rows", kernel_rows(field, sub.basis, n) if u else _identity(n)))
    if m == n:
        for u in range(1, m):
            for sub in enumerate_subspaces(SubspaceBasis.full(field, m), u):
                out.append((u, "cols", kernel_rows(field, sub.basis, m)))
    return out


def _identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _constraint(field: FieldSpec, blk, kind: str, ann) -> list[int]:
    # rows-kind: X w for w in ann; cols-kind: w^T X for w in ann.
    if kind == "rows":
        return [field.dot(row, w) for w in ann for row in blk]
    cols = list(zip(*blk))
    return [field.dot(w, col) for w in ann for col in cols]


def anticode_profile(code: SumRankCode, budget: int = DEFAULT_ANTICODE_BUDGET
                     ) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Yield (maxsrk(A), dim(C ∩ A), choice) over all optimal-anticode products A."""
    f, shape = code.field, code.shape
    per_block = []
    total = 1
    gens = [shape.split(v) for v in code.basis]
    for b, (m, n) in enumerate(shape.blocks):
        options = []
        for w, kind, ann in _block_anticodes(f, m, n):
            cols = [_constraint(f, g[b], kind, ann) for g in gens]
            options.append((w, cols))
        per_block.append(options)
        total *= len(options)
    if total > budget:
        raise BudgetExceeded(f"{total} anticode products exceed the budget of {budget}")
    k = code.k
    for choice in product(*(range(len(o)) for o in per_block)):
        weight = 0
        rows: list[list[int]] = [[] for _ in range(k)]
        for b, a in enumerate(choice):
            w, cols = per_block[b][a]
            weight += w
            for s in range(k):
                rows[s].extend(cols[s])
        dim = k - (rank_of(f, rows) if rows and rows[0] else 0)
        yield weight, dim, choice


def generalized_weights(code: SumRankCode, budget: int = DEFAULT_ANTICODE_BUDGET) -> tuple[int, ...]:
    """d_1, ..., d_k of a nonzero code."""
    if code.k == 0:
        raise ValueError("generalized weights of the zero code are undefined")
    k = code.k
    best = [code.shape.n + 1] * (k + 1)
    for weight, dim, _ in anticode_profile(code, budget):
        if weight < best[dim]:
            best[dim] = weight
    out = []
    running = code.shape.n + 1
    for r in range(k, 0, -1):
        running = min(running, best[r])
        out.append(running)
    return tuple(reversed(out))


# -- greedy weights -------------------------------------------------------------

def _normalized_on(positions: Sequence[int], k: int, q: int) -> Iterator[list[int]]:
    """Vectors supported on ``positions`` whose first nonzero entry is 1."""
    for i, lead in enumerate(positions):
        rest = positions[i + 1:]
        for vals in product(range(q), repeat=len(rest)):
            v = [0] * k
            v[lead] = 1
            for p, x in zip(rest, vals):
                v[p] = x
            yield v


class _Greedy:
    def __init__(self, code: SumRankCode, avoid: SumRankCode | None, budget: int):
        self.code = code
        self.f = code.field
        self.k = code.k
        self.lat = SupportLattice(code.field, code.shape)
        self.budget = budget
        self.spent = 0
        self._sig: dict[tuple, tuple] = {}
        if avoid is not None and avoid.k:
            self.avoid = tuple(code.coordinates(v) for v in avoid.basis)
        else:
            self.avoid = ()

    def sig(self, coords: Sequence[int]) -> tuple:
        key = tuple(coords)
        s = self._sig.get(key)
        if s is None:
            s = self.lat.signature(self.code.codeword(key))
            self._sig[key] = s
        return s

    def tick(self) -> None:
        self.spent += 1
        if self.spent > self.budget:
            raise BudgetExceeded(f"greedy search exceeded the budget of {self.budget} evaluations")

    def run(self) -> tuple[tuple[int, ...], list[dict]]:
        k, f = self.k, self.f
        levels: list[dict] = []
        current: dict[tuple, tuple] = {(): (self.lat.empty(), None)}
        weights = []
        target = k - len(self.avoid)
        for _ in range(target):
            best = None
            nxt: dict[tuple, tuple] = {}
            for key in sorted(current):
                sig_g, _ = current[key]
                pivots = [next(j for j, x in enumerate(r) if x) for r in key]
                free = [j for j in range(k) if j not in pivots]
                blocked = None
                if self.avoid:
                    blocked = SubspaceBasis.span(f, k, key + self.avoid)
                for v in _normalized_on(free, k, f.q):
                    if blocked is not None and blocked.contains(v):
                        continue
                    self.tick()
                    sig = self.lat.join(sig_g, self.sig(v))
                    w = self.lat.weight(sig)
                    if best is None or w < best:
                        best = w
                        nxt = {}
                    if w == best:
                        new_key, _ = rref_rows(f, key + (tuple(v),), k)
                        prev = nxt.get(new_key)
                        if prev is None or key < prev[1]:
                            nxt[new_key] = (sig, key)
            weights.append(best)
            levels.append(nxt)
            current = nxt
        return tuple(weights), levels

    def witness(self, levels: list[dict], weights: tuple[int, ...]) -> ChainWitness:
        key = min(levels[-1])
        chain = []
        for level in reversed(levels):
            chain.append(key)
            key = level[key][1]
        chain.reverse()
        n = self.code.shape.ambient_dim
        subs = tuple(
            SubspaceBasis.span(self.f, n, [self.code.codeword(r) for r in key]) for key in chain
        )
        return ChainWitness(subs, weights)


def greedy_weights(code: SumRankCode, budget: int = DEFAULT_GREEDY_BUDGET
                   ) -> tuple[tuple[int, ...], ChainWitness]:
    """Greedy weights g_1..g_k and one greedy chain.

    All minimisers are carried from level to level, so g_r is the minimum
    over every r-dimensional subcode containing some greedy (r-1)-subcode.
    The returned chain takes the smallest RREF key at the top level and the
    smallest parent key at each step down.
    """
    if code.k == 0:
        raise ValueError("greedy weights of the zero code are undefined")
    g = _Greedy(code, None, budget)
    weights, levels = g.run()
    return weights, g.witness(levels, weights)


def chain_condition(code: SumRankCode, budget: int = DEFAULT_GREEDY_BUDGET
                    ) -> tuple[bool, ChainWitness | None]:
    d = generalized_weights(code)
    g, witness = greedy_weights(code, budget)
    return (True, witness) if d == g else (False, None)


# -- relative weights (block codes) -------------------------------------------

def _check_pair(c1: SumRankCode, c2: SumRankCode) -> None:
    if not c1.shape.is_hamming:
        raise ValueError("relative weights are defined for block codes only")
    if c1.field != c2.field or c1.shape != c2.shape:
        raise ValueError("codes live in different ambient spaces")
    if not c1.contains(c2) or c2.k >= c1.k:
        raise ValueError("need C2 to be a proper subcode of C1")


def _restricted_dim(code: SumRankCode, outside: Sequence[int]) -> int:
    """dim of the codewords vanishing on ``outside``."""
    if code.k == 0:
        return 0
    if not outside:
        return code.k
    rows = [[v[j] for j in outside] for v in code.basis]
    return code.k - rank_of(code.field, rows)


def relative_generalized_weights(c1: SumRankCode, c2: SumRankCode,
                                 budget: int = DEFAULT_ANTICODE_BUDGET) -> tuple[int, ...]:
    """d_r(C1, C2) = min |S| with dim(C1 restricted to S) - dim(C2 restricted to S) >= r."""
    _check_pair(c1, c2)
    n = c1.shape.n
    if 2**n > budget:
        raise BudgetExceeded(f"2^{n} supports exceed the budget of {budget}")
    span = c1.k - c2.k
    best = [n + 1] * (span + 1)
    for mask in range(1 << n):
        outside = [j for j in range(n) if not mask >> j & 1]
        gap = _restricted_dim(c1, outside) - _restricted_dim(c2, outside)
        size = n - len(outside)
        if size < best[gap]:
            best[gap] = size
    out = []
    running = n + 1
    for r in range(span, 0, -1):
        running = min(running, best[r])
        out.append(running)
    return tuple(reversed(out))


def relative_greedy_weights(c1: SumRankCode, c2: SumRankCode,
                            budget: int = DEFAULT_GREEDY_BUDGET) -> tuple[int, ...]:
    """Greedy weights over subcodes of C1 meeting C2 only in 0.

    The relative greedy r-subcodes are the r-dimensional subcodes with
    trivial intersection with C2, of minimum support among those that
    contain a relative greedy (r-1)-subcode.
    """
    _check_pair(c1, c2)
    weights, _ = _Greedy(c1, c2, budget).run()
    return weights


# -- sequences ------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceVerdict:
    valid: bool
    reason: str | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"valid": self.valid, "reason": self.reason, "detail": self.detail}


def _block_of_value(shape: Shape, v: int) -> int:
    off = 0
    for j, (_, n) in enumerate(shape.blocks, start=1):
        if v <= off + n:
            return j
        off += n
    raise ValueError(v)


def check_sequence(shape: Shape, seq: Sequence[int]) -> SequenceVerdict:
    """Is seq the weight sequence of some code in M, given enough MSRD chains?

    Accepts exactly the non-decreasing sequences in [n] in which a value
    falling in block j occurs at most m_j times.
    """
    seq = list(seq)
    for r, x in enumerate(seq, start=1):
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            return SequenceVerdict(False, f"d_{r}={x!r} is not a positive integer", {"r": r})
    for r in range(1, len(seq)):
        if seq[r] < seq[r - 1]:
            return SequenceVerdict(
                False, f"sequence decreases at r={r}: d_{r}={seq[r - 1]} > d_{r + 1}={seq[r]}",
                {"r": r},
            )
    n = shape.n
    if seq and seq[-1] > n:
        return SequenceVerdict(False, f"d_{len(seq)}={seq[-1]} exceeds n={n}", {"r": len(seq)})
    count = 0
    for r, x in enumerate(seq, start=1):
        count = count + 1 if r > 1 and seq[r - 2] == x else 1
        j = _block_of_value(shape, x)
        m_j = shape.blocks[j - 1][0]
        if count > m_j:
            return SequenceVerdict(
                False, f"multiplicity of value {x} exceeds m={m_j}",
                {"r": r - m_j, "j": j, "value": x},
            )
    return SequenceVerdict(True)


def is_subsequence(seq: Sequence[int], of: Sequence[int]) -> bool:
    it = iter(of)
    return all(any(x == y for y in it) for x in seq)


def msrd_weight_sequence(shape: Shape, params: MsrdParams) -> tuple[int, ...]:
    """Weights of an MSRD code with parameters (j, delta): a suffix of the ambient sequence."""
    params.validate(shape)
    dim = params.dimension(shape)
    amb = ambient_weight_sequence(shape)
    return amb[len(amb) - dim:]


# -- bounds ---------------------------------------------------------------------

def verify_bounds(code: SumRankCode, weights: Sequence[int] | None = None,
                  budget: int = DEFAULT_CODEWORD_BUDGET) -> dict[str, bool]:
    """Check the standard necessary conditions on the weights of ``code``.

    Returns one boolean per item plus ``"passed"``.  Items that need
    codeword enumeration respect ``budget``.
    """
    d = list(weights) if weights is not None else list(generalized_weights(code))
    shape = code.shape
    k = code.k
    n = shape.n
    blocks = shape.blocks
    report: dict[str, bool] = {}

    report["first_weight_is_min_distance"] = d[0] == min_distance(code, budget)
    report["non_decreasing"] = all(a <= b for a, b in zip(d, d[1:]))
    report["last_weight_at_most_n"] = d[-1] <= n
    report["last_weight_is_code_weight"] = d[-1] == code_weight(code)

    ok = True
    for j in range(1, shape.t + 1):
        m_j, n_j = blocks[j - 1]
        cells = sum(m * nn for m, nn in blocks[: j - 1])
        cols = shape.column_offset(j)
        for delta in range(1, n_j + 1):
            shift = cells + delta * m_j
            for r in range(1, k - shift + 1):
                if d[r + shift - 1] < d[r - 1] + cols + delta:
                    ok = False
    report["shifted_growth"] = ok

    if shape.is_hamming:
        report["strictly_increasing"] = all(a < b for a, b in zip(d, d[1:]))

    ok = True
    for r in range(1, k + 1):
        for j in range(1, shape.t + 1):
            m_j, n_j = blocks[j - 1]
            cols = shape.column_offset(j)
            tail = sum(m * nn for m, nn in blocks[j - 1:])
            for delta in range(n_j):
                if d[r - 1] - 1 >= cols + delta and k > tail - m_j * delta + r - 1:
                    ok = False
    report["singleton"] = ok

    report["anticode"] = k <= max_anticode_value(code, budget)

    ok = True
    for j in range(1, shape.t + 1):
        m_j = blocks[j - 1][0]
        cols = shape.column_offset(j)
        for r in range(1, k - m_j + 1):
            hi = d[r + m_j - 1]
            if hi > cols and hi < d[r - 1] + 1:
                ok = False
    report["block_step"] = ok

    report["passed"] = all(report.values())
    return report


def weights_report(code: SumRankCode, greedy: bool = False, bounds: bool = False) -> dict:
    d = generalized_weights(code)
    out: dict = {"d": list(d)}
    if greedy:
        g, _ = greedy_weights(code)
        out["g"] = list(g)
        out["chain_condition"] = tuple(g) == d
    if bounds:
        out["bounds"] = verify_bounds(code, d)
    return out
