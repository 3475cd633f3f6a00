from __future__ import annotations

import random
from itertools import product

import pytest

from sumrank.codes import (
    Shape,
    code_weight,
    SumRankCode,
    ambient_weight_sequence,
    block_rank,
    is_mds,
    is_msrd,
    iter_codewords,
    min_distance,
    msrd_params_for_distance,
    srk_weight,
)
from sumrank.constructions import (
    CodeChain,
    SkewPoly,
    extended_rs,
    gabidulin_chain,
    lrs_chain,
    msrd_chain,
    msrd_chain_combined,
    pad_rows,
    realize_hamming,
    realize_rank_mn,
    realize_rank_tall,
    realize_relative,
    realize_sumrank,
    rs_chain,
    rs_code,
)
from sumrank.errors import ConstructionError
from sumrank.fqlinalg import SubspaceBasis
from sumrank.galois import extension, field_of_order, fq_make
from sumrank.oracle import oracle_generalized_weights, oracle_min_distance, oracle_relative_weights
from sumrank.weights import (
    chain_condition,
    generalized_weights,
    greedy_weights,
    is_subsequence,
    msrd_weight_sequence,
    relative_generalized_weights,
    relative_greedy_weights,
    verify_bounds,
)

F2, F3, F5, F7 = fq_make(2), fq_make(3), fq_make(5), fq_make(7)


# -- Reed-Solomon ---------------------------------------------------------------

def test_rs_examples():
    assert rs_code(7, 6, 6) == SumRankCode.full(F7, Shape.hamming(6))
    rs = rs_code(7, 6, 3)
    assert oracle_min_distance(rs) == 4 and is_mds(rs)
    assert rs_code(5, 5, 3).contains(rs_code(5, 5, 2))
    with pytest.raises(ConstructionError):
        rs_code(5, 6, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_rs_nesting(q):
    for n in range(1, q + 1):
        for k in range(n):
            small, big = rs_code(q, n, k), rs_code(q, n, k + 1)
            assert big.contains(small) and big.k == k + 1


def test_rs_chain():
    ch = rs_chain(5, 5)
    assert ch.distances == (1, 2, 3, 4, 5)
    assert [c.k for c in ch.codes] == [5, 4, 3, 2, 1]
    assert ch.member(3) == rs_code(5, 5, 3)


def test_extended_rs():
    for q in [2, 3, 4, 5]:
        assert extended_rs(q, 1).basis == ((1,) * (q + 1),)
    assert extended_rs(3, 2).k == 2
    assert not extended_rs(3, 2).contains(extended_rs(3, 1))
    with pytest.raises(ConstructionError):
        extended_rs(3, 4)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_extended_rs_not_nested(q):
    failures = [k for k in range(q) if not extended_rs(q, k + 1).contains(extended_rs(q, k))]
    assert failures
    # the evaluation part alone (plain RS) is nested
    assert all(rs_code(q, q, k + 1).contains(rs_code(q, q, k)) for k in range(q))


def test_extended_rs_last_coordinate():
    f = field_of_order(4)
    code = extended_rs(f, 3)
    # p = x^2 + 2x + 3 evaluates to a codeword whose last entry is the x^2 coefficient
    evals = tuple(f.add(f.add(3, f.mul(2, a)), f.mul(a, a)) for a in range(4))
    assert code.subspace().contains(evals + (1,))
    assert not code.subspace().contains(evals + (0,))


# -- Hamming realizer ----------------------------------------------------------------

def test_realize_hamming_examples():
    c = realize_hamming((2, 4, 6), 7)
    assert (c.k, c.shape.n) == (3, 6)
    assert oracle_generalized_weights(c) == (2, 4, 6)
    assert greedy_weights(c)[0] == (2, 4, 6)
    c = realize_hamming((1, 2, 3, 4, 5), 5)
    assert oracle_generalized_weights(c) == (1, 2, 3, 4, 5)
    assert c == SumRankCode.full(F5, Shape.hamming(5))
    assert oracle_generalized_weights(realize_hamming((3, 4, 5), 5, 5)) == (3, 4, 5)
    with pytest.raises(ConstructionError, match="q >= n"):
        realize_hamming((3, 4), 2, 4)
    with pytest.raises(ConstructionError):
        realize_hamming((2, 2), 7)
    with pytest.raises(ConstructionError):
        realize_hamming((2, 5), 7, 4)


def test_realize_hamming_prefix_rows():
    seq = (1, 3, 4, 7)
    code = realize_hamming(seq, 7)
    f = code.field
    rows = []
    for d in seq:
        row = []
        for a in range(7):
            v = 1
            for s in range(d, 7):
                v = f.mul(v, f.sub(a, s))
            row.append(v)
        rows.append(tuple(row))
    for d, row in zip(seq, rows):
        assert all(row[:d]) and not any(row[d:])
    for r in range(1, len(seq) + 1):
        prefix = SumRankCode(f, code.shape, rows[:r])
        assert code.contains(prefix)
        assert code_weight(prefix) == seq[r - 1]


def test_realize_relative_examples():
    c1, c2 = realize_relative((2, 4), 7, 8, 4, 2)
    assert c1.contains(c2) and (c1.k, c2.k) == (4, 2)
    assert relative_generalized_weights(c1, c2) == (2, 4) == oracle_relative_weights(c1, c2)
    assert relative_greedy_weights(c1, c2) == (2, 4)
    c1, c2 = realize_relative((2, 4), 7, 6, 2, 0)
    assert c2.k == 0 and c1 == realize_hamming((2, 4), 7, 6)
    with pytest.raises(ConstructionError):
        realize_relative((2, 4), 7, 8, 5, 2)
    with pytest.raises(ConstructionError):
        realize_relative((2, 7), 7, 8, 4, 2)


# -- rank metric ----------------------------------------------------------------------

def _e(m, n, pairs):
    v = [0] * (m * n)
    for i, j in pairs:
        v[(i - 1) * n + (j - 1)] = 1
    return tuple(v)


def test_rank_tall_example():
    c = realize_rank_tall((1, 2, 2), 2)
    assert c.shape.blocks == ((5, 2),)
    expected = SumRankCode(F2, c.shape, [_e(5, 2, [(1, 1)]), _e(5, 2, [(2, 1), (3, 2)]),
                                         _e(5, 2, [(4, 1), (5, 2)])])
    assert c == expected
    assert oracle_generalized_weights(c) == (1, 2, 2)
    one = realize_rank_tall((1,), 3)
    assert one.basis == ((1,),) and oracle_generalized_weights(one) == (1,)
    c = realize_rank_tall((2, 2, 2), 3)
    assert c.shape.blocks == ((6, 2),) and oracle_generalized_weights(c) == (2, 2, 2)
    with pytest.raises(ConstructionError):
        realize_rank_tall((2, 1), 2)
    with pytest.raises(ConstructionError):
        realize_rank_tall((), 2)


@pytest.mark.parametrize("seq", [(1, 2, 2), (1, 1, 3), (2, 3, 3), (1, 2, 3), (2, 2, 2)])
def test_rank_tall_key_step(seq):
    # any codeword outside <C_1..C_{r-1}> has rank >= d_r
    code = realize_rank_tall(seq, 2)
    f, sh = code.field, code.shape
    m, n = sh.blocks[0]
    gens = []
    top = 0
    for d in seq:
        gens.append(_e(m, n, [(top + s + 1, s + 1) for s in range(d)]))
        top += d
    for coeffs in product(range(2), repeat=len(seq)):
        if not any(coeffs):
            continue
        r = max(i for i, c in enumerate(coeffs) if c) + 1
        word = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % 2 for i in range(m * n))
        assert srk_weight(f, sh.split(word), sh) >= seq[r - 1]


@pytest.mark.parametrize("q,m,n", [(2, 2, 2), (2, 3, 3), (3, 2, 2), (2, 3, 2), (2, 4, 3)])
def test_gabidulin_chain(q, m, n):
    ch = gabidulin_chain(q, m, n)
    assert ch.distances == tuple(range(1, n + 1))
    assert [c.k for c in ch.codes] == [m * (n - h + 1) for h in range(1, n + 1)]
    assert ch.head == SumRankCode.full(field_of_order(q), Shape(((m, n),)))
    assert not ch.nesting_failures()
    for h, c in zip(ch.distances, ch.codes):
        assert min_distance(c) == h


def test_gabidulin_last_member_all_full_rank():
    c = gabidulin_chain(2, 3, 3).member(3)
    assert c.k == 3
    words = list(iter_codewords(c, include_zero=False))
    assert len(words) == 7
    assert all(block_rank(F2, c.shape.split(w)[0]) == 3 for w in words)


def test_gabidulin_errors():
    with pytest.raises(ConstructionError):
        gabidulin_chain(2, 2, 3)


def test_lrs_examples():
    ch = lrs_chain(3, 2, 2, (2, 2))
    d2 = ch.member(2)
    assert d2.k == 6
    assert oracle_min_distance(d2) == 2
    assert is_msrd(d2) == (True, msrd_params_for_distance(d2.shape, 2))
    assert ch.head.k == 8
    assert not ch.nesting_failures()
    with pytest.raises(ConstructionError, match="requires q > t"):
        lrs_chain(2, 2, 2, (2, 2))
    with pytest.raises(ConstructionError):
        lrs_chain(3, 2, 2, (3, 1))


def test_lrs_representatives_have_distinct_norms():
    for q, m, t in [(3, 2, 2), (4, 2, 3), (5, 2, 4), (4, 3, 3), (7, 2, 6)]:
        f = field_of_order(q)
        ext = extension(fq_make(f.p, f.e * m), f)
        g = ext.big.primitive
        norms = [ext.norm(ext.big.pow(g, i)) for i in range(t)]
        assert len(set(norms)) == t


def test_skew_poly_matches_basis_rows():
    f = F3
    ext = extension(fq_make(3, 2), f)
    ch = lrs_chain(3, 2, 2, (2, 2), verify=False)
    a = [1, ext.big.primitive]
    rng = random.Random(4)
    for _ in range(20):
        coeffs = tuple(rng.randrange(9) for _ in range(2))
        poly = SkewPoly(ext, coeffs)
        vec = []
        for ai in a:
            vals = [poly.evaluate(ai, b) for b in ext.basis[:2]]
            mat = ext.expand_word(vals)
            vec.extend(x for r in mat for x in r)
        assert ch.member(3).subspace().contains(tuple(vec))


def test_pad_rows():
    ch = lrs_chain(3, 2, 2, (2, 2))
    code = ch.member(2)
    padded = pad_rows(code, [3, 2])
    assert padded.shape.blocks == ((3, 2), (2, 2))
    assert min_distance(padded) == min_distance(code)
    assert pad_rows(code, [2, 2]) == code
    for v, w in zip(iter_codewords(code), iter_codewords(padded)):
        assert srk_weight(F3, code.shape.split(v)) == srk_weight(F3, padded.shape.split(w))
    pch = pad_rows(ch, [3, 2])
    assert pch.distances == (3, 4)
    with pytest.raises(ConstructionError):
        pad_rows(code, [1, 2])
    with pytest.raises(ConstructionError):
        pad_rows(code, [2, 3])


def test_combined_chain_example():
    ch = msrd_chain_combined(2, Shape(((4, 3), (1, 1))), 2, 0)
    assert ch.distances == (4,)
    for h, c in zip(ch.distances, ch.codes):
        assert oracle_min_distance(c) == h
        assert is_msrd(c)[0]
        assert c.k <= 4


def test_combined_chain_larger():
    shape = Shape(((6, 3), (2, 2), (1, 1)))
    ch = msrd_chain_combined(3, shape, 3, 0)
    assert ch.distances == (6,)
    shape = Shape(((4, 3), (1, 1), (1, 1)))
    ch = msrd_chain_combined(3, shape, 2, 0)
    assert ch.distances == (4, 5)
    assert [c.k for c in ch.codes] == [2, 1]
    for h, c in zip(ch.distances, ch.codes):
        assert oracle_min_distance(c) == h
    assert not ch.nesting_failures()


def test_combined_chain_errors():
    with pytest.raises(ConstructionError, match="lrs_chain"):
        msrd_chain_combined(3, Shape(((2, 2), (2, 2))), 1, 0)
    with pytest.raises(ConstructionError) as exc:
        msrd_chain_combined(2, Shape(((2, 2), (1, 1), (1, 1))), 1, 0)
    # j should be 2; m_h = 2 >= 1*(2-0) holds; q = 2 > t - h = 2 fails
    assert len(exc.value.violations) == 2


def test_msrd_chain_selector():
    assert msrd_chain(7, Shape.hamming(6)).provenance["family"] == "rs"
    assert msrd_chain(2, Shape(((3, 2),))).provenance["family"] == "gabidulin"
    ch = msrd_chain(3, Shape(((3, 2), (2, 2))))
    assert ch.provenance["family"] == "lrs" and ch.distances == (3, 4)


# -- realizers over chains ---------------------------------------------------------------

def test_realize_sumrank_examples():
    ch = lrs_chain(3, 2, 2, (2, 2))
    c = realize_sumrank((2, 2, 3), ch)
    assert c.k == 3 and oracle_generalized_weights(c) == (2, 2, 3)
    assert chain_condition(c)[0]
    full = ambient_weight_sequence(ch.shape)
    c = realize_sumrank(full, ch)
    assert c == ch.head
    c = realize_sumrank((2, 4, 6), rs_chain(7, 6))
    assert oracle_generalized_weights(c) == (2, 4, 6)


def test_realize_sumrank_errors():
    ch = lrs_chain(3, 2, 2, (2, 2))
    with pytest.raises(ConstructionError, match="multiplicity"):
        realize_sumrank((2, 2, 2), ch)
    with pytest.raises(ConstructionError, match="subsequence"):
        realize_sumrank((1, 2), pad_rows(ch, [3, 2]))
    short = CodeChain(ch.field, ch.shape, (1, 2), ch.codes[:2])
    with pytest.raises(ConstructionError, match="no member"):
        realize_sumrank((1, 3), short)


def test_realize_rank_mn():
    c = realize_rank_mn((1, 2, 2), 2, 2, 2)
    assert c.shape.blocks == ((2, 2),) and oracle_generalized_weights(c) == (1, 2, 2)
    assert oracle_generalized_weights(realize_rank_mn((2, 2), 2, 2, 2)) == (2, 2)
    with pytest.raises(ConstructionError, match="run"):
        realize_rank_mn((1, 1, 1), 2, 2, 2)
    with pytest.raises(ConstructionError):
        realize_rank_mn((1, 3), 2, 2, 2)


def test_subcodes_of_msrd_codes_follow_the_suffix():
    rng = random.Random(9)
    chains = [lrs_chain(3, 2, 2, (2, 2)), gabidulin_chain(2, 3, 3), rs_chain(5, 5),
              pad_rows(lrs_chain(3, 2, 2, (2, 2)), [3, 2])]
    for ch in chains:
        for h, d in zip(ch.distances, ch.codes):
            ok, params = is_msrd(d, h)
            assert ok
            suffix = msrd_weight_sequence(ch.shape, params)
            assert generalized_weights(d) == suffix
            for _ in range(5):
                r = rng.randint(1, min(d.k, 4))
                sub = SumRankCode(d.field, d.shape,
                                  [d.codeword([rng.randrange(d.field.q) for _ in range(d.k)])
                                   for _ in range(r)])
                if sub.k:
                    assert is_subsequence(generalized_weights(sub), suffix)


def test_constructed_codes_pass_bounds():
    codes = [realize_hamming((2, 4, 6), 7), realize_rank_tall((1, 2, 2), 2),
             realize_rank_mn((1, 2, 2), 2, 2, 2), realize_sumrank((2, 2, 3), lrs_chain(3, 2, 2, (2, 2)))]
    codes += list(gabidulin_chain(3, 2, 2).codes)
    for c in codes:
        assert verify_bounds(c)["passed"]
