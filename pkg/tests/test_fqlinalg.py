from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from sumrank.fqlinalg import (
    MatFq,
    SubspaceBasis,
    enumerate_subspaces,
    gaussian_binomial,
    kernel,
    lift,
    mat_mul,
    rank_of,
    rref,
    span_of_rows,
    subspace_intersect,
    subspace_sum,
)
from sumrank.galois import field_of_order, fq_make

F2, F3, F4 = fq_make(2), fq_make(3), fq_make(2, 2)


def _det2(f, m):
    return f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0]))


def test_rref_examples():
    z = MatFq.of(F2, [[0, 0], [0, 0]])
    assert rref(z)[1] == 0
    red, r, piv = rref(MatFq.of(F2, [[1, 1], [1, 1]]))
    assert r == 1 and red.entries == ((1, 1), (0, 0)) and piv == (0,)
    m = [[1, 2], [2, 1]]
    assert _det2(F3, m) == 0  # 1 - 4 = -3 = 0 in F_3
    red, r, _ = rref(MatFq.of(F3, m))
    assert r == 1 and red.entries == ((1, 2), (0, 0))


def test_matfq_validation():
    with pytest.raises(ValueError):
        MatFq(F2, 1, 2, ((0, 2),))
    with pytest.raises(ValueError):
        MatFq(F2, 2, 2, ((0, 1),))


def _random_matrix(rng, f, r, c):
    return MatFq.of(f, [[rng.randrange(f.q) for _ in range(c)] for _ in range(r)], c)


@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4, 5, 9]), st.integers(1, 5), st.integers(1, 5))
def test_rref_idempotent_and_rank(seed, q, r, c):
    rng = random.Random(seed)
    f = field_of_order(q)
    m = _random_matrix(rng, f, r, c)
    red, rank, piv = rref(m)
    assert rref(red)[0] == red
    assert rank == rank_of(f, m.entries) == len(piv)
    # same row space
    assert span_of_rows(red).basis == span_of_rows(m).basis
    for i, p in enumerate(piv):
        assert red.entries[i][p] == 1
        assert all(red.entries[k][p] == 0 for k in range(r) if k != i)


def test_sum_and_intersection_examples():
    a = SubspaceBasis.span(F3, 3, [(1, 2, 0), (0, 1, 1)])
    assert subspace_intersect(a, a) == a
    e1 = SubspaceBasis.span(F2, 2, [(1, 0)])
    e2 = SubspaceBasis.span(F2, 2, [(0, 1)])
    assert subspace_intersect(e1, e2).dim == 0
    assert subspace_sum(e1, e2) == SubspaceBasis.full(F2, 2)


def test_modular_law_random():
    rng = random.Random(7)
    for _ in range(200):
        a = SubspaceBasis.span(F3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(3)])
        b = SubspaceBasis.span(F3, 4, [[rng.randrange(3) for _ in range(4)] for _ in range(2)])
        s, i = subspace_sum(a, b), subspace_intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim
        assert a.contains_subspace(i) and b.contains_subspace(i)
        # every vector lying in both lies in the intersection
        both = set(a.vectors()) & set(b.vectors())
        assert both == set(i.vectors())


def test_kernel_examples():
    ident = MatFq.of(F3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert span_of_rows(ident) == SubspaceBasis.full(F3, 3)
    assert kernel(ident).dim == 0
    zero = MatFq.of(F3, [[0, 0, 0]])
    assert span_of_rows(zero).dim == 0
    assert kernel(zero) == SubspaceBasis.full(F3, 3)


def test_rank_nullity_random_f4():
    rng = random.Random(11)
    for _ in range(100):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, F4, r, c)
        ker = kernel(m)
        assert ker.dim + rref(m)[1] == c
        for v in ker.basis:
            assert all(F4.dot(row, v) == 0 for row in m.entries)


def test_gaussian_binomial():
    assert gaussian_binomial(5, 0, 3) == 1
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(5, 2, 3) == 1210
    assert gaussian_binomial(4, 2, 3) == 130
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3, 2)


def test_enumerate_small_cases():
    v = SubspaceBasis.full(F2, 2)
    zero = list(enumerate_subspaces(v, 0))
    assert len(zero) == 1 and zero[0].dim == 0
    assert len(list(enumerate_subspaces(v, 1))) == 3
    assert len(list(enumerate_subspaces(SubspaceBasis.full(F3, 4), 2))) == 130


@pytest.mark.parametrize("q,k", [(2, 1), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4)])
def test_enumeration_counts_distinct_sorted(q, k):
    f = field_of_order(q)
    v = SubspaceBasis.full(f, k)
    for r in range(k + 1):
        subs = list(enumerate_subspaces(v, r))
        keys = [tuple(x for row in s.basis for x in row) for s in subs]
        assert len(subs) == gaussian_binomial(k, r, q)
        assert len(set(keys)) == len(keys)
        assert keys == sorted(keys)
        for s in subs:
            assert SubspaceBasis.span(f, k, s.basis) == s  # canonical RREF


def test_enumeration_matches_brute_force_f2_k4():
    # every subspace of F_2^4 as a set of vectors, found by closing random spans
    k = 4
    found = set()
    vecs = list(product(range(2), repeat=k))
    for r in range(k + 1):
        for subset in product(vecs, repeat=r):
            found.add(frozenset(SubspaceBasis.span(F2, k, list(subset)).vectors()))
    enumerated = {frozenset(s.vectors()) for r in range(k + 1)
                  for s in enumerate_subspaces(SubspaceBasis.full(F2, k), r)}
    assert enumerated == found


def test_enumerate_inside_subspace_and_lift():
    v = SubspaceBasis.span(F3, 4, [(1, 0, 2, 0), (0, 1, 1, 1)])
    lifted = {lift(v, s) for s in enumerate_subspaces(v, 1)}
    assert len(lifted) == 4
    assert all(v.contains_subspace(s) for s in lifted)


def test_coordinates():
    v = SubspaceBasis.span(F3, 3, [(1, 1, 0), (0, 1, 2)])
    w = tuple(F3.add(a, F3.mul(2, b)) for a, b in zip(*v.basis))
    assert v.coordinates(w) == (1, 2)
    assert v.coordinates((0, 0, 1)) is None


@settings(max_examples=50)
@given(st.integers(0, 2**32))
def test_mat_mul_associative(seed):
    rng = random.Random(seed)
    a, b, c = (_random_matrix(rng, F4, 3, 3).entries for _ in range(3))
    assert mat_mul(F4, mat_mul(F4, a, b), c) == mat_mul(F4, a, mat_mul(F4, b, c))
