from __future__ import annotations

import random

import pytest

from sumrank.codes import Shape, SumRankCode
from sumrank.galois import field_of_order


def random_shape(rng: random.Random, max_ambient: int = 10) -> Shape:
    while True:
        t = rng.randint(1, 4)
        blocks = []
        m_prev = rng.randint(1, 4)
        for _ in range(t):
            m = rng.randint(1, m_prev)
            n = rng.randint(1, m)
            blocks.append((m, n))
            m_prev = m
        shape = Shape(tuple(blocks))
        if shape.ambient_dim <= max_ambient:
            return shape


def random_code(rng: random.Random, q: int | None = None, shape: Shape | None = None,
                k: int | None = None, max_ambient: int = 10) -> SumRankCode:
    """A random nonzero code; k is an upper bound on the dimension."""
    f = field_of_order(q if q is not None else rng.choice([2, 3]))
    while True:
        sh = shape or random_shape(rng, max_ambient)
        kk = k if k is not None else rng.randint(1, 4)
        kk = min(kk, sh.ambient_dim)
        vecs = [tuple(rng.randrange(f.q) for _ in range(sh.ambient_dim)) for _ in range(kk)]
        code = SumRankCode(f, sh, vecs)
        if code.k:
            return code


def random_nested_pair(rng: random.Random, q: int = 3, n: int = 5) -> tuple[SumRankCode, SumRankCode]:
    f = field_of_order(q)
    sh = Shape.hamming(n)
    while True:
        k1 = rng.randint(1, n)
        c1 = SumRankCode(f, sh, [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k1)])
        if c1.k == 0:
            continue
        k2 = rng.randint(0, c1.k - 1)
        coeffs = [[rng.randrange(q) for _ in range(c1.k)] for _ in range(k2)]
        c2 = SumRankCode(f, sh, [c1.codeword(c) for c in coeffs])
        if c2.k < c1.k:
            return c1, c2


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)
