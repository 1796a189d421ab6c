"""Shared generators for the test suite.

Everything is seeded; heights stay small so exact arithmetic stays fast.
"""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from cubicnorm.cns import (
    CubicRingCNS,
    H3CNS,
    ProductCNS,
    TrivialCNS,
    Matrix3CNS,
    cubic_ring_algebra,
    split_cubic_algebra,
    split_cubic_idempotents,
)
from cubicnorm.composition import CompAlgebra, comp_preset
from cubicnorm.freudenthal import HOperator, WSpace, h_apply


@pytest.fixture
def rng():
    return random.Random(20260808)


def associative_variants():
    return [
        TrivialCNS(),
        ProductCNS(CompAlgebra(())),
        CubicRingCNS(cubic_ring_algebra(1, 0, 0, 1)),
        ProductCNS(comp_preset("hamilton")),
        Matrix3CNS(),
    ]


def hermitian_variants():
    return [H3CNS(CompAlgebra(())), H3CNS(comp_preset("gaussian")),
            H3CNS(comp_preset("hamilton"))]


def rand_rank4(W, rng, height=2, integral=True, unit_corner=False):
    for _ in range(2000):
        v = W.random(rng, height, integral)
        if not W.base.is_unit(W.quartic(v)):
            continue
        if unit_corner and v.a == 0 and v.d == 0:
            continue
        return v
    raise RuntimeError("no rank-4 element found")


def rand_word(W, v, rng, n=3, height=1):
    J = W.J
    for _ in range(n):
        k = rng.randint(0, 2)
        if k == 0:
            v = h_apply(HOperator("nj", (J.random(rng, height),)), v)
        elif k == 1:
            v = h_apply(HOperator("nbarj", (J.random(rng, height),)), v)
        else:
            v = h_apply(HOperator("wj"), v)
    return v


def rand_nondeg_pair(J, rng, height=1):
    from cubicnorm.lifting import disc_binary_cubic

    while True:
        A = J.random(rng, height)
        B = J.random(rng, height)
        a = J.norm(A)
        b = J.pair(J.adjoint(A), B)
        c = J.pair(A, J.adjoint(B))
        d = J.norm(B)
        if disc_binary_cubic(a, b, c, d) != 0:
            return A, B


def rand_rank2_h3(J, rng, words=3):
    """Random rank-2 Hermitian element: conjugate diag(c1, c2, 0)."""
    from cubicnorm.matops import mat_mul, mat_star

    comp = J.comp
    while True:
        d0 = J.join((F(rng.randint(1, 3)), F(rng.randint(1, 3)), 0), (comp.zero(),) * 3)
        m = tuple(tuple(comp.one() if i == j else comp.zero() for j in range(3))
                  for i in range(3))
        for _ in range(words):
            i, j = rng.sample(range(3), 2)
            e = [[comp.one() if a == b else comp.zero() for b in range(3)]
                 for a in range(3)]
            e[i][j] = comp.random(rng, 1)
            m = mat_mul(m, tuple(tuple(r) for r in e))
        X = J.from_matrix(mat_mul(mat_mul(mat_star(m, lambda x: x.conj()),
                                          J.to_matrix(d0)), m))
        if J.rank(X) == 2:
            return X


def rand_rank2_w(W, rng, words=3):
    """Random rank-2 element of W_{H_3(C)}: move (1, 0, c, 0) with c rank 1."""
    J = W.J
    comp = J.comp
    while True:
        c = J.join((F(rng.randint(1, 3)), 0, 0), (comp.zero(),) * 3)
        x = W.elem(1, J.zero(), c, 0)
        x = rand_word(W, x, rng, words)
        if W.rank(x) == 2:
            return x


def rand_rank3_w(W, rng, words=2):
    """Random rank-3 element: move (1, 0, c, d) with d^2 + 4n(c) = 0."""
    J = W.J
    comp = getattr(J, "comp", None)
    while True:
        if rng.random() < 0.5 and comp is not None:
            c = J.join((F(rng.randint(1, 3)), F(rng.randint(1, 3)), 0), (comp.zero(),) * 3)
            x = W.elem(1, J.zero(), c, 0)
        else:
            d = F(2 * rng.randint(1, 2))
            c1, c2 = F(rng.randint(1, 3)), F(rng.randint(1, 3))
            c3 = -d * d / (4 * c1 * c2)
            if comp is not None:
                c = J.join((c1, c2, c3), (comp.zero(),) * 3)
            else:
                continue
            x = W.elem(1, J.zero(), c, d)
        x = rand_word(W, x, rng, words)
        if W.rank(x) == 3:
            return x


def rand_rank3_w_commutative(A, W, rng, words=2):
    """Rank-3 elements over a commutative associative instance, through the
    split idempotents when available."""
    while True:
        d = F(2 * rng.randint(1, 2))
        target = -d * d / 4
        c = None
        if isinstance(A, CubicRingCNS) and A.alg.table == split_cubic_algebra().table:
            e1, e2, e3 = split_cubic_idempotents(A.alg)
            c1 = F(rng.randint(1, 2))
            c2 = F(rng.randint(1, 2))
            u = e1 * c1 + e2 * c2 + e3 * (target / (c1 * c2))
            from cubicnorm.cns import CnsElt

            c = CnsElt(A, u.coords)
        else:
            from cubicnorm.cns import CnsElt

            for _ in range(200):
                cand = A.random(rng, 2)
                if A.norm(cand) == target:
                    c = cand
                    break
        if c is None:
            continue
        x = W.elem(1, A.zero(), c, d)
        x = rand_word(W, x, rng, words)
        if W.rank(x) == 3:
            return x


def rank4_with_antisym_omega(sk, rng, words=2):
    """Rank-4 v in W_J with q(v)/D a rational square (so the second lift has
    an antisymmetric omega), a- or d-slot nonzero."""
    J = sk.J
    W = WSpace(J)
    D = -sk.K.modulus[0]
    comp = getattr(J, "comp", None)
    for _ in range(4000):
        d = F(rng.randint(-3, 3))
        t = F(rng.randint(1, 2))
        nc = (D * t * t - d * d) / 4
        if nc == 0:
            continue
        c1 = F(rng.choice([1, 1, 2, -1]))
        c2 = F(rng.choice([1, 1, 2, -1]))
        if comp is not None:
            c = J.join((c1, c2, nc / (c1 * c2)), (comp.zero(),) * 3)
        elif isinstance(J, CubicRingCNS) and J.alg.table == split_cubic_algebra().table:
            from cubicnorm.cns import CnsElt

            e1, e2, e3 = split_cubic_idempotents(J.alg)
            u = e1 * c1 + e2 * c2 + e3 * (nc / (c1 * c2))
            c = CnsElt(J, u.coords)
        else:
            return None
        v = W.elem(1, J.zero(), c, d)
        if not W.base.is_unit(W.quartic(v)):
            continue
        v = rand_word(W, v, rng, words)
        if v.a != 0 or v.d != 0:
            return v
    raise RuntimeError("generator failed")
