"""The Freudenthal space W_J = F + J + J + F over a cubic norm structure J:
symplectic pairing, quartic form, the cubic "flat" map and its trilinear
polarization, rank stratification, the standard similitude operators, and
(for associative coordinates) the 2x2 matrix R(v)/S(v), the shriek maps,
the two-sided GL_2(A)-action through the symmetrized tensor-cube model,
the degree-6 determinant, and the unit-class invariant of rank-one elements.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .cns import CNS, CnsElt, H3CNS
from .composition import CompElt
from .matops import mat, mat_mul, mat_star
from .scalars import (
    BoundExceededError,
    DescriptorError,
    PreconditionError,
    RationalBase,
    qq,
)

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


class WElt:
    """Element (a, b, c, d) of W_J with a, d base scalars and b, c in J."""

    __slots__ = ("W", "a", "b", "c", "d")

    def __init__(self, W: "WSpace", a, b: CnsElt, c: CnsElt, d):
        self.W = W
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def __add__(self, other: "WElt") -> "WElt":
        if not isinstance(other, WElt) or other.W != self.W:
            return NotImplemented
        return WElt(self.W, self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def __sub__(self, other: "WElt") -> "WElt":
        if not isinstance(other, WElt) or other.W != self.W:
            return NotImplemented
        return WElt(self.W, self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d)

    def __neg__(self) -> "WElt":
        return WElt(self.W, -self.a, -self.b, -self.c, -self.d)

    def __mul__(self, s) -> "WElt":
        return WElt(self.W, self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, WElt) or other.W != self.W:
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self) -> int:
        return hash(("w", self.a, self.b.coords, self.c.coords, self.d))

    def __repr__(self) -> str:
        return f"WElt(a={self.a}, b={list(self.b.coords)}, c={list(self.c.coords)}, d={self.d})"

    def is_zero(self) -> bool:
        return (_z(self.a) and self.b.is_zero() and self.c.is_zero() and _z(self.d))

    def coords(self) -> tuple:
        return (self.a,) + self.b.coords + self.c.coords + (self.d,)


def _z(v) -> bool:
    return v == 0 if isinstance(v, Fraction) else v.is_zero()


def _unit(base, v) -> bool:
    return base.is_unit(v)


class WSpace:
    """W_J for a cubic norm structure J (possibly base-changed)."""

    def __init__(self, J: CNS):
        self.J = J
        self.base = J.base
        self.dim = 2 + 2 * J.dim

    def elem(self, a, b, c, d) -> WElt:
        bb = b if isinstance(b, CnsElt) else self.J.elem(b)
        cc = c if isinstance(c, CnsElt) else self.J.elem(c)
        if bb.J != self.J or cc.J != self.J:
            raise DescriptorError("W element components from a different structure")
        return WElt(self, self.base.coerce(a), bb, cc, self.base.coerce(d))

    def zero(self) -> WElt:
        return self.elem(0, self.J.zero(), self.J.zero(), 0)

    def basis(self) -> list[WElt]:
        out = [self.elem(1, self.J.zero(), self.J.zero(), 0)]
        for e in self.J.basis():
            out.append(self.elem(0, e, self.J.zero(), 0))
        for e in self.J.basis():
            out.append(self.elem(0, self.J.zero(), e, 0))
        out.append(self.elem(0, self.J.zero(), self.J.zero(), 1))
        return out

    def random(self, rng, height: int = 2, integral: bool = True) -> WElt:
        return WElt(self, self.base.random(rng, height, integral),
                    self.J.random(rng, height, integral),
                    self.J.random(rng, height, integral),
                    self.base.random(rng, height, integral))

    def random_rank4(self, rng, height: int = 2, integral: bool = True) -> WElt:
        for _ in range(1000):
            v = self.random(rng, height, integral)
            if _unit(self.base, self.quartic(v)):
                return v
        raise BoundExceededError("no rank-4 element found")

    # -- the four basic forms -------------------------------------------------

    def pair(self, v: WElt, w: WElt):
        J = self.J
        return (v.a * w.d - J.pair(v.b, w.c) + J.pair(v.c, w.b) - v.d * w.a)

    def quartic(self, v: WElt):
        J = self.J
        s = v.a * v.d - J.pair(v.b, v.c)
        return (s * s + 4 * (v.a * J.norm(v.c)) + 4 * (v.d * J.norm(v.b))
                - 4 * J.pair(J.adjoint(v.b), J.adjoint(v.c)))

    def flat(self, v: WElt) -> WElt:
        J = self.J
        a, b, c, d = v.a, v.b, v.c, v.d
        bs, cs = J.adjoint(b), J.adjoint(c)
        pbc = J.pair(b, c)
        s = a * d - pbc
        fa = -(a * a * d) + a * pbc - 2 * J.norm(b)
        fb = J.cross(c, bs) * (-2) + cs * (2 * a) - b * s
        fc = J.cross(b, cs) * 2 - bs * (2 * d) + c * s
        fd = a * d * d - d * pbc + 2 * J.norm(c)
        return WElt(self, fa, fb, fc, fd)

    def trilinear(self, x: WElt, y: WElt, z: WElt) -> WElt:
        """t(x, y, z): symmetric, t(v,v,v) = flat(v), computed by exact
        polarization of the flat map."""
        f = self.flat
        acc = f(x + y + z) - f(x + y) - f(x + z) - f(y + z) + f(x) + f(y) + f(z)
        return acc * SIXTH

    def t_vvx(self, v: WElt, x: WElt, fv: Optional[WElt] = None,
              f2v: Optional[WElt] = None) -> WElt:
        """t(v, v, x) with optional cached flat(v), flat(2v)."""
        f = self.flat
        if fv is None:
            fv = f(v)
        if f2v is None:
            f2v = fv * 8
        return (f(v * 2 + x) - f2v - (f(v + x) * 2) + fv * 2 + f(x)) * SIXTH

    # -- rank ------------------------------------------------------------------

    def rank(self, v: WElt) -> int:
        if v.is_zero():
            return 0
        if self.is_rank_le1(v):
            return 1
        if self.flat(v).is_zero():
            return 2
        if _z(self.quartic(v)):
            return 3
        return 4

    def is_rank_le1(self, v: WElt) -> bool:
        """Rank <= 1 test.  Necessary conditions b# = ac, c# = db, (b,c) = 3ad
        reject fast; they are sufficient when a or d is a unit, and the full
        t(v,v,w) proportionality test decides the rest."""
        J = self.J
        if not (J.adjoint(v.b) == v.c * v.a):
            return False
        if not (J.adjoint(v.c) == v.b * v.d):
            return False
        if not (J.pair(v.b, v.c) == 3 * (v.a * v.d)):
            return False
        if _unit(self.base, v.a) or _unit(self.base, v.d):
            return True
        fv = self.flat(v)
        vc = v.coords()
        for x in self.basis():
            t = self.t_vvx(v, x, fv=fv)
            if not _proportional(self.base, t.coords(), vc):
                return False
        return True

    def rank_le1_certificate(self, v: WElt) -> bool:
        """Full certificate 3 t(v,v,x) = <x, v> v over every basis vector x."""
        fv = self.flat(v)
        for x in self.basis():
            lhs = self.t_vvx(v, x, fv=fv) * 3
            rhs = v * self.pair(x, v)
            if not (lhs == rhs):
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, WSpace) and other.J == self.J

    def __hash__(self) -> int:
        return hash(("W", self.J))

    def __repr__(self) -> str:
        return f"WSpace({self.J.name})"


def _proportional(base, t: tuple, v: tuple) -> bool:
    """t in (base) * v, decided coordinatewise (2x2 minors when no coordinate
    of v is a unit; exact over fields, componentwise over etale bases)."""
    for i, vi in enumerate(v):
        if _unit(base, vi):
            lam = t[i] * base.inv(vi) if not isinstance(vi, Fraction) else t[i] / vi
            return all(tj == vj * lam for tj, vj in zip(t, v))
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            if not (t[i] * v[j] == t[j] * v[i]):
                return False
    return True


# ---------------------------------------------------------------------------
# Similitude operators (the H(W_J) generators).
# ---------------------------------------------------------------------------


@dataclass
class HOperator:
    """One of the similitude generators acting on W_J.

    kind: "nj" (payload X in J), "nbarj" (payload Y in J), "m" (payload a
    unit scalar), "wj" (no payload), or "mgen" with payload either
    ("assoc", u, v) for L(u, v) on an associative instance or
    ("herm", mu, m) for X -> mu m X m* on a Hermitian instance.
    """

    kind: str
    payload: tuple = ()

    def similitude(self, W: WSpace):
        if self.kind in ("nj", "nbarj", "wj"):
            return qq(1) if isinstance(W.base, RationalBase) else W.base.coerce(1)
        if self.kind == "m":
            return self.payload[0]
        if self.kind == "mgen":
            alpha, _, _, delta = _mgen_maps(W, self.payload)
            return alpha * delta
        raise DescriptorError(f"unknown operator kind {self.kind!r}")


def h_apply(op: HOperator, v: WElt) -> WElt:
    W = v.W
    J = W.J
    a, b, c, d = v.a, v.b, v.c, v.d
    if op.kind == "nj":
        (X,) = op.payload
        Xs = J.adjoint(X)
        return WElt(W, a,
                    b + X * a,
                    c + J.cross(b, X) + Xs * a,
                    d + J.pair(c, X) + J.pair(b, Xs) + a * J.norm(X))
    if op.kind == "nbarj":
        (Y,) = op.payload
        Ys = J.adjoint(Y)
        return WElt(W,
                    a + J.pair(b, Y) + J.pair(c, Ys) + d * J.norm(Y),
                    b + J.cross(c, Y) + Ys * d,
                    c + Y * d,
                    d)
    if op.kind == "m":
        (lam,) = op.payload
        lam_inv = W.base.inv(W.base.coerce(lam)) if not isinstance(lam, (int, Fraction)) \
            else 1 / qq(lam)
        return WElt(W, a * lam * lam, b * lam, c, d * lam_inv)
    if op.kind == "wj":
        return WElt(W, d, -c, b, -a)
    if op.kind == "mgen":
        alpha, t, t_dual, delta = _mgen_maps(W, op.payload)
        return WElt(W, a * alpha, t(b), t_dual(c), d * delta)
    raise DescriptorError(f"unknown operator kind {op.kind!r}")


def _mgen_maps(W: WSpace, payload):
    """(alpha, t, t_dual, delta) for a norm-similitude pair on J."""
    J = W.J
    shape = payload[0]
    if shape == "assoc":
        _, u, vv = payload
        if not J.has_mul:
            raise PreconditionError("L(u, v) needs an associative instance")
        nu, nv = J.norm(u), J.norm(vv)
        if not (_unit(W.base, nu) and _unit(W.base, nv)):
            raise PreconditionError("L(u, v) needs invertible u, v")
        us, vs = J.adjoint(u), J.adjoint(vv)

        def t(b):
            return J.mul(J.mul(vv, b), us)

        def t_dual(c):
            return J.mul(J.mul(u, c), vs)

        return nu, t, t_dual, nv
    if shape == "herm":
        _, mu, m = payload
        if not isinstance(J, H3CNS) or not J.comp.is_associative:
            raise PreconditionError("(mu, m) payload needs a Hermitian instance "
                                    "with associative coordinates")
        mstar = mat_star(m, lambda e: e.conj())
        nm = J.norm(J.from_matrix(mat_mul(m, mstar)))
        if not _unit(W.base, nm):
            raise PreconditionError("m must be invertible")
        minv = m3c_inverse(J, m)
        minv_star = mat_star(minv, lambda e: e.conj())
        nm_inv = W.base.inv(nm) if not isinstance(nm, Fraction) else 1 / nm
        mu_q = qq(mu) if isinstance(mu, (int, Fraction)) else mu

        def t(b):
            return J.from_matrix(mat_mul(mat_mul(m, J.to_matrix(b)), mstar)) * mu_q

        def t_dual(c):
            return J.from_matrix(mat_mul(mat_mul(minv_star, J.to_matrix(c)), minv)) * mu_q

        return mu_q * nm, t, t_dual, mu_q * nm_inv
    raise DescriptorError(f"unknown mgen payload {shape!r}")


def m3c_inverse(J: H3CNS, m):
    """Inverse of a 3x3 matrix over the associative composition algebra of J,
    by exact linear algebra column by column."""
    comp = J.comp
    from .scalars import linsolve
    d = comp.dim
    basis = comp.basis()
    cols = []
    for j in range(3):
        for u in basis:
            col = []
            for i in range(3):
                col.extend(_flat_comp(m[i][j] * u))
            cols.append(col)
    full = [[Fraction(0)] * (9 * d) for _ in range(9 * d)]
    # unknown x: 3x3 over comp; m*x = 1. Build per column of x.
    out_cols = []
    for target_col in range(3):
        mat_rows = []
        for i in range(3):
            for k in range(d):
                row = []
                for j in range(3):
                    for u in basis:
                        row.append(_flat_comp(m[i][j] * u)[k])
                mat_rows.append(row)
        rhs = []
        for i in range(3):
            e = comp.one() if i == target_col else comp.zero()
            rhs.extend(_flat_comp(e))
        sol = linsolve(mat_rows, rhs)
        if sol is None:
            raise PreconditionError("matrix is not invertible")
        col = []
        for j in range(3):
            chunk = sol[j * d:(j + 1) * d]
            acc = comp.zero()
            for cval, u in zip(chunk, basis):
                acc = acc + u * cval
            col.append(acc)
        out_cols.append(col)
    return mat([[out_cols[j][i] for j in range(3)] for i in range(3)])


def _flat_comp(x: CompElt) -> list[Fraction]:
    out = []
    for c in x.coords:
        out.extend([c] if isinstance(c, Fraction) else c.alg.flatten(c))
    return out


# ---------------------------------------------------------------------------
# The associative theory: R(v), S(v), shrieks, GL_2(A), det_6, lambda.
# ---------------------------------------------------------------------------


def s_of(W: WSpace, v: WElt):
    """S(v) as a 2x2 matrix with entries in the (associative) instance:
    [[b# - ac, ad - cb - tr(ad-cb)/2], [ad - bc - tr(ad-bc)/2, c# - db]],
    where tr is the structure trace, so tr(ad - cb) = 3ad - (b, c)."""
    J = W.J
    if not J.has_mul:
        raise DescriptorError("S(v) needs associative coordinates; "
                              "use s_of_h3 for Hermitian instances")
    a, b, c, d = v.a, v.b, v.c, v.d
    one = J.one()
    pbc = J.pair(b, c)
    ad = a * d
    s11 = J.adjoint(b) - c * a
    s22 = J.adjoint(c) - b * d
    off = one * (pbc * HALF - ad * HALF)
    s12 = off - J.mul(c, b)
    s21 = off - J.mul(b, c)
    return ((s11, s12), (s21, s22))


def r_of(W: WSpace, v: WElt):
    """R(v) = 2 S(v) [[0,1],[-1,0]]; satisfies R(v)^2 = q(v)."""
    (s11, s12), (s21, s22) = s_of(W, v)
    return ((s12 * (-2), s11 * 2), (s22 * (-2), s21 * 2))


def r_right(W: WSpace, v: WElt):
    """R_r(v) = J_2 R(v) J_2^{-1} (the row-action counterpart)."""
    (r11, r12), (r21, r22) = r_of(W, v)
    return ((r22, -r21), (-r12, r11))


def s_of_h3(W: WSpace, v: WElt):
    """S(v) for J = H_3(C) with associative C, as a 6x6 matrix over C."""
    J = W.J
    if not (isinstance(J, H3CNS) and J.comp.is_associative):
        raise DescriptorError("s_of_h3 needs a Hermitian instance with associative C")
    a, b, c, d = v.a, v.b, v.c, v.d
    comp = J.comp
    mb, mc = J.to_matrix(b), J.to_matrix(c)
    pbc = J.pair(b, c)
    sc = comp.from_scalar(pbc * HALF - (a * d) * HALF)
    off = [[sc if i == j else comp.zero() for j in range(3)] for i in range(3)]
    s11 = _m3_sub(J.to_matrix(J.adjoint(b)), _m3_scale(mc, a))
    s22 = _m3_sub(J.to_matrix(J.adjoint(c)), _m3_scale(mb, d))
    s12 = _m3_sub(off, mat_mul(mc, mb))
    s21 = _m3_sub(off, mat_mul(mb, mc))
    rows = []
    for i in range(3):
        rows.append(tuple(s11[i]) + tuple(s12[i]))
    for i in range(3):
        rows.append(tuple(s21[i]) + tuple(s22[i]))
    return tuple(rows)


def _m3_scale(m, s):
    return [[m[i][j] * s for j in range(3)] for i in range(3)]


def _m3_sub(a, b):
    return [[a[i][j] - b[i][j] for j in range(3)] for i in range(3)]


def shriek_row(W: WSpace, ell) -> WElt:
    """(s, t)! = (n(s), s# t, t# s, n(t)) for a row pair over associative A."""
    J = W.J
    s, t = ell
    return WElt(W, J.norm(s), J.mul(J.adjoint(s), t), J.mul(J.adjoint(t), s), J.norm(t))


def shriek_col(W: WSpace, eta) -> WElt:
    """(u, v)^t ! = (n(u), v u#, u v#, n(v)) for a column pair."""
    J = W.J
    u, v = eta
    return WElt(W, J.norm(u), J.mul(v, J.adjoint(u)), J.mul(u, J.adjoint(v)), J.norm(v))


def _col_apply(J: CNS, g, x):
    u, w = x
    return (J.mul(g[0][0], u) + J.mul(g[0][1], w),
            J.mul(g[1][0], u) + J.mul(g[1][1], w))


def _row_apply(J: CNS, x, g):
    s, t = x
    return (J.mul(s, g[0][0]) + J.mul(t, g[1][0]),
            J.mul(s, g[0][1]) + J.mul(t, g[1][1]))


def _terms(W: WSpace, v: WElt, side: str):
    J = W.J
    z = J.zero()
    one = J.one()
    e = (one, z)
    f = (z, one)
    bf = (z, v.b)
    ce = (v.c, z)
    return [
        (v.a, (e, e, e)),
        (None, (bf, e, e)), (None, (e, bf, e)), (None, (e, e, bf)),
        (None, (ce, f, f)), (None, (f, ce, f)), (None, (f, f, ce)),
        (v.d, (f, f, f)),
    ]


def _project_col(W: WSpace, terms) -> WElt:
    J = W.J
    a = W.base.zero()
    d = W.base.zero()
    b = J.zero()
    c = J.zero()
    for coef, (x1, x2, x3) in terms:
        u1, w1 = x1
        u2, w2 = x2
        u3, w3 = x3
        al = J.pair(J.cross(u1, u2), u3)
        de = J.pair(J.cross(w1, w2), w3)
        be = (J.mul(w1, J.cross(u2, u3)) + J.mul(w2, J.cross(u3, u1))
              + J.mul(w3, J.cross(u1, u2)))
        ga = (J.mul(u1, J.cross(w2, w3)) + J.mul(u2, J.cross(w3, w1))
              + J.mul(u3, J.cross(w1, w2)))
        if coef is not None:
            al, de = al * coef, de * coef
            be, ga = be * coef, ga * coef
        a = a + al * SIXTH
        d = d + de * SIXTH
        b = b + be * SIXTH
        c = c + ga * SIXTH
    return WElt(W, a, b, c, d)


def _project_row(W: WSpace, terms) -> WElt:
    J = W.J
    a = W.base.zero()
    d = W.base.zero()
    b = J.zero()
    c = J.zero()
    for coef, (x1, x2, x3) in terms:
        s1, t1 = x1
        s2, t2 = x2
        s3, t3 = x3
        al = J.pair(J.cross(s1, s2), s3)
        de = J.pair(J.cross(t1, t2), t3)
        be = (J.mul(J.cross(s2, s3), t1) + J.mul(J.cross(s3, s1), t2)
              + J.mul(J.cross(s1, s2), t3))
        ga = (J.mul(J.cross(t2, t3), s1) + J.mul(J.cross(t3, t1), s2)
              + J.mul(J.cross(t1, t2), s3))
        if coef is not None:
            al, de = al * coef, de * coef
            be, ga = be * coef, ga * coef
        a = a + al * SIXTH
        d = d + de * SIXTH
        b = b + be * SIXTH
        c = c + ga * SIXTH
    return WElt(W, a, b, c, d)


def gl2_act(W: WSpace, g, v: WElt, side: str = "left") -> WElt:
    """Action of a 2x2 matrix over A on W_A, defined for all of M_2(A) via
    the symmetrized-tensor model; agrees with the generator formulas on
    triangular, diagonal, and Weyl elements."""
    J = W.J
    if not J.has_mul:
        raise DescriptorError("the GL_2 action needs associative coordinates")
    terms = _terms(W, v, side)
    if side == "left":
        moved = [(coef, tuple(_col_apply(J, g, x) for x in xs)) for coef, xs in terms]
        return _project_col(W, moved)
    if side == "right":
        moved = [(coef, tuple(_row_apply(J, x, g) for x in xs)) for coef, xs in terms]
        return _project_row(W, moved)
    raise DescriptorError("side must be 'left' or 'right'")


def det6(W: WSpace, g, side: str = "left"):
    """Degree-6 similitude of g in M_2(A): <g v0, g w0> for a symplectic pair
    with <v0, w0> = 1.  Multiplicative, defined for singular g too."""
    J = W.J
    v0 = W.elem(1, J.zero(), J.zero(), 0)
    w0 = W.elem(0, J.zero(), J.zero(), 1)
    return W.pair(gl2_act(W, g, v0, side), gl2_act(W, g, w0, side))


def m2_identity(J: CNS):
    one, zero = J.one(), J.zero()
    return ((one, zero), (zero, one))


def m2_mul(J: CNS, g, h):
    return tuple(tuple(J.mul(g[i][0], h[0][j]) + J.mul(g[i][1], h[1][j])
                       for j in range(2)) for i in range(2))


def m2_j2(J: CNS):
    one, zero = J.one(), J.zero()
    return ((zero, one), (-one, zero))


def m2_scalar(J: CNS, s):
    z = J.zero()
    return ((J.one() * s, z), (z, J.one() * s))


def m2_add(g, h):
    return tuple(tuple(g[i][j] + h[i][j] for j in range(2)) for i in range(2))


def m2_smul(g, s):
    return tuple(tuple(g[i][j] * s for j in range(2)) for i in range(2))


# -- the unit-class invariant of rank-one elements ---------------------------


def iter_search_rows(J: CNS, cap: int, seed: int = 0) -> Iterator[tuple]:
    """Deterministic height-ordered stream of candidate row pairs over J:
    basis singletons first, then basis pairs, then seeded random small rows."""
    basis = J.basis()
    z = J.zero()
    for e in basis:
        yield (e, z)
        yield (z, e)
    for e in basis:
        for f in basis:
            yield (e, f)
    rng = random.Random(seed)
    for height in range(1, 4):
        for _ in range(cap):
            yield (J.random(rng, height), J.random(rng, height))
    return


def lambda_invariant(W: WSpace, v: WElt, cap: int = 200, seed: int = 0):
    """A representative of the unit class lambda(v) of a rank-one element:
    the first unit among <l!, v> over a deterministic stream of rows l.

    Raises PreconditionError when v is not rank one, BoundExceededError when
    the stream is exhausted (raise cap)."""
    if W.rank(v) != 1:
        raise PreconditionError("lambda invariant needs a rank-one element")
    for ell in iter_search_rows(W.J, cap, seed):
        val = W.pair(shriek_row(W, ell), v)
        if _unit(W.base, val):
            return val
    raise BoundExceededError("lambda search bound exceeded; raise cap")


def norm_class_witness(J: CNS, lam1, lam2, cap: int = 400, seed: int = 0):
    """Semi-decision for lam1 = lam2 in units / n(A^x): a witness x with
    n(x) lam1 = lam2, or None for "unknown"."""
    rng = random.Random(seed)
    basis = J.basis()
    cands: list[CnsElt] = list(basis)
    for e in basis:
        for f in basis:
            cands.append(e + f)
            cands.append(e - f)
    scaled = []
    for x in cands:
        for k in (2, 3, 4, 6):
            scaled.append(x * Fraction(1, k))
            scaled.append(x * Fraction(k))
    cands.extend(scaled)
    while len(cands) < cap:
        cands.append(J.random(rng, 3, integral=False))
    for x in cands[:cap]:
        if J.norm(x) * lam1 == lam2:
            return x
    return None
