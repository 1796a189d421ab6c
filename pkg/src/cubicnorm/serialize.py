"""JSON encoding and decoding for the public value types.

Scalars serialize as strings "p/q" (lowest terms, "p" when q = 1); quotient
algebra elements as arrays of scalar strings, low degree first; composition
and cubic-norm-structure elements as coordinate arrays in the documented
canonical bases; W elements as {"a", "b", "c", "d"}; Bhargava cubes as eight
integers mapped onto W over the split cubic coordinates."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .cns import (
    CNS,
    CayleyUCNS,
    CnsElt,
    CubicRingCNS,
    H3CNS,
    Matrix3CNS,
    ProductCNS,
    TrivialCNS,
    cubic_ring_algebra,
    split_cubic_algebra,
    split_cubic_idempotents,
)
from .composition import CompAlgebra, CompElt
from .freudenthal import WElt, WSpace
from .scalars import (
    AlgElem,
    CommAlgebra,
    DescriptorError,
    QuotientAlgebra,
    qq,
    scalar_from_str,
    scalar_to_str,
)


def enc_scalar(x: Fraction) -> str:
    return scalar_to_str(x)


def dec_scalar(s) -> Fraction:
    if isinstance(s, int):
        return qq(s)
    return scalar_from_str(s)


def enc_base_elt(x) -> object:
    if isinstance(x, Fraction):
        return enc_scalar(x)
    if isinstance(x, AlgElem):
        return [enc_base_elt(c) for c in x.coords]
    raise DescriptorError(f"cannot serialize {type(x).__name__}")


def dec_base_elt(base, data):
    if isinstance(base, CommAlgebra):
        return base.elem([dec_base_elt(base.base, d) for d in data])
    return dec_scalar(data)


def enc_comp_desc(comp: CompAlgebra) -> dict:
    return {"gammas": [enc_scalar(g) for g in comp.gammas]}


def dec_comp_desc(data: dict) -> CompAlgebra:
    return CompAlgebra(tuple(dec_scalar(g) for g in data["gammas"]))


def enc_comp_elt(x: CompElt) -> dict:
    return {"comp": enc_comp_desc(x.alg), "coords": [enc_base_elt(c) for c in x.coords]}


def dec_comp_elt(data: dict) -> CompElt:
    comp = dec_comp_desc(data["comp"])
    return comp.elem([dec_scalar(c) for c in data["coords"]])


def enc_cns_desc(J: CNS) -> dict:
    base = None
    if isinstance(J.base, QuotientAlgebra):
        base = {"modulus": [enc_scalar(c) for c in J.base.modulus]}
    if isinstance(J, TrivialCNS):
        d = {"variant": "trivial"}
    elif isinstance(J, ProductCNS):
        d = {"variant": "fxc", "comp": enc_comp_desc(J.comp)}
    elif isinstance(J, CubicRingCNS):
        d = {"variant": "cubic", "table": [[list(map(enc_scalar, cell)) for cell in row]
                                           for row in J.alg.table]}
    elif isinstance(J, Matrix3CNS):
        d = {"variant": "matrix3"}
    elif isinstance(J, H3CNS):
        d = {"variant": "h3", "comp": enc_comp_desc(J.comp)}
    elif isinstance(J, CayleyUCNS):
        d = {"variant": "cayleyu", "comp": enc_comp_desc(J.comp),
             "gamma": enc_scalar(J.gamma)}
    else:
        raise DescriptorError(f"cannot serialize descriptor for {J.name}")
    if base is not None:
        d["base"] = base
    return {"cns": d}


def dec_cns_desc(data: dict) -> CNS:
    d = data["cns"] if "cns" in data else data
    variant = d["variant"]
    if variant == "trivial":
        J = TrivialCNS()
    elif variant == "fxc":
        J = ProductCNS(dec_comp_desc(d["comp"]))
    elif variant == "cubic":
        if "table" in d:
            table = tuple(tuple(tuple(dec_scalar(x) for x in cell) for cell in row)
                          for row in d["table"])
            J = CubicRingCNS(CommAlgebra("T", table))
        else:
            J = CubicRingCNS(cubic_ring_algebra(*[dec_scalar(c) for c in d["coeffs"]]))
    elif variant == "matrix3":
        J = Matrix3CNS()
    elif variant == "h3":
        J = H3CNS(dec_comp_desc(d["comp"]))
    elif variant == "cayleyu":
        J = CayleyUCNS(dec_comp_desc(d["comp"]), dec_scalar(d["gamma"]))
    else:
        raise DescriptorError(f"unknown cns variant {variant!r}")
    if "base" in d:
        J = J.base_change(QuotientAlgebra([dec_scalar(c) for c in d["base"]["modulus"]]))
    return J


def enc_cns_elt(x: CnsElt) -> dict:
    out = enc_cns_desc(x.J)
    out["coords"] = [enc_base_elt(c) for c in x.coords]
    return out


def dec_cns_elt(data: dict, J: Optional[CNS] = None) -> CnsElt:
    if J is None:
        J = dec_cns_desc(data)
    return CnsElt(J, tuple(dec_base_elt(J.base, c) for c in data["coords"]))


def enc_w_elt(v: WElt) -> dict:
    return {
        "a": enc_base_elt(v.a),
        "b": [enc_base_elt(c) for c in v.b.coords],
        "c": [enc_base_elt(c) for c in v.c.coords],
        "d": enc_base_elt(v.d),
    }


def dec_w_elt(data: dict, W: WSpace) -> WElt:
    J = W.J
    base = W.base
    if "cube" in data:
        return cube_to_w(data["cube"], W)
    return W.elem(dec_base_elt(base, data["a"]),
                  CnsElt(J, tuple(dec_base_elt(base, c) for c in data["b"])),
                  CnsElt(J, tuple(dec_base_elt(base, c) for c in data["c"])),
                  dec_base_elt(base, data["d"]))


def cube_space() -> WSpace:
    """W over the split cubic coordinates Z^3 (the 2x2x2 cube space)."""
    return WSpace(CubicRingCNS(split_cubic_algebra()))


def cube_to_w(cube, W: Optional[WSpace] = None) -> WElt:
    """Map eight integers (a, b1, b2, b3, c1, c2, c3, d) onto W over Z^3,
    using the primitive idempotents of the split cubic ring."""
    if W is None:
        W = cube_space()
    if len(cube) != 8:
        raise DescriptorError("a cube needs exactly 8 integers")
    a, b1, b2, b3, c1, c2, c3, d = [dec_scalar(x) for x in cube]
    J = W.J
    alg = J.alg
    e1, e2, e3 = split_cubic_idempotents(alg)
    b = e1 * b1 + e2 * b2 + e3 * b3
    c = e1 * c1 + e2 * c2 + e3 * c3
    return W.elem(a, CnsElt(J, b.coords), CnsElt(J, c.coords), d)


def w_to_cube(v: WElt) -> list:
    """Inverse of cube_to_w on integral elements of W over Z^3."""
    J = v.W.J
    alg = J.alg
    e1, e2, e3 = split_cubic_idempotents(alg)

    # the idempotents are orthogonal with trace 1, so tr(u e_i) reads off
    # the i-th component
    def comps(x: CnsElt):
        u = AlgElem(alg, x.coords)
        return [alg.trace(u * e) for e in (e1, e2, e3)]

    b = comps(v.b)
    c = comps(v.c)
    return [enc_scalar(x) for x in [v.a] + b + c + [v.d]]


def enc_ideal_sa(ideal) -> dict:
    return {
        "ring": {"quad": {"D": enc_scalar(ideal.ring.D)}},
        "structure": enc_cns_desc(ideal.J),
        "basis": [[enc_base_elt(c) for c in b.coords] for b in ideal.basis],
        "beta": enc_base_elt(ideal.beta),
    }


def dec_ideal_sa(data: dict):
    from .rings_ideals import IdealSA, quad_ring

    ring = quad_ring(dec_scalar(data["ring"]["quad"]["D"]))
    J = dec_cns_desc(data["structure"])
    E = ring.field()
    JE = J.base_change(E)
    basis = tuple(CnsElt(JE, tuple(dec_base_elt(E, c) for c in b)) for b in data["basis"])
    beta = dec_base_elt(E, data["beta"])
    return IdealSA(ring, J, E, basis, beta)


def enc_ideal_tc(ideal) -> dict:
    return {
        "ring": {"cubic": {"coeffs": [enc_scalar(c) for c in ideal.ring.coeffs]}},
        "comp": enc_comp_desc(ideal.comp),
        "basis": [[enc_base_elt(c) for c in b.coords] for b in ideal.basis],
        "beta": enc_base_elt(ideal.beta),
    }


def dec_ideal_tc(data: dict):
    from .rings_ideals import CubicRing, IdealTC

    coeffs = tuple(dec_scalar(c) for c in data["ring"]["cubic"]["coeffs"])
    ring = CubicRing(coeffs)
    comp = dec_comp_desc(data["comp"])
    T = ring.algebra()
    compT = comp.base_change(T)
    basis = tuple(CompElt(compT, tuple(dec_base_elt(T, c) for c in b))
                  for b in data["basis"])
    beta = dec_base_elt(T, data["beta"])
    return IdealTC(ring, comp, T, basis, beta)
