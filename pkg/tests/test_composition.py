"""Cayley-Dickson composition algebras."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicnorm.composition import (
    CompAlgebra,
    cd_double,
    comp_axioms_check,
    comp_preset,
    find_nonassociative_triple,
)
from cubicnorm.scalars import DescriptorError, quadratic_field

small = st.integers(-6, 6)


def test_double_twice_gives_quaternions():
    D = cd_double(cd_double(CompAlgebra(()), -1), -1)
    assert D.gammas == comp_preset("hamilton").gammas
    i, j = D.basis()[1], D.basis()[2]
    assert i * j == -(j * i)
    assert (i * i).coords[0] == -1


def test_cd_norm_formula():
    C = CompAlgebra((1,))
    assert C.elem([3, 2]).norm() == 9 - 4


def test_conjugate_of_identity():
    O = comp_preset("octonion")
    assert O.one().conj() == O.one()


def test_quaternion_norm_sum_of_squares():
    H = comp_preset("hamilton")
    x = H.elem([1, 2, 3, 4])
    assert x.norm() == 1 + 4 + 9 + 16
    assert x * H.one() == x


def test_doubling_octonion_rejected():
    with pytest.raises(DescriptorError):
        cd_double(comp_preset("octonion"), -1)
    with pytest.raises(DescriptorError):
        CompAlgebra((1, 1, 0))


def test_octonion_nonassociative_triple():
    t = find_nonassociative_triple(comp_preset("octonion"))
    assert t is not None
    x, y, z = t
    assert (x * y) * z != x * (y * z)
    assert find_nonassociative_triple(comp_preset("hamilton")) is None


@pytest.mark.parametrize("name,trials", [
    ("hamilton", 200), ("split-octonion", 200), ("rational", 50),
    ("gaussian", 100), ("octonion", 60), ("split-quaternion", 100),
])
def test_axiom_suites(name, trials):
    report = comp_axioms_check(comp_preset(name), trials=trials, seed=11)
    assert report.ok(), report.failures


@given(st.tuples(small, small, small, small), st.tuples(small, small, small, small))
@settings(max_examples=80)
def test_quaternion_norm_multiplicative(xs, ys):
    H = comp_preset("hamilton")
    x, y = H.elem(list(xs)), H.elem(list(ys))
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == y.conj() * x.conj()


def test_base_changed_algebra(rng):
    E = quadratic_field(5)
    HE = comp_preset("hamilton").base_change(E)
    for _ in range(30):
        x, y = HE.random(rng), HE.random(rng)
        assert (x * y).norm() == x.norm() * y.norm()
        assert x + x.conj() == HE.from_scalar(x.trace())


def test_descriptor_mismatch():
    H = comp_preset("hamilton")
    G = comp_preset("gaussian")
    with pytest.raises(DescriptorError):
        H.one() * G.one()


def test_presets_parse():
    assert comp_preset("quadratic:7").gammas == (F(7),)
    assert comp_preset("quaternion:1,-3").gammas == (F(1), F(-3))
    with pytest.raises(DescriptorError):
        comp_preset("nope")
