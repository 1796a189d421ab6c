"""JSON formats and the command-line surface."""

import io
import json
from contextlib import redirect_stdout
from fractions import Fraction as F

from cubicnorm import serialize as ser
from cubicnorm.cli import main
from cubicnorm.cns import Matrix3CNS
from cubicnorm.composition import comp_preset
from cubicnorm.freudenthal import WSpace
from cubicnorm.presets import cns_preset
from cubicnorm.scalars import quadratic_field


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_scalar_and_element_roundtrip(rng):
    H = comp_preset("hamilton")
    x = H.elem([1, F(-2, 3), 0, 5])
    data = ser.enc_comp_elt(x)
    assert data["coords"] == ["1", "-2/3", "0", "5"]
    assert ser.dec_comp_elt(data) == x


def test_cns_descriptor_roundtrip():
    for J in [cns_preset("trivial"), cns_preset("fxq"), cns_preset("matrix3"),
              cns_preset("h3-quaternion"), cns_preset("etale-cubic"),
              cns_preset("cayleyu:2")]:
        data = ser.enc_cns_desc(J)
        assert ser.dec_cns_desc(data) == J
    JE = cns_preset("matrix3").base_change(quadratic_field(5))
    assert ser.dec_cns_desc(ser.enc_cns_desc(JE)) == JE


def test_w_element_roundtrip(rng):
    J = Matrix3CNS()
    W = WSpace(J)
    v = W.random(rng)
    data = ser.enc_w_elt(v)
    assert ser.dec_w_elt(data, W) == v


def test_cube_mapping():
    W = ser.cube_space()
    cube = [1, 0, 1, 1, 0, 1, 1, -2]
    v = ser.cube_to_w(cube, W)
    assert [ser.dec_scalar(x) for x in ser.w_to_cube(v)] == [F(x) for x in cube]


def test_ideal_roundtrip(rng):
    from cubicnorm.cns import CubicRingCNS, split_cubic_algebra
    from cubicnorm.rings_ideals import cube_to_balanced

    A = CubicRingCNS(split_cubic_algebra())
    W = WSpace(A)
    while True:
        v = W.random(rng, 2)
        if W.quartic(v) != 0:
            break
    _, ideal, _ = cube_to_balanced(A, v)
    data = ser.enc_ideal_sa(ideal)
    back = ser.dec_ideal_sa(data)
    assert back.basis == ideal.basis and back.beta == ideal.beta


def test_cli_verify_pass_and_counts():
    code, out = run_cli(["verify", "--structure", "preset:fxf",
                         "--trials", "25", "--seed", "7", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"]
    assert payload["passes"]["(x#)# = N(x) x"] == 25


def test_cli_verify_comp():
    code, out = run_cli(["verify", "--structure", "comp:hamilton",
                         "--trials", "30", "--seed", "3", "--json"])
    assert code == 0
    assert json.loads(out)["ok"]


def test_cli_determinism():
    args = ["verify", "--structure", "preset:trivial", "--trials", "20",
            "--seed", "9", "--json"]
    out1 = run_cli(args)
    out2 = run_cli(args)
    assert out1 == out2


def test_cli_usage_errors():
    code, _ = run_cli(["verify", "--structure", "preset:nonexistent"])
    assert code == 2
    code, _ = run_cli(["cube", "--to", "ideals", "--input", "{bad json"])
    assert code == 2
    code, _ = run_cli(["nope"])
    assert code == 2


def test_cli_bound_exceeded(rng):
    # an impossible witness bound: cap 0 forces exit 3 on the pair search
    code, _ = run_cli(["pair", "--preset", "thm-diag", "--coeffs", "1",
                       "--to", "ideals", "--bound", "0", "--json"])
    assert code == 3


def test_cli_cube_round_trip(tmp_path):
    cube = {"cube": [1, 0, 1, 1, 0, 1, 1, -2]}
    f = tmp_path / "cube.json"
    f.write_text(json.dumps(cube))
    code, out = run_cli(["cube", "--input", str(f), "--to", "ideals", "--json"])
    assert code == 0
    ideal = json.loads(out)["ideal"]
    f2 = tmp_path / "ideal.json"
    f2.write_text(json.dumps(ideal))
    code, out = run_cli(["cube", "--input", str(f2), "--to", "cube", "--json"])
    assert code == 0
    assert json.loads(out)["cube"] == ["1", "0", "1", "1", "0", "1", "1", "-2"]


def test_cli_pair_invariant():
    code, out = run_cli(["pair", "--preset", "bhargava-a1b1",
                         "--coeffs", "1,2,3,4", "--invariant", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["mu"] == ["1", "0", "0"]


def test_cli_lift(rng):
    J = cns_preset("matrix3")
    W = WSpace(J)
    while True:
        v = W.random(rng, 1)
        if W.quartic(v) != 0:
            break
    data = json.dumps(ser.enc_w_elt(v))
    code, out = run_cli(["lift", "--law", "wj", "--structure", "preset:matrix3",
                         "--input", data, "--json"])
    assert code == 0
    assert json.loads(out)["ok"]


def test_cli_lowrank():
    J = cns_preset("h3-rational")
    X = J.join((1, 1, 0), (J.comp.zero(),) * 3)
    data = json.dumps({"coords": [ser.enc_scalar(c) for c in X.coords]})
    code, out = run_cli(["lowrank", "--kind", "h3-rank2",
                         "--structure", "preset:h3-rational", "--input", data,
                         "--json"])
    assert code == 0
    assert json.loads(out)["ok"]


def test_cli_second_lift(rng):
    from conftest import rank4_with_antisym_omega
    from cubicnorm.presets import second_kind_preset

    sk = second_kind_preset("matrix:-1")
    v = rank4_with_antisym_omega(sk, rng)
    data = json.dumps(ser.enc_w_elt(v))
    code, out = run_cli(["lift", "--law", "second", "--second-kind", "matrix:-1",
                         "--input", data, "--json"])
    assert code == 0
    assert json.loads(out)["ok"]
