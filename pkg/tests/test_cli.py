import json
import math
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from sdcfence import Arc, ArcChain, ConvexBody, InvalidInput
from sdcfence.cli import run
from sdcfence.io import canonicalize, dumps, fmt, load_body, load_chain, load_sds, parse_point
from sdcfence.render import Scene, path_data

FIX = Path(__file__).parent / "fixtures"


def _run(capsys, *args):
    code = run(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_number_format():
    assert fmt(0.0) == "0" and fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333"
    assert canonicalize({"a": (1.0000000000001, 2)}) == {"a": [1.0, 2]}
    with pytest.raises(InvalidInput):
        canonicalize(float("nan"))


@settings(max_examples=100)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_format_roundtrip_is_stable(x):
    assert fmt(float(fmt(x))) == fmt(x)


def test_loaders():
    assert load_body(str(FIX / "square.json")).n == 4
    assert load_body('{"vertices": [[0,0],[1,0],[0,1]]}').n == 3
    assert load_chain('{"vertices": [[0,0],[1,0]]}').length == 1.0
    sds = load_sds(str(FIX / "quarter_disc.json"))
    assert len(sds) == 4
    assert parse_point("1.5, -2") == (1.5, -2.0)
    for bad in ("1", "a,b", "1,2,3", "inf,0"):
        with pytest.raises(InvalidInput):
            parse_point(bad)
    with pytest.raises(InvalidInput):
        load_body("/no/such/file.json")
    with pytest.raises(InvalidInput):
        load_sds('{"components": [{"blob": 1}]}')


def test_svg_arc_commands():
    chain = ArcChain([Arc((0, 0), 1.0, 0.0, 1.5 * math.pi)])
    d = path_data(chain)
    # a sweep of 1.5 pi is split in two parts below 0.9 pi each
    assert d.count("A") == 2 and d.startswith("M1,0")
    svg = Scene().add_body(ConvexBody([(0, 0), (1, 0), (0, 1)])).add_chain(chain).to_svg()
    assert svg.startswith("<svg") and svg.endswith("</svg>\n")
    with pytest.raises(InvalidInput):
        Scene().to_svg()


def test_involute_command(capsys):
    code, out, err = _run(capsys, "--verify", "involute", "--body", str(FIX / "square.json"),
                          "--x0", "0,0", "--theta0", str(-math.pi / 2), "--extent", str(2 * math.pi))
    assert code == 0
    assert json.loads(out)["length"] == pytest.approx(5 * math.pi)
    assert "verify" in err


@pytest.mark.parametrize("extra", [["--kind", "j", "--x0", "1,0"], ["--kind", "g", "--z", "3,0"]])
def test_fence_command_verifies(capsys, extra):
    code, out, err = _run(capsys, "--verify", "fence", "--body", str(FIX / "hexagon.json"), *extra)
    assert code == 0, err
    assert "boundary" in json.loads(out)


def test_connect_command(capsys, tmp_path):
    svg = tmp_path / "c.svg"
    code, out, _ = _run(capsys, "--verify", "connect", "--body", str(FIX / "square.json"), "--x0", "0,0",
                        "--x1", "3,3", "--svg", str(svg))
    assert code == 0
    data = json.loads(out)
    assert data["region"] == "V" and len(data["connectors"]) == 2
    assert svg.read_text().startswith("<svg")


def test_extend_command(capsys):
    code, out, _ = _run(capsys, "extend", "--sds", str(FIX / "quarter_disc.json"))
    assert code == 0 and out.splitlines()[0] == "no"
    code, out, _ = _run(capsys, "--verify", "extend", "--sds", str(FIX / "collinear.json"))
    assert code == 0 and out.splitlines()[0] == "yes"
    code, out, _ = _run(capsys, "extend", "--sds", str(FIX / "four_points_rho3.json"), "--no-fast-path", "--cap", "0")
    assert code == 4 and out.splitlines()[0] == "resource_exhausted"


def test_validate_command(capsys):
    code, out, _ = _run(capsys, "--verify", "validate", "--curve", str(FIX / "backtrack.json"))
    assert code == 0
    data = json.loads(out)
    assert data["self_distancing"] is False and len(data["witness"]) == 3
    code, out, _ = _run(capsys, "validate", "--curve", '{"vertices": [[1,1],[2,2]]}',
                        "--against-body", str(FIX / "square.json"))
    assert json.loads(out) == {"distancing_from_body": True, "self_distancing": True, "witness": None}


def test_render_command(capsys):
    code, out, _ = _run(capsys, "render", "--body", str(FIX / "square.json"), "--x0", "0,0",
                        "--layers", "fence,body,left,right,gfence", "--z", "2,0.5")
    assert code == 0 and out.count("<path") == 5
    code, _, err = _run(capsys, "render", "--body", str(FIX / "square.json"), "--x0", "0,0", "--layers", "moon")
    assert code == 2 and "unknown layers" in err


def test_error_codes(capsys):
    assert _run(capsys, "involute", "--body", str(FIX / "square.json"), "--x0", "0.5,0.5")[0] == 2
    assert _run(capsys, "extend", "--sds", "missing.json")[0] == 2
    assert _run(capsys, "connect", "--body", str(FIX / "square.json"), "--x0", "0,0", "--x1", "0.5,0.5")[0] == 2
    assert _run(capsys, "nonsense")[0] == 2
    assert _run(capsys, "validate", "--curve", str(FIX / "backtrack.json"), "--against-body", "[1]")[0] == 2


def test_outputs_are_deterministic(capsys):
    args = ["fence", "--body", str(FIX / "circle64.json"), "--x0", "1,0"]
    assert _run(capsys, *args)[1] == _run(capsys, *args)[1]
    assert dumps({"b": 1, "a": 0.1 + 0.2}) == '{\n  "a": 0.3,\n  "b": 1\n}\n'
