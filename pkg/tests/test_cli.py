import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import CUBIC, HOMOGENEOUS, HYPERBOLA, PARABOLA, RATIONAL_FIBER
from corrsolve.algebraic import INF
from corrsolve.cli import REPORT_KEYS, InputError, main, parse_coordinate, parse_point, run
from corrsolve.theta import verify_certificate


def code(*argv):
    return run(list(argv))[0]


@pytest.mark.parametrize("text", [CUBIC, HYPERBOLA])
def test_finite_verdicts(text):
    c, rep = run(["analyze", "-p", text])
    assert c == 0 and rep.verdict == "finite"


def test_infinite_verdict():
    c, rep = run(["finiteness", "-p", HOMOGENEOUS])
    assert c == 0 and rep.verdict == "infinite"


def test_period_inconclusive_exit():
    c, rep = run(["period", "-p", HOMOGENEOUS, "--max-n", "3"])
    assert c == 2 and rep.verdict == "inconclusive"


@pytest.mark.parametrize("argv", [
    ["analyze", "-p", "x y"],
    ["analyze", "-p", "x^2 - 1"],
    ["analyze", "-p", "(x*y - 1)^2"],
    ["orbit", "-p", HYPERBOLA, "--start", "2,3"],
    ["orbit", "-p", HYPERBOLA, "--start", "2"],
    ["orbit", "-p", HYPERBOLA, "--start", "root:y^2-2:box(5,6),1"],
])
def test_invalid_input_exit(argv):
    c, rep = run(argv)
    assert c == 1 and rep.verdict == "invalid-input"
    assert rep.evidence[0]["message"]


def test_orbit_exits():
    assert code("orbit", "-p", HOMOGENEOUS, "--start", "0,0") == 0
    assert code("orbit", "-p", HOMOGENEOUS, "--start", "1,root:y^2+3*y+1:box(-3,-2)", "--cap", "20", "--no-points") == 2


def test_json_report_keys(capsys):
    assert main(["analyze", "-p", HYPERBOLA, "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert tuple(d) == REPORT_KEYS
    assert d["input"]["canonical"] == "x*y - 1"
    assert d["omega"]["x_poly"] == "x"


def test_text_report(capsys):
    main(["orbit", "-p", HOMOGENEOUS, "--start", "0,0"])
    out = capsys.readouterr().out
    assert "closed" in out and "size: 1" in out and "meets Omega: True" in out


def test_errors_go_to_stderr(capsys):
    assert main(["analyze", "-p", "x +* y"]) == 1
    cap = capsys.readouterr()
    assert cap.out == "" and "error" in cap.err


def test_certificate_from_json_verifies():
    c, rep = run(["certify", "-p", HYPERBOLA, "--height", "3"])
    assert c == 0
    d = json.loads(json.dumps(rep.as_dict()))
    assert verify_certificate(d["certificate"])


def test_certify_insufficient():
    c, rep = run(["certify", "-p", HOMOGENEOUS, "--height", "1"])
    assert c == 2 and rep.verdict == "insufficient"


def test_search_orbits():
    c, rep = run(["search-orbits", "-p", CUBIC, "--height", "2"])
    assert c == 0 and rep.verdict == "closed-orbits-found"
    assert all(r["size"] == 6 for r in rep.orbits if r["status"] == "closed" and not r["meets_infinity"])


@pytest.mark.parametrize("text", [CUBIC, HOMOGENEOUS, HYPERBOLA, PARABOLA] + RATIONAL_FIBER)
def test_no_fixture_trips_the_invariant_guard(text):
    for cmd in ("analyze", "omega"):
        assert code(cmd, "-p", text) in (0, 2)


def test_parse_coordinate():
    assert parse_coordinate("inf") is INF
    assert parse_coordinate("-3/4").value == Fraction(-3, 4)
    r = parse_coordinate("root:y^2-2:box(1,2)")
    assert r.degree == 2 and 1 < r.approx().real < 2
    z = parse_coordinate("root:x^2+1:box(-1,1,0,2)")
    assert z.degree == 2 and z.approx().imag > 0
    with pytest.raises(InputError):
        parse_coordinate("root:x^2+1")
    with pytest.raises(InputError):
        parse_coordinate("root:x^2-2:box(0,1,2)")
    pt = parse_point("root:x^2-2:box(1,2), inf")
    assert pt.second is INF


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "corrsolve", "period", "-p", HYPERBOLA],
                         capture_output=True, text=True, timeout=60)
    assert out.returncode == 0 and "period: 1" in out.stdout
