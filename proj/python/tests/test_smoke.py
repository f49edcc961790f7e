import pytest

import superbracket as sb

PHASE = """\
var x1 even
var x2 even
var xi1 odd
apply cotangent
let H = xi1*p_x1*p_x2
let r = x1*x2
"""


@pytest.fixture
def phase():
    return sb.cotangent(sb.base([("x1", "even"), ("x2", "even"), ("xi1", "odd")]))


def test_canonical_poisson(phase):
    assert str(sb.poisson(sb.Poly(phase, "p_x1"), sb.Poly(phase, "x1^2"))) == "2*x1"
    assert sb.poisson(sb.Poly(phase, "x1"), sb.Poly(phase, "p_x1")) == sb.Poly(phase, "-1")


def test_poly_arithmetic(phase):
    xi = sb.Poly(phase, "xi1")
    assert (xi * xi).is_zero()
    f = sb.Poly(phase, "x1 + x2")
    assert f - f == sb.Poly(phase, "0")
    assert 3 * f == f + f + f
    assert f.parity == "even" and xi.parity == "odd"
    assert sorted(c for _, c in (2 * f).terms()) == ["2", "2"]


def test_chart_names(phase):
    assert phase.names() == ["x1", "x2", "xi1", "p_x1", "p_x2", "p_xi1"]
    assert phase.size == 6


def test_load_chart_and_shift():
    chart, lets = sb.load_chart(PHASE)
    h, r = lets["H"], lets["r"]
    assert sb.is_master(h)
    shifted = sb.shift(h, r)
    assert shifted == sb.Poly(chart, "xi1*(p_x1 + x2)*(p_x2 + x1)")
    assert isinstance(sb.classify_shift(h, r), str)


def test_schouten_canonical():
    a = sb.anticotangent(sb.base([("x1", "even")]))
    assert sb.schouten(sb.Poly(a, "st_x1"), sb.Poly(a, "x1"), symmetric=True) == sb.Poly(a, "1")


def test_errors(phase):
    with pytest.raises(sb.Error):
        sb.Poly(phase, "x1 +")
    with pytest.raises(sb.Error):
        sb.Poly(phase, "nope")
    with pytest.raises(ValueError):
        sb.base([("x", "neither")])


def test_suite_subset():
    report = sb.run_suite(["graded.unit", "poisson.jacobi"], seed=3, jobs=2)
    assert report["schema"] == 1
    ids = {c["id"]: c for c in report["cases"]}
    assert set(ids) == {"graded.unit", "poisson.jacobi"}
    assert all(c["passed"] for c in ids.values())


def test_manifest_lists_cases():
    assert "schouten.jacobi" in sb.manifest()


def test_cli_in_process():
    code, out, err = sb.cli(["--json", "suite", "--manifest"])
    assert code == 0 and '"schema": 1' in out
    code, out, err = sb.cli(["--bogus"])
    assert code == 1 and err
