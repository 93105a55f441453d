import numpy as np
import pytest

from ingms.errors import UnknownVariable
from ingms.fme import (LinIneq, LinSys, _lp_prune, eliminate, eliminate_all,
                       implies, is_feasible, parse_row, satisfies)


def rows_as_set(sys):
    return {str(r) for r in sys.rows}


def test_eliminate_hand_example_upper_bound():
    # {-y <= 0, x + y <= 2} --(drop y)--> {x <= 2}
    sys = LinSys(["x", "y"]).add({"y": -1}, 0).add({"x": 1, "y": 1}, 2)
    out = eliminate(sys, "y")
    assert rows_as_set(out) == {"+1*x <= 2"}


def test_eliminate_hand_example_chained():
    # {x - y <= 0, y <= 1} --(drop y)--> {x <= 1}
    sys = LinSys(["x", "y"]).add({"x": 1, "y": -1}, 0).add({"y": 1}, 1)
    out = eliminate(sys, "y")
    assert rows_as_set(out) == {"+1*x <= 1"}


def test_eliminate_detects_infeasible_constant():
    # {-y <= -1, y <= 0} is empty: combination gives 0 <= -1
    sys = LinSys(["y"]).add({"y": -1}, -1).add({"y": 1}, 0)
    out = eliminate(sys, "y")
    assert any(r.violated_constant() for r in out.rows)
    assert not is_feasible(LinSys(["y"], list(sys.rows)))


def test_eliminate_scales_coefficients():
    # {2x - 3y <= 1, 3y <= 6} -> 2x <= 7, normalized by the gcd
    sys = LinSys(["x", "y"]).add({"x": 2, "y": -3}, 1).add({"y": 3}, 6)
    out = eliminate(sys, "y")
    assert rows_as_set(out) == {"+1*x <= 3.5"}


def test_normalized_divides_by_gcd():
    r = LinIneq({"a": 4, "b": -6}, 2.0).normalized()
    assert r.coeffs == {"a": 2, "b": -3}
    assert r.rhs == 1.0


def test_unknown_variable_raises():
    with pytest.raises(UnknownVariable):
        LinSys(["x"]).add({"z": 1}, 0)
    with pytest.raises(UnknownVariable):
        eliminate(LinSys(["x"]).add({"x": 1}, 0), "y")


def test_substitute():
    sys = LinSys(["x", "y"]).add({"x": 1, "y": 2}, 3)
    out = sys.substitute({"y": 1.0})
    assert out.variables == ["x"]
    assert rows_as_set(out) == {"+1*x <= 1"}


def test_implies_and_satisfies():
    sys = LinSys(["x"]).add({"x": 1}, 1)
    assert implies(sys, LinIneq({"x": 1}, 2.0))
    assert not implies(sys, LinIneq({"x": 1}, 0.5))
    assert satisfies(sys, {"x": 0.99})
    assert not satisfies(sys, {"x": 1.01})


def test_parse_row_roundtrip():
    r = LinIneq({"R01": 1, "B02": -2}, 0.4142135623731).normalized()
    assert str(parse_row(str(r))) == str(r)


def test_lp_prune_removes_implied_row():
    rows = [LinIneq({"x": 1}, 1.0), LinIneq({"y": 1}, 1.0),
            LinIneq({"x": 1, "y": 1}, 3.0)]
    out = _lp_prune(rows, ["x", "y"])
    assert {str(r) for r in out} == {"+1*x <= 1", "+1*y <= 1"}


def test_lp_prune_empty_polyhedron():
    rows = [LinIneq({"x": 1}, 0.0), LinIneq({"x": -1}, -1.0)]
    out = _lp_prune(rows, ["x"])
    assert len(out) == 1 and out[0].violated_constant()


def test_eliminate_all_matches_lp_oracle():
    # randomized feasibility cross-check against an independent solver
    from scipy.optimize import linprog
    rng = np.random.default_rng(7)
    for _ in range(40):
        nvar = int(rng.integers(1, 4))
        nrow = int(rng.integers(2, 7))
        names = [f"v{i}" for i in range(nvar)]
        mat = rng.integers(-3, 4, size=(nrow, nvar))
        rhs = rng.uniform(-4, 4, size=nrow)
        sys = LinSys(list(names))
        for i in range(nrow):
            coeffs = {names[k]: int(mat[i, k]) for k in range(nvar)}
            if not any(coeffs.values()):
                continue
            sys.add(coeffs, rhs[i])
        # bound the box so the LP oracle sees the same problem
        for nm in names:
            sys.add({nm: 1}, 10).add({nm: -1}, 10)
        res = linprog(np.zeros(nvar),
                      A_ub=np.array([[r.coeffs.get(nm, 0) for nm in names]
                                     for r in sys.rows], dtype=float),
                      b_ub=np.array([r.rhs for r in sys.rows]),
                      bounds=[(None, None)] * nvar, method="highs")
        assert is_feasible(sys) == (res.status == 0)


def test_eliminate_all_projection_correct():
    # project a 3-d simplex onto (x, y): x, y >= 0, x + y <= 1
    sys = LinSys(["x", "y", "z"])
    for nm in ("x", "y", "z"):
        sys.add({nm: -1}, 0)
    sys.add({"x": 1, "y": 1, "z": 1}, 1)
    out = eliminate_all(sys, ["z"])
    got = rows_as_set(out)
    assert "+1*x +1*y <= 1" in got
    assert satisfies(out, {"x": 0.5, "y": 0.5})
    assert not satisfies(out, {"x": 0.6, "y": 0.5})
