import numpy as np
import pytest

from ingms.builders import (hk_embedding, mac_embedding, marton_embedding,
                            random_channel, random_conditional,
                            random_hk_inputs, random_ingms_joint)
from ingms.errors import MissingVariable, NotDagClosed
from ingms.fme import LinSys, satisfies
from ingms.pmf import build_joint
from ingms.region import (BIN_NAMES, RATE_NAMES, ROLE_CHILDREN, ROLE_PARENTS,
                          WRONG_SETS, RatePoint, decoding_bounds,
                          decoding_bounds_general, enlarge, hk_region,
                          hk_region_via_ingms, ingms_membership, ingms_system,
                          mac_common_region, marton_region,
                          specialized_projection, theta_terms)


@pytest.fixture(scope="module")
def joint():
    rng = np.random.default_rng(11)
    return random_ingms_joint(rng, random_channel(rng))


def test_rate_point_validation():
    with pytest.raises(ValueError):
        RatePoint({"R01": -0.1})
    p = RatePoint({"R01": 0.5})
    assert p.r["R01"] == 0.5 and p.r["R22"] == 0.0


def test_wrong_sets_are_dag_closed():
    for pattern in WRONG_SETS.values():
        s = set(pattern)
        for role in s:
            assert set(ROLE_CHILDREN[role]) <= s
    # parents/children tables agree
    for role, parents in ROLE_PARENTS.items():
        for p in parents:
            assert role in ROLE_CHILDREN[p]


def test_theta_terms_count_and_nonneg(joint):
    for rx in (1, 2):
        t = theta_terms(joint, rx)
        assert len(t) == 7
        assert all(v >= 0 for v in t)


def test_system_row_inventory(joint):
    sys = ingms_system(joint)
    assert len(sys.rows) == 35
    labels = [r.label for r in sys.rows]
    assert sum(l.startswith("bin:") for l in labels) == 9
    for y in ("Y1", "Y2"):
        assert [f"{y}:E{k}" for k in range(1, 14)] == \
            [l for l in labels if l.startswith(y)]


def test_printed_bounds_match_general_rule(joint):
    for rx in (1, 2):
        printed = decoding_bounds(joint, rx)
        for k in range(1, 14):
            g = decoding_bounds_general(joint, rx, WRONG_SETS[k])
            assert printed[k - 1] == pytest.approx(g, abs=1e-9)


def test_general_rule_rejects_open_patterns(joint):
    with pytest.raises(NotDagClosed):
        decoding_bounds_general(joint, 1, ("W1",))    # satellite A1 correct
    with pytest.raises(NotDagClosed):
        decoding_bounds_general(joint, 1, ())
    with pytest.raises(NotDagClosed):
        decoding_bounds_general(joint, 1, ("Z9",))


def test_missing_variable_raises():
    rng = np.random.default_rng(4)
    j = random_ingms_joint(rng)            # no channel: lacks Y1, Y2
    with pytest.raises(MissingVariable):
        decoding_bounds(j, 1)


def test_origin_membership(joint):
    assert ingms_membership(joint, RatePoint({}))
    assert not ingms_membership(joint, RatePoint({"R11": 50.0}))


def test_enlarge_trades_common_for_private():
    sys = LinSys(list(RATE_NAMES))
    sys.add({"R11": 1}, 0.2).add({"R10": 1}, 1.0)
    big = enlarge(sys)
    # target point shifts 0.5 of the common route onto the private rate
    assert satisfies(big, {"R10": 0.5, "R11": 0.7})
    assert not satisfies(sys, {"R10": 0.5, "R11": 0.7})
    # the enlargement never shrinks the region
    assert satisfies(big, {"R10": 1.0, "R11": 0.2})


def test_mac_specialization_coarse_grid():
    rng = np.random.default_rng(21)
    p_w = random_conditional(rng, (), 2)
    p1 = random_conditional(rng, (2,), 2)
    p2 = random_conditional(rng, (2,), 2)
    law = rng.dirichlet(np.full(2, 0.3), size=(2, 2))
    f, ch = mac_embedding(p_w, p1, p2, law)
    proj = specialized_projection(build_joint(f, ch), ("R01", "R11", "R21"))
    direct = mac_common_region(p_w, p1, p2, law)
    axis = np.arange(0.0, 1.0 + 1e-12, 0.125)
    for r0 in axis:
        for r1 in axis:
            for r2 in axis:
                assert satisfies(proj, {"R01": r0, "R11": r1, "R21": r2}) == \
                    satisfies(direct, {"R0": r0, "R1": r1, "R2": r2})


def test_marton_region_rows():
    rng = np.random.default_rng(22)
    p_w = rng.dirichlet(np.ones(2))
    p_u_w = random_conditional(rng, (2,), 2)
    p_v_w = random_conditional(rng, (2,), 2)
    p_x = random_conditional(rng, (2, 2, 2), 2)
    p_wuvx = (p_w[:, None, None, None] * p_u_w[:, :, None, None]
              * p_v_w[:, None, :, None] * p_x)
    bc_law = rng.dirichlet(np.full(4, 0.3), size=2).reshape(2, 2, 2)
    sys = marton_region(p_wuvx, bc_law)
    assert [r.label for r in sys.rows] == \
        ["R0+R1", "R0+R2", "R0+R1+R2:a", "R0+R1+R2:b", "2R0+R1+R2"]
    assert satisfies(sys, {"R0": 0.0, "R1": 0.0, "R2": 0.0})


def test_hk_pipeline_quick_agreement():
    rng = np.random.default_rng(23)
    p_q, p1, p2, ch = random_hk_inputs(rng)
    direct = hk_region(p_q, p1, p2, ch)
    f, _ = hk_embedding(p_q, p1, p2, ch)
    via = hk_region_via_ingms(build_joint(f, ch))
    hi = max(r.rhs for r in direct.rows) + 0.1
    for _ in range(25):
        pt = {"R1": rng.uniform(0, hi), "R2": rng.uniform(0, hi)}
        assert satisfies(direct, pt) == satisfies(via, pt)


def test_bin_rows_negative_orientation(joint):
    # covering rows lower-bound the bin sums: -B... <= -constant
    sys = ingms_system(joint)
    for r in sys.rows:
        if r.label.startswith("bin:"):
            assert all(c == -1 for c in r.coeffs.values())
            assert set(r.coeffs) <= set(BIN_NAMES)
            assert r.rhs <= 0
