"""Acceptance gate: nine criteria, one printed pass/fail line each.

Run with ``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the
verdict lines for passing criteria too).
"""

import time

import numpy as np
import pytest

from ingms.builders import (clean_orthogonal, covering_pmf,
                            covering_thresholds, hk_embedding, mac_embedding,
                            marton_embedding, orthogonal_sim_factorization,
                            point_to_point_sim_factorization, random_channel,
                            random_conditional, random_hk_inputs,
                            random_ingms_joint, random_orthogonal_channel)
from ingms.channel import compose_orthogonal
from ingms.cli import main as cli_main
from ingms.codingsim import (SimConfig, TypicalityParams, covering_experiment,
                             run_trials)
from ingms.fme import LinSys, is_feasible, satisfies
from ingms.pmf import build_joint
from ingms.region import (WRONG_SETS, BinRates, RatePoint, decoding_bounds,
                          decoding_bounds_general, hk_region,
                          hk_region_via_ingms, mac_common_region,
                          marton_region, orthogonal_capacity,
                          orthogonal_direct_rows, specialized_projection)

SUPPORT_EPS = 100.0   # typicality degenerates to exact support matching


def _verdict(name, ok, detail):
    line = f"{name} {'pass' if ok else 'FAIL'}: {detail}"
    print(line)
    assert ok, line


def _grid_mask(sys, vmap, grids):
    """Boolean membership of every grid point of a <=3-rate region."""
    ok = np.ones(np.broadcast_shapes(*(g.shape for g in grids)), dtype=bool)
    for row in sys.rows:
        lhs = np.zeros(ok.shape)
        for v, c in row.coeffs.items():
            lhs = lhs + c * grids[vmap[v]]
        ok &= lhs <= row.rhs + 1e-9
    return ok


def _axes3(lo, hi, step):
    a = np.arange(lo, hi + 1e-12, step)
    return (a[:, None, None], a[None, :, None], a[None, None, :])


def test_a1_orthogonal_direct_part_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(20):
        o = random_orthogonal_channel(rng)
        p_w = random_conditional(rng, (), 2)
        ps = [random_conditional(rng, (2,), 2) for _ in range(4)]
        cap = orthogonal_capacity(p_w, *ps, o)
        direct = orthogonal_direct_rows(p_w, *ps, o)
        for a, b in zip(cap.rows, direct.rows):
            assert a.label == b.label and a.coeffs == b.coeffs
            worst = max(worst, abs(a.rhs - b.rhs))
    dt = time.perf_counter() - start
    _verdict("A1", worst < 1e-9 and dt < 10,
             f"max |delta| {worst:.3g}, runtime {dt:.1f}s")


def test_a2_mac_specialization_grid():
    start = time.perf_counter()
    rng = np.random.default_rng(102)
    grids = _axes3(0.0, 2.0, 0.05)
    agree = total = 0
    for _ in range(5):
        p_w = random_conditional(rng, (), 2)
        p1 = random_conditional(rng, (2,), 2)
        p2 = random_conditional(rng, (2,), 2)
        law = rng.dirichlet(np.full(2, 0.3), size=(2, 2))
        f, ch = mac_embedding(p_w, p1, p2, law)
        proj = specialized_projection(build_joint(f, ch),
                                      ("R01", "R11", "R21"))
        direct = mac_common_region(p_w, p1, p2, law)
        a = _grid_mask(proj, {"R01": 0, "R11": 1, "R21": 2}, grids)
        b = _grid_mask(direct, {"R0": 0, "R1": 1, "R2": 2}, grids)
        agree += int((a == b).sum())
        total += a.size
    dt = time.perf_counter() - start
    _verdict("A2", agree == total and dt < 60,
             f"{agree}/{total} grid points agree, runtime {dt:.1f}s")


def test_a3_marton_specialization_grid():
    start = time.perf_counter()
    rng = np.random.default_rng(103)
    grids = _axes3(0.0, 2.0, 0.05)
    agree = total = 0
    for _ in range(5):
        p_w = rng.dirichlet(np.ones(2))
        p_u_w = random_conditional(rng, (2,), 2)
        p_v_w = random_conditional(rng, (2,), 2)
        p_x = rng.dirichlet(np.full(2, 0.3), size=(2, 2, 2))
        p_wuvx = (p_w[:, None, None, None] * p_u_w[:, :, None, None]
                  * p_v_w[:, None, :, None] * p_x)
        bc_law = rng.dirichlet(np.full(4, 0.3), size=2).reshape(2, 2, 2)
        f, ch = marton_embedding(p_wuvx, bc_law)
        proj = specialized_projection(build_joint(f, ch),
                                      ("R00", "R01", "R02"))
        direct = marton_region(p_wuvx, bc_law)
        a = _grid_mask(proj, {"R00": 0, "R01": 1, "R02": 2}, grids)
        b = _grid_mask(direct, {"R0": 0, "R1": 1, "R2": 2}, grids)
        agree += int((a == b).sum())
        total += a.size
    dt = time.perf_counter() - start
    _verdict("A3", agree == total and dt < 60,
             f"{agree}/{total} grid points agree, runtime {dt:.1f}s")


def test_a4_hk_pipeline_equivalence():
    rng = np.random.default_rng(104)
    agree = total = 0
    for _ in range(3):
        p_q, p1, p2, ch = random_hk_inputs(rng)
        direct = hk_region(p_q, p1, p2, ch)
        f, _ = hk_embedding(p_q, p1, p2, ch)
        via = hk_region_via_ingms(build_joint(f, ch))
        hi = max(r.rhs for r in direct.rows) + 0.1
        for _ in range(100):
            pt = {"R1": rng.uniform(0, hi), "R2": rng.uniform(0, hi)}
            agree += satisfies(direct, pt) == satisfies(via, pt)
            total += 1
    _verdict("A4", agree == total, f"{agree}/{total} points agree")


def test_a5_fme_grid_oracle():
    from scipy.optimize import linprog
    rng = np.random.default_rng(105)
    axis = np.arange(-10.0, 10.0 + 1e-12, 0.125)
    violations = 0
    for trial in range(200):
        nvar = int(rng.integers(1, 4)) if trial < 160 else int(rng.integers(4, 6))
        names = [f"v{i}" for i in range(nvar)]
        sys = LinSys(list(names))
        for _ in range(int(rng.integers(2, 7))):
            coeffs = {names[k]: int(c) for k, c in
                      enumerate(rng.integers(-3, 4, size=nvar)) if c}
            if coeffs:
                sys.add(coeffs, float(rng.uniform(-5, 5)))
        feasible = is_feasible(sys)
        if nvar <= 3:
            grids = np.meshgrid(*([axis] * nvar), indexing="ij", sparse=True)
            ok = np.ones(tuple([axis.size] * nvar), dtype=bool)
            for row in sys.rows:
                lhs = np.zeros(ok.shape)
                for k, nm in enumerate(names):
                    lhs = lhs + row.coeffs.get(nm, 0) * grids[k]
                ok &= lhs <= row.rhs + 1e-9
            if ok.any() and not feasible:
                violations += 1
        else:
            # continuous box relaxation: box-feasible forces is_feasible
            mat = np.array([[r.coeffs.get(nm, 0) for nm in names]
                            for r in sys.rows], dtype=float)
            rhs = np.array([r.rhs for r in sys.rows])
            res = linprog(np.zeros(nvar), A_ub=mat, b_ub=rhs,
                          bounds=[(-10, 10)] * nvar, method="highs")
            if res.status == 0 and not feasible:
                violations += 1
    _verdict("A5", violations == 0, f"{violations} violations in 200 systems")


def test_a6_covering_lemma_empirics():
    start = time.perf_counter()
    pmf = covering_pmf(0.7)
    t0, t1, t2, _ = covering_thresholds(pmf)
    typ = TypicalityParams(epsilon=0.25, n=10)
    hi = covering_experiment(pmf, (1.2 * t0, 1.2 * t1, 1.2 * t2), typ,
                             trials=500, seed=106)
    lo = covering_experiment(pmf, (0.5 * t0, 0.5 * t1, 0.5 * t2), typ,
                             trials=500, seed=106)
    dt = time.perf_counter() - start
    _verdict("A6",
             hi["no_cover_rate"] < 0.2 and lo["no_cover_rate"] > 0.8
             and dt < 300,
             f"above-threshold no-cover {hi['no_cover_rate']:.3f} (< 0.2), "
             f"below-threshold {lo['no_cover_rate']:.3f} (> 0.8), "
             f"runtime {dt:.0f}s")


def test_a7_end_to_end_coding():
    # clean orthogonal sub-channels with 4-ary inputs: every single-rate
    # bound is 2 bits, so 50% loading means rate 1.0 on all four privates
    ch = compose_orthogonal(clean_orthogonal(4))
    cfg = SimConfig(rates=RatePoint({"R11": 1.0, "R12": 1.0,
                                     "R21": 1.0, "R22": 1.0}),
                    bins=BinRates({}),
                    typ=TypicalityParams(epsilon=SUPPORT_EPS, n=8),
                    factorization=orthogonal_sim_factorization(4),
                    channel=ch, trials=200, seed=107)
    half = run_trials(cfg)

    # 25% above the 1-bit point-to-point bound of the binary sub-channel
    over_cfg = SimConfig(rates=RatePoint({"R11": 1.25}), bins=BinRates({}),
                         typ=TypicalityParams(epsilon=SUPPORT_EPS, n=8),
                         factorization=point_to_point_sim_factorization(2),
                         channel=compose_orthogonal(clean_orthogonal(2)),
                         trials=200, seed=108)
    over = run_trials(over_cfg)
    again = run_trials(over_cfg)
    deterministic = over["outcomes"] == again["outcomes"]
    _verdict("A7",
             half["total_error"] <= 0.05 and over["total_error"] >= 0.5
             and deterministic,
             f"half-load error {half['total_error']:.3f} (<= 0.05), "
             f"overload error {over['total_error']:.3f} (>= 0.5), "
             f"deterministic {deterministic}")


def test_a8_information_measure_suite():
    rng = np.random.default_rng(109)
    worst = 0.0
    for _ in range(100):
        j = random_ingms_joint(rng)
        chain = abs(j.entropy({"U1", "V1"}, {"W0"})
                    - j.entropy({"U1"}, {"W0"})
                    - j.entropy({"V1"}, {"U1", "W0"}))
        nonneg = -min(0.0, j.mutual_information({"U1"}, {"W2"}, {"W0"}))
        indep = j.mutual_information({"X1", "W1", "U1", "V1"},
                                     {"X2", "W2", "U2", "V2"},
                                     {"W0", "U0", "V0"})
        worst = max(worst, chain, nonneg, indep)
    _verdict("A8", worst < 1e-9, f"max deviation {worst:.3g} over 100 joints")


def test_a9_diagnostic_transparency(capsys):
    rng = np.random.default_rng(110)
    worst = 0.0
    for _ in range(10):
        j = random_ingms_joint(rng, random_channel(rng))
        for rx in (1, 2):
            printed = decoding_bounds(j, rx)
            for k in range(1, 14):
                worst = max(worst, abs(
                    printed[k - 1]
                    - decoding_bounds_general(j, rx, WRONG_SETS[k])))
    code = cli_main(["check", "--seed", "110"])
    out = capsys.readouterr().out
    reported = "decoding-bounds-vs-general-rule report max_delta" in out
    _verdict("A9", code == 0 and reported,
             f"check exit {code}, deltas reported ({reported}), "
             f"max delta here {worst:.3g}")
