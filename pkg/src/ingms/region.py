"""Rate-region assembly for the two-transmitter/two-receiver network.

Builds every region as a LinSys of integer-coefficient inequalities
with mutual-information right-hand sides evaluated on a JointPMF, then
uses Fourier-Motzkin elimination for bin rates, rate-transfer
variables, and split rates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSpec
from .errors import MissingVariable, NotDagClosed
from .fme import LinIneq, LinSys, eliminate_all, is_feasible, satisfies
from .pmf import Factorization, JointPMF, build_joint

RATE_NAMES = ("R00", "R01", "R02", "R10", "R11", "R12", "R20", "R21", "R22")
BIN_NAMES = ("B01", "B02", "B10", "B11", "B12", "B20", "B21", "B22")


@dataclass(frozen=True)
class RatePoint:
    """Nonnegative rates in bits/use for the nine messages."""

    r: dict

    def __post_init__(self):
        vals = {k: float(self.r.get(k, 0.0)) for k in RATE_NAMES}
        for k, v in vals.items():
            if v < 0:
                raise ValueError(f"{k} = {v} < 0")
        object.__setattr__(self, "r", vals)


@dataclass(frozen=True)
class BinRates:
    """Nonnegative bin-rate exponents."""

    b: dict

    def __post_init__(self):
        vals = {k: float(self.b.get(k, 0.0)) for k in BIN_NAMES}
        for k, v in vals.items():
            if v < 0:
                raise ValueError(f"{k} = {v} < 0")
        object.__setattr__(self, "b", vals)


def _receiver(rx: int):
    """Decoded codeword roles, output name, and role -> (rate, bin) map."""
    if rx == 1:
        roles = ("W0", "U0", "W1", "U1", "W2", "U2")
        rates = {"W0": ("R00", None), "U0": ("R01", "B01"), "W1": ("R10", "B10"),
                 "U1": ("R11", "B11"), "W2": ("R20", "B20"), "U2": ("R21", "B21")}
        return roles, "Y1", rates
    if rx == 2:
        roles = ("W0", "V0", "W1", "V1", "W2", "V2")
        rates = {"W0": ("R00", None), "V0": ("R02", "B02"), "W1": ("R10", "B10"),
                 "V1": ("R12", "B12"), "W2": ("R20", "B20"), "V2": ("R22", "B22")}
        return roles, "Y2", rates
    raise ValueError("rx must be 1 or 2")


def _require(j: JointPMF, names):
    for n in names:
        if n not in j.names:
            raise MissingVariable(n)


def theta_terms(j: JointPMF, rx: int) -> list:
    """Seven interference penalty terms for the given receiver (index 1..7)."""
    (w0, a0, w1, a1, w2, a2), _, _ = _receiver(rx)
    _require(j, (w0, a0, w1, a1, w2, a2))
    mi = j.mutual_information
    return [
        mi({a0}, {w1}, {w0}),
        mi({a0}, {w2}, {w0}),
        mi({w1}, {w2}, {w0, a0}),
        mi({a0}, {w1, w2}, {w0}),
        mi({a1}, {w2}, {w0, a0, w1}),
        mi({a2}, {w1}, {w0, a0, w2}),
        mi({a1}, {a2}, {w0, a0, w1, w2}),
    ]


# Wrong-codeword patterns for the 13 decoding error events, expressed as
# role positions (W0, A0, W1, A1, W2, A2).  A wrong cloud center always
# drags its satellites along, so every pattern is closed downward in the
# superposition DAG.
WRONG_SETS = {
    1: ("A1",),
    2: ("A2",),
    3: ("A1", "A2"),
    4: ("W1", "A1"),
    5: ("W2", "A2"),
    6: ("W1", "A1", "A2"),
    7: ("A1", "W2", "A2"),
    8: ("A0", "A1", "A2"),
    9: ("W1", "A1", "W2", "A2"),
    10: ("A0", "W1", "A1", "A2"),
    11: ("A0", "A1", "W2", "A2"),
    12: ("A0", "W1", "A1", "W2", "A2"),
    13: ("W0", "A0", "W1", "A1", "W2", "A2"),
}

# Cloud centers of each decoded role, within one receiver's role set.
ROLE_PARENTS = {
    "W0": (),
    "A0": ("W0",),
    "W1": ("W0",),
    "W2": ("W0",),
    "A1": ("W0", "A0", "W1"),
    "A2": ("W0", "A0", "W2"),
}
ROLE_CHILDREN = {
    "W0": ("A0", "W1", "W2", "A1", "A2"),
    "A0": ("A1", "A2"),
    "W1": ("A1",),
    "W2": ("A2",),
    "A1": (),
    "A2": (),
}


def _role_vars(rx: int) -> dict:
    roles, y, _ = _receiver(rx)
    names = dict(zip(("W0", "A0", "W1", "A1", "W2", "A2"), roles))
    names["Y"] = y
    return names


def decoding_bounds(j: JointPMF, rx: int) -> list:
    """The thirteen decoding mutual-information bounds, index 1..13."""
    v = _role_vars(rx)
    w0, a0, w1, a1, w2, a2, y = (v[k] for k in ("W0", "A0", "W1", "A1", "W2", "A2", "Y"))
    _require(j, (w0, a0, w1, a1, w2, a2, y))
    t = theta_terms(j, rx)
    t1, t2, t3, t4, t5, t6, t7 = t
    mi = j.mutual_information
    tail = t1 + t2 + t3 + t5 + t6 + t7
    return [
        mi({a1}, {y}, {w0, a0, w1, w2, a2}) + t5 + t7,
        mi({a2}, {y}, {w0, a0, w1, w2, a1}) + t6 + t7,
        mi({a1, a2}, {y}, {w0, a0, w1, w2}) + t5 + t6 + t7,
        mi({w1, a1}, {y}, {w0, a0, w2, a2}) + t1 + t3 + t5 + t6 + t7,
        mi({w2, a2}, {y}, {w0, a0, w1, a1}) + t2 + t3 + t5 + t6 + t7,
        mi({w1, a1, a2}, {y}, {w0, a0, w2}) + t1 + t3 + t5 + t6 + t7,
        mi({a1, w2, a2}, {y}, {w0, a0, w1}) + t2 + t3 + t5 + t6 + t7,
        mi({a0, a1, a2}, {y}, {w0, w1, w2}) + t4 + t5 + t6 + t7,
        mi({w1, a1, w2, a2}, {y}, {w0, a0}) + tail,
        mi({a0, w1, a1, a2}, {y}, {w0, w2}) + tail,
        mi({a0, a1, w2, a2}, {y}, {w0, w1}) + tail,
        mi({a0, w1, a1, w2, a2}, {y}, {w0}) + tail,
        mi({w0, a0, w1, a1, w2, a2}, {y}, set()) + tail,
    ]


def decoding_bounds_general(j: JointPMF, rx: int, wrong_set) -> float:
    """Error-pattern bound from the generic rule:

    sum over wrong codewords of H(codeword | its cloud centers), minus
    the joint entropy of the wrong codewords given the correct ones and
    the channel output.
    """
    wrong = frozenset(wrong_set)
    for role in wrong:
        if role not in ROLE_PARENTS:
            raise NotDagClosed(f"unknown role {role}")
        for child in ROLE_CHILDREN[role]:
            if child not in wrong:
                raise NotDagClosed(f"{role} wrong but satellite {child} correct")
    if not wrong:
        raise NotDagClosed("empty error pattern")
    v = _role_vars(rx)
    correct = [r for r in ROLE_PARENTS if r not in wrong]
    total = 0.0
    for role in wrong:
        total += j.entropy({v[role]}, {v[p] for p in ROLE_PARENTS[role]})
    total -= j.entropy({v[r] for r in wrong},
                       {v[r] for r in correct} | {v["Y"]})
    return total


def _bin_constants(j: JointPMF):
    mi = j.mutual_information
    out = {"B01+B02": mi({"U0"}, {"V0"}, {"W0"})}
    for i in (1, 2):
        wi, ui, vi = f"W{i}", f"U{i}", f"V{i}"
        c0 = mi({"U0", "V0"}, {wi}, {"W0"})
        c1 = mi({"V0"}, {ui}, {"W0", "U0", wi})
        c2 = mi({"U0"}, {vi}, {"W0", "V0", wi})
        c12 = mi({"U0", ui}, {vi}, {"W0", "V0", wi})
        out[f"B{i}0"] = c0
        out[f"B{i}0+B{i}1"] = c0 + c1
        out[f"B{i}0+B{i}2"] = c0 + c2
        out[f"B{i}0+B{i}1+B{i}2"] = c0 + c1 + c12
    return out


def ingms_system(j: JointPMF) -> LinSys:
    """Full achievable-region constraint block over rate and bin variables.

    Nine covering (bin) rows plus thirteen decoding rows per receiver;
    effective rates are expanded as R + B.  Bin nonnegativity is added
    by the projection/membership operations, not here.
    """
    _require(j, ("W0", "U0", "V0", "W1", "U1", "V1", "W2", "U2", "V2", "Y1", "Y2"))
    sys = LinSys(list(RATE_NAMES) + list(BIN_NAMES))
    bc = _bin_constants(j)
    sys.add({"B01": -1, "B02": -1}, -bc["B01+B02"], label="bin:B01+B02")
    for i in (1, 2):
        sys.add({f"B{i}0": -1}, -bc[f"B{i}0"], label=f"bin:B{i}0")
        sys.add({f"B{i}0": -1, f"B{i}1": -1}, -bc[f"B{i}0+B{i}1"],
                label=f"bin:B{i}0+B{i}1")
        sys.add({f"B{i}0": -1, f"B{i}2": -1}, -bc[f"B{i}0+B{i}2"],
                label=f"bin:B{i}0+B{i}2")
        sys.add({f"B{i}0": -1, f"B{i}1": -1, f"B{i}2": -1},
                -bc[f"B{i}0+B{i}1+B{i}2"], label=f"bin:B{i}0+B{i}1+B{i}2")
    for rx in (1, 2):
        _, y, rates = _receiver(rx)
        rolemap = _role_vars(rx)
        inv = {v: k for k, v in rolemap.items()}
        bounds = decoding_bounds(j, rx)
        for k in range(1, 14):
            coeffs = {}
            for abstract in WRONG_SETS[k]:
                rname, bname = rates[rolemap[abstract]]
                coeffs[rname] = coeffs.get(rname, 0) + 1
                if bname is not None:
                    coeffs[bname] = coeffs.get(bname, 0) + 1
            sys.add(coeffs, bounds[k - 1], label=f"{y}:E{k}")
    return sys


def _with_bin_nonneg(sys: LinSys) -> LinSys:
    out = sys.copy()
    for b in BIN_NAMES:
        out.add({b: -1}, 0.0, label=f"nonneg:{b}")
    return out


def ingms_project(j: JointPMF) -> LinSys:
    """Eliminate all bin rates; result is over the nine message rates."""
    return project_bins(ingms_system(j))


def project_bins(sys: LinSys) -> LinSys:
    return eliminate_all(_with_bin_nonneg(sys), list(BIN_NAMES))


def ingms_membership(j: JointPMF, p: RatePoint) -> bool:
    """Closure-semantics membership of a rate point."""
    sys = _with_bin_nonneg(ingms_system(j)).substitute(p.r)
    return is_feasible(sys)


def transfer_system(sys: LinSys, triples=(0, 1, 2)):
    """Introduce the rate-transfer variables without eliminating them.

    A point is in the enlarged region iff some pre-transfer point
    (r_i0 + pi_i1 + pi_i2, r_i1 - pi_i1, r_i2 - pi_i2) with pi >= 0 and
    nonnegative shifted rates satisfies ``sys``.  Returns the augmented
    system and the transfer-variable names.
    """
    out = LinSys(list(sys.variables))
    pis = []
    for i in triples:
        p1, p2 = f"PI{i}1", f"PI{i}2"
        pis += [p1, p2]
        out.variables += [p1, p2]
    subst = {}
    for i in triples:
        subst[f"R{i}0"] = [(f"R{i}0", 1), (f"PI{i}1", 1), (f"PI{i}2", 1)]
        subst[f"R{i}1"] = [(f"R{i}1", 1), (f"PI{i}1", -1)]
        subst[f"R{i}2"] = [(f"R{i}2", 1), (f"PI{i}2", -1)]
    for row in sys.rows:
        coeffs = {}
        for v, c in row.coeffs.items():
            for name, mult in subst.get(v, [(v, 1)]):
                coeffs[name] = coeffs.get(name, 0) + c * mult
        out.add(coeffs, row.rhs, label=row.label)
    for i in triples:
        p1, p2 = f"PI{i}1", f"PI{i}2"
        out.add({p1: -1}, 0.0)
        out.add({p2: -1}, 0.0)
        # shifted private rates must stay nonnegative
        out.add({p1: 1, f"R{i}1": -1}, 0.0)
        out.add({p2: 1, f"R{i}2": -1}, 0.0)
    return out, pis


def enlarge(sys: LinSys, triples=(0, 1, 2)) -> LinSys:
    """Rate-transfer enlargement: common-route rate may be re-labelled as
    receiver-private rate within each message triple."""
    out, pis = transfer_system(sys, triples)
    return eliminate_all(out, pis)


def specialized_projection(j: JointPMF, keep_rates) -> LinSys:
    """Enlarged, projected region with all rates outside ``keep_rates``
    pinned to zero.

    Zero-rate substitution happens before any elimination, which keeps
    the Fourier-Motzkin intermediate systems small; the result equals
    pinning the same rates after a full projection and enlargement.
    """
    sys, pis = transfer_system(_with_bin_nonneg(ingms_system(j)))
    sys = sys.substitute({r: 0.0 for r in RATE_NAMES if r not in keep_rates})
    return eliminate_all(sys, list(BIN_NAMES) + pis)


def mac_common_region(p_w, p_x1_w, p_x2_w, law_y) -> LinSys:
    """Capacity region of the two-user MAC with a common message.

    ``law_y`` is P(y|x1,x2) shaped (|X1|, |X2|, |Y|).
    """
    j = mac_joint(p_w, p_x1_w, p_x2_w, law_y)
    mi = j.mutual_information
    sys = LinSys(["R0", "R1", "R2"])
    sys.add({"R1": 1}, mi({"X1"}, {"Y"}, {"X2", "W"}), label="R1")
    sys.add({"R2": 1}, mi({"X2"}, {"Y"}, {"X1", "W"}), label="R2")
    sys.add({"R1": 1, "R2": 1}, mi({"X1", "X2"}, {"Y"}, {"W"}), label="R1+R2")
    sys.add({"R0": 1, "R1": 1, "R2": 1}, mi({"X1", "X2"}, {"Y"}), label="R0+R1+R2")
    return sys


def mac_joint(p_w, p_x1_w, p_x2_w, law_y) -> JointPMF:
    p_w = np.asarray(p_w, dtype=float)
    p_x1_w = np.asarray(p_x1_w, dtype=float)
    p_x2_w = np.asarray(p_x2_w, dtype=float)
    law_y = np.asarray(law_y, dtype=float)
    f = Factorization()
    f.add([("W", len(p_w))], [], p_w)
    f.add([("X1", p_x1_w.shape[1])], ["W"], p_x1_w)
    f.add([("X2", p_x2_w.shape[1])], ["W"], p_x2_w)
    f.add([("Y", law_y.shape[2])], ["X1", "X2"], law_y)
    return build_joint(f)


def marton_region(p_wuvx, bc_law) -> LinSys:
    """Marton inner bound with common message for a broadcast channel.

    ``p_wuvx`` is the joint over (W, U, V, X); ``bc_law`` is P(y1,y2|x)
    shaped (|X|, |Y1|, |Y2|).
    """
    j = marton_joint(p_wuvx, bc_law)
    mi = j.mutual_information
    pen = mi({"U"}, {"V"}, {"W"})
    i_wu_y1 = mi({"W", "U"}, {"Y1"})
    i_wv_y2 = mi({"W", "V"}, {"Y2"})
    i_u_y1_w = mi({"U"}, {"Y1"}, {"W"})
    i_v_y2_w = mi({"V"}, {"Y2"}, {"W"})
    sys = LinSys(["R0", "R1", "R2"])
    sys.add({"R0": 1, "R1": 1}, i_wu_y1, label="R0+R1")
    sys.add({"R0": 1, "R2": 1}, i_wv_y2, label="R0+R2")
    sys.add({"R0": 1, "R1": 1, "R2": 1}, i_wu_y1 + i_v_y2_w - pen,
            label="R0+R1+R2:a")
    sys.add({"R0": 1, "R1": 1, "R2": 1}, i_u_y1_w + i_wv_y2 - pen,
            label="R0+R1+R2:b")
    sys.add({"R0": 2, "R1": 1, "R2": 1}, i_wu_y1 + i_wv_y2 - pen,
            label="2R0+R1+R2")
    return sys


def marton_joint(p_wuvx, bc_law) -> JointPMF:
    p_wuvx = np.asarray(p_wuvx, dtype=float)
    bc_law = np.asarray(bc_law, dtype=float)
    nw, nu, nv, nx = p_wuvx.shape
    f = Factorization()
    f.add([("W", nw), ("U", nu), ("V", nv), ("X", nx)], [], p_wuvx)
    f.add([("Y1", bc_law.shape[1]), ("Y2", bc_law.shape[2])], ["X"], bc_law)
    return build_joint(f)


ORTH_ROWS = (
    ({"R10": 1, "R11": 1}, "A1"),
    ({"R20": 1, "R21": 1}, "A2"),
    ({"R10": 1, "R11": 1, "R20": 1, "R21": 1}, "A12"),
    ({"R00": 1, "R01": 1, "R10": 1, "R11": 1, "R20": 1, "R21": 1}, "Asum"),
    ({"R10": 1, "R12": 1}, "B1"),
    ({"R20": 1, "R22": 1}, "B2"),
    ({"R10": 1, "R12": 1, "R20": 1, "R22": 1}, "B12"),
    ({"R00": 1, "R02": 1, "R10": 1, "R12": 1, "R20": 1, "R22": 1}, "Bsum"),
)


def orthogonal_capacity(p_w, p_a1_w, p_a2_w, p_b1_w, p_b2_w, o) -> LinSys:
    """Capacity region of an orthogonal network at one input product law."""
    f = Factorization()
    p_w = np.asarray(p_w, dtype=float)
    f.add([("W", len(p_w))], [], p_w)
    f.add([("XA1", o.xA1.size)], ["W"], np.asarray(p_a1_w, dtype=float))
    f.add([("XA2", o.xA2.size)], ["W"], np.asarray(p_a2_w, dtype=float))
    f.add([("XB1", o.xB1.size)], ["W"], np.asarray(p_b1_w, dtype=float))
    f.add([("XB2", o.xB2.size)], ["W"], np.asarray(p_b2_w, dtype=float))
    f.add([("Y1", o.lawA.shape[2])], ["XA1", "XA2"], o.lawA)
    f.add([("Y2", o.lawB.shape[2])], ["XB1", "XB2"], o.lawB)
    j = build_joint(f)
    return _orth_rows(j, cond_a="W", cond_b="W")


def orthogonal_direct_rows(p_w, p_a1_w, p_a2_w, p_b1_w, p_b2_w, o) -> LinSys:
    """Same eight rows built through the general scheme's substitution:
    two independent copies of the time-sharing variable, one per
    sub-network."""
    f = Factorization()
    p_w = np.asarray(p_w, dtype=float)
    f.add([("U0", len(p_w))], [], p_w)
    f.add([("V0", len(p_w))], [], p_w)
    f.add([("XA1", o.xA1.size)], ["U0"], np.asarray(p_a1_w, dtype=float))
    f.add([("XA2", o.xA2.size)], ["U0"], np.asarray(p_a2_w, dtype=float))
    f.add([("XB1", o.xB1.size)], ["V0"], np.asarray(p_b1_w, dtype=float))
    f.add([("XB2", o.xB2.size)], ["V0"], np.asarray(p_b2_w, dtype=float))
    f.add([("Y1", o.lawA.shape[2])], ["XA1", "XA2"], o.lawA)
    f.add([("Y2", o.lawB.shape[2])], ["XB1", "XB2"], o.lawB)
    j = build_joint(f)
    return _orth_rows(j, cond_a="U0", cond_b="V0")


def _orth_rows(j: JointPMF, cond_a: str, cond_b: str) -> LinSys:
    mi = j.mutual_information
    consts = {
        "A1": mi({"XA1"}, {"Y1"}, {"XA2", cond_a}),
        "A2": mi({"XA2"}, {"Y1"}, {"XA1", cond_a}),
        "A12": mi({"XA1", "XA2"}, {"Y1"}, {cond_a}),
        "Asum": mi({cond_a, "XA1", "XA2"}, {"Y1"}),
        "B1": mi({"XB1"}, {"Y2"}, {"XB2", cond_b}),
        "B2": mi({"XB2"}, {"Y2"}, {"XB1", cond_b}),
        "B12": mi({"XB1", "XB2"}, {"Y2"}, {cond_b}),
        "Bsum": mi({cond_b, "XB1", "XB2"}, {"Y2"}),
    }
    sys = LinSys(list(RATE_NAMES))
    for coeffs, label in ORTH_ROWS:
        sys.add(coeffs, consts[label], label=label)
    return sys


def hk_joint(p_q, p_x1w1_q, p_x2w2_q, ch: ChannelSpec) -> JointPMF:
    """Joint law for the interference-channel specialization.

    ``p_x1w1_q`` is P(x1, w1 | q) shaped (|Q|, |X1|, |W1|); the directly
    decoded satellites coincide with the channel inputs.
    """
    p_q = np.asarray(p_q, dtype=float)
    p1 = np.asarray(p_x1w1_q, dtype=float)
    p2 = np.asarray(p_x2w2_q, dtype=float)
    f = Factorization()
    f.add([("Q", len(p_q))], [], p_q)
    f.add([("X1", p1.shape[1]), ("W1", p1.shape[2])], ["Q"], p1)
    f.add([("X2", p2.shape[1]), ("W2", p2.shape[2])], ["Q"], p2)
    return build_joint(f, ch)


def hk_pre_fm_system(j: JointPMF) -> LinSys:
    """The ten split-rate constraints before constraint removal and FM."""
    mi = j.mutual_information
    sys = LinSys(["R10", "R11", "R20", "R22"])
    sys.add({"R11": 1}, mi({"X1"}, {"Y1"}, {"W1", "W2", "Q"}), label="Y1:priv1")
    sys.add({"R10": 1, "R11": 1}, mi({"W1", "X1"}, {"Y1"}, {"W2", "Q"}),
            label="Y1:own")
    sys.add({"R20": 1}, mi({"W2"}, {"Y1"}, {"W1", "X1", "Q"}), label="Y1:cross")
    sys.add({"R11": 1, "R20": 1}, mi({"X1", "W2"}, {"Y1"}, {"W1", "Q"}),
            label="Y1:priv1+cross")
    sys.add({"R10": 1, "R11": 1, "R20": 1}, mi({"W1", "X1", "W2"}, {"Y1"}, {"Q"}),
            label="Y1:all")
    sys.add({"R22": 1}, mi({"X2"}, {"Y2"}, {"W1", "W2", "Q"}), label="Y2:priv2")
    sys.add({"R20": 1, "R22": 1}, mi({"W2", "X2"}, {"Y2"}, {"W1", "Q"}),
            label="Y2:own")
    sys.add({"R10": 1}, mi({"W1"}, {"Y2"}, {"W2", "X2", "Q"}), label="Y2:cross")
    sys.add({"R10": 1, "R22": 1}, mi({"W1", "X2"}, {"Y2"}, {"W2", "Q"}),
            label="Y2:priv2+cross")
    sys.add({"R10": 1, "R20": 1, "R22": 1}, mi({"W1", "W2", "X2"}, {"Y2"}, {"Q"}),
            label="Y2:all")
    return sys


def _resum_and_project(sys: LinSys) -> LinSys:
    """Substitute R1 = R10 + R11, R2 = R20 + R22 and eliminate the splits."""
    out = LinSys(["R1", "R2"] + list(sys.variables), list(sys.rows))
    out.add({"R10": 1, "R11": 1, "R1": -1}, 0.0)
    out.add({"R1": 1, "R10": -1, "R11": -1}, 0.0)
    out.add({"R20": 1, "R22": 1, "R2": -1}, 0.0)
    out.add({"R2": 1, "R20": -1, "R22": -1}, 0.0)
    for v in ("R10", "R11", "R20", "R22"):
        out.add({v: -1}, 0.0)
    return eliminate_all(out, ["R10", "R11", "R20", "R22"])


def hk_region(p_q, p_x1w1_q, p_x2w2_q, ch: ChannelSpec) -> LinSys:
    """Interference-channel inner bound over the two resummed rates."""
    j = hk_joint(p_q, p_x1w1_q, p_x2w2_q, ch)
    pre = hk_pre_fm_system(j)
    kept = [r for r in pre.rows if r.label not in ("Y1:cross", "Y2:cross")]
    return _resum_and_project(LinSys(list(pre.variables), kept))


def hk_region_via_ingms(j_full: JointPMF) -> LinSys:
    """Same region derived through the full nine-message machinery.

    ``j_full`` must contain the nine auxiliaries with the unused ones
    pinned to constants and Q playing the shared cloud-center role.
    """
    sys = ingms_system(j_full)
    sys.rows = [r for r in sys.rows if r.label not in ("Y1:E5", "Y2:E4")]
    sys = _with_bin_nonneg(sys)
    sys = sys.substitute({"R00": 0.0, "R01": 0.0, "R02": 0.0,
                          "R12": 0.0, "R21": 0.0})
    sys = eliminate_all(sys, list(BIN_NAMES))
    return _resum_and_project(sys)
