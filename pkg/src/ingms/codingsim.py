"""Desk-scale Monte Carlo simulation of the random-coding scheme.

Generates the superposition codebook forest, performs min-order bin
selection at the encoders, joint-typicality decoding at both receivers,
attributes errors to the thirteen decoding-event patterns, and runs the
covering-lemma experiment.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSpec
from .errors import BudgetExceeded, LengthMismatch
from .pmf import Factorization, JointPMF, build_joint
from .region import ROLE_CHILDREN, WRONG_SETS, BinRates, RatePoint, _role_vars

DEFAULT_CODEWORD_BUDGET = 2 ** 16
DEFAULT_SCAN_CAP = 2 ** 22


def _budget(default):
    env = os.environ.get("INGMS_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class TypicalityParams:
    """Letter-typicality threshold and blocklength.

    The canonical regime is 0 < epsilon < p_min of the reference PMF.
    Larger epsilon values are accepted: once epsilon >= (1 - p_min) /
    p_min every frequency window is vacuous and the test degenerates to
    exact support matching (zero-probability symbols still forbidden),
    which is the only workable regime for short deterministic-channel
    runs.
    """

    epsilon: float
    n: int

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.n < 1:
            raise ValueError("n must be a positive integer")


@dataclass(frozen=True)
class LambdaOrder:
    """Total order on bin-index tuples via a bijective rank function."""

    arity: int
    rule: str = "lex"

    def __post_init__(self):
        if self.arity not in (2, 3):
            raise ValueError("arity must be 2 or 3")
        if self.rule not in ("lex", "colex"):
            raise ValueError("rule must be 'lex' or 'colex'")

    def iterate(self, dims):
        """Yield all index tuples in increasing rank order (0-based)."""
        if len(dims) != self.arity:
            raise ValueError("dims arity mismatch")
        if self.rule == "lex":
            idx = np.indices(dims).reshape(self.arity, -1).T
        else:
            idx = np.indices(dims[::-1]).reshape(self.arity, -1).T[:, ::-1]
        for row in idx:
            yield tuple(int(i) for i in row)


# Forest layout: each layer's array is indexed by the own-index of every
# ancestor layer in ``chain`` order (message and bin index combined as
# m * bin_count + b), then its own index, then the letter position.
LAYER_SPECS = (
    ("W0", (), ("W0",), "R00", None),
    ("U0", ("W0",), ("W0", "U0"), "R01", "B01"),
    ("V0", ("W0",), ("W0", "V0"), "R02", "B02"),
    ("W1", ("W0",), ("W0", "W1"), "R10", "B10"),
    ("U1", ("W0", "U0", "W1"), ("W0", "U0", "W1", "U1"), "R11", "B11"),
    ("V1", ("W0", "V0", "W1"), ("W0", "V0", "W1", "V1"), "R12", "B12"),
    ("W2", ("W0",), ("W0", "W2"), "R20", "B20"),
    ("U2", ("W0", "U0", "W2"), ("W0", "U0", "W2", "U2"), "R21", "B21"),
    ("V2", ("W0", "V0", "W2"), ("W0", "V0", "W2", "V2"), "R22", "B22"),
)
LAYER_ORDER = tuple(s[0] for s in LAYER_SPECS)
LAYER = {s[0]: {"parents": s[1], "chain": s[2], "rate": s[3], "bin": s[4]}
         for s in LAYER_SPECS}
INPUT_PARENTS = {"X1": ("W0", "U0", "V0", "W1", "U1", "V1"),
                 "X2": ("W0", "U0", "V0", "W2", "U2", "V2")}


@dataclass
class SimConfig:
    rates: RatePoint
    bins: BinRates
    typ: TypicalityParams
    factorization: Factorization
    channel: ChannelSpec
    trials: int
    seed: int
    ord2: LambdaOrder = LambdaOrder(2)
    ord3: LambdaOrder = LambdaOrder(3)
    codeword_budget: int = field(default_factory=lambda: _budget(DEFAULT_CODEWORD_BUDGET))
    scan_cap: int = field(default_factory=lambda: _budget(DEFAULT_SCAN_CAP))

    def msg_count(self, layer) -> int:
        return int(np.ceil(2 ** (self.typ.n * self.rates.r[LAYER[layer]["rate"]])))

    def bin_count(self, layer) -> int:
        b = LAYER[layer]["bin"]
        return 1 if b is None else int(np.ceil(2 ** (self.typ.n * self.bins.b[b])))


@dataclass
class CodebookForest:
    """All layer codebooks plus the reference joint they were drawn from."""

    arrays: dict          # layer name -> int array (chain own-indices..., n)
    msg_counts: dict
    bin_counts: dict
    joint: JointPMF
    n: int

    def codeword(self, layer, own_idx) -> np.ndarray:
        return self.arrays[layer][tuple(own_idx)]


@dataclass(frozen=True)
class TrialOutcome:
    encoding_events: frozenset
    decode_rx1: str
    decode_rx2: str


def is_typical(seqs, ref: JointPMF, typ: TypicalityParams) -> bool:
    """Joint letter-typicality of aligned sequences against ``ref``.

    ``seqs`` are given in ``ref.names`` order.  True iff every joint
    symbol a satisfies |N(a)/n - P(a)| <= epsilon * P(a); symbols of
    probability zero must not occur at all.
    """
    seqs = [np.asarray(s) for s in seqs]
    if len(seqs) != len(ref.names):
        raise LengthMismatch("sequence count does not match reference variables")
    n = typ.n
    for s in seqs:
        if s.shape != (n,):
            raise LengthMismatch(f"sequence length {s.shape} != n={n}")
    flat = np.zeros(n, dtype=np.int64)
    for s, size in zip(seqs, ref.probs.shape):
        flat = flat * size + s
    counts = np.bincount(flat, minlength=ref.probs.size)
    p = ref.probs.ravel()
    return bool(np.all(np.abs(counts / n - p) <= typ.epsilon * p))


def generate_forest(cfg: SimConfig, rng) -> CodebookForest:
    """Populate every layer with i.i.d. superposition draws."""
    joint = build_joint(cfg.factorization, cfg.channel)
    n = cfg.typ.n
    arrays = {}
    msg_counts = {L: cfg.msg_count(L) for L in LAYER_ORDER}
    bin_counts = {L: cfg.bin_count(L) for L in LAYER_ORDER}
    for L in LAYER_ORDER:
        spec = LAYER[L]
        chain = spec["chain"]
        dims = tuple(msg_counts[c] * bin_counts[c] for c in chain)
        total = int(np.prod(dims))
        if total > cfg.codeword_budget:
            raise BudgetExceeded(
                f"layer {L}: {total} codewords exceeds budget {cfg.codeword_budget}")
        full_shape = dims + (n,)
        cond = joint.conditional([L], list(spec["parents"]))
        # rows of P(letter | parent letters) at each index/letter slot
        if spec["parents"]:
            parent_syms = []
            for p in spec["parents"]:
                pchain = LAYER[p]["chain"]
                shape = tuple(dims[k] if chain[k] in pchain else 1
                              for k in range(len(chain))) + (n,)
                parent_syms.append(np.broadcast_to(arrays[p].reshape(shape),
                                                   full_shape))
            rows = cond[tuple(parent_syms)]
        else:
            rows = np.broadcast_to(cond, full_shape + (cond.shape[-1],))
        cum = np.cumsum(rows, axis=-1)
        u = rng.random(full_shape)
        arrays[L] = np.minimum((u[..., None] > cum).sum(axis=-1),
                               rows.shape[-1] - 1)
    return CodebookForest(arrays, msg_counts, bin_counts, joint, n)


def _own_index(cfg_or_forest, layer, m, b):
    bc = cfg_or_forest.bin_counts[layer]
    return m * bc + b


def _designated(forest, layer, msgs, bins_idx):
    chain = LAYER[layer]["chain"]
    idx = tuple(_own_index(forest, c, msgs[c], bins_idx.get(c, 0)) for c in chain)
    return forest.codeword(layer, idx)


def _ref(forest, names):
    """Marginal reference PMF with axes in exactly the given order."""
    return forest.joint.marginalize(set(names)).reorder(names)


def encode(forest: CodebookForest, msgs: dict, typ: TypicalityParams,
           ord2: LambdaOrder, ord3: LambdaOrder, rng):
    """Bin selection (min under the given orders) and channel-input draw.

    Returns (designated codewords dict, x1, x2, bin indices dict,
    encoding event set).
    """
    events = set()
    bins_idx = {"W0": 0, "W1": 0, "W2": 0}
    ref3 = _ref(forest, ("W0", "U0", "V0"))
    w0 = _designated(forest, "W0", msgs, bins_idx)
    found = None
    for b01, b02 in ord2.iterate((forest.bin_counts["U0"], forest.bin_counts["V0"])):
        u0 = forest.codeword("U0", (msgs["W0"], _own_index(forest, "U0", msgs["U0"], b01)))
        v0 = forest.codeword("V0", (msgs["W0"], _own_index(forest, "V0", msgs["V0"], b02)))
        if is_typical((w0, u0, v0), ref3, typ):
            found = (b01, b02)
            break
    if found is None:
        events.add("E1e")
        found = (0, 0)
    bins_idx["U0"], bins_idx["V0"] = found

    for tx, (wl, ul, vl, ev) in enumerate(
            (("W1", "U1", "V1", "E2e"), ("W2", "U2", "V2", "E3e"))):
        ref6 = _ref(forest, ("W0", "U0", "V0", wl, ul, vl))
        base = {"W0": w0,
                "U0": _designated(forest, "U0", msgs, bins_idx),
                "V0": _designated(forest, "V0", msgs, bins_idx)}
        found = None
        for bw, bu, bv in ord3.iterate((forest.bin_counts[wl],
                                        forest.bin_counts[ul],
                                        forest.bin_counts[vl])):
            trial_bins = dict(bins_idx)
            trial_bins[wl], trial_bins[ul], trial_bins[vl] = bw, bu, bv
            cand = (base["W0"], base["U0"], base["V0"],
                    _designated(forest, wl, msgs, trial_bins),
                    _designated(forest, ul, msgs, trial_bins),
                    _designated(forest, vl, msgs, trial_bins))
            if is_typical(cand, ref6, typ):
                found = (bw, bu, bv)
                break
        if found is None:
            events.add(ev)
            found = (0, 0, 0)
        bins_idx[wl], bins_idx[ul], bins_idx[vl] = found

    designated = {L: _designated(forest, L, msgs, bins_idx) for L in LAYER_ORDER}
    xs = {}
    for x, parents in INPUT_PARENTS.items():
        cond = forest.joint.conditional([x], list(parents))
        rows = cond[tuple(designated[p] for p in parents)]
        cum = np.cumsum(rows, axis=-1)
        u = rng.random(forest.n)
        xs[x] = np.minimum((u[:, None] > cum).sum(axis=-1), rows.shape[-1] - 1)

    ref11 = _ref(forest, LAYER_ORDER + ("X1", "X2"))
    full = tuple(designated[L] for L in LAYER_ORDER) + (xs["X1"], xs["X2"])
    if not is_typical(full, ref11, typ):
        events.add("E4e")
    return designated, xs["X1"], xs["X2"], bins_idx, events


def _rx_layers(rx):
    return (("W0", "U0", "W1", "U1", "W2", "U2") if rx == 1
            else ("W0", "V0", "W1", "V1", "W2", "V2"))


def decode(forest: CodebookForest, y: np.ndarray, rx: int,
           typ: TypicalityParams, scan_cap: int = DEFAULT_SCAN_CAP):
    """Exhaustive typicality decoder with support-based pruning.

    Scans all index tuples for the receiver's six decoded layers in
    superposition order, pruning any prefix whose letters fall outside
    the support of the corresponding marginal (valid because joint
    typicality implies marginal support membership).  Returns up to two
    jointly typical full tuples, as dicts layer -> own index tuple.
    """
    layers = _rx_layers(rx)
    yname = "Y1" if rx == 1 else "Y2"
    refs, masks = [], []
    for d in range(1, len(layers) + 1):
        m = _ref(forest, layers[:d] + (yname,))
        refs.append(m)
        masks.append(m.probs > 0)
    full_ref = refs[-1]
    matches = []
    visited = 0

    def recurse(depth, prefix_syms, own_indices):
        nonlocal visited
        if len(matches) >= 2:
            return
        L = layers[depth]
        chain = LAYER[L]["chain"]
        idx_prefix = tuple(own_indices[c] for c in chain[:-1])
        count = forest.msg_counts[L] * forest.bin_counts[L]
        mask = masks[depth]
        for i in range(count):
            visited += 1
            if visited > scan_cap:
                raise BudgetExceeded(f"decoder scan exceeded cap {scan_cap}")
            s = forest.arrays[L][idx_prefix + (i,)]
            if not mask[tuple(prefix_syms) + (s, y)].all():
                continue
            own = dict(own_indices, **{L: i})
            if depth + 1 == len(layers):
                seqs = tuple(prefix_syms) + (s, y)
                if is_typical(seqs, full_ref, typ):
                    matches.append(own)
                    if len(matches) >= 2:
                        return
            else:
                recurse(depth + 1, prefix_syms + [s], own)

    recurse(0, [], {})
    return matches, visited


def _attribute(layers, transmitted_own, decoded_own, rx):
    """Map the set of wrongly recovered indices to a Table-row label."""
    abstract = dict(zip(layers, ("W0", "A0", "W1", "A1", "W2", "A2")))
    wrong = {abstract[L] for L in layers
             if decoded_own[L] != transmitted_own[L]}
    closed = set(wrong)
    frontier = list(wrong)
    while frontier:
        role = frontier.pop()
        for child in ROLE_CHILDREN[role]:
            if child not in closed:
                closed.add(child)
                frontier.append(child)
    for k, pattern in WRONG_SETS.items():
        if set(pattern) == closed:
            return f"E{k}d"
    return "unattributed"


def _sample_channel(ch: ChannelSpec, x1, x2, rng):
    rows = ch.law[x1, x2].reshape(len(x1), -1)
    cum = np.cumsum(rows, axis=-1)
    u = rng.random(len(x1))
    flat = np.minimum((u[:, None] > cum).sum(axis=-1), rows.shape[-1] - 1)
    return flat // ch.y2.size, flat % ch.y2.size


def run_trials(cfg: SimConfig) -> dict:
    """Run the full encode/transmit/decode loop and attribute errors."""
    ss = np.random.SeedSequence(cfg.seed)
    outcomes = []
    for child in ss.spawn(cfg.trials):
        rng = np.random.default_rng(child)
        forest = generate_forest(cfg, rng)
        msgs = {L: int(rng.integers(forest.msg_counts[L])) for L in LAYER_ORDER}
        designated, x1, x2, bins_idx, events = encode(
            forest, msgs, cfg.typ, cfg.ord2, cfg.ord3, rng)
        y1, y2 = _sample_channel(cfg.channel, x1, x2, rng)
        labels = {}
        for rx, y in ((1, y1), (2, y2)):
            layers = _rx_layers(rx)
            transmitted = {L: _own_index(forest, L, msgs[L], bins_idx.get(L, 0))
                           for L in layers}
            matches, _ = decode(forest, y, rx, cfg.typ, cfg.scan_cap)
            if not matches:
                labels[rx] = "E0d"
            elif len(matches) > 1:
                labels[rx] = "ambiguous"
            elif matches[0] == transmitted:
                labels[rx] = "correct"
            else:
                labels[rx] = _attribute(layers, transmitted, matches[0], rx)
        outcomes.append(TrialOutcome(frozenset(events), labels[1], labels[2]))
    return summarize(outcomes, cfg)


def summarize(outcomes, cfg: SimConfig) -> dict:
    t = max(len(outcomes), 1)
    rx1_err = sum(o.decode_rx1 != "correct" for o in outcomes)
    rx2_err = sum(o.decode_rx2 != "correct" for o in outcomes)
    any_err = sum(o.decode_rx1 != "correct" or o.decode_rx2 != "correct"
                  for o in outcomes)
    enc = {e: sum(e in o.encoding_events for o in outcomes) / t
           for e in ("E1e", "E2e", "E3e", "E4e")}
    hist1, hist2 = {}, {}
    for o in outcomes:
        hist1[o.decode_rx1] = hist1.get(o.decode_rx1, 0) + 1
        hist2[o.decode_rx2] = hist2.get(o.decode_rx2, 0) + 1
    p = any_err / t
    return {
        "trials": len(outcomes),
        "n": cfg.typ.n,
        "epsilon": cfg.typ.epsilon,
        "seed": cfg.seed,
        "rx1_error": rx1_err / t,
        "rx2_error": rx2_err / t,
        "total_error": p,
        "total_stderr": float(np.sqrt(p * (1 - p) / t)),
        "encoding_rates": enc,
        "rx1_hist": hist1,
        "rx2_hist": hist2,
        "outcomes": outcomes,
    }


def write_csv(report: dict, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        w.writerow(["trial", "E1e", "E2e", "E3e", "E4e", "rx1_label", "rx2_label"])
        for i, o in enumerate(report["outcomes"]):
            w.writerow([i] + [int(e in o.encoding_events)
                              for e in ("E1e", "E2e", "E3e", "E4e")]
                       + [o.decode_rx1, o.decode_rx2])


def write_summary(report: dict, path):
    doc = {k: v for k, v in report.items() if k != "outcomes"}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _draw_rows(cond, parent_letters, count, n, rng):
    """``count`` independent length-n words from per-letter conditionals."""
    rows = cond[tuple(parent_letters)]          # (n, alphabet)
    cum = np.cumsum(rows, axis=-1)
    u = rng.random((count, n))
    return np.minimum((u[..., None] > cum[None]).sum(axis=-1),
                      rows.shape[-1] - 1)


def covering_experiment(pmf: JointPMF, bins, typ: TypicalityParams,
                        trials: int, seed: int = 0,
                        budget: int | None = None) -> dict:
    """Empirical no-cover probability for the three-branch covering setup.

    ``pmf`` is a joint over (W0, U0, V0, W1, U1, V1); a missing W0 is
    treated as constant.  Per trial, a typical (w0, u0, v0) triple is
    sampled by rejection, the three codebooks are generated from the
    superposition conditionals, and the trial fails if no bin triple
    (b0, b1, b2) yields a jointly typical (W1, U1, V1).
    """
    budget = budget if budget is not None else _budget(DEFAULT_CODEWORD_BUDGET)
    names = set(pmf.names)
    if "W0" not in names:
        pmf = JointPMF(("W0",) + pmf.names, pmf.probs[None])
    b0c, b1c, b2c = (int(np.ceil(2 ** (typ.n * b))) for b in bins)
    if max(b0c, b1c, b2c) > budget:
        raise BudgetExceeded(f"bin codebook exceeds budget {budget}")
    n = typ.n
    def ref(*names):
        return pmf.marginalize(set(names)).reorder(names)

    ref3 = ref("W0", "U0", "V0")
    ref4 = ref("W0", "U0", "V0", "W1")
    ref5u = ref("W0", "U0", "V0", "W1", "U1")
    ref5v = ref("W0", "U0", "V0", "W1", "V1")
    ref6 = ref("W0", "U0", "V0", "W1", "U1", "V1")
    mask4 = ref4.probs > 0
    mask5u = ref5u.probs > 0
    mask5v = ref5v.probs > 0
    cond_w1 = pmf.conditional(["W1"], ["W0"])
    cond_u1 = pmf.conditional(["U1"], ["W0", "U0", "W1"])
    cond_v1 = pmf.conditional(["V1"], ["W0", "V0", "W1"])
    cum3 = np.cumsum(ref3.probs.ravel())
    shape3 = ref3.probs.shape
    rng_master = np.random.SeedSequence(seed)
    no_cover = 0
    for child in rng_master.spawn(trials):
        rng = np.random.default_rng(child)
        # rejection-sample a typical (w0, u0, v0) premise
        for _ in range(100000):
            flat = np.searchsorted(cum3, rng.random(n), side="right")
            w0, u0, v0 = np.unravel_index(np.minimum(flat, ref3.probs.size - 1),
                                          shape3)
            if is_typical((w0, u0, v0), ref3, typ):
                break
        else:
            raise BudgetExceeded("could not sample a typical premise")
        w1book = _draw_rows(cond_w1, (w0,), b0c, n, rng)
        ok_w1 = mask4[w0, u0, v0, w1book].all(axis=1)
        covered = False
        for b0 in np.flatnonzero(ok_w1):
            w1 = w1book[b0]
            if not is_typical((w0, u0, v0, w1), ref4, typ):
                continue
            u1book = _draw_rows(cond_u1, (w0, u0, w1), b1c, n, rng)
            v1book = _draw_rows(cond_v1, (w0, v0, w1), b2c, n, rng)
            ok_u1 = [b for b in np.flatnonzero(
                         mask5u[w0, u0, v0, w1, u1book].all(axis=1))
                     if is_typical((w0, u0, v0, w1, u1book[b]), ref5u, typ)]
            ok_v1 = [b for b in np.flatnonzero(
                         mask5v[w0, u0, v0, w1, v1book].all(axis=1))
                     if is_typical((w0, u0, v0, w1, v1book[b]), ref5v, typ)]
            for b1 in ok_u1:
                for b2 in ok_v1:
                    if is_typical((w0, u0, v0, w1, u1book[b1], v1book[b2]),
                                  ref6, typ):
                        covered = True
                        break
                if covered:
                    break
            if covered:
                break
        if not covered:
            no_cover += 1
    p = no_cover / max(trials, 1)
    return {"trials": trials, "no_cover": no_cover, "no_cover_rate": p,
            "stderr": float(np.sqrt(p * (1 - p) / max(trials, 1)))}
