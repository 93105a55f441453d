"""Canned and random channels, factorizations, and joints.

These are the concrete configurations used by the test-suite and the
``check`` subcommand: random superposition-shaped joints, the
specialization embeddings (MAC, broadcast, interference, orthogonal),
and the deterministic desk-scale simulation setups.
"""

from __future__ import annotations

import numpy as np

from .channel import Alphabet, ChannelSpec, OrthogonalChannelSpec, compose_orthogonal
from .pmf import Factorization, JointPMF, build_joint

AUX = ("W0", "U0", "V0", "W1", "U1", "V1", "W2", "U2", "V2")


def random_conditional(rng, given_sizes, target_size) -> np.ndarray:
    """Dirichlet(1) rows: a uniformly random conditional table."""
    shape = tuple(given_sizes) + (target_size,)
    g = rng.gamma(1.0, size=shape)
    return g / g.sum(axis=-1, keepdims=True)


def random_joint(rng, names, sizes) -> JointPMF:
    g = rng.gamma(1.0, size=tuple(sizes))
    return JointPMF(names, g / g.sum())


def random_channel(rng, nx1=2, nx2=2, ny1=2, ny2=2) -> ChannelSpec:
    law = random_conditional(rng, (nx1, nx2), ny1 * ny2).reshape(nx1, nx2, ny1, ny2)
    return ChannelSpec(Alphabet(nx1), Alphabet(nx2), Alphabet(ny1), Alphabet(ny2), law)


def random_orthogonal_channel(rng, k=2, ny=2) -> OrthogonalChannelSpec:
    return OrthogonalChannelSpec.from_laws(random_conditional(rng, (k, k), ny),
                                           random_conditional(rng, (k, k), ny))


def clean_orthogonal(k=2) -> OrthogonalChannelSpec:
    """Noiseless sub-channels: each receiver observes both of its inputs."""
    law = np.zeros((k, k, k * k))
    for a in range(k):
        for b in range(k):
            law[a, b, a * k + b] = 1.0
    return OrthogonalChannelSpec.from_laws(law, law)


def random_ingms_factorization(rng, sizes=None) -> Factorization:
    """Random superposition-shaped factorization over the nine auxiliaries.

    Every variable is drawn conditionally on its cloud centers, so the
    joint factors as the common block times one block per transmitter.
    """
    sz = dict.fromkeys(AUX + ("X1", "X2"), 2)
    if sizes:
        sz.update(sizes)
    parents = {"W0": (), "U0": ("W0",), "V0": ("W0",),
               "W1": ("W0",), "U1": ("W0", "U0", "W1"), "V1": ("W0", "V0", "W1"),
               "W2": ("W0",), "U2": ("W0", "U0", "W2"), "V2": ("W0", "V0", "W2"),
               "X1": ("W0", "U0", "V0", "W1", "U1", "V1"),
               "X2": ("W0", "U0", "V0", "W2", "U2", "V2")}
    f = Factorization()
    for name in AUX + ("X1", "X2"):
        ps = parents[name]
        f.add([(name, sz[name])], list(ps),
              random_conditional(rng, [sz[p] for p in ps], sz[name]))
    return f


def random_ingms_joint(rng, ch: ChannelSpec | None = None, sizes=None) -> JointPMF:
    return build_joint(random_ingms_factorization(rng, sizes), ch)


def _constants(f: Factorization, names):
    for nm in names:
        f.constant(nm)
    return f


def mac_embedding(p_w, p_x1_w, p_x2_w, law_y):
    """Nine-auxiliary embedding of a MAC with common message.

    The common cloud center is the time-sharing variable, each input
    doubles as its transmitter's directly-decoded satellite, and the
    second receiver observes a duplicate of the single output.
    """
    p_w = np.asarray(p_w, dtype=float)
    law_y = np.asarray(law_y, dtype=float)
    f = Factorization()
    f.add([("W0", len(p_w))], [], p_w)
    _constants(f, ("U0", "V0", "W1", "V1", "W2", "V2"))
    f.add([("X1", np.asarray(p_x1_w).shape[1])], ["W0"], np.asarray(p_x1_w, dtype=float))
    f.add([("X2", np.asarray(p_x2_w).shape[1])], ["W0"], np.asarray(p_x2_w, dtype=float))
    f.identify("U1", "X1")
    f.identify("U2", "X2")
    ny = law_y.shape[2]
    law4 = np.zeros(law_y.shape + (ny,))
    for y in range(ny):
        law4[:, :, y, y] = law_y[:, :, y]
    ch = ChannelSpec.from_law(law4)
    return f, ch


def marton_embedding(p_wuvx, bc_law):
    """Nine-auxiliary embedding of a broadcast channel: only the common
    triple transmits; transmitter 2 sends a dummy symbol."""
    p_wuvx = np.asarray(p_wuvx, dtype=float)
    bc_law = np.asarray(bc_law, dtype=float)
    nw, nu, nv, nx = p_wuvx.shape
    p_wuv = p_wuvx.sum(axis=3)
    with np.errstate(invalid="ignore", divide="ignore"):
        p_x_wuv = np.where(p_wuv[..., None] > 0, p_wuvx / np.where(
            p_wuv[..., None] > 0, p_wuv[..., None], 1.0), 1.0 / nx)
    f = Factorization()
    f.add([("W0", nw), ("U0", nu), ("V0", nv)], [], p_wuv)
    _constants(f, ("W1", "U1", "V1", "W2", "U2", "V2", "X2"))
    f.add([("X1", nx)], ["W0", "U0", "V0"], p_x_wuv)
    law4 = bc_law[:, None, :, :]
    ch = ChannelSpec.from_law(law4)
    return f, ch


def hk_embedding(p_q, p_x1w1_q, p_x2w2_q, ch: ChannelSpec):
    """Nine-auxiliary embedding of the interference-channel substitution:
    shared cloud center is the time-sharing variable, the per-transmitter
    cloud centers are the commonly-decoded parts, and the inputs double
    as the private satellites."""
    p_q = np.asarray(p_q, dtype=float)
    p1 = np.asarray(p_x1w1_q, dtype=float)
    p2 = np.asarray(p_x2w2_q, dtype=float)
    f = Factorization()
    f.add([("W0", len(p_q))], [], p_q)
    _constants(f, ("U0", "V0", "V1", "U2"))
    f.add([("X1", p1.shape[1]), ("W1", p1.shape[2])], ["W0"], p1)
    f.add([("X2", p2.shape[1]), ("W2", p2.shape[2])], ["W0"], p2)
    f.identify("U1", "X1")
    f.identify("V2", "X2")
    return f, ch


def random_hk_inputs(rng, nq=2, nx=2, nw=2):
    p_q = random_conditional(rng, (), nq)
    p1 = random_conditional(rng, (nq,), nx * nw).reshape(nq, nx, nw)
    p2 = random_conditional(rng, (nq,), nx * nw).reshape(nq, nx, nw)
    ch = random_channel(rng, nx, nx, 2, 2)
    return p_q, p1, p2, ch


def pair_encoder(ka, kb) -> np.ndarray:
    """Deterministic table mapping (a, b) to the product symbol a*kb + b."""
    t = np.zeros((ka, kb, ka * kb))
    for a in range(ka):
        for b in range(kb):
            t[a, b, a * kb + b] = 1.0
    return t


def orthogonal_sim_factorization(k=2) -> Factorization:
    """Simulation setup on the clean orthogonal channel: the four
    sub-channel inputs are uniform k-ary private satellites and each
    transmitter's symbol is the encoded input pair."""
    f = Factorization()
    _constants(f, ("W0", "U0", "V0", "W1", "W2"))
    uni = np.full(k, 1.0 / k)
    for nm in ("U1", "V1", "U2", "V2"):
        f.add([(nm, k)], [], uni)
    f.add([("X1", k * k)], ["U1", "V1"], pair_encoder(k, k))
    f.add([("X2", k * k)], ["U2", "V2"], pair_encoder(k, k))
    return f


def point_to_point_sim_factorization(k=2) -> Factorization:
    """One active layer: transmitter 1's private satellite on the A
    sub-channel; everything else is pinned."""
    f = Factorization()
    _constants(f, ("W0", "U0", "V0", "W1", "W2", "V1", "U2", "V2"))
    f.add([("U1", k)], [], np.full(k, 1.0 / k))
    t1 = np.zeros((k, 1, k * k))
    for a in range(k):
        t1[a, 0, a * k] = 1.0
    f.add([("X1", k * k)], ["U1", "V1"], t1)
    t2 = np.zeros((1, 1, k * k))
    t2[0, 0, 0] = 1.0
    f.add([("X2", k * k)], ["U2", "V2"], t2)
    return f


def covering_pmf(p_one=0.7) -> JointPMF:
    """Binary covering-lemma joint with deterministic branch relations.

    U0 and V0 are independent Bernoulli(p_one) bits, W1 = U0 AND V0,
    U1 = V0, V1 = U0, and W0 is constant.  All four covering thresholds
    are strictly positive and the typical type at moderate blocklengths
    is unique, which keeps the empirical no-cover probabilities sharp.
    """
    p = np.zeros((1, 2, 2, 2, 2, 2))
    for u0 in range(2):
        for v0 in range(2):
            mass = (p_one if u0 else 1 - p_one) * (p_one if v0 else 1 - p_one)
            p[0, u0, v0, u0 & v0, v0, u0] = mass
    return JointPMF(("W0", "U0", "V0", "W1", "U1", "V1"), p)


def covering_thresholds(pmf: JointPMF):
    """The four covering sums' lower bounds, as per-bin increments."""
    mi = pmf.mutual_information
    t0 = mi({"U0", "V0"}, {"W1"}, {"W0"})
    t1 = mi({"V0"}, {"U1"}, {"W0", "U0", "W1"})
    t2 = mi({"U0"}, {"V1"}, {"W0", "V0", "W1"})
    t3 = mi({"U0", "U1"}, {"V1"}, {"W0", "V0", "W1"})
    return t0, t1, t2, t3
