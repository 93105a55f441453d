"""Discrete memoryless two-transmitter/two-receiver channels.

A channel is the conditional law P(y1, y2 | x1, x2) stored as a dense
4-d array.  The orthogonal subclass factors into two non-interacting
sub-channels, P(y1 | xA1, xA2) * P(y2 | xB1, xB2), with the transmitter
alphabets being Cartesian products of the sub-channel alphabets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NegativeProbability, RowSumNotOne

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Alphabet:
    """Symbols are the dense integers 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet size must be >= 1")


def _check_conditional(law: np.ndarray, n_given: int, what: str):
    """Check nonnegativity and row-normalization of a conditional table.

    ``law`` has ``n_given`` leading conditioning axes; the trailing axes
    are summed and each slice must total 1 within ROW_SUM_TOL.
    """
    neg = np.argwhere(law < 0)
    if len(neg):
        idx = tuple(int(i) for i in neg[0])
        raise NegativeProbability(f"{what}: entry {idx} = {law[tuple(neg[0])]}")
    sums = law.sum(axis=tuple(range(n_given, law.ndim)))
    bad = np.argwhere(np.abs(sums - 1.0) > ROW_SUM_TOL)
    if len(bad):
        idx = tuple(int(i) for i in bad[0])
        raise RowSumNotOne(f"{what}: row {idx} sums to {sums[tuple(bad[0])]!r}")


@dataclass(frozen=True)
class ChannelSpec:
    """P(y1, y2 | x1, x2), law indexed [x1][x2][y1][y2]."""

    x1: Alphabet
    x2: Alphabet
    y1: Alphabet
    y2: Alphabet
    law: np.ndarray

    def __post_init__(self):
        law = np.asarray(self.law, dtype=float)
        object.__setattr__(self, "law", law)
        expect = (self.x1.size, self.x2.size, self.y1.size, self.y2.size)
        if law.shape != expect:
            raise ValueError(f"law shape {law.shape} != alphabets {expect}")
        law.setflags(write=False)

    @classmethod
    def from_law(cls, law) -> "ChannelSpec":
        law = np.asarray(law, dtype=float)
        a, b, c, d = law.shape
        return cls(Alphabet(a), Alphabet(b), Alphabet(c), Alphabet(d), law)


@dataclass(frozen=True)
class OrthogonalChannelSpec:
    """Two independent sub-channels: lawA = P(y1|xA1,xA2), lawB = P(y2|xB1,xB2)."""

    xA1: Alphabet
    xA2: Alphabet
    xB1: Alphabet
    xB2: Alphabet
    lawA: np.ndarray
    lawB: np.ndarray

    def __post_init__(self):
        lawA = np.asarray(self.lawA, dtype=float)
        lawB = np.asarray(self.lawB, dtype=float)
        object.__setattr__(self, "lawA", lawA)
        object.__setattr__(self, "lawB", lawB)
        if lawA.shape[:2] != (self.xA1.size, self.xA2.size):
            raise ValueError("lawA input shape mismatch")
        if lawB.shape[:2] != (self.xB1.size, self.xB2.size):
            raise ValueError("lawB input shape mismatch")
        _check_conditional(lawA, 2, "lawA")
        _check_conditional(lawB, 2, "lawB")

    @classmethod
    def from_laws(cls, lawA, lawB) -> "OrthogonalChannelSpec":
        lawA = np.asarray(lawA, dtype=float)
        lawB = np.asarray(lawB, dtype=float)
        return cls(Alphabet(lawA.shape[0]), Alphabet(lawA.shape[1]),
                   Alphabet(lawB.shape[0]), Alphabet(lawB.shape[1]), lawA, lawB)


def validate_channel(spec: ChannelSpec):
    """Raise NegativeProbability / RowSumNotOne naming the first violation."""
    _check_conditional(spec.law, 2, "law")


def compose_orthogonal(o: OrthogonalChannelSpec) -> ChannelSpec:
    """Product channel with pair-encoded inputs x_i = xA_i * |X_Bi| + xB_i."""
    nA1, nA2 = o.xA1.size, o.xA2.size
    nB1, nB2 = o.xB1.size, o.xB2.size
    ny1 = o.lawA.shape[2]
    ny2 = o.lawB.shape[2]
    law = np.einsum("acy,bdz->abcdyz", o.lawA, o.lawB)
    law = law.reshape(nA1 * nB1, nA2 * nB2, ny1, ny2)
    return ChannelSpec(Alphabet(nA1 * nB1), Alphabet(nA2 * nB2),
                       Alphabet(ny1), Alphabet(ny2), law)


def marginal(spec: ChannelSpec, output: str) -> np.ndarray:
    """Single-output conditional P(y|x1,x2), summing out the other output."""
    if output == "Y1":
        return spec.law.sum(axis=3)
    if output == "Y2":
        return spec.law.sum(axis=2)
    raise ValueError(f"output must be 'Y1' or 'Y2', got {output!r}")


def load_channel(path) -> ChannelSpec | OrthogonalChannelSpec:
    """Read a channel JSON file.

    Plain form: {"x1":2,"x2":2,"y1":2,"y2":2,"law":[[[[...]]]]}.
    Orthogonal form: {"orthogonal": {"lawA": ..., "lawB": ...}}.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if "orthogonal" in doc:
        o = doc["orthogonal"]
        return OrthogonalChannelSpec.from_laws(o["lawA"], o["lawB"])
    spec = ChannelSpec(Alphabet(doc["x1"]), Alphabet(doc["x2"]),
                       Alphabet(doc["y1"]), Alphabet(doc["y2"]),
                       np.asarray(doc["law"], dtype=float))
    validate_channel(spec)
    return spec
