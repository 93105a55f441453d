"""Dense joint-distribution algebra over named discrete variables.

Everything downstream (rate-region constants, typicality references,
codebook conditionals) is computed from a JointPMF.  Entropies and
mutual informations are in bits; 0*log(0) = 0 and zero-mass
conditioning events contribute nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSpec
from .errors import (AlphabetMismatch, BadTopologicalOrder, FactorNotNormalized,
                     InternalConsistency, SizeCapExceeded, UnknownVariable)

TOTAL_MASS_TOL = 1e-10
NEG_CLIP = 1e-9
MAX_CELLS = 2 ** 24


class JointPMF:
    """Joint law over an ordered tuple of named variables."""

    def __init__(self, names, probs):
        self.names = tuple(names)
        self.probs = np.asarray(probs, dtype=float)
        if self.probs.ndim != len(self.names):
            raise ValueError("probs rank does not match variable count")
        if self.probs.size > MAX_CELLS:
            raise SizeCapExceeded(f"{self.probs.size} cells exceeds cap {MAX_CELLS}")
        if (self.probs < -1e-15).any():
            raise ValueError("negative probability entry")
        total = self.probs.sum()
        if abs(total - 1.0) > TOTAL_MASS_TOL:
            raise ValueError(f"total mass {total!r} != 1")

    def size_of(self, name) -> int:
        return self.probs.shape[self._axis(name)]

    def _axis(self, name) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def _axes(self, names):
        return tuple(self._axis(n) for n in names)

    def marginalize(self, keep) -> "JointPMF":
        """Sum out everything not in ``keep``; keeps this PMF's variable order."""
        keep = set(keep)
        for n in keep:
            self._axis(n)
        kept = [n for n in self.names if n in keep]
        drop = self._axes(n for n in self.names if n not in keep)
        return JointPMF(kept, self.probs.sum(axis=drop) if drop else self.probs)

    def reorder(self, names) -> "JointPMF":
        """Same law with axes permuted into the given name order."""
        names = tuple(names)
        if set(names) != set(self.names) or len(names) != len(self.names):
            raise UnknownVariable(f"reorder {names} is not a permutation")
        return JointPMF(names, np.transpose(self.probs, self._axes(names)))

    def entropy(self, a, given=()) -> float:
        """H(A | G) in bits."""
        a, given = set(a), set(given)
        if a & given:
            raise ValueError("a and given must be disjoint")
        h = _plogp(self.marginalize(a | given).probs)
        if given:
            h -= _plogp(self.marginalize(given).probs)
        if h < -NEG_CLIP:
            raise InternalConsistency(f"entropy {h} < 0")
        return max(h, 0.0)

    def mutual_information(self, a, b, given=()) -> float:
        """I(A; B | G) in bits, clipped at 0 against rounding noise."""
        a, b, given = set(a), set(b), set(given)
        if (a & b) or (a & given) or (b & given):
            raise ValueError("a, b, given must be pairwise disjoint")
        v = self.entropy(a, given) - self.entropy(a, b | given)
        if v < -NEG_CLIP:
            raise InternalConsistency(f"mutual information {v} < 0")
        return max(v, 0.0)

    def conditional(self, targets, given) -> np.ndarray:
        """P(targets | given) shaped (*given sizes, *target sizes).

        Zero-mass conditioning rows are filled with the uniform law.
        """
        targets, given = list(targets), list(given)
        m = self.marginalize(set(targets) | set(given))
        # reorder axes to given + targets
        order = m._axes(given + targets)
        tbl = np.transpose(m.probs, order)
        ng = len(given)
        denom = tbl.sum(axis=tuple(range(ng, tbl.ndim)), keepdims=True)
        tsize = int(np.prod(tbl.shape[ng:])) if tbl.ndim > ng else 1
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(denom > 0, tbl / np.where(denom > 0, denom, 1.0),
                           1.0 / tsize)
        return out


def _plogp(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def entropy(j: JointPMF, a, given=()) -> float:
    return j.entropy(a, given)


def mutual_information(j: JointPMF, a, b, given=()) -> float:
    return j.mutual_information(a, b, given)


def marginalize(j: JointPMF, keep) -> JointPMF:
    return j.marginalize(keep)


@dataclass
class Factor:
    """Conditional table P(targets | given), shape (*given sizes, *target sizes)."""

    targets: list  # [(name, size), ...]
    given: list    # [name, ...]
    table: np.ndarray

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=float)


@dataclass
class Factorization:
    """Ordered factor list plus identification/constant maps.

    Factors must arrive in a topological order: every conditioning
    variable must already be produced by an earlier step.
    """

    steps: list = field(default_factory=list)

    def constant(self, name):
        """Pin ``name`` to the singleton alphabet {0}."""
        self.steps.append(("constant", name))
        return self

    def add(self, targets, given, table):
        """Append a conditional factor; ``targets`` is [(name, size), ...]."""
        self.steps.append(("factor", Factor(list(targets), list(given), table)))
        return self

    def identify(self, alias, source):
        """Declare ``alias`` to be a deterministic copy of ``source``."""
        self.steps.append(("identify", alias, source))
        return self

    @classmethod
    def from_json(cls, path) -> "Factorization":
        with open(path) as fh:
            doc = json.load(fh)
        f = cls()
        for name in doc.get("constants", []):
            f.constant(name)
        for fac in doc.get("factors", []):
            targets = [(t["name"], int(t["size"])) for t in fac["targets"]]
            f.add(targets, fac.get("given", []), np.asarray(fac["table"], dtype=float))
        for alias, source in doc.get("identify", {}).items():
            f.identify(alias, source)
        return f


def _expand(probs, names, factor_table, given, targets):
    """Multiply a conditional factor into the running joint."""
    sizes = dict(zip(names, probs.shape))
    # factor axes: given order then target order; align given axes to the joint
    tgt_names = [t[0] for t in targets]
    tgt_sizes = [t[1] for t in targets]
    expect = tuple(sizes[g] for g in given) + tuple(tgt_sizes)
    if factor_table.shape != expect:
        raise AlphabetMismatch(
            f"factor over {tgt_names} given {given}: table shape "
            f"{factor_table.shape} != expected {expect}")
    rowsums = factor_table.sum(axis=tuple(range(len(given), factor_table.ndim)))
    if np.abs(rowsums - 1.0).max() > 1e-10:
        raise FactorNotNormalized(f"factor over {tgt_names} given {given}")
    # broadcast table against the joint: size-1 axes for absent joint vars
    shape = [sizes[n] if n in given else 1 for n in names] + tgt_sizes
    perm = []
    gpos = {g: i for i, g in enumerate(given)}
    kept = [gpos[n] for n in names if n in given]
    perm = kept + list(range(len(given), factor_table.ndim))
    tbl = np.transpose(factor_table, perm).reshape(shape)
    new = probs[(...,) + (None,) * len(targets)] * tbl
    return new, list(names) + tgt_names


def build_joint(f: Factorization, ch: ChannelSpec | None = None) -> JointPMF:
    """Materialize the joint law of all factor outputs (plus Y1, Y2 if a channel is given)."""
    names: list = []
    probs = np.ones(())
    for step in f.steps:
        if step[0] == "constant":
            _, name = step
            if name in names:
                raise BadTopologicalOrder(f"{name} defined twice")
            probs = probs[..., None]
            names.append(name)
        elif step[0] == "identify":
            _, alias, source = step
            if source not in names:
                raise BadTopologicalOrder(f"identify {alias}: {source} not yet defined")
            if alias in names:
                raise BadTopologicalOrder(f"{alias} defined twice")
            size = probs.shape[names.index(source)]
            copy = np.eye(size)
            probs, names = _expand(probs, names, copy, [source], [(alias, size)])
        else:
            _, fac = step
            for g in fac.given:
                if g not in names:
                    raise BadTopologicalOrder(
                        f"factor over {[t[0] for t in fac.targets]}: {g} not yet defined")
            for t, _ in fac.targets:
                if t in names:
                    raise BadTopologicalOrder(f"{t} defined twice")
            probs, names = _expand(probs, names, fac.table, fac.given, fac.targets)
        if probs.size > MAX_CELLS:
            raise SizeCapExceeded(f"{probs.size} cells exceeds cap {MAX_CELLS}")
    if ch is not None:
        for x, alph in (("X1", ch.x1), ("X2", ch.x2)):
            if x not in names:
                raise BadTopologicalOrder(f"channel attached but {x} not produced")
            if probs.shape[names.index(x)] != alph.size:
                raise AlphabetMismatch(f"{x} alphabet does not match channel")
        probs, names = _expand(probs, names, ch.law, ["X1", "X2"],
                               [("Y1", ch.y1.size), ("Y2", ch.y2.size)])
    return JointPMF(names, probs)
