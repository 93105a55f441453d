"""Fourier-Motzkin elimination over named linear inequality systems.

Coefficients are exact integers; right-hand sides are floats.  All
inequalities are of the form  sum_k c_k * x_k <= rhs  (strict paper
inequalities are represented non-strict: the artifact computes region
closures).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import UnknownVariable

FEAS_TOL = 1e-9
IMPLIES_SLACK = 1e-7


@dataclass(frozen=True)
class LinIneq:
    """sum(coeffs[v] * v) <= rhs.  ``label`` tags row provenance.

    ``hist`` records which original rows a derived row combines
    (Kohler's redundancy criterion); None means untracked.
    """

    coeffs: dict
    rhs: float
    label: str | None = None
    hist: frozenset | None = None

    def normalized(self) -> "LinIneq":
        """Drop zero coefficients and divide through by the coefficient gcd."""
        c = {k: int(v) for k, v in self.coeffs.items() if v != 0}
        if not c:
            return LinIneq({}, float(self.rhs), self.label, self.hist)
        g = 0
        for v in c.values():
            g = gcd(g, abs(v))
        if g > 1:
            return LinIneq({k: v // g for k, v in c.items()}, self.rhs / g,
                           self.label, self.hist)
        return LinIneq(c, float(self.rhs), self.label, self.hist)

    def is_constant(self) -> bool:
        return not any(self.coeffs.values())

    def violated_constant(self) -> bool:
        return self.is_constant() and self.rhs < -FEAS_TOL

    def evaluate(self, point: dict) -> float:
        return sum(c * point.get(v, 0.0) for v, c in self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return f"0 <= {self.rhs:.12g}"
        parts = []
        for v in sorted(self.coeffs):
            c = self.coeffs[v]
            sign = "+" if c >= 0 else "-"
            parts.append(f"{sign}{abs(c)}*{v}")
        return " ".join(parts) + f" <= {self.rhs:.12g}"


@dataclass
class LinSys:
    """Inequality system over an ordered list of variable names."""

    variables: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        for r in self.rows:
            for v in r.coeffs:
                if v not in self.variables:
                    raise UnknownVariable(v)

    def add(self, coeffs, rhs, label=None):
        row = LinIneq(dict(coeffs), float(rhs), label).normalized()
        for v in row.coeffs:
            if v not in self.variables:
                raise UnknownVariable(v)
        self.rows.append(row)
        return self

    def copy(self) -> "LinSys":
        return LinSys(list(self.variables), list(self.rows))

    def substitute(self, assignment: dict) -> "LinSys":
        """Fix some variables to numbers; they disappear from the system."""
        for v in assignment:
            if v not in self.variables:
                raise UnknownVariable(v)
        keep = [v for v in self.variables if v not in assignment]
        rows = []
        for r in self.rows:
            c = {v: k for v, k in r.coeffs.items() if v not in assignment}
            shift = sum(k * assignment[v] for v, k in r.coeffs.items() if v in assignment)
            rows.append(LinIneq(c, r.rhs - shift, r.label))
        return LinSys(keep, rows)

    def serialize(self) -> str:
        return "\n".join(str(r) for r in self.rows) + ("\n" if self.rows else "")


def _compact(rows) -> list:
    """Remove syntactic duplicates and coefficientwise-dominated rows."""
    best = {}
    order = []
    witnesses = []
    for r in rows:
        r = r.normalized()
        if r.is_constant():
            if r.violated_constant():
                witnesses.append(r)
            continue
        key = tuple(sorted(r.coeffs.items()))
        if key not in best:
            best[key] = r
            order.append(key)
        elif r.rhs < best[key].rhs:
            best[key] = r
    return witnesses + [best[k] for k in order]


def eliminate(sys: LinSys, v: str) -> LinSys:
    """One Fourier-Motzkin step: combine upper and lower bounds on ``v``."""
    if v not in sys.variables:
        raise UnknownVariable(v)
    pos, neg, rest = [], [], []
    for r in sys.rows:
        c = r.coeffs.get(v, 0)
        (pos if c > 0 else neg if c < 0 else rest).append(r)
    out = []
    for r in rest:
        if r.is_constant():
            if r.violated_constant():
                out.append(r)
        else:
            out.append(r)
    for p in pos:
        a = p.coeffs[v]
        for q in neg:
            b = -q.coeffs[v]
            g = gcd(a, b)
            mp, mq = b // g, a // g
            coeffs = {}
            for k, c in p.coeffs.items():
                coeffs[k] = coeffs.get(k, 0) + mp * c
            for k, c in q.coeffs.items():
                coeffs[k] = coeffs.get(k, 0) + mq * c
            coeffs.pop(v, None)
            hist = (p.hist | q.hist) if (p.hist is not None and q.hist is not None) else None
            row = LinIneq(coeffs, mp * p.rhs + mq * q.rhs, None, hist).normalized()
            if row.is_constant():
                if row.violated_constant():
                    out.append(row)
            else:
                out.append(row)
    return LinSys([u for u in sys.variables if u != v], out)


LP_PRUNE_THRESHOLD = 48


def _lp_prune(rows, variables) -> list:
    """Drop rows provably implied by the rest (exact, via linear programs).

    Only invoked when a system outgrows LP_PRUNE_THRESHOLD rows; plain
    dedup/domination cannot contain Fourier-Motzkin growth on the larger
    eliminations.  A row is removed iff maximizing its left-hand side
    subject to all other rows cannot exceed its right-hand side.
    """
    from scipy.optimize import linprog

    keep = [r for r in rows if r.is_constant()]
    cand = [r for r in rows if not r.is_constant()]
    names = [v for v in variables]
    pos = {v: i for i, v in enumerate(names)}
    mat = np.zeros((len(cand), len(names)))
    rhs = np.zeros(len(cand))
    for i, r in enumerate(cand):
        for v, c in r.coeffs.items():
            mat[i, pos[v]] = c
        rhs[i] = r.rhs
    probe = linprog(np.zeros(len(names)), A_ub=mat, b_ub=rhs + IMPLIES_SLACK,
                    bounds=[(None, None)] * len(names), method="highs")
    if probe.status == 2:
        # empty polyhedron: its projection is empty too
        return keep + [LinIneq({}, -1.0)]
    alive = np.ones(len(cand), dtype=bool)
    for i in range(len(cand)):
        alive[i] = False
        a = mat[alive]
        b = rhs[alive]
        # cap the objective so an unbounded direction reads as non-redundant
        a_cap = np.vstack([a, mat[i]])
        b_cap = np.append(b, rhs[i] + 1.0)
        res = linprog(-mat[i], A_ub=a_cap, b_ub=b_cap,
                      bounds=[(None, None)] * len(names), method="highs")
        # solver optima carry ~1e-8 noise, so tight redundancies need the
        # looser implication slack rather than the feasibility tolerance
        if res.status == 0 and -res.fun <= rhs[i] + IMPLIES_SLACK:
            continue  # implied by the others; stays removed
        alive[i] = True
    return keep + [r for i, r in enumerate(cand) if alive[i]]


def eliminate_all(sys: LinSys, vs) -> LinSys:
    """Eliminate the listed variables in order, compacting after each step.

    Rows carry the set of original rows they combine; after k
    eliminations, any derived row mixing more than k + 1 originals is
    redundant (Kohler's criterion) and is dropped to control growth.
    """
    rows = [LinIneq(r.coeffs, r.rhs, r.label, frozenset([i]))
            for i, r in enumerate(sys.rows)]
    cur = LinSys(list(sys.variables), _compact(rows))
    for k, v in enumerate(vs, start=1):
        cur = eliminate(cur, v)
        cur.rows = _compact(
            [r for r in cur.rows
             if r.hist is None or len(r.hist) <= k + 1 or r.violated_constant()])
        if len(cur.rows) > LP_PRUNE_THRESHOLD:
            cur.rows = _lp_prune(cur.rows, cur.variables)
    cur.rows = [LinIneq(r.coeffs, r.rhs, r.label) for r in cur.rows]
    return cur


def is_feasible(sys: LinSys) -> bool:
    """Eliminate every variable; feasible iff no constant row is violated."""
    cur = eliminate_all(sys, list(sys.variables))
    return not any(r.violated_constant() for r in cur.rows)


def implies(sys: LinSys, row: LinIneq) -> bool:
    """True iff every solution of ``sys`` satisfies ``row`` (up to slack)."""
    neg = LinIneq({k: -c for k, c in row.coeffs.items()},
                  -row.rhs - IMPLIES_SLACK)
    probe = sys.copy()
    for v in neg.coeffs:
        if v not in probe.variables:
            probe.variables.append(v)
    probe.rows = probe.rows + [neg.normalized()]
    return not is_feasible(probe)


def satisfies(sys: LinSys, point: dict, tol: float = FEAS_TOL) -> bool:
    """Membership of a concrete point."""
    return all(r.evaluate(point) <= r.rhs + tol for r in sys.rows)


def parse_row(text: str) -> LinIneq:
    """Parse one serialized row, ``+1*A -2*B <= 0.5``."""
    lhs, rhs = text.split("<=")
    coeffs = {}
    for tok in lhs.split():
        if tok == "0":
            continue
        sign = 1
        if tok[0] == "+":
            tok = tok[1:]
        elif tok[0] == "-":
            sign = -1
            tok = tok[1:]
        k, name = tok.split("*")
        coeffs[name] = coeffs.get(name, 0) + sign * int(k)
    return LinIneq(coeffs, float(rhs))
