"""Separability conditions built on the Landau-Pollak uncertainty relation.

Each condition bounds a sum of maximal outcome probabilities (``M_inf``)
over all separable states; a state whose value exceeds the bound by more
than the decision tolerance is certified entangled. Values at or below the
bound are inconclusive, since every condition here is necessary only.
"""

import enum
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, floor

import numpy as np

from . import quantum as q
from .errors import DegenerateSpectrum, DimMismatch, InvalidDim
from .measures import m_inf

DEFAULT_DECISION_TOL = 1e-9


def decision_tol():
    """Verdict tolerance; the ``LPSEP_TOL`` environment variable overrides it."""
    env = os.environ.get("LPSEP_TOL")
    return float(env) if env else DEFAULT_DECISION_TOL


class Verdict(str, enum.Enum):
    DETECTED = "DetectedEntangled"
    INCONCLUSIVE = "Inconclusive"


class CriterionId(str, enum.Enum):
    SEP1 = "Sep1"
    SEP2 = "Sep2"
    SEP3 = "Sep3"
    SEP4 = "Sep4"
    GL_BOUND = "GLBound"
    QUDIT_SPIN = "QuditSpin"
    QUDIT_COMPLEMENTARY = "QuditComplementary"
    MULTIPARTITE_BISEP = "MultipartiteBisep"


@dataclass(frozen=True)
class CriterionResult:
    criterion_id: CriterionId
    value: float
    bound: float
    verdict: Verdict

    @property
    def detected(self):
        return self.verdict is Verdict.DETECTED

    def as_dict(self):
        return {"criterion_id": self.criterion_id.value, "value": self.value,
                "bound": self.bound, "verdict": self.verdict.value}


def _result(cid, value, bound, tol):
    tol = decision_tol() if tol is None else tol
    verdict = Verdict.DETECTED if value > bound + tol else Verdict.INCONCLUSIVE
    return CriterionResult(cid, float(value), float(bound), verdict)


def minf(rho, obs):
    return m_inf(q.outcome_distribution(rho, obs))


def _require_dims(rho, dims):
    if tuple(rho.dims) != tuple(dims):
        raise DimMismatch(f"expected subsystem dims {tuple(dims)}, got {tuple(rho.dims)}")


# -- uncertainty relations ---------------------------------------------------

def landau_pollak_slack(rho, x, y):
    """``arccos sqrt(M(x)) + arccos sqrt(M(y)) - arccos c(x, y)``; never negative."""
    c = q.max_overlap(x, y)
    lhs = np.arccos(np.sqrt(minf(rho, x))) + np.arccos(np.sqrt(minf(rho, y)))
    return float(lhs - np.arccos(np.clip(c, 0.0, 1.0)))


def weak_lp_value(rho, x, y):
    """``(M(x) + M(y), 1 + c(x, y))``; the first never exceeds the second."""
    return minf(rho, x) + minf(rho, y), 1.0 + q.max_overlap(x, y)


# -- bipartite conditions from the weak relation -------------------------------

def gl_bound(rho, obs1, obs2, tol=None):
    """``M(A1 (x) B1) + M(A2 (x) B2) <= 1 + min(c(A1, A2), c(B1, B2))``.

    ``obs1 = (A1, B1)`` and ``obs2 = (A2, B2)`` are single-party
    observables; ``rho`` must be bipartite with matching dims.
    """
    (a1, b1), (a2, b2) = obs1, obs2
    if a1.dim != a2.dim or b1.dim != b2.dim:
        raise DimMismatch("paired observables must act on the same party")
    _require_dims(rho, (a1.dim, b1.dim))
    value = (minf(rho, q.tensor_observable([a1, b1]))
             + minf(rho, q.tensor_observable([a2, b2])))
    bound = 1.0 + min(q.max_overlap(a1, a2), q.max_overlap(b1, b2))
    return _result(CriterionId.GL_BOUND, value, bound, tol)


# -- two-qubit conditions ------------------------------------------------------

def sep1(rho, tol=None):
    """``M(Z) + M(X) <= 3/2`` with ``Z = sz (x) sz`` and ``X = sx (x) sx``."""
    _require_dims(rho, (2, 2))
    value = minf(rho, q.correlation_observable("z")) + minf(rho, q.correlation_observable("x"))
    return _result(CriterionId.SEP1, value, 1.5, tol)


def sep2(rho, tol=None):
    """``M(X) + M(Y) + M(Z) <= 2`` for the three correlation observables."""
    _require_dims(rho, (2, 2))
    value = sum(minf(rho, q.correlation_observable(a)) for a in "xyz")
    return _result(CriterionId.SEP2, value, 2.0, tol)


def sep3(rho, tol=None):
    """``M(S_x) + M(S_y) + M(S_z) <= 2`` for the total-spin components."""
    _require_dims(rho, (2, 2))
    value = sum(minf(rho, q.total_spin(a)) for a in "xyz")
    return _result(CriterionId.SEP3, value, 2.0, tol)


def sep4(rho, lambdas=(1.0, 2.0, 3.0, 4.0), tol=None):
    """``M(B) <= 1/2`` for a non-degenerate Bell-diagonal observable ``B``.

    The eigenvalues only label outcomes, so any four distinct values give
    the same result.
    """
    _require_dims(rho, (2, 2))
    lambdas = tuple(float(v) for v in lambdas)
    if len(lambdas) != 4:
        raise DegenerateSpectrum("four eigenvalues are required")
    if min(abs(a - b) for a, b in combinations(lambdas, 2)) <= q.GROUP_TOL:
        raise DegenerateSpectrum(f"eigenvalues must be pairwise distinct: {lambdas}")
    return _result(CriterionId.SEP4, minf(rho, q.bell_observable(lambdas)), 0.5, tol)


@dataclass(frozen=True)
class WitnessValues:
    """``Tr(W rho)`` for ``W = I/2 - |BS><BS|``, one per Bell state."""

    phi_plus: float
    phi_minus: float
    psi_plus: float
    psi_minus: float

    def as_dict(self):
        return {"phi+": self.phi_plus, "phi-": self.phi_minus,
                "psi+": self.psi_plus, "psi-": self.psi_minus}

    def detected(self, tol=None):
        tol = decision_tol() if tol is None else tol
        return min(self.as_dict().values()) < -tol


def witness_values(rho):
    _require_dims(rho, (2, 2))
    vals = []
    for key in q.BELL_ORDER:
        v = q.BELL_STATES[key]
        vals.append(0.5 - float(np.real(v.conj() @ rho.matrix @ v)))
    return WitnessValues(*vals)


@dataclass(frozen=True)
class Equivalence:
    verdict2: Verdict
    verdict4: Verdict
    delta_p_sum: float

    @property
    def agree(self):
        return self.verdict2 is self.verdict4


def delta_p(rho, axis):
    """``p_+ - p_-`` for the correlation observable along ``axis``."""
    dist = q.outcome_distribution(rho, q.correlation_observable(axis))
    return float(sum(np.sign(lam) * p for lam, p in zip(dist.labels, dist.probs)))


def sep2_sep4_equivalence(rho, tol=None):
    """Evaluate both conditions together with ``|dp(X)| + |dp(Y)| + |dp(Z)|``.

    The two verdicts always agree, and the first detects exactly when the
    sum exceeds 1.
    """
    total = sum(abs(delta_p(rho, a)) for a in "xyz")
    return Equivalence(sep2(rho, tol).verdict, sep4(rho, tol=tol).verdict, float(total))


# -- qudits and multipartite systems -----------------------------------------

def spin_overlap_formula(d, theta, boundary_tol=1e-12):
    """Closed-form maximal overlap of spin components whose axes are ``theta`` apart.

    ``c^2 = C(d-1, n) cos^2(theta/2)^(d-1-n) sin^2(theta/2)^n`` with
    ``n = floor(d sin^2(theta/2))``. When ``d sin^2(theta/2)`` is within
    ``boundary_tol`` of an integer both neighbouring ``n`` are tried and the
    larger overlap is returned.
    """
    if int(d) != d or d < 2:
        raise InvalidDim(f"dimension must be an integer >= 2, got {d}")
    d = int(d)
    if not (0 <= theta <= np.pi + 1e-12):
        raise ValueError(f"angle {theta} outside [0, pi]")
    c2, s2 = np.cos(theta / 2) ** 2, np.sin(theta / 2) ** 2
    x = d * s2
    nearest = round(x)
    cands = [nearest, nearest - 1] if abs(x - nearest) <= boundary_tol else [floor(x)]
    best = 0.0
    for n in cands:
        if 0 <= n <= d - 1:
            best = max(best, comb(d - 1, n) * c2 ** (d - 1 - n) * s2 ** n)
    return float(np.sqrt(best))


def qudit_spin_bound(d, theta):
    """Separable-state bound ``1 + c`` for spin components ``theta`` apart in dimension ``d``."""
    return 1.0 + spin_overlap_formula(d, theta)


def qudit_complementary_bound(d):
    if int(d) != d or d < 2:
        raise InvalidDim(f"dimension must be an integer >= 2, got {d}")
    return 1.0 + 1.0 / np.sqrt(d)


def bisep_bound(obs1, obs2):
    """Bound on ``M(obs1 product) + M(obs2 product)`` over biseparable states.

    For a cut ``S | rest`` the weak relation may be applied on either side,
    giving ``1 + min(c_S, c_rest)`` where ``c_S`` is the overlap of the two
    product observables restricted to ``S``. A biseparable state is a
    mixture over cuts, so the bound is the largest of these.
    """
    obs1, obs2 = tuple(obs1), tuple(obs2)
    return _bisep_bound_cached(obs1, obs2)


@lru_cache(maxsize=64)
def _bisep_bound_cached(obs1, obs2):
    n = len(obs1)
    overlaps = {}

    def side(idx):
        if idx not in overlaps:
            overlaps[idx] = q.max_overlap(q.tensor_observable([obs1[k] for k in idx]),
                                          q.tensor_observable([obs2[k] for k in idx]))
        return overlaps[idx]

    worst = 0.0
    for size in range(1, n):
        for s in combinations(range(n), size):
            if 0 not in s:
                continue
            rest = tuple(k for k in range(n) if k not in s)
            worst = max(worst, min(side(s), side(rest)))
    return 1.0 + worst


def multipartite_bisep_value(rho, obs1, obs2, tol=None):
    """Biseparability condition for per-party observable lists ``obs1``, ``obs2``."""
    obs1, obs2 = tuple(obs1), tuple(obs2)
    if len(obs1) != len(obs2) or len(obs1) < 2:
        raise DimMismatch("need matching observable lists for at least two parties")
    dims = tuple(o.dim for o in obs1)
    if dims != tuple(o.dim for o in obs2):
        raise DimMismatch("paired observables must act on the same party")
    _require_dims(rho, dims)
    value = minf(rho, q.tensor_observable(obs1)) + minf(rho, q.tensor_observable(obs2))
    return _result(CriterionId.MULTIPARTITE_BISEP, value, bisep_bound(obs1, obs2), tol)
