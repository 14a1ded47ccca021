"""Independent checks for the closed-form results.

Nothing here reuses the analytic probability formulas: the product-state
search evaluates projectors on explicitly constructed state vectors, the
spin overlap is computed from a rotated ladder-operator basis, and
thresholds are located by bisection on the numerical verdicts.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import criteria, linalg
from . import quantum as q
from .errors import DimMismatch, EmptyObjective, InvalidDim, NoDetection, NotMonotone
from .families import build

HALF_PI = np.pi / 2
TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 32
    refinement_rounds: int = 4
    refinement_shrink: float = 0.25

    def __post_init__(self):
        if self.resolution < 8:
            raise ValueError("grid resolution must be at least 8")
        if not (0 < self.refinement_shrink < 1):
            raise ValueError("refinement_shrink must lie in (0, 1)")
        if self.refinement_rounds < 0:
            raise ValueError("refinement_rounds must be non-negative")


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    bracket_width: float
    evaluations: int


# -- PPT -------------------------------------------------------------------

def ppt_min_eigenvalue(rho):
    """Smallest eigenvalue of the partial transpose on the second party."""
    if rho.n_parties != 2:
        raise DimMismatch(f"PPT test needs a bipartite state, got dims {rho.dims}")
    pt = linalg.partial_transpose(rho.matrix, rho.dims, "B")
    w, _ = linalg.hermitian_eig(pt, tol=1e-8)
    return float(w[0])


def ppt_detects(rho, tol=None):
    tol = criteria.decision_tol() if tol is None else tol
    return ppt_min_eigenvalue(rho) < -tol


# Near a PPT boundary the minimum eigenvalue can vanish quadratically in p
# (e.g. rho0 at p = 0), so locating the sign change needs a tolerance at
# rounding level rather than the verdict tolerance.
PPT_SIGN_TOL = 1e-14


def ppt_sign_change(rho):
    return ppt_detects(rho, tol=PPT_SIGN_TOL)


def lp_slack_fuzz(count, seed, dims=(2, 3, 4, 5)):
    """Minimum Landau-Pollak slack over random states and observable pairs."""
    from .rand import random_density_matrix, random_observable, rng_from

    rng = rng_from(seed)
    worst = np.inf
    for _ in range(count):
        d = int(rng.choice(dims))
        rho = random_density_matrix((d,), rng, rank=int(rng.integers(1, d + 1)))
        x, y = random_observable(d, rng), random_observable(d, rng)
        worst = min(worst, criteria.landau_pollak_slack(rho, x, y))
    return float(worst)


# -- brute force over two-qubit product states --------------------------------

def _qubit_factors(theta, phi):
    """Outer products ``|u><u|`` flattened to length 4, ``u = (cos t, e^{i f} sin t)``."""
    u = np.stack([np.cos(theta).astype(complex), np.exp(1j * phi) * np.sin(theta)], axis=-1)
    # index (k, m) -> conj(u_k) u_m
    return (u.conj()[:, :, None] * u[:, None, :]).reshape(len(u), 4)


def _projector_tensor(p):
    # <a (x) b| P |a (x) b> = sum conj(a_k) conj(b_l) P[(k,l),(m,n)] a_m b_n
    t = np.asarray(p).reshape(2, 2, 2, 2)  # k, l, m, n
    return t.transpose(0, 2, 1, 3).reshape(4, 4)  # (k, m), (l, n)


def _objective_on_grid(proj_tensors, ta, tb):
    """Sum of M_inf over all pairs of party-A and party-B factors."""
    total = np.zeros((ta.shape[0], tb.shape[0]))
    for tensors in proj_tensors:
        best = None
        for t in tensors:
            p = np.real(ta @ t @ tb.T)
            best = p if best is None else np.maximum(best, p)
        total += best
    return total


def _side_grid(center_theta, center_phi, half_theta, half_phi, n, coarse):
    if coarse:
        th = np.linspace(0.0, HALF_PI, n)
        ph = np.linspace(0.0, TWO_PI, n, endpoint=False)
    else:
        th = np.clip(np.linspace(center_theta - half_theta, center_theta + half_theta, n), 0.0, HALF_PI)
        th = np.unique(th)
        ph = np.mod(np.linspace(center_phi - half_phi, center_phi + half_phi, n), TWO_PI)
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    return tt.ravel(), pp.ravel()


def max_over_product_states(objective, grid=GridSpec()):
    """Maximize ``sum_k M_inf(objective[k])`` over two-qubit pure product states.

    A coarse grid over all four angles is followed by
    ``grid.refinement_rounds`` local grids centred on the incumbent, each
    with its half-width multiplied by ``grid.refinement_shrink``.

    Returns
    -------
    value : float
    argmax : ProductStateParams
    """
    objective = list(objective)
    if not objective:
        raise EmptyObjective("at least one observable is required")
    for obs in objective:
        if obs.dim != 4:
            raise DimMismatch("objective observables must act on two qubits")
    proj_tensors = [[_projector_tensor(p) for p in obs.projectors] for obs in objective]
    n = grid.resolution

    best_val, best = -np.inf, None
    half_t, half_p = HALF_PI / (n - 1), TWO_PI / n
    for rnd in range(grid.refinement_rounds + 1):
        coarse = rnd == 0
        ca = cb = (None, None)
        if not coarse:
            ca, cb = (best[0], best[2]), (best[1], best[3])
        at, ap = _side_grid(*ca, half_t, half_p, n, coarse)
        bt, bp = _side_grid(*cb, half_t, half_p, n, coarse)
        vals = _objective_on_grid(proj_tensors, _qubit_factors(at, ap), _qubit_factors(bt, bp))
        i, j = np.unravel_index(np.argmax(vals), vals.shape)
        if vals[i, j] > best_val:
            best_val = float(vals[i, j])
            best = (at[i], bt[j], ap[i], bp[j])
        if not coarse:
            half_t *= grid.refinement_shrink
            half_p *= grid.refinement_shrink
    alpha, beta, delta, gamma = best
    params = q.ProductStateParams(float(alpha), float(beta), float(delta) % TWO_PI, float(gamma) % TWO_PI)
    return best_val, params


# -- spin overlap ---------------------------------------------------------------

def numeric_spin_overlap(d, theta):
    """Largest ``|<x_i|y_j>|`` between the ``J_z`` eigenbasis and its rotation by ``theta`` about y."""
    if int(d) != d or d < 2:
        raise InvalidDim(f"dimension must be an integer >= 2, got {d}")
    _, jy, jz = q.spin_matrices(int(d))
    _, v = linalg.hermitian_eig(jz)
    rotated = expm(-1j * theta * jy) @ v
    return float(np.abs(v.conj().T @ rotated).max())


# -- thresholds ----------------------------------------------------------------

def _as_verdict(out):
    if isinstance(out, criteria.CriterionResult):
        return out.detected
    return bool(out)


def detection_threshold(family, criterion, tol=1e-6, prescan=16):
    """Locate the mixing parameter where ``criterion`` starts detecting entanglement.

    Parameters
    ----------
    family : FamilyParams
        Family and fixed parameters; its ``p`` is ignored.
    criterion : callable
        Maps a :class:`DensityMatrix` to a :class:`CriterionResult` or a bool
        (True meaning entanglement detected).
    tol : float
        Final bracket width.
    prescan : int
        Number of equally spaced points on [0, 1] checked for monotonicity
        before bisecting.
    """
    evals = 0

    def detected(p):
        nonlocal evals
        evals += 1
        return _as_verdict(criterion(build(family.with_p(p))))

    grid = np.linspace(0.0, 1.0, prescan)
    flags = [detected(p) for p in grid]
    if not any(flags):
        raise NoDetection(f"no detection on [0, 1] for {family.family.value}")
    first = flags.index(True)
    if first == 0 or not all(flags[first:]):
        raise NotMonotone(f"verdicts on the pre-scan grid are not a single step: {flags}")
    lo, hi = float(grid[first - 1]), float(grid[first])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if detected(mid):
            hi = mid
        else:
            lo = mid
    return ThresholdResult(0.5 * (lo + hi), hi - lo, evals)
