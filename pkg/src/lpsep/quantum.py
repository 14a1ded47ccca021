"""States, observables and measurement statistics.

An :class:`Observable` is stored as its distinct eigenvalues together with
the projectors onto the corresponding eigenspaces; everything downstream
(outcome probabilities, overlaps, concentration measures) only ever looks
at the projectors, so the choice of basis inside a degenerate eigenspace
never matters.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

import numpy as np

from . import linalg
from .errors import DimMismatch, InvalidParams, InvalidState

STATE_TOL = 1e-10
GROUP_TOL = 1e-8
PROB_NEG_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

_S2 = 1 / np.sqrt(2)
# |0> is the +1 eigenvector of sigma_z
BELL_STATES = {
    "phi+": np.array([_S2, 0, 0, _S2], dtype=complex),
    "phi-": np.array([_S2, 0, 0, -_S2], dtype=complex),
    "psi+": np.array([0, _S2, _S2, 0], dtype=complex),
    "psi-": np.array([0, _S2, -_S2, 0], dtype=complex),
}
BELL_ORDER = ("phi+", "phi-", "psi+", "psi-")


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def ket(bits, dims=None):
    """Computational basis vector, e.g. ``ket("01")`` or ``ket([0, 2], (2, 3))``."""
    digits = [int(b) for b in bits]
    if dims is None:
        dims = (2,) * len(digits)
    if len(dims) != len(digits):
        raise DimMismatch("one digit per subsystem is required")
    idx = int(np.ravel_multi_index(digits, dims))
    v = np.zeros(prod(dims), dtype=complex)
    v[idx] = 1.0
    return v


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on a tensor product.

    Construction validates the invariants and raises :class:`InvalidState`
    naming the first one violated.
    """

    matrix: np.ndarray
    dims: tuple
    tol: float = field(default=STATE_TOL, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidState("dims", f"matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidState("finite", "matrix has non-finite entries")
        dims = tuple(int(d) for d in (self.dims if self.dims is not None else (m.shape[0],)))
        if any(d < 1 for d in dims) or prod(dims) != m.shape[0]:
            raise InvalidState("dims", f"subsystem dims {dims} do not multiply to {m.shape[0]}")
        dev = linalg.inf_norm(m - m.conj().T)
        if dev > self.tol:
            raise InvalidState("hermitian", f"||rho - rho^dagger||_inf = {dev:.3e}")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > self.tol:
            raise InvalidState("trace", f"Tr(rho) = {tr:.12g}")
        lmin = np.linalg.eigvalsh(m)[0]
        if lmin < -self.tol:
            raise InvalidState("positive", f"minimum eigenvalue {lmin:.3e}")
        object.__setattr__(self, "matrix", _frozen(m))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def n_parties(self):
        return len(self.dims)

    def reduced(self, keep):
        """Reduced state on the parties listed in ``keep``."""
        keep = sorted(int(k) for k in np.atleast_1d(keep))
        return DensityMatrix(partial_trace(self.matrix, self.dims, keep),
                             tuple(self.dims[k] for k in keep), tol=max(self.tol, 1e-9))

    def expect(self, op):
        return float(np.real(np.trace(np.asarray(op) @ self.matrix)))


def partial_trace(m, dims, keep):
    """Trace out every party not listed in ``keep``."""
    dims = tuple(dims)
    n = len(dims)
    keep = sorted(keep)
    t = np.asarray(m).reshape(dims + dims)
    traced = [k for k in range(n) if k not in keep]
    # trace from the highest axis down so earlier indices stay valid
    for k in sorted(traced, reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=k, axis2=k + cur)
    d = prod(dims[k] for k in keep)
    return t.reshape(d, d)


def pure_state(vec, dims=None, tol=STATE_TOL):
    v = np.asarray(vec, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise InvalidState("trace", "zero vector")
    v = v / nrm
    return DensityMatrix(np.outer(v, v.conj()), dims if dims is not None else (v.size,), tol=tol)


def mixture(weights, states):
    """Convex combination of :class:`DensityMatrix` objects with equal dims."""
    weights = np.asarray(weights, dtype=float)
    if weights.size != len(states) or weights.size == 0:
        raise InvalidParams("one weight per state is required")
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise InvalidParams("weights must be a probability vector")
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise DimMismatch("all states in a mixture must share subsystem dims")
    m = sum(w * s.matrix for w, s in zip(weights, states))
    return DensityMatrix(m, dims)


def tensor_states(*states):
    m = linalg.kron_all([s.matrix for s in states])
    dims = tuple(d for s in states for d in s.dims)
    return DensityMatrix(m, dims)


def maximally_mixed(dims):
    d = prod(dims)
    return DensityMatrix(np.eye(d) / d, tuple(dims))


@dataclass(frozen=True)
class ProductStateParams:
    """Angles of the two-qubit pure product state

    ``(cos a |0> + e^{i d} sin a |1>) (x) (cos b |0> + e^{i g} sin b |1>)``
    with ``a, b`` in [0, pi/2] and phases ``d, g`` in [0, 2 pi).
    """

    alpha: float
    beta: float
    delta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        eps = 1e-12
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (-eps <= v <= np.pi / 2 + eps):
                raise InvalidParams(f"{name}={v} outside [0, pi/2]")
        for name in ("delta", "gamma"):
            v = getattr(self, name)
            if not (-eps <= v < 2 * np.pi + eps):
                raise InvalidParams(f"{name}={v} outside [0, 2 pi)")


def product_vector(params):
    a = np.array([np.cos(params.alpha), np.exp(1j * params.delta) * np.sin(params.alpha)])
    b = np.array([np.cos(params.beta), np.exp(1j * params.gamma) * np.sin(params.beta)])
    return np.kron(a, b)


def product_state(params):
    return pure_state(product_vector(params), (2, 2))


@dataclass(frozen=True)
class Outcome:
    eigenvalue: float
    projector: np.ndarray
    multiplicity: int


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray
    outcomes: tuple

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def eigenvalues(self):
        return tuple(o.eigenvalue for o in self.outcomes)

    @property
    def projectors(self):
        return tuple(o.projector for o in self.outcomes)

    def __len__(self):
        return len(self.outcomes)


def resolve_observable(h, group_tol=GROUP_TOL, herm_tol=linalg.HERMITIAN_TOL):
    """Split a Hermitian matrix into distinct eigenvalues and eigenspace projectors.

    Eigenvalues closer than ``group_tol`` to their ascending neighbour are
    merged into one outcome.
    """
    h = linalg.as_matrix(h)
    w, v = linalg.hermitian_eig(h, tol=herm_tol)
    groups = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] <= group_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    outcomes = []
    for g in groups:
        vecs = v[:, g]
        proj = vecs @ vecs.conj().T
        outcomes.append(Outcome(float(np.mean(w[g])), _frozen(proj), len(g)))
    return Observable(_frozen(h), tuple(outcomes))


def observable_from_projectors(eigenvalues, projectors):
    """Assemble ``sum_n eigenvalues[n] * projectors[n]`` and resolve it."""
    m = sum(lam * np.asarray(p) for lam, p in zip(eigenvalues, projectors))
    return resolve_observable(m)


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    probs: np.ndarray
    labels: tuple = ()

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)


def _state_matrix(rho):
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)


def outcome_distribution(rho, obs):
    """Outcome probabilities ``p_n = Tr(P_n rho)`` of measuring ``obs`` on ``rho``."""
    m = _state_matrix(rho)
    if m.shape != obs.matrix.shape:
        raise DimMismatch(f"state dim {m.shape[0]} != observable dim {obs.dim}")
    # Tr(P rho) = sum_ij P_ij rho_ji
    p = np.array([np.real(np.sum(o.projector * m.T)) for o in obs.outcomes])
    if p.min() < -PROB_NEG_TOL:
        raise InvalidState("positive", f"negative outcome probability {p.min():.3e}")
    p = np.clip(p, 0.0, 1.0)
    s = p.sum()
    if abs(s - 1.0) > 1e-8:
        raise InvalidState("trace", f"outcome probabilities sum to {s:.12g}")
    return ProbabilityDistribution(p, obs.eigenvalues)


def max_overlap(x, y):
    """Largest overlap between eigenspaces of two observables.

    Computed as ``max_{n,m} ||P_n(x) P_m(y)||_2``. For non-degenerate
    observables this is ``max_{i,j} |<x_i|y_j>|``; for degenerate ones it
    is the largest such value over all eigenbasis choices.
    """
    if x.dim != y.dim:
        raise DimMismatch(f"observable dims differ: {x.dim} vs {y.dim}")
    best = 0.0
    for px in x.projectors:
        for py in y.projectors:
            best = max(best, linalg.spectral_norm(px @ py))
    return min(best, 1.0)


def relabel_nonzero(obs, tol=GROUP_TOL):
    """Shift eigenvalue labels away from zero, keeping the projectors.

    Outcome labels enter product observables only through their products,
    and a zero label would merge every outcome it multiplies.
    """
    lams = np.array(obs.eigenvalues)
    if np.all(np.abs(lams) > tol):
        return obs
    shift = np.abs(lams).max() + 1.0
    return observable_from_projectors(lams + shift, obs.projectors)


def tensor_observable(observables):
    """Product observable ``O_1 (x) ... (x) O_n`` resolved into eigenspaces.

    Factors with a zero eigenvalue are relabelled first (see
    :func:`relabel_nonzero`).
    """
    factors = [relabel_nonzero(o) for o in observables]
    mats = [sum(o.eigenvalue * o.projector for o in f.outcomes) for f in factors]
    return resolve_observable(linalg.kron_all(mats))


# -- standard observables ---------------------------------------------------

@lru_cache(maxsize=None)
def correlation_observable(axis, n=2):
    """``sigma_axis`` on each of ``n`` qubits, e.g. ``Z = sigma_z (x) sigma_z``."""
    return resolve_observable(linalg.kron_all([PAULI[axis]] * n))


@lru_cache(maxsize=None)
def total_spin(axis):
    """Two-qubit ``S_i = sigma_i (x) I + I (x) sigma_i``."""
    s = PAULI[axis]
    return resolve_observable(np.kron(s, I2) + np.kron(I2, s))


@lru_cache(maxsize=None)
def pauli_observable(axis):
    return resolve_observable(PAULI[axis])


@lru_cache(maxsize=None)
def bell_observable(lambdas=(1.0, 2.0, 3.0, 4.0)):
    """Bell-diagonal observable with eigenvalue ``lambdas[k]`` on ``BELL_ORDER[k]``."""
    m = sum(lam * np.outer(BELL_STATES[k], BELL_STATES[k].conj())
            for lam, k in zip(lambdas, BELL_ORDER))
    return resolve_observable(m)


@lru_cache(maxsize=None)
def computational_observable(d, labels=None):
    """Diagonal observable; labels default to ``1..d``."""
    labels = np.arange(1, d + 1) if labels is None else np.asarray(labels, dtype=float)
    return resolve_observable(np.diag(labels).astype(complex))


def fourier_matrix(d):
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d) / np.sqrt(d)


@lru_cache(maxsize=None)
def fourier_observable(d, labels=None):
    """Observable diagonal in the discrete-Fourier basis; labels default to ``1..d``."""
    labels = np.arange(1, d + 1) if labels is None else np.asarray(labels, dtype=float)
    f = fourier_matrix(d)
    return resolve_observable(f @ np.diag(labels) @ f.conj().T)


def spin_matrices(d):
    """Spin-(d-1)/2 operators ``(J_x, J_y, J_z)`` from the ladder construction.

    Basis ordered by decreasing ``m``: ``m = j, j-1, ..., -j``.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    j = (d - 1) / 2
    m = j - np.arange(d)
    jp = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        # J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jz = np.diag(m).astype(complex)
    return jx, jy, jz
