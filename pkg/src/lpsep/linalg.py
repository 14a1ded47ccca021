"""Small dense complex matrix kernel.

Thin wrappers over numpy/LAPACK that add the checks and conventions the
rest of the package relies on: Hermiticity tolerance in the operator
infinity-norm, ascending eigenvalues, and partial transposition of a
bipartite operator.
"""

import numpy as np

from .errors import DimMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10


def as_matrix(a):
    """Return ``a`` as a 2-d complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def inf_norm(a):
    """Operator infinity-norm (maximum absolute row sum)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=1).max())


def dagger(a):
    return np.conj(np.asarray(a)).T


def is_hermitian(h, tol=HERMITIAN_TOL):
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and inf_norm(h - dagger(h)) <= tol


def kron(a, b):
    """Kronecker product; result has block structure ``a[i, j] * b``."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(mats):
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def hermitian_eig(h, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian within ``tol`` in the infinity-norm.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    eigenvalues : ndarray
        Real eigenvalues in ascending order.
    eigenvectors : ndarray
        Orthonormal eigenvectors as columns, ``eigenvectors[:, i]`` paired
        with ``eigenvalues[i]``.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimMismatch(f"matrix is not square: {h.shape}")
    dev = inf_norm(h - dagger(h))
    if dev > tol:
        raise NotHermitian(f"||h - h^dagger||_inf = {dev:.3e} exceeds {tol:.1e}")
    # symmetrize so LAPACK sees an exactly Hermitian input
    h = 0.5 * (h + dagger(h))
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, v


def partial_transpose(rho, dims, side="B"):
    """Transpose the indices of one tensor factor of a bipartite operator.

    ``dims`` is ``(d_A, d_B)``; ``side`` selects the factor (``"A"`` or
    ``"B"``). Pure index permutation, so applying it twice returns the input
    exactly.
    """
    rho = np.asarray(rho)
    d_a, d_b = (int(d) for d in dims)
    n = d_a * d_b
    if rho.ndim != 2 or rho.shape != (n, n):
        raise DimMismatch(f"dims {d_a}x{d_b} do not match matrix shape {rho.shape}")
    t = rho.reshape(d_a, d_b, d_a, d_b)
    if side in ("B", "b", 1):
        t = t.transpose(0, 3, 2, 1)
    elif side in ("A", "a", 0):
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return t.reshape(n, n)


def spectral_norm(a):
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))
