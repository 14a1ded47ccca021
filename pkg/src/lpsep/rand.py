"""Seeded random states and observables for fuzzing."""

from math import prod

import numpy as np
from scipy.stats import unitary_group

from .quantum import DensityMatrix, ProductStateParams, pure_state, resolve_observable, tensor_states


def rng_from(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def ginibre(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_density_matrix(dims, rng, rank=None):
    """Ginibre-ensemble state ``G G^dagger / Tr(G G^dagger)``.

    ``rank`` is the number of columns of ``G``; full rank when omitted.
    """
    dims = tuple(dims)
    d = prod(dims)
    g = ginibre((d, rank or d), rng)
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)


def random_pure_state(dims, rng):
    dims = tuple(dims)
    return pure_state(ginibre(prod(dims), rng), dims)


def random_product_params(rng):
    a, b = rng.uniform(0, np.pi / 2, size=2)
    d, g = rng.uniform(0, 2 * np.pi, size=2)
    return ProductStateParams(a, b, d, g)


def random_product_state(dims, rng, rank=None):
    """``rho_1 (x) rho_2 (x) ...`` with independent Ginibre factors."""
    return tensor_states(*(random_density_matrix((d,), rng, rank=rank) for d in dims))


def random_unitary(d, rng):
    return unitary_group.rvs(d, random_state=rng) if d > 1 else np.ones((1, 1), dtype=complex)


def random_observable(d, rng, eigenvalues=None):
    """Random-basis observable; distinct Gaussian eigenvalues unless given."""
    u = random_unitary(d, rng)
    if eigenvalues is None:
        eigenvalues = rng.standard_normal(d)
    return resolve_observable(u @ np.diag(eigenvalues) @ u.conj().T)
