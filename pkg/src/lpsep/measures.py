"""Concentration measures, entropies and majorization of outcome distributions.

Every function accepts a :class:`~lpsep.quantum.ProbabilityDistribution`
or any 1-d array of probabilities.
"""

import numpy as np

from .errors import InvalidOrder

MAJORIZATION_SLACK = 1e-12


def _probs(p):
    return np.asarray(p, dtype=float).ravel()


def m_r(p, r):
    """Concentration ``(sum_n p_n^(1+r))^(1/r)`` for ``r > -1``, ``r != 0``.

    Evaluated in log space, so very large ``r`` approaches ``max(p)``
    without underflow.
    """
    if r <= -1 or r == 0:
        raise InvalidOrder(f"order r={r} must satisfy r > -1 and r != 0")
    p = _probs(p)
    p = p[p > 0]
    logs = (1 + r) * np.log(p)
    top = logs.max()
    return float(np.exp((top + np.log(np.exp(logs - top).sum())) / r))


def m_inf(p):
    """Largest outcome probability."""
    return float(_probs(p).max())


def shannon(p):
    p = _probs(p)
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def renyi(p, q):
    if q <= 0:
        raise InvalidOrder(f"entropy order q={q} must be positive")
    if q == 1:
        return shannon(p)
    p = _probs(p)
    p = p[p > 0]
    return float(np.log((p ** q).sum()) / (1 - q))


def tsallis(p, q):
    if q <= 0:
        raise InvalidOrder(f"entropy order q={q} must be positive")
    if q == 1:
        return shannon(p)
    p = _probs(p)
    p = p[p > 0]
    return float(((p ** q).sum() - 1) / (1 - q))


def majorizes(p, q, slack=MAJORIZATION_SLACK):
    """True if ``p`` majorizes ``q``.

    Both are sorted in decreasing order (the shorter one zero-padded) and
    every partial sum of ``p`` must reach the matching partial sum of ``q``
    up to ``slack``.
    """
    p, q = _probs(p), _probs(q)
    n = max(p.size, q.size)
    p = np.sort(np.pad(p, (0, n - p.size)))[::-1]
    q = np.sort(np.pad(q, (0, n - q.size)))[::-1]
    return bool(np.all(np.cumsum(p) >= np.cumsum(q) - slack))
