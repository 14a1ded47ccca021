"""Benchmark two-qubit families with known separability boundaries.

* Werner: ``(1-p)/4 I + p |psi-><psi-|``
* Gisin: ``p |chi><chi| + (1-p)/2 (|00><00| + |11><11|)`` with
  ``|chi> = cos(alpha) |01> + e^{i beta} sin(alpha) |10>``
* Rho0: ``p |psi-><psi-| + (1-p) |00><00|``

``closed_form_minf`` returns the analytic M_inf sums for each observable
set; tests compare them against the numerical criteria.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import quantum as q
from .errors import InvalidParams


class Family(str, enum.Enum):
    WERNER = "werner"
    GISIN = "gisin"
    RHO0 = "rho0"


class ObservableSet(str, enum.Enum):
    XZ = "XZ"
    XYZ = "XYZ"
    SPIN = "Spin"
    BELL = "Bell"


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    p: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Family(self.family))
        except ValueError as exc:
            raise InvalidParams(f"unknown family {self.family!r}") from exc
        eps = 1e-12
        if not (-eps <= self.p <= 1 + eps):
            raise InvalidParams(f"p={self.p} outside [0, 1]")
        if self.family is Family.GISIN:
            if not (-eps <= self.alpha <= np.pi / 2 + eps):
                raise InvalidParams(f"alpha={self.alpha} outside [0, pi/2]")
            if not (-eps <= self.beta < 2 * np.pi + eps):
                raise InvalidParams(f"beta={self.beta} outside [0, 2 pi)")

    def with_p(self, p):
        return FamilyParams(self.family, p, self.alpha, self.beta)


def _proj(v):
    return np.outer(v, v.conj())


def build(params):
    """Density matrix of the family member described by ``params``."""
    p = float(np.clip(params.p, 0.0, 1.0))
    singlet = _proj(q.BELL_STATES["psi-"])
    if params.family is Family.WERNER:
        m = (1 - p) / 4 * np.eye(4) + p * singlet
    elif params.family is Family.GISIN:
        chi = (np.cos(params.alpha) * q.ket("01")
               + np.exp(1j * params.beta) * np.sin(params.alpha) * q.ket("10"))
        m = p * _proj(chi) + (1 - p) / 2 * (_proj(q.ket("00")) + _proj(q.ket("11")))
    else:
        m = p * singlet + (1 - p) * _proj(q.ket("00"))
    return q.DensityMatrix(m, (2, 2))


def closed_form_minf(params, observable_set):
    """Analytic ``M_inf`` sum of ``observable_set`` on the family member."""
    obs = ObservableSet(observable_set)
    p = params.p
    if params.family is Family.WERNER:
        return {ObservableSet.XZ: 1 + p,
                ObservableSet.XYZ: 3 * (1 + p) / 2,
                ObservableSet.SPIN: 3 * (1 + p) / 2,
                ObservableSet.BELL: (1 + 3 * p) / 4}[obs]
    if params.family is Family.GISIN:
        s = np.sin(2 * params.alpha)
        cb = np.cos(params.beta)
        if obs is ObservableSet.XZ:
            return max(p, 1 - p) + (1 + p * s * abs(cb)) / 2
        if obs is ObservableSet.XYZ:
            return max(p, 1 - p) + 1 + p * s * abs(cb)
        if obs is ObservableSet.SPIN:
            return max(p, (1 - p) / 2) + 2 * max((1 - p * s * cb) / 2, (1 + p * s * cb) / 4)
        return max((1 - p) / 2, p * (1 + s * abs(cb)) / 2)
    return {ObservableSet.XZ: max(p, 1 - p) + (1 + p) / 2,
            ObservableSet.XYZ: max(p, 1 - p) + 1 + p,
            ObservableSet.SPIN: max(p, 1 - p) + 1 + p,
            ObservableSet.BELL: max(p, (1 - p) / 2)}[obs]


def known_separability_boundary(family, alpha=0.0):
    """Largest ``p`` for which the family member is separable."""
    family = Family(family)
    if family is Family.WERNER:
        return 1 / 3
    if family is Family.GISIN:
        return 1 / (1 + np.sin(2 * alpha))
    return 0.0


def closed_form_threshold(family, criterion, alpha=0.0, beta=0.0):
    """Analytic detection threshold in ``p``; ``None`` when nothing is detected.

    ``criterion`` is one of ``sep1`` .. ``sep4``.
    """
    family = Family(family)
    crit = criterion.lower()
    if family is Family.WERNER:
        t = {"sep1": 0.5, "sep2": 1 / 3, "sep3": 1 / 3, "sep4": 1 / 3}[crit]
    elif family is Family.RHO0:
        t = {"sep1": 2 / 3, "sep2": 0.5, "sep3": 0.5, "sep4": 0.5}[crit]
    else:
        s = np.sin(2 * alpha)
        cb = np.cos(beta)
        denom = {"sep1": 1 + 0.5 * s * abs(cb), "sep2": 1 + s * abs(cb),
                 "sep3": 1 - s * cb, "sep4": 1 + s * abs(cb)}[crit]
        t = 1 / denom if denom > 0 else np.inf
    return None if t >= 1 - 1e-12 else float(t)
