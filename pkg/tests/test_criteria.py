import numpy as np
import pytest

from lpsep import criteria as c
from lpsep import quantum as q
from lpsep.errors import DegenerateSpectrum, DimMismatch, InvalidDim
from lpsep.families import FamilyParams, build
from lpsep.oracle import ppt_min_eigenvalue
from lpsep.rand import (random_density_matrix, random_observable, random_product_params,
                        random_product_state, random_pure_state)

SZ, SX = q.pauli_observable("z"), q.pauli_observable("x")
SINGLET = q.pure_state(q.BELL_STATES["psi-"], (2, 2))
KET00 = q.pure_state(q.ket("00"), (2, 2))
DETECTED, INCONCLUSIVE = c.Verdict.DETECTED, c.Verdict.INCONCLUSIVE


def werner(p):
    return build(FamilyParams("werner", p))


# -- uncertainty relations ---------------------------------------------------

def test_lp_slack_singlet():
    x, z = q.correlation_observable("x"), q.correlation_observable("z")
    assert c.landau_pollak_slack(SINGLET, x, z) == pytest.approx(0.0, abs=1e-7)


def test_lp_slack_eigenstate():
    assert c.landau_pollak_slack(q.pure_state([1, 0]), SZ, SX) == pytest.approx(0.0, abs=1e-12)


def test_lp_slack_maximally_mixed_qubit():
    # arccos(sqrt(1/2)) twice minus arccos(1/sqrt2)
    assert c.landau_pollak_slack(q.maximally_mixed((2,)), SZ, SX) == pytest.approx(np.pi / 4)


def test_lp_slack_fuzz(rng):
    for _ in range(1000):
        d = int(rng.integers(2, 6))
        rho = random_density_matrix((d,), rng, rank=int(rng.integers(1, d + 1)))
        assert c.landau_pollak_slack(rho, random_observable(d, rng), random_observable(d, rng)) >= -1e-9


def test_weak_lp_examples():
    v, b = c.weak_lp_value(q.pure_state([1, 0]), SZ, SX)
    assert v == pytest.approx(1.5) and b == pytest.approx(1 + 1 / np.sqrt(2))
    v, _ = c.weak_lp_value(q.maximally_mixed((2,)), SZ, SX)
    assert v == pytest.approx(1.0)
    v, b = c.weak_lp_value(SINGLET, q.correlation_observable("x"), q.correlation_observable("z"))
    assert v == pytest.approx(2.0) and b == pytest.approx(2.0)


def test_weak_lp_holds(rng):
    for _ in range(300):
        d = int(rng.integers(2, 6))
        rho = random_density_matrix((d,), rng)
        v, b = c.weak_lp_value(rho, random_observable(d, rng), random_observable(d, rng))
        assert v <= b + 1e-9


# -- GL chain ---------------------------------------------------------------------

def test_gl_bound_qubits():
    res = c.gl_bound(werner(0.5), (SZ, SZ), (SX, SX))
    assert res.bound == pytest.approx(1 + 1 / np.sqrt(2))
    assert res.criterion_id is c.CriterionId.GL_BOUND


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gl_bound_complementary(d):
    a1, a2 = q.computational_observable(d), q.fourier_observable(d)
    res = c.gl_bound(q.maximally_mixed((d, d)), (a1, a1), (a2, a2))
    assert res.bound == pytest.approx(1 + 1 / np.sqrt(d))
    assert res.bound == pytest.approx(c.qudit_complementary_bound(d))


@pytest.mark.parametrize("p", [0.0, 0.3, 0.7, 0.71, 1.0])
def test_gl_bound_werner(p):
    res = c.gl_bound(werner(p), (SZ, SZ), (SX, SX))
    assert res.value == pytest.approx(1 + p, abs=1e-12)
    assert res.detected == (p > 1 / np.sqrt(2))


def test_gl_bound_product_states(rng):
    for _ in range(300):
        da, db = (int(v) for v in rng.integers(2, 4, size=2))
        rho = random_product_state((da, db), rng)
        obs = [random_observable(d, rng) for d in (da, db, da, db)]
        res = c.gl_bound(rho, obs[:2], obs[2:])
        assert res.value <= res.bound + 1e-9


def test_gl_bound_dim_mismatch():
    with pytest.raises(DimMismatch):
        c.gl_bound(q.maximally_mixed((2, 3)), (SZ, SZ), (SX, SX))


# -- two-qubit conditions -----------------------------------------------------------

@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.6, 1.0])
def test_sep1_werner(p):
    res = c.sep1(werner(p))
    assert res.value == pytest.approx(1 + p, abs=1e-12)
    assert res.bound == 1.5
    assert res.detected == (p > 0.5)


def test_sep1_examples():
    assert c.sep1(KET00).value == pytest.approx(1.5)
    assert c.sep1(KET00).verdict is INCONCLUSIVE
    assert c.sep1(SINGLET).value == pytest.approx(2.0)
    assert c.sep1(SINGLET).verdict is DETECTED


@pytest.mark.parametrize("p", [0.0, 0.3, 0.34, 1.0])
def test_sep2_sep3_werner(p):
    for f in (c.sep2, c.sep3):
        res = f(werner(p))
        assert res.value == pytest.approx(1.5 * (1 + p), abs=1e-12)
        assert res.detected == (p > 1 / 3)


def test_sep2_sep3_ket00():
    assert c.sep2(KET00).value == pytest.approx(2.0)
    assert c.sep3(KET00).value == pytest.approx(2.0)
    assert c.sep2(KET00).verdict is INCONCLUSIVE and c.sep3(KET00).verdict is INCONCLUSIVE


def test_sep2_gisin():
    lo = build(FamilyParams("gisin", 0.49, np.pi / 4, 0.0))
    hi = build(FamilyParams("gisin", 0.51, np.pi / 4, 0.0))
    assert not c.sep2(lo).detected and c.sep2(hi).detected


@pytest.mark.parametrize("p", [0.0, 0.4, 0.5, 0.55, 1.0])
def test_sep3_rho0(p):
    res = c.sep3(build(FamilyParams("rho0", p)))
    assert res.value == pytest.approx(max(p, 1 - p) + 1 + p, abs=1e-12)
    assert res.detected == (p > 0.5)


@pytest.mark.parametrize("p", [0.0, 0.3, 0.34, 1.0])
def test_sep4_werner(p):
    res = c.sep4(werner(p))
    assert res.value == pytest.approx((1 + 3 * p) / 4, abs=1e-12)
    assert res.detected == (p > 1 / 3)


def test_sep4_singlet():
    assert c.sep4(SINGLET).value == pytest.approx(1.0)
    assert c.sep4(SINGLET).detected


def test_sep4_gisin(rng):
    for _ in range(30):
        p, a, b = rng.uniform(), rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi)
        expected = max((1 - p) / 2, p * (1 + np.sin(2 * a) * abs(np.cos(b))) / 2)
        assert c.sep4(build(FamilyParams("gisin", p, a, b))).value == pytest.approx(expected, abs=1e-12)


def test_sep4_degenerate_spectrum():
    with pytest.raises(DegenerateSpectrum):
        c.sep4(SINGLET, (1, 1, 2, 3))


def test_sep4_label_invariance(rng):
    for _ in range(50):
        rho = random_density_matrix((2, 2), rng)
        ref = c.sep4(rho).value
        lams = tuple(rng.permutation(rng.standard_normal(4) * 5))
        assert c.sep4(rho, lams).value == pytest.approx(ref, abs=1e-12)


def test_two_qubit_criteria_reject_other_dims():
    for f in (c.sep1, c.sep2, c.sep3, c.sep4, c.witness_values):
        with pytest.raises(DimMismatch):
            f(q.maximally_mixed((2, 3)))


def test_verdict_is_strict():
    # value exactly at the bound stays inconclusive
    res = c._result(c.CriterionId.SEP1, 1.5, 1.5, 1e-9)
    assert res.verdict is INCONCLUSIVE
    assert c._result(c.CriterionId.SEP1, 1.5 + 2e-9, 1.5, 1e-9).verdict is DETECTED


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("LPSEP_TOL", "0.2")
    assert c.decision_tol() == 0.2
    assert c.sep2(werner(0.4)).verdict is INCONCLUSIVE
    monkeypatch.delenv("LPSEP_TOL")
    assert c.sep2(werner(0.4)).verdict is DETECTED


# -- witnesses and the sep2/sep4 equivalence --------------------------------------------

def test_witness_examples():
    assert c.witness_values(SINGLET).psi_minus == pytest.approx(-0.5)
    w = c.witness_values(q.maximally_mixed((2, 2)))
    assert np.allclose(list(w.as_dict().values()), 0.25)
    for p in np.linspace(0, 1, 11):
        w = c.witness_values(werner(p))
        assert w.psi_minus == pytest.approx((1 - 3 * p) / 4, abs=1e-12)
        assert w.detected() == (p > 1 / 3 + 1e-9)


def test_witness_range(rng):
    for _ in range(200):
        vals = c.witness_values(random_density_matrix((2, 2), rng)).as_dict().values()
        assert all(-0.5 - 1e-12 <= v <= 0.5 + 1e-12 for v in vals)


def test_equivalence_examples():
    e = c.sep2_sep4_equivalence(werner(1 / 3))
    assert e.verdict2 is INCONCLUSIVE and e.verdict4 is INCONCLUSIVE
    assert e.delta_p_sum == pytest.approx(1.0)
    e = c.sep2_sep4_equivalence(SINGLET)
    assert e.verdict2 is DETECTED and e.verdict4 is DETECTED
    assert e.delta_p_sum == pytest.approx(3.0)


def test_equivalence_fuzz(rng):
    for _ in range(1000):
        rho = random_density_matrix((2, 2), rng, rank=int(rng.integers(1, 5)))
        e = c.sep2_sep4_equivalence(rho)
        assert e.agree
        assert (e.delta_p_sum > 1) == (e.verdict2 is DETECTED)


def test_bell_identities(rng):
    # Bell fidelities in terms of the correlation expectations
    for _ in range(50):
        rho = random_density_matrix((2, 2), rng)
        x, y, z = (rho.expect(np.kron(q.PAULI[a], q.PAULI[a])) for a in "xyz")
        w = c.witness_values(rho)
        assert 0.5 - w.phi_plus == pytest.approx((1 + x - y + z) / 4)
        assert 0.5 - w.phi_minus == pytest.approx((1 - x + y + z) / 4)
        assert 0.5 - w.psi_plus == pytest.approx((1 + x + y - z) / 4)
        assert 0.5 - w.psi_minus == pytest.approx((1 - x - y - z) / 4)
        assert c.delta_p(rho, "x") == pytest.approx(x)


# -- necessity on separable states ------------------------------------------------------

def test_product_states_respect_bounds(rng):
    worst = {f.__name__: -np.inf for f in (c.sep1, c.sep2, c.sep3, c.sep4)}
    for _ in range(10_000):
        rho = q.product_state(random_product_params(rng))
        for f in (c.sep1, c.sep2, c.sep3, c.sep4):
            res = f(rho)
            worst[f.__name__] = max(worst[f.__name__], res.value - res.bound)
    assert all(v <= 1e-9 for v in worst.values()), worst


def test_mixtures_of_products_respect_bounds(rng):
    for _ in range(500):
        k = int(rng.integers(1, 6))
        comps = [random_product_state((2, 2), rng, rank=int(rng.integers(1, 3))) for _ in range(k)]
        rho = q.mixture(rng.dirichlet(np.ones(k)), comps)
        for f in (c.sep1, c.sep2, c.sep3, c.sep4):
            res = f(rho)
            assert res.value <= res.bound + 1e-9


def test_sep1_implies_sep2(rng):
    seen = 0
    for _ in range(2000):
        rho = random_pure_state((2, 2), rng)
        if c.sep1(rho).detected:
            seen += 1
            assert c.sep2(rho).detected
    assert seen > 0


def test_detection_implies_npt(rng):
    for _ in range(2000):
        rho = random_density_matrix((2, 2), rng, rank=int(rng.integers(1, 5)))
        if any(f(rho).detected for f in (c.sep1, c.sep2, c.sep3, c.sep4)):
            assert ppt_min_eigenvalue(rho) < -1e-9


# -- qudit spin bound ---------------------------------------------------------------

def test_qudit_spin_bound_examples():
    assert c.qudit_spin_bound(2, np.pi / 2) == pytest.approx(1 + 1 / np.sqrt(2))
    assert c.qudit_spin_bound(4, np.pi / 2) == pytest.approx(1 + np.sqrt(3 / 8))
    for d in range(2, 8):
        assert c.qudit_spin_bound(d, 0.0) == pytest.approx(2.0)


@pytest.mark.parametrize("d", range(2, 9))
def test_qudit_spin_orthogonal_closed_form(d):
    from math import comb
    assert c.qudit_spin_bound(d, np.pi / 2) == pytest.approx(1 + np.sqrt(comb(d - 1, d // 2) / 2 ** (d - 1)))


def test_spin_overlap_antiparallel():
    # theta = pi puts n* = D out of range; the boundary rule keeps n* - 1
    for d in range(2, 7):
        assert c.spin_overlap_formula(d, np.pi) == pytest.approx(1.0)


def test_qudit_spin_bound_invalid():
    with pytest.raises(InvalidDim):
        c.qudit_spin_bound(1, 0.3)
    with pytest.raises(InvalidDim):
        c.qudit_complementary_bound(1)


# -- multipartite -----------------------------------------------------------------------

def test_bisep_bound_three_qubits():
    res = c.multipartite_bisep_value(q.maximally_mixed((2, 2, 2)), [SX] * 3, [SZ] * 3)
    assert res.bound == pytest.approx(1 + 1 / np.sqrt(2))
    assert res.criterion_id is c.CriterionId.MULTIPARTITE_BISEP


def test_ghz_three_qubits():
    # XXX and ZZZ anticommute, so no three-qubit state exceeds 1 + 1/sqrt2
    ghz = q.pure_state(q.ket("000") + q.ket("111"), (2, 2, 2))
    res = c.multipartite_bisep_value(ghz, [SX] * 3, [SZ] * 3)
    assert res.value == pytest.approx(1.5)
    assert res.verdict is INCONCLUSIVE


def test_xxx_zzz_sum_bounded_for_all_states(rng):
    for _ in range(300):
        rho = random_density_matrix((2, 2, 2), rng, rank=int(rng.integers(1, 4)))
        assert c.multipartite_bisep_value(rho, [SX] * 3, [SZ] * 3).value <= 1 + 1 / np.sqrt(2) + 1e-9


@pytest.mark.parametrize("d, n", [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)])
def test_bisep_bound_complementary(d, n):
    c1, c2 = q.computational_observable(d), q.fourier_observable(d)
    assert c.bisep_bound([c1] * n, [c2] * n) == pytest.approx(1 + 1 / np.sqrt(d))


def test_bisep_two_parties_matches_gl_bound(rng):
    for _ in range(20):
        rho = random_density_matrix((2, 3), rng)
        obs = [random_observable(d, rng) for d in (2, 3, 2, 3)]
        a = c.gl_bound(rho, obs[:2], obs[2:])
        b = c.multipartite_bisep_value(rho, obs[:2], obs[2:])
        assert a.value == pytest.approx(b.value) and a.bound == pytest.approx(b.bound)


def test_min_over_parties_is_unsound_for_four_qubits():
    phi = q.BELL_STATES["phi+"]
    rho = q.pure_state(np.kron(phi, phi), (2, 2, 2, 2))  # product across AB | CD
    res = c.multipartite_bisep_value(rho, [SX] * 4, [SZ] * 4)
    assert res.value == pytest.approx(2.0)
    assert res.value > 1 + 1 / np.sqrt(2)
    assert res.bound == pytest.approx(2.0)
    assert res.verdict is INCONCLUSIVE


def test_biseparable_fuzz(rng):
    for _ in range(200):
        n = int(rng.integers(3, 5))
        k = int(rng.integers(1, n))
        perm = rng.permutation(n)
        left, right = sorted(perm[:k]), sorted(perm[k:])
        a = random_density_matrix((2,) * len(left), rng, rank=1)
        b = random_density_matrix((2,) * len(right), rng, rank=1)
        t = np.kron(a.matrix, b.matrix).reshape((2,) * (2 * n))
        order = list(left) + list(right)
        inv = np.argsort(order)
        t = t.transpose(list(inv) + [n + i for i in inv])
        rho = q.DensityMatrix(t.reshape(2 ** n, 2 ** n), (2,) * n)
        obs1 = [random_observable(2, rng) for _ in range(n)]
        obs2 = [random_observable(2, rng) for _ in range(n)]
        res = c.multipartite_bisep_value(rho, obs1, obs2)
        assert res.value <= res.bound + 1e-9


def test_multipartite_dim_mismatch():
    with pytest.raises(DimMismatch):
        c.multipartite_bisep_value(q.maximally_mixed((2, 2)), [SX] * 3, [SZ] * 3)
    with pytest.raises(DimMismatch):
        c.multipartite_bisep_value(q.maximally_mixed((2,)), [SX], [SZ])
