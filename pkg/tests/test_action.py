"""The equivariant unitary, its adjoint action, and everything downstream."""

import numpy as np
import pytest

from qsphere import action as act
from qsphere import freealg as fa
from qsphere import operators as ops


@pytest.fixture(scope="module")
def cfg():
    return ops.TruncationConfig(M=12, mu=0.5, c=2.0)


@pytest.fixture(scope="module")
def rep(cfg):
    return act.EquivariantRep.default(cfg.M)


@pytest.fixture(scope="module")
def U(rep, cfg):
    return act.build_U(rep, cfg)


def test_unitarity(U):
    assert act.unitarity_residual(U) == 0.0


def test_dirac_commutation(U, cfg):
    assert act.dirac_commutation_residual(U, cfg) == 0.0


def test_gaoperator_adjoint_antihomomorphism(U, cfg):
    X = act.GAOperator.from_matrix(ops.build_tau(cfg))
    lhs = (U @ X).adjoint()
    rhs = X.adjoint() @ U.adjoint()
    assert (lhs - rhs).residual_norm() <= 1e-14


def test_trivial_rep_collapses(cfg):
    rep0 = act.EquivariantRep.trivial(cfg.M)
    U0 = act.build_U(rep0, cfg)
    A, B = ops.build_pi(cfg)
    for X in (A, B):
        diff = act.ad_U(X, U0) - act.GAOperator.from_matrix(X)
        assert diff.residual_norm() <= 1e-13
    diff_a = act.closed_form_alpha_A(rep0, cfg) - act.GAOperator.from_matrix(A)
    diff_b = act.closed_form_alpha_B(rep0, cfg) - act.GAOperator.from_matrix(B)
    assert diff_a.residual_norm() <= 1e-13
    assert diff_b.residual_norm() <= 1e-13


def test_oracle_matches_closed_forms(rep, U, cfg):
    A, B = ops.build_pi(cfg)
    assert (act.ad_U(A, U) - act.closed_form_alpha_A(rep, cfg)).residual_norm() <= 1e-12
    assert (act.ad_U(B, U) - act.closed_form_alpha_B(rep, cfg)).residual_norm() <= 1e-12


def test_shift_action_formula(rep, U, cfg):
    tau = ops.build_tau(cfg)
    assert (act.ad_U(tau, U) - act.alpha_tau(rep, cfg)).residual_norm() == 0.0


def test_q_relations_exact(rep, cfg):
    assert max(r.residual for r in act.verify_lemma_q_relations(rep, cfg)) == 0.0


def test_generator_identities_exact(rep, cfg):
    assert max(r.residual for r in act.verify_proposition_generators(rep, cfg)) == 0.0


def test_coproduct_grouplike(rep, cfg):
    assert max(r.residual for r in act.verify_coproduct_grouplike(rep, cfg)) == 0.0


def test_volume_invariance(rep, cfg):
    assert act.verify_volume_invariance(rep, cfg) == 0.0
    pairs = [(0, 0), (1, 3), (5, 5), (2 * cfg.M - 1, 0)]
    assert act.volume_invariance_bruteforce(rep, cfg, pairs) <= 1e-13


def test_violating_rep_detected(cfg):
    bad = act.EquivariantRep.violating(cfg.M, index=3)
    recs = act.verify_lemma_q_relations(bad, cfg) \
        + act.verify_proposition_generators(bad, cfg)
    failing = [r for r in recs if r.residual > 1e-12]
    assert failing
    assert max(r.residual for r in failing) >= 1.0
    # every failing instance touches the tampered index
    for r in failing:
        lo, hi = min(r.indices), max(r.indices)
        assert lo - 1 <= 3 <= hi


def test_witness_tail_constant(cfg):
    wit = act.noncompact_witness(0.25, cfg)
    assert not wit.degenerate
    assert abs(wit.jump - np.sqrt(2.0)) <= 1e-14
    assert wit.entrywise_residual <= 1e-12
    assert np.max(np.abs(wit.profile.tail_norms - wit.jump)) <= 1e-10
    assert wit.profile.is_noncompact_witness(1.0)


def test_witness_degenerate_theta(cfg):
    wit = act.noncompact_witness(1.0, cfg)
    assert wit.degenerate
    assert np.max(wit.profile.tail_norms) <= 1e-10


def test_witness_half_theta(cfg):
    wit = act.noncompact_witness(0.5, cfg)
    assert abs(wit.jump - 2.0) <= 1e-12
    assert wit.entrywise_residual <= 1e-12


def test_contrast_decays(cfg):
    prof = act.compact_contrast_profile(cfg)
    k = np.arange(len(prof.tail_norms))
    expect = cfg.lam_plus * cfg.mu ** (2 * np.maximum(k, 1) - 2) * (1 - cfg.mu ** 2)
    assert np.max(np.abs(prof.tail_norms - expect)) <= 1e-10


def test_quotient_on_operators(rep, cfg):
    pi1 = act.quotient_morphism_piN(1)
    at = pi1.operator(act.alpha_tau(rep, cfg))
    # coefficient at the cut keeps r_N, beyond it collapses to the identity
    assert at.entry(1, 2) == fa.r_elem(1)
    assert at.entry(2, 3) == fa.AlgElem.one()


@pytest.mark.parametrize("N", [1, 2, 4])
def test_quotient_closed_forms(rep, cfg, N):
    assert act.quotient_alpha_A_residual(rep, cfg, N) <= 1e-10
    assert act.quotient_B_tail_residual(rep, cfg, N) <= 1e-10
