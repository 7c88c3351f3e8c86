"""Truncated operator realization and commutant machinery."""

import numpy as np
import pytest

from qsphere import operators as ops


@pytest.fixture(scope="module")
def cfg():
    return ops.TruncationConfig(M=16, mu=0.5, c=2.0)


def test_config_validation():
    with pytest.raises(ops.InvalidConfig):
        ops.TruncationConfig(M=2)
    with pytest.raises(ops.InvalidConfig):
        ops.TruncationConfig(mu=1.0)
    with pytest.raises(ops.InvalidConfig):
        ops.TruncationConfig(c=-1.0)
    with pytest.raises(ops.InvalidConfig):
        ops.TruncationConfig(buffer=1)


def test_weight_roots(cfg):
    assert abs(cfg.lam_plus + cfg.lam_minus - 1.0) <= 1e-14
    assert abs(cfg.lam_plus * cfg.lam_minus + cfg.c) <= 1e-13
    assert abs(float(cfg.c_plus(0))) <= 1e-13
    assert abs(float(cfg.c_minus(0))) <= 1e-13


def test_defining_relations(cfg):
    A, B = ops.build_pi(cfg)
    rels = ops.verify_podles_relations(A, B, cfg)
    assert max(rels.values()) <= 1e-12


def test_block_diagonal(cfg):
    A, B = ops.build_pi(cfg)
    assert A.is_block_diagonal()
    assert B.is_block_diagonal()
    assert (A.adjoint() - A).norm() <= 1e-14


def test_dirac_eigendecomposition(cfg):
    D, vals, vecs = ops.build_dirac(cfg)
    assert np.max(np.abs(D.mat @ vecs - vecs * vals)) <= 1e-13
    assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(2 * cfg.M))) <= 1e-13
    # kernel of D is two-dimensional at this truncation
    assert int(np.sum(vals == 0)) == 2


def test_polar_decomposition(cfg):
    _, B = ops.build_pi(cfg)
    tau = ops.build_tau(cfg)
    assert ops.polar_check(B, tau, cfg) <= 1e-12


def test_spectral_projections(cfg):
    _, B = ops.build_pi(cfg)
    total = ops.BlockOperator.zero(cfg.M)
    for n in range(cfg.M):
        P, Q = ops.build_projections(cfg, n)
        total = total + P + Q
        assert ops.verify_spectral_projection(B, P, float(cfg.c_plus(n))) <= 1e-10
        assert ops.verify_spectral_projection(B, Q, float(cfg.c_minus(n))) <= 1e-10
    assert np.max(np.abs(total.mat - np.eye(2 * cfg.M))) == 0.0


def test_shift_spectrum(cfg):
    _, B = ops.build_pi(cfg)
    spec = np.sort(np.linalg.eigvalsh((B.adjoint() @ B).pp))
    want = np.sort(cfg.c_plus(np.arange(cfg.M)))
    assert np.max(np.abs(spec - want)) <= 1e-10


def test_hermitian_sqrt():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    H = X @ X.conj().T
    S = ops.hermitian_sqrt(H)
    assert np.max(np.abs(S @ S - H)) <= 1e-10
    assert np.max(np.abs(S - S.conj().T)) <= 1e-12


def test_compactness_profile_monotone(cfg):
    A, _ = ops.build_pi(cfg)
    tau = ops.build_tau(cfg)
    K = tau @ A - A @ tau
    prof = ops.compactness_profile(K, cfg)
    assert np.all(np.diff(prof.tail_norms) <= 1e-14)
    assert prof.decays_below(1e30) == 0
    assert prof.decays_below(0.0) is None


def test_commutant_identity(cfg):
    dim = ops.commutant_dimension([ops.BlockOperator.identity(cfg.M)])
    assert dim == (2 * cfg.M) ** 2


def test_commutant_distinct_diagonal(cfg):
    d = np.diag(np.arange(1, 2 * cfg.M + 1, dtype=float))
    dim = ops.commutant_dimension([ops.BlockOperator(d.astype(complex))])
    assert dim == 2 * cfg.M


def test_commutant_generators(cfg):
    A, B = ops.build_pi(cfg)
    assert ops.commutant_dimension([A, B, B.adjoint()]) == 2


def test_commutant_dense_sparse_agree():
    # same nullity through the dense SVD route and the Gram/inertia route
    cfg = ops.TruncationConfig(M=8)
    A, B = ops.build_pi(cfg)
    gens = [A, B, B.adjoint()]
    dense = ops.commutant_dimension(gens, dense_cutoff=10 ** 9)
    sparse = ops.commutant_dimension(gens, dense_cutoff=0)
    assert dense == sparse == 2
