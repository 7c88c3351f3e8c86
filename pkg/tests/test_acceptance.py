"""Acceptance gate: one check per criterion, one pass/fail line each."""

import time

import numpy as np

from qsphere import action as act
from qsphere import operators as ops


def _verdict(label, ok, detail=""):
    line = f"{label}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_acceptance_1_defining_relations():
    worst, slowest = 0.0, 0.0
    for mu in (0.3, 0.5, 0.9):
        for c in (0.1, 2.0, 10.0):
            t0 = time.perf_counter()
            cfg = ops.TruncationConfig(M=32, mu=mu, c=c)
            A, B = ops.build_pi(cfg)
            rels = ops.verify_podles_relations(A, B, cfg)
            slowest = max(slowest, time.perf_counter() - t0)
            worst = max(worst, max(rels.values()))
    _verdict("acceptance 1 (defining relations, 9 configs, M=32)",
             worst <= 1e-12 and slowest < 1.0,
             f"max residual {worst:.2e}, slowest {slowest:.2f}s")


def test_acceptance_2_commutant_dimension():
    dims = {}
    t64 = None
    for M in (4, 8, 16, 32, 64):
        t0 = time.perf_counter()
        cfg = ops.TruncationConfig(M=M)
        A, B = ops.build_pi(cfg)
        dims[M] = ops.commutant_dimension([A, B, B.adjoint()])
        if M == 64:
            t64 = time.perf_counter() - t0
    _verdict("acceptance 2 (commutant dimension = 2, M in 4..64)",
             all(d == 2 for d in dims.values()) and t64 < 30.0,
             f"dims {dims}, M=64 in {t64:.1f}s")


def test_acceptance_3_oracle_equivalence():
    worst = 0.0
    for mu, c in ((0.3, 0.1), (0.5, 2.0), (0.7, 1.0), (0.9, 10.0), (0.4, 5.0)):
        cfg = ops.TruncationConfig(M=16, mu=mu, c=c)
        rep = act.EquivariantRep.default(cfg.M)
        U = act.build_U(rep, cfg)
        A, B = ops.build_pi(cfg)
        worst = max(
            worst,
            (act.ad_U(A, U) - act.closed_form_alpha_A(rep, cfg)).residual_norm(),
            (act.ad_U(B, U) - act.closed_form_alpha_B(rep, cfg)).residual_norm(),
        )
    _verdict("acceptance 3 (oracle vs closed forms, 5 configs, M=16)",
             worst <= 1e-12, f"max residual {worst:.2e}")


def test_acceptance_4_symbolic_suite():
    cfg = ops.TruncationConfig(M=64)
    rep = act.EquivariantRep.default(cfg.M)
    U = act.build_U(rep, cfg)
    worst = max(
        max(r.residual for r in act.verify_lemma_q_relations(rep, cfg)),
        max(r.residual for r in act.verify_proposition_generators(rep, cfg)),
        max(r.residual for r in act.verify_coproduct_grouplike(rep, cfg)),
        act.unitarity_residual(U),
        act.verify_volume_invariance(rep, cfg),
    )
    _verdict("acceptance 4 (symbolic identity suite, n < 64)",
             worst == 0.0, f"max residual {worst:.2e}")


def test_acceptance_5_polar_decomposition():
    cfg = ops.TruncationConfig(M=32)
    _, B = ops.build_pi(cfg)
    res = ops.polar_check(B, ops.build_tau(cfg), cfg)
    _verdict("acceptance 5 (polar decomposition of B)",
             res <= 1e-12, f"residual {res:.2e}")


def test_acceptance_6_shift_action_formula():
    cfg = ops.TruncationConfig(M=32)
    rep = act.EquivariantRep.default(cfg.M)
    U = act.build_U(rep, cfg)
    res = (act.ad_U(ops.build_tau(cfg), U) - act.alpha_tau(rep, cfg)).residual_norm()
    _verdict("acceptance 6 (shift-action closed form)",
             res == 0.0, f"residual {res:.2e}")


def test_acceptance_7_noncompact_witness():
    ok, detail = True, []
    for M in (16, 32, 64):
        cfg = ops.TruncationConfig(M=M, mu=0.3, c=2.0)
        wit = act.noncompact_witness(0.25, cfg)
        tail_dev = float(np.max(np.abs(wit.profile.tail_norms - np.sqrt(2.0))))
        contrast = act.compact_contrast_profile(cfg)
        below = contrast.decays_below(1e-6)
        ok = ok and wit.entrywise_residual <= 1e-12 and tail_dev <= 1e-10 \
            and below is not None and below <= M // 2
        detail.append(f"M={M}: entry {wit.entrywise_residual:.1e}, "
                      f"tail dev {tail_dev:.1e}, contrast<1e-6 at k={below}")
    _verdict("acceptance 7 (non-compactness witness, theta=1/4)",
             ok, "; ".join(detail))


def test_acceptance_8_quotient_closed_forms():
    cfg = ops.TruncationConfig(M=16)
    rep = act.EquivariantRep.default(cfg.M)
    worst = 0.0
    for N in (1, 2, 4):
        worst = max(worst,
                    act.quotient_alpha_A_residual(rep, cfg, N),
                    act.quotient_B_tail_residual(rep, cfg, N))
    _verdict("acceptance 8 (quotient closed forms, N in {1,2,4})",
             worst <= 1e-10, f"max residual {worst:.2e}")


def test_acceptance_9_negative_control():
    cfg = ops.TruncationConfig(M=16)
    bad = act.EquivariantRep.violating(cfg.M, index=3)
    recs = act.verify_lemma_q_relations(bad, cfg) \
        + act.verify_proposition_generators(bad, cfg)
    failing = [r for r in recs if r.residual > 1e-12]
    localized = all(min(r.indices) - 1 <= 3 <= max(r.indices) for r in failing)
    big = bool(failing) and max(r.residual for r in failing) >= 1.0
    # the untampered parts of the symbolic suite stay clean
    U = act.build_U(bad, cfg)
    clean = act.unitarity_residual(U) == 0.0 \
        and max(r.residual for r in act.verify_coproduct_grouplike(bad, cfg)) == 0.0
    _verdict("acceptance 9 (negative control localized at n=3)",
             big and localized and clean,
             f"{len(failing)} failing instances, "
             f"max residual {max((r.residual for r in failing), default=0.0):.2f}")
