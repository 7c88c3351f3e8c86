"""Verification suites: each returns check records, some emit CSV artifacts.

Suites run in dependency order (word machinery, then operators, then the
action checks).  A symbolic failure in the action suite aborts the numeric
checks that assume those identities, marking them as skipped.
"""

from __future__ import annotations

import random

import numpy as np

from . import action as act
from . import freealg as fa
from . import operators as ops
from .config import RunConfig
from .reporting import CheckRecord, Timer, checked, skipped

SYM_TOL = 1e-12
NUM_TOL = 1e-12


def _random_word(rng: random.Random, max_len: int = 12, max_index: int = 6) -> fa.Word:
    sylls = []
    for _ in range(rng.randrange(max_len + 1)):
        if rng.random() < 0.25:
            sylls.append((fa.Y, 1))
        else:
            sylls.append((rng.randrange(max_index), rng.choice([-3, -2, -1, 1, 2, 3])))
    return fa.reduce_syllables(sylls)


def _random_elem(rng: random.Random, n_terms: int = 3) -> fa.AlgElem:
    out = fa.AlgElem.zero()
    for _ in range(n_terms):
        coeff = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        out = out + fa.AlgElem.from_word(_random_word(rng), coeff)
    return out


# -- words ------------------------------------------------------------


def suite_words(cfg: RunConfig) -> list[CheckRecord]:
    rng = random.Random(cfg.seed)
    records = []

    with Timer() as t:
        worst = 0.0
        cases = [
            ([(fa.Y, 1), (fa.Y, 1)], ()),
            ([(3, 2), (3, -2)], ()),
            ([(0, 1), (fa.Y, 1), (fa.Y, 1), (0, -1), (1, 1)], ((1, 1),)),
        ]
        for raw, expect in cases:
            got = fa.reduce_syllables(raw)
            worst = max(worst, 0.0 if got == expect else 1.0)
            # idempotence
            worst = max(worst, 0.0 if fa.reduce_syllables(got) == got else 1.0)
    records.append(checked("words/reduce-normal-form", "y^2 = e, r r^-1 = e",
                           worst, 0.0, t.ms, kind="symbolic"))

    with Timer() as t:
        worst = 0.0
        for _ in range(300):
            a, b, c = (_random_word(rng) for _ in range(3))
            lhs = fa.word_mul(fa.word_mul(a, b), c)
            rhs = fa.word_mul(a, fa.word_mul(b, c))
            worst = max(worst, 0.0 if lhs == rhs else 1.0)
    records.append(checked("words/associativity", "(ab)c = a(bc) after reduction",
                           worst, 0.0, t.ms, kind="symbolic"))

    with Timer() as t:
        worst = 0.0
        for _ in range(1000):
            a, b = _random_elem(rng), _random_elem(rng)
            worst = max(worst, (a.star().star() - a).norm())
            worst = max(worst, ((a * b).star() - b.star() * a.star()).norm())
    records.append(checked("words/star-involution", "(ab)* = b* a*, a** = a",
                           worst, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        phi = fa.make_phi(cfg.theta)
        worst = 0.0
        for _ in range(200):
            a, b = _random_word(rng), _random_word(rng)
            lhs = phi.eval_word(fa.word_mul(a, b))
            rhs = phi.eval_word(a) * phi.eval_word(b)
            worst = max(worst, abs(lhs - rhs))
            worst = max(worst, abs(phi.eval_word(fa.word_inv(a))
                                   - phi.eval_word(a).conjugate()))
    records.append(checked("words/character-multiplicative",
                           "phi(ab) = phi(a) phi(b), phi(a^-1) = conj phi(a)",
                           worst, 1e-10, t.ms, kind="symbolic"))

    with Timer() as t:
        # with r_n^- := r_n y, the three free-product identities hold exactly
        worst = 0.0
        n_max = min(max(cfg.M, 8), 64)
        y = fa.y_elem()
        rm = {n: fa.r_elem(n) * y for n in range(n_max + 1)}
        rp = {n: fa.r_elem(n) for n in range(n_max + 1)}
        for n in range(n_max + 1):
            worst = max(worst, (rp[n] * rm[n].star() - rm[n] * rp[n].star()).norm())
        for n in range(1, n_max + 1):
            worst = max(worst, (rp[n - 1] * rm[n].star() - rm[n - 1] * rp[n].star()).norm())
            worst = max(worst, (rp[n - 1] * rp[n].star() - rm[n - 1] * rm[n].star()).norm())
    records.append(checked("words/free-product-identities",
                           "r+ r-* = r- r+* and shifted variants",
                           worst, 0.0, t.ms, kind="symbolic"))

    with Timer() as t:
        worst = 0.0
        for _ in range(200):
            w = _random_word(rng)
            worst = max(worst, 0.0 if fa.word_parse(fa.word_str(w)) == w else 1.0)
            a = _random_elem(rng)
            worst = max(worst, (fa.AlgElem.from_json(a.to_json()) - a).norm())
    records.append(checked("words/serialization-roundtrip",
                           "string and JSON grammar roundtrip",
                           worst, SYM_TOL, t.ms, kind="symbolic"))
    return records


# -- podles -----------------------------------------------------------


def suite_podles(cfg: RunConfig) -> list[CheckRecord]:
    tc = cfg.truncation()
    records = []
    with Timer() as t:
        A, B = ops.build_pi(tc)
        rels = ops.verify_podles_relations(A, B, tc)
    for name, res in rels.items():
        records.append(checked(f"podles/{name}", name, res, NUM_TOL, t.ms / 4))

    with Timer() as t:
        lam_res = max(abs(tc.lam_plus + tc.lam_minus - 1.0),
                      abs(tc.lam_plus * tc.lam_minus + tc.c),
                      abs(float(tc.c_plus(0))), abs(float(tc.c_minus(0))))
    records.append(checked("podles/weight-roots",
                           "lam+ + lam- = 1, lam+ lam- = -c, c_pm(0) = 0",
                           lam_res, NUM_TOL, t.ms))

    with Timer() as t:
        D, vals, vecs = ops.build_dirac(tc)
        res = float(np.max(np.abs(D.mat @ vecs - vecs * vals)))
        orth = float(np.max(np.abs(vecs.conj().T @ vecs - np.eye(2 * tc.M))))
    records.append(checked("podles/dirac-eigenbasis",
                           "D (e_n, +-e_n) = +-n (e_n, +-e_n)",
                           max(res, orth), NUM_TOL, t.ms))

    with Timer() as t:
        tau = ops.build_tau(tc)
        polar = ops.polar_check(B, tau, tc)
    records.append(checked("podles/polar-decomposition", "B = tau |B|",
                           polar, NUM_TOL, t.ms))

    with Timer() as t:
        total = ops.BlockOperator.zero(tc.M)
        proj_res = 0.0
        for n in range(tc.M):
            P, Q = ops.build_projections(tc, n)
            total = total + P + Q
            proj_res = max(proj_res,
                           ops.verify_spectral_projection(B, P, float(tc.c_plus(n))),
                           ops.verify_spectral_projection(B, Q, float(tc.c_minus(n))))
        completeness = float(np.max(np.abs(total.mat - np.eye(2 * tc.M))))
    records.append(checked("podles/projections",
                           "B*B P_n = c+(n) P_n, sum(P_n + Q_n) = 1",
                           max(proj_res, completeness), 1e-10, t.ms))

    with Timer() as t:
        spec_plus = np.sort(np.linalg.eigvalsh((B.adjoint() @ B).pp))
        want = np.sort(tc.c_plus(np.arange(tc.M)))
        spec_res = float(np.max(np.abs(spec_plus - want)))
    records.append(checked("podles/shift-spectrum",
                           "spec(B*B) on plus leg = {c+(n)}",
                           spec_res, 1e-10, t.ms))

    with Timer() as t:
        off = max(A.off_diagonal_norm(), B.off_diagonal_norm())
    records.append(checked("podles/block-diagonal",
                           "off-diagonal blocks of pi-images vanish",
                           off, 0.0, t.ms))
    return records


# -- commutant --------------------------------------------------------


def suite_commutant(cfg: RunConfig) -> list[CheckRecord]:
    tc = cfg.truncation()
    records = []
    with Timer() as t:
        A, B = ops.build_pi(tc)
        dim = ops.commutant_dimension([A, B, B.adjoint()])
    records.append(checked("commutant/podles-generators",
                           "commutant of {A, B, B*} is C I (+) C I",
                           abs(dim - 2), 0.0, t.ms,
                           details=f"dimension={dim}"))

    with Timer() as t:
        dim_id = ops.commutant_dimension([ops.BlockOperator.identity(tc.M)])
    records.append(checked("commutant/identity-sanity",
                           "everything commutes with 1",
                           abs(dim_id - (2 * tc.M) ** 2), 0.0, t.ms,
                           details=f"dimension={dim_id}"))
    return records


# -- action -----------------------------------------------------------


def suite_action(cfg: RunConfig) -> list[CheckRecord]:
    tc = cfg.truncation()
    rep = act.EquivariantRep.default(tc.M)
    records = []

    with Timer() as t:
        q_rel = act.verify_lemma_q_relations(rep, tc)
        worst_q = max(r.residual for r in q_rel)
    records.append(checked("action/q-relations",
                           "q+ q-* = q- q+* and the three weighted relations",
                           worst_q, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        props = act.verify_proposition_generators(rep, tc)
        worst_p = max(r.residual for r in props)
    records.append(checked("action/generator-identities",
                           "q- = q+ y, y_n constant, w_{n+1} = z_n* w_n z_{n+1}, w' unitary",
                           worst_p, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        cop = act.verify_coproduct_grouplike(rep, tc)
        worst_c = max(r.residual for r in cop)
    records.append(checked("action/coproduct-grouplike",
                           "Delta(q_n) = q_n (x) q_n entrywise on the eigenbasis",
                           worst_c, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        U = act.build_U(rep, tc)
        uni = act.unitarity_residual(U)
    records.append(checked("action/unitarity", "U U* = U* U = 1 at word level",
                           uni, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        dcomm = act.dirac_commutation_residual(U, tc)
    records.append(checked("action/dirac-commutation", "U commutes with D",
                           dcomm, SYM_TOL, t.ms, kind="symbolic"))

    symbolic_ok = all(r.status == "pass" for r in records)
    if not symbolic_ok:
        for cid, ref in [
            ("action/oracle-alpha-A", "ad_U(A) equals the closed-form series"),
            ("action/oracle-alpha-B", "ad_U(B) equals the closed-form series"),
            ("action/alpha-tau", "ad_U(tau) = sum tau(P_n + Q_n) (x) r_{n-1} r_n*"),
        ]:
            records.append(skipped(cid, ref, "aborted: symbolic identities failed"))
        return records

    A, B = ops.build_pi(tc)
    with Timer() as t:
        res_a = (act.ad_U(A, U) - act.closed_form_alpha_A(rep, tc)).residual_norm()
    records.append(checked("action/oracle-alpha-A",
                           "ad_U(A) equals the closed-form series",
                           res_a, NUM_TOL, t.ms))
    with Timer() as t:
        res_b = (act.ad_U(B, U) - act.closed_form_alpha_B(rep, tc)).residual_norm()
    records.append(checked("action/oracle-alpha-B",
                           "ad_U(B) equals the closed-form series",
                           res_b, NUM_TOL, t.ms))
    with Timer() as t:
        tau = ops.build_tau(tc)
        res_t = (act.ad_U(tau, U) - act.alpha_tau(rep, tc)).residual_norm()
    records.append(checked("action/alpha-tau",
                           "ad_U(tau) = sum tau(P_n + Q_n) (x) r_{n-1} r_n*",
                           res_t, NUM_TOL, t.ms))
    return records


# -- volume -----------------------------------------------------------


def suite_volume(cfg: RunConfig) -> list[CheckRecord]:
    tc = cfg.truncation()
    rep = act.EquivariantRep.default(tc.M)
    records = []
    with Timer() as t:
        res = act.verify_volume_invariance(rep, tc)
    records.append(checked("volume/trace-invariance",
                           "(Tr (x) id)(ad_U(X)) = Tr(X) 1 on rank-one X",
                           res, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        rng = random.Random(cfg.seed)
        n2 = 2 * tc.M
        pairs = [(rng.randrange(n2), rng.randrange(n2)) for _ in range(20)]
        res_bf = act.volume_invariance_bruteforce(rep, tc, pairs)
    records.append(checked("volume/bruteforce-crosscheck",
                           "standard-basis ad_U agrees on sampled rank-one X",
                           res_bf, SYM_TOL, t.ms))
    return records


# -- noncompact -------------------------------------------------------


def suite_noncompact(cfg: RunConfig):
    tc = cfg.truncation()
    records = []
    with Timer() as t:
        wit = act.noncompact_witness(cfg.theta, tc)
    details = "degenerate-theta: commutator vanishes" if wit.degenerate else \
        f"tail norm = {wit.jump:.6g} at every k"
    records.append(checked("noncompact/witness-entrywise",
                           "K(e_n, 0) = (lam_{n-1} - lam_n)(e_{n-2}, 0)",
                           wit.entrywise_residual, NUM_TOL, t.ms,
                           details=details))
    profile_res = float(np.max(np.abs(wit.profile.tail_norms - wit.jump))) \
        if not wit.degenerate else float(np.max(wit.profile.tail_norms))
    records.append(checked("noncompact/constant-tail-norms",
                           "tail norms equal |1 - e^{2 pi i theta}| for all k",
                           profile_res, 1e-10,
                           details="degenerate-theta" if wit.degenerate else ""))

    with Timer() as t:
        contrast = act.compact_contrast_profile(tc)
        # analytic column norms: lam+ mu^{2k-2} (1 - mu^2) from k = 1 on
        k = np.arange(len(contrast.tail_norms))
        expect = tc.lam_plus * tc.mu ** (2 * np.maximum(k, 1) - 2) * (1 - tc.mu ** 2)
        contrast_res = float(np.max(np.abs(contrast.tail_norms - expect)))
        below = contrast.decays_below(1e-6)
    records.append(checked("noncompact/compact-contrast",
                           "[shift, A_plus] tail norms decay geometrically",
                           contrast_res, 1e-10, t.ms,
                           details=f"below 1e-6 from k={below}"))

    rows = [(int(k), float(v), cfg.theta, cfg.mu, cfg.c, cfg.M)
            for k, v in wit.profile.rows()]
    return records, rows


# -- quotient ---------------------------------------------------------


def suite_quotient(cfg: RunConfig) -> list[CheckRecord]:
    tc = cfg.truncation()
    rep = act.EquivariantRep.default(tc.M)
    N = cfg.N_quotient
    piN = act.quotient_morphism_piN(N)
    records = []

    with Timer() as t:
        worst = 0.0
        # r_n -> e above the cut, fixed below it
        worst = max(worst, 0.0 if piN.word(fa.r_word(N + 3)) == () else 1.0)
        worst = max(worst, 0.0 if piN.word(fa.r_word(min(1, N))) == fa.r_word(min(1, N)) else 1.0)
        rng = random.Random(cfg.seed)
        for _ in range(100):
            w = _random_word(rng, max_index=N + 4)
            a = piN.word(act.quotient_morphism_piN(N + 2).word(w))
            b = act.quotient_morphism_piN(min(N, N + 2)).word(w)
            worst = max(worst, 0.0 if a == b else 1.0)
    records.append(checked("quotient/substitution",
                           "pi_N(r_n) = 1 above the cut; pi_N pi_N' = pi_min",
                           worst, 0.0, t.ms, kind="symbolic"))

    with Timer() as t:
        at = piN.operator(act.alpha_tau(rep, tc))
        worst = 0.0
        for n in range(1, tc.M):
            got = at.entry(n - 1, n)
            want = fa.r_elem(N) if n == N + 1 else (
                fa.AlgElem.one() if n > N + 1
                else fa.r_elem(n - 1) * fa.r_elem(n).star())
            worst = max(worst, (got - want).norm())
    records.append(checked("quotient/alpha-tau-coefficients",
                           "pi_N applied to the shift action collapses the tail",
                           worst, SYM_TOL, t.ms, kind="symbolic"))

    with Timer() as t:
        res_a = act.quotient_alpha_A_residual(rep, tc, N)
    records.append(checked("quotient/alpha-A-four-summands",
                           "(id (x) pi_N) alpha(A) matches its four-summand form",
                           res_a, 1e-10, t.ms))

    with Timer() as t:
        res_b = act.quotient_B_tail_residual(rep, tc, N)
    records.append(checked("quotient/alpha-B-tail",
                           "B tail equals the matrix-function closed form",
                           res_b, 1e-10, t.ms))
    return records


SUITE_FUNCS = {
    "words": suite_words,
    "podles": suite_podles,
    "commutant": suite_commutant,
    "action": suite_action,
    "volume": suite_volume,
    "noncompact": suite_noncompact,
    "quotient": suite_quotient,
}
