"""Finite-truncation realization of the q-deformed sphere generators.

Everything lives on H = H_+ (+) H_- with M basis vectors per leg.  The
standard basis order is e_0..e_{M-1} on the plus leg followed by e_0..e_{M-1}
on the minus leg.  Shift operators lose information at the top index, so all
verification routines restrict to interior columns n <= M - buffer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp


class InvalidConfig(ValueError):
    pass


@dataclass(frozen=True)
class TruncationConfig:
    M: int = 32
    mu: float = 0.5
    c: float = 2.0
    buffer: int = 2

    def __post_init__(self):
        if self.M < 4:
            raise InvalidConfig(f"truncation dimension M={self.M} must be >= 4")
        if not (0.0 < self.mu < 1.0):
            raise InvalidConfig(f"mu={self.mu} must lie in (0,1)")
        if self.c <= 0.0:
            raise InvalidConfig(f"c={self.c} must be positive")
        if self.buffer < 2:
            raise InvalidConfig(f"buffer={self.buffer} must be >= 2")

    @property
    def lam_plus(self) -> float:
        return 0.5 + np.sqrt(self.c + 0.25)

    @property
    def lam_minus(self) -> float:
        return 0.5 - np.sqrt(self.c + 0.25)

    def c_plus(self, n) -> float:
        a = self.lam_plus * self.mu ** (2 * np.asarray(n, dtype=float))
        return a - a * a + self.c

    def c_minus(self, n) -> float:
        a = self.lam_minus * self.mu ** (2 * np.asarray(n, dtype=float))
        return a - a * a + self.c

    @property
    def interior(self) -> int:
        """Largest index with no truncation artifacts, inclusive."""
        return self.M - self.buffer


class BlockOperator:
    """Complex operator on H_+ (+) H_- stored as a dense 2M x 2M matrix."""

    __slots__ = ("mat", "M")

    def __init__(self, mat: np.ndarray):
        mat = np.asarray(mat, dtype=complex)
        n = mat.shape[0]
        if mat.shape != (n, n) or n % 2:
            raise ValueError(f"expected square even-dimensional matrix, got {mat.shape}")
        self.mat = mat
        self.M = n // 2

    @classmethod
    def from_blocks(cls, pp, pm, mp, mm) -> "BlockOperator":
        return cls(np.block([[np.asarray(pp), np.asarray(pm)],
                             [np.asarray(mp), np.asarray(mm)]]))

    @classmethod
    def diag_blocks(cls, plus, minus) -> "BlockOperator":
        plus = np.asarray(plus)
        z = np.zeros_like(plus)
        return cls.from_blocks(plus, z, z, np.asarray(minus))

    @classmethod
    def identity(cls, M: int) -> "BlockOperator":
        return cls(np.eye(2 * M, dtype=complex))

    @classmethod
    def zero(cls, M: int) -> "BlockOperator":
        return cls(np.zeros((2 * M, 2 * M), dtype=complex))

    @property
    def pp(self) -> np.ndarray:
        return self.mat[: self.M, : self.M]

    @property
    def pm(self) -> np.ndarray:
        return self.mat[: self.M, self.M:]

    @property
    def mp(self) -> np.ndarray:
        return self.mat[self.M:, : self.M]

    @property
    def mm(self) -> np.ndarray:
        return self.mat[self.M:, self.M:]

    def __add__(self, other):
        return BlockOperator(self.mat + other.mat)

    def __sub__(self, other):
        return BlockOperator(self.mat - other.mat)

    def __neg__(self):
        return BlockOperator(-self.mat)

    def __matmul__(self, other):
        return BlockOperator(self.mat @ other.mat)

    def __mul__(self, scalar):
        return BlockOperator(self.mat * scalar)

    __rmul__ = __mul__

    def adjoint(self) -> "BlockOperator":
        return BlockOperator(self.mat.conj().T)

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat, 2))

    def off_diagonal_norm(self) -> float:
        return max(np.linalg.norm(self.pm), np.linalg.norm(self.mp))

    def is_block_diagonal(self, tol: float = 0.0) -> bool:
        return self.off_diagonal_norm() <= tol

    def __repr__(self):
        return f"BlockOperator(M={self.M})"


# -- representation builders ------------------------------------------


def build_pi(cfg: TruncationConfig) -> tuple[BlockOperator, BlockOperator]:
    """Images of the two generators: A diagonal, B a weighted down-shift."""
    n = np.arange(cfg.M)
    a_plus = np.diag(cfg.lam_plus * cfg.mu ** (2 * n)).astype(complex)
    a_minus = np.diag(cfg.lam_minus * cfg.mu ** (2 * n)).astype(complex)
    A = BlockOperator.diag_blocks(a_plus, a_minus)

    b_plus = np.zeros((cfg.M, cfg.M), dtype=complex)
    b_minus = np.zeros((cfg.M, cfg.M), dtype=complex)
    for k in range(1, cfg.M):
        b_plus[k - 1, k] = np.sqrt(cfg.c_plus(k))
        b_minus[k - 1, k] = np.sqrt(cfg.c_minus(k))
    B = BlockOperator.diag_blocks(b_plus, b_minus)
    return A, B


def build_dirac(cfg: TruncationConfig):
    """The off-diagonal number operator, plus its eigendecomposition.

    Returns (D, eigvals, eigvecs): column j of eigvecs has eigenvalue
    eigvals[j].  The first M columns are (e_n, e_n)/sqrt(2) with eigenvalue n,
    the last M are (e_n, -e_n)/sqrt(2) with eigenvalue -n.  At n = 0 the
    kernel is two-dimensional in this truncation.
    """
    M = cfg.M
    N = np.diag(np.arange(M)).astype(complex)
    D = BlockOperator.from_blocks(np.zeros((M, M)), N, N, np.zeros((M, M)))
    eigvecs = np.zeros((2 * M, 2 * M), dtype=complex)
    eigvals = np.zeros(2 * M)
    s = 1.0 / np.sqrt(2.0)
    for n in range(M):
        eigvecs[n, n] = s
        eigvecs[M + n, n] = s
        eigvals[n] = n
        eigvecs[n, M + n] = s
        eigvecs[M + n, M + n] = -s
        eigvals[M + n] = -n
    return D, eigvals, eigvecs


def build_tau(cfg: TruncationConfig) -> BlockOperator:
    """Unweighted down-shift on both legs."""
    t = np.zeros((cfg.M, cfg.M), dtype=complex)
    for k in range(1, cfg.M):
        t[k - 1, k] = 1.0
    return BlockOperator.diag_blocks(t, t)


def build_projections(cfg: TruncationConfig, n: int) -> tuple[BlockOperator, BlockOperator]:
    """Rank-one projections onto (e_n, 0) and (0, e_n)."""
    if not (0 <= n < cfg.M):
        raise IndexError(f"projection index {n} out of range [0, {cfg.M})")
    P = BlockOperator.zero(cfg.M)
    Q = BlockOperator.zero(cfg.M)
    P.mat[n, n] = 1.0
    Q.mat[cfg.M + n, cfg.M + n] = 1.0
    return P, Q


# -- verification helpers ---------------------------------------------


def interior_residual(X: BlockOperator, cfg: TruncationConfig) -> float:
    """Largest column norm of X over interior columns, both legs."""
    cols = np.concatenate([np.arange(cfg.interior + 1),
                           cfg.M + np.arange(cfg.interior + 1)])
    sub = X.mat[:, cols]
    return float(np.max(np.linalg.norm(sub, axis=0))) if sub.size else 0.0


def verify_podles_relations(A: BlockOperator, B: BlockOperator,
                            cfg: TruncationConfig) -> dict[str, float]:
    """Residuals of the four defining relations on interior columns."""
    I = BlockOperator.identity(cfg.M)
    mu2 = cfg.mu ** 2
    Bs = B.adjoint()
    return {
        "A* = A": interior_residual(A.adjoint() - A, cfg),
        "AB = mu^-2 BA": interior_residual(A @ B - (1.0 / mu2) * (B @ A), cfg),
        "B*B = A - A^2 + cI": interior_residual(
            Bs @ B - (A - A @ A + cfg.c * I), cfg),
        "BB* = mu^2 A - mu^4 A^2 + cI": interior_residual(
            B @ Bs - (mu2 * A - mu2 ** 2 * (A @ A) + cfg.c * I), cfg),
    }


def hermitian_sqrt(X: np.ndarray) -> np.ndarray:
    """Square root of a PSD Hermitian matrix via eigendecomposition."""
    w, V = np.linalg.eigh(X)
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ V.conj().T


def polar_check(B: BlockOperator, tau: BlockOperator,
                cfg: TruncationConfig) -> float:
    """Residual of the polar decomposition B = tau |B| on the interior."""
    absB = BlockOperator(hermitian_sqrt((B.adjoint() @ B).mat))
    return interior_residual(B - tau @ absB, cfg)


def verify_spectral_projection(B: BlockOperator, P: BlockOperator,
                               eigenvalue: float,
                               tol: float = 1e-10) -> float:
    """Residual of (B*B) P = eigenvalue * P."""
    BB = B.adjoint() @ B
    return float(np.linalg.norm((BB @ P - eigenvalue * P).mat))


# -- compactness diagnostics ------------------------------------------


@dataclass
class CompactnessProfile:
    """k -> operator norm of X restricted to basis columns with index >= k."""

    tail_norms: np.ndarray
    ks: np.ndarray = field(default=None)

    def __post_init__(self):
        self.tail_norms = np.asarray(self.tail_norms, dtype=float)
        if self.ks is None:
            self.ks = np.arange(len(self.tail_norms))

    def decays_below(self, threshold: float) -> int | None:
        """Smallest k with tail norm below threshold, or None."""
        hits = np.nonzero(self.tail_norms < threshold)[0]
        return int(self.ks[hits[0]]) if hits.size else None

    def is_noncompact_witness(self, delta: float) -> bool:
        return bool(np.min(self.tail_norms) >= delta)

    def rows(self) -> list[tuple[int, float]]:
        return [(int(k), float(t)) for k, t in zip(self.ks, self.tail_norms)]


def compactness_profile(X: BlockOperator, cfg: TruncationConfig) -> CompactnessProfile:
    tails = []
    for k in range(cfg.interior + 1):
        cols = np.concatenate([np.arange(k, cfg.M), cfg.M + np.arange(k, cfg.M)])
        sub = X.mat[:, cols]
        tails.append(np.linalg.norm(sub, 2) if sub.size else 0.0)
    return CompactnessProfile(np.array(tails))


# -- commutant computation --------------------------------------------


def _sylvester_stack(pairs: list[tuple[np.ndarray, np.ndarray]]) -> sp.csr_matrix:
    """Stacked operator K with K vec(X) = 0  <=>  X R = L X for all pairs.

    vec is column-stacking (Fortran order): vec(L X) = (I (x) L) vec(X),
    vec(X R) = (R^T (x) I) vec(X).
    """
    blocks = []
    for L, R in pairs:
        n = L.shape[0]
        I_n = sp.identity(R.shape[0], format="csr")
        I_m = sp.identity(n, format="csr")
        K = sp.kron(sp.csr_matrix(R).T, I_m) - sp.kron(I_n, sp.csr_matrix(L))
        blocks.append(K)
    return sp.vstack(blocks, format="csr")


def _nullity_dense_svd(K: sp.csr_matrix, rtol: float) -> int:
    s = np.linalg.svd(K.toarray(), compute_uv=False)
    smax = s[0] if len(s) else 0.0
    if smax <= 1e3 * np.finfo(float).eps:
        return K.shape[1]
    return int(np.sum(s < rtol * smax))


def _ldl_inertia_below(H: np.ndarray, shift: float) -> int:
    """Number of eigenvalues of Hermitian H strictly below `shift`."""
    lu, d, perm = sla.ldl(H - shift * np.eye(H.shape[0]), hermitian=True)
    count = 0
    i, n = 0, d.shape[0]
    while i < n:
        if i + 1 < n and abs(d[i + 1, i]) > 0:
            # 2x2 block: eigenvalues of [[a, conj(b)], [b, c]]
            a, c = d[i, i].real, d[i + 1, i + 1].real
            b = d[i + 1, i]
            disc = np.sqrt(((a - c) / 2) ** 2 + abs(b) ** 2)
            mid = (a + c) / 2
            count += int(mid - disc < 0) + int(mid + disc < 0)
            i += 2
        else:
            count += int(d[i, i].real < 0)
            i += 1
    return count


def _nullity_large(K: sp.csr_matrix, rtol: float) -> int:
    H = (K.conj().T @ K).toarray()
    H = (H + H.conj().T) / 2
    # upper bound on sigma_max(K)^2; only sets the scale of the rank cut,
    # so a modest overestimate is harmless
    absK = abs(K)
    lam_max = float(absK.sum(axis=0).max() * absK.sum(axis=1).max())
    if lam_max <= 1e3 * np.finfo(float).eps:
        return K.shape[1]
    return _ldl_inertia_below(H, rtol * rtol * lam_max)


def _block_nullity(pairs: list[tuple[np.ndarray, np.ndarray]], rtol: float,
                   dense_cutoff: int) -> int:
    K = _sylvester_stack(pairs)
    if K.shape[1] <= dense_cutoff:
        return _nullity_dense_svd(K, rtol)
    return _nullity_large(K, rtol)


def commutant_dimension(generators: list[BlockOperator], rtol: float = 1e-8,
                        dense_cutoff: int = 1100) -> int:
    """Dimension of {X : XT = TX for all generators T}.

    Computed as the numerical nullity of the stacked Sylvester system;
    singular values below rtol * (largest) count as null directions.  When
    every generator is block-diagonal the system decouples exactly into the
    four M x M blocks of X, which keeps the large-M case tractable.  Small
    systems go through a dense SVD; large ones through the Gram matrix of the
    stack with LDL inertia counting (same nullity, much cheaper).
    """
    if not generators:
        raise ValueError("need at least one generator")
    mats = [g.mat for g in generators]
    M = generators[0].M
    if all(g.is_block_diagonal() for g in generators):
        dims = 0
        # X11 T+ = T+ X11 ; X22 T- = T- X22 ; X12 T- = T+ X12 ; X21 T+ = T- X21
        for pairs in (
            [(g.pp, g.pp) for g in generators],
            [(g.mm, g.mm) for g in generators],
            [(g.pp, g.mm) for g in generators],
            [(g.mm, g.pp) for g in generators],
        ):
            dims += _block_nullity(pairs, rtol, dense_cutoff)
        return dims
    return _block_nullity([(m, m) for m in mats], rtol, dense_cutoff)
