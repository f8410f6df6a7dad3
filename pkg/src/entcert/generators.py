"""Traceless SU(d) generator families and two-site collective operators.

The generator set is the generalized Gell-Mann family, ordered as all
symmetric pair generators (lexicographic), then all antisymmetric pair
generators, then the diagonal ones, so expectation-value vectors are
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .linalg import as_matrix, kron

_TRACELESS_TOL = 1e-12
_ORTHO_TOL = 1e-10


@dataclass
class GeneratorSet:
    """d**2 - 1 Hermitian traceless generators with Tr(g_k g_l) = 2 delta_kl."""

    d: int
    gens: np.ndarray  # shape (d**2 - 1, d, d)

    def __post_init__(self):
        self.gens = np.asarray(self.gens, dtype=np.complex128)
        n = self.d * self.d - 1
        if self.gens.shape != (n, self.d, self.d):
            raise InvariantViolation(
                f"shape: expected {n} generators of size {self.d}x{self.d}, got {self.gens.shape}"
            )
        traces = np.abs(np.trace(self.gens, axis1=1, axis2=2))
        if traces.max() > _TRACELESS_TOL:
            raise InvariantViolation(
                f"tracelessness: max |Tr g_k| = {traces.max():.3e} exceeds {_TRACELESS_TOL:.1e}"
            )
        flat = self.gens.reshape(n, -1)
        gram = flat.conj() @ flat.T  # Tr(g_k^dag g_l); generators are Hermitian
        defect = np.abs(gram - 2 * np.eye(n)).max()
        if defect > _ORTHO_TOL:
            raise InvariantViolation(
                f"orthogonality: max |Tr(g_k g_l) - 2 delta_kl| = {defect:.3e} exceeds {_ORTHO_TOL:.1e}"
            )


@dataclass
class CollectiveSet:
    """Two-site collective operators G_k = g_k (x) I + I (x) g_k."""

    d: int
    ops: np.ndarray = field(repr=False)  # shape (d**2 - 1, d**2, d**2)


def gellmann(d: int) -> GeneratorSet:
    """Generalized Gell-Mann generators of SU(d).

    d(d-1)/2 symmetric, d(d-1)/2 antisymmetric and d-1 diagonal matrices;
    for d = 2 these are the Pauli matrices.
    """
    if d < 2:
        raise InvariantViolation(f"dimension: d must be >= 2, got {d}")
    mats = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=np.complex128)
            m[j, k] = m[k, j] = 1.0
            mats.append(m)
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=np.complex128)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=np.complex128)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -l
        mats.append(m * np.sqrt(2.0 / (l * (l + 1))))
    return GeneratorSet(d=d, gens=np.stack(mats))


def collective(gens: GeneratorSet) -> CollectiveSet:
    d = gens.d
    eye = np.eye(d)
    ops = np.stack([kron(g, eye) + kron(eye, g) for g in gens.gens])
    return CollectiveSet(d=d, ops=ops)


def swap_operator(d: int) -> np.ndarray:
    """Permutation matrix exchanging the two tensor factors: F |i,j> = |j,i>."""
    f = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1.0
    return f.astype(np.complex128)


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the four generator identities, evaluated on one state."""

    orthogonality: float   # max |Tr(g_k g_l) - 2 delta_kl|
    sum_of_squares: float  # || sum_k g_k^2 - 2 (d^2-1)/d I ||_max
    purity: float          # | sum_k <g_k>^2 - 2 (Tr rho^2 - 1/d) |
    swap: float            # || sum_k g_k (x) g_k - 2 (F - I/d) ||_max

    @property
    def max_residual(self) -> float:
        return max(self.orthogonality, self.sum_of_squares, self.purity, self.swap)


def verify_generator_identities(gens: GeneratorSet, rho) -> IdentityReport:
    """Evaluate both sides of the four SU(d) generator identities on ``rho``.

    ``rho`` is a single-system d x d density matrix; the swap identity is
    checked against an explicitly built permutation matrix so it is a
    genuine two-sided test.
    """
    d = gens.d
    rho = as_matrix(rho)
    if rho.shape != (d, d):
        raise DimensionMismatch(f"dims: state is {rho.shape}, generators act on ({d}, {d})")
    n = d * d - 1
    flat = gens.gens.reshape(n, -1)
    gram = flat.conj() @ flat.T
    r_orth = float(np.abs(gram - 2 * np.eye(n)).max())

    sq = np.einsum("kab,kbc->ac", gens.gens, gens.gens)
    r_sq = float(np.abs(sq - 2 * (d * d - 1) / d * np.eye(d)).max())

    expvals = np.einsum("kab,ba->k", gens.gens, rho).real
    purity = np.trace(rho @ rho).real
    r_pur = float(abs(np.sum(expvals**2) - 2 * (purity - 1 / d)))

    tensor_sum = sum(kron(g, g) for g in gens.gens)
    target = 2 * (swap_operator(d) - np.eye(d * d) / d)
    r_swap = float(np.abs(tensor_sum - target).max())

    return IdentityReport(
        orthogonality=r_orth, sum_of_squares=r_sq, purity=r_pur, swap=r_swap
    )
