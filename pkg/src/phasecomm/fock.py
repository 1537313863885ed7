"""Dense linear algebra on a truncated Fock space.

Everything here works on plain complex numpy arrays of shape
(cutoff+1, cutoff+1); `FockDim` carries the cutoff and the validation
helpers enforce hermiticity / positivity / trace invariants.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .config import DEFAULT_TOL, Tolerances
from .errors import ConvergenceFailure, TailTooHeavy

__all__ = [
    "FockDim",
    "default_cutoff",
    "poisson_tail",
    "lowering_operator",
    "number_operator",
    "coherent_ket",
    "hermitian_eig",
    "trace_norm",
    "matrix_function_sqrt_inv",
    "check_hermitian",
    "check_density",
]


@dataclass(frozen=True)
class FockDim:
    """Truncated Fock space with basis {|0>, ..., |cutoff>}."""

    cutoff: int

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")

    @property
    def size(self) -> int:
        return self.cutoff + 1


def poisson_tail(alpha: float, cutoff: int) -> float:
    """Poisson mass of a coherent state with amplitude alpha beyond the cutoff."""
    # P(X > cutoff) for X ~ Poisson(alpha^2), via the regularized lower gamma
    return float(special.gammainc(cutoff + 1, alpha * alpha))


def default_cutoff(amplitudes, tol: Tolerances = DEFAULT_TOL, floor: int = 30) -> int:
    """Smallest cutoff keeping every amplitude's Poisson tail below tolerance."""
    amplitudes = [abs(float(a)) for a in amplitudes]
    a_max = max(amplitudes) if amplitudes else 0.0
    n = floor
    while poisson_tail(a_max, n) >= tol.tail:
        n += 1
    return n


def lowering_operator(dim: FockDim) -> np.ndarray:
    """Annihilation operator a with <n-1|a|n> = sqrt(n)."""
    a = np.zeros((dim.size, dim.size), dtype=complex)
    n = np.arange(1, dim.size)
    a[n - 1, n] = np.sqrt(n)
    return a


def number_operator(dim: FockDim) -> np.ndarray:
    return np.diag(np.arange(dim.size).astype(complex))


def coherent_ket(alpha: float, dim: FockDim, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Truncated coherent state |alpha> with real amplitude.

    Raises TailTooHeavy when the cutoff discards more Poisson mass than
    the configured tolerance.
    """
    tail = poisson_tail(alpha, dim.cutoff)
    if tail >= tol.tail:
        raise TailTooHeavy(
            f"alpha={alpha} at cutoff {dim.cutoff} discards mass {tail:.3e} "
            f">= {tol.tail:.1e}"
        )
    amps = np.empty(dim.size)
    amps[0] = np.exp(-0.5 * alpha * alpha)
    for n in range(1, dim.size):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    return amps.astype(complex)


def check_hermitian(op: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> None:
    dev = np.max(np.abs(op - op.conj().T))
    if dev > tol.hermiticity:
        raise ValueError(f"operator deviates from hermiticity by {dev:.3e}")


def check_density(rho: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> None:
    """Validate positivity and trace of a (possibly truncation-lossy) state."""
    check_hermitian(rho, tol)
    w = np.linalg.eigvalsh(rho)
    if w.min() < -tol.psd_floor:
        raise ValueError(f"density operator has eigenvalue {w.min():.3e}")
    tr = float(np.real(np.trace(rho)))
    if tr > 1.0 + tol.trace_excess or tr < 1.0 - max(tol.tail, 1e-9):
        raise ValueError(f"density operator trace {tr} outside [1-tail, 1]")


def hermitian_eig(op: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix; eigenvalues ascending.

    The reconstruction ||A - V D V^dagger||_max is checked against a
    relative bound; failure of the underlying solver raises
    ConvergenceFailure.
    """
    check_hermitian(op, tol)
    try:
        w, v = np.linalg.eigh(op)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    scale = max(np.max(np.abs(op)), 1.0)
    recon = v @ np.diag(w.astype(complex)) @ v.conj().T
    err = np.max(np.abs(op - recon))
    if err > tol.eig_reconstruction * scale:
        raise ConvergenceFailure(f"reconstruction error {err:.3e} exceeds bound")
    return w, v


def trace_norm(op: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    w, _ = hermitian_eig(op, tol)
    return float(np.sum(np.abs(w)))


def matrix_function_sqrt_inv(op: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Pseudo-inverse square root of a PSD matrix.

    Eigenvalues below pinv_rel * lambda_max map to zero; everything else
    to lambda^{-1/2}.
    """
    w, v = hermitian_eig(op, tol)
    lam_max = max(float(w.max()), 0.0)
    thr = tol.pinv_rel * lam_max
    f = np.where(w > thr, 1.0 / np.sqrt(np.clip(w, 1e-300, None)), 0.0)
    return v @ np.diag(f.astype(complex)) @ v.conj().T
