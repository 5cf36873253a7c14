"""Entropies, Hermitian spectra and majorization on plain numpy arrays.

All entropies are in nats.  Conversion to bits happens only at the output
layer (see the CLI), never here.
"""

import numpy as np

from .errors import InvalidDistributionError, InvalidStateError

# Slack conventions used throughout the package.
CLAMP_TOL = 1e-12      # negative probabilities up to this size are clamped to 0
VALIDATION_TOL = 1e-9  # sum / Hermiticity / trace checks
SPECTRAL_TOL = 1e-8    # eigendecomposition reconstruction error


def as_distribution(p, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a probability vector and return a cleaned copy.

    Entries in [-1e-12, 0) are clamped to 0; anything more negative is an
    error, as is a total differing from 1 by more than `tol`.
    """
    arr = np.array(p, dtype=float).ravel()
    if arr.size == 0:
        raise InvalidDistributionError("empty probability vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistributionError("probability vector has non-finite entries")
    low = arr.min()
    if low < -CLAMP_TOL:
        raise InvalidDistributionError(f"negative probability {low:.3e}")
    arr[arr < 0.0] = 0.0
    total = arr.sum()
    if abs(total - 1.0) > tol:
        raise InvalidDistributionError(f"probabilities sum to {total!r}, expected 1")
    return arr


def _entropy(p: np.ndarray) -> float:
    # 0 * ln 0 = 0 by explicit branching on the support
    support = p > 0.0
    vals = p[support]
    return float(-np.sum(vals * np.log(vals)))


def shannon_entropy(p) -> float:
    """Shannon entropy in nats of a probability vector."""
    return _entropy(as_distribution(p))


def check_density_matrix(rho, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, trace 1, spectrum >= -tol."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidStateError("matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol or abs(np.trace(rho).imag) > tol:
        raise InvalidStateError(f"trace is {np.trace(rho)}, expected 1")
    evs = np.linalg.eigvalsh(rho)
    if evs.min() < -tol:
        raise InvalidStateError(f"negative eigenvalue {evs.min():.3e}")
    return rho


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in nats of a density matrix (validates the input)."""
    rho = check_density_matrix(rho)
    evs = np.linalg.eigvalsh(rho)
    evs = np.clip(evs, 0.0, None)
    evs /= evs.sum()
    return _entropy(evs)


def hermitian_eigenvalues(m, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted non-increasingly.

    Also enforces the reconstruction contract: V diag(w) V^dag must match the
    input to within SPECTRAL_TOL.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")
    w, v = np.linalg.eigh(m)
    resid = np.max(np.abs((v * w) @ v.conj().T - m))
    if resid > SPECTRAL_TOL:
        raise ValueError(f"eigendecomposition reconstruction error {resid:.3e}")
    return w[::-1].copy()


def majorizes(a, b, tol: float = VALIDATION_TOL) -> bool:
    """True iff distribution `a` majorizes distribution `b` (within tol).

    Both are sorted non-increasingly; every partial sum of `a` must be at
    least the corresponding partial sum of `b`, up to slack.
    """
    a = as_distribution(a)
    b = as_distribution(b)
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    ca = np.cumsum(np.sort(a)[::-1])
    cb = np.cumsum(np.sort(b)[::-1])
    return bool(np.all(ca >= cb - tol))
