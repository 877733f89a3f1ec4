"""Dense Hermitian linear algebra helpers used across the package.

All matrices are numpy complex arrays. Routines validate shape/Hermiticity
where cheap and raise ValueError on malformed input.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-9
EIG_CLAMP = 1e-9


class EigenSystem(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    values: real eigenvalues in ascending order.
    vectors: orthonormal eigenvectors as columns, vectors[:, k] <-> values[k].
    """

    values: np.ndarray
    vectors: np.ndarray


def assert_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate a square Hermitian matrix and return it as a complex array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.conj().T, rtol=0.0, atol=tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    return a


def assert_density_matrix(rho: np.ndarray, eig_tol: float = PSD_TOL,
                          trace_tol: float = 1e-9) -> np.ndarray:
    """Validate a density matrix: Hermitian, eigenvalues >= -eig_tol, unit trace."""
    rho = assert_hermitian(rho)
    if abs(rho.trace().real - 1.0) > trace_tol or abs(rho.trace().imag) > trace_tol:
        raise ValueError(f"trace {rho.trace()} is not 1 within {trace_tol}")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -eig_tol:
        raise ValueError(f"matrix has negative eigenvalue {w[0]}")
    return rho


def hermitianize(a: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian part, (A + A^dag) / 2."""
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def eig_hermitian(h: np.ndarray) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and orthonormal eigenvector columns,
    so h = V @ diag(w) @ V^dag up to floating point error.
    """
    h = assert_hermitian(h, tol=1e-10)
    w, v = np.linalg.eigh(h)
    return EigenSystem(values=w, vectors=v)


def is_psd(h: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True when the smallest eigenvalue is >= -tol."""
    h = assert_hermitian(h, tol=1e-10)
    return bool(np.linalg.eigvalsh(h)[0] >= -tol)


def clamp_spectrum(w: np.ndarray, clamp: float = EIG_CLAMP) -> np.ndarray:
    """Zero out small negative eigenvalues in [-clamp, 0); larger ones are an error."""
    w = np.asarray(w, dtype=float)
    if w.min(initial=0.0) < -clamp:
        raise ValueError(f"eigenvalue {w.min()} below the -{clamp} clamp window")
    return np.where(w < 0.0, 0.0, w)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -sum(p ln p) in nats, with 0 ln 0 = 0.

    Eigenvalues in [-1e-9, 0) are clamped to zero; anything more negative
    raises, since the input is then not a state.
    """
    rho = assert_hermitian(rho, tol=1e-10)
    p = clamp_spectrum(np.linalg.eigvalsh(rho))
    nz = p[p > 0.0]
    return float(max(0.0, -np.sum(nz * np.log(nz))))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the first factor is the slow (major) subsystem index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one tensor factor of a bipartite matrix.

    dims = (d1, d2) with subsystem 1 the slow (major) Kronecker index;
    keep selects the subsystem that survives (1 or 2).
    """
    d1, d2 = dims
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"shape {rho.shape} does not match dims {dims}")
    r = rho.reshape(d1, d2, d1, d2)
    if keep == 1:
        return np.einsum("ijkj->ik", r)
    if keep == 2:
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 1 or 2")


def hs_norm_sq(h: np.ndarray) -> float:
    """Squared Hilbert-Schmidt norm, sum |h_ij|^2 (= sum of squared eigenvalues)."""
    h = np.asarray(h, dtype=complex)
    return float(np.sum(np.abs(h) ** 2))


def op_norm(h: np.ndarray) -> float:
    """Operator (spectral) norm of a Hermitian matrix: max |eigenvalue|."""
    h = assert_hermitian(h, tol=1e-10)
    w = np.linalg.eigvalsh(h)
    return float(max(abs(w[0]), abs(w[-1])))


def matrix_to_json(h: np.ndarray) -> dict:
    """Serialize a matrix to {"dim": d, "re": [[...]], "im": [[...]]}."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    return {
        "dim": int(h.shape[0]),
        "re": h.real.tolist(),
        "im": h.imag.tolist(),
    }


def matrix_from_json(obj: dict, require_hermitian: bool = True) -> np.ndarray:
    """Parse the JSON matrix format, validating shape (and Hermiticity by default)."""
    try:
        d = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if re.shape != (d, d) or im.shape != (d, d):
        raise ValueError(f"re/im shapes {re.shape}/{im.shape} do not match dim {d}")
    h = re + 1j * im
    if require_hermitian:
        h = assert_hermitian(h)
    return h
