"""
Dense complex linear algebra used by every physics module.

Thin wrappers around numpy/scipy that fix conventions (column-stacking
vectorisation, deterministic eigenvalue order) and turn numerical trouble
into explicit exceptions.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

__all__ = [
    "NumericsError", "SingularMatrixError", "ConvergenceError",
    "Spectrum", "kron", "vectorize", "devectorize", "eig_general",
    "null_space", "solve_linear", "expm_action",
]


class NumericsError(Exception):
    """Base class for failures of the linear-algebra layer."""


class SingularMatrixError(NumericsError):
    """Raised when a linear system is singular at working precision."""

    def __init__(self, message, condition_number=np.inf):
        super().__init__(message)
        self.condition_number = condition_number


class ConvergenceError(NumericsError):
    """Raised when an iterative LAPACK driver fails to converge."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues and right eigenvectors (as columns) of a square matrix."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _square(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def kron(a, b):
    """Kronecker product ``a (x) b``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def vectorize(m):
    """Stack the columns of a square matrix into one vector.

    With this convention ``vectorize(A @ X @ B) == kron(B.T, A) @ vectorize(X)``.
    """
    m = _square(m)
    return m.reshape(-1, order="F")


def devectorize(v):
    """Inverse of :func:`vectorize`."""
    v = np.asarray(v, dtype=complex).ravel()
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ValueError(f"vector of length {v.size} is not a vectorised square matrix")
    return v.reshape(d, d, order="F")


def _sort_order(w, scale):
    # group real parts that agree to ~1e-9 of the matrix scale so that
    # the imaginary-part tie break is not defeated by rounding noise
    key_re = np.round(w.real / scale, 9)
    return np.lexsort((w.imag, -key_re))


def eig_general(a):
    """Full eigendecomposition of a general complex matrix.

    Eigenvalues are sorted by descending real part, ties broken by
    ascending imaginary part.

    Raises
    ------
    ConvergenceError
        If LAPACK does not converge.
    """
    a = _square(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    try:
        w, v = sla.eig(a)
    except sla.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver did not converge: {exc}") from exc
    scale = max(np.linalg.norm(a, 2), 1.0)
    order = _sort_order(w, scale)
    return Spectrum(w[order], v[:, order])


def null_space(a, tol=1e-10):
    """Orthonormal basis of the numerical kernel of ``a``.

    Singular values below ``tol * sigma_max`` count as zero.

    Returns
    -------
    list of ndarray
        Kernel vectors, possibly empty.
    """
    a = _square(a)
    if a.size == 0:
        return []
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return [row for row in np.eye(a.shape[0], dtype=complex)]
    rank = int(np.sum(s > tol * smax))
    return [vh[k].conj() for k in range(rank, a.shape[0])]


def solve_linear(a, b, max_condition=1e12):
    """Solve ``a x = b`` for a square, nonsingular ``a``.

    Raises
    ------
    SingularMatrixError
        If the 2-norm condition number exceeds ``max_condition`` or the
        residual check fails. The estimate is attached to the exception.
    """
    a = _square(a)
    b = np.asarray(b, dtype=complex)
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > max_condition:
        raise SingularMatrixError(
            f"matrix is singular to working precision (condition number {cond:.3g})", cond)
    x = sla.solve(a, b)
    bnorm = np.linalg.norm(b)
    resid = np.linalg.norm(a @ x - b)
    if bnorm > 0 and resid > 1e-10 * bnorm:
        raise SingularMatrixError(
            f"residual {resid:.3g} too large (condition number {cond:.3g})", cond)
    return x


def expm_action(a, v, t):
    """Return ``exp(a t) v`` using scaling-and-squaring.

    Raises
    ------
    NumericsError
        If the result overflows.
    """
    a = _square(a)
    v = np.asarray(v, dtype=complex)
    if t == 0:
        return v.copy()
    with np.errstate(over="ignore", invalid="ignore"):
        out = sla.expm(a * t) @ v
    if not np.all(np.isfinite(out)):
        raise NumericsError(f"matrix exponential overflowed at t={t}")
    return out
