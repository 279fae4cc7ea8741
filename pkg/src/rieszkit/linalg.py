"""Structured linear algebra used by the Riesz schemes.

Dense LU and banded solves are delegated to LAPACK through SciPy; this module
adds the structure-aware wrappers, the positive-definiteness certificate and
Gershgorin enclosures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

__all__ = [
    "SYM_TOL",
    "PIVOT_TOL",
    "SingularMatrixError",
    "AsymmetryError",
    "SymToeplitzMatrix",
    "BandedMatrix",
    "DenseFactorization",
    "EigenInterval",
    "toeplitz_matvec",
    "lu_factor",
    "lu_solve",
    "banded_solve",
    "cholesky_pd_check",
    "gershgorin_interval",
]

# Relative tolerances, scaled by max|entry|.
SYM_TOL = 1e-12
PIVOT_TOL = 1e-14


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class AsymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class SymToeplitzMatrix:
    """Symmetric Toeplitz matrix given by its first row ``t_0..t_{n-1}``."""

    first_row: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.first_row)

    def to_dense(self) -> np.ndarray:
        return sla.toeplitz(self.first_row)


@dataclass(frozen=True)
class BandedMatrix:
    """Square banded matrix.

    ``bands`` has shape ``(2*beta + 1, n)`` in LAPACK's ``ab`` layout: row
    ``beta + i - j`` holds entry ``(i, j)``.
    """

    bands: np.ndarray
    beta: int

    @property
    def dimension(self) -> int:
        return self.bands.shape[1]

    @classmethod
    def from_diagonals(cls, diagonals: dict[int, float | np.ndarray], n: int) -> "BandedMatrix":
        """Build from ``{offset: value}``; scalars fill the whole diagonal."""
        beta = max((abs(k) for k in diagonals), default=0)
        ab = np.zeros((2 * beta + 1, n))
        for k, v in diagonals.items():
            length = n - abs(k)
            vals = np.broadcast_to(np.asarray(v, float), (length,))
            if k >= 0:
                ab[beta - k, k:] = vals
            else:
                ab[beta - k, : n + k] = vals
        return cls(bands=ab, beta=beta)

    def to_dense(self) -> np.ndarray:
        n, beta = self.dimension, self.beta
        out = np.zeros((n, n))
        for k in range(-beta, beta + 1):
            row = self.bands[beta - k]
            if k >= 0:
                out += np.diag(row[k:], k)
            else:
                out += np.diag(row[: n + k], k)
        return out

    def matvec(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, float)
        n, beta = self.dimension, self.beta
        out = np.zeros(n)
        for k in range(-beta, beta + 1):
            row = self.bands[beta - k]
            if k >= 0:
                out[: n - k] += row[k:] * v[k:]
            else:
                out[-k:] += row[: n + k] * v[: n + k]
        return out


@dataclass(frozen=True)
class DenseFactorization:
    lu: np.ndarray
    piv: np.ndarray

    @property
    def dimension(self) -> int:
        return self.lu.shape[0]


@dataclass(frozen=True)
class EigenInterval:
    lower: float
    upper: float

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def toeplitz_matvec(t: SymToeplitzMatrix, v: np.ndarray, method: str = "direct") -> np.ndarray:
    """Multiply a symmetric Toeplitz matrix by a vector.

    Parameters
    ----------
    t : SymToeplitzMatrix
    v : ndarray
    method : {"direct", "fft"}
        ``"direct"`` forms the dense product and is the reference path.
        ``"fft"`` uses a circulant embedding.
    """
    v = np.asarray(v, float)
    if v.shape != (t.dimension,):
        raise ValueError(f"dimension mismatch: matrix {t.dimension}, vector {v.shape}")
    if method == "direct":
        return t.to_dense() @ v
    if method == "fft":
        return sla.matmul_toeplitz(t.first_row, v, check_finite=False)
    raise ValueError(f"unknown method {method!r}")


def lu_factor(a: np.ndarray) -> DenseFactorization:
    """LU-factor ``a`` with partial pivoting.

    Raises
    ------
    SingularMatrixError
        If a pivot falls below ``PIVOT_TOL * max|a|``.
    """
    a = np.asarray(a, float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("lu_factor needs a square matrix")
    with warnings.catch_warnings():
        # singularity is reported below with our own tolerance
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=True)
    scale = np.max(np.abs(a)) if a.size else 0.0
    if a.size and np.min(np.abs(np.diag(lu))) <= PIVOT_TOL * scale:
        raise SingularMatrixError("matrix is singular to working precision")
    return DenseFactorization(lu=lu, piv=piv)


def lu_solve(F: DenseFactorization, rhs: np.ndarray) -> np.ndarray:
    rhs = np.asarray(rhs, float)
    if rhs.shape[0] != F.dimension:
        raise ValueError("dimension mismatch")
    return sla.lu_solve((F.lu, F.piv), rhs, check_finite=False)


def banded_solve(B: BandedMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve ``B x = rhs`` through LAPACK's banded LU.

    Falls back to dense LU when the banded factorization reports a
    singular pivot.
    """
    rhs = np.asarray(rhs, float)
    if rhs.shape[0] != B.dimension:
        raise ValueError("dimension mismatch")
    if B.beta == 0:
        diag = B.bands[0]
        if np.min(np.abs(diag)) <= PIVOT_TOL * np.max(np.abs(diag)):
            raise SingularMatrixError("zero diagonal entry")
        return rhs / diag if rhs.ndim == 1 else rhs / diag[:, None]
    try:
        return sla.solve_banded((B.beta, B.beta), B.bands, rhs, check_finite=False)
    except np.linalg.LinAlgError:
        return lu_solve(lu_factor(B.to_dense()), rhs)


def _check_symmetric(a: np.ndarray) -> float:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if np.max(np.abs(a - a.T), initial=0.0) > SYM_TOL * scale:
        raise AsymmetryError("matrix is not symmetric within tolerance")
    return scale


def cholesky_pd_check(a: np.ndarray) -> bool:
    """Certify positive definiteness by attempting a Cholesky factorization.

    Raises
    ------
    AsymmetryError
        If ``a`` is not symmetric to ``SYM_TOL`` relative.
    """
    a = np.asarray(a, float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("cholesky_pd_check needs a square matrix")
    _check_symmetric(a)
    try:
        np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        return False
    return True


def gershgorin_interval(a: np.ndarray | SymToeplitzMatrix) -> EigenInterval:
    """Real interval containing every Gershgorin disc of a symmetric matrix."""
    if isinstance(a, SymToeplitzMatrix):
        a = a.to_dense()
    a = np.asarray(a, float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("gershgorin_interval needs a square matrix")
    d = np.diag(a)
    r = np.sum(np.abs(a), axis=1) - np.abs(d)
    return EigenInterval(lower=float(np.min(d - r)), upper=float(np.max(d + r)))
