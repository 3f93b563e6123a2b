"""Two-component PCA over word-vector families via a cyclic Jacobi eigensolver.

The Jacobi method is used instead of an iterative/randomized solver because
the covariance matrices here are tiny (N x N, N rarely above a few dozen)
and the rotations are fully deterministic, which keeps projections
reproducible across runs. Eigenvector signs are fixed so that each vector's
largest-magnitude component is positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

JACOBI_TOL = 1e-12


def jacobi_eigh(matrix: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps over the upper triangle, zeroing each off-diagonal element, until
    the off-diagonal Frobenius norm drops below ``tol``. Returns eigenvalues
    in descending order and eigenvectors as columns.
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T):
        raise ValueError("matrix must be symmetric")
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2)
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= tol / max(n, 1):
                    continue
                phi = 0.5 * np.arctan2(2.0 * a[p, q], a[q, q] - a[p, p])
                c, s = np.cos(phi), np.sin(phi)
                rot = np.eye(n)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    eigvals = np.diag(a).copy()
    order = np.argsort(-eigvals)
    return eigvals[order], v[:, order]


@dataclass(frozen=True)
class PcaProjection:
    input_coords: np.ndarray     # (V, 2)
    output_coords: np.ndarray    # (rows(W'), 2)
    explained_variance: tuple[float, float]


def project_families(
    input_vectors: np.ndarray, output_vectors: np.ndarray
) -> PcaProjection:
    """Project both vector families into one shared 2D principal basis.

    The covariance is computed over the stacked (centered) union of the two
    families so input and output vectors land in a single comparable plot.
    """
    stacked = np.vstack([input_vectors, output_vectors])
    centered = stacked - stacked.mean(axis=0)
    n = centered.shape[1]
    cov = (centered.T @ centered) / max(len(centered) - 1, 1)
    eigvals, eigvecs = jacobi_eigh(cov)
    eigvals = np.clip(eigvals, 0.0, None)

    basis = np.zeros((n, 2))
    top = min(2, n)
    basis[:, :top] = eigvecs[:, :top]
    # Sign convention: largest-magnitude component of each axis is positive.
    for k in range(top):
        pivot = np.argmax(np.abs(basis[:, k]))
        if basis[pivot, k] < 0:
            basis[:, k] = -basis[:, k]

    coords = (centered @ basis)
    total = float(eigvals.sum())
    if total > 0:
        ratios = (
            float(eigvals[0] / total),
            float(eigvals[1] / total) if n > 1 else 0.0,
        )
    else:
        ratios = (0.0, 0.0)
    n_in = len(input_vectors)
    return PcaProjection(
        input_coords=coords[:n_in],
        output_coords=coords[n_in:],
        explained_variance=ratios,
    )
