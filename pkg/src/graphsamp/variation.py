"""Smoothness (variation) operators built from a spectral response."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Spectrum


@dataclass(frozen=True)
class SpectralResponse:
    """Scalar response applied to Laplacian eigenvalues.

    Only the affine kind ``slope * lam + offset`` is implemented; the
    kind tag exists so other response families can be added without
    changing call sites.
    """

    slope: float = 1.0
    offset: float = 0.0
    kind: str = "affine"

    def __post_init__(self) -> None:
        if self.kind != "affine":
            raise ValueError(f"unsupported spectral response kind {self.kind!r}")

    def __call__(self, eigenvalues) -> np.ndarray:
        return self.slope * np.asarray(eigenvalues, dtype=float) + self.offset


@dataclass(frozen=True, eq=False)
class VariationOperator:
    """Invertible operator measuring signal variation, with SVD factors.

    The operator is symmetric positive definite by construction, so its
    left and right singular bases coincide:
    ``matrix = singular_vectors @ diag(singular_values) @ singular_vectors.T``
    with singular values descending. ``whitener`` is
    ``diag(1 / singular_values) @ singular_vectors.T`` and satisfies
    ``whitener.T @ whitener == inv(matrix.T @ matrix)``.
    """

    matrix: np.ndarray
    singular_values: np.ndarray
    singular_vectors: np.ndarray
    whitener: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def whiten(self, S: np.ndarray) -> np.ndarray:
        """Apply the whitening factor: ``whitener @ S``."""
        S = np.asarray(S, dtype=float)
        if S.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} rows, got shape {S.shape}")
        return self.whitener @ S

    def solve_gram(self, B: np.ndarray) -> np.ndarray:
        """Solve ``(matrix.T @ matrix) X = B`` through the spectral factors."""
        B = np.asarray(B, dtype=float)
        if B.shape[0] != self.dim:
            raise ValueError(f"expected {self.dim} rows, got shape {B.shape}")
        coeffs = self.singular_vectors.T @ B
        inv_sq = self.singular_values**2
        if coeffs.ndim == 1:
            return self.singular_vectors @ (coeffs / inv_sq)
        return self.singular_vectors @ (coeffs / inv_sq[:, None])

    def gram(self) -> np.ndarray:
        """Materialize ``matrix.T @ matrix`` from the spectral factors."""
        return (
            self.singular_vectors * self.singular_values**2
        ) @ self.singular_vectors.T


def build_variation_operator(
    spectrum: Spectrum, response: SpectralResponse
) -> VariationOperator:
    """Assemble the variation operator for a spectrum and response.

    The operator is ``U @ diag(response(eigenvalues)) @ U.T`` with U the
    spectrum's eigenvector matrix. The response must be strictly
    positive on every eigenvalue, which makes the operator symmetric
    positive definite; its SVD is then read off the spectral factors
    directly (re-sorted so singular values are descending) instead of a
    general SVD routine, which also removes sign and ordering
    nondeterminism.

    Raises:
        ValueError: if the response is not strictly positive on the
            spectrum, or the operator is numerically singular.
    """
    values = np.asarray(response(spectrum.eigenvalues), dtype=float)
    if values.ndim != 1 or not np.all(np.isfinite(values)):
        raise ValueError("spectral response must evaluate to finite scalars")
    if np.any(values <= 0.0):
        raise ValueError(
            "spectral response must be positive on the whole spectrum "
            f"(min value {float(values.min()):g})"
        )
    order = np.argsort(-values, kind="stable")
    sing_vals = values[order]
    if sing_vals[-1] <= 1e-12 * sing_vals[0]:
        raise ValueError("variation operator is numerically singular")
    sing_vecs = np.array(spectrum.eigenvectors[:, order])
    matrix = (sing_vecs * sing_vals) @ sing_vecs.T
    whitener = sing_vecs.T / sing_vals[:, None]
    return VariationOperator(
        matrix=matrix,
        singular_values=sing_vals,
        singular_vectors=sing_vecs,
        whitener=whitener,
    )
