"""Least-squares reconstruction of smooth signals from generalized samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .variation import VariationOperator


@dataclass(frozen=True, eq=False)
class ReconstructionPipeline:
    """Precomputed operators mapping samples back to a full signal.

    ``prior_matrix`` solves the smoothness-weighted normal system for
    the sampling matrix; ``synthesis_matrix`` equals it in the
    unconstrained case. ``correction`` is the inverse of
    ``sampling_matrix.T @ prior_matrix``, or its Moore-Penrose
    pseudo-inverse when that product is numerically singular (flagged by
    ``used_pseudo_inverse``).
    """

    sampling_matrix: np.ndarray
    prior_matrix: np.ndarray
    synthesis_matrix: np.ndarray
    correction: np.ndarray
    used_pseudo_inverse: bool

    @property
    def num_samples(self) -> int:
        return self.sampling_matrix.shape[1]

    def reconstruct(self, samples: np.ndarray) -> np.ndarray:
        """Synthesize a full signal from a length-K sample vector."""
        c = np.asarray(samples, dtype=float).ravel()
        if c.shape != (self.num_samples,):
            raise ValueError(
                f"expected {self.num_samples} samples, got shape {c.shape}"
            )
        return self.synthesis_matrix @ (self.correction @ c)


def build_pipeline(
    vo: VariationOperator, S: np.ndarray, inv_tol: float = 1e-10
) -> ReconstructionPipeline:
    """Build the least-squares reconstruction pipeline for a sampling matrix.

    The prior matrix Q solves ``(F.T @ F) Q = S`` through the variation
    operator's spectral factors (no explicit inverse). The correction is
    ``inv(S.T @ Q)`` when the smallest singular value of that product
    stays above ``inv_tol`` relative to the largest, and the
    pseudo-inverse with the same cutoff otherwise.
    """
    if not inv_tol > 0:
        raise ValueError(f"inv_tol must be positive, got {inv_tol}")
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != vo.dim:
        raise ValueError(
            f"sampling matrix must have {vo.dim} rows, got shape {S.shape}"
        )
    prior = vo.solve_gram(S)
    product = S.T @ prior
    sv = np.linalg.svd(product, compute_uv=False)
    if sv[0] > 0.0 and sv[-1] > inv_tol * sv[0]:
        correction = np.linalg.solve(product, np.eye(product.shape[0]))
        used_pinv = False
    else:
        correction = np.linalg.pinv(product, rcond=inv_tol)
        used_pinv = True
    return ReconstructionPipeline(
        sampling_matrix=S,
        prior_matrix=prior,
        synthesis_matrix=prior,
        correction=correction,
        used_pseudo_inverse=used_pinv,
    )


def sample(S: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Apply the sampling map: ``S.T @ x``."""
    S = np.asarray(S, dtype=float)
    x = np.asarray(x, dtype=float).ravel()
    if S.ndim != 2 or S.shape[0] != x.shape[0]:
        raise ValueError(
            f"sampling matrix shape {S.shape} does not match signal length {x.shape[0]}"
        )
    return S.T @ x


def kkt_reconstruct(
    vo: VariationOperator, S: np.ndarray, c: np.ndarray
) -> np.ndarray:
    """Reconstruct through the constrained least-squares KKT system.

    Solves ``argmin ||F x||^2 subject to S.T x = c`` by assembling the
    saddle-point system ``[[F.T F, S], [S.T, 0]]`` and solving it
    directly. Slower than the pipeline and sharing no machinery with it,
    so the two serve as independent cross-checks.

    Raises:
        ValueError: if the KKT system is singular (degenerate sampling
            matrix); the pipeline's pseudo-inverse path is the
            production fallback for that case.
    """
    S = np.asarray(S, dtype=float)
    c = np.asarray(c, dtype=float).ravel()
    if S.ndim != 2 or S.shape[0] != vo.dim:
        raise ValueError(
            f"sampling matrix must have {vo.dim} rows, got shape {S.shape}"
        )
    n, k = S.shape
    if c.shape != (k,):
        raise ValueError(f"expected {k} samples, got shape {c.shape}")
    kkt = np.zeros((n + k, n + k))
    kkt[:n, :n] = vo.gram()
    kkt[:n, n:] = S
    kkt[n:, :n] = S.T
    rhs = np.zeros(n + k)
    rhs[n:] = c
    try:
        solution = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError(
            "singular KKT system: sampling matrix is degenerate"
        ) from exc
    return solution[:n]
