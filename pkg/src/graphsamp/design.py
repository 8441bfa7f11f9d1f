"""Sampling matrix design by a proximal linearized difference-of-convex loop.

The target is a dense sampling matrix S inside a Frobenius ball whose
whitened image ``whitener @ S`` has full column rank, which is exactly
what makes the downstream least-squares reconstruction well posed. Rank
is relaxed to the nuclear norm, and the resulting concave maximization
over the ball is solved by iterating a nuclear-norm subgradient step
followed by the metric projection back onto the ball. The nuclear norm
of the whitened iterate never decreases along the loop, iterates stay in
the ball, and the step sizes vanish, so the iteration settles at a
critical point of the relaxation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

T_MODES = ("zero", "identity")

_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class DesignConfig:
    """Knobs for the sampling matrix design loop.

    ``epsilon`` bounds the Frobenius norm of the designed matrix;
    ``gamma`` scales the subgradient step; ``t_mode`` picks the
    trailing-block term of the nuclear-norm subgradient ('zero' drops
    it, 'identity' keeps the full singular basis); ``stop_tol`` is the
    relative step size below which the loop stops; ``rank_tol`` is the
    relative singular-value cutoff used for the subgradient partition
    and rank reporting; ``seed`` drives the Gaussian initializer.
    """

    epsilon: float
    gamma: float = 1.0
    t_mode: str = "zero"
    stop_tol: float = 1e-5
    max_iter: int = 10000
    rank_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.t_mode not in T_MODES:
            raise ValueError(f"t_mode must be one of {T_MODES}, got {self.t_mode!r}")
        if not 0.0 < self.stop_tol < 1.0:
            raise ValueError(f"stop_tol must lie in (0, 1), got {self.stop_tol}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")
        if not 0.0 < self.rank_tol <= 1e-4:
            raise ValueError(f"rank_tol must lie in (0, 1e-4], got {self.rank_tol}")
        if not 0 <= int(self.seed) <= _UINT64_MASK:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class SamplingDesign:
    """Designed sampling matrix plus the per-iteration trace.

    Trace entry t describes iterate t (before its update): the nuclear
    norm of the whitened iterate, the Frobenius norm of the iterate, and
    the norm of the step taken from it.
    """

    matrix: np.ndarray
    iterations: int
    converged: bool
    nuclear_norms: np.ndarray
    step_norms: np.ndarray
    frobenius_norms: np.ndarray


def project_frobenius_ball(X: np.ndarray, radius: float) -> np.ndarray:
    """Metric projection onto the Frobenius ball of the given radius.

    Returns X unchanged inside the ball, otherwise X scaled by
    ``radius / ||X||_F``.
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    X = np.asarray(X, dtype=float)
    norm = float(np.linalg.norm(X))
    if norm <= radius:
        return X
    return X * (radius / norm)


def nuclear_norm(M: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)))


def numerical_rank(M: np.ndarray, rank_tol: float = 1e-10) -> int:
    """Count singular values above ``rank_tol`` times the largest."""
    if not rank_tol > 0:
        raise ValueError(f"rank_tol must be positive, got {rank_tol}")
    s = np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > rank_tol * s[0]))


def nuclear_subgradient(
    M: np.ndarray, t_mode: str = "zero", rank_tol: float = 1e-10
) -> np.ndarray:
    """An element of the nuclear-norm subdifferential at M.

    With the thin SVD ``M = U diag(s) V.T`` partitioned at the numerical
    rank r (relative cutoff ``rank_tol``), mode 'zero' returns the
    leading block ``U_r @ V_r.T`` and mode 'identity' adds the trailing
    block, i.e. ``U @ V.T``. All singular values of the output are at
    most 1.

    Raises:
        ValueError: for the zero matrix, whose subdifferential is the
            whole unit spectral-norm ball with no canonical element;
            callers should re-randomize their iterate instead.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {M.shape}")
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    return _subgradient_from_svd(U, s, Vt, t_mode, rank_tol)


def _subgradient_from_svd(U, s, Vt, t_mode, rank_tol):
    if t_mode not in T_MODES:
        raise ValueError(f"t_mode must be one of {T_MODES}, got {t_mode!r}")
    if s.size == 0 or s[0] <= 0.0:
        raise ValueError(
            "the zero matrix has no canonical nuclear-norm subgradient; "
            "re-randomize the iterate"
        )
    if t_mode == "identity":
        return U @ Vt
    rank = int(np.count_nonzero(s > rank_tol * s[0]))
    return U[:, :rank] @ Vt[:rank, :]


def design_sampling_operator(
    whitener: np.ndarray, num_samples: int, config: DesignConfig
) -> SamplingDesign:
    """Design a dense sampling matrix maximizing the whitened nuclear norm.

    Starts from a standard-Gaussian matrix (seeded by ``config.seed``)
    projected into the Frobenius ball of radius ``config.epsilon``, then
    repeats: take a nuclear-norm subgradient G of ``whitener @ S``, move
    along ``gamma * whitener.T @ G``, and project back onto the ball.
    Stops when ``||S_next - S||_F <= stop_tol * ||S||_F`` or after
    ``max_iter`` iterations (reported via ``converged``).

    Raises:
        ValueError: on a non-square whitener, out-of-range sample count,
            or a zero whitened iterate (propagated from the subgradient).
    """
    A = np.asarray(whitener, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"whitener must be square, got shape {A.shape}")
    n = A.shape[0]
    if not 1 <= num_samples < n:
        raise ValueError(
            f"num_samples must satisfy 1 <= K < {n}, got {num_samples}"
        )
    rng = np.random.default_rng(int(config.seed))
    S = project_frobenius_ball(
        rng.standard_normal((n, num_samples)), config.epsilon
    )
    nuc, steps, frobs = [], [], []
    converged = False
    iterations = 0
    for _ in range(int(config.max_iter)):
        U, s, Vt = np.linalg.svd(A @ S, full_matrices=False)
        G = _subgradient_from_svd(U, s, Vt, config.t_mode, config.rank_tol)
        S_next = project_frobenius_ball(
            S + config.gamma * (A.T @ G), config.epsilon
        )
        step = float(np.linalg.norm(S_next - S))
        current = float(np.linalg.norm(S))
        nuc.append(float(np.sum(s)))
        steps.append(step)
        frobs.append(current)
        S = S_next
        iterations += 1
        if step <= config.stop_tol * current:
            converged = True
            break
    return SamplingDesign(
        matrix=S,
        iterations=iterations,
        converged=converged,
        nuclear_norms=np.asarray(nuc),
        step_norms=np.asarray(steps),
        frobenius_norms=np.asarray(frobs),
    )
