"""Closed-form divergence evaluations.

Discrete Renyi divergences of any order (including the 0, 1 and infinity
limits), Gaussian Renyi/KL in closed form, and exponential-family KL as a
Bregman divergence of the log-partition function.

Conventions: 0^a = 0 for a > 0 and 0*log(0/q) = 0, so zero-mass entries
never contribute; a support violation is detected explicitly and returns
+inf, which is a first-class value here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .distributions import (
    Alpha,
    GaussianParams,
    Histogram,
    check_same_dim,
    check_same_length,
    histograms_equal,
)
from .errors import DivergenceUndefinedError, ParameterError

INF = float("inf")


@dataclass(frozen=True)
class ExpFamilySpec:
    """An exponential family given by its log-partition function A.

    ``grad_log_partition`` maps natural to mean parameters and
    ``inv_grad_log_partition`` is its inverse (the two Legendre-dual
    coordinate maps); they must round-trip within 1e-8 on the valid domain.
    """

    log_partition: Callable[[np.ndarray], float]
    grad_log_partition: Callable[[np.ndarray], np.ndarray]
    inv_grad_log_partition: Callable[[np.ndarray], np.ndarray]
    param_dim: int


def _clip_nonneg(value: float) -> float:
    # divergences are nonnegative; absorb float rounding of exact zeros
    return 0.0 if -1e-12 < value < 0.0 else value


def kl_discrete(p: Histogram, q: Histogram) -> float:
    """KL divergence sum p_i log(p_i / q_i); +inf on support violation."""
    check_same_length(p, q)
    if histograms_equal(p, q):
        return 0.0
    pv, qv = p.probs, q.probs
    mask = pv > 0
    if np.any(qv[mask] == 0):
        return INF
    return _clip_nonneg(float(np.sum(pv[mask] * (np.log(pv[mask]) - np.log(qv[mask])))))


def renyi_discrete(p: Histogram, q: Histogram, alpha: Alpha) -> float:
    """Renyi divergence D_alpha(p || q) for any order tag.

    Finite orders use a max-shifted log-sum-exp so that very large alpha
    (up to ~1e4) stays in range.
    """
    check_same_length(p, q)
    if histograms_equal(p, q):
        return 0.0
    pv, qv = p.probs, q.probs
    if alpha.is_one:
        return kl_discrete(p, q)
    if alpha.is_zero:
        mass = float(qv[pv > 0].sum())
        return INF if mass <= 0 else _clip_nonneg(-float(np.log(mass)))
    if alpha.is_infinity:
        psupp = pv > 0
        if np.any(qv[psupp] == 0):
            return INF
        return _clip_nonneg(float(np.max(np.log(pv[psupp]) - np.log(qv[psupp]))))
    a = alpha.value
    psupp = pv > 0
    if a > 1 and np.any(qv[psupp] == 0):
        return INF
    both = psupp & (qv > 0)
    if not np.any(both):
        return INF  # disjoint supports
    terms = a * np.log(pv[both]) + (1.0 - a) * np.log(qv[both])
    return _clip_nonneg(float(logsumexp(terms)) / (a - 1.0))


def funk_metric(p: Histogram, q: Histogram) -> float:
    """Funk weak metric on the simplex, log max_i p_i/q_i; equals D_inf."""
    return renyi_discrete(p, q, Alpha.infinity())


def _chol_logdet(cov: np.ndarray) -> float:
    chol = np.linalg.cholesky(cov)
    return 2.0 * float(np.sum(np.log(np.diag(chol))))


def kl_gaussian(P: GaussianParams, Q: GaussianParams) -> float:
    """Closed-form KL divergence between multivariate Gaussians."""
    check_same_dim(P, Q)
    d = P.dim
    delta = P.mean - Q.mean
    chol_q = np.linalg.cholesky(Q.cov)
    solve = np.linalg.solve
    # tr(Sigma_Q^-1 Sigma_P) via two triangular solves
    half = solve(chol_q, P.cov)
    trace = float(np.trace(solve(chol_q, half.T).T))
    maha = float(np.sum(solve(chol_q, delta) ** 2))
    logdet_q = 2.0 * float(np.sum(np.log(np.diag(chol_q))))
    logdet_p = _chol_logdet(P.cov)
    return _clip_nonneg(0.5 * (trace + maha - d + logdet_q - logdet_p))


def _gaussian_sup_log_ratio_1d(P: GaussianParams, Q: GaussianParams) -> float:
    """sup_x log(p(x)/q(x)) for 1-D Gaussians; finite iff var_P < var_Q."""
    mu_p, var_p = float(P.mean[0]), float(P.cov[0, 0])
    mu_q, var_q = float(Q.mean[0]), float(Q.cov[0, 0])
    if var_p > var_q:
        return INF
    if var_p == var_q:
        return 0.0 if mu_p == mu_q else INF
    # log ratio is a concave quadratic A x^2 + B x + C; maximum C - B^2/(4A)
    A = 0.5 / var_q - 0.5 / var_p
    B = mu_p / var_p - mu_q / var_q
    C = (
        0.5 * np.log(var_q / var_p)
        + 0.5 * mu_q**2 / var_q
        - 0.5 * mu_p**2 / var_p
    )
    return _clip_nonneg(float(C - B * B / (4.0 * A)))


def renyi_gaussian(P: GaussianParams, Q: GaussianParams, alpha: Alpha) -> float:
    """Closed-form Gaussian Renyi divergence.

    For finite alpha the interpolated covariance
    ``alpha*Sigma_Q + (1-alpha)*Sigma_P`` must be positive definite;
    otherwise the closed form does not exist and
    :class:`DivergenceUndefinedError` is raised (distinct from +inf).
    """
    check_same_dim(P, Q)
    if alpha.is_one:
        return kl_gaussian(P, Q)
    if alpha.is_zero:
        return 0.0  # Gaussians have full support
    if alpha.is_infinity:
        if P.dim != 1:
            raise DivergenceUndefinedError(
                "alpha=inf Gaussian divergence is only available in 1-D"
            )
        return _gaussian_sup_log_ratio_1d(P, Q)
    a = alpha.value
    sigma_a = a * Q.cov + (1.0 - a) * P.cov
    try:
        chol_a = np.linalg.cholesky(sigma_a)
    except np.linalg.LinAlgError:
        raise DivergenceUndefinedError(
            f"interpolated covariance alpha*Sigma_Q + (1-alpha)*Sigma_P is not "
            f"positive definite for alpha={a}"
        ) from None
    delta = P.mean - Q.mean
    maha = float(np.sum(np.linalg.solve(chol_a, delta) ** 2))
    logdet_a = 2.0 * float(np.sum(np.log(np.diag(chol_a))))
    logdet_p = _chol_logdet(P.cov)
    logdet_q = _chol_logdet(Q.cov)
    value = 0.5 * a * maha - (
        logdet_a - (1.0 - a) * logdet_p - a * logdet_q
    ) / (2.0 * (a - 1.0))
    return _clip_nonneg(value)


def bregman_kl(theta: np.ndarray, theta_prime: np.ndarray, fam: ExpFamilySpec) -> float:
    """KL between family members as the Bregman divergence of A:
    A(theta') - A(theta) - grad A(theta) . (theta' - theta).
    """
    theta = np.asarray(theta, dtype=float)
    theta_prime = np.asarray(theta_prime, dtype=float)
    if theta.shape != (fam.param_dim,) or theta_prime.shape != (fam.param_dim,):
        raise ParameterError(
            f"natural parameters must be vectors of length {fam.param_dim}"
        )
    grad = fam.grad_log_partition(theta)
    value = (
        fam.log_partition(theta_prime)
        - fam.log_partition(theta)
        - float(np.dot(grad, theta_prime - theta))
    )
    return _clip_nonneg(value)
