"""Natural/moment parameterizations and concrete exponential families.

The Gaussian family packs theta as (Sigma^-1 mu, vec(-1/2 Sigma^-1)) with
the full symmetric matrix stored row-major, so a d-dimensional Gaussian has
param_dim d + d*d. The Bernoulli family (A(theta) = log(1 + e^theta)) is
included as a second, scalar test family.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import GaussianParams
from .divergences import ExpFamilySpec
from .errors import ParameterError


@dataclass(frozen=True)
class NaturalParams:
    """Natural parameter vector theta of an exponential family."""

    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.ndim != 1 or not np.all(np.isfinite(theta)):
            raise ParameterError("natural parameters must be a finite vector")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True)
class MomentParams:
    """Mean parameter vector eta = grad A(theta)."""

    eta: np.ndarray

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=float)
        if eta.ndim != 1 or not np.all(np.isfinite(eta)):
            raise ParameterError("moment parameters must be a finite vector")
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)


def _unpack_gaussian_theta(theta: np.ndarray, d: int):
    theta1 = theta[:d]
    theta2 = theta[d:].reshape(d, d)
    theta2 = 0.5 * (theta2 + theta2.T)
    return theta1, theta2


def gaussian_family(d: int) -> ExpFamilySpec:
    """The d-dimensional Gaussian exponential family.

    A(theta) = 1/2 mu' Prec mu - 1/2 logdet(Prec) + d/2 log(2 pi) with
    Prec = -2 Theta2 and mu = Prec^-1 theta1, computed via Cholesky.
    """

    def log_partition(theta: np.ndarray) -> float:
        theta1, theta2 = _unpack_gaussian_theta(theta, d)
        prec = -2.0 * theta2
        chol = np.linalg.cholesky(prec)
        half = np.linalg.solve(chol, theta1)
        logdet_prec = 2.0 * float(np.sum(np.log(np.diag(chol))))
        return (
            0.5 * float(np.dot(half, half))
            - 0.5 * logdet_prec
            + 0.5 * d * np.log(2.0 * np.pi)
        )

    def grad_log_partition(theta: np.ndarray) -> np.ndarray:
        theta1, theta2 = _unpack_gaussian_theta(theta, d)
        cov = np.linalg.inv(-2.0 * theta2)
        mean = cov @ theta1
        second_moment = cov + np.outer(mean, mean)
        return np.concatenate([mean, second_moment.ravel()])

    def inv_grad_log_partition(eta: np.ndarray) -> np.ndarray:
        mean = eta[:d]
        second_moment = eta[d:].reshape(d, d)
        cov = second_moment - np.outer(mean, mean)
        cov = 0.5 * (cov + cov.T)
        prec = np.linalg.inv(cov)
        prec = 0.5 * (prec + prec.T)
        return np.concatenate([prec @ mean, (-0.5 * prec).ravel()])

    return ExpFamilySpec(
        log_partition=log_partition,
        grad_log_partition=grad_log_partition,
        inv_grad_log_partition=inv_grad_log_partition,
        param_dim=d + d * d,
    )


def bernoulli_family() -> ExpFamilySpec:
    """Bernoulli family with success log-odds theta."""

    def log_partition(theta: np.ndarray) -> float:
        return float(np.logaddexp(0.0, theta[0]))

    def grad_log_partition(theta: np.ndarray) -> np.ndarray:
        return np.array([1.0 / (1.0 + np.exp(-theta[0]))])

    def inv_grad_log_partition(eta: np.ndarray) -> np.ndarray:
        p = eta[0]
        if not 0.0 < p < 1.0:
            raise ParameterError("Bernoulli moment parameter must be in (0,1)")
        return np.array([np.log(p) - np.log1p(-p)])

    return ExpFamilySpec(log_partition, grad_log_partition, inv_grad_log_partition, 1)


def gaussian_to_natural(g: GaussianParams) -> NaturalParams:
    """theta = (Sigma^-1 mu, vec(-1/2 Sigma^-1))."""
    prec = np.linalg.inv(g.cov)
    prec = 0.5 * (prec + prec.T)
    return NaturalParams(np.concatenate([prec @ g.mean, (-0.5 * prec).ravel()]))


def natural_to_gaussian(theta: NaturalParams) -> GaussianParams:
    """Inverse of :func:`gaussian_to_natural`."""
    d = _gaussian_dim(theta.theta.size)
    theta1, theta2 = _unpack_gaussian_theta(theta.theta, d)
    cov = np.linalg.inv(-2.0 * theta2)
    cov = 0.5 * (cov + cov.T)
    return GaussianParams(cov @ theta1, cov)


def _gaussian_dim(param_dim: int) -> int:
    # param_dim = d + d^2
    d = int(round((np.sqrt(1 + 4 * param_dim) - 1) / 2))
    if d + d * d != param_dim:
        raise ParameterError(f"{param_dim} is not a Gaussian natural-parameter length")
    return d


def natural_to_moment(theta: NaturalParams, fam: ExpFamilySpec) -> MomentParams:
    """eta = grad A(theta)."""
    return MomentParams(fam.grad_log_partition(theta.theta))


def moment_to_natural(eta: MomentParams, fam: ExpFamilySpec) -> NaturalParams:
    """theta = (grad A)^-1(eta)."""
    return NaturalParams(fam.inv_grad_log_partition(eta.eta))
