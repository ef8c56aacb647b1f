"""KL (alpha = 1) frontiers within an exponential family.

The exclusive path interpolates linearly in natural coordinates; the
inclusive path interpolates in moment coordinates and maps back through
the inverse gradient of the log-partition. Both paths reach theta_P at
lambda = 1 and theta_Q at lambda = 0 (this orientation is normalized only
in CSV output, see :mod:`divfrontier.io`).
"""
from __future__ import annotations

import numpy as np

from .discrete_frontier import EXCLUSIVE, INCLUSIVE, FrontierCurve, _check_side, _pareto_filter_triples
from .distributions import Alpha, GaussianParams, check_same_dim
from .divergences import ExpFamilySpec, bregman_kl, kl_gaussian
from .errors import ParameterError
from .expfamily import NaturalParams, gaussian_family, gaussian_to_natural


def expfam_curve_point(
    theta_p: NaturalParams,
    theta_q: NaturalParams,
    side: str,
    lam: float,
    fam: ExpFamilySpec,
) -> NaturalParams:
    """Barycentric path point in the family: natural-coordinate line
    (exclusive) or moment-coordinate line pulled back (inclusive)."""
    _check_side(side)
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must be in [0,1], got {lam}")
    tp, tq = theta_p.theta, theta_q.theta
    if tp.shape != (fam.param_dim,) or tq.shape != (fam.param_dim,):
        raise ParameterError(f"natural parameters must have length {fam.param_dim}")
    if side == EXCLUSIVE:
        return NaturalParams(lam * tp + (1.0 - lam) * tq)
    eta = lam * fam.grad_log_partition(tp) + (1.0 - lam) * fam.grad_log_partition(tq)
    return NaturalParams(fam.inv_grad_log_partition(eta))


def frontier_kl(
    P: GaussianParams, Q: GaussianParams, side: str, grid_size: int = 201
) -> FrontierCurve:
    """KL frontier between Gaussians, evaluated via Bregman divergences.

    Points are (lambda, div_p, div_q): exclusive uses
    (KL(gamma||P), KL(gamma||Q)), inclusive (KL(P||gamma), KL(Q||gamma)).
    """
    _check_side(side)
    check_same_dim(P, Q)
    if grid_size < 2:
        raise ParameterError("grid_size must be >= 2")
    fam = gaussian_family(P.dim)
    tp = gaussian_to_natural(P)
    tq = gaussian_to_natural(Q)
    triples = []
    for lam in np.linspace(0.0, 1.0, grid_size):
        gamma = expfam_curve_point(tp, tq, side, float(lam), fam)
        if side == EXCLUSIVE:
            div_p = bregman_kl(gamma.theta, tp.theta, fam)
            div_q = bregman_kl(gamma.theta, tq.theta, fam)
        else:
            div_p = bregman_kl(tp.theta, gamma.theta, fam)
            div_q = bregman_kl(tq.theta, gamma.theta, fam)
        triples.append((float(lam), div_p, div_q))
    return FrontierCurve(_pareto_filter_triples(triples), side, Alpha.one())


def kl_endpoints(P: GaussianParams, Q: GaussianParams) -> tuple[float, float]:
    """The two frontier endpoints as (precision_loss, recall_loss) =
    (KL(Q||P), KL(P||Q)).

    KL(Q||P) is sensitive to Q placing mass where P has little (precision),
    KL(P||Q) to Q failing to cover P (recall).
    """
    return kl_gaussian(Q, P), kl_gaussian(P, Q)
