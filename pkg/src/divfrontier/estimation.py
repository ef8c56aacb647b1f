"""From sample embeddings to distributions.

Implements the two practical evaluation recipes: fit Gaussians to each
sample set and read off the KL frontier/endpoints, or pool the samples,
quantize with k-means, and compare the cluster-assignment histograms. The
k-nearest-neighbour support metrics cover the alpha -> 0 limiting case.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .discrete_frontier import (
    EXCLUSIVE,
    FrontierCurve,
    PRDCurve,
    frontier,
    prd_from_infinity_frontier,
)
from .distributions import Alpha, GaussianParams, Histogram
from .errors import InsufficientDataError, ParameterError
from .expfam_frontier import frontier_kl, kl_endpoints

SMOOTHING_EPS = 1e-10  # additive smoothing for quantized histograms


def as_sample_matrix(samples) -> np.ndarray:
    """Validate an n x d matrix of finite embedding vectors."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ParameterError("samples must be an n x d matrix with n >= 1")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("samples must be finite")
    return arr


@dataclass(frozen=True)
class QuantizationModel:
    """Fitted k-means centers shared by both sample sets."""

    centers: np.ndarray
    k: int
    seed: int

    def assign(self, samples) -> np.ndarray:
        samples = as_sample_matrix(samples)
        d2 = ((samples[:, None, :] - self.centers[None, :, :]) ** 2).sum(axis=2)
        return np.argmin(d2, axis=1)


def fit_gaussian(samples, ridge: float = 0.0) -> GaussianParams:
    """Sample mean and covariance with ridge*I added to the covariance."""
    samples = as_sample_matrix(samples)
    n = samples.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 samples to fit a Gaussian, got {n}")
    if ridge < 0:
        raise ParameterError("ridge must be nonnegative")
    mean = samples.mean(axis=0)
    centered = samples - mean
    cov = centered.T @ centered / (n - 1) + ridge * np.eye(samples.shape[1])
    try:
        return GaussianParams(mean, cov)
    except ParameterError as exc:
        raise InsufficientDataError(
            "sample covariance is not positive definite; increase ridge or add samples"
        ) from exc


def _kmeans_pp_init(samples: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = samples.shape[0]
    centers = np.empty((k, samples.shape[1]))
    centers[0] = samples[rng.integers(n)]
    d2 = ((samples - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0:
            centers[j] = samples[rng.integers(n)]
        else:
            centers[j] = samples[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, ((samples - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(samples: np.ndarray, centers: np.ndarray, max_iter: int = 300, tol: float = 1e-6):
    """Lloyd iterations until the relative inertia change drops below tol."""
    prev_inertia = np.inf
    for _ in range(max_iter):
        d2 = ((samples[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1)
        inertia = float(d2[np.arange(samples.shape[0]), labels].sum())
        for j in range(centers.shape[0]):
            members = samples[labels == j]
            if members.shape[0] > 0:
                centers[j] = members.mean(axis=0)
        if prev_inertia < np.inf and prev_inertia > 0:
            if abs(prev_inertia - inertia) / prev_inertia < tol:
                break
        prev_inertia = inertia
    return centers, labels


def quantize(
    samples_p, samples_q, k: int, seed: int = 0
) -> tuple[Histogram, Histogram, QuantizationModel]:
    """k-means on the pooled samples, then per-set assignment histograms.

    Both histograms share the fitted bins; counts receive additive
    smoothing eps = 1e-10 before normalization so downstream divergences
    stay finite on empty bins.
    """
    samples_p = as_sample_matrix(samples_p)
    samples_q = as_sample_matrix(samples_q)
    if samples_p.shape[1] != samples_q.shape[1]:
        raise ParameterError("sample sets must share the embedding dimension")
    pooled = np.vstack([samples_p, samples_q])
    if k < 2:
        raise ParameterError("k must be >= 2")
    if k > pooled.shape[0]:
        raise ParameterError(f"k={k} exceeds combined sample count {pooled.shape[0]}")
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp_init(pooled, k, rng)
    centers, _ = _lloyd(pooled, centers)
    model = QuantizationModel(centers=centers, k=k, seed=seed)
    hist_p = np.bincount(model.assign(samples_p), minlength=k) + SMOOTHING_EPS
    hist_q = np.bincount(model.assign(samples_q), minlength=k) + SMOOTHING_EPS
    return Histogram(hist_p), Histogram(hist_q), model


def knn_support_metrics(samples_p, samples_q, k: int = 3) -> tuple[float, float]:
    """Support-overlap precision and recall via k-NN balls.

    Precision: fraction of Q samples inside the union of balls centered at
    the P samples with radius the distance to the k-th nearest neighbour
    within P. Recall: the same with roles swapped.
    """
    samples_p = as_sample_matrix(samples_p)
    samples_q = as_sample_matrix(samples_q)
    if samples_p.shape[1] != samples_q.shape[1]:
        raise ParameterError("sample sets must share the embedding dimension")
    if k < 1:
        raise ParameterError("k must be >= 1")
    for name, s in (("P", samples_p), ("Q", samples_q)):
        if k >= s.shape[0]:
            raise ParameterError(f"k={k} must be smaller than the {name} sample count {s.shape[0]}")
    precision = _fraction_covered(samples_p, samples_q, k)
    recall = _fraction_covered(samples_q, samples_p, k)
    return precision, recall


def _fraction_covered(anchors: np.ndarray, queries: np.ndarray, k: int) -> float:
    tree = cKDTree(anchors)
    # k+1 because each anchor is its own nearest neighbour
    radii = tree.query(anchors, k=k + 1)[0][:, -1]
    rmax = float(radii.max())
    covered = 0
    for x in queries:
        idx = tree.query_ball_point(x, rmax)
        if idx:
            d = np.sqrt(((anchors[idx] - x) ** 2).sum(axis=1))
            if np.any(d <= radii[idx]):
                covered += 1
    return covered / queries.shape[0]


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs of the full evaluation pipeline; defaults match the CLI."""

    k_clusters: int = 20
    knn_k: int = 3
    ridge: float = 1e-6
    alphas: tuple[Alpha, ...] = (Alpha.one(), Alpha.infinity())
    grid_size: int = 201
    seed: int = 0


@dataclass(frozen=True)
class PipelineReport:
    """Everything the two evaluation strategies produce for one sample pair."""

    gaussian_p: GaussianParams
    gaussian_q: GaussianParams
    precision_loss: float
    recall_loss: float
    kl_frontier: FrontierCurve
    histogram_p: Histogram
    histogram_q: Histogram
    discrete_frontiers: dict = field(default_factory=dict)  # str(alpha) -> FrontierCurve
    prd: PRDCurve | None = None
    knn_precision: float = 0.0
    knn_recall: float = 0.0


def evaluate_pipeline(samples_p, samples_q, config: PipelineConfig = PipelineConfig()) -> PipelineReport:
    """Run both evaluation strategies end to end; deterministic given the seed."""
    samples_p = as_sample_matrix(samples_p)
    samples_q = as_sample_matrix(samples_q)
    g_p = fit_gaussian(samples_p, config.ridge)
    g_q = fit_gaussian(samples_q, config.ridge)
    precision_loss, recall_loss = kl_endpoints(g_p, g_q)
    kl_curve = frontier_kl(g_p, g_q, EXCLUSIVE, config.grid_size)
    hist_p, hist_q, _ = quantize(samples_p, samples_q, config.k_clusters, config.seed)
    curves = {}
    for alpha in config.alphas:
        if alpha.is_zero:
            continue
        side = EXCLUSIVE
        curves[str(alpha)] = frontier(hist_p, hist_q, alpha, side, config.grid_size)
    inf_curve = curves.get("inf") or frontier(
        hist_p, hist_q, Alpha.infinity(), EXCLUSIVE, config.grid_size
    )
    prd = prd_from_infinity_frontier(inf_curve)
    knn_precision, knn_recall = knn_support_metrics(samples_p, samples_q, config.knn_k)
    return PipelineReport(
        gaussian_p=g_p,
        gaussian_q=g_q,
        precision_loss=precision_loss,
        recall_loss=recall_loss,
        kl_frontier=kl_curve,
        histogram_p=hist_p,
        histogram_q=hist_q,
        discrete_frontiers=curves,
        prd=prd,
        knn_precision=knn_precision,
        knn_recall=knn_recall,
    )
