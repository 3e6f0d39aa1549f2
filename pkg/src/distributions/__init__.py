"""Discrete distribution kernels: pmf, cdf, interval probabilities and exact hypergeometric weights."""

from src.distributions.base import DistributionSpec, Family, KIndexInterval
from src.distributions.exact import interval_prob_exact, pmf_exact, t_weight_exact
from src.distributions.kernels import cdf, interval_prob, log_pmf, pmf, t_weight

__all__ = [
    "DistributionSpec",
    "Family",
    "KIndexInterval",
    "cdf",
    "interval_prob",
    "interval_prob_exact",
    "log_pmf",
    "pmf",
    "pmf_exact",
    "t_weight",
    "t_weight_exact",
]
