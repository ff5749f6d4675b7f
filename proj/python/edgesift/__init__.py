"""Node abnormality scoring over edge-attributed multigraphs."""

from edgesift._core import (
    compute_iat,
    description_length,
    entropy,
    fit_model_json,
    generate_reviews,
    kl_divergence,
    score_base,
    score_graph,
    score_multifaceted,
    xmeans,
)

__all__ = [
    "compute_iat",
    "description_length",
    "entropy",
    "fit_model_json",
    "generate_reviews",
    "kl_divergence",
    "score_base",
    "score_graph",
    "score_multifaceted",
    "xmeans",
]
