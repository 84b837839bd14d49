"""Random graph model laboratory: seeded model families, structure
estimators, representation compilers, and a mobile-network scenario."""

from ._core import (
    Model,
    analyze_sample,
    connected_maxdeg3,
    definetti_final_averages,
    definetti_running_averages,
    encode_theorem1,
    encode_theorem2,
    estimate_avg_degree,
    estimate_connectivity,
    estimate_isolated,
    exchangeability_test,
    footnote2,
    gnp,
    ide_check,
    isolated_lower_bound,
    knn,
    mixture_beta,
    mixture_two_point,
    mixture_uniform01,
    mobility_model,
    pos_check,
    rigged,
    sample_adjacency,
    sphere_cluster,
    verify_equivalence,
    verify_isolation_bound,
    wrap_exchangeable,
)

__all__ = [
    "Model",
    "analyze_sample",
    "connected_maxdeg3",
    "definetti_final_averages",
    "definetti_running_averages",
    "encode_theorem1",
    "encode_theorem2",
    "estimate_avg_degree",
    "estimate_connectivity",
    "estimate_isolated",
    "exchangeability_test",
    "footnote2",
    "gnp",
    "ide_check",
    "isolated_lower_bound",
    "knn",
    "mixture_beta",
    "mixture_two_point",
    "mixture_uniform01",
    "mobility_model",
    "pos_check",
    "rigged",
    "sample_adjacency",
    "sphere_cluster",
    "verify_equivalence",
    "verify_isolation_bound",
    "wrap_exchangeable",
]
