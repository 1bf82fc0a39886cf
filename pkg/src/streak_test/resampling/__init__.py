from .config import (
    DEFAULT_ALPHA,
    DEFAULT_DEPTH,
    DEFAULT_DEPTHS,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_RESAMPLES,
    DEFAULT_SEED,
    NullKind,
    NullModel,
    TestConfig,
    TestGrid,
)
from .null import (
    NullDistribution,
    arrangement_count,
    bernoulli_counts,
    bernoulli_null,
    exact_component_nulls,
    exact_null,
    exact_null_for,
    from_counts,
    iter_arrangements,
    null_mean_bias,
    permutation_counts,
    permutation_null,
)
from .pvalue import PValue, exact_p_value, p_value
from .rng import derive_seed, uniforms

__all__ = [
    "DEFAULT_ALPHA",
    "DEFAULT_DEPTH",
    "DEFAULT_DEPTHS",
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_RESAMPLES",
    "DEFAULT_SEED",
    "NullDistribution",
    "NullKind",
    "NullModel",
    "PValue",
    "TestConfig",
    "TestGrid",
    "arrangement_count",
    "bernoulli_counts",
    "bernoulli_null",
    "derive_seed",
    "exact_component_nulls",
    "exact_null",
    "exact_null_for",
    "exact_p_value",
    "from_counts",
    "iter_arrangements",
    "null_mean_bias",
    "p_value",
    "permutation_counts",
    "permutation_null",
    "uniforms",
]
