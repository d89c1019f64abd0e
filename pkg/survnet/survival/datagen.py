"""Seeded synthetic survival data.

Survival and censoring times are drawn by inverse-transform sampling from one
Philox uniform stream U on (0, 1]:

- exponential with scale b: -b * ln U
- Weibull with scale b and shape k: b * (-ln U) ** (1 / k)

The stream is consumed in a fixed order (group permutation, survival
uniforms, censoring uniforms), so a seed reproduces a cohort exactly.

Path: survnet/survival/datagen.py
"""
import logging
import math

import numpy as np

from survnet.common.enums import Distribution
from survnet.common.errors import ValidationError
from survnet.config.simulation import GroupSpec, SimSpec
from survnet.survival.data import SurvivalData
from survnet.utils.rng import make_rng, open_unit_uniform

logger = logging.getLogger(__name__)

def group_counts(n_subjects: int, fractions: list[float]) -> np.ndarray:
    """Split n subjects by fraction; remainders go to the largest fractional parts."""
    exact = np.asarray(fractions, dtype=float) * n_subjects
    counts = np.floor(exact).astype(int)
    shortfall = n_subjects - int(counts.sum())
    order = np.argsort(-(exact - counts), kind="stable")
    counts[order[:shortfall]] += 1
    return counts

def draw_times(group: GroupSpec, uniforms: np.ndarray) -> np.ndarray:
    """Inverse-transform survival times for one group."""
    b = group.scale_parameter()
    if group.distribution == Distribution.EXPONENTIAL:
        return -b * np.log(uniforms)
    return b * (-np.log(uniforms)) ** (1.0 / group.shape)

def simulate(spec: SimSpec) -> SurvivalData:
    """Generate a cohort from a simulation design.

    Args:
        spec: Simulation design

    Returns:
        SurvivalData with one covariate, `group`, holding the group number

    Raises:
        ValidationError: If the design cannot be sampled
    """
    rng = make_rng(spec.rng_seed)
    n = spec.n_subjects
    counts = group_counts(n, [g.fraction for g in spec.groups])
    group = rng.permutation(np.repeat(np.arange(len(spec.groups)), counts))

    latent = np.empty(n)
    survival_u = open_unit_uniform(rng, n)
    for k, spec_k in enumerate(spec.groups):
        members = group == k
        latent[members] = draw_times(spec_k, survival_u[members])

    censor = np.full(n, np.inf)
    if spec.censor_halflife is not None:
        censor = -(spec.censor_halflife / math.log(2.0)) * np.log(open_unit_uniform(rng, n))
    if spec.max_followup is not None:
        censor = np.minimum(censor, spec.max_followup)

    if not np.all(np.isfinite(np.minimum(latent, censor))):
        raise ValidationError("Simulation produced non-finite times", operation="simulate")

    events = latent <= censor
    times = np.minimum(latent, censor)
    logger.info(
        "Simulated %d subjects in %d group(s), %d events (%.1f%%)",
        n, len(spec.groups), int(events.sum()), 100.0 * events.mean() if n else 0.0
    )
    return SurvivalData(times, events, group.astype(float).reshape(n, 1), ("group",))

def bootstrap_resample(data: SurvivalData, target_n: int, seed: int) -> SurvivalData:
    """Draw target_n subjects uniformly with replacement.

    Raises:
        ValidationError: If the source is empty or target_n is negative
    """
    if data.n_subjects == 0:
        raise ValidationError("Cannot resample an empty dataset", operation="bootstrap_resample")
    if target_n < 0:
        raise ValidationError("Sample size must be nonnegative",
                              operation="bootstrap_resample", details={"target_n": target_n})
    index = make_rng(seed).integers(0, data.n_subjects, size=target_n)
    return data.subset(index)
