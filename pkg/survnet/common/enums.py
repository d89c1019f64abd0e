"""Enumerations shared by the configuration models, networks and runners.

Path: survnet/common/enums.py
"""

from enum import Enum

class HeadKind(str, Enum):
    """How the network maps its last hidden values to interval survival.

    FLEXIBLE gives every interval its own covariate-dependent hazard.
    PROPORTIONAL_HAZARDS shares one linear predictor across intervals and
    learns a free baseline hazard per interval.
    """
    FLEXIBLE = "flexible"
    PROPORTIONAL_HAZARDS = "prophaz"

class LayerKind(str, Enum):
    """Kinds of layer a network is assembled from."""
    DENSE = "dense"
    FLEXIBLE_HEAD = "flexible-head"
    PROPHAZ_HEAD = "prophaz-head"

class Activation(str, Enum):
    """Elementwise activation functions."""
    RECTIFIER = "rectifier"
    SIGMOID = "sigmoid"
    IDENTITY = "identity"

class GridScheme(str, Enum):
    """Ways of laying out the follow-up time intervals."""
    UNIFORM = "uniform"
    HALFLIFE = "halflife"
    EXPLICIT = "explicit"

class MissingPolicy(str, Enum):
    """Imputation policy for a feature column."""
    MEDIAN = "median"
    DEFAULT = "default"   # Fixed default value

class Distribution(str, Enum):
    """Latent survival-time distributions for simulation."""
    EXPONENTIAL = "exponential"
    WEIBULL = "weibull"
