"""Global minimization of univariate functions by regularization trajectories."""

__version__ = "0.1.0"
