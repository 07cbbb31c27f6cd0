"""Van Kampen diagram toolkit for an explicit small-cancellation family of
two-generator presentations: generation, condition checking, diagram surgery,
S-map estimates, and word/conjugacy solvers."""

__version__ = "0.1.0"
