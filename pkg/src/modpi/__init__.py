"""modpi: certify closed forms for 1/pi against modular parameterizations.

The package evaluates four families of binomial-sum series for 1/pi to
arbitrary precision, locates the CM points that parameterize each case on
a level-2 modular curve or its Fricke quotient, recomputes every quantity
entering the closed-form right-hand sides (hauptmodul values, weight-1
forms, quasi-modular corrections, scaling factors), and checks the whole
chain numerically with explicit residuals.
"""

__version__ = "0.1.0"

from .numerics import PrecisionContext, default_context

__all__ = ["PrecisionContext", "default_context", "__version__"]
