"""Discrete conformal structures on ideally triangulated surfaces with boundary.

Evaluates the six edge-length families, generalized boundary curvatures and
their analytic Jacobians, verifies the hyperboloid-model identity suites,
and inverts the curvature map by a damped Newton method.
"""

__version__ = "0.1.0"
