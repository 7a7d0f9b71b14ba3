"""Exception types shared across the package."""


class HexcurvError(Exception):
    """Base class for all domain errors raised by hexcurv."""


class DomainViolation(HexcurvError):
    """Input lies outside the domain of the requested map."""


class NotAdmissible(HexcurvError):
    """An edge length degenerates (cosh l <= 1) for the given factors."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class DegenerateHexagon(HexcurvError):
    """Hexagon side lengths too small to produce finite boundary arcs."""


class NoSolution(HexcurvError):
    """No valid preimage exists for the requested inversion."""


class GramSignature(HexcurvError):
    """Internal error: embedded Gram matrix lost its (2,1) signature."""


class InconsistentRatio(HexcurvError):
    """No real edge split realizes the requested partial-length ratio."""


class NoRealCenter(HexcurvError):
    """The edge-center linear system has no hyperboloid solution."""


class IncompatibleSplits(HexcurvError):
    """Per-face splits violate the triple sinh compatibility product."""


class UnclassifiableSigns(HexcurvError):
    """Sign vector of (h, q) matches no row of the position table."""


class DualCenterOutside(HexcurvError):
    """A dual edge center falls outside the hyperbolic plane."""


class SingularHeight(HexcurvError):
    """Face center sits on an edge geodesic; coth-branch derivative undefined."""


class DegenerateSpan(HexcurvError):
    """A vector pair fails to span a 2-dimensional subspace."""


class CoincidentPlanes(HexcurvError):
    """Two subspaces coincide; their intersection is not a line."""


class FamilyConstraint(HexcurvError):
    """Structure weights or special-vertex layout violate family rules."""


class UnsupportedWeightRange(HexcurvError):
    """Mixed-family weights fall in a window outside the supported ranges."""


class MeshFormatError(HexcurvError):
    """Mesh text could not be parsed; carries per-line diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"line {ln}: {msg}" for ln, msg in self.diagnostics))


class DanglingReference(HexcurvError):
    """A record references an id that does not exist."""


class OutOfRange(HexcurvError):
    """Index outside the valid range of boundary components."""


class NotConverged(HexcurvError):
    """Newton solve exhausted its iteration or damping budget."""

    def __init__(self, message, factors=None, report=None):
        super().__init__(message)
        self.factors = factors
        self.report = report


class NoFeasibleStart(HexcurvError):
    """Feasibility repair failed to produce an admissible starting point."""


class PathLeavesDomain(HexcurvError):
    """An integration segment exits the admissible polytope."""
