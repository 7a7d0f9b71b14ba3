"""Full geometry of one right-angled hyperbolic hexagon.

Everything here works on explicit hyperboloid-model vectors: boundary-arc
lengths from side lengths and back, the canonical embedding, the polar
triple, edge and face centers, signed center distances h and q, dual
splits of the boundary arcs, and position classification.

Index conventions: a hexagon has corners (i, j, k); the alternating side
lengths are (l_ij, l_jk, l_ki) and theta_i is the boundary-arc length at
corner i (opposite the side {jk}).  h_i and q_i are the signed distances
of the face center to the edge geodesic {jk} and to the arc-i geodesic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import tol
from .errors import (
    DegenerateHexagon,
    DualCenterOutside,
    GramSignature,
    IncompatibleSplits,
    InconsistentRatio,
    NoRealCenter,
    NoSolution,
    UnclassifiableSigns,
)
from .lorentz import (
    CausalClass,
    MinkowskiVec,
    causal_class,
    minkowski_cross,
    minkowski_dot,
)


@dataclass(frozen=True)
class HexLengths:
    l_ij: float
    l_jk: float
    l_ki: float

    def __post_init__(self):
        for name, l in (("l_ij", self.l_ij), ("l_jk", self.l_jk), ("l_ki", self.l_ki)):
            if not (l > 0.0 and math.isfinite(l)):
                raise DegenerateHexagon(f"{name}={l} must be a positive real")

    def as_tuple(self):
        return (self.l_ij, self.l_jk, self.l_ki)


@dataclass(frozen=True)
class HexAngles:
    theta_i: float
    theta_j: float
    theta_k: float

    def as_tuple(self):
        return (self.theta_i, self.theta_j, self.theta_k)


@dataclass(frozen=True)
class EdgeSplit:
    """Signed partial lengths (d_ab, d_ba) of one side, d_ab + d_ba = l."""

    d_ab: float
    d_ba: float

    @property
    def length(self):
        return self.d_ab + self.d_ba


@dataclass(frozen=True)
class BoundarySplit:
    """Signed partials (theta_st, theta_ts) of the boundary arc at r.

    s and t label the other two corners; theta_st + theta_ts is the full
    arc length theta_r.
    """

    s: int
    t: int
    theta_st: float
    theta_ts: float

    def partial(self, a: int) -> float:
        if a == self.s:
            return self.theta_st
        if a == self.t:
            return self.theta_ts
        raise KeyError(a)


@dataclass
class HexagonGeometry:
    lengths: HexLengths
    angles: HexAngles
    splits: tuple  # EdgeSplit for sides (ij, jk, ki)
    dual_splits: tuple  # BoundarySplit for arcs (i, j, k)
    vertices: tuple  # space-like unit MinkowskiVec (v_i, v_j, v_k)
    polar: tuple  # space-like unit MinkowskiVec (v'_i, v'_j, v'_k)
    edge_centers: tuple  # time-like MinkowskiVec (c_ij, c_jk, c_ki)
    face_center: MinkowskiVec
    center_class: CausalClass
    h: tuple  # (h_i, h_j, h_k) or (None,)*3 when light-like
    q: tuple
    domain: str

    def edge_partial(self, r: int, s: int) -> float:
        """Signed partial d_rs of the side {rs} at corner r."""
        order = ((0, 1), (1, 2), (2, 0))
        for m, (a, b) in enumerate(order):
            if (r, s) == (a, b):
                return self.splits[m].d_ab
            if (r, s) == (b, a):
                return self.splits[m].d_ba
        raise KeyError((r, s))

    def arc_partial(self, r: int, s: int) -> float:
        """Signed dual partial theta_rs (lives on the arc at the third corner)."""
        for bs in self.dual_splits:
            if {bs.s, bs.t} == {r, s}:
                return bs.partial(r)
        raise KeyError((r, s))


# -- closed-form trigonometry -------------------------------------------------

def _sinh_from_cosh(c: float) -> float:
    return math.sqrt((c - 1.0) * (c + 1.0))


def _opposite_acosh(co: float, ca: float, cb: float) -> float:
    # generalized cosine law: side opposite the pair (ca, cb)
    return math.acosh((co + ca * cb) / (_sinh_from_cosh(ca) * _sinh_from_cosh(cb)))


def angles_from_lengths(lengths: HexLengths) -> HexAngles:
    """Boundary-arc lengths from the three alternating side lengths."""
    if min(lengths.as_tuple()) <= tol.TAU_LEN:
        raise DegenerateHexagon(
            f"side length at or below {tol.TAU_LEN}; arcs diverge"
        )
    cij, cjk, cki = (math.cosh(l) for l in lengths.as_tuple())
    return HexAngles(
        _opposite_acosh(cjk, cij, cki),
        _opposite_acosh(cki, cij, cjk),
        _opposite_acosh(cij, cjk, cki),
    )


def lengths_from_angles(angles: HexAngles) -> HexLengths:
    """Side lengths from arc lengths.

    Right-angled hexagons are self-dual: the same cosine law, read with the
    roles of sides and arcs exchanged, inverts angles_from_lengths exactly.
    """
    ti, tj, tk = angles.as_tuple()
    if min(ti, tj, tk) <= 0.0 or not all(map(math.isfinite, (ti, tj, tk))):
        raise NoSolution("arc lengths must be positive reals")
    ci, cj, ck = math.cosh(ti), math.cosh(tj), math.cosh(tk)
    l_jk = _opposite_acosh(ci, cj, ck)
    l_ki = _opposite_acosh(cj, ci, ck)
    l_ij = _opposite_acosh(ck, ci, cj)
    return HexLengths(l_ij, l_jk, l_ki)


def split_edge(l: float, rho: float) -> EdgeSplit:
    """Split a side of length l at partial ratio rho = sinh d_ab / sinh d_ba.

    Only splits whose center lies on the side's geodesic are representable;
    ratios in the band (-e^l, -e^{-l}) have a hyper-ideal center and raise
    InconsistentRatio.
    """
    if not (l > 0.0) or rho == 0.0:
        raise InconsistentRatio(f"need l > 0 and rho != 0, got l={l}, rho={rho}")
    s, c = math.sinh(l), math.cosh(l)
    num, den = rho * s, 1.0 + rho * c
    if abs(num) >= abs(den):
        raise InconsistentRatio(
            f"|rho sinh l| >= |1 + rho cosh l| for l={l}, rho={rho}: "
            "no on-geodesic split exists"
        )
    d_ab = math.atanh(num / den)
    return EdgeSplit(d_ab, l - d_ab)


# -- embedding ----------------------------------------------------------------

def embed(lengths: HexLengths) -> tuple:
    """Canonical space-like unit triple with Gram entries -cosh l_rs.

    v_i sits on the x1 axis, v_j in the x1-x3 plane with positive x3, and
    v_k takes the root with positive x2.
    """
    cij, cjk, cki = (math.cosh(l) for l in lengths.as_tuple())
    sij, ski = _sinh_from_cosh(cij), _sinh_from_cosh(cki)
    cth_i = (cjk + cij * cki) / (sij * ski)
    sth_i = _sinh_from_cosh(cth_i)
    v_i = MinkowskiVec(1.0, 0.0, 0.0)
    v_j = MinkowskiVec(-cij, 0.0, sij)
    v_k = MinkowskiVec(-cki, ski * sth_i, ski * cth_i)
    gram_ok = (
        abs(minkowski_dot(v_k, v_k) - 1.0) < 1e-9
        and abs(minkowski_dot(v_j, v_k) + cjk) < 1e-9 * max(1.0, cjk)
    )
    if not gram_ok:
        raise GramSignature("embedded Gram matrix failed its residual check")
    return v_i, v_j, v_k


def polar(v_i: MinkowskiVec, v_j: MinkowskiVec, v_k: MinkowskiVec) -> tuple:
    """Space-like unit triple orthogonal to the opposite vertex pairs.

    Oriented so that p_r * v_r < 0, matching the embedding's handedness.
    """
    def unit(x):
        n = math.sqrt(minkowski_dot(x, x))
        return MinkowskiVec(x.x1 / n, x.x2 / n, x.x3 / n)

    return (
        unit(minkowski_cross(v_j, v_k)),
        unit(minkowski_cross(v_k, v_i)),
        unit(minkowski_cross(v_i, v_j)),
    )


def edge_center(v_a: MinkowskiVec, v_b: MinkowskiVec, split: EdgeSplit) -> MinkowskiVec:
    """The hyperboloid point on Span(v_a, v_b) with the split's distances.

    Solves v_a * c = -sinh d_ab, v_b * c = -sinh d_ba in the span.
    """
    ch = -minkowski_dot(v_a, v_b)
    s2 = (ch - 1.0) * (ch + 1.0)
    sa, sb = math.sinh(split.d_ab), math.sinh(split.d_ba)
    ca = (sa + ch * sb) / s2
    cb = (sb + ch * sa) / s2
    c = ca * v_a + cb * v_b
    nn = minkowski_dot(c, c)
    if nn >= 0.0 or abs(nn + 1.0) > 1e-8 or c.x3 <= 0.0:
        raise NoRealCenter(
            f"edge-center system produced norm^2={nn}, x3={c.x3}"
        )
    return c


def compatibility_residual(splits) -> float:
    """Residual of the triple sinh product condition for three splits."""
    lhs = math.sinh(splits[0].d_ab) * math.sinh(splits[1].d_ab) * math.sinh(splits[2].d_ab)
    rhs = math.sinh(splits[0].d_ba) * math.sinh(splits[1].d_ba) * math.sinh(splits[2].d_ba)
    return lhs - rhs


def face_center(polars, centers) -> tuple:
    """Common point of the three edge perpendiculars.

    Intersects the planes spanned by (p_k, c_ij) and (p_j, c_ki); the third
    plane must agree within tolerance.  Returns the normalized center and
    its causal class.
    """
    p_i, p_j, p_k = polars
    c_ij, c_jk, c_ki = centers
    n1 = minkowski_cross(p_k, c_ij)
    n2 = minkowski_cross(p_j, c_ki)
    raw = minkowski_cross(n1, n2)
    nrm = raw.euclidean_norm()
    if nrm <= 1e-13 * n1.euclidean_norm() * n2.euclidean_norm():
        raise IncompatibleSplits("edge perpendiculars do not meet in a line")
    chat = (1.0 / nrm) * raw
    n3 = minkowski_cross(p_i, c_jk)
    resid = abs(minkowski_dot(chat, n3)) / n3.euclidean_norm()
    if resid > 1e-7:
        raise IncompatibleSplits(
            f"third perpendicular misses the center by {resid}"
        )
    cls = causal_class(chat)
    if cls is CausalClass.TIME_LIKE:
        scale = 1.0 / math.sqrt(-minkowski_dot(chat, chat))
        c = scale * chat
        if c.x3 < 0.0:
            c = -c
    elif cls is CausalClass.SPACE_LIKE:
        scale = 1.0 / math.sqrt(minkowski_dot(chat, chat))
        c = scale * chat
        if c.x3 < 0.0 or (c.x3 == 0.0 and c.x1 < 0.0):
            c = -c
    else:
        c = raw
    return c, cls


def dual_splits(vertices, polars, center, angles) -> tuple:
    """Split each boundary arc at the point cut out by the face center.

    For the arc at r, the cutting point is the line through v_r and the
    face center, met with the plane of the other two polar vectors.
    """
    out = []
    pairs = ((0, (1, 2)), (1, (2, 0)), (2, (0, 1)))
    thetas = angles.as_tuple()
    for r, (s, t) in pairs:
        n1 = minkowski_cross(vertices[r], center)
        n2 = minkowski_cross(polars[s], polars[t])
        raw = minkowski_cross(n1, n2)
        nn = minkowski_dot(raw, raw)
        if nn >= 0.0:
            raise DualCenterOutside(
                f"dual center of arc {r} is not inside the hyperbolic plane"
            )
        c = (1.0 / math.sqrt(-nn)) * raw
        if c.x3 < 0.0:
            c = -c
        th_st = math.asinh(-minkowski_dot(polars[s], c))
        th_ts = math.asinh(-minkowski_dot(polars[t], c))
        if abs(th_st + th_ts - thetas[r]) > 1e-7 * max(1.0, abs(thetas[r])):
            raise DualCenterOutside(
                f"arc {r} partials {th_st}+{th_ts} miss the arc length {thetas[r]}"
            )
        out.append(BoundarySplit(s, t, th_st, th_ts))
    return tuple(out)


def _coherent_sign(a: float, b: float, what: str) -> float:
    sa = 0.0 if abs(a) <= tol.TAU_SIGN else math.copysign(1.0, a)
    sb = 0.0 if abs(b) <= tol.TAU_SIGN else math.copysign(1.0, b)
    if sa and sb and sa != sb:
        raise UnclassifiableSigns(f"incoherent signs for {what}: {a} vs {b}")
    return sa or sb


def signed_distances(geom_vertices, geom_polars, center, cls, splits, duals):
    """(h, q) triples of the face center, signed per the position rules.

    Time-like centers read sinh h and sinh q off inner products directly;
    space-like centers take magnitudes from cosh and signs from the sign
    coherence with the edge and arc partials.
    """
    if cls is CausalClass.LIGHT_LIKE:
        return (None, None, None), (None, None, None)
    h, q = [], []
    d = {}
    order = ((0, 1), (1, 2), (2, 0))
    for m, (a, b) in enumerate(order):
        d[(a, b)] = splits[m].d_ab
        d[(b, a)] = splits[m].d_ba
    th = {}
    for bs in duals:
        th[(bs.s, bs.t)] = bs.theta_st
        th[(bs.t, bs.s)] = bs.theta_ts
    others = ((1, 2), (2, 0), (0, 1))
    for r in range(3):
        s, t = others[r]
        vq = minkowski_dot(geom_vertices[r], center)
        vh = minkowski_dot(geom_polars[r], center)
        if cls is CausalClass.TIME_LIKE:
            q.append(math.asinh(-vq))
            h.append(math.asinh(-vh))
        else:
            sq = _coherent_sign(d[(r, s)], d[(r, t)], f"q_{r}")
            sh = _coherent_sign(th[(r, s)], th[(r, t)], f"h_{r}")
            q.append(sq * math.acosh(max(1.0, abs(vq))))
            h.append(sh * math.acosh(max(1.0, abs(vh))))
    return tuple(h), tuple(q)


# Sign columns of the thirteen face-center position domains, as
# (h_i, h_j, h_k, q_i, q_j, q_k) with +/- encoded as +1/-1.
_DOMAIN_SIGNS = {
    "D1": (1, -1, 1, 1, 1, -1),
    "D2": (1, 1, 1, 1, 1, -1),
    "D3": (-1, 1, 1, 1, 1, -1),
    "D4": (-1, 1, 1, 1, 1, 1),
    "D5": (-1, 1, 1, 1, -1, 1),
    "D6": (1, 1, 1, 1, -1, 1),
    "D7": (1, 1, -1, 1, -1, 1),
    "D8": (1, 1, -1, 1, 1, 1),
    "D9": (1, 1, -1, -1, 1, 1),
    "D10": (1, 1, 1, -1, 1, 1),
    "D11": (1, -1, 1, -1, 1, 1),
    "D12": (1, -1, 1, 1, 1, 1),
    "D13": (1, 1, 1, 1, 1, 1),
}
_SPACE_LABEL = {
    "D1": "Di", "D2": "DI", "D3": "Dii", "D4": "DII", "D5": "Diii",
    "D6": "DIII", "D7": "Div", "D8": "DIV", "D9": "Dv", "D10": "DV",
    "D11": "Dvi", "D12": "DVI",
}


def classify_domain(h, q, cls: CausalClass) -> str:
    """Position label of the face center from the signs of h and q."""
    if cls is CausalClass.LIGHT_LIKE:
        return "LightCone"
    vals = tuple(h) + tuple(q)
    signs = tuple(
        0 if abs(v) <= tol.TAU_SIGN else (1 if v > 0 else -1) for v in vals
    )
    for label, col in _DOMAIN_SIGNS.items():
        if all(s == 0 or s == c for s, c in zip(signs, col)):
            if cls is CausalClass.SPACE_LIKE:
                if label == "D13":
                    continue
                return _SPACE_LABEL[label]
            return label
    raise UnclassifiableSigns(f"sign vector {signs} matches no position column")


def build_hexagon(lengths: HexLengths, splits) -> HexagonGeometry:
    """Assemble the full geometry from side lengths and edge splits."""
    splits = tuple(splits)
    for m, (split, l) in enumerate(zip(splits, lengths.as_tuple())):
        if abs(split.length - l) > 1e-9 * max(1.0, l):
            raise IncompatibleSplits(
                f"split {m} sums to {split.length}, side length is {l}"
            )
    resid = compatibility_residual(splits)
    if abs(resid) > tol.TAU_COMPAT:
        raise IncompatibleSplits(
            f"triple sinh product residual {resid} exceeds {tol.TAU_COMPAT}"
        )
    angles = angles_from_lengths(lengths)
    v = embed(lengths)
    p = polar(*v)
    centers = (
        edge_center(v[0], v[1], splits[0]),
        edge_center(v[1], v[2], splits[1]),
        edge_center(v[2], v[0], splits[2]),
    )
    center, cls = face_center(p, centers)
    duals = dual_splits(v, p, center, angles)
    h, q = signed_distances(v, p, center, cls, splits, duals)
    domain = classify_domain(h, q, cls)
    return HexagonGeometry(
        lengths=lengths,
        angles=angles,
        splits=splits,
        dual_splits=duals,
        vertices=v,
        polar=p,
        edge_centers=centers,
        face_center=center,
        center_class=cls,
        h=h,
        q=q,
        domain=domain,
    )


def symmetric_splits(lengths: HexLengths) -> tuple:
    """Midpoint splits (always compatible)."""
    return tuple(EdgeSplit(l / 2.0, l / 2.0) for l in lengths.as_tuple())


def splits_from_ratios(lengths: HexLengths, ratios) -> tuple:
    """Edge splits from three partial ratios (cyclic product must be 1)."""
    prod = ratios[0] * ratios[1] * ratios[2]
    if abs(prod - 1.0) > 1e-9:
        raise IncompatibleSplits(
            f"ratio cyclic product {prod} != 1; splits would be incompatible"
        )
    ls = lengths.as_tuple()
    first = split_edge(ls[0], ratios[0])
    second = split_edge(ls[1], ratios[1])
    # derive the third ratio exactly from the first two
    rho3 = 1.0 / (ratios[0] * ratios[1])
    third = split_edge(ls[2], rho3)
    return (first, second, third)
