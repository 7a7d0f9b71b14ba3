"""Boundary curvature and its analytic derivatives on a triangulated surface.

Per-face boundary-arc lengths, the curvature vector (total arc length per
boundary component), per-face 3x3 derivative matrices in both f and u
coordinates, global Jacobian assembly, and definiteness checks.

The release derivative path runs through the evaluation kernel (edge
splits, hyperboloid embedding, face-center distance ratios, and the
reciprocal-cosh identity for the diagonal).  An independent chain-rule
path through the cosine law is kept as the test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import tol
from ._kernels import (
    BAD_CENTER,
    BAD_EDGE,
    BAD_HEIGHT,
    BAD_RANGE,
    BAD_SPLIT,
    LIGHT,
    SPACE,
    TIME,
    face_eval,
    face_theta,
)
from .conformal import StructureSpec, dfdu, edge_code
from .errors import (
    IncompatibleSplits,
    InconsistentRatio,
    NotAdmissible,
    SingularHeight,
)

_BRANCH_NAME = {TIME: "time-like", SPACE: "space-like", LIGHT: "light-like"}


@dataclass(frozen=True)
class FaceProgram:
    """Kernel-ready parameters of one face."""

    face_id: int
    vertices: tuple
    codes: tuple
    alphas: tuple
    etas: tuple


def face_program(spec: StructureSpec, tri, face) -> FaceProgram:
    vi, vj, vk = face.vertices
    pairs = ((vi, vj), (vj, vk), (vk, vi))
    codes = tuple(edge_code(spec, a, b) for a, b in pairs)
    etas = tuple(spec.eta[eid] for eid in face.edge_ids)
    alphas = tuple(spec.alpha[v] for v in face.vertices)
    return FaceProgram(face.id, face.vertices, codes, alphas, etas)


def programs(spec: StructureSpec, tri) -> list:
    return [face_program(spec, tri, face) for face in tri.faces]


def _raise_status(status, bad, face_id):
    if status == BAD_EDGE:
        raise NotAdmissible(
            f"face {face_id}: edge position {bad} degenerates", edge=bad
        )
    if status == BAD_SPLIT:
        raise InconsistentRatio(f"face {face_id}: split {bad} degenerates")
    if status == BAD_CENTER:
        raise IncompatibleSplits(f"face {face_id}: no face center")
    if status == BAD_HEIGHT:
        raise SingularHeight(
            f"face {face_id}: face center sits on edge geodesic {bad}"
        )
    if status == BAD_RANGE:
        raise NotAdmissible(
            f"face {face_id}: factor magnitudes exceed the evaluable range"
        )


def _face_f(prog: FaceProgram, f) -> tuple:
    return (f[prog.vertices[0]], f[prog.vertices[1]], f[prog.vertices[2]])


def face_angles(spec: StructureSpec, tri, face, f) -> tuple:
    """Boundary-arc triple of one face at factor values f."""
    prog = face_program(spec, tri, face)
    status, bad, theta = face_theta(prog.codes, prog.alphas, prog.etas, _face_f(prog, f))
    if status:
        _raise_status(status, bad, prog.face_id)
    return theta


@dataclass
class FaceDerivatives:
    theta: tuple
    dtheta_df: np.ndarray  # 3x3, rows = arcs, cols = factors
    jac_u: np.ndarray  # 3x3 in u coordinates
    branch: str  # face-center causal class
    sigma: float  # normalized causal value of the face center


def face_derivatives(spec: StructureSpec, tri, face, f) -> FaceDerivatives:
    prog = face_program(spec, tri, face)
    fv = _face_f(prog, f)
    status, bad, theta, jac, branch, sigma = face_eval(
        prog.codes, prog.alphas, prog.etas, fv, (1.0, 1.0, 1.0)
    )
    if status:
        _raise_status(status, bad, prog.face_id)
    m = np.array(jac)
    du = np.array([dfdu(spec, v, f) for v in prog.vertices])
    return FaceDerivatives(theta, m, m * du[np.newaxis, :], _BRANCH_NAME[branch], sigma)


def dtheta_df(spec: StructureSpec, tri, face, f) -> np.ndarray:
    return face_derivatives(spec, tri, face, f).dtheta_df


def face_jacobian_u(spec: StructureSpec, tri, face, f) -> np.ndarray:
    return face_derivatives(spec, tri, face, f).jac_u


def dtheta_df_chain(spec: StructureSpec, tri, face, f) -> np.ndarray:
    """Chain-rule oracle for the per-face derivative matrix.

    Differentiates the cosine law through the side lengths, with the
    length-vs-factor derivatives read off the edge splits (the hyper-ideal
    split branch contributes a bounded reciprocal slope).
    """
    prog = face_program(spec, tri, face)
    fv = _face_f(prog, f)
    ch, coth_ab, coth_ba = [], [], []
    from ._kernels import _core_py as _ref

    for m2 in range(3):
        a, b = ((0, 1), (1, 2), (2, 0))[m2]
        ok, c, rho = _ref._edge_state(
            prog.codes[m2], prog.alphas[a], prog.alphas[b], fv[a], fv[b],
            prog.etas[m2],
        )
        if not ok or c <= 1.0:
            raise NotAdmissible(f"face {prog.face_id}: edge {m2} degenerates")
        s = math.sqrt((c - 1.0) * (c + 1.0))
        num, den = rho * s, 1.0 + rho * c
        if abs(num) < abs(den):
            t = num / den
            coth_ab.append(1.0 / t)
            coth_ba.append((c - s * t) / (s - c * t))
        elif abs(num) > abs(den):
            w = den / num
            x_ab = math.atanh(w)
            coth_ab.append(math.tanh(x_ab))
            l = math.acosh(c)
            coth_ba.append(math.tanh(l - x_ab))
        else:
            raise InconsistentRatio(f"face {prog.face_id}: split {m2} degenerates")
        ch.append(c)
    sh = [math.sqrt((c - 1.0) * (c + 1.0)) for c in ch]
    # opposite-side lengths: L_a is the side not touching corner a
    L_cosh = (ch[1], ch[2], ch[0])
    L_sinh = (sh[1], sh[2], sh[0])
    cth = [0.0, 0.0, 0.0]
    sth = [0.0, 0.0, 0.0]
    for a in range(3):
        b, cc = (a + 1) % 3, (a + 2) % 3
        cth[a] = (L_cosh[a] + L_cosh[b] * L_cosh[cc]) / (L_sinh[b] * L_sinh[cc])
        sth[a] = math.sqrt((cth[a] - 1.0) * (cth[a] + 1.0))
    dthdl = np.zeros((3, 3))
    for a in range(3):
        b, cc = (a + 1) % 3, (a + 2) % 3
        A = sth[a] * L_sinh[b] * L_sinh[cc]
        dthdl[a, a] = L_sinh[a] / A
        dthdl[a, b] = -cth[cc] * L_sinh[a] / A
        dthdl[a, cc] = -cth[b] * L_sinh[a] / A
    dldf = np.zeros((3, 3))
    # L_0 = side (1,2) = edge 1; L_1 = side (2,0) = edge 2; L_2 = edge 0
    dldf[0, 1], dldf[0, 2] = coth_ab[1], coth_ba[1]
    dldf[1, 2], dldf[1, 0] = coth_ab[2], coth_ba[2]
    dldf[2, 0], dldf[2, 1] = coth_ab[0], coth_ba[0]
    return dthdl @ dldf


def curvature_map(spec: StructureSpec, tri, f) -> np.ndarray:
    """Total boundary-arc length per boundary component."""
    K = np.zeros(tri.n_boundary)
    for face in tri.faces:
        theta = face_angles(spec, tri, face, f)
        for corner, v in enumerate(face.vertices):
            K[v] += theta[corner]
    return K


def assemble_jacobian(spec: StructureSpec, tri, f) -> np.ndarray:
    """Global derivative of the curvature vector with respect to u."""
    lam = np.zeros((tri.n_boundary, tri.n_boundary))
    for face in tri.faces:
        fd = face_derivatives(spec, tri, face, f)
        idx = face.vertices
        for a in range(3):
            for b in range(3):
                lam[idx[a], idx[b]] += fd.jac_u[a, b]
    return lam


def curvature_and_jacobian(spec: StructureSpec, tri, f):
    """One-pass evaluation of K and its u-Jacobian (solver hot path)."""
    K = np.zeros(tri.n_boundary)
    lam = np.zeros((tri.n_boundary, tri.n_boundary))
    du = {v: dfdu(spec, v, f) for v in range(tri.n_boundary)}
    for prog in programs(spec, tri):
        fv = _face_f(prog, f)
        status, bad, theta, jac, branch, sigma = face_eval(
            prog.codes, prog.alphas, prog.etas, fv, (1.0, 1.0, 1.0)
        )
        if status:
            _raise_status(status, bad, prog.face_id)
        idx = prog.vertices
        for a in range(3):
            K[idx[a]] += theta[a]
            ja = jac[a]
            for b in range(3):
                lam[idx[a], idx[b]] += ja[b] * du[idx[b]]
    return K, lam


def is_negative_definite(mat: np.ndarray) -> bool:
    """Definiteness via symmetric eigen/factorization with a scaled margin."""
    mat = np.asarray(mat, dtype=float)
    norm = np.linalg.norm(mat)
    margin = tol.TAU_EIG * max(1.0, norm)
    if mat.shape[0] <= 3:
        return bool(np.linalg.eigvalsh((mat + mat.T) / 2.0).max() < -margin)
    _, d, _ = scipy.linalg.ldl((mat + mat.T) / 2.0)
    pivots = np.linalg.eigvalsh(d) if d.ndim == 2 else d
    return bool(pivots.max() < -margin)
