"""Real convex geometry behind the lattice operations.

Hermitian d x d matrices are embedded into R^{d^2} through a fixed
orthonormal basis (normalized identity plus generalized Gell-Mann
matrices, lexicographic order), so membership and intersection questions
become ordinary linear programming / vertex enumeration in real
coordinates.
"""

from __future__ import annotations

import functools

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection
from scipy.linalg import null_space

#: residual tolerance for LP membership in a convex hull
MEMBERSHIP_TOL = 1e-8
#: geometric rank / tightness tolerance
GEOM_TOL = 1e-9
#: hard limits beyond which polytope intersection is not materialized
MAX_AFFINE_DIM = 6
MAX_GENERATORS = 64


class IntersectionTooComplex(Exception):
    """Raised when a polytope intersection exceeds the materialization limits."""


@functools.lru_cache(maxsize=None)
def hermitian_basis(d: int) -> np.ndarray:
    """Orthonormal (under tr(AB)) basis of d x d Hermitian matrices.

    Order: I/sqrt(d); then for each pair i < j (lexicographic) the
    symmetric and antisymmetric elements; then the d-1 diagonal elements.
    """
    mats = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = m[j, i] = 1 / np.sqrt(2)
            mats.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = -1j / np.sqrt(2)
            m[j, i] = 1j / np.sqrt(2)
            mats.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -l
        mats.append(m / np.sqrt(l * (l + 1)))
    out = np.array(mats)
    out.flags.writeable = False
    return out


def to_coords(m: np.ndarray) -> np.ndarray:
    """Real coordinate vector of a Hermitian matrix."""
    d = m.shape[0]
    return np.einsum("kij,ji->k", hermitian_basis(d), m).real


def from_coords(v: np.ndarray, d: int) -> np.ndarray:
    return np.einsum("k,kij->ij", np.asarray(v, dtype=float), hermitian_basis(d))


def hull_residual(points: np.ndarray, x: np.ndarray) -> float:
    """Best L-infinity residual of expressing x as a convex mixture of points.

    points: (N, D) generator coordinates; x: (D,) target.
    """
    pts = np.asarray(points, dtype=float)
    x = np.asarray(x, dtype=float)
    n, d = pts.shape
    if np.abs(pts - x).max(axis=1).min() <= 1e-12:
        return 0.0
    # variables: lambda (n) >= 0, s >= 0; minimize s
    c = np.zeros(n + 1)
    c[-1] = 1.0
    g = pts.T  # (D, N)
    a_ub = np.block([[g, -np.ones((d, 1))], [-g, -np.ones((d, 1))]])
    b_ub = np.concatenate([x, -x])
    a_eq = np.zeros((1, n + 1))
    a_eq[0, :n] = 1.0
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * n + [(0, None)], method="highs")
    if not res.success:
        raise RuntimeError(f"membership LP failed: {res.message}")
    return float(res.fun)


def hull_contains(points: np.ndarray, x: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
    return hull_residual(points, x) <= tol


def _affine_basis(points: np.ndarray, tol: float = GEOM_TOL):
    """Mean origin and an orthonormal basis of the affine hull of points."""
    pts = np.asarray(points, dtype=float)
    origin = pts.mean(axis=0)
    m = pts - origin
    u, s, vt = np.linalg.svd(m, full_matrices=True)
    scale = max(1.0, s[0] if s.size else 0.0)
    r = int(np.sum(s > tol * scale))
    return origin, vt[:r].T, vt[r:].T


def _hrep(points: np.ndarray, k: int):
    """H-representation of conv(points) in R^k, allowing degenerate hulls.

    Returns (E, e, A, b) with conv(points) = {x : Ex = e, Ax <= b}.
    """
    pts = np.asarray(points, dtype=float)
    origin, basis, nullb = _affine_basis(pts)
    r = basis.shape[1]
    # equalities from the affine hull
    e_rows = nullb.T
    e_rhs = e_rows @ origin
    if r == 0:
        return e_rows, e_rhs, np.zeros((0, k)), np.zeros(0)
    y = (pts - origin) @ basis  # (N, r)
    if r == 1:
        lo, hi = float(y.min()), float(y.max())
        a = np.vstack([basis[:, 0], -basis[:, 0]])
        b = np.array([hi + basis[:, 0] @ origin, -(lo + basis[:, 0] @ origin)])
        return e_rows, e_rhs, a, b
    hull = ConvexHull(y)
    normals = hull.equations[:, :r]  # n.y + off <= 0 on the hull
    offsets = hull.equations[:, r]
    a = normals @ basis.T
    b = -offsets + normals @ (basis.T @ origin)
    return e_rows, e_rhs, a, b


def _interval_vertices(a: np.ndarray, b: np.ndarray, tol: float):
    """Vertices of {t in R : a t <= b}; assumes boundedness."""
    lo, hi = -np.inf, np.inf
    for ai, bi in zip(a.ravel(), b):
        if ai > tol:
            hi = min(hi, bi / ai)
        elif ai < -tol:
            lo = max(lo, bi / ai)
        elif bi < -tol:
            return None
    if not np.isfinite(lo) or not np.isfinite(hi):
        raise IntersectionTooComplex("unbounded one-dimensional section")
    if hi < lo - tol:
        return None
    if hi < lo:
        hi = lo = (hi + lo) / 2
    return np.array([[lo], [hi]])


def _dedupe(points: np.ndarray, tol: float = 1e-7) -> np.ndarray:
    out: list[np.ndarray] = []
    for p in points:
        if not any(np.abs(p - q).max() <= tol for q in out):
            out.append(p)
    return np.array(out)


def polytope_vertices(e_rows, e_rhs, a_rows, b_rhs, tol: float = GEOM_TOL):
    """Vertices of the bounded polyhedron {x : Ex = e, Ax <= b}.

    Returns None when the set is empty.  Implicit equalities (inequalities
    tight on the whole feasible set) are detected by LP and moved into the
    equality system recursively, so lower-dimensional intersections come
    out exactly as their vertex sets.
    """
    e_rows = np.atleast_2d(np.asarray(e_rows, dtype=float))
    a_rows = np.atleast_2d(np.asarray(a_rows, dtype=float))
    e_rhs = np.asarray(e_rhs, dtype=float).ravel()
    b_rhs = np.asarray(b_rhs, dtype=float).ravel()
    k = e_rows.shape[1] if e_rows.size else a_rows.shape[1]

    if e_rows.size:
        x0, *_ = np.linalg.lstsq(e_rows, e_rhs, rcond=None)
        if e_rhs.size and np.abs(e_rows @ x0 - e_rhs).max() > 1e-7:
            return None
        nb = null_space(e_rows, rcond=1e-10)
    else:
        x0 = np.zeros(k)
        nb = np.eye(k)
    m = nb.shape[1]
    if a_rows.size:
        a2 = a_rows @ nb
        b2 = b_rhs - a_rows @ x0
        # rows that vanish after the equality reduction are either vacuous
        # or witness emptiness; keeping them breaks qhull
        norms0 = np.linalg.norm(a2, axis=1) if a2.size else np.zeros(0)
        degenerate = norms0 <= 1e-12
        if degenerate.any():
            if b2[degenerate].min() < -MEMBERSHIP_TOL:
                return None
            a2, b2 = a2[~degenerate], b2[~degenerate]
    else:
        a2 = np.zeros((0, m))
        b2 = np.zeros(0)

    if m == 0:
        if b2.size and b2.min() < -MEMBERSHIP_TOL:
            return None
        return x0[None, :]

    if m == 1:
        verts = _interval_vertices(a2, b2, tol)
        if verts is None:
            return None
        return x0[None, :] + verts @ nb.T

    # Chebyshev center in the reduced coordinates
    norms = np.linalg.norm(a2, axis=1)
    c = np.zeros(m + 1)
    c[-1] = -1.0
    a_ub = np.hstack([a2, norms[:, None]])
    res = linprog(c, A_ub=a_ub, b_ub=b2, bounds=[(None, None)] * m + [(0, None)],
                  method="highs")
    if not res.success:
        return None
    radius = res.x[-1]
    center = res.x[:m]

    if radius > 1e-8:
        halfspaces = np.hstack([a2, -b2[:, None]])
        hs = HalfspaceIntersection(halfspaces, center)
        verts = _dedupe(hs.intersections)
        return x0[None, :] + verts @ nb.T

    # flat (lower-dimensional) feasible set: hunt for implicit equalities
    tight = []
    for i in range(a2.shape[0]):
        res_i = linprog(a2[i], A_ub=a2, b_ub=b2, bounds=[(None, None)] * m,
                        method="highs")
        if res_i.success and res_i.fun >= b2[i] - 1e-8:
            tight.append(i)
    if not tight:
        sub = center[None, :]
        return x0[None, :] + sub @ nb.T
    keep = [i for i in range(a2.shape[0]) if i not in set(tight)]
    sub = polytope_vertices(a2[tight], b2[tight], a2[keep], b2[keep], tol)
    if sub is None:
        return None
    return x0[None, :] + sub @ nb.T


def intersect_hulls(p_points: np.ndarray, q_points: np.ndarray):
    """Vertices of conv(P) intersected with conv(Q), or None when empty.

    Works inside the affine hull of the union of generators.  Raises
    IntersectionTooComplex beyond MAX_AFFINE_DIM / MAX_GENERATORS, where
    the double-description step would blow up.
    """
    p_points = np.asarray(p_points, dtype=float)
    q_points = np.asarray(q_points, dtype=float)
    if len(p_points) + len(q_points) > MAX_GENERATORS:
        raise IntersectionTooComplex("too many generators")
    allpts = np.vstack([p_points, q_points])
    origin, basis, _ = _affine_basis(allpts)
    k = basis.shape[1]
    if k > MAX_AFFINE_DIM:
        raise IntersectionTooComplex(f"affine hull dimension {k} exceeds limit")
    if k == 0:
        # every generator coincides
        return origin[None, :]
    u1 = (p_points - origin) @ basis
    u2 = (q_points - origin) @ basis
    e1, f1, a1, b1 = _hrep(u1, k)
    e2, f2, a2, b2 = _hrep(u2, k)
    e_rows = np.vstack([x for x in (e1, e2) if x.size]) if (e1.size or e2.size) else np.zeros((0, k))
    e_rhs = np.concatenate([f1, f2])
    a_rows = np.vstack([x for x in (a1, a2) if x.size]) if (a1.size or a2.size) else np.zeros((0, k))
    b_rhs = np.concatenate([b1, b2])
    verts = polytope_vertices(e_rows, e_rhs, a_rows, b_rhs)
    if verts is None:
        return None
    return origin[None, :] + verts @ basis.T
