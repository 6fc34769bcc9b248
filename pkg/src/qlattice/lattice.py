"""The lattice of convex subsets of the density-matrix state space.

Elements are represented by a small closed algebra of variants:

* ``Bottom`` -- the empty set,
* ``Top(dim)`` -- the whole state space of a given dimension,
* ``VPolytope`` -- convex hull of finitely many density matrices,
* ``Face`` -- the states supported in the range of a projector,
* ``JoinNode`` -- an unnormalizable convex hull of two elements,
* ``MeetNode`` -- an unnormalizable intersection (predicate semantics
  only: it answers ``contains`` and ``leq`` queries but is not
  materialized).

Meet is set intersection, join is the convex hull of the union,
negation is the Hilbert-Schmidt orthocomplement intersected with the
state space, and the order is set inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .hilbert import DensityMatrix, make_density, partial_trace, tensor, random_ket, pure_state

#: tolerance for tr((I-P) rho) face-membership checks
FACE_TOL = 1e-9
#: rank cut for projector eigenvalues
RANK_TOL = 1e-7
#: default number of sampled extreme points for probabilistic leq answers
LEQ_SAMPLES = 32
#: residual tolerance for (approximate) JoinNode membership
JOIN_TOL = 1e-6


@dataclass(frozen=True)
class StateSet:
    """Base class; `dim` is None only for Bottom, which unifies with any."""

    dim: int | None
    #: True when the representation is a declared finite approximation
    approximate: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class Bottom(StateSet):
    dim: int | None = None


@dataclass(frozen=True)
class Top(StateSet):
    pass


@dataclass(frozen=True, eq=False)
class VPolytope(StateSet):
    generators: tuple[DensityMatrix, ...] = ()


@dataclass(frozen=True, eq=False)
class Face(StateSet):
    projector: np.ndarray = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.projector).real))


@dataclass(frozen=True, eq=False)
class JoinNode(StateSet):
    left: StateSet = None
    right: StateSet = None


@dataclass(frozen=True, eq=False)
class MeetNode(StateSet):
    left: StateSet = None
    right: StateSet = None


def bottom() -> Bottom:
    return Bottom()


def top(dim: int) -> Top:
    return Top(dim=dim)


def vpolytope(generators, approximate: bool = False) -> StateSet:
    """Convex hull of density-matrix generators; duplicates removed."""
    gens: list[DensityMatrix] = []
    for g in generators:
        if not isinstance(g, DensityMatrix):
            g = make_density(g)
        if not any(g.isclose(h) for h in gens):
            gens.append(g)
    if not gens:
        return Bottom()
    dim = gens[0].dim
    if any(g.dim != dim for g in gens):
        raise ValueError("generators have mismatched dimensions")
    return VPolytope(dim=dim, generators=tuple(gens), approximate=approximate)


def face(projector) -> StateSet:
    """States supported in ran(P); collapses trivial ranks.

    Rank 0 is Bottom, rank 1 the singleton pure state, full rank is Top.
    """
    p = np.asarray(projector, dtype=complex)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValueError("projector must be a square matrix")
    if np.abs(p - p.conj().T).max() > 1e-8 or np.abs(p @ p - p).max() > 1e-8:
        raise ValueError("not a Hermitian idempotent within tolerance")
    d = p.shape[0]
    w, v = np.linalg.eigh((p + p.conj().T) / 2)
    keep = w > 0.5
    r = int(keep.sum())
    if r == 0:
        return Bottom()
    cols = v[:, keep]
    p_clean = cols @ cols.conj().T  # exact idempotent up to round-off
    if r == 1:
        return vpolytope([make_density(p_clean)])
    if r == d:
        return Top(dim=d)
    p_clean = np.ascontiguousarray(p_clean)
    p_clean.flags.writeable = False
    return Face(dim=d, projector=p_clean)


def _check_dims(a: StateSet, b: StateSet) -> int | None:
    if isinstance(a, Bottom) or isinstance(b, Bottom):
        return a.dim if not isinstance(a, Bottom) else b.dim
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return a.dim


def _range_projector_intersection(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Projector onto ran(P) intersected with ran(Q)."""
    w, v = np.linalg.eigh(p + q)
    cols = v[:, w > 2 - RANK_TOL]
    return cols @ cols.conj().T


def _coords_of(gens) -> np.ndarray:
    return np.array([geometry.to_coords(g.mat) for g in gens])


def _density_from_coords(v: np.ndarray, d: int) -> DensityMatrix:
    m = geometry.from_coords(v, d)
    m = (m + m.conj().T) / 2
    w, vecs = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    m = (vecs * w) @ vecs.conj().T
    return DensityMatrix(m / np.trace(m).real)


def meet(a: StateSet, b: StateSet) -> StateSet:
    """Set intersection."""
    _check_dims(a, b)
    if isinstance(a, Bottom) or isinstance(b, Bottom):
        return Bottom()
    if isinstance(a, Top):
        return b
    if isinstance(b, Top):
        return a
    if isinstance(a, (JoinNode, MeetNode)) or isinstance(b, (JoinNode, MeetNode)):
        return MeetNode(dim=a.dim, left=a, right=b)
    if isinstance(a, Face) and isinstance(b, Face):
        return face(_range_projector_intersection(a.projector, b.projector))
    if isinstance(a, Face) and isinstance(b, VPolytope):
        a, b = b, a
    if isinstance(a, VPolytope) and isinstance(b, Face):
        # tr((I-P) g) >= 0 termwise, so a mixture lies in the face iff
        # every contributing generator does
        comp = np.eye(a.dim) - b.projector
        gens = [g for g in a.generators if np.trace(comp @ g.mat).real <= FACE_TOL]
        return vpolytope(gens)
    # VPolytope with VPolytope: exact intersection in real coordinates
    try:
        verts = geometry.intersect_hulls(_coords_of(a.generators), _coords_of(b.generators))
    except geometry.IntersectionTooComplex:
        return MeetNode(dim=a.dim, left=a, right=b)
    if verts is None:
        return Bottom()
    return vpolytope([_density_from_coords(v, a.dim) for v in verts])


def join(a: StateSet, b: StateSet) -> StateSet:
    """Convex hull of the union."""
    _check_dims(a, b)
    if isinstance(a, Bottom):
        return b
    if isinstance(b, Bottom):
        return a
    if isinstance(a, Top) or isinstance(b, Top):
        return Top(dim=a.dim)
    if isinstance(a, VPolytope) and isinstance(b, VPolytope):
        return vpolytope(list(a.generators) + list(b.generators))
    return JoinNode(dim=a.dim, left=a, right=b)


def neg(a: StateSet) -> StateSet:
    """Hilbert-Schmidt orthocomplement, intersected with the state space."""
    if isinstance(a, Bottom):
        if a.dim is None:
            raise ValueError("cannot negate a dimensionless Bottom")
        return Top(dim=a.dim)
    if isinstance(a, Top):
        return Bottom(dim=a.dim)
    if isinstance(a, Face):
        return face(np.eye(a.dim) - a.projector)
    if isinstance(a, VPolytope):
        # for PSD sigma, rho: tr(sigma rho) = 0 iff supp(rho) <= ker(sigma),
        # so the orthocomplement is the face of the common kernel
        s = sum(g.mat for g in a.generators)
        w, v = np.linalg.eigh(s)
        cols = v[:, w < RANK_TOL]
        return face(cols @ cols.conj().T) if cols.shape[1] else Bottom(dim=a.dim)
    if isinstance(a, JoinNode):
        return meet(neg(a.left), neg(a.right))
    raise ValueError("negation is not supported on implicit meets")


def contains(a: StateSet, rho: DensityMatrix) -> bool:
    """Membership of a single state."""
    if not isinstance(a, Bottom) and a.dim != rho.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {rho.dim}")
    if isinstance(a, Bottom):
        return False
    if isinstance(a, Top):
        return True
    if isinstance(a, Face):
        return np.trace((np.eye(a.dim) - a.projector) @ rho.mat).real <= FACE_TOL
    if isinstance(a, VPolytope):
        return geometry.hull_contains(_coords_of(a.generators), geometry.to_coords(rho.mat))
    if isinstance(a, MeetNode):
        return contains(a.left, rho) and contains(a.right, rho)
    return _join_contains(a, rho)


def _join_leaves(a: StateSet) -> list[StateSet]:
    if isinstance(a, JoinNode):
        return _join_leaves(a.left) + _join_leaves(a.right)
    return [a]


def _join_contains(a: JoinNode, rho: DensityMatrix) -> bool:
    """Membership in conv(leaves) via one conic feasibility problem.

    rho is in the hull iff it splits as a sum of one element per leaf cone
    (cone over a convex set C = {t c : t >= 0, c in C}).  Solved as a
    semidefinite feasibility problem; residual tolerance JOIN_TOL, so the
    answer is approximate by construction.
    """
    import cvxpy as cp

    d = rho.dim
    parts = []
    constraints = []
    for leaf in _join_leaves(a):
        if isinstance(leaf, Bottom):
            continue
        x = cp.Variable((d, d), hermitian=True)
        constraints.append(x >> 0)
        if isinstance(leaf, Top):
            pass
        elif isinstance(leaf, Face):
            p = leaf.projector
            constraints.append(x == p @ x @ p)
        elif isinstance(leaf, VPolytope):
            lam = cp.Variable(len(leaf.generators), nonneg=True)
            x_expr = sum(lam[i] * leaf.generators[i].mat for i in range(len(leaf.generators)))
            constraints.append(x == x_expr)
        else:
            raise ValueError("implicit meets cannot appear under a join")
        parts.append(x)
    if not parts:
        return False
    total = sum(parts)
    objective = cp.Minimize(cp.norm(total - rho.mat, "fro"))
    prob = cp.Problem(objective, constraints)
    prob.solve(solver=cp.CLARABEL)
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        return False
    return prob.value is not None and prob.value <= JOIN_TOL


def _sample_face_extreme(a: Face | Top, rng: np.random.Generator) -> DensityMatrix:
    d = a.dim
    if isinstance(a, Top):
        return pure_state(random_ket(d, rng))
    w, v = np.linalg.eigh(a.projector)
    cols = v[:, w > 0.5]
    amp = cols @ (rng.standard_normal(cols.shape[1]) + 1j * rng.standard_normal(cols.shape[1]))
    amp = amp / np.linalg.norm(amp)
    return make_density(np.outer(amp, amp.conj()))


def leq(a: StateSet, b: StateSet, samples: int = LEQ_SAMPLES, seed: int = 0) -> bool:
    """Set inclusion a <= b.

    Exact on the normalized variants, except Face <= JoinNode (and
    Top <= JoinNode) which is decided by sampling extreme points of the
    face: sound for False, probabilistic for True.
    """
    _check_dims(a, b)
    if isinstance(a, Bottom):
        return True
    if isinstance(b, Top):
        return True
    if isinstance(b, MeetNode):
        return leq(a, b.left, samples, seed) and leq(a, b.right, samples, seed)
    if isinstance(a, JoinNode):
        return leq(a.left, b, samples, seed) and leq(a.right, b, samples, seed)
    if isinstance(a, MeetNode):
        if leq(a.left, b, samples, seed) or leq(a.right, b, samples, seed):
            return True
        raise ValueError("cannot decide inclusion of an implicit meet")
    if isinstance(a, VPolytope):
        return all(contains(b, g) for g in a.generators)
    if isinstance(a, (Face, Top)):
        if isinstance(b, Face) and isinstance(a, Face):
            comp = np.eye(b.dim) - b.projector
            return np.abs(comp @ a.projector).max() <= 1e-8
        if isinstance(b, (Face, VPolytope)) :
            # a rank >= 2 face (or Top) has infinitely many extreme points,
            # all extreme in the state space, so it never fits in a polytope;
            # Top fits in a proper face never
            return False
        # b is a JoinNode: probabilistic sampling of extreme points
        rng = np.random.default_rng(seed)
        return all(contains(b, _sample_face_extreme(a, rng)) for _ in range(samples))
    raise ValueError(f"unsupported variant {type(a).__name__}")


def same_set(a: StateSet, b: StateSet) -> bool:
    """Extensional equality via mutual inclusion."""
    return leq(a, b) and leq(b, a)


def lambda_map(c1: StateSet, c2: StateSet) -> StateSet:
    """conv(C1 (x) C2), generator-wise on polytopes."""
    if isinstance(c1, Bottom) or isinstance(c2, Bottom):
        return Bottom()
    for c in (c1, c2):
        if not isinstance(c, VPolytope):
            raise ValueError(
                f"{type(c).__name__} input: conv of a tensor product is only "
                "finitely generated for polytopes")
    gens = [tensor(g1, g2) for g1 in c1.generators for g2 in c2.generators]
    return vpolytope(gens)


def tau_i(c: StateSet, dims: tuple[int, int], i: int) -> StateSet:
    """Partial-trace image of a convex set; tr_i traces out subsystem i."""
    if i not in (1, 2):
        raise ValueError("subsystem index must be 1 or 2")
    d1, d2 = dims
    reduced_dim = d2 if i == 1 else d1
    if isinstance(c, Bottom):
        return Bottom()
    if c.dim != d1 * d2:
        raise ValueError(f"dims {dims} do not factor dimension {c.dim}")
    if isinstance(c, Top):
        return Top(dim=reduced_dim)
    if isinstance(c, VPolytope):
        # the image of a hull under a linear map is the hull of the images
        return vpolytope([partial_trace(g, dims, i) for g in c.generators],
                         approximate=c.approximate)
    raise ValueError(f"partial-trace image unsupported for {type(c).__name__}")


def tau(c: StateSet, dims: tuple[int, int]) -> tuple[StateSet, StateSet]:
    return tau_i(c, dims, 1), tau_i(c, dims, 2)
