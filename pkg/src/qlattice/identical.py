"""Lattice of convex state sets restricted to a permutation-symmetry sector.

All lattice work happens in sector coordinates (dimension n(n+1)/2 or
n(n-1)/2); states are embedded into the full bipartite space only at the
boundary.  The sector basis is orthonormal under tr(A B+), so
Hilbert-Schmidt orthocomplements commute with the embedding and the
inherited operations stay exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from . import lattice
from .hilbert import (
    BOSON,
    FERMION,
    DensityMatrix,
    SectorSpace,
    make_density,
    partial_trace,
    purity,
    sector_space,
)
from .lattice import Bottom, Face, JoinNode, StateSet, Top, VPolytope


@dataclass(frozen=True, eq=False)
class SectorStateSet:
    """A convex set of sector-supported states, in sector coordinates."""

    sector: SectorSpace
    inner: StateSet

    def __post_init__(self):
        if not isinstance(self.inner, Bottom) and self.inner.dim != self.sector.sector_dim:
            raise ValueError(
                f"inner set has dim {self.inner.dim}, sector dim is {self.sector.sector_dim}")


def sector_top(sector: SectorSpace) -> SectorStateSet:
    if sector.is_empty:
        raise ValueError("sector is empty")
    return SectorStateSet(sector, Top(dim=sector.sector_dim))


def sector_bottom(sector: SectorSpace) -> SectorStateSet:
    return SectorStateSet(sector, Bottom())


def compress(sector: SectorSpace, rho: DensityMatrix) -> DensityMatrix:
    """Express a sector-supported full-space state in sector coordinates."""
    inner = sector.compress_matrix(rho.mat)
    if abs(np.trace(inner).real - 1.0) > 1e-8:
        raise ValueError("state is not supported in the sector")
    return make_density(inner / np.trace(inner).real)


def sector_vpolytope(sector: SectorSpace, full_space_generators) -> SectorStateSet:
    gens = [compress(sector, g) for g in full_space_generators]
    return SectorStateSet(sector, lattice.vpolytope(gens))


def _same_sector(a: SectorStateSet, b: SectorStateSet) -> SectorSpace:
    if a.sector.n != b.sector.n or a.sector.sign != b.sector.sign:
        raise ValueError("sector mismatch")
    return a.sector


def embed(s: SectorStateSet) -> StateSet:
    """Canonical extension to the full n^2-dimensional space."""
    sec, inner = s.sector, s.inner
    if isinstance(inner, Bottom):
        return Bottom()
    if isinstance(inner, Top):
        return lattice.face(sec.projector())
    if isinstance(inner, VPolytope):
        return lattice.vpolytope(
            [make_density(sec.embed_matrix(g.mat)) for g in inner.generators],
            approximate=inner.approximate)
    if isinstance(inner, Face):
        return lattice.face(sec.embed_matrix(inner.projector))
    if isinstance(inner, JoinNode):
        return lattice.join(embed(SectorStateSet(sec, inner.left)),
                            embed(SectorStateSet(sec, inner.right)))
    raise ValueError(f"cannot embed {type(inner).__name__}")


def meet_pm(a: SectorStateSet, b: SectorStateSet) -> SectorStateSet:
    sec = _same_sector(a, b)
    return SectorStateSet(sec, lattice.meet(a.inner, b.inner))


def join_pm(a: SectorStateSet, b: SectorStateSet) -> SectorStateSet:
    sec = _same_sector(a, b)
    return SectorStateSet(sec, lattice.join(a.inner, b.inner))


def neg_pm(a: SectorStateSet) -> SectorStateSet:
    inner = a.inner
    if isinstance(inner, Bottom):
        return sector_top(a.sector)
    return SectorStateSet(a.sector, lattice.neg(inner))


def leq_pm(a: SectorStateSet, b: SectorStateSet) -> bool:
    _same_sector(a, b)
    return lattice.leq(a.inner, b.inner)


def _top_approx_generators(sec: SectorSpace) -> list[DensityMatrix]:
    """Finite outer stand-in for the whole sector body.

    Basis projectors plus pairwise midpoints; a declared approximation,
    used only where the exact image would not be finitely generated.
    """
    s = sec.sector_dim
    gens = []
    for i in range(s):
        m = np.zeros((s, s), dtype=complex)
        m[i, i] = 1.0
        gens.append(make_density(m))
    for i in range(s):
        for j in range(i + 1, s):
            m = np.zeros((s, s), dtype=complex)
            m[i, i] = m[j, j] = 0.5
            gens.append(make_density(m))
    return gens


def tau_i_pm(c: SectorStateSet, i: int) -> StateSet:
    """Reduced single-particle image of a sector set."""
    if i not in (1, 2):
        raise ValueError("subsystem index must be 1 or 2")
    sec = c.sector
    inner = c.inner
    if isinstance(inner, Bottom):
        return Bottom()
    approx = False
    if isinstance(inner, Top):
        inner = lattice.VPolytope(dim=sec.sector_dim,
                                  generators=tuple(_top_approx_generators(sec)))
        approx = True
    if not isinstance(inner, VPolytope):
        raise ValueError(f"partial-trace image unsupported for {type(inner).__name__}")
    dims = (sec.n, sec.n)
    reduced = [partial_trace(make_density(sec.embed_matrix(g.mat)), dims, i)
               for g in inner.generators]
    return lattice.vpolytope(reduced, approximate=approx or inner.approximate)


def tau_pm(c: SectorStateSet) -> tuple[StateSet, StateSet]:
    return tau_i_pm(c, 1), tau_i_pm(c, 2)


def lambda_defect(c1: StateSet, c2: StateSet, sign: str) -> float:
    """How far the product-state construction leaves the symmetry sector.

    Builds conv(C1 (x) C2) generator-wise and returns the largest sector
    leakage tr((I - P) g) over the product generators; 0 means the whole
    product set already lies in the sector.
    """
    prod = lattice.lambda_map(c1, c2)
    if isinstance(prod, Bottom):
        return 0.0
    n = c1.generators[0].dim
    sec = sector_space(n, sign)
    comp = np.eye(n * n) - sec.projector()
    worst = max(np.trace(comp @ g.mat).real for g in prod.generators)
    return float(max(worst, 0.0))


def random_sector_state(sec: SectorSpace, rng: np.random.Generator) -> DensityMatrix:
    """Pure sector state with Gaussian amplitudes in the sector basis."""
    if sec.is_empty:
        raise ValueError("sector is empty")
    s = sec.sector_dim
    amp = rng.standard_normal(s) + 1j * rng.standard_normal(s)
    amp = amp / np.linalg.norm(amp)
    full = sec.isometry @ amp
    return make_density(np.outer(full, full.conj()))


def reduced_purity_scan(sign: str, n: int, samples: int, seed: int = 0) -> dict:
    """Purity statistics of reduced states of random pure sector states.

    Each sample derives its own generator from (seed, index), so results
    are independent of evaluation order.  For fermions the scan asserts
    the reduced purity never exceeds 1/2.
    """
    sec = sector_space(n, sign)
    if sec.is_empty:
        raise ValueError(f"sector ({sign}, n={n}) is empty")
    purities = []
    for idx in range(samples):
        rng = np.random.default_rng([seed, idx])
        rho = random_sector_state(sec, rng)
        purities.append(purity(partial_trace(rho, (n, n), 2)))
    pur = np.array(purities)
    if sign == FERMION and pur.max() > 0.5 + 1e-9:
        raise AssertionError(f"fermionic reduced purity {pur.max()} exceeds 1/2")
    return {
        "sign": sign,
        "n": n,
        "samples": samples,
        "seed": seed,
        "purity_min": float(pur.min()),
        "purity_max": float(pur.max()),
        "purity_mean": float(pur.mean()),
    }


def sector_dimension_table(max_n: int = 8) -> str:
    """CSV table of sector dimensions for n = 1..max_n."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "boson_dim", "fermion_dim", "total"])
    for n in range(1, max_n + 1):
        writer.writerow([n, sector_space(n, BOSON).sector_dim,
                         sector_space(n, FERMION).sector_dim, n * n])
    return buf.getvalue()
