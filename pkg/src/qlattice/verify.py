"""Randomized and exhaustive verification suites.

Each suite returns a plain dict report: {"suite", "passed", "checked",
"failures", ...}.  All randomness flows from a single seed with
deterministic per-task derivation, so identical configurations give
identical reports.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import geometry, identical, lattice, qsets, qspace
from .hilbert import (
    BOSON,
    FERMION,
    make_density,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    permutation_operator,
    purity,
    random_density,
    sector_space,
    tensor,
)


@dataclass
class RunConfig:
    seed: int = field(default_factory=lambda: int(os.environ.get("QL_SEED", "0")))
    tolerances: dict[str, float] = field(default_factory=dict)
    samples: dict[str, int] = field(default_factory=dict)
    output: str = "json"

    def tol(self, name: str, default: float) -> float:
        v = self.tolerances.get(name, default)
        if v <= 0:
            raise ValueError(f"tolerance {name} must be positive")
        return v

    def count(self, suite: str, default: int) -> int:
        return self.samples.get(suite, default)


def _report(name: str, checked: int, failures: list, **extra) -> dict:
    out = {"suite": name, "passed": not failures, "checked": checked,
           "failures": sorted(str(f) for f in failures)[:20]}
    out.update(extra)
    return out


def verify_sector_dims(config: RunConfig | None = None, max_n: int = 6) -> dict:
    """Combinatorial sector bases against eigen-decomposition of the swap."""
    failures = []
    checked = 0
    for n in range(1, max_n + 1):
        p = permutation_operator(n)
        if np.abs(p @ p - np.eye(n * n)).max() != 0.0:
            failures.append(f"swap not involutive at n={n}")
        w = np.linalg.eigvalsh(p.real)
        plus_eig = int(np.sum(w > 0))
        minus_eig = int(np.sum(w < 0))
        for sign, expected, eig_count in ((BOSON, n * (n + 1) // 2, plus_eig),
                                          (FERMION, n * (n - 1) // 2, minus_eig)):
            sec = sector_space(n, sign)
            checked += 1
            if sec.sector_dim != expected or sec.sector_dim != eig_count:
                failures.append(f"n={n} sign={sign}: dim {sec.sector_dim}, "
                                f"formula {expected}, eigenspace {eig_count}")
                continue
            iso = sec.isometry
            if iso.size and np.abs(iso.conj().T @ iso - np.eye(sec.sector_dim)).max() > 1e-9:
                failures.append(f"n={n} sign={sign}: isometry not orthonormal")
            s = 1 if sign == BOSON else -1
            for k in sec.basis:
                if np.abs(p @ k.amps - s * k.amps).max() > 1e-9:
                    failures.append(f"n={n} sign={sign}: basis vector not an eigenvector")
    return _report("sector-dims", checked, failures)


def _random_vpolytope(dim: int, rng: np.random.Generator, max_gens: int = 3):
    k = int(rng.integers(1, max_gens + 1))
    return lattice.vpolytope([random_density(dim, rng) for _ in range(k)])


def _random_face(dim: int, rng: np.random.Generator):
    rank = int(rng.integers(1, dim))
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, _ = np.linalg.qr(g)
    cols = q[:, :rank]
    return lattice.face(cols @ cols.conj().T)


def _multiset_equal(a, b, atol=1e-9) -> bool:
    if not isinstance(a, lattice.VPolytope) or not isinstance(b, lattice.VPolytope):
        return type(a) is type(b)
    if len(a.generators) != len(b.generators):
        return False
    remaining = list(b.generators)
    for g in a.generators:
        for idx, h in enumerate(remaining):
            if g.isclose(h, atol):
                del remaining[idx]
                break
        else:
            return False
    return True


def verify_lattice_laws(config: RunConfig | None = None) -> dict:
    """Bounded-poset and lattice laws on randomized instances in dims 2-4."""
    config = config or RunConfig()
    trials = config.count("lattice-laws", 500)
    rng = np.random.default_rng([config.seed, 1])
    failures = []
    checked = 0
    for t in range(trials):
        dim = int(rng.integers(2, 5))
        a = _random_vpolytope(dim, rng)
        b = _random_vpolytope(dim, rng)
        c = _random_vpolytope(dim, rng, max_gens=2)
        fa = _random_face(dim, rng)
        checked += 1
        try:
            # reflexivity
            for x in (a, b, fa, lattice.top(dim), lattice.bottom()):
                if not lattice.leq(x, x):
                    failures.append(f"trial {t}: leq not reflexive on {type(x).__name__}")
            # bounds
            if not lattice.leq(lattice.bottom(), a) or not lattice.leq(a, lattice.top(dim)):
                failures.append(f"trial {t}: bounds violated")
            # transitivity on a constructed chain a <= a|b <= (a|b)|c
            ab = lattice.join(a, b)
            abc = lattice.join(ab, c)
            if not (lattice.leq(a, ab) and lattice.leq(ab, abc) and lattice.leq(a, abc)):
                failures.append(f"trial {t}: transitivity chain broke")
            # antisymmetry: same hull, different generator list
            interior = make_density(sum(g.mat for g in a.generators) / len(a.generators))
            a_fat = lattice.vpolytope(list(a.generators) + [interior])
            if not (lattice.leq(a, a_fat) and lattice.leq(a_fat, a)):
                failures.append(f"trial {t}: mutual inclusion of equal hulls failed")
            # join commutativity / associativity (generator multisets)
            if not _multiset_equal(lattice.join(a, b), lattice.join(b, a)):
                failures.append(f"trial {t}: join not commutative")
            if not _multiset_equal(lattice.join(lattice.join(a, b), c),
                                   lattice.join(a, lattice.join(b, c))):
                failures.append(f"trial {t}: join not associative")
            # absorption
            m = lattice.meet(a, ab)
            if not (lattice.leq(m, a) and lattice.leq(a, m)):
                failures.append(f"trial {t}: meet(a, join(a,b)) != a")
            j = lattice.join(a, lattice.meet(a, b))
            if not (lattice.leq(j, a) and lattice.leq(a, j)):
                failures.append(f"trial {t}: join(a, meet(a,b)) != a")
            # negation: bounds, involution on faces, order reversal
            if not isinstance(lattice.neg(lattice.top(dim)), lattice.Bottom):
                failures.append(f"trial {t}: neg(top) != bottom")
            if not isinstance(lattice.neg(lattice.Bottom(dim=dim)), lattice.Top):
                failures.append(f"trial {t}: neg(bottom) != top")
            nn = lattice.neg(lattice.neg(fa))
            if isinstance(fa, lattice.Face):
                if not (isinstance(nn, lattice.Face)
                        and np.abs(nn.projector - fa.projector).max() <= 1e-8):
                    failures.append(f"trial {t}: double negation moved a face")
            if not lattice.leq(lattice.neg(ab), lattice.neg(a)):
                failures.append(f"trial {t}: neg not order-reversing")
        except Exception as exc:  # pragma: no cover - any blow-up is a failure
            failures.append(f"trial {t}: {type(exc).__name__}: {exc}")
    return _report("lattice-laws", checked, failures)


def verify_orthogonality(config: RunConfig | None = None) -> dict:
    """tr(sigma rho+) = 0 between a set and its orthocomplement."""
    config = config or RunConfig()
    instances = config.count("orthogonality", 200)
    tol = config.tol("orthogonality", 1e-9)
    rng = np.random.default_rng([config.seed, 2])
    failures = []
    checked = 0
    for t in range(instances):
        dim = int(rng.integers(2, 5))
        rank = int(rng.integers(1, dim))
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        q, _ = np.linalg.qr(g)
        sub = q[:, :rank]
        gens = []
        for _ in range(int(rng.integers(1, 4))):
            small = random_density(rank, rng)
            gens.append(make_density(sub @ small.mat @ sub.conj().T))
        a = lattice.vpolytope(gens)
        na = lattice.neg(a)
        checked += 1
        if isinstance(na, lattice.Bottom):
            failures.append(f"trial {t}: orthocomplement unexpectedly empty")
            continue
        for _ in range(3):
            if isinstance(na, lattice.VPolytope):
                sigma = na.generators[int(rng.integers(len(na.generators)))]
            else:
                sigma = lattice._sample_face_extreme(na, rng)
            worst = max(abs(np.trace(sigma.mat @ g.mat.conj().T)) for g in gens)
            if worst > tol:
                failures.append(f"trial {t}: overlap {worst}")
    return _report("orthogonality", checked, failures)


def verify_tau_identical(config: RunConfig | None = None) -> dict:
    """The two reduced-set maps coincide on sector polytopes."""
    config = config or RunConfig()
    instances = config.count("tau-identical", 200)
    tol = config.tol("tau-identical", 1e-9)
    rng = np.random.default_rng([config.seed, 3])
    failures = []
    checked = 0
    for t in range(instances):
        n = int(rng.integers(2, 5))
        sign = BOSON if rng.integers(2) else FERMION
        sec = sector_space(n, sign)
        gens = [random_density(sec.sector_dim, rng) for _ in range(int(rng.integers(1, 4)))]
        c = identical.SectorStateSet(sec, lattice.vpolytope(gens))
        t1, t2 = identical.tau_pm(c)
        checked += 1
        ok = (isinstance(t1, lattice.VPolytope) and isinstance(t2, lattice.VPolytope))
        if ok:
            c1 = np.array([geometry.to_coords(g.mat) for g in t1.generators])
            c2 = np.array([geometry.to_coords(g.mat) for g in t2.generators])
            r12 = max(geometry.hull_residual(c2, x) for x in c1)
            r21 = max(geometry.hull_residual(c1, x) for x in c2)
            ok = max(r12, r21) <= tol
        if not ok:
            failures.append(f"trial {t} (n={n}, {sign}): reduced sets differ")
    return _report("tau-identical", checked, failures)


def verify_mixed_reduced(config: RunConfig | None = None) -> dict:
    """Reduced states of pure fermionic bipartite states are always mixed."""
    config = config or RunConfig()
    total = config.count("mixed-reduced", 500)
    failures = []
    checked = 0
    per_n = max(1, total // 4)
    for n in (2, 3, 4, 5):
        rep = identical.reduced_purity_scan(FERMION, n, per_n, seed=config.seed)
        checked += per_n
        if rep["purity_max"] > 0.5 + 1e-9:
            failures.append(f"n={n}: purity_max {rep['purity_max']}")
        if rep["purity_max"] >= 1 - 1e-6:
            failures.append(f"n={n}: reduced state nearly pure")
    return _report("mixed-reduced", checked, failures)


def verify_lambda_obstruction(config: RunConfig | None = None) -> dict:
    """Known leakage values of product sets out of the symmetry sectors."""
    from .hilbert import basis_ket, pure_state

    failures = []
    p0 = lattice.vpolytope([pure_state(basis_ket(2, 0))])
    p1 = lattice.vpolytope([pure_state(basis_ket(2, 1))])
    cases = [
        ((p0, p1, FERMION), 0.5),
        ((p0, p0, BOSON), 0.0),
        ((p0, p0, FERMION), 1.0),
    ]
    for (c1, c2, sign), expected in cases:
        got = identical.lambda_defect(c1, c2, sign)
        if abs(got - expected) > 1e-9:
            failures.append(f"defect({sign}) = {got}, expected {expected}")
    return _report("lambda-obstruction", len(cases), failures)


def verify_qspace_oracle(config: RunConfig | None = None) -> dict:
    """Fast-path products equal the permanent/determinant permutation sums,
    exhaustively for n <= 6 over 4 modes (repeats included)."""
    failures = []
    checked = 0
    for stats in (qspace.BOSON, qspace.FERMION):
        for n in range(0, 7):
            states = [qspace.occ_state(list(c), stats)
                      for c in itertools.combinations_with_replacement(range(1, 5), n)]
            for f in states:
                for g in states:
                    checked += 1
                    if qspace.inner_basis(f, g) != qspace.inner_basis_oracle(f, g):
                        failures.append(f"{stats}:{f.modes} vs {g.modes}")
    return _report("qspace-oracle", checked, failures)


def verify_pauli(config: RunConfig | None = None) -> dict:
    """Fermionic repeats have exactly null norm; no others do (n <= 5, 5 modes)."""
    failures = []
    checked = 0
    for n in range(1, 6):
        for modes in itertools.product(range(1, 6), repeat=n):
            f = qspace.occ_state(list(modes), qspace.FERMION)
            checked += 1
            excluded = qspace.pauli_check(f)
            nsq = qspace.inner_basis(f, f)
            if excluded != (len(set(modes)) < n) or (nsq == 0) != excluded:
                failures.append(f"modes {modes}")
    return _report("pauli-exclusion", checked, failures)


def verify_gram(config: RunConfig | None = None) -> dict:
    """Occupation-state Gram matrices match the tensor-space symmetrizer
    images, up to the n! correspondence constant (exact integers)."""
    failures = []
    checked = 0
    m = 4
    for stats in (qspace.BOSON, qspace.FERMION):
        for n in range(0, 5):
            states = [qspace.occ_state(list(c), stats)
                      for c in itertools.combinations_with_replacement(range(1, m + 1), n)]
            vecs = [qspace.to_hilbert(f, m) for f in states]
            scale = math.factorial(n)
            for i, f in enumerate(states):
                for j, g in enumerate(states):
                    checked += 1
                    lhs = int(vecs[i] @ vecs[j])
                    rhs = scale * qspace.inner_basis(f, g)
                    if lhs != rhs:
                        failures.append(f"{stats} {f.modes}|{g.modes}: {lhs} != {rhs}")
    return _report("gram-correspondence", checked, failures, constant="n!")


def verify_qset_permutation(config: RunConfig | None = None) -> dict:
    """Exchange of indistinguishable elements is unobservable."""
    config = config or RunConfig()
    trials = config.count("qset-permutation", 10_000)
    rng = np.random.default_rng([config.seed, 4])
    failures = []
    kinds = [f"k{i}" for i in range(6)]
    for t in range(trials):
        counts = {k: int(rng.integers(0, 5)) for k in kinds}
        occupied = [k for k, c in counts.items() if c > 0]
        if not occupied:
            counts[kinds[0]] = 1
            occupied = [kinds[0]]
        x = qsets.pure_qset(counts)
        k = occupied[int(rng.integers(len(occupied)))]
        if not qsets.permutation_theorem_check(x, k):
            failures.append(f"trial {t}: {counts} kind {k}")
    return _report("qset-permutation", trials, failures)


def verify_ppt_werner(config: RunConfig | None = None) -> dict:
    """Locate the Werner-family entanglement boundary by bisection."""
    from .hilbert import basis_ket, pure_state, symmetrize

    singlet = pure_state(symmetrize(basis_ket(2, 0), basis_ket(2, 1), FERMION))
    eye4 = maximally_mixed(4)

    def min_eig(p: float) -> float:
        w = make_density(p * singlet.mat + (1 - p) * eye4.mat)
        return float(np.linalg.eigvalsh(partial_transpose(w.mat, (2, 2))).min())

    lo, hi = 0.0, 1.0  # min_eig(0) > 0 > min_eig(1)
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2
        if min_eig(mid) < 0:
            hi = mid
        else:
            lo = mid
    boundary = (lo + hi) / 2
    failures = []
    if abs(boundary - 1 / 3) > 1e-6:
        failures.append(f"boundary at {boundary}, expected 1/3")
    # cross-check against the analytic spectrum (1 - 3p)/4
    for p in (0.0, 0.2, 1 / 3, 0.6, 1.0):
        if abs(min_eig(p) - (1 - 3 * p) / 4) > 1e-9:
            failures.append(f"analytic spectrum mismatch at p={p}")
    return _report("ppt-werner", 6, failures, boundary=boundary)


SUITES = {
    "sector-dims": verify_sector_dims,
    "lattice-laws": verify_lattice_laws,
    "orthogonality": verify_orthogonality,
    "tau-identical": verify_tau_identical,
    "mixed-reduced": verify_mixed_reduced,
    "lambda-obstruction": verify_lambda_obstruction,
    "qspace-oracle": verify_qspace_oracle,
    "pauli-exclusion": verify_pauli,
    "gram-correspondence": verify_gram,
    "qset-permutation": verify_qset_permutation,
    "ppt-werner": verify_ppt_werner,
}
