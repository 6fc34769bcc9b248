"""Occupation-number states over discrete modes, with bosonic and
fermionic permutation-sum inner products.

A basis state is a finite multiset of mode indices; the bosonic product
of two basis states is the permanent of their 0/1 delta matrix and the
fermionic product its determinant.  Fast combinatorial paths are paired
with the brute-force permutation sum they must reproduce.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

BOSON = "b"
FERMION = "f"

#: amplitudes below this are dropped from vectors
AMP_TOL = 1e-15


def _sort_parity(modes: tuple[int, ...]) -> int:
    """Parity (+1/-1) of the stable sort permutation, by inversion count."""
    inv = sum(1 for i in range(len(modes)) for j in range(i + 1, len(modes))
              if modes[i] > modes[j])
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class OccState:
    """Canonical occupation-number basis state.

    Modes are stored sorted ascending; for fermions `sign` records the
    parity of the canonicalizing permutation, so permuted inputs denote
    the same basis state up to sign.  A repeated fermionic mode is legal:
    it is a null-norm vector, not an error.
    """

    stats: str
    modes: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        if self.stats not in (BOSON, FERMION):
            raise ValueError(f"stats must be 'b' or 'f', got {self.stats!r}")
        if any(m < 1 for m in self.modes):
            raise ValueError("mode indices must be positive")
        if tuple(sorted(self.modes)) != self.modes:
            raise ValueError("modes must be in canonical (ascending) order")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.modes)

    def occupations(self) -> Counter:
        return Counter(self.modes)

    def has_repeat(self) -> bool:
        return len(set(self.modes)) < len(self.modes)


def occ_state(modes, stats: str) -> OccState:
    """Canonicalize an input mode sequence (empty list = vacuum)."""
    modes = tuple(int(m) for m in modes)
    if any(m < 1 for m in modes):
        raise ValueError("mode indices must be positive")
    sign = _sort_parity(modes) if stats == FERMION else 1
    return OccState(stats=stats, modes=tuple(sorted(modes)), sign=sign)


@dataclass(frozen=True)
class QVector:
    """Finitely supported complex combination of basis states.

    Keys are canonical states with sign +1; a fermionic input sign is
    folded into the amplitude.
    """

    stats: str
    terms: dict[OccState, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for f, amp in self.terms.items():
            if f.stats != self.stats:
                raise ValueError("statistics mismatch among terms")
            amp = complex(amp) * f.sign
            if f.sign != 1:
                f = OccState(stats=f.stats, modes=f.modes, sign=1)
            if abs(amp) > AMP_TOL:
                clean[f] = clean.get(f, 0) + amp
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if abs(v) > AMP_TOL})

    def is_zero(self) -> bool:
        return not self.terms


def basis_vector(f: OccState) -> QVector:
    return QVector(stats=f.stats, terms={f: 1.0})


def zero_vector(stats: str) -> QVector:
    return QVector(stats=stats, terms={})


def add(c1: QVector, c2: QVector) -> QVector:
    if c1.stats != c2.stats:
        raise ValueError("statistics mismatch")
    terms = dict(c1.terms)
    for f, amp in c2.terms.items():
        terms[f] = terms.get(f, 0) + amp
    return QVector(stats=c1.stats, terms=terms)


def scale(gamma: complex, c: QVector) -> QVector:
    return QVector(stats=c.stats, terms={f: gamma * amp for f, amp in c.terms.items()})


def inner_basis(f: OccState, g: OccState) -> int:
    """Permutation-sum product of two basis states (fast path).

    Bosons: product of factorials of the occupation numbers when the
    multisets agree, else 0.  Fermions: 0 on any repeated mode, else the
    relative permutation parity (times the stored canonical signs).
    """
    if f.stats != g.stats:
        raise ValueError("statistics mismatch")
    if f.n != g.n:
        return 0
    if f.stats == BOSON:
        if f.occupations() != g.occupations():
            return 0
        return math.prod(math.factorial(k) for k in f.occupations().values())
    if f.has_repeat() or g.has_repeat():
        return 0
    if set(f.modes) != set(g.modes):
        return 0
    # both canonical ascending: relative parity is +1
    return f.sign * g.sign


def delta_matrix(f: OccState, g: OccState) -> np.ndarray:
    return np.array([[1 if a == b else 0 for b in g.modes] for a in f.modes], dtype=np.int64)


def ryser_permanent(m: np.ndarray) -> int:
    """Permanent of an integer matrix by Ryser's inclusion-exclusion formula."""
    m = np.asarray(m)
    n = m.shape[0]
    if n == 0:
        return 1
    if n > 12:
        raise ValueError("permanent limited to n <= 12")
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        rowsums = m[:, cols].sum(axis=1)
        prod = int(np.prod(rowsums))
        total += (-1) ** (n - len(cols)) * prod
    return total


def permutation_sum(f: OccState, g: OccState) -> int:
    """Brute-force evaluation of the defining permutation sum (oracle path)."""
    if f.stats != g.stats:
        raise ValueError("statistics mismatch")
    if f.n != g.n:
        return 0
    signs = f.sign * g.sign
    if f.stats == BOSON:
        return signs * ryser_permanent(delta_matrix(f, g))
    total = 0
    for perm in itertools.permutations(range(g.n)):
        sp = _sort_parity(perm)  # parity of the permutation itself
        if all(f.modes[a] == g.modes[perm[a]] for a in range(f.n)):
            total += sp
    return signs * total


def inner_basis_oracle(f: OccState, g: OccState) -> int:
    """Slow-path product: permanent (bosons) / determinant (fermions) of
    the 0/1 delta matrix, independent of the combinatorial fast path."""
    if f.stats != g.stats:
        raise ValueError("statistics mismatch")
    if f.n != g.n:
        return 0
    d = delta_matrix(f, g)
    if f.stats == BOSON:
        return f.sign * g.sign * ryser_permanent(d)
    if f.n == 0:
        return f.sign * g.sign
    det = int(round(float(np.linalg.det(d))))
    return f.sign * g.sign * det


def inner(c1: QVector, c2: QVector) -> complex:
    """Sesquilinear extension, conjugate-linear in the first argument."""
    if c1.stats != c2.stats:
        raise ValueError("statistics mismatch")
    total = 0j
    for f, lam in c1.terms.items():
        for g, mu in c2.terms.items():
            val = inner_basis(f, g)
            if val:
                total += np.conj(lam) * mu * val
    return complex(total)


def norm(c: QVector) -> float:
    val = inner(c, c)
    if abs(val.imag) > 1e-12 or val.real < -1e-12:
        raise ValueError(f"norm-squared {val} is not a nonnegative real")
    return math.sqrt(max(val.real, 0.0))


def pauli_check(f: OccState) -> bool:
    """True iff the fermionic state is excluded (null norm from a repeat)."""
    if f.stats != FERMION:
        raise ValueError("Pauli exclusion applies to fermionic states")
    return f.has_repeat()


def to_hilbert(f: OccState, n_modes: int) -> np.ndarray:
    """Unnormalized (anti)symmetrizer image in (C^m)^(x n).

    Sum over all n! position permutations of the elementary tensor of
    mode basis vectors, signed for fermions.  The Gram matrix of these
    images is n! times the permutation-sum Gram matrix.
    """
    if any(m > n_modes for m in f.modes):
        raise ValueError("mode index exceeds n_modes")
    n = f.n
    if n > 6:
        raise ValueError("tensor embedding limited to n <= 6")
    vec = np.zeros(n_modes ** n, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sp = _sort_parity(perm) if f.stats == FERMION else 1
        idx = 0
        for a in range(n):
            idx = idx * n_modes + (f.modes[perm[a]] - 1)
        vec[idx] += sp
    return vec * f.sign


def basis_states(stats: str, n: int, n_modes: int) -> list[OccState]:
    """All canonical basis states with n particles over modes 1..n_modes."""
    if stats == BOSON:
        combos = itertools.combinations_with_replacement(range(1, n_modes + 1), n)
    else:
        combos = itertools.combinations(range(1, n_modes + 1), n)
    return [occ_state(list(c), stats) for c in combos]
