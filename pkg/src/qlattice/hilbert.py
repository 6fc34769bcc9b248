"""Finite-dimensional states, observables, tensor products and symmetry sectors.

Everything here is dense complex linear algebra on single-particle
dimensions n <= 8 (bipartite dimension <= 64).  All values are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

BOSON = "+"
FERMION = "-"

#: entrywise Hermiticity / trace / PSD tolerance for state validation
ATOL = 1e-9
#: tolerance for the idempotency (purity) test rho^2 = rho
PURITY_ATOL = 1e-8


class Separability(enum.Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"
    UNDECIDED = "undecided"


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex ndarray."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def is_hermitian(m: np.ndarray, atol: float = ATOL) -> bool:
    return m.shape[0] == m.shape[1] and np.abs(m - m.conj().T).max() <= atol


@dataclass(frozen=True, eq=False)
class Ket:
    """A normalized pure-state vector."""

    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex).reshape(-1)
        n = np.linalg.norm(a)
        if abs(n - 1.0) > ATOL:
            raise ValueError(f"ket is not normalized (norm {n})")
        object.__setattr__(self, "amps", _freeze(a))

    @property
    def dim(self) -> int:
        return self.amps.shape[0]


def ket(amps) -> Ket:
    """Build a Ket, normalizing the input amplitudes."""
    a = np.asarray(amps, dtype=complex).reshape(-1)
    n = np.linalg.norm(a)
    if n <= ATOL:
        raise ValueError("cannot normalize the zero vector")
    return Ket(a / n)


def basis_ket(dim: int, i: int) -> Ket:
    a = np.zeros(dim, dtype=complex)
    a[i] = 1.0
    return Ket(a)


def ket_tensor(a: Ket, b: Ket) -> Ket:
    return Ket(np.kron(a.amps, b.amps))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Self-adjoint, positive, unit-trace matrix (a mixed or pure state)."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.abs(m - m.conj().T).max() > ATOL:
            raise ValueError("density matrix is not self-adjoint")
        if abs(np.trace(m).real - 1.0) > ATOL or abs(np.trace(m).imag) > ATOL:
            raise ValueError(f"trace is {np.trace(m)}, expected 1")
        w = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if w.min() < -ATOL:
            raise ValueError(f"negative eigenvalue {w.min()}")
        object.__setattr__(self, "mat", _freeze(m))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def isclose(self, other: "DensityMatrix", atol: float = ATOL) -> bool:
        return self.dim == other.dim and np.abs(self.mat - other.mat).max() <= atol


def make_density(m) -> DensityMatrix:
    """Validate a matrix as a density operator.

    Eigenvalues in [-ATOL, 0) are clipped to zero (round-off);
    anything below -ATOL is rejected.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("density matrix must be square")
    if np.abs(a - a.conj().T).max() > ATOL:
        raise ValueError("matrix is not self-adjoint within tolerance")
    a = (a + a.conj().T) / 2
    tr = np.trace(a).real
    if abs(tr - 1.0) > ATOL:
        raise ValueError(f"trace is {tr}, expected 1")
    w, v = np.linalg.eigh(a)
    if w.min() < -ATOL:
        raise ValueError(f"negative eigenvalue {w.min()}")
    if w.min() < 0:
        w = np.clip(w, 0.0, None)
        a = (v * w) @ v.conj().T
        a = a / np.trace(a).real
    return DensityMatrix(a)


def pure_state(psi: Ket) -> DensityMatrix:
    return DensityMatrix(np.outer(psi.amps, psi.amps.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def born_mean(rho: DensityMatrix, a) -> float:
    """Expectation value tr(rho A) of a self-adjoint observable."""
    a = as_matrix(a)
    if a.shape != rho.mat.shape:
        raise ValueError("observable dimension mismatch")
    if not is_hermitian(a):
        raise ValueError("observable is not self-adjoint")
    val = np.trace(rho.mat @ a)
    if abs(val.imag) > ATOL:
        raise ValueError(f"imaginary residue {val.imag} exceeds tolerance")
    return float(val.real)


def purity(rho: DensityMatrix) -> float:
    return float(np.trace(rho.mat @ rho.mat).real)


def is_pure(rho: DensityMatrix) -> bool:
    return np.abs(rho.mat @ rho.mat - rho.mat).max() <= PURITY_ATOL


def superpose(coeffs, kets) -> Ket:
    """Normalized linear combination of pure states."""
    coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)
    kets = list(kets)
    if len(kets) == 0 or coeffs.shape[0] != len(kets):
        raise ValueError("coefficient and ket lists must be nonempty and equal length")
    cn = np.linalg.norm(coeffs)
    if cn <= ATOL:
        raise ValueError("all coefficients vanish")
    coeffs = coeffs / cn
    dim = kets[0].dim
    if any(k.dim != dim for k in kets):
        raise ValueError("kets have mismatched dimensions")
    v = sum(c * k.amps for c, k in zip(coeffs, kets))
    n = np.linalg.norm(v)
    if n <= ATOL:
        raise ValueError("superposition is the zero vector")
    return Ket(v / n)


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(a.mat, b.mat))


def partial_trace(rho: DensityMatrix, dims: tuple[int, int], traced: int) -> DensityMatrix:
    """Trace out subsystem `traced` (1 or 2) of a bipartite state."""
    d1, d2 = dims
    if d1 * d2 != rho.dim:
        raise ValueError(f"dims {dims} do not factor dimension {rho.dim}")
    if traced not in (1, 2):
        raise ValueError("traced subsystem index must be 1 or 2")
    t = rho.mat.reshape(d1, d2, d1, d2)
    if traced == 2:
        red = np.einsum("ijkj->ik", t)
    else:
        red = np.einsum("ijil->jl", t)
    return make_density(red)


def permutation_operator(n: int) -> np.ndarray:
    """Swap of tensor factors on C^n (x) C^n: e_i (x) e_j -> e_j (x) e_i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            p[j * n + i, i * n + j] = 1.0
    return p


def symmetrize(phi: Ket, psi: Ket, sign: str) -> Ket:
    """Normalized (phi (x) psi +/- psi (x) phi)."""
    if sign not in (BOSON, FERMION):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if phi.dim != psi.dim:
        raise ValueError("kets have mismatched dimensions")
    s = 1.0 if sign == BOSON else -1.0
    v = np.kron(phi.amps, psi.amps) + s * np.kron(psi.amps, phi.amps)
    n = np.linalg.norm(v)
    if n <= ATOL:
        raise ValueError("antisymmetrization of parallel states is the zero vector")
    return Ket(v / n)


@dataclass(frozen=True, eq=False)
class SectorSpace:
    """The symmetric (+) or antisymmetric (-) sector of C^n (x) C^n.

    The basis follows the combinatorial rule: (e_i e_j +/- e_j e_i)/sqrt(2)
    for i < j, plus e_i e_i for '+', ordered lexicographically by (i, j),
    so the ordering is deterministic and the basis exact.
    """

    n: int
    sign: str
    basis: tuple[Ket, ...]
    isometry: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "isometry", _freeze(np.asarray(self.isometry, dtype=complex)))

    @property
    def sector_dim(self) -> int:
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return self.sector_dim == 0

    def projector(self) -> np.ndarray:
        return self.isometry @ self.isometry.conj().T

    def embed_matrix(self, m: np.ndarray) -> np.ndarray:
        """Conjugate a sector-coordinates matrix into the full n^2 space."""
        return self.isometry @ m @ self.isometry.conj().T

    def compress_matrix(self, m: np.ndarray) -> np.ndarray:
        return self.isometry.conj().T @ m @ self.isometry


def sector_space(n: int, sign: str) -> SectorSpace:
    if sign not in (BOSON, FERMION):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    vecs = []
    s = 1.0 if sign == BOSON else -1.0
    for i in range(n):
        if sign == BOSON:
            v = np.zeros(n * n, dtype=complex)
            v[i * n + i] = 1.0
            vecs.append(v)
        for j in range(i + 1, n):
            v = np.zeros(n * n, dtype=complex)
            v[i * n + j] = 1.0 / np.sqrt(2)
            v[j * n + i] = s / np.sqrt(2)
            vecs.append(v)
    iso = np.array(vecs, dtype=complex).T if vecs else np.zeros((n * n, 0), dtype=complex)
    return SectorSpace(n=n, sign=sign, basis=tuple(Ket(v) for v in vecs), isometry=iso)


def partial_transpose(m: np.ndarray, dims: tuple[int, int], sys: int = 2) -> np.ndarray:
    d1, d2 = dims
    if d1 * d2 != m.shape[0] or m.shape[0] != m.shape[1]:
        raise ValueError(f"dims {dims} do not factor dimension {m.shape}")
    t = m.reshape(d1, d2, d1, d2)
    if sys == 2:
        t = t.transpose(0, 3, 2, 1)
    elif sys == 1:
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError("sys must be 1 or 2")
    return t.reshape(d1 * d2, d1 * d2)


def is_separable_ppt(rho: DensityMatrix, dims: tuple[int, int]) -> Separability:
    """PPT test: necessary for separability, conclusive only for 2x2 and 2x3."""
    d1, d2 = dims
    if d1 * d2 != rho.dim:
        raise ValueError(f"dims {dims} do not factor dimension {rho.dim}")
    w = np.linalg.eigvalsh(partial_transpose(rho.mat, dims, sys=2))
    if w.min() < -ATOL:
        return Separability.ENTANGLED
    if sorted((d1, d2)) in ([2, 2], [2, 3]):
        return Separability.SEPARABLE
    return Separability.UNDECIDED


def random_ket(dim: int, rng: np.random.Generator) -> Ket:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return ket(v)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-style random mixed state."""
    r = rank or dim
    g = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    m = g @ g.conj().T
    return make_density(m / np.trace(m).real)
