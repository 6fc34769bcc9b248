"""Convex-lattice quantum logic toolkit for indistinguishable particles.

Subpackages:

* ``hilbert`` -- density matrices, tensor products, partial traces,
  permutation symmetry sectors, PPT tests;
* ``lattice`` -- the lattice of convex subsets of the state space;
* ``identical`` -- the sector-restricted sublattice and its reduced maps;
* ``qspace`` -- occupation-number states with permanent/determinant
  inner products;
* ``qsets`` -- a finite model of collections of indistinguishable objects;
* ``serialize`` -- JSON/text encodings; ``verify`` -- property suites;
  ``cli`` -- the command-line driver.
"""

from .hilbert import (
    BOSON,
    FERMION,
    DensityMatrix,
    Ket,
    SectorSpace,
    Separability,
    basis_ket,
    born_mean,
    is_pure,
    is_separable_ppt,
    ket,
    make_density,
    maximally_mixed,
    partial_trace,
    permutation_operator,
    pure_state,
    purity,
    sector_space,
    superpose,
    symmetrize,
    tensor,
)
from .lattice import (
    Bottom,
    Face,
    JoinNode,
    MeetNode,
    StateSet,
    Top,
    VPolytope,
    bottom,
    contains,
    face,
    join,
    lambda_map,
    leq,
    meet,
    neg,
    same_set,
    tau,
    tau_i,
    top,
    vpolytope,
)
from .identical import (
    SectorStateSet,
    embed,
    join_pm,
    lambda_defect,
    leq_pm,
    meet_pm,
    neg_pm,
    reduced_purity_scan,
    sector_bottom,
    sector_top,
    sector_vpolytope,
    tau_i_pm,
    tau_pm,
)
from .qspace import OccState, QVector, inner, inner_basis, norm, occ_state, pauli_check, to_hilbert
from .qsets import PureQset, indistinguishable, permutation_theorem_check, pure_qset, qcard

__version__ = "0.1.0"
