"""End-to-end acceptance gate.

Each test runs one verification suite at its full advertised scale and
tolerance and prints a single PASS/FAIL line (run with ``pytest -s`` to
see them as they happen).  Budgets are wall-clock upper bounds.
"""

import sys
import time

import pytest

from qlattice import verify


def _run(name, criterion, budget=None, config=None):
    start = time.perf_counter()
    report = verify.SUITES[name](config or verify.RunConfig(seed=0))
    elapsed = time.perf_counter() - start
    ok = report["passed"] and (budget is None or elapsed <= budget)
    line = f"{'PASS' if ok else 'FAIL'}: {criterion} " \
           f"({report['checked']} checks, {elapsed:.2f}s)"
    print(line, file=sys.stderr)
    assert report["passed"], f"{name}: {report['failures']}"
    if budget is not None:
        assert elapsed <= budget, f"{name} took {elapsed:.2f}s (budget {budget}s)"
    return report


def test_sector_dimensions_match_swap_eigenspaces():
    _run("sector-dims",
         "sector dimensions n(n+1)/2 and n(n-1)/2 for n=1..6 match swap eigenspaces",
         budget=1.0)


def test_lattice_laws_500_random_instances():
    config = verify.RunConfig(seed=0)
    config.samples["lattice-laws"] = 500
    report = _run("lattice-laws",
                  "bounded-lattice laws on 500 random instances, dims 2-4, tol 1e-8",
                  budget=30.0, config=config)
    assert report["checked"] >= 500


def test_orthocomplement_overlap_within_1e9():
    config = verify.RunConfig(seed=0)
    config.samples["orthogonality"] = 200
    config.tolerances["orthogonality"] = 1e-9
    report = _run("orthogonality",
                  "|tr(sigma rho+)| <= 1e-9 against orthocomplements, 200 instances",
                  config=config)
    assert report["checked"] >= 200


def test_reduced_maps_coincide_on_sector_polytopes():
    config = verify.RunConfig(seed=0)
    config.samples["tau-identical"] = 200
    report = _run("tau-identical",
                  "both single-particle reductions agree on 200 sector polytopes, n=2..4",
                  config=config)
    assert report["checked"] >= 200


def test_fermionic_reduced_purity_bounded():
    config = verify.RunConfig(seed=0)
    config.samples["mixed-reduced"] = 500
    report = _run("mixed-reduced",
                  "fermionic reduced purity <= 1/2 + 1e-9 and never near 1, 500 states n=2..5",
                  config=config)
    assert report["checked"] >= 500


def test_product_set_sector_leakage_values():
    _run("lambda-obstruction",
         "sector leakage of product sets: 0.5 (orthogonal fermions), 0 (equal bosons)")


def test_occupation_products_match_permanent_determinant_oracle():
    report = _run("qspace-oracle",
                  "fast occupation products equal permanent/determinant sums, n<=6 over 4 modes",
                  budget=60.0)
    assert report["checked"] >= 1000


def test_pauli_exclusion_exhaustive():
    _run("pauli-exclusion",
         "repeated fermionic modes are exactly the null-norm states, n<=5 over 5 modes")


def test_gram_matrices_match_tensor_embedding():
    report = _run("gram-correspondence",
                  "occupation Gram matrices = tensor-symmetrizer Grams / n!, n<=4 over 4 modes")
    assert report["constant"] == "n!"


def test_permutation_unobservability_10000_collections():
    config = verify.RunConfig(seed=0)
    config.samples["qset-permutation"] = 10_000
    report = _run("qset-permutation",
                  "element exchange unobservable on 10^4 random collections",
                  budget=1.0, config=config)
    assert report["checked"] >= 10_000


def test_werner_boundary_by_bisection():
    report = _run("ppt-werner",
                  "Werner-family entanglement boundary at 1/3 +/- 1e-6 by bisection",
                  budget=1.0)
    assert report["boundary"] == pytest.approx(1 / 3, abs=1e-6)
