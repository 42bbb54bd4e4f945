"""The joint eigenstates behind the paradoxes, and their Bell structure.

Run with: python3 demos/entangled_states.py
"""

import itertools

from ksparity import (
    bell_decompose,
    bell_support,
    build_star_table,
    classify_residual,
    joint_eigenstate,
    measure_computational,
)
from ksparity.systems import default_eigenvalues


def eigenstate(N):
    sys = build_star_table(N)
    return joint_eigenstate(sys, default_eigenvalues(sys))


def print_decomposition(state, pairing):
    decomp = bell_decompose(state, pairing)
    pairs = " ".join(f"({a}{b})" for a, b in pairing)
    print(f"    Bell pairs {pairs}:")
    for labels, coeff in sorted(decomp.nonzero().items()):
        term = " ".join(labels)
        print(f"        {coeff.real:+.4f}  {term}")


def main():
    # The four-qubit eigenstate is a two-term superposition of Bell
    # pair products.
    psi4 = eigenstate(2)
    print("four-qubit eigenstate")
    print_decomposition(psi4, [(1, 2), (3, 4)])

    # Measuring any two qubits in the computational basis leaves the
    # other two maximally entangled, whatever the outcome.
    print("    residuals after measuring any qubit pair:")
    verdicts = set()
    for pair in itertools.combinations(range(1, 5), 2):
        for outcome in ("00", "01", "10", "11"):
            prob, residual = measure_computational(psi4, pair, outcome)
            verdicts.add(classify_residual(residual))
    print(f"        all 24 cases: {sorted(verdicts)}")

    # Six qubits: four Bell-product terms under the natural pairing.
    psi6 = eigenstate(3)
    print("\nsix-qubit eigenstate")
    print_decomposition(psi6, [(1, 2), (3, 4), (5, 6)])

    # Measuring two qubits from the last two pairs leaves a state with
    # the same entanglement profile as the four-qubit eigenstate;
    # measuring the first pair does not.
    _, inner = measure_computational(psi6, [3, 4], "00")
    _, outer = measure_computational(psi6, [1, 2], "00")
    print("    residual after measuring qubits 3,4:",
          classify_residual(inner, psi4))
    print("    residual after measuring qubits 1,2:",
          classify_residual(outer, psi4))

    # Eight qubits: the pattern continues with eight equal-weight terms.
    psi8 = eigenstate(4)
    count, mags = bell_support(psi8, [(1, 2), (3, 4), (5, 6), (7, 8)])
    print(f"\neight-qubit eigenstate: {count} Bell-product terms, "
          f"all of magnitude {mags[0]:.4f}")


if __name__ == "__main__":
    main()
