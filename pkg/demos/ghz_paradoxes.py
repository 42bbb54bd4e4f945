"""Walk through the GHZ-type paradox tables and their infeasibility checks.

Run with: python3 demos/ghz_paradoxes.py
"""

from ksparity import (
    build_star_table,
    builtin_fixtures,
    count_ghz_assignments,
    ghz_infeasible,
    is_genuinely_multipartite,
    verify_system,
)
from ksparity.systems import default_eigenvalues


def show_table(name, sys):
    print(f"\n{name} ({sys.n} qubits, {len(sys.observables)} observables)")
    for ob in sys.observables:
        print("   ", " ".join(str(ob)))
    ctx = sys.contexts[0]
    print(f"    product sign: {ctx.sign:+d}")


def main():
    # The four-qubit table: five mutually commuting observables whose
    # product is -identity.  Giving the last one eigenvalue -1 and the
    # rest +1 is consistent as a quantum state, yet no assignment of
    # +-1 values to the individual letters can reproduce it.
    sys4 = build_star_table(2)
    show_table("four-qubit table", sys4)
    assert verify_system(sys4).ok

    ev = default_eigenvalues(sys4)
    satisfying, total = count_ghz_assignments(sys4, ev)
    print(f"    eigenvalues {ev}")
    print(f"    satisfying letter assignments: {satisfying} of {total}")
    print(f"    infeasible: {ghz_infeasible(sys4, ev)}")

    # The same construction extends to every even number of qubits.
    print("\nstar family:")
    for N in range(2, 7):
        sys = build_star_table(N)
        infeasible = ghz_infeasible(sys, default_eigenvalues(sys))
        print(f"    {2 * N:2d} qubits, {len(sys.observables):2d} rows, "
              f"infeasible: {infeasible}")

    # More economical tables exist: fewer observables for the same
    # qubit count, still infeasible.
    fixtures = builtin_fixtures()
    for name in ("table2-left", "table2-right"):
        sys = fixtures[name]
        show_table(name, sys)
        print(f"    infeasible: "
              f"{ghz_infeasible(sys, default_eigenvalues(sys))}")

    # Genuine multipartiteness: no sub-table on fewer qubits or rows is
    # already a proof by itself.
    print("\ngenuine multipartiteness:")
    for N in (2, 3, 4):
        genuine = is_genuinely_multipartite(build_star_table(N))
        print(f"    {2 * N} qubits: {genuine}")


if __name__ == "__main__":
    main()
