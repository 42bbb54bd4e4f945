import json

import pytest

from ksparity.pauli import parse_word
from ksparity.systems import (
    Context,
    ContextSystem,
    InconsistentEigenvaluesError,
    build_star_table,
    builtin_fixtures,
    count_ghz_assignments,
    default_eigenvalues,
    find_proper_subproof,
    gf2_infeasible,
    ghz_infeasible,
    is_genuinely_multipartite,
    parity_witness,
    system_from_rows,
    verify_system,
)


class TestContextSystem:
    def test_json_roundtrip(self):
        sys = builtin_fixtures()["kite-quadruples"]
        again = ContextSystem.from_json(sys.to_json())
        assert again == sys

    def test_wire_format_shape(self):
        doc = json.loads(build_star_table(2).to_json())
        assert doc["n"] == 4
        assert doc["observables"][0] == "ZZZZ"
        assert doc["contexts"] == [{"members": [0, 1, 2, 3, 4], "sign": -1}]

    def test_rejects_signed_observable(self):
        with pytest.raises(ValueError):
            ContextSystem(1, (parse_word("-Z"),), ())

    def test_rejects_duplicate_observable(self):
        with pytest.raises(ValueError):
            system_from_rows(["XX", "XX"], 1)

    def test_member_out_of_range(self):
        with pytest.raises(ValueError):
            ContextSystem(1, (parse_word("Z"),), (Context((1,), 1),))

    def test_duplicate_member_index_is_allowed(self):
        # a context may use the same observable twice (product = identity)
        sys = ContextSystem(1, (parse_word("Z"),), (Context((0, 0), 1),))
        assert verify_system(sys).ok


class TestVerification:
    def test_fixtures_all_verify(self):
        for name, sys in builtin_fixtures().items():
            report = verify_system(sys)
            assert report.ok, (name, report.violations)

    def test_noncommuting_context_reported(self):
        sys = ContextSystem(
            1,
            (parse_word("X"), parse_word("Z")),
            (Context((0, 1), 1),),
        )
        report = verify_system(sys)
        assert not report.ok
        assert "do not commute" in report.violations[0]

    def test_wrong_sign_reported(self):
        sys = ContextSystem(
            1, (parse_word("Z"),), (Context((0, 0), -1),)
        )
        report = verify_system(sys)
        assert not report.ok
        assert "sign mismatch" in report.violations[0]

    def test_parity_witness_on_kite(self):
        # kite quadruples: one negative context but odd incidence, no witness
        assert not parity_witness(builtin_fixtures()["kite-quadruples"])


class TestStarTables:
    def test_four_qubit_rows(self):
        rows = [str(ob) for ob in build_star_table(2).observables]
        assert rows == ["ZZZZ", "XXZZ", "ZXXI", "XZIX", "IIXX"]

    def test_six_qubit_rows(self):
        rows = [str(ob) for ob in build_star_table(3).observables]
        assert rows == [
            "ZZZZZZ", "XXZZZZ", "ZXXIII", "XZIXII", "IIIXXI", "IIIIXX",
            "IIXIIX",
        ]

    def test_structure_for_all_sizes(self):
        for N in range(2, 9):
            sys = build_star_table(N)
            assert len(sys.observables) == 2 * N + 1
            assert sys.contexts[0].sign == -1
            assert verify_system(sys).ok
            for pos in range(sys.n):
                letters = [ob.letter(pos) for ob in sys.observables]
                assert letters.count("X") % 2 == 0
                assert letters.count("Z") % 2 == 0

    def test_too_small(self):
        with pytest.raises(ValueError):
            build_star_table(1)


class TestGhzChecks:
    def test_four_qubit_exhaustive(self):
        sys = build_star_table(2)
        satisfying, total = count_ghz_assignments(sys, (1, 1, 1, 1, -1))
        assert (satisfying, total) == (0, 256)

    def test_infeasible_methods_agree(self):
        for name in ("table1-left", "table2-left"):
            sys = builtin_fixtures()[name]
            assert ghz_infeasible(sys, default_eigenvalues(sys))

    def test_signature_independent(self):
        # infeasibility does not depend on which row carries the -1
        sys = build_star_table(2)
        assert ghz_infeasible(sys, (-1, 1, 1, 1, 1))
        assert ghz_infeasible(sys, (-1, -1, -1, 1, 1))

    def test_inconsistent_signature_rejected(self):
        sys = build_star_table(2)
        with pytest.raises(InconsistentEigenvaluesError):
            ghz_infeasible(sys, (1, 1, 1, 1, 1))

    def test_feasible_case(self):
        sys = system_from_rows(["XX", "YY", "ZZ"], -1)
        assert verify_system(sys).ok
        assert not ghz_infeasible(sys, (1, 1, -1))
        satisfying, _ = count_ghz_assignments(sys, (1, 1, -1))
        assert satisfying > 0

    def test_observable_granularity(self):
        # at whole-observable granularity one equation per context is
        # trivially satisfiable for a single context
        sys = build_star_table(2)
        assert not gf2_infeasible(sys, granularity="observable")
        assert gf2_infeasible(sys, granularity="single-qubit")
        with pytest.raises(ValueError):
            gf2_infeasible(sys, granularity="letters")


class TestMultipartite:
    def test_star_tables_are_genuine(self):
        for N in (2, 3):
            assert is_genuinely_multipartite(build_star_table(N))

    def test_padded_table_is_not_genuine(self):
        # append idle qubits: the original columns carry a proper sub-proof
        rows = [str(ob) + "II" for ob in build_star_table(2).observables]
        sys = system_from_rows(rows, -1)
        witness = find_proper_subproof(sys)
        assert witness is not None
        assert not is_genuinely_multipartite(sys)

    def test_duplicated_rows_are_not_genuine(self):
        # repeating two identical row occurrences forms a trivial sub-proof
        base = build_star_table(2)
        obs = base.observables
        members = tuple(range(5)) + (0, 0)
        sys = ContextSystem(4, obs, (Context(members, -1),))
        assert verify_system(sys).ok
        assert not is_genuinely_multipartite(sys)


class TestFixtures:
    def test_economical_tables(self):
        fx = builtin_fixtures()
        assert [str(ob) for ob in fx["table2-left"].observables] == [
            "ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ"
        ]
        assert [str(ob) for ob in fx["table2-right"].observables] == [
            "ZZZZZZZI", "XXXXXXIZ", "ZXZXIIZZ", "XZIIIIXX",
            "IIXZZXII", "IIIIXZXX",
        ]

    def test_kite_context_signs(self):
        sys = builtin_fixtures()["kite-quadruples"]
        assert [c.sign for c in sys.contexts] == [-1, 1]
        assert len(sys.observables) == 6
