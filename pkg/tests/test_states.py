import itertools
import math

import numpy as np
import pytest

from ksparity.pauli import parse_word
from ksparity.systems import (
    InconsistentEigenvaluesError,
    build_star_table,
    default_eigenvalues,
    system_from_rows,
)
from ksparity.states import (
    BELL_VECTORS,
    DenseState,
    UnderdeterminedEigenstateError,
    apply_pauli,
    bell_decompose,
    bell_product_vector,
    bell_support,
    classify_residual,
    entanglement_profile,
    joint_eigenstate,
    measure_computational,
    profiles_match,
    reduced_spectrum,
)

S = 1 / math.sqrt(2)


@pytest.fixture(scope="module")
def psi4():
    sys = build_star_table(2)
    return joint_eigenstate(sys, default_eigenvalues(sys))


@pytest.fixture(scope="module")
def psi6():
    sys = build_star_table(3)
    return joint_eigenstate(sys, default_eigenvalues(sys))


class TestDenseState:
    def test_phase_canonicalization(self):
        a = DenseState.from_vector(np.array([1j, 1j]) / math.sqrt(2))
        b = DenseState.from_vector(np.array([1, 1]) / math.sqrt(2))
        assert a.isclose(b)
        assert a.amplitudes[0].imag == pytest.approx(0.0)

    def test_norm_enforced(self):
        with pytest.raises(ValueError):
            DenseState(1, np.array([1.0, 1.0]))

    def test_json_roundtrip(self, psi4):
        again = DenseState.from_json(psi4.to_json())
        assert again.isclose(psi4, tol=1e-15)


class TestApplyPauli:
    def test_matches_dense_matrix(self):
        from ksparity.pauli import to_dense

        rng = np.random.default_rng(3)
        for text in ("XZ", "-YY", "iXY", "ZI"):
            w = parse_word(text)
            vec = rng.normal(size=4) + 1j * rng.normal(size=4)
            assert np.allclose(apply_pauli(w, vec), to_dense(w) @ vec)


class TestJointEigenstate:
    def test_four_qubit_formula(self, psi4):
        formula = DenseState.from_vector(
            S * bell_product_vector(4, [(1, 2, "Φ+"), (3, 4, "Φ-")])
            - S * bell_product_vector(4, [(1, 2, "Ψ-"), (3, 4, "Ψ-")])
        )
        assert psi4.isclose(formula, tol=1e-10)

    def test_eigen_equations(self, psi4):
        sys = build_star_table(2)
        for m, s in zip(sys.contexts[0].members, default_eigenvalues(sys)):
            out = apply_pauli(sys.observables[m], psi4.amplitudes)
            assert np.allclose(out, s * psi4.amplitudes, atol=1e-10)

    def test_single_z_generator(self):
        sys = system_from_rows(["Z"], 1)
        state = joint_eigenstate(sys, [1])
        assert np.allclose(state.amplitudes, [1, 0])

    def test_underdetermined_reports_dimension(self):
        sys = system_from_rows(["ZI"], 1)
        with pytest.raises(UnderdeterminedEigenstateError) as err:
            joint_eigenstate(sys, [1])
        assert err.value.dimension == 2

    def test_inconsistent_signature(self):
        sys = build_star_table(2)
        with pytest.raises(InconsistentEigenvaluesError):
            joint_eigenstate(sys, (1, 1, 1, 1, 1))


class TestBellDecomposition:
    def test_bell_vectors_are_orthonormal(self):
        mats = list(BELL_VECTORS.values())
        for i, a in enumerate(mats):
            for j, b in enumerate(mats):
                assert np.vdot(a, b) == pytest.approx(1.0 if i == j else 0.0)

    def test_four_qubit_support(self, psi4):
        count, mags = bell_support(psi4, [(1, 2), (3, 4)])
        assert count == 2
        assert mags == pytest.approx([S, S])

    def test_six_qubit_support(self, psi6):
        count, mags = bell_support(psi6, [(1, 2), (3, 4), (5, 6)])
        assert count == 4
        assert mags == pytest.approx([0.5] * 4)

    def test_six_qubit_printed_signs(self, psi6):
        nz = bell_decompose(psi6, [(1, 2), (3, 4), (5, 6)]).nonzero()
        coeffs = {labels: c.real for labels, c in nz.items()}
        assert coeffs[("Φ+", "Φ-", "Φ+")] == pytest.approx(0.5)
        assert coeffs[("Φ+", "Ψ-", "Ψ+")] == pytest.approx(0.5)
        assert coeffs[("Ψ-", "Φ-", "Ψ+")] == pytest.approx(-0.5)
        assert coeffs[("Ψ-", "Ψ-", "Φ+")] == pytest.approx(-0.5)

    def test_product_state_expansion(self):
        zeros = DenseState(2, np.array([1, 0, 0, 0], dtype=complex))
        nz = bell_decompose(zeros, [(1, 2)]).nonzero()
        assert set(nz) == {("Φ+",), ("Φ-",)}
        assert all(abs(c) == pytest.approx(S) for c in nz.values())

    def test_reconstruction(self, psi6):
        decomp = bell_decompose(psi6, [(1, 4), (2, 5), (3, 6)])
        assert decomp.reconstruct().isclose(psi6, tol=1e-12)

    def test_bad_pairing(self, psi4):
        with pytest.raises(ValueError):
            bell_decompose(psi4, [(1, 2), (2, 3)])

    def test_json_uses_utf8_labels(self, psi4):
        text = bell_decompose(psi4, [(1, 2), (3, 4)]).to_json()
        assert "Φ+Φ-" in text


class TestMeasurement:
    def test_probabilities_sum_to_one(self, psi6):
        for qubits in ([1], [2, 5], [1, 3, 6]):
            total = 0.0
            for bits in itertools.product("01", repeat=len(qubits)):
                prob, _ = measure_computational(psi6, qubits, "".join(bits))
                total += prob
            assert total == pytest.approx(1.0)

    def test_empty_measurement(self, psi4):
        prob, residual = measure_computational(psi4, [], "")
        assert prob == 1.0 and residual is psi4

    def test_zero_probability_branch(self):
        zeros = DenseState(2, np.array([1, 0, 0, 0], dtype=complex))
        prob, residual = measure_computational(zeros, [1], "1")
        assert prob == 0.0 and residual is None

    def test_four_qubit_residuals_are_bell(self, psi4):
        for pair in itertools.combinations(range(1, 5), 2):
            for outcome in ("00", "01", "10", "11"):
                prob, residual = measure_computational(psi4, pair, outcome)
                assert prob == pytest.approx(0.25)
                assert classify_residual(residual) == "bell-state"

    def test_six_qubit_residual_formula(self, psi6):
        # measuring qubits 1 and 3 as 11 leaves -(Φ+Φ+ + Ψ+Ψ+) on (2,4),(5,6)
        prob, residual = measure_computational(psi6, [1, 3], "11")
        target = DenseState.from_vector(
            -(bell_product_vector(4, [(1, 2, "Φ+"), (3, 4, "Φ+")])
              + bell_product_vector(4, [(1, 2, "Ψ+"), (3, 4, "Ψ+")]))
        )
        assert prob == pytest.approx(0.25)
        assert residual.isclose(target, tol=1e-10)


class TestProfiles:
    def test_bell_state_spectra(self):
        bell = DenseState(2, BELL_VECTORS["Ψ-"].copy())
        assert reduced_spectrum(bell, [1]) == pytest.approx((0.5, 0.5))

    def test_product_state_spectra(self):
        zeros = DenseState(2, np.array([1, 0, 0, 0], dtype=complex))
        assert reduced_spectrum(zeros, [2]) == pytest.approx((1.0, 0.0))

    def test_four_qubit_single_qubit_spectra(self, psi4):
        prof = entanglement_profile(psi4)
        for spectrum in prof[1]:
            assert spectrum == pytest.approx((0.5, 0.5))

    def test_profiles_match_is_tolerant(self, psi4):
        a = entanglement_profile(psi4)
        assert profiles_match(a, a)

    def test_residual_classification_against_reference(self, psi4, psi6):
        # residuals from measuring within qubits 3..6 match the four-qubit
        # eigenstate's profile; those touching qubits 1 or 2 do not
        _, inner = measure_computational(psi6, [3, 4], "00")
        assert classify_residual(inner, psi4) == "profile-match"
        _, outer = measure_computational(psi6, [1, 2], "00")
        assert classify_residual(outer, psi4) == "mismatch"

    def test_mismatch_without_reference(self):
        zeros = DenseState(2, np.array([1, 0, 0, 0], dtype=complex))
        assert classify_residual(zeros) == "mismatch"
