"""Dense joint eigenstates, Bell decompositions and measurement analysis.

Amplitude vectors are indexed in the computational basis with qubit 1 as
the most significant bit.  Global phase is canonicalized so that the first
nonzero amplitude is real and positive, which makes state comparison at
tolerance well defined.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .pauli import DenseCapError, PauliWord
from .systems import ContextSystem, InconsistentEigenvaluesError, _single_context

DENSE_STATE_CAP = 14

BELL_LABELS = ("Φ+", "Φ-", "Ψ+", "Ψ-")
_S = 1 / math.sqrt(2)
BELL_VECTORS = {
    "Φ+": np.array([_S, 0, 0, _S], dtype=complex),
    "Φ-": np.array([_S, 0, 0, -_S], dtype=complex),
    "Ψ+": np.array([0, _S, _S, 0], dtype=complex),
    "Ψ-": np.array([0, _S, -_S, 0], dtype=complex),
}

ASCII_BELL = {"Phi+": "Φ+", "Phi-": "Φ-", "Psi+": "Ψ+", "Psi-": "Ψ-"}


class UnderdeterminedEigenstateError(ValueError):
    """The signed generators do not pin down a one-dimensional eigenspace."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(
            f"eigenspace has dimension {dimension}, not a unique state"
        )


@dataclass(frozen=True)
class DenseState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.amplitudes, dtype=complex)
        if vec.shape != (1 << self.n,):
            raise ValueError("amplitude vector has wrong length")
        norm = np.linalg.norm(vec)
        if not math.isclose(norm, 1.0, abs_tol=1e-12):
            raise ValueError(f"state is not normalized (norm {norm})")
        object.__setattr__(self, "amplitudes", _canonical_phase(vec))

    @classmethod
    def from_vector(cls, vec: np.ndarray) -> "DenseState":
        vec = np.asarray(vec, dtype=complex)
        n = int(round(math.log2(vec.size)))
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError("zero vector is not a state")
        return cls(n, vec / norm)

    def isclose(self, other: "DenseState", tol: float = 1e-10) -> bool:
        """Equality up to global phase (both are phase-canonical)."""
        return self.n == other.n and bool(
            np.allclose(self.amplitudes, other.amplitudes, atol=tol)
        )

    def to_json(self) -> str:
        pairs = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps({"n": self.n, "amplitudes": pairs})

    @classmethod
    def from_json(cls, text: str) -> "DenseState":
        doc = json.loads(text)
        vec = np.array([complex(re, im) for re, im in doc["amplitudes"]])
        return cls(doc["n"], vec)


def _canonical_phase(vec: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(vec) > 1e-12)
    if idx.size == 0:
        return vec
    lead = vec[idx[0]]
    return vec * (abs(lead) / lead)


def apply_pauli(word: PauliWord, vec: np.ndarray) -> np.ndarray:
    """Act with a Pauli word on an amplitude vector (qubit 1 = MSB)."""
    n = word.n
    idx = np.arange(1 << n)
    masked = (idx ^ word.x) & word.z
    par = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        par ^= (masked >> b) & 1
    out = np.empty_like(vec, dtype=complex)
    out[...] = vec[idx ^ word.x] * np.where(par, -1.0, 1.0)
    # phase of the X^x Z^z ordering plus the word's own i power
    return (1j ** word.lam) * out


# ---------------------------------------------------------------------------
# joint eigenstates


def eigenspace_dimension(sys: ContextSystem) -> int:
    """2^(n - m) with m the number of symplectically independent members."""
    ctx = _single_context(sys)
    rows = []
    for m in ctx.members:
        ob = sys.observables[m]
        rows.append((ob.x << sys.n) | ob.z)
    return 1 << (sys.n - gf2.rank(rows))


def joint_eigenstate(
    sys: ContextSystem,
    eigenvalues: Sequence[int],
    dense_cap: int = DENSE_STATE_CAP,
) -> DenseState:
    """Unique unit vector with O_i psi = s_i psi for every context member.

    Computed by applying the projectors (I + s_i O_i)/2 to a sequence of
    basis vectors until a nonzero image survives; the result is verified
    against every eigen-equation to 1e-10.
    """
    ctx = _single_context(sys)
    if sys.n > dense_cap:
        raise DenseCapError(f"n={sys.n} exceeds dense state cap {dense_cap}")
    if len(eigenvalues) != len(ctx.members):
        raise ValueError("one eigenvalue per context member is required")
    ev_product = 1
    for e in eigenvalues:
        ev_product *= e
    if ev_product != ctx.sign:
        raise InconsistentEigenvaluesError(
            f"eigenvalue product {ev_product:+d} does not match "
            f"context product sign {ctx.sign:+d}"
        )
    dim = eigenspace_dimension(sys)
    if dim != 1:
        raise UnderdeterminedEigenstateError(dim)

    words = [sys.observables[m] for m in ctx.members]
    size = 1 << sys.n
    for start in range(size):
        vec = np.zeros(size, dtype=complex)
        vec[start] = 1.0
        for w, s in zip(words, eigenvalues):
            vec = 0.5 * (vec + s * apply_pauli(w, vec))
        if np.linalg.norm(vec) > 1e-9:
            state = DenseState.from_vector(vec)
            for w, s in zip(words, eigenvalues):
                resid = apply_pauli(w, state.amplitudes) - s * state.amplitudes
                if np.linalg.norm(resid) > 1e-10:
                    raise AssertionError(f"eigen-equation violated for {w}")
            return state
    raise AssertionError("projector product annihilated every basis vector")


# ---------------------------------------------------------------------------
# Bell decompositions


def _check_pairing(n: int, pairing: Sequence[Tuple[int, int]]) -> None:
    flat = [q for pair in pairing for q in pair]
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError(f"pairing {pairing} does not cover qubits 1..{n}")


@dataclass(frozen=True)
class BellDecomposition:
    n: int
    pairing: Tuple[Tuple[int, int], ...]
    coefficients: Dict[Tuple[str, ...], complex]

    def nonzero(self, tol: float = 1e-10) -> Dict[Tuple[str, ...], complex]:
        return {
            labels: c
            for labels, c in self.coefficients.items()
            if abs(c) > tol
        }

    def reconstruct(self) -> DenseState:
        vec = np.zeros(1 << self.n, dtype=complex)
        for labels, coeff in self.coefficients.items():
            if coeff == 0:
                continue
            factors = [
                (q1, q2, label)
                for (q1, q2), label in zip(self.pairing, labels)
            ]
            vec += coeff * bell_product_vector(self.n, factors)
        return DenseState.from_vector(vec)

    def to_json(self) -> str:
        terms = {
            "".join(labels): [float(c.real), float(c.imag)]
            for labels, c in sorted(self.nonzero().items())
        }
        return json.dumps(
            {"pairing": [list(p) for p in self.pairing], "terms": terms},
            ensure_ascii=False,
        )


def bell_product_vector(
    n: int,
    bell_factors: Sequence[Tuple[int, int, str]],
    computational: Sequence[Tuple[int, int]] = (),
) -> np.ndarray:
    """Dense vector of a product of Bell pairs and computational bits.

    ``bell_factors`` entries are (qubit_a, qubit_b, label) with 1-based
    qubits; ``computational`` entries are (qubit, bit).
    """
    covered = [q for f in bell_factors for q in f[:2]]
    covered += [q for q, _ in computational]
    if sorted(covered) != list(range(1, n + 1)):
        raise ValueError("factors must cover every qubit exactly once")
    vec = np.zeros(1 << n, dtype=complex)
    pair_bits = list(itertools.product((0, 1), repeat=2 * len(bell_factors)))
    for bits in pair_bits:
        amp = 1.0 + 0j
        index = 0
        for (qa, qb, label), (ba, bb) in zip(
            bell_factors, zip(bits[::2], bits[1::2])
        ):
            amp *= BELL_VECTORS[label][2 * ba + bb]
            index |= ba << (n - qa)
            index |= bb << (n - qb)
        if amp == 0:
            continue
        for q, b in computational:
            index |= b << (n - q)
        vec[index] += amp
    return vec


def bell_decompose(
    state: DenseState, pairing: Sequence[Tuple[int, int]]
) -> BellDecomposition:
    """Coefficients of the state in the tensor-product Bell basis."""
    _check_pairing(state.n, pairing)
    pairing = tuple((int(a), int(b)) for a, b in pairing)
    coeffs: Dict[Tuple[str, ...], complex] = {}
    for labels in itertools.product(BELL_LABELS, repeat=len(pairing)):
        factors = [
            (q1, q2, label) for (q1, q2), label in zip(pairing, labels)
        ]
        basis_vec = bell_product_vector(state.n, factors)
        coeffs[labels] = complex(np.vdot(basis_vec, state.amplitudes))
    decomp = BellDecomposition(state.n, pairing, coeffs)
    if not decomp.reconstruct().isclose(state, tol=1e-12):
        raise AssertionError("Bell reconstruction does not match the state")
    return decomp


def bell_support(
    state: DenseState,
    pairing: Sequence[Tuple[int, int]],
    tol: float = 1e-10,
) -> Tuple[int, List[float]]:
    """(term count, sorted magnitudes) of the nonzero Bell coefficients."""
    nz = bell_decompose(state, pairing).nonzero(tol)
    mags = sorted(abs(c) for c in nz.values())
    return len(nz), mags


# ---------------------------------------------------------------------------
# measurement and entanglement


def measure_computational(
    state: DenseState, qubits: Sequence[int], outcome: str
) -> Tuple[float, Optional[DenseState]]:
    """Project the given 1-based qubits onto a computational outcome.

    Returns (probability, residual state on the unmeasured qubits); zero
    probability branches return no residual.
    """
    qubits = list(qubits)
    if len(outcome) != len(qubits):
        raise ValueError("outcome length must match the measured qubit count")
    if len(set(qubits)) != len(qubits):
        raise ValueError("measured qubits must be distinct")
    if not qubits:
        return 1.0, state
    n = state.n
    arr = state.amplitudes.reshape((2,) * n)
    slicer: List[object] = [slice(None)] * n
    for q, b in zip(qubits, outcome):
        slicer[q - 1] = int(b)
    branch = np.asarray(arr[tuple(slicer)]).reshape(-1)
    prob = float(np.vdot(branch, branch).real)
    if prob < 1e-24:
        return 0.0, None
    return prob, DenseState.from_vector(branch)


def reduced_spectrum(state: DenseState, subset: Sequence[int]) -> Tuple[float, ...]:
    """Eigenvalues of the reduced density matrix on 1-based ``subset``."""
    n = state.n
    keep = [q - 1 for q in subset]
    rest = [p for p in range(n) if p not in keep]
    arr = state.amplitudes.reshape((2,) * n)
    arr = np.transpose(arr, keep + rest)
    mat = arr.reshape(1 << len(keep), 1 << len(rest))
    rho = mat @ mat.conj().T
    vals = np.linalg.eigvalsh(rho)
    return tuple(sorted((float(v) for v in vals), reverse=True))


def entanglement_profile(
    state: DenseState,
) -> Dict[int, Tuple[Tuple[float, ...], ...]]:
    """Reduced-density spectra for every bipartition up to size n/2."""
    profile: Dict[int, List[Tuple[float, ...]]] = {}
    for size in range(1, state.n // 2 + 1):
        spectra = [
            reduced_spectrum(state, subset)
            for subset in itertools.combinations(range(1, state.n + 1), size)
        ]
        profile[size] = sorted(spectra)
    return {k: tuple(v) for k, v in profile.items()}


def profiles_match(
    a: Dict[int, Tuple[Tuple[float, ...], ...]],
    b: Dict[int, Tuple[Tuple[float, ...], ...]],
    tol: float = 1e-9,
) -> bool:
    if a.keys() != b.keys():
        return False
    for k in a:
        if len(a[k]) != len(b[k]):
            return False
        for sa, sb in zip(a[k], b[k]):
            if len(sa) != len(sb):
                return False
            if any(abs(x - y) > tol for x, y in zip(sa, sb)):
                return False
    return True


def classify_residual(
    residual: DenseState,
    reference: Optional[DenseState] = None,
    tol: float = 1e-9,
) -> str:
    """Verdict: "bell-state", "profile-match" or "mismatch".

    A two-qubit residual with maximally mixed single-qubit marginals counts
    as a Bell state; otherwise the residual's entanglement profile is
    compared against the reference state's.
    """
    if residual.n == 2:
        spectra = [reduced_spectrum(residual, [q]) for q in (1, 2)]
        if all(
            abs(s[0] - 0.5) < tol and abs(s[1] - 0.5) < tol for s in spectra
        ):
            return "bell-state"
    if reference is not None and reference.n == residual.n:
        if profiles_match(
            entanglement_profile(residual), entanglement_profile(reference), tol
        ):
            return "profile-match"
    return "mismatch"
