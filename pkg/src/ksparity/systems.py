"""Observable hypergraphs ("KS systems") and their contradiction checks.

A ContextSystem is a pool of Hermitian Pauli observables together with
contexts: mutually commuting subsets whose operator product is +identity or
-identity.  Single-context systems of the Table-1 kind support the GHZ
conversion, where every multiqubit observable is expanded into its
single-qubit letters and value assignments live on (qubit, letter) slots.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .pauli import PauliWord, commutes, multiply, parse_word, product_of

EXHAUSTIVE_CAP_DEFAULT = 1 << 22


class InconsistentEigenvaluesError(ValueError):
    """Eigenvalue signature conflicts with the context's product sign."""


@dataclass(frozen=True)
class Context:
    """An ordered tuple of observable indices with a declared product sign."""

    members: Tuple[int, ...]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("context sign must be +1 or -1")
        if not self.members:
            raise ValueError("context must have at least one member")


@dataclass(frozen=True)
class ContextSystem:
    n: int
    observables: Tuple[PauliWord, ...]
    contexts: Tuple[Context, ...]

    def __post_init__(self):
        seen = set()
        for ob in self.observables:
            if ob.n != self.n:
                raise ValueError("observable qubit count mismatch")
            if not ob.is_hermitian or ob.sign != 1:
                raise ValueError(f"observable {ob} must have phase +1")
            key = (ob.x, ob.z)
            if key in seen:
                raise ValueError(f"duplicate observable {ob}")
            seen.add(key)
        for ctx in self.contexts:
            for m in ctx.members:
                if not 0 <= m < len(self.observables):
                    raise ValueError(f"context member {m} out of range")

    def context_words(self, ctx: Context) -> List[PauliWord]:
        return [self.observables[m] for m in ctx.members]

    # -- JSON wire format -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "observables": [str(ob) for ob in self.observables],
            "contexts": [
                {"members": list(c.members), "sign": c.sign}
                for c in self.contexts
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ContextSystem":
        obs = tuple(parse_word(s) for s in doc["observables"])
        ctxs = tuple(
            Context(tuple(c["members"]), c["sign"]) for c in doc["contexts"]
        )
        return cls(doc["n"], obs, ctxs)

    @classmethod
    def from_json(cls, text: str) -> "ContextSystem":
        return cls.from_json_dict(json.loads(text))


def system_from_rows(rows: Sequence[str], sign: int) -> ContextSystem:
    """Single-context system from table rows given as Pauli strings."""
    obs = tuple(parse_word(r) for r in rows)
    n = obs[0].n
    ctx = Context(tuple(range(len(obs))), sign)
    return ContextSystem(n, obs, (ctx,))


# ---------------------------------------------------------------------------
# verification


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)


def verify_system(sys: ContextSystem) -> ValidationReport:
    """Check pairwise commutativity and product sign of every context."""
    violations: List[str] = []
    for ci, ctx in enumerate(sys.contexts):
        words = sys.context_words(ctx)
        for (i, a), (j, b) in itertools.combinations(enumerate(words), 2):
            if not commutes(a, b):
                violations.append(
                    f"context {ci}: members {a} and {b} do not commute"
                )
        prod = product_of(words)
        if not prod.is_identity_letters:
            violations.append(
                f"context {ci}: product {prod} is not proportional to identity"
            )
        elif prod.sigma % 2 != 0 or prod.sign != ctx.sign:
            violations.append(
                f"context {ci}: product sign mismatch "
                f"(declared {ctx.sign:+d}, actual {prod})"
            )
    return ValidationReport(ok=not violations, violations=violations)


def parity_witness(sys: ContextSystem) -> bool:
    """Odd number of -identity contexts and even incidence per observable."""
    negative = sum(1 for c in sys.contexts if c.sign == -1)
    if negative % 2 == 0:
        return False
    incidence = [0] * len(sys.observables)
    for ctx in sys.contexts:
        for m in ctx.members:
            incidence[m] += 1
    return all(count % 2 == 0 for count in incidence)


# ---------------------------------------------------------------------------
# single-qubit slot machinery

Slot = Tuple[int, str]  # (0-based qubit position, letter)


def word_slots(word: PauliWord) -> List[Slot]:
    """Non-identity (position, letter) slots of a word."""
    return [
        (pos, word.letter(pos))
        for pos in range(word.n)
        if word.letter(pos) != "I"
    ]


def _slot_equations(
    sys: ContextSystem, contexts: Optional[Sequence[Context]] = None
) -> Tuple[List[Slot], List[int], List[int]]:
    """GF(2) equations at single-qubit granularity, one per context.

    Returns (slots, rows, rhs) where bit (nslots-1-j) of a row flags slot j
    and rhs bit is 1 for a -identity context.
    """
    contexts = list(sys.contexts if contexts is None else contexts)
    slots = sorted(
        {
            s
            for ctx in contexts
            for m in ctx.members
            for s in word_slots(sys.observables[m])
        }
    )
    index = {s: i for i, s in enumerate(slots)}
    width = len(slots)
    rows, rhs = [], []
    for ctx in contexts:
        row = 0
        for m in ctx.members:
            for s in word_slots(sys.observables[m]):
                row ^= 1 << (width - 1 - index[s])
        rows.append(row)
        rhs.append(0 if ctx.sign == 1 else 1)
    return slots, rows, rhs


def gf2_infeasible(sys: ContextSystem, granularity: str = "single-qubit") -> bool:
    """True iff no +-1 value assignment satisfies every context equation.

    At "single-qubit" granularity each multiqubit observable's value is the
    product of its single-qubit letter values; at "observable" granularity
    the observables themselves are the variables.
    """
    if granularity == "single-qubit":
        _, rows, rhs = _slot_equations(sys)
        return not gf2.solvable(rows, rhs)
    if granularity == "observable":
        width = len(sys.observables)
        rows, rhs = [], []
        for ctx in sys.contexts:
            row = 0
            for m in ctx.members:
                row ^= 1 << (width - 1 - m)
            rows.append(row)
            rhs.append(0 if ctx.sign == 1 else 1)
        return not gf2.solvable(rows, rhs)
    raise ValueError(f"unknown granularity {granularity!r}")


def _single_context(sys: ContextSystem) -> Context:
    if len(sys.contexts) != 1:
        raise ValueError("operation requires a single-context system")
    return sys.contexts[0]


def default_eigenvalues(sys: ContextSystem) -> List[int]:
    """+1 on every observable except the last, which carries the sign."""
    ctx = _single_context(sys)
    return [1] * (len(ctx.members) - 1) + [ctx.sign]


def count_ghz_assignments(
    sys: ContextSystem, eigenvalues: Sequence[int]
) -> Tuple[int, int]:
    """(satisfying, total) over all +-1 assignments to the letter slots."""
    ctx = _single_context(sys)
    slots = sorted(
        {s for m in ctx.members for s in word_slots(sys.observables[m])}
    )
    index = {s: i for i, s in enumerate(slots)}
    row_masks = []
    for m in ctx.members:
        mask = 0
        for s in word_slots(sys.observables[m]):
            mask ^= 1 << index[s]
        row_masks.append(mask)
    targets = [0 if e == 1 else 1 for e in eigenvalues]
    total = 1 << len(slots)
    satisfying = 0
    for assignment in range(total):
        if all(
            (assignment & mask).bit_count() % 2 == t
            for mask, t in zip(row_masks, targets)
        ):
            satisfying += 1
    return satisfying, total


def ghz_infeasible(
    sys: ContextSystem,
    eigenvalues: Sequence[int],
    exhaustive_cap: int = EXHAUSTIVE_CAP_DEFAULT,
) -> bool:
    """No single-qubit value assignment reproduces the eigenvalue row targets.

    Runs both the exhaustive enumeration (when within ``exhaustive_cap``
    assignments) and the GF(2) encoding, and insists that they agree.
    """
    ctx = _single_context(sys)
    if len(eigenvalues) != len(ctx.members):
        raise ValueError("one eigenvalue per context member is required")
    if any(e not in (1, -1) for e in eigenvalues):
        raise ValueError("eigenvalues must be +1 or -1")
    ev_product = 1
    for e in eigenvalues:
        ev_product *= e
    if ev_product != ctx.sign:
        raise InconsistentEigenvaluesError(
            f"eigenvalue product {ev_product:+d} does not match "
            f"context product sign {ctx.sign:+d}; no joint eigenstate exists"
        )
    signed = tuple(
        Context((m,), e) for m, e in zip(ctx.members, eigenvalues)
    )
    _, rows, rhs = _slot_equations(sys, signed)
    infeasible = not gf2.solvable(rows, rhs)
    slot_count = max(r.bit_length() for r in rows) if rows else 0
    if (1 << slot_count) <= exhaustive_cap:
        satisfying, _ = count_ghz_assignments(sys, eigenvalues)
        if (satisfying == 0) != infeasible:
            raise AssertionError(
                "exhaustive and GF(2) feasibility checks disagree"
            )
    return infeasible


# ---------------------------------------------------------------------------
# table generators and fixtures


def build_star_table(N: int) -> ContextSystem:
    """The 2N-qubit, (2N+1)-observable single-context GHZ table.

    N=2 reproduces the four-qubit table; larger N append sliding XX pairs
    and close the pattern with X at qubit 3 and qubit 2N.
    """
    if N < 2:
        raise ValueError("star table requires N >= 2")
    w = 2 * N
    rows = [
        "Z" * w,
        "XX" + "Z" * (w - 2),
        "ZXX" + "I" * (w - 3),
        "XZIX" + "I" * (w - 4),
    ]
    for start in range(3, w - 1):  # XX at 0-based positions (start, start+1)
        rows.append("I" * start + "XX" + "I" * (w - start - 2))
    rows.append("II" + "X" + "I" * (w - 4) + "X")
    return system_from_rows(rows, -1)


KITE_THICK = ("IXXZ", "YYIX", "XIYY", "ZZZI")
KITE_THIN = ("IXXX", "YYIZ", "XIYY", "ZZZI")


def builtin_fixtures() -> Dict[str, ContextSystem]:
    """Named systems copied verbatim from the source tables."""
    fixtures: Dict[str, ContextSystem] = {}
    fixtures["table1-left"] = build_star_table(2)
    fixtures["table2-left"] = system_from_rows(
        ["ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ"], -1
    )
    fixtures["table2-right"] = system_from_rows(
        [
            "ZZZZZZZI",
            "XXXXXXIZ",
            "ZXZXIIZZ",
            "XZIIIIXX",
            "IIXZZXII",
            "IIIIXZXX",
        ],
        -1,
    )
    kite_obs = ("IXXZ", "YYIX", "XIYY", "ZZZI", "IXXX", "YYIZ")
    obs = tuple(parse_word(s) for s in kite_obs)
    idx = {s: i for i, s in enumerate(kite_obs)}
    thick = Context(tuple(idx[s] for s in KITE_THICK), -1)
    thin = Context(tuple(idx[s] for s in KITE_THIN), +1)
    fixtures["kite-quadruples"] = ContextSystem(4, obs, (thick, thin))
    return fixtures


# ---------------------------------------------------------------------------
# genuine multipartiteness


def _restricted_sign(words: Sequence[PauliWord], keep: Sequence[int]) -> Optional[int]:
    """Sign of the product of the restricted words, or None if not +-identity."""
    prod = product_of([w.restricted(keep) for w in words])
    if not prod.is_identity_letters or prod.sigma % 2:
        return None
    return prod.sign


def find_proper_subproof(
    sys: ContextSystem,
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Search for a proper sub-table that is itself a GHZ-type proof.

    Returns (column positions, member occurrence indices) of a witness, or
    None.  A witness is a subset of row occurrences, restricted to a subset
    of columns, whose restricted words are distinct, pairwise commuting,
    have every (qubit, letter) slot appearing an even number of times, and
    multiply to -identity.
    """
    ctx = _single_context(sys)
    words = sys.context_words(ctx)
    nrows = len(words)
    full_cols = tuple(range(sys.n))
    for bits in range(1, 1 << sys.n):
        cols = tuple(p for p in range(sys.n) if bits & (1 << p))
        restricted = [w.restricted(cols) for w in words]
        alive = [i for i, w in enumerate(restricted) if not w.is_identity_letters]
        if len(alive) < 2:
            continue
        # slot-parity matrix over the surviving rows
        slots = sorted(
            {s for i in alive for s in word_slots(restricted[i])}
        )
        index = {s: i for i, s in enumerate(slots)}
        width = len(slots)
        rows_bits = []
        for i in alive:
            row = 0
            for s in word_slots(restricted[i]):
                row ^= 1 << (width - 1 - index[s])
            rows_bits.append(row)
        kernel = gf2.left_nullspace(rows_bits, width)
        if not kernel:
            continue
        for vec in gf2.enumerate_span(kernel):
            if vec == 0:
                continue
            chosen = [alive[i] for i in gf2.row_bits(vec, len(alive))]
            if cols == full_cols and len(chosen) == nrows:
                continue  # the original table itself
            sub = [restricted[i] for i in chosen]
            keys = {(w.x, w.z) for w in sub}
            if len(keys) != len(sub):
                continue
            if any(
                not commutes(a, b) for a, b in itertools.combinations(sub, 2)
            ):
                continue
            prod = product_of(sub)
            if prod.sigma % 2 == 0 and prod.sign == -1:
                return cols, tuple(chosen)
    return None


def is_genuinely_multipartite(sys: ContextSystem) -> bool:
    """True iff no proper row/column sub-table is itself a valid proof."""
    return find_proper_subproof(sys) is None
