"""Backtracking completion search for parity-witness systems.

Given a seed system, the search adds three-member contexts (commuting
pairs closed by their product) until every observable lies on an even
number of contexts and the number of -identity contexts is odd.  Results
are deduplicated up to qubit permutations combined with relabelings of
X, Y and Z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .pauli import PauliWord, all_words, commutes, multiply, parse_word, product_of
from .systems import Context, ContextSystem, parity_witness, verify_system

BUDGET_DEFAULT = 5_000_000

ObsKey = Tuple[int, int]  # (xmask, zmask)


@dataclass(frozen=True)
class TripleContext:
    members: Tuple[ObsKey, ...]  # sorted
    sign: int


@dataclass
class SearchResult:
    systems: List[ContextSystem]
    complete: bool
    nodes: int


def three_member_contexts(n: int) -> List[TripleContext]:
    """All {P, Q, |PQ|} triples of distinct commuting observables."""
    words = list(all_words(n))
    seen: Dict[FrozenSet[ObsKey], TripleContext] = {}
    for i, p in enumerate(words):
        for q in words[i + 1:]:
            if not commutes(p, q):
                continue
            prod = multiply(p, q)
            r_key = (prod.x, prod.z)
            key = frozenset([(p.x, p.z), (q.x, q.z), r_key])
            if len(key) != 3 or (0, 0) in key:
                continue
            if key in seen:
                continue
            members = tuple(sorted(key))
            sign = product_of(
                [PauliWord(n, x, z).unsigned() for x, z in members]
            ).sign
            seen[key] = TripleContext(members, sign)
    return sorted(seen.values(), key=lambda t: t.members)


def search_completions(
    seed: ContextSystem,
    shape: Sequence[int],
    budget: int = BUDGET_DEFAULT,
) -> SearchResult:
    """Add ``len(shape)`` three-member contexts making the parity witness hold.

    Only three-member context shapes are supported; the completed systems
    all pass verify_system and parity_witness.
    """
    if any(s != 3 for s in shape):
        raise NotImplementedError(
            "completion search supports three-member context shapes only"
        )
    if not verify_system(seed).ok:
        return SearchResult([], complete=True, nodes=0)

    n = seed.n
    k = len(shape)
    triples = three_member_contexts(n)
    by_obs: Dict[ObsKey, List[int]] = {}
    for idx, t in enumerate(triples):
        for m in t.members:
            by_obs.setdefault(m, []).append(idx)

    parity: Dict[ObsKey, int] = {}
    for ctx in seed.contexts:
        for m in ctx.members:
            ob = seed.observables[m]
            key = (ob.x, ob.z)
            parity[key] = parity.get(key, 0) ^ 1
    seed_neg = sum(1 for c in seed.contexts if c.sign == -1)

    nodes = 0
    exhausted = False
    accepted: Dict[str, ContextSystem] = {}

    def accept(chosen: Tuple[int, ...]) -> None:
        neg = seed_neg + sum(1 for i in chosen if triples[i].sign == -1)
        if neg % 2 == 0:
            return
        system = _assemble(seed, [triples[i] for i in chosen])
        if not verify_system(system).ok or not parity_witness(system):
            return
        key = canonical_form(system)
        accepted.setdefault(key, system)

    def recurse(chosen: List[int], odd: FrozenSet[ObsKey], remaining: int):
        nonlocal nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if remaining == 0:
            if not odd:
                accept(tuple(sorted(chosen)))
            return
        if len(odd) > 3 * remaining:
            return
        if odd:
            pivot = min(odd)
            candidates = by_obs.get(pivot, [])
        else:
            last = max(chosen) if chosen else -1
            candidates = range(last + 1, len(triples))
        used = set(chosen)
        for idx in candidates:
            if idx in used:
                continue
            new_odd = set(odd)
            for m in triples[idx].members:
                if m in new_odd:
                    new_odd.remove(m)
                else:
                    new_odd.add(m)
            chosen.append(idx)
            recurse(chosen, frozenset(new_odd), remaining - 1)
            chosen.pop()

    odd0 = frozenset(key for key, p in parity.items() if p)
    recurse([], odd0, k)
    systems = [accepted[key] for key in sorted(accepted)]
    return SearchResult(systems, complete=not exhausted, nodes=nodes)


def _assemble(
    seed: ContextSystem, new_contexts: Sequence[TripleContext]
) -> ContextSystem:
    obs: List[PauliWord] = list(seed.observables)
    index: Dict[ObsKey, int] = {(ob.x, ob.z): i for i, ob in enumerate(obs)}
    contexts: List[Context] = list(seed.contexts)
    for t in new_contexts:
        members = []
        for key in t.members:
            if key not in index:
                index[key] = len(obs)
                obs.append(PauliWord(seed.n, key[0], key[1]).unsigned())
            members.append(index[key])
        contexts.append(Context(tuple(members), t.sign))
    return ContextSystem(seed.n, tuple(obs), tuple(contexts))


# ---------------------------------------------------------------------------
# canonical forms under column permutation x letter permutation

_LETTER_BITS = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def _transform_word(
    word: PauliWord, qperm: Sequence[int], lperm: Dict[str, str]
) -> PauliWord:
    """Permute qubit positions and relabel X/Y/Z letters, phase +1."""
    n = word.n
    x = z = 0
    for pos in range(n):
        letter = word.letter(qperm[pos])
        if letter == "I":
            continue
        xb, zb = _LETTER_BITS[lperm[letter]]
        bit = n - 1 - pos
        x |= xb << bit
        z |= zb << bit
    return PauliWord(n, x, z).unsigned()


def canonical_form(sys: ContextSystem) -> str:
    """Minimal serialization over all qubit and letter permutations."""
    best: Optional[str] = None
    letters = "XYZ"
    for qperm in itertools.permutations(range(sys.n)):
        for lp in itertools.permutations(letters):
            lperm = dict(zip(letters, lp))
            new_obs = [
                _transform_word(ob, qperm, lperm) for ob in sys.observables
            ]
            ctx_forms = []
            for ctx in sys.contexts:
                words = sorted(str(new_obs[m]) for m in ctx.members)
                sign = product_of([new_obs[m] for m in ctx.members]).sign
                ctx_forms.append((tuple(words), sign))
            form = repr((sorted(str(w) for w in new_obs), sorted(ctx_forms)))
            if best is None or form < best:
                best = form
    return best or ""
