"""Basis tables and parity proofs over a projector pool.

Bases are exact covers of the identity: mutually orthogonal projectors
whose ranks sum to 2^n.  A parity proof is an odd subset of the bases in
which every projector occurs an even number of times.  A proof is critical
when it stops being a proof as soon as any single basis is dropped, i.e.
the remaining bases admit a 0/1 value assignment giving each basis exactly
one value-1 projector.  A weaker subset-based notion (no smaller parity
proof inside) is also computed and any divergence is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import gf2
from .projectors import ProjectorPool, StabilizerProjector, orthogonal

BASIS_CAP_DEFAULT = 100_000
KERNEL_CAP_DEFAULT = 26
BRUTE_FORCE_CAP_DEFAULT = 1 << 20


@dataclass(frozen=True)
class Basis:
    projector_ids: Tuple[int, ...]
    kind: str  # "pure" | "hybrid"

    @property
    def size(self) -> int:
        return len(self.projector_ids)


@dataclass(frozen=True)
class BasisTable:
    pool: ProjectorPool
    bases: Tuple[Basis, ...]
    partial: bool = False

    @property
    def n(self) -> int:
        return self.pool.n

    def pure_count(self) -> int:
        return sum(1 for b in self.bases if b.kind == "pure")

    def hybrid_count(self) -> int:
        return sum(1 for b in self.bases if b.kind == "hybrid")

    def incidence_rows(self) -> List[int]:
        """Projector-by-basis GF(2) matrix as int rows (bit j = basis j)."""
        nb = len(self.bases)
        rows = [0] * len(self.pool.projectors)
        for j, basis in enumerate(self.bases):
            for pid in basis.projector_ids:
                rows[pid] |= 1 << (nb - 1 - j)
        return rows


def enumerate_bases(
    pool: ProjectorPool, cap: int = BASIS_CAP_DEFAULT
) -> BasisTable:
    """All sets of mutually orthogonal projectors with rank-sum 2^n.

    Exact-cover backtracking over the orthogonality graph in canonical
    projector order; exceeding ``cap`` bases flags the table as partial.
    """
    projs = pool.projectors
    count = len(projs)
    target = 1 << pool.n
    order = sorted(range(count), key=lambda i: projs[i].key)
    compat = [0] * count
    for a in range(count):
        for b in range(a + 1, count):
            if orthogonal(projs[a], projs[b]):
                compat[a] |= 1 << b
                compat[b] |= 1 << a
    pure_families = {frozenset(fam) for fam in pool.context_families}

    found: List[Tuple[int, ...]] = []
    partial = False

    def extend(chosen: List[int], rank_sum: int, allowed: int, start: int):
        nonlocal partial
        if partial:
            return
        if rank_sum == target:
            if len(found) >= cap:
                partial = True
                return
            found.append(tuple(sorted(chosen)))
            return
        for pos in range(start, count):
            i = order[pos]
            if not (allowed >> i) & 1:
                continue
            r = projs[i].rank
            if rank_sum + r > target:
                continue
            chosen.append(i)
            extend(chosen, rank_sum + r, allowed & compat[i], pos + 1)
            chosen.pop()

    extend([], 0, (1 << count) - 1, 0)
    bases = tuple(
        Basis(ids, "pure" if frozenset(ids) in pure_families else "hybrid")
        for ids in sorted(found)
    )
    return BasisTable(pool, bases, partial=partial)


def is_saturated(table: BasisTable) -> bool:
    """Every orthogonal projector pair co-occurs in at least one basis."""
    together = set()
    for basis in table.bases:
        for a, b in itertools.combinations(basis.projector_ids, 2):
            together.add((a, b))
    projs = table.pool.projectors
    for a, b in itertools.combinations(range(len(projs)), 2):
        if orthogonal(projs[a], projs[b]) and (a, b) not in together:
            return False
    return True


# ---------------------------------------------------------------------------
# parity proofs


@dataclass(frozen=True)
class ParityProof:
    basis_ids: Tuple[int, ...]
    symbol: str
    symbol_ascii: str

    @property
    def num_bases(self) -> int:
        return len(self.basis_ids)


@dataclass
class ProofCensus:
    total: int
    proofs: List[ParityProof]
    symbol_counts: Dict[str, int]
    basis_count_histogram: Dict[int, int]
    kernel_dimension: int
    partial: bool = False
    brute_force_agrees: Optional[bool] = None
    subset_critical_total: int = 0

    def smallest(self) -> Optional[ParityProof]:
        if not self.proofs:
            return None
        return min(
            self.proofs,
            key=lambda p: (self._projector_count(p), p.num_bases, p.basis_ids),
        )

    _projcount_cache: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def _projector_count(self, proof: ParityProof) -> int:
        # symbol left part encodes the projector count; parse is avoided by
        # caching at census build time
        return self._projcount_cache[proof.basis_ids]

    def summary_dict(self, table: BasisTable) -> dict:
        report = two_power_h_report(table, self)
        return {
            "total": self.total,
            "types": [
                {"symbol": sym, "count": cnt}
                for sym, cnt in sorted(self.symbol_counts.items())
            ],
            "basis_count_histogram": {
                str(k): v for k, v in sorted(self.basis_count_histogram.items())
            },
            "kernel_dimension": self.kernel_dimension,
            "subset_critical_total": self.subset_critical_total,
            "criticality_divergence": self.subset_critical_total != self.total,
            "partial": self.partial,
            "H": report["H"],
            "two_power_H_holds": report["holds"],
        }


def _proof_multiplicities(
    basis_ids: Sequence[int], table: BasisTable
) -> Dict[int, int]:
    mult: Dict[int, int] = {}
    for b in basis_ids:
        for pid in table.bases[b].projector_ids:
            mult[pid] = mult.get(pid, 0) + 1
    return mult


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def render_symbol(
    classes: Dict[Tuple[int, int], int], sizes: Dict[int, int]
) -> Tuple[str, str]:
    """Format (rank, multiplicity) -> count classes and basis-size counts.

    Returns the (utf8, ascii) forms, e.g. ("12²₂12⁴₂−4₄4₆1₈",
    "12^2_2 12^4_2 - 4_4 4_6 1_8").
    """
    left_u = "".join(
        f"{cnt}{str(rank).translate(_SUP)}{str(m).translate(_SUB)}"
        for (rank, m), cnt in sorted(classes.items())
    )
    left_a = " ".join(
        f"{cnt}^{rank}_{m}" for (rank, m), cnt in sorted(classes.items())
    )
    right_u = "".join(
        f"{cnt}{str(size).translate(_SUB)}" for size, cnt in sorted(sizes.items())
    )
    right_a = " ".join(f"{cnt}_{size}" for size, cnt in sorted(sizes.items()))
    return left_u + "−" + right_u, left_a + " - " + right_a


def proof_symbol(
    basis_ids: Sequence[int], table: BasisTable
) -> Tuple[str, str]:
    """(utf8, ascii) symbol: projector rank/multiplicity classes - basis sizes."""
    mult = _proof_multiplicities(basis_ids, table)
    classes: Dict[Tuple[int, int], int] = {}
    for pid, m in mult.items():
        rank = table.pool.projectors[pid].rank
        classes[(rank, m)] = classes.get((rank, m), 0) + 1
    sizes: Dict[int, int] = {}
    for b in basis_ids:
        s = table.bases[b].size
        sizes[s] = sizes.get(s, 0) + 1
    return render_symbol(classes, sizes)


def assignment_satisfiable(
    basis_ids: Sequence[int],
    table: BasisTable,
    _cache: Optional[Dict[FrozenSet[int], bool]] = None,
) -> bool:
    """Can every listed basis be given exactly one value-1 projector?

    Backtracking over shared projectors; a set of bases that admits such a
    0/1 assignment no longer proves anything.
    """
    key = frozenset(basis_ids)
    if _cache is not None and key in _cache:
        return _cache[key]
    bases = sorted(
        (table.bases[j].projector_ids for j in basis_ids), key=len
    )
    members = [0] * len(bases)
    for i, projs in enumerate(bases):
        for p in projs:
            members[i] |= 1 << p

    def dfs(i: int, ones: int, zeros: int) -> bool:
        if i == len(bases):
            return True
        chosen = next((p for p in bases[i] if ones & (1 << p)), None)
        if chosen is not None:
            newzeros = zeros | (members[i] & ~(1 << chosen))
            if newzeros & ones:
                return False
            return dfs(i + 1, ones, newzeros)
        for p in bases[i]:
            if zeros & (1 << p):
                continue
            newones = ones | (1 << p)
            newzeros = zeros | (members[i] & ~(1 << p))
            if newones & newzeros:
                continue
            if dfs(i + 1, newones, newzeros):
                return True
        return False

    result = dfs(0, 0, 0)
    if _cache is not None:
        _cache[key] = result
    return result


def _drop_critical(
    basis_ids: Sequence[int],
    table: BasisTable,
    cache: Optional[Dict[FrozenSet[int], bool]] = None,
) -> bool:
    """Dropping any single basis must leave a satisfiable configuration."""
    ids = tuple(basis_ids)
    return all(
        assignment_satisfiable(
            tuple(j for j in ids if j != drop), table, cache
        )
        for drop in ids
    )


def _subset_critical(
    vec: int, nb: int, incidence_rows: List[int]
) -> bool:
    """No odd-weight kernel vector with support strictly inside vec."""
    support = [j for j in range(nb) if vec & (1 << (nb - 1 - j))]
    width = len(support)
    # incidence matrix restricted to the support columns
    rows = []
    for r in incidence_rows:
        row = 0
        for pos, j in enumerate(support):
            if r & (1 << (nb - 1 - j)):
                row |= 1 << (width - 1 - pos)
        rows.append(row)
    kernel = gf2.nullspace(rows, width)
    if len(kernel) <= 1:
        return True
    full = (1 << width) - 1
    for sub in gf2.enumerate_span(kernel):
        if sub == 0 or sub == full:
            continue
        if sub.bit_count() % 2 == 1:
            return False
    return True


def enumerate_parity_proofs(
    table: BasisTable,
    kernel_cap: int = KERNEL_CAP_DEFAULT,
) -> ProofCensus:
    """Census of critical parity proofs via the GF(2) incidence kernel."""
    if table.partial:
        raise ValueError("cannot take a census of a partial basis table")
    nb = len(table.bases)
    rows = table.incidence_rows()
    kernel = gf2.nullspace(rows, nb)
    kdim = len(kernel)
    census = ProofCensus(
        total=0,
        proofs=[],
        symbol_counts={},
        basis_count_histogram={},
        kernel_dimension=kdim,
    )
    if kdim > kernel_cap:
        census.partial = True
        return census
    sat_cache: Dict[FrozenSet[int], bool] = {}
    for vec in gf2.enumerate_span(kernel):
        if vec == 0 or vec.bit_count() % 2 == 0:
            continue
        # cheap filter first: a proof containing a smaller proof can never
        # survive the drop-one test
        if not _subset_critical(vec, nb, rows):
            continue
        census.subset_critical_total += 1
        basis_ids = tuple(
            j for j in range(nb) if vec & (1 << (nb - 1 - j))
        )
        if not _drop_critical(basis_ids, table, sat_cache):
            continue
        sym_u, sym_a = proof_symbol(basis_ids, table)
        proof = ParityProof(basis_ids, sym_u, sym_a)
        census.proofs.append(proof)
        census.symbol_counts[sym_u] = census.symbol_counts.get(sym_u, 0) + 1
        census.basis_count_histogram[len(basis_ids)] = (
            census.basis_count_histogram.get(len(basis_ids), 0) + 1
        )
        census._projcount_cache[basis_ids] = len(
            _proof_multiplicities(basis_ids, table)
        )
    census.total = len(census.proofs)
    return census


def brute_force_parity_proofs(
    table: BasisTable, subset_cap: int = BRUTE_FORCE_CAP_DEFAULT
) -> Tuple[List[Tuple[int, ...]], bool]:
    """Direct subset scan for odd even-incidence basis subsets.

    Returns (parity subsets found, truncated flag).  Criticality is not
    filtered here; this is the independent oracle for the kernel route.
    """
    nb = len(table.bases)
    cols = []
    projs = len(table.pool.projectors)
    for j, basis in enumerate(table.bases):
        col = 0
        for pid in basis.projector_ids:
            col |= 1 << pid
        cols.append(col)
    found = []
    limit = 1 << nb
    truncated = limit > subset_cap
    vec = 0
    for g in range(min(limit, subset_cap)):
        if g:
            low = (g & -g).bit_length() - 1
            vec ^= cols[low]
            gray = g ^ (g >> 1)
        else:
            gray = 0
        if gray and vec == 0 and gray.bit_count() % 2 == 1:
            found.append(
                tuple(j for j in range(nb) if gray & (1 << j))
            )
    return found, truncated


def verify_proof(basis_ids: Sequence[int], table: BasisTable) -> bool:
    """Odd basis count and even incidence for every projector."""
    if len(basis_ids) % 2 == 0:
        return False
    return all(
        m % 2 == 0 for m in _proof_multiplicities(basis_ids, table).values()
    )


def two_power_h_report(table: BasisTable, census: ProofCensus) -> dict:
    """Whether the census total equals 2^(hybrid count / 2)."""
    hybrids = table.hybrid_count()
    report = {
        "hybrid_bases": hybrids,
        "total_proofs": census.total,
        "H": None,
        "two_power_H": None,
        "holds": None,
    }
    if hybrids % 2 != 0:
        report["note"] = "odd hybrid basis count; H undefined"
        return report
    h = hybrids // 2
    report["H"] = h
    report["two_power_H"] = 1 << h
    report["holds"] = census.total == (1 << h)
    return report
