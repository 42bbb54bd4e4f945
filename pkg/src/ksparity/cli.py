"""Command-line front end.

Every subcommand reads and writes canonical JSON so that re-running a
recorded command reproduces byte-identical result files.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 resource cap hit.
"""

from __future__ import annotations

import hashlib
import json
import sys as _sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import click
import numpy as np

from . import __version__
from .pauli import DenseCapError, PauliParseError
from .systems import (
    ContextSystem,
    InconsistentEigenvaluesError,
    build_star_table,
    builtin_fixtures,
    count_ghz_assignments,
    default_eigenvalues,
    find_proper_subproof,
    ghz_infeasible,
    verify_system,
)
from .states import (
    DenseState,
    UnderdeterminedEigenstateError,
    bell_decompose,
    joint_eigenstate,
    measure_computational,
)
from .projectors import projectors_of
from .parity import (
    _drop_critical,
    brute_force_parity_proofs,
    enumerate_bases,
    enumerate_parity_proofs,
    is_saturated,
    proof_symbol,
    two_power_h_report,
    verify_proof,
)
from .search import search_completions
from .dot import export_dot
from .reproduce import run_all

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_ASCII_LABELS = {"Φ": "Phi", "Ψ": "Psi"}


def _read_config(path: Optional[str]) -> Dict[str, int]:
    """TOML-style key = value lines for caps and worker counts."""
    settings: Dict[str, int] = {}
    if not path:
        return settings
    known = {"dense_cap", "basis_cap", "kernel_cap", "workers"}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in known:
            raise click.UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            settings[key] = int(value.strip())
        except ValueError:
            raise click.UsageError(f"{path}:{lineno}: {key} must be an integer")
    return settings


class Run:
    """Per-invocation settings plus manifest bookkeeping."""

    def __init__(self, settings: Dict[str, int], ascii_only: bool,
                 manifest_path: Optional[str]):
        self.settings = settings
        self.ascii_only = ascii_only
        self.manifest_path = manifest_path
        self.inputs: List[str] = []
        self.started = time.perf_counter()

    def cap(self, name: str, default: int) -> int:
        return self.settings.get(name, default)

    def note_input(self, path: str) -> None:
        self.inputs.append(path)

    def emit(self, payload: dict, output: Optional[str], code: int = EXIT_OK):
        text = json.dumps(
            payload, indent=2, sort_keys=True, ensure_ascii=self.ascii_only
        ) + "\n"
        results = []
        if output:
            Path(output).write_text(text)
            results.append(output)
        else:
            click.echo(text, nl=False)
        if self.manifest_path:
            manifest = {
                "command": _sys.argv,
                "versions": {
                    "ksparity": __version__,
                    "python": _sys.version.split()[0],
                    "numpy": np.__version__,
                },
                "inputs": {
                    p: hashlib.sha256(Path(p).read_bytes()).hexdigest()
                    for p in self.inputs
                },
                "results": results,
                "wall_seconds": round(time.perf_counter() - self.started, 6),
            }
            Path(self.manifest_path).write_text(
                json.dumps(manifest, indent=2, sort_keys=True) + "\n"
            )
        raise SystemExit(code)


def _load_system(run: Run, path: str) -> ContextSystem:
    run.note_input(path)
    try:
        return ContextSystem.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError, PauliParseError) as exc:
        raise click.UsageError(f"cannot read system file {path}: {exc}")


def _load_state(run: Run, path: str) -> DenseState:
    run.note_input(path)
    try:
        return DenseState.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise click.UsageError(f"cannot read state file {path}: {exc}")


def _parse_eigenvalues(text: str) -> List[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise click.UsageError(f"bad eigenvalue {tok!r}; use + or -")
    return out


def _parse_pairing(text: str) -> List[Tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise click.UsageError(
                f"bad pairing chunk {chunk!r}; use e.g. '1,2;3,4'"
            )
        pairs.append((int(parts[0]), int(parts[1])))
    return pairs


def _symbolize(run: Run, utf8: str, ascii_form: str) -> str:
    return ascii_form if run.ascii_only else utf8


output_option = click.option(
    "-o", "--output", type=click.Path(), default=None,
    help="write the JSON payload to this file instead of stdout",
)


@click.group()
@click.version_option(__version__)
@click.option("--config", type=click.Path(exists=True), default=None,
              help="key = value file with dense_cap, basis_cap, kernel_cap, workers")
@click.option("--workers", type=int, default=None,
              help="parallelism bound (accepted on all subcommands)")
@click.option("--ascii", "ascii_only", is_flag=True,
              help="ASCII symbols and escaped JSON for plain logs")
@click.option("--manifest", "manifest_path", type=click.Path(), default=None,
              help="write a run manifest (command, input hashes, timing) here")
@click.pass_context
def main(ctx, config, workers, ascii_only, manifest_path):
    """Kochen-Specker tables, GHZ checks, eigenstates and parity censuses."""
    settings = _read_config(config)
    if workers is not None:
        settings["workers"] = workers
    ctx.obj = Run(settings, ascii_only, manifest_path)


@main.group()
def gen():
    """Generate built-in systems."""


@gen.command("star")
@click.option("--N", "N", type=int, required=True, help="half the qubit count")
@output_option
@click.pass_obj
def gen_star(run: Run, N: int, output):
    """The 2N-qubit single-context GHZ table."""
    try:
        sys = build_star_table(N)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    run.emit(sys.to_json_dict(), output)


@gen.command("fixture")
@click.argument("name")
@output_option
@click.pass_obj
def gen_fixture(run: Run, name: str, output):
    """One of the named built-in systems (use 'list' to enumerate)."""
    fixtures = builtin_fixtures()
    if name == "list":
        run.emit({"fixtures": sorted(fixtures)}, output)
    if name not in fixtures:
        raise click.UsageError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(fixtures))}"
        )
    run.emit(fixtures[name].to_json_dict(), output)


@main.command()
@click.argument("system_file", type=click.Path(exists=True))
@output_option
@click.pass_obj
def verify(run: Run, system_file, output):
    """Check commutativity and product signs of every context."""
    sys = _load_system(run, system_file)
    report = verify_system(sys)
    run.emit(
        {"ok": report.ok, "violations": report.violations},
        output,
        EXIT_OK if report.ok else EXIT_VERIFY,
    )


@main.command("ghz-check")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--eigenvalues", default=None,
              help="comma list of +/-, one per observable; default +...+ then the product sign")
@output_option
@click.pass_obj
def ghz_check(run: Run, system_file, eigenvalues, output):
    """Value-assignment infeasibility at single-qubit granularity."""
    sys = _load_system(run, system_file)
    report = verify_system(sys)
    if not report.ok:
        run.emit({"ok": False, "violations": report.violations}, output, EXIT_VERIFY)
    ev = (_parse_eigenvalues(eigenvalues) if eigenvalues
          else default_eigenvalues(sys))
    try:
        infeasible = ghz_infeasible(sys, ev)
    except InconsistentEigenvaluesError as exc:
        run.emit({"ok": False, "error": str(exc)}, output, EXIT_VERIFY)
        return
    satisfying, total = count_ghz_assignments(sys, ev)
    run.emit(
        {
            "eigenvalues": ev,
            "infeasible": infeasible,
            "satisfying_assignments": satisfying,
            "total_assignments": total,
        },
        output,
    )


@main.command()
@click.argument("system_file", type=click.Path(exists=True))
@output_option
@click.pass_obj
def multipartite(run: Run, system_file, output):
    """Search for a proper sub-table that is itself a proof."""
    sys = _load_system(run, system_file)
    witness = find_proper_subproof(sys)
    payload: dict = {"genuinely_multipartite": witness is None}
    if witness is not None:
        cols, rows = witness
        payload["witness"] = {
            "columns": [c + 1 for c in cols],
            "rows": list(rows),
        }
    run.emit(payload, output)


@main.command("search-complete")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--shape", required=True,
              help="comma list of context sizes to add, e.g. 3,3,3,3")
@click.option("--budget", type=int, default=5_000_000,
              help="search node budget")
@output_option
@click.pass_obj
def search_complete(run: Run, system_file, shape, budget, output):
    """Complete a seed into parity-witness systems, up to relabeling."""
    sys = _load_system(run, system_file)
    try:
        sizes = [int(s) for s in shape.split(",")]
    except ValueError:
        raise click.UsageError(f"bad shape {shape!r}")
    try:
        result = search_completions(sys, sizes, budget=budget)
    except NotImplementedError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "complete": result.complete,
        "nodes": result.nodes,
        "systems": [s.to_json_dict() for s in result.systems],
    }
    run.emit(payload, output, EXIT_OK if result.complete else EXIT_CAP)


@main.command()
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--eigenvalues", default=None,
              help="comma list of +/-, one per observable")
@output_option
@click.pass_obj
def state(run: Run, system_file, eigenvalues, output):
    """Joint eigenstate of a single-context system as a dense vector."""
    sys = _load_system(run, system_file)
    ev = (_parse_eigenvalues(eigenvalues) if eigenvalues
          else default_eigenvalues(sys))
    dense_cap = run.cap("dense_cap", 14)
    try:
        psi = joint_eigenstate(sys, ev, dense_cap=dense_cap)
    except UnderdeterminedEigenstateError as exc:
        run.emit(
            {"eigenspace_dimension": exc.dimension, "eigenvalues": ev},
            output,
        )
        return
    except InconsistentEigenvaluesError as exc:
        run.emit({"ok": False, "error": str(exc)}, output, EXIT_VERIFY)
        return
    except DenseCapError as exc:
        run.emit({"ok": False, "error": str(exc)}, output, EXIT_CAP)
        return
    run.emit(json.loads(psi.to_json()) | {"eigenvalues": ev}, output)


@main.command()
@click.argument("state_file", type=click.Path(exists=True))
@click.option("--pairing", required=True,
              help="semicolon list of qubit pairs, e.g. '1,2;3,4'")
@output_option
@click.pass_obj
def bell(run: Run, state_file, pairing, output):
    """Bell-pair decomposition of a state under a qubit pairing."""
    psi = _load_state(run, state_file)
    pairs = _parse_pairing(pairing)
    try:
        decomp = bell_decompose(psi, pairs)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    terms = {}
    for labels, coeff in sorted(decomp.nonzero().items()):
        key = "".join(labels)
        if run.ascii_only:
            for uni, asc in _ASCII_LABELS.items():
                key = key.replace(uni, asc)
        terms[key] = [float(coeff.real), float(coeff.imag)]
    run.emit(
        {"pairing": [list(p) for p in pairs], "terms": terms},
        output,
    )


@main.command()
@click.argument("state_file", type=click.Path(exists=True))
@click.option("--qubits", required=True, help="comma list of 1-based qubits")
@click.option("--outcome", required=True, help="bit string, one per qubit")
@output_option
@click.pass_obj
def measure(run: Run, state_file, qubits, outcome, output):
    """Computational-basis measurement of selected qubits."""
    psi = _load_state(run, state_file)
    try:
        qs = [int(q) for q in qubits.split(",") if q.strip()]
        prob, residual = measure_computational(psi, qs, outcome)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload: dict = {"probability": prob, "residual": None}
    if residual is not None:
        payload["residual"] = json.loads(residual.to_json())
    run.emit(payload, output)


@main.command()
@click.argument("system_file", type=click.Path(exists=True))
@output_option
@click.pass_obj
def projectors(run: Run, system_file, output):
    """Deduplicated eigenspace projectors of every context."""
    sys = _load_system(run, system_file)
    report = verify_system(sys)
    if not report.ok:
        run.emit({"ok": False, "violations": report.violations}, output, EXIT_VERIFY)
    pool = projectors_of(sys)
    run.emit(
        {
            "count": len(pool),
            "projectors": [
                {
                    "generators": [str(g) for g in p.generators],
                    "rank": p.rank,
                }
                for p in pool.projectors
            ],
            "context_families": [list(f) for f in pool.context_families],
        },
        output,
    )


def _build_table(run: Run, sys: ContextSystem):
    pool = projectors_of(sys)
    return pool, enumerate_bases(pool, cap=run.cap("basis_cap", 100_000))


@main.command()
@click.argument("system_file", type=click.Path(exists=True))
@output_option
@click.pass_obj
def bases(run: Run, system_file, output):
    """Exact-cover basis table over the projector pool."""
    sys = _load_system(run, system_file)
    pool, table = _build_table(run, sys)
    payload = {
        "projectors": len(pool),
        "bases": [
            {"projectors": list(b.projector_ids), "kind": b.kind}
            for b in table.bases
        ],
        "pure": table.pure_count(),
        "hybrid": table.hybrid_count(),
        "saturated": None if table.partial else is_saturated(table),
        "partial": table.partial,
    }
    run.emit(payload, output, EXIT_CAP if table.partial else EXIT_OK)


@main.command("parity-census")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--brute-force-check", is_flag=True,
              help="cross-check the kernel enumeration by direct subset scan")
@click.option("--catalog", type=click.Path(), default=None,
              help="write one JSON proof record per line to this file")
@output_option
@click.pass_obj
def parity_census(run: Run, system_file, brute_force_check, catalog, output):
    """Census of critical parity proofs with symbol classification."""
    sys = _load_system(run, system_file)
    pool, table = _build_table(run, sys)
    if table.partial:
        run.emit({"ok": False, "error": "basis table hit the cap"}, output, EXIT_CAP)
    census = enumerate_parity_proofs(
        table, kernel_cap=run.cap("kernel_cap", 26)
    )
    if census.partial:
        run.emit(
            {
                "ok": False,
                "error": "kernel dimension above the enumeration cap",
                "kernel_dimension": census.kernel_dimension,
            },
            output,
            EXIT_CAP,
        )
    if brute_force_check:
        brute, truncated = brute_force_parity_proofs(table)
        if truncated:
            census.brute_force_agrees = all(
                verify_proof(ids, table) for ids in brute
            )
        else:
            kernel_sets = set()
            nb = len(table.bases)
            from . import gf2

            for vec in gf2.enumerate_span(
                gf2.nullspace(table.incidence_rows(), nb)
            ):
                if vec and vec.bit_count() % 2 == 1:
                    kernel_sets.add(
                        tuple(j for j in range(nb) if vec & (1 << (nb - 1 - j)))
                    )
            census.brute_force_agrees = kernel_sets == set(brute)
    if catalog:
        with open(catalog, "w") as fh:
            for proof in census.proofs:
                fh.write(json.dumps(
                    {
                        "bases": list(proof.basis_ids),
                        "symbol": proof.symbol_ascii
                        if run.ascii_only else proof.symbol,
                        "critical": True,
                    },
                    ensure_ascii=run.ascii_only,
                ) + "\n")
    summary = census.summary_dict(table)
    if run.ascii_only:
        # symbols were collected in UTF-8; re-render for plain logs
        summary["types"] = [
            {
                "symbol": proof_symbol(p.basis_ids, table)[1],
                "count": census.symbol_counts[p.symbol],
            }
            for p in {q.symbol: q for q in census.proofs}.values()
        ]
        summary["types"].sort(key=lambda t: t["symbol"])
    if census.brute_force_agrees is not None:
        summary["brute_force_agrees"] = census.brute_force_agrees
    run.emit(summary, output)


@main.command()
@click.argument("proof_file", type=click.Path(exists=True))
@click.option("--system", "system_file", required=True,
              type=click.Path(exists=True),
              help="system file whose basis table the proof indexes")
@output_option
@click.pass_obj
def symbol(run: Run, proof_file, system_file, output):
    """Rank/multiplicity symbol of a proof given as {"bases": [ids]}."""
    run.note_input(proof_file)
    sys = _load_system(run, system_file)
    try:
        doc = json.loads(Path(proof_file).read_text())
        ids = [int(i) for i in doc["bases"]]
    except (OSError, ValueError, KeyError) as exc:
        raise click.UsageError(f"cannot read proof file {proof_file}: {exc}")
    pool, table = _build_table(run, sys)
    if any(not 0 <= i < len(table.bases) for i in ids):
        raise click.UsageError("proof references a basis id outside the table")
    valid = verify_proof(ids, table)
    critical = valid and _drop_critical(ids, table)
    utf8, ascii_form = proof_symbol(ids, table)
    run.emit(
        {
            "bases": sorted(ids),
            "symbol": ascii_form if run.ascii_only else utf8,
            "symbol_ascii": ascii_form,
            "valid": valid,
            "critical": critical,
        },
        output,
        EXIT_OK if valid else EXIT_VERIFY,
    )


@main.command("export-graph")
@click.argument("system_file", type=click.Path(exists=True))
@click.option("--name", default="ks_system", help="graph name in the DOT output")
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
def export_graph(run: Run, system_file, name, output):
    """DOT graph: observables as nodes, contexts as cliques (bold = -identity)."""
    sys = _load_system(run, system_file)
    try:
        text = export_dot(sys, name=name)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    raise SystemExit(EXIT_OK)


@main.command("reproduce-paper")
@click.option("--max-qubits", type=int, default=16,
              help="skip checks needing more qubits than this")
@click.option("--stretch", is_flag=True,
              help="attempt the ten-qubit multipartiteness search")
@output_option
@click.pass_obj
def reproduce_paper(run: Run, max_qubits, stretch, output):
    """Run every reproduction check and print a pass/fail table."""
    results = run_all(
        max_qubits=max_qubits,
        stretch=stretch,
        basis_cap=run.cap("basis_cap", 100_000),
        kernel_cap=run.cap("kernel_cap", 26),
    )
    for r in results:
        click.echo(
            f"[{r.status.upper():7s}] check {r.number:2d} "
            f"({r.seconds:8.2f}s) {r.name}",
            err=True,
        )
    failures = [r.number for r in results if r.status == "fail"]
    payload = {
        "checks": [
            # timings go to stderr only so the payload stays reproducible
            {
                "number": r.number,
                "name": r.name,
                "status": r.status,
                "detail": r.detail,
            }
            for r in results
        ],
        "failures": failures,
    }
    run.emit(payload, output, EXIT_OK if not failures else EXIT_VERIFY)


if __name__ == "__main__":
    main()
