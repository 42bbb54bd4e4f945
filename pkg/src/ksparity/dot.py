"""DOT-format export of context hypergraphs.

Observables become circle nodes; each context is drawn as a clique, bold
("thick") for product -identity and thin for +identity.
"""

from __future__ import annotations

import itertools

from .systems import ContextSystem


def export_dot(sys: ContextSystem, name: str = "ks_system") -> str:
    if not sys.contexts:
        raise ValueError("no contexts to export")
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i, ob in enumerate(sys.observables):
        lines.append(f'  o{i} [label="{ob}"];')
    for ci, ctx in enumerate(sys.contexts):
        style = "bold" if ctx.sign == -1 else "solid"
        for a, b in itertools.combinations(sorted(set(ctx.members)), 2):
            lines.append(
                f'  o{a} -- o{b} [style={style}, label="c{ci}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
