"""Schematic emission as Graphviz DOT, one rank per timeslot.

Layout coordinates are left to the DOT consumer; this module only emits the
topology, the slot ranks, and optional wire values.
"""

from __future__ import annotations

import shutil
import subprocess
from dataclasses import dataclass
from typing import Mapping, Optional

from .netlist import Netlist
from .sim import signal_values


@dataclass(frozen=True)
class RenderOptions:
    format: str = "dot"  # "dot" or "svg"
    show_slots: bool = True
    values: Optional[Mapping[str, int]] = None


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def connections(n: Netlist):
    """(source, sink, port) for every wire, one entry per fan-out branch."""
    edges = []
    for g in n.gates:
        for port, src in enumerate(g.inputs):
            edges.append((src, g.id, port))
    for oname, src in n.outputs:
        edges.append((src, oname, 0))
    return edges


def to_dot(n: Netlist, show_slots: bool = True, values: Optional[Mapping[str, int]] = None) -> str:
    wire_values = signal_values(n, values) if values is not None else None
    out_slot = n.max_slot() + 2
    lines = [f"digraph {_q(n.name)} {{", "  rankdir=LR;", "  node [fontsize=10];"]

    ranks = {0: []}

    def node(name, label, shape, slot):
        if show_slots:
            label += f"\n@{slot}"
        lines.append(f"  {_q(name)} [label={_q(label)}, shape={shape}];")
        ranks.setdefault(slot, []).append(name)

    for name in n.inputs:
        node(name, f"input {name}", "cds", 0)
    for name, value in n.constants:
        node(name, f"{name} = {int(value)}", "plaintext", 0)
    for g in n.gates:
        node(g.id, f"{g.kind.value} {g.id}", "box", g.slot or 0)
    for name, _ in n.outputs:
        node(name, f"output {name}", "cds", out_slot)

    for slot in sorted(ranks):
        members = " ".join(_q(m) + ";" for m in ranks[slot])
        lines.append(f"  {{ rank=same; {members} }}  // slot {slot}")

    arity = {g.id: len(g.inputs) for g in n.gates}
    for src, dst, port in connections(n):
        attrs = []
        if arity.get(dst, 1) > 1:
            attrs.append(f"headlabel={_q('ab'[port])}")
        if wire_values is not None:
            attrs.append(f"label={_q(str(wire_values[src]))}")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(src)} -> {_q(dst)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(n: Netlist, opts: RenderOptions = RenderOptions()) -> str:
    dot = to_dot(n, opts.show_slots, opts.values)
    if opts.format == "dot":
        return dot
    if opts.format != "svg":
        raise ValueError(f"unknown render format {opts.format!r}")
    exe = shutil.which("dot")
    if exe is None:
        raise RuntimeError("SVG output needs the Graphviz 'dot' program on PATH")
    proc = subprocess.run([exe, "-Tsvg"], input=dot, capture_output=True, text=True, check=True)
    return proc.stdout
