"""Map sidecar for gadget graphs: ``x <id>``, ``y <id>`` and one
``ie <u> <v> <id>`` line per edge of G'."""

from .models import GadgetInstance


def write_gadget_map(inst: GadgetInstance) -> str:
    lines = [
        f"c gadget for n={inst.source.n} m={inst.source.m} k={inst.k}; G vertices keep their ids",
        f"x {inst.x}",
        f"y {inst.y}",
    ]
    lines.extend(f"ie {u} {v} {w}" for (u, v), w in inst.edge_vertices)
    return "\n".join(lines) + "\n"
