"""Kernel provenance sidecar.

Lines:
    c <comment>
    x <vertex>                               modulator vertex, source ids
    k <kernel-vertex> <source-vertex>        kernel relabeling
    dv <vertex> <clique-rep> <Y-bitmask>     vertex removed by type capping
    dc <clique-rep> <survivor-rep>           clique removed by the mega-type rule
"""

from .models import KernelInstance


def write_provenance(kernel: KernelInstance) -> str:
    lines = [
        f"c kernel {kernel.variant.value} k={kernel.k} cap={kernel.cap} "
        f"vertices {kernel.graph.n}/{kernel.source.n} bound {kernel.size_bound}",
    ]
    if kernel.shortcut is not None:
        lines.append("c k reaches the modulator construction bound; kernel is the input")
    lines.extend(f"x {x}" for x in kernel.modulator.ordered)
    lines.extend(f"k {new} {old}" for new, old in enumerate(kernel.kept))
    lines.extend(f"dv {dv.vertex} {dv.clique_rep} {dv.mask}" for dv in kernel.deleted_vertices)
    lines.extend(f"dc {dc.clique_rep} {dc.survivor_rep}" for dc in kernel.deleted_cliques)
    return "\n".join(lines) + "\n"

