"""Reversing diagrams: planar grids recording a reversing derivation.

The start word is drawn as a path, positive letters as right-oriented
edges and negative letters as down-oriented edges.  Every reversing step
closes the open pattern u^-1 v with right edges labelled v' and down
edges labelled u'; an empty v' or u' contributes a single
epsilon-labelled edge in its slot, so deletions close with an epsilon
square.  All cells accumulate: replaced path segments stay in the graph
as the upper-left borders of their cells.

Coordinates are longest-path counts of right and down edges from the
start corner (epsilon edges take a full grid step, as in hand-drawn
diagrams), which embeds the DAG on an integer grid for rendering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .reversing import ReversingTrace

EPSILON = "ε"


@dataclass(frozen=True)
class GridEdge:
    src: int
    dst: int
    label: str  # generator name, or "" for an epsilon edge
    direction: str  # "right" | "down"

    @property
    def display_label(self) -> str:
        return self.label or EPSILON


@dataclass
class GridDiagram:
    edges: list[GridEdge] = field(default_factory=list)
    coords: dict[int, tuple[int, int]] = field(default_factory=dict)


def build_diagram(trace: ReversingTrace) -> GridDiagram:
    """Replay a trace into the cumulative grid graph."""
    next_node = 0

    def fresh() -> int:
        nonlocal next_node
        next_node += 1
        return next_node - 1

    def edges_for(signed_letters, start_node: int, end_node: int) -> list[GridEdge]:
        nodes = [start_node] + [fresh() for _ in signed_letters[:-1]] + [end_node]
        if not signed_letters:
            return []
        return [
            GridEdge(nodes[k], nodes[k + 1], g, "right" if sign == 1 else "down")
            for k, (g, sign) in enumerate(signed_letters)
        ]

    all_edges: list[GridEdge] = []
    # Current border path; each entry is (edge, is_word_letter).
    path: list[tuple[GridEdge, bool]] = []

    start_node = fresh()
    node = start_node
    for g, sign in trace.start:
        nxt = fresh()
        edge = GridEdge(node, nxt, g, "right" if sign == 1 else "down")
        all_edges.append(edge)
        path.append((edge, True))
        node = nxt

    for step, _result in trace.steps:
        letter_positions = [k for k, (_, is_letter) in enumerate(path) if is_letter]
        span = letter_positions[step.position : step.position + step.span()]
        seg_start, seg_end = span[0], span[-1]
        a = path[seg_start][0].src
        b = path[seg_end][0].dst

        fragment = step.fragment()
        right_count = len(step.v_prime)
        corner = fresh()
        new_path: list[tuple[GridEdge, bool]] = []
        if right_count:
            new_path.extend((e, True) for e in edges_for(fragment[:right_count], a, corner))
        else:
            new_path.append((GridEdge(a, corner, "", "right"), False))
        if right_count < len(fragment):
            new_path.extend((e, True) for e in edges_for(fragment[right_count:], corner, b))
        else:
            new_path.append((GridEdge(corner, b, "", "down"), False))

        all_edges.extend(e for e, _ in new_path)
        path[seg_start : seg_end + 1] = new_path

    return GridDiagram(all_edges, _grid_coords(all_edges, start_node))


def _grid_coords(edges: list[GridEdge], start: int) -> dict[int, tuple[int, int]]:
    """Longest-path x (right steps) and y (down steps) from the start node."""
    nodes = {start}
    out: dict[int, list[GridEdge]] = {}
    indegree: dict[int, int] = {}
    for e in edges:
        nodes.update((e.src, e.dst))
        out.setdefault(e.src, []).append(e)
        indegree[e.dst] = indegree.get(e.dst, 0) + 1
    coords = {n: (0, 0) for n in nodes}
    ready = [n for n in sorted(nodes) if indegree.get(n, 0) == 0]
    order: list[int] = []
    pending = dict(indegree)
    while ready:
        n = ready.pop()
        order.append(n)
        for e in out.get(n, ()):
            pending[e.dst] -= 1
            if pending[e.dst] == 0:
                ready.append(e.dst)
    for n in order:
        x, y = coords[n]
        for e in out.get(n, ()):
            dx, dy = (1, 0) if e.direction == "right" else (0, 1)
            coords[e.dst] = (max(coords[e.dst][0], x + dx), max(coords[e.dst][1], y + dy))
    return coords


def to_dot(diagram: GridDiagram) -> str:
    """DOT text with rank hints reproducing the grid rows."""
    lines = [
        "digraph reversing {",
        "  rankdir=LR;",
        '  node [shape=point, width=0.06];',
        '  edge [fontsize=11];',
    ]
    for e in diagram.edges:
        style = ', style=dashed' if not e.label else ""
        lines.append(f'  n{e.src} -> n{e.dst} [label="{e.display_label}"{style}];')
    rows: dict[int, list[int]] = {}
    for node, (_, y) in sorted(diagram.coords.items()):
        rows.setdefault(y, []).append(node)
    for y in sorted(rows):
        members = " ".join(f"n{n};" for n in rows[y])
        lines.append(f"  {{ rank=same; {members} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_figure(diagram: GridDiagram, path: str) -> None:
    """Draw the grid with matplotlib and write it to path (format from the
    file extension)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [x for x, _ in diagram.coords.values()]
    ys = [y for _, y in diagram.coords.values()]
    width = max(xs) if xs else 1
    height = max(ys) if ys else 1
    fig, ax = plt.subplots(figsize=(1.2 * max(width, 1) + 1, 1.2 * max(height, 1) + 1))
    for e in diagram.edges:
        x0, y0 = diagram.coords[e.src]
        x1, y1 = diagram.coords[e.dst]
        ax.annotate(
            "",
            xy=(x1, -y1),
            xytext=(x0, -y0),
            arrowprops=dict(
                arrowstyle="-|>",
                color="black" if e.label else "grey",
                linestyle="-" if e.label else "--",
                shrinkA=4,
                shrinkB=4,
            ),
        )
        ax.text(
            (x0 + x1) / 2,
            (-(y0 + y1)) / 2,
            e.display_label,
            fontsize=11,
            ha="center",
            va="center",
            bbox=dict(boxstyle="round,pad=0.1", fc="white", ec="none"),
        )
    for node, (x, y) in diagram.coords.items():
        ax.plot([x], [-y], marker="o", markersize=2.5, color="black")
    ax.set_axis_off()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
