"""Combinatorial model of singular-value diagrams of fold maps to a surface.

A diagram is a decorated curve arrangement on a closed model surface:
indexed, cooriented fold arcs; cusp and crossing nodes; and the complementary
regions with their Euler characteristics and regular-fiber data.  Open target
surfaces (the plane, the open Moebius band, ...) are stored on their capped
closure, with one region per capped boundary circle marked ``outer``.

Everything here is pure data plus traversal; validation lives in
:mod:`foldlab.validation` and rewriting in :mod:`foldlab.moves`.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

CUSP = "cusp"
CROSSING = "crossing"

LEFT = "left"
RIGHT = "right"

TAIL = 0  # arc end 0: the arc is directed tail -> head
HEAD = 1


def other_side(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True)
class TargetSurface:
    """The target surface of the fold map.

    ``genus`` is the orientable genus when ``orientable`` and the
    non-orientable genus (number of cross-caps) otherwise.  A surface with
    ``boundary_circles > 0`` denotes an open target; its diagrams are stored
    on the capped closed model with that many ``outer``-marked regions.
    """

    orientable: bool
    genus: int
    boundary_circles: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0 or self.boundary_circles < 0:
            raise ValueError("genus and boundary_circles must be non-negative")
        if not self.orientable and self.genus == 0:
            raise ValueError("a non-orientable surface needs genus >= 1")

    @property
    def closed(self) -> bool:
        return self.boundary_circles == 0

    @property
    def euler(self) -> int:
        """Euler characteristic of the surface itself (before capping)."""
        base = 2 - 2 * self.genus if self.orientable else 2 - self.genus
        return base - self.boundary_circles

    @property
    def euler_closed_model(self) -> int:
        """Euler characteristic of the capped model the diagram lives on."""
        return self.euler + self.boundary_circles


SPHERE = TargetSurface(orientable=True, genus=0)
PLANE = TargetSurface(orientable=True, genus=0, boundary_circles=1)
OPEN_MOEBIUS = TargetSurface(orientable=False, genus=1, boundary_circles=1)


@dataclass
class Region:
    """A connected component of the model surface minus the diagram curves.

    ``chi`` is the (compactly supported = ordinary, in dimension two) Euler
    characteristic of the open region.  ``fiber_euler`` is the Euler
    characteristic of the regular fiber over the region, 0 off the image;
    ``sheet_count`` is the number of fiber points, meaningful for m = 2.
    ``orientable`` may be set explicitly on non-orientable targets; ``None``
    means "same as the target surface".
    """

    id: str
    chi: int
    in_image: bool = True
    fiber_euler: Optional[int] = None
    sheet_count: Optional[int] = None
    orientable: Optional[bool] = None
    outer: bool = False

    def is_orientable(self, surface: TargetSurface) -> bool:
        return surface.orientable if self.orientable is None else self.orientable


@dataclass
class Arc:
    """A fold arc: an edge of the diagram between nodes, or a closed loop.

    ``index`` is the fold index measured with respect to the coorientation,
    the normal arrow pointing into the ``coorient`` side.  ``left``/``right``
    name the adjacent regions for the tail-to-head direction of the arc.
    ``jump`` is fiber_euler(coorient side) - fiber_euler(other side); it is
    per-arc data (forced to -2/+2 for stored index 0/m-1, declared for
    indefinite arcs when m is even).
    """

    id: str
    index: int
    left: str
    right: str
    coorient: str = LEFT
    jump: Optional[int] = None

    def region_on(self, side: str) -> str:
        return self.left if side == LEFT else self.right

    def side_of(self, region_id: str) -> str:
        """Side(s) facing ``region_id``; raises if the region is not adjacent."""
        if self.left == region_id:
            return LEFT
        if self.right == region_id:
            return RIGHT
        raise KeyError(f"region {region_id} is not adjacent to arc {self.id}")

    def index_toward(self, side: str, m: int) -> int:
        """Fold index w.r.t. the coorientation pointing into ``side``."""
        return self.index if side == self.coorient else m - 1 - self.index


@dataclass(frozen=True)
class ArcEnd:
    arc: str
    end: int  # TAIL or HEAD


@dataclass
class Node:
    """A cusp (2 slots) or crossing (4 slots) of the diagram.

    Slots are listed in cyclic (counterclockwise) order around the node.  At
    a crossing, slots 0/2 and 1/3 are the two transverse strands.  At a cusp
    the two arcs are tangent; by convention the corner from slot 0 to slot 1
    (counterclockwise) is the horn, the thin wedge between the two arcs.
    """

    id: str
    kind: str
    slots: list[ArcEnd] = field(default_factory=list)


@dataclass
class FoldDiagram:
    """A singular-value diagram of a fold-with-cusps map M^m -> surface."""

    m: int
    surface: TargetSurface
    regions: dict[str, Region] = field(default_factory=dict)
    arcs: dict[str, Arc] = field(default_factory=dict)
    nodes: dict[str, Node] = field(default_factory=dict)
    chi_M: Optional[int] = None
    layout: Optional[dict] = None

    # -- basic bookkeeping ------------------------------------------------

    def copy(self) -> "FoldDiagram":
        return copy.deepcopy(self)

    def fresh_id(self, prefix: str) -> str:
        pools: dict[str, dict] = {"a": self.arcs, "n": self.nodes, "r": self.regions}
        pool = pools[prefix[0]]
        i = len(pool)
        while f"{prefix}{i}" in pool:
            i += 1
        return f"{prefix}{i}"

    def arc_end_node(self) -> dict[ArcEnd, tuple[str, int]]:
        """Map each attached arc end to its (node id, slot position)."""
        placed: dict[ArcEnd, tuple[str, int]] = {}
        for node in self.nodes.values():
            for pos, ae in enumerate(node.slots):
                placed[ae] = (node.id, pos)
        return placed

    def is_loop(self, arc_id: str) -> bool:
        placed = self.arc_end_node()
        return ArcEnd(arc_id, TAIL) not in placed and ArcEnd(arc_id, HEAD) not in placed

    # -- strand traversal -------------------------------------------------

    def _continuation(self, node: Node, pos: int) -> int:
        if node.kind == CUSP:
            return 1 - pos
        return (pos + 2) % 4

    def curve_components(self) -> list[frozenset[str]]:
        """Partition of the arcs into closed curve components.

        The strand continues through a cusp (the two arcs are tangent) and
        straight through a crossing.
        """
        placed = self.arc_end_node()
        seen: set[str] = set()
        components: list[frozenset[str]] = []
        for start in sorted(self.arcs):
            if start in seen:
                continue
            comp = {start}
            seen.add(start)
            # walk forward from the head end until we return
            cursor = ArcEnd(start, HEAD)
            while cursor in placed:
                node_id, pos = placed[cursor]
                node = self.nodes[node_id]
                nxt = node.slots[self._continuation(node, pos)]
                if nxt.arc in comp and nxt.arc == start:
                    break
                comp.add(nxt.arc)
                seen.add(nxt.arc)
                # leave through the far end of the next arc
                cursor = ArcEnd(nxt.arc, 1 - nxt.end)
                if cursor.arc == start:
                    break
            components.append(frozenset(comp))
        return components

    def component_count(self) -> int:
        return len(self.curve_components())

    def is_image_simple(self) -> bool:
        """No cusps and no crossings: the curves are disjointly embedded."""
        return not self.nodes

    # -- face traversal ---------------------------------------------------

    def face_orbits(self) -> list[list[tuple[str, int]]]:
        """Boundary walks of the regions.

        A dart is (arc id, orientation) with orientation TAIL->HEAD encoded
        as 1 and the reverse as 0; the face lies on the left of the walk.
        Arriving at slot i of a node, the walk turns the corner to slot i-1
        and leaves the node there.  Loop arcs contribute one singleton walk
        per side.
        """
        placed = self.arc_end_node()
        darts = [(a, o) for a in sorted(self.arcs) for o in (1, 0)]
        nxt: dict[tuple[str, int], tuple[str, int]] = {}
        for arc_id, orient in darts:
            arrive_end = HEAD if orient == 1 else TAIL
            cursor = ArcEnd(arc_id, arrive_end)
            if cursor not in placed:
                nxt[(arc_id, orient)] = (arc_id, orient)  # loop side
                continue
            node_id, pos = placed[cursor]
            node = self.nodes[node_id]
            out = node.slots[(pos - 1) % len(node.slots)]
            # leaving via `out`, walking away from the node
            out_orient = 1 if out.end == TAIL else 0
            nxt[(arc_id, orient)] = (out.arc, out_orient)
        orbits: list[list[tuple[str, int]]] = []
        seen: set[tuple[str, int]] = set()
        for d in darts:
            if d in seen:
                continue
            orbit = [d]
            seen.add(d)
            cur = nxt[d]
            while cur != d:
                orbit.append(cur)
                seen.add(cur)
                cur = nxt[cur]
            orbits.append(orbit)
        return orbits

    def dart_region(self, dart: tuple[str, int]) -> str:
        """Region on the left of the walking dart."""
        arc = self.arcs[dart[0]]
        return arc.left if dart[1] == 1 else arc.right

    def region_walks(self) -> dict[str, list[list[tuple[str, int]]]]:
        """Boundary walks grouped by the region they claim to bound."""
        grouped: dict[str, list[list[tuple[str, int]]]] = {r: [] for r in self.regions}
        for orbit in self.face_orbits():
            rid = self.dart_region(orbit[0])
            grouped.setdefault(rid, []).append(orbit)
        return grouped

    # -- Euler bookkeeping --------------------------------------------------

    def euler_cell_count(self) -> int:
        """(V - E) + sum of region chi, with one dummy vertex per loop."""
        loops = sum(1 for a in self.arcs if self.is_loop(a))
        v = len(self.nodes) + loops
        e = len(self.arcs) + loops
        return (v - e) + sum(r.chi for r in self.regions.values())

    def fiber_sum(self) -> Optional[int]:
        """Sum of fiber_euler(R) * chi(R); None when fiber data is missing."""
        total = 0
        for region in self.regions.values():
            if region.fiber_euler is None:
                return None
            total += region.fiber_euler * region.chi
        return total

    # -- cusp helpers -------------------------------------------------------

    def cusp_corner_side(self, node: Node, pos: int, corner: int) -> str:
        """Geometric side of the arc in ``pos`` facing the given corner.

        Corner c_i lies counterclockwise-between slots i and i+1.  For an
        incoming end (head at the node) corner c_pos is the arc's right side;
        for an outgoing end its left.  Corner c_{pos-1} is the opposite side.
        """
        ae = node.slots[pos]
        incoming = ae.end == HEAD
        if corner == pos:
            return RIGHT if incoming else LEFT
        if corner == (pos - 1) % len(node.slots):
            return LEFT if incoming else RIGHT
        raise ValueError("corner not adjacent to slot")

    def cusp_data(self, node_id: str) -> "CuspData":
        """Indices of the two arcs of a cusp w.r.t. the common cusp frame.

        The common normal at a cusp points into the horn for the slot-0 arc
        and out of the horn for the slot-1 arc (the branches lie on opposite
        sides of each other's normal).  Validity requires the two transported
        indices to differ by exactly one.
        """
        node = self.nodes[node_id]
        if node.kind != CUSP:
            raise ValueError(f"{node_id} is not a cusp")
        a0 = self.arcs[node.slots[0].arc]
        a1 = self.arcs[node.slots[1].arc]
        horn = 0
        s0 = self.cusp_corner_side(node, 0, horn)  # slot-0 side facing horn
        s1 = self.cusp_corner_side(node, 1, horn)
        i0 = a0.index_toward(s0, self.m)
        i1 = a1.index_toward(other_side(s1), self.m)
        horn_region = a0.region_on(s0)
        tip_region = a0.region_on(other_side(s0))
        return CuspData(
            node_id=node_id,
            arc0=a0.id,
            arc1=a1.id,
            index0=i0,
            index1=i1,
            horn_region=horn_region,
            tip_region=tip_region,
        )


@dataclass(frozen=True)
class CuspData:
    """Resolved cusp frame: arc indices w.r.t. the common cusp normal."""

    node_id: str
    arc0: str
    arc1: str
    index0: int
    index1: int
    horn_region: str
    tip_region: str

    @property
    def lower_index(self) -> int:
        return min(self.index0, self.index1)

    @property
    def valid(self) -> bool:
        return abs(self.index0 - self.index1) == 1

    def lower_arc(self) -> str:
        return self.arc0 if self.index0 < self.index1 else self.arc1

    def upper_arc(self) -> str:
        return self.arc1 if self.index0 < self.index1 else self.arc0


def make_region(rid: str, chi: int, **kw) -> Region:
    return Region(id=rid, chi=chi, **kw)


__all__ = [
    "CUSP",
    "CROSSING",
    "LEFT",
    "RIGHT",
    "TAIL",
    "HEAD",
    "other_side",
    "TargetSurface",
    "SPHERE",
    "PLANE",
    "OPEN_MOEBIUS",
    "Region",
    "Arc",
    "ArcEnd",
    "Node",
    "FoldDiagram",
    "CuspData",
]
