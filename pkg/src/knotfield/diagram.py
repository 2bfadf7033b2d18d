"""Planar diagrams (PD codes) extracted from mosaics, and exact bracket/Jones.

A crossing stores its four incident edge ids in counterclockwise cyclic
order starting from the incoming under-strand edge, plus the position
(1 or 3) of the incoming over-strand edge.  Edges run from crossing to
crossing along the traversal orientation, so each edge id appears exactly
twice across the diagram; closed components that meet no crossing are
counted separately as free loops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossingCapError, KnotfieldError
from .laurent import LaurentPolynomial
from .mosaic import (CROSSING_OVER, CROSSING_TILES, Mosaic, trace_components)

# ccw cyclic order of cell sides in the plane (x = column, y = -row).
CCW_SIDES = ("E", "N", "W", "S")

DEFAULT_CROSSING_CAP = 24


@dataclass(frozen=True)
class Crossing:
    ends: tuple  # 4 edge ids, ccw, ends[0] = incoming under edge
    over_in: int  # 1 or 3: ccw position of the incoming over edge

    @property
    def sign(self):
        # +1 when the over direction is 90 degrees cw from the under direction,
        # matching <positive kink> = -A^3 under the bracket smoothing rule.
        return 1 if self.over_in == 3 else -1


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple
    n_edges: int
    free_loops: int = 0
    n_components: int = 1

    @property
    def writhe(self):
        return sum(x.sign for x in self.crossings)

    def check(self):
        seen = {}
        for x in self.crossings:
            for e in x.ends:
                seen[e] = seen.get(e, 0) + 1
        for e, k in seen.items():
            if k != 2:
                raise KnotfieldError(f"edge {e} appears {k} times, expected 2")
        return self

    def mirror(self):
        """Switch every crossing (over <-> under)."""
        flipped = []
        for x in self.crossings:
            # The under strand becomes over: rotate the tuple so position 0
            # is the new incoming under edge (the old incoming over edge).
            k = x.over_in
            ends = tuple(x.ends[(k + i) % 4] for i in range(4))
            flipped.append(Crossing(ends, 4 - k))
        return PlanarDiagram(tuple(flipped), self.n_edges, self.free_loops,
                             self.n_components)

    def pd_code(self):
        return " ".join("X(%d,%d,%d,%d)" % x.ends for x in self.crossings) or "(no crossings)"


def from_xcode(quads):
    """Build a diagram from classical X(a,b,c,d) codes.

    Edges are assumed numbered 1..2c sequentially along the orientation;
    a is the incoming under edge and b, d the over pair.
    """
    quads = [tuple(int(v) for v in q) for q in quads]
    n_edges = 2 * len(quads)

    def succ(e):
        return e % n_edges + 1

    crossings = []
    for a, b, c, d in quads:
        if succ(b) == d:
            over_in = 1
        elif succ(d) == b:
            over_in = 3
        else:
            raise KnotfieldError(f"cannot orient over strand of X({a},{b},{c},{d})")
        crossings.append(Crossing((a, b, c, d), over_in))
    return PlanarDiagram(tuple(crossings), n_edges, 0, 1).check()


def to_diagram(m: Mosaic) -> PlanarDiagram:
    """Convert a valid mosaic with at least one component into a diagram."""
    strands = trace_components(m)
    if not strands:
        raise KnotfieldError("mosaic has zero components")

    crossing_cells = [i for i, t in enumerate(m.cells) if t in CROSSING_TILES]
    edge_id = 0
    component_count = len(strands)
    free_loops = 0

    # events[cell][side_entry] = (edge_in, edge_out)
    events = {cell: {} for cell in crossing_cells}
    for strand in strands:
        pas = strand.passages
        hits = [k for k, (cell, _, _) in enumerate(pas) if cell in events]
        if not hits:
            free_loops += 1
            continue
        # Edge j runs from crossing passage j to passage j+1 (cyclically).
        base, k = edge_id, len(hits)
        for j, hit in enumerate(hits):
            cell, entry, exit_ = pas[hit]
            events[cell][entry] = (base + (j - 1) % k, base + j, exit_)
        edge_id += k

    crossings = []
    for cell in crossing_cells:
        tile = m.cells[cell]
        over_pair = CROSSING_OVER[tile]
        side_info = {}  # side -> (edge, "in"|"out", over?)
        for entry, (e_in, e_out, exit_) in events[cell].items():
            over = frozenset({entry, exit_}) == over_pair
            side_info[entry] = (e_in, "in", over)
            side_info[exit_] = (e_out, "out", over)
        if len(side_info) != 4:
            raise KnotfieldError(f"crossing cell {cell} not traversed twice")
        order = [side_info[s] for s in CCW_SIDES]
        under_in_pos = next(i for i, (e, d, over) in enumerate(order)
                            if d == "in" and not over)
        ends = tuple(order[(under_in_pos + i) % 4][0] for i in range(4))
        over_in = next(i for i in (1, 3)
                       if order[(under_in_pos + i) % 4][1] == "in")
        crossings.append(Crossing(ends, over_in))

    return PlanarDiagram(tuple(crossings), edge_id, free_loops, component_count).check()


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial


def _loop_count(diagram, state):
    """Number of closed loops after smoothing every crossing per `state` bits.

    Bit i = 0 applies the A smoothing at crossing i (each under end joins
    its ccw-next end); bit 1 the B smoothing.
    """
    c = len(diagram.crossings)
    slots = 4 * c
    parent = list(range(slots))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    ends_at = {}
    for i, x in enumerate(diagram.crossings):
        for pos, e in enumerate(x.ends):
            ends_at.setdefault(e, []).append(4 * i + pos)
    for slot_pair in ends_at.values():
        union(slot_pair[0], slot_pair[1])
    for i in range(c):
        if (state >> i) & 1 == 0:  # A: (0,1) and (2,3)
            union(4 * i + 0, 4 * i + 1)
            union(4 * i + 2, 4 * i + 3)
        else:  # B: (1,2) and (3,0)
            union(4 * i + 1, 4 * i + 2)
            union(4 * i + 3, 4 * i + 0)
    return len({find(s) for s in range(slots)})


def bracket(diagram: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPolynomial:
    """Exact Kauffman bracket state sum in the variable A, <unknot> = 1."""
    c = len(diagram.crossings)
    if c > cap:
        raise CrossingCapError(c, cap)
    delta = LaurentPolynomial({2: -1, -2: -1})
    if c == 0:
        if diagram.free_loops < 1:
            raise KnotfieldError("empty diagram has no bracket")
        return delta ** (diagram.free_loops - 1)
    total = LaurentPolynomial.zero()
    delta_pows = [LaurentPolynomial.one()]
    for _ in range(2 * c + diagram.free_loops + 1):
        delta_pows.append(delta_pows[-1] * delta)
    for state in range(1 << c):
        b = bin(state).count("1")
        a = c - b
        loops = _loop_count(diagram, state) + diagram.free_loops
        total = total + LaurentPolynomial.monomial(a - b) * delta_pows[loops - 1]
    return total


def jones(diagram: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPolynomial:
    """Jones polynomial, exponents counted in units of t^(1/2).

    V = (-A^3)^(-w) <D> with the substitution A = t^(-1/4).
    """
    br = bracket(diagram, cap=cap)
    w = diagram.writhe
    sign = -1 if w % 2 else 1  # (-A^3)^(-w) = (-1)^w A^(-3w)
    poly_a = LaurentPolynomial.monomial(-3 * w, sign) * br
    out = {}
    for e, c0 in poly_a.coeffs.items():
        if e % 2:
            raise KnotfieldError("odd A-exponent in normalized bracket; diagram is inconsistent")
        out[-e // 2] = c0  # A^e = t^(-e/4) = (t^(1/2))^(-e/2)
    return LaurentPolynomial(out)


def jones_in_t(p: LaurentPolynomial) -> LaurentPolynomial:
    """Convert a Jones polynomial from t^(1/2) units to integral t powers."""
    if any(e % 2 for e in p.coeffs):
        raise KnotfieldError("polynomial has genuine half-integer t powers")
    return LaurentPolynomial({e // 2: c for e, c in p.coeffs.items()})


def evaluate_jones(p: LaurentPolynomial, t: float) -> float:
    """Evaluate a Jones polynomial (t^(1/2) exponent units) at a real t.

    Negative t requires integral t powers (true for knots).
    """
    if t == 0:
        raise KnotfieldError("cannot evaluate at t = 0")
    if t > 0:
        return float(p.evaluate(t ** 0.5))
    return float(jones_in_t(p).evaluate(t))
