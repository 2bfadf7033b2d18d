"""Local tile-rewrite moves generating the ambient group.

A move template is an unordered pair of sub-mosaic patterns with identical
boundary connection signatures, so swapping one for the other inside any
suitably-connected mosaic preserves suitably-connectedness.  The default
table (data/moves_default.json) carries planar-isotopy moves plus mosaic
Reidemeister moves R1, R2, R3; tables are data and are re-validated on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import MoveTableError, KnotfieldError
from .mosaic import Mosaic, NUM_TILES, TILE_SIDES, N, E, S, W

_DEFAULT_TABLE = None


def _pattern_boundary_signature(rows, cols, cells):
    """Frozenset of (side, index) boundary connection points of a pattern."""
    sig = set()
    for r in range(rows):
        for c in range(cols):
            sides = TILE_SIDES[cells[r * cols + c]]
            if r == 0 and N in sides:
                sig.add(("N", c))
            if r == rows - 1 and S in sides:
                sig.add(("S", c))
            if c == 0 and W in sides:
                sig.add(("W", r))
            if c == cols - 1 and E in sides:
                sig.add(("E", r))
    return frozenset(sig)


def _pattern_consistent(rows, cols, cells):
    """Interior edges of the pattern itself must match up."""
    for r in range(rows):
        for c in range(cols):
            sides = TILE_SIDES[cells[r * cols + c]]
            if c + 1 < cols:
                right = TILE_SIDES[cells[r * cols + c + 1]]
                if (E in sides) != (W in right):
                    return False
            if r + 1 < rows:
                below = TILE_SIDES[cells[(r + 1) * cols + c]]
                if (S in sides) != (N in below):
                    return False
    return True


@dataclass(frozen=True)
class MoveTemplate:
    name: str
    rows: int
    cols: int
    pattern_a: tuple
    pattern_b: tuple

    def __post_init__(self):
        if not (1 <= self.rows <= 3 and 1 <= self.cols <= 3):
            raise MoveTableError(f"{self.name}: pattern shape must be within 3x3")
        size = self.rows * self.cols
        for label, pat in (("pattern_a", self.pattern_a), ("pattern_b", self.pattern_b)):
            if len(pat) != size:
                raise MoveTableError(f"{self.name}: {label} has {len(pat)} cells, expected {size}")
            if any(not 0 <= t < NUM_TILES for t in pat):
                raise MoveTableError(f"{self.name}: {label} contains a bad tile id")
            if not _pattern_consistent(self.rows, self.cols, pat):
                raise MoveTableError(f"{self.name}: {label} has mismatched interior edges")
        if self.pattern_a == self.pattern_b:
            raise MoveTableError(f"{self.name}: patterns are identical")
        sig_a = _pattern_boundary_signature(self.rows, self.cols, self.pattern_a)
        sig_b = _pattern_boundary_signature(self.rows, self.cols, self.pattern_b)
        if sig_a != sig_b:
            raise MoveTableError(f"{self.name}: boundary signatures differ")


@dataclass(frozen=True)
class MoveInstance:
    template: MoveTemplate
    anchor: tuple  # (row, col) of the pattern's top-left cell

    def check_fits(self, n):
        r, c = self.anchor
        if not (0 <= r and 0 <= c and r + self.template.rows <= n
                and c + self.template.cols <= n):
            raise KnotfieldError(
                f"move {self.template.name} at {self.anchor} does not fit an {n}x{n} lattice")


def apply(instance: MoveInstance, m: Mosaic) -> Mosaic:
    """Swap pattern_a <-> pattern_b at the anchor; no-op if neither matches."""
    t = instance.template
    instance.check_fits(m.n)
    r0, c0 = instance.anchor
    block = tuple(m.tile(r0 + r, c0 + c) for r in range(t.rows) for c in range(t.cols))
    if block == t.pattern_a:
        target = t.pattern_b
    elif block == t.pattern_b:
        target = t.pattern_a
    else:
        return m
    updates = {(r0 + r, c0 + c): target[r * t.cols + c]
               for r in range(t.rows) for c in range(t.cols)}
    return m.with_cells(updates)


def instances_for(templates, n):
    """Every placement of every template inside an n x n lattice, in a fixed order."""
    out = []
    for t in templates:
        for r in range(n - t.rows + 1):
            for c in range(n - t.cols + 1):
                out.append(MoveInstance(t, (r, c)))
    return out


# ---------------------------------------------------------------------------
# Table files


def templates_to_json(templates):
    return json.dumps(
        [{"name": t.name, "rows": t.rows, "cols": t.cols,
          "pattern_a": list(t.pattern_a), "pattern_b": list(t.pattern_b)}
         for t in templates], indent=1)


def templates_from_json(text_or_obj):
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    if not isinstance(obj, list):
        raise MoveTableError("move table must be a JSON list")
    templates = []
    names = set()
    for entry in obj:
        t = MoveTemplate(entry["name"], int(entry["rows"]), int(entry["cols"]),
                         tuple(entry["pattern_a"]), tuple(entry["pattern_b"]))
        if t.name in names:
            raise MoveTableError(f"duplicate move name {t.name}")
        names.add(t.name)
        templates.append(t)
    return templates


def default_table():
    """The bundled move table (planar isotopy + R1/R2/R3), loaded once."""
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        text = resources.files("knotfield.data").joinpath("moves_default.json").read_text()
        _DEFAULT_TABLE = templates_from_json(text)
    return _DEFAULT_TABLE
