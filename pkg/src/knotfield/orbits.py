"""Orbit closure of mosaics under the ambient group's move templates.

Breadth-first closure over the finite basis of an n x n lattice.  The member
set is independent of exploration order and thread count; witnesses are
reconstructed from parent pointers laid down in deterministic BFS order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExceededError, KnotfieldError
from .mosaic import Mosaic, encode, validate
from .moves import apply as apply_move
from .moves import instances_for

DEFAULT_BUDGET = 10 ** 6


def compile_instances(templates, n):
    """Pack every placement of every template into flat arrays for the kernel."""
    insts = instances_for(templates, n)
    max_len = max((t.rows * t.cols for t in templates), default=1)
    num = len(insts)
    pos = np.zeros((num, max_len), dtype=np.int32)
    pat_a = np.zeros((num, max_len), dtype=np.uint8)
    pat_b = np.zeros((num, max_len), dtype=np.uint8)
    lens = np.zeros(num, dtype=np.int32)
    for i, inst in enumerate(insts):
        t = inst.template
        r0, c0 = inst.anchor
        k = t.rows * t.cols
        lens[i] = k
        for j in range(k):
            r, c = divmod(j, t.cols)
            pos[i, j] = (r0 + r) * n + (c0 + c)
            pat_a[i, j] = t.pattern_a[j]
            pat_b[i, j] = t.pattern_b[j]
    return insts, pos, pat_a, pat_b, lens


@dataclass(frozen=True)
class Orbit:
    representative: Mosaic
    members: frozenset  # canonical encode() text of every member
    _parents: dict = field(default_factory=dict, repr=False, compare=False)
    _instances: tuple = field(default=(), repr=False, compare=False)

    @property
    def size(self):
        return len(self.members)

    def __contains__(self, m):
        key = m if isinstance(m, str) else encode(m)
        return key in self.members

    def member_mosaics(self):
        n = self.representative.n
        for key in sorted(self.members):
            yield Mosaic(n, _cells_from_key(key))

    def witness_for(self, m):
        """Move sequence replaying representative -> m, as MoveInstances."""
        key = m if isinstance(m, str) else encode(m)
        if key not in self.members:
            raise KnotfieldError("mosaic is not in this orbit")
        n = self.representative.n
        state = bytes(_cells_from_key(key))
        edges = []
        while True:
            parent = self._parents[state]
            if parent is None:
                break
            edges.append((parent, state))
            state = parent
        edges.reverse()
        seq = []
        for parent, child in edges:
            seq.append(_find_instance(parent, child, self._instances, n))
        return seq


def _cells_from_key(key):
    rows = key.splitlines()[1:]
    return tuple(int(v) for row in rows for v in row.split())


def _find_instance(parent, child, instances, n):
    src = Mosaic(n, tuple(parent))
    for inst in instances:
        if bytes(apply_move(inst, src).cells) == child:
            return inst
    raise KnotfieldError("internal error: no instance maps parent to child")


def _expand_chunk(states, pos, pat_a, pat_b, lens):
    expand = kernels.expand
    return [expand(s, pos, pat_a, pat_b, lens) for s in states]


def orbit(m: Mosaic, templates, budget: int = DEFAULT_BUDGET, threads: int = 1) -> Orbit:
    """Breadth-first closure of {m} under all placements of all templates."""
    rep = validate(m)
    if not rep.valid:
        raise KnotfieldError("orbit closure requires a suitably-connected mosaic")
    n = m.n
    insts, pos, pat_a, pat_b, lens = compile_instances(templates, n)
    start = bytes(m.cells)
    parents = {start: None}
    frontier = [start]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            if pool is not None and len(frontier) > 1:
                chunk = max(1, len(frontier) // (4 * threads))
                chunks = [frontier[i:i + chunk] for i in range(0, len(frontier), chunk)]
                results = []
                for part in pool.map(_expand_chunk, chunks,
                                     [pos] * len(chunks), [pat_a] * len(chunks),
                                     [pat_b] * len(chunks), [lens] * len(chunks)):
                    results.extend(part)
            else:
                results = [kernels.expand(s, pos, pat_a, pat_b, lens) for s in frontier]
            next_frontier = []
            for state, neighbors in zip(frontier, results):
                for nb in neighbors:
                    if nb not in parents:
                        parents[nb] = state
                        next_frontier.append(nb)
                        if len(parents) > budget:
                            raise BudgetExceededError(budget, len(parents))
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    members = frozenset(encode(Mosaic(n, tuple(s))) for s in parents)
    return Orbit(m, members, parents, tuple(insts))


def same_orbit(a: Mosaic, b: Mosaic, templates, budget: int = DEFAULT_BUDGET,
               threads: int = 1):
    """Decide orbit equivalence; on success also return a witness sequence."""
    if a.n != b.n:
        raise KnotfieldError("mosaics live in different lattice sizes")
    orb = orbit(a, templates, budget=budget, threads=threads)
    if b in orb:
        return True, orb.witness_for(b)
    return False, None
