"""Complex fields on C^2 whose zero sets, cut with a 3-sphere, are knots.

The library fields are polynomial (or semi-analytic in z, zbar) maps
f: C^2 -> C.  Restricted to the sphere |z|^2 + |w|^2 = r^2 their zero sets
give the unknot, torus knots and links, and the figure-eight knot.
Evaluators are vectorized over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import KnotfieldError, UndefinedPhaseError

PHASE_TOL = 1e-12


@dataclass(frozen=True)
class ComplexField:
    """A named evaluator C^2 -> C with a note on its sphere restriction."""

    name: str
    evaluator: object  # callable (z, w) -> complex, numpy-vectorized
    domain_note: str = "restrict to |z|^2 + |w|^2 = r^2"
    multi_component: bool = False  # known to cut out a link, not a knot

    def __call__(self, z, w):
        return self.evaluator(z, w)


def _milnor(p, q):
    def f(z, w):
        return z ** p + w ** q
    return f


def _rudolph_F(z, w):
    # w^3 - 3 zbar (1 + z + zbar) w - 2 (z + zbar)
    # The zbar (rather than |z|^2) coefficient keeps the cubic's
    # discriminant nonzero on small circles around z = 0, so the three
    # roots never collide and the zero set is an embedded curve.
    zb = np.conjugate(z)
    return w ** 3 - 3 * zb * (1 + z + zb) * w - 2 * (z + zb)


def _rudolph_G(z, w):
    return _rudolph_F(z ** 2, w)


def field_library(name: str, params=()) -> ComplexField:
    """Look up a field by name.

    Names: "unknot"; "milnor" with params (p, q), p, q >= 2 (coprime for a
    knot; otherwise a torus link, flagged); "rudolph_F"; "rudolph_G" (its
    link is the figure-eight knot).
    """
    params = tuple(int(v) for v in params)
    if name == "unknot":
        return ComplexField("unknot", lambda z, w: z + 0 * w)
    if name == "milnor":
        if len(params) != 2:
            raise KnotfieldError("milnor requires two parameters (p, q)")
        p, q = params
        if p < 2 or q < 2:
            raise KnotfieldError(f"milnor exponents must be >= 2, got ({p}, {q})")
        return ComplexField(f"milnor({p},{q})", _milnor(p, q),
                            multi_component=math.gcd(p, q) != 1)
    if name == "rudolph_F":
        if params:
            raise KnotfieldError("rudolph_F takes no parameters")
        return ComplexField("rudolph_F", _rudolph_F,
                            domain_note="restrict to |z|^2 + |w|^2 = r^2 with r <= 0.5; "
                                        "at larger radii the cut leaves the conical regime")
    if name == "rudolph_G":
        if params:
            raise KnotfieldError("rudolph_G takes no parameters")
        return ComplexField("rudolph_G", _rudolph_G)
    raise KnotfieldError(f"unknown field {name!r}")


def parse_field_spec(spec: str) -> ComplexField:
    """Parse CLI-style "name" or "name:p,q" field selectors."""
    if ":" in spec:
        name, _, rest = spec.partition(":")
        params = tuple(int(v) for v in rest.split(",") if v)
    else:
        name, params = spec, ()
    return field_library(name, params)


def phase(f: ComplexField, z, w, tol: float = PHASE_TOL) -> float:
    """Argument of f at a point, folded into [0, 2*pi).

    Undefined on (or numerically near) the nodal set.
    """
    v = complex(f(z, w))
    if abs(v) <= tol:
        raise UndefinedPhaseError(
            f"|f| = {abs(v):.3e} <= {tol:.1e} at ({z}, {w}); phase undefined on the nodal set")
    return math.atan2(v.imag, v.real) % (2 * math.pi)
