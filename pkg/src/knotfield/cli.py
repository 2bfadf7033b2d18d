"""Command-line interface.

One binary, subcommand groups:

    mosaic validate|show|orbit|same-orbit|jones
    observable chi|invariant
    wirtinger
    field eval|extract|verify|fiber
    evolve run|track

Exit codes: 0 success, 1 domain error (bad input data, failed validation),
2 usage error.  Every error path prints one line starting with "error: ".
Outputs are deterministic: no wall clock, no unseeded randomness, and no
dependence on --threads.  A JSON manifest describing the run is written
next to --out (or to --manifest) so results can be reproduced.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import KnotfieldError
from . import mosaic as mz
from .diagram import evaluate_jones, jones, to_diagram
from .moves import default_table
from .orbits import DEFAULT_BUDGET, orbit, same_orbit
from .states import chi as chi_observable, invariant_observable
from .wirtinger import abelianization_rank, wirtinger
from .fields import parse_field_spec, phase
from .extraction import SampleGrid, extract, fiber_to_csv, sample_fiber
from .project import expected_jones, verify_knot_type
from . import evolution as ev


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise KnotfieldError(f"cannot read {path}: {exc}") from exc


def _load_mosaic(path: str) -> mz.Mosaic:
    return mz.load(_read(path))


def _grid(args) -> SampleGrid:
    return SampleGrid(chart=args.chart, resolution=args.resolution,
                      extent=args.extent, radius=args.radius)


def _add_grid_flags(p):
    p.add_argument("--chart", default="north", choices=["north", "south"])
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--extent", type=float, default=3.0)
    p.add_argument("--radius", type=float, default=1.0)


def _poly_payload(p):
    return {"variable": "t^(1/2)", "terms": {str(e): c for e, c in sorted(p.terms())}}


# --- subcommand handlers: return (text, exit_code) ---

def _cmd_mosaic_validate(args):
    m = _load_mosaic(args.file)
    rep = mz.validate(m)
    if args.format == "json":
        out = json.dumps({"valid": rep.valid,
                          "bad_edges": [list(e) for e in rep.bad_edges]})
    else:
        lines = ["valid" if rep.valid else "invalid"]
        lines += [f"edge {kind} ({r},{c}): {reason}"
                  for kind, r, c, reason in rep.bad_edges]
        out = "\n".join(lines)
    return out, 0 if rep.valid else 1


def _cmd_mosaic_show(args):
    m = _load_mosaic(args.file)
    if args.format == "json":
        return mz.to_json(m), 0
    return mz.encode(m).rstrip("\n"), 0


def _cmd_mosaic_orbit(args):
    m = _load_mosaic(args.file)
    orb = orbit(m, default_table(), budget=args.budget, threads=args.threads)
    rep = min(orb.members)
    if args.format == "json":
        payload = {"size": orb.size, "representative": rep}
        if args.members:
            payload["members"] = sorted(orb.members)
        return json.dumps(payload), 0
    lines = [f"orbit size: {orb.size}", "representative:", rep.rstrip("\n")]
    if args.members:
        lines += ["members:"] + sorted(orb.members)
    return "\n".join(lines), 0


def _cmd_mosaic_same_orbit(args):
    a, b = _load_mosaic(args.file_a), _load_mosaic(args.file_b)
    same, witness = same_orbit(a, b, default_table(),
                               budget=args.budget, threads=args.threads)
    moves = len(witness) if witness is not None else None
    if args.format == "json":
        return json.dumps({"same_orbit": same, "witness_moves": moves}), 0
    return (f"same orbit: {'yes' if same else 'no'}"
            + (f" ({moves} moves)" if same else "")), 0


def _cmd_mosaic_jones(args):
    m = _load_mosaic(args.file)
    v = jones(to_diagram(m))
    if args.format == "json":
        return json.dumps(_poly_payload(v)), 0
    return v.pretty("s"), 0


def _cmd_observable_chi(args):
    m = _load_mosaic(args.file)
    obs = chi_observable(m, default_table(), budget=args.budget,
                         threads=args.threads)
    if args.format == "json":
        return obs.to_json(), 0
    (oid,) = obs.eigenvalue
    return (f"projector onto one orbit\norbit size: {obs.orbit_sizes[oid]}\n"
            f"representative:\n{oid.rstrip(chr(10))}"), 0


_INVARIANTS = {
    "v_minus1": lambda m: evaluate_jones(jones(to_diagram(m)), -1.0),
    "components": lambda m: float(len(mz.trace_components(m))),
}


def _cmd_observable_invariant(args):
    m = _load_mosaic(args.file)
    inv = _INVARIANTS[args.invariant]
    obs = invariant_observable(inv, m.n, default_table(), budget=args.budget,
                               threads=args.threads)
    val = obs.eigenvalue_for(m)
    if args.format == "json":
        return json.dumps({"invariant": args.invariant, "eigenvalue": val,
                           "observable": json.loads(obs.to_json())}), 0
    return f"{args.invariant} eigenvalue on this orbit: {val:.12g}", 0


def _cmd_wirtinger(args):
    m = _load_mosaic(args.file)
    pres = wirtinger(to_diagram(m))
    rank = abelianization_rank(pres)
    if args.format == "json":
        return json.dumps({"generators": list(pres.generators),
                           "relations": [list(r) for r in pres.relations],
                           "abelianization_rank": rank}), 0
    return pres.to_text() + f"abelianization rank: {rank}", 0


def _parse_complex(s: str) -> complex:
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise KnotfieldError(f"cannot parse complex number {s!r}") from exc


def _cmd_field_eval(args):
    f = parse_field_spec(args.field)
    z, w = _parse_complex(args.z), _parse_complex(args.w)
    v = complex(f(z, w))
    payload = {"field": f.name, "re": v.real, "im": v.imag, "abs": abs(v)}
    try:
        payload["phase"] = phase(f, z, w)
    except KnotfieldError:
        payload["phase"] = None
    if args.format == "json":
        return json.dumps(payload), 0
    ph = "undefined" if payload["phase"] is None else f"{payload['phase']:.12g}"
    return f"{f.name}({z}, {w}) = {v.real:.12g} + {v.imag:.12g}i (phase {ph})", 0


def _cmd_field_extract(args):
    f = parse_field_spec(args.field)
    curve = extract(f, _grid(args))
    if args.format == "json":
        return json.dumps({
            "chart": curve.chart, "n_components": curve.n_components,
            "residual": curve.residual,
            "components": [[[round(float(v), 12) for v in p] for p in c]
                           for c in curve.components]}), 0
    if args.obj:
        return curve.to_obj().rstrip("\n"), 0
    return curve.to_csv().rstrip("\n"), 0


def _cmd_field_verify(args):
    f = parse_field_spec(args.field)
    curve = extract(f, _grid(args))
    expect = expected_jones(_load_mosaic(args.expect))
    rep = verify_knot_type(curve, expect)
    if args.format == "json":
        return json.dumps({
            "match": rep.match, "mirrored": rep.mirrored,
            "computed": _poly_payload(rep.computed),
            "expected": _poly_payload(rep.expected),
            "crossings_raw": rep.crossings_raw,
            "crossings_reduced": rep.crossings_reduced}), 0
    return rep.to_text(), 0


def _cmd_field_fiber(args):
    f = parse_field_spec(args.field)
    cloud = sample_fiber(f, args.theta, _grid(args), band=args.band)
    if args.format == "json":
        return json.dumps({"theta": args.theta, "n_points": len(cloud),
                           "points": [[round(float(v), 12) for v in row]
                                      for row in cloud]}), 0
    return fiber_to_csv(cloud).rstrip("\n"), 0


def _evolution_setup(args):
    cfg = ev.EvolutionConfig(hamiltonian=args.hamiltonian, box=args.box,
                             resolution=args.resolution, dt=args.dt,
                             steps=args.steps,
                             omega=tuple(float(v) for v in args.omega.split(",")))
    if args.initial == "gaussian":
        state = ev.gaussian_state(cfg, width=args.width)
    else:
        state = ev.initial_knot_state(parse_field_spec(args.initial), cfg,
                                      scale=args.scale)
    return cfg, state


def _add_evolve_flags(p):
    p.add_argument("--hamiltonian", default="free", choices=["free", "harmonic"])
    p.add_argument("--box", type=float, default=16.0)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--omega", default="1,1,1")
    p.add_argument("--initial", default="milnor:2,3",
                   help='field spec like "milnor:2,3", or "gaussian"')
    p.add_argument("--width", type=float, default=1.0, help="gaussian width")
    p.add_argument("--scale", type=float, default=None,
                   help="stereographic scale for knotted initial states")
    p.add_argument("--snapshot-every", type=int, default=0, dest="snapshot_every")
    p.add_argument("--snapshots-dir", default=None, dest="snapshots_dir",
                   help="write one .npy field dump per kept snapshot")


def _dump_snapshots(history, outdir):
    import os
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for i, st in enumerate(history):
        path = os.path.join(outdir, f"snapshot_{i:04d}.npy")
        np.save(path, st.values)
        paths.append(path)
    return paths


def _cmd_evolve_run(args):
    cfg, state = _evolution_setup(args)
    history = ev.run(state, cfg, snapshot_every=args.snapshot_every)
    final = history[-1]
    if args.snapshots_dir:
        _dump_snapshots(history, args.snapshots_dir)
    payload = {"config": json.loads(cfg.to_json()),
               "snapshots": len(history),
               "final_time": final.time,
               "initial_norm": state.norm0,
               "final_norm": final.norm(),
               "norm_drift": final.norm_drift()}
    if args.format == "json":
        return json.dumps(payload), 0
    return "\n".join(f"{k}: {v}" for k, v in payload.items()), 0


def _cmd_evolve_track(args):
    cfg, state = _evolution_setup(args)
    history = ev.run(state, cfg, snapshot_every=args.snapshot_every)
    if args.snapshots_dir:
        _dump_snapshots(history, args.snapshots_dir)
    report = ev.track_nodal(history, cfg, min_amp=args.min_amp, roi=args.roi)
    if args.format == "json":
        return json.dumps({
            "snapshots": [{"time": s.time, "n_components": s.n_components,
                           "displacement": s.displacement, "error": s.error}
                          for s in report.snapshots],
            "events": [list(e) for e in report.events],
            "max_displacement": report.max_displacement()}), 0
    out = report.to_csv().rstrip("\n")
    for t, kind, detail in report.events:
        out += f"\n# event t={t:.9g} {kind}: {detail}"
    return out, 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="knotfield",
                                  description="mosaic knots, knot invariants, and knotted nodal sets")
    top.add_argument("--version", action="version", version=f"knotfield {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", choices=["text", "json"])
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--manifest", default=None, help="write the run manifest here")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="orbit search budget")
    sub = top.add_subparsers(dest="group")

    g = sub.add_parser("mosaic", help="mosaic file operations").add_subparsers(dest="cmd")
    p = g.add_parser("validate", parents=[common]); p.add_argument("file"); p.set_defaults(fn=_cmd_mosaic_validate)
    p = g.add_parser("show", parents=[common]); p.add_argument("file"); p.set_defaults(fn=_cmd_mosaic_show)
    p = g.add_parser("orbit", parents=[common]); p.add_argument("file")
    p.add_argument("--members", action="store_true"); p.set_defaults(fn=_cmd_mosaic_orbit)
    p = g.add_parser("same-orbit", parents=[common])
    p.add_argument("file_a"); p.add_argument("file_b"); p.set_defaults(fn=_cmd_mosaic_same_orbit)
    p = g.add_parser("jones", parents=[common]); p.add_argument("file"); p.set_defaults(fn=_cmd_mosaic_jones)

    g = sub.add_parser("observable", help="diagonal orbit observables").add_subparsers(dest="cmd")
    p = g.add_parser("chi", parents=[common]); p.add_argument("file"); p.set_defaults(fn=_cmd_observable_chi)
    p = g.add_parser("invariant", parents=[common]); p.add_argument("file")
    p.add_argument("--invariant", default="v_minus1", choices=sorted(_INVARIANTS))
    p.set_defaults(fn=_cmd_observable_invariant)

    p = sub.add_parser("wirtinger", parents=[common], help="knot group presentation")
    p.add_argument("file"); p.set_defaults(fn=_cmd_wirtinger)

    g = sub.add_parser("field", help="complex fields and nodal curves").add_subparsers(dest="cmd")
    p = g.add_parser("eval", parents=[common])
    p.add_argument("--field", required=True); p.add_argument("--z", required=True)
    p.add_argument("--w", required=True); p.set_defaults(fn=_cmd_field_eval)
    p = g.add_parser("extract", parents=[common])
    p.add_argument("--field", required=True); _add_grid_flags(p)
    p.add_argument("--obj", action="store_true", help="wavefront polyline output")
    p.set_defaults(fn=_cmd_field_extract)
    p = g.add_parser("verify", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--expect", required=True, help="mosaic file with the expected knot")
    _add_grid_flags(p); p.set_defaults(fn=_cmd_field_verify)
    p = g.add_parser("fiber", parents=[common])
    p.add_argument("--field", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--band", type=float, default=0.05)
    _add_grid_flags(p); p.set_defaults(fn=_cmd_field_fiber)

    g = sub.add_parser("evolve", help="Schrodinger evolution on a periodic box").add_subparsers(dest="cmd")
    p = g.add_parser("run", parents=[common]); _add_evolve_flags(p); p.set_defaults(fn=_cmd_evolve_run)
    p = g.add_parser("track", parents=[common]); _add_evolve_flags(p)
    p.add_argument("--min-amp", type=float, default=None, dest="min_amp")
    p.add_argument("--roi", type=float, default=0.5)
    p.set_defaults(fn=_cmd_evolve_track)
    return top


def _manifest(args, argv, code):
    inputs = [getattr(args, k) for k in ("file", "file_a", "file_b", "expect")
              if getattr(args, k, None)]
    return json.dumps({
        "tool": "knotfield", "version": __version__,
        "subcommand": f"{args.group} {getattr(args, 'cmd', '') or ''}".strip(),
        "argv": list(argv),
        "inputs": inputs,
        "output": args.out or "stdout",
        "exit_code": code,
        "deterministic": "outputs depend only on argv and input files; "
                         "--threads does not affect them"}, indent=2)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        parser.print_usage(sys.stderr)
        print("error: missing subcommand", file=sys.stderr)
        return 2
    try:
        text, code = args.fn(args)
    except KnotfieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    manifest_path = args.manifest or (args.out + ".manifest.json" if args.out else None)
    if manifest_path:
        with open(manifest_path, "w") as fh:
            fh.write(_manifest(args, argv, code) + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
