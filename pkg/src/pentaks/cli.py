"""Command-line front end.

Every subcommand is a thin adapter over the library: it parses arguments,
calls one library entry point and serialises the result.  Numeric output
uses 17 significant digits so cross-run diffs are meaningful; pass
--pretty for human-readable rounding.  Each output file is accompanied by
a <file>.manifest.json recording the command, parameters, seed and
toolkit version.  Exit codes: 0 success, 1 validation/domain error
(single-line diagnostic on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from ._kernels import get_backend
from .errors import PentaksError, ValidationError
from .magic import tailor_pentagram
from .orthograph import (
    cabello18,
    classical_max,
    graph_from_json,
    induced_pentagons,
    statevector_from_json,
    statevector_to_json,
    validate_graph,
)
from .paradoxes import av_game, hardy_construct, hardy_maximize, HardyParams, maximize_ks_probability
from .pentagram3 import PentagramParams, build_family, max_eigenvalue_over_family, min_overlap_sum_scan
from .pentagram4 import cabello_pentagon_spectra, conjecture_scan, entangled_regular, separable_regular
from .spectral import eigensystem


def thread_count() -> int:
    """Parallelism cap from PENTAKS_THREADS, defaulting to the machine."""
    raw = os.environ.get("PENTAKS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValidationError(f"PENTAKS_THREADS={raw!r} is not an integer") from None
    return os.cpu_count() or 1


def _format_float(value: float, pretty: bool) -> str:
    if pretty:
        return format(value, ".6g")
    return format(value, ".17g")


def _to_json_text(obj, pretty: bool, indent: int = 0) -> str:
    """Deterministic JSON with floats at fixed significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{key}": {_to_json_text(value, pretty, indent + 1)}'
            for key, value in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ", ".join(_to_json_text(value, pretty, indent) for value in obj)
        return "[" + items + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj), pretty)
    return json.dumps(obj)


def _emit(payload: dict, pretty: bool) -> None:
    sys.stdout.write(_to_json_text(payload, pretty) + "\n")


def _write_output(path: str, text: str, manifest: dict) -> None:
    with open(path, "w") as handle:
        handle.write(text)
    with open(path + ".manifest.json", "w") as handle:
        handle.write(_to_json_text(manifest, pretty=False) + "\n")


def _manifest(command: str, parameters: dict, outputs: list[str], seed=None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "versions": f"pentaks {__version__}",
        "outputs": outputs,
    }


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from None


def _params_payload(params: PentagramParams) -> dict:
    return {"a": params.a, "b": params.b, "mu": params.mu, "nu": params.nu}


def _spectrum_payload(spectrum) -> list[float]:
    return [float(v) for v in spectrum.eigenvalues]


# -- subcommand handlers -----------------------------------------------------


def _cmd_spectrum(args) -> int:
    params = PentagramParams(args.a, args.b, args.mu, args.nu)
    pentagram = build_family(params)
    spectrum, _ = eigensystem(pentagram.operator)
    _emit(
        {
            "params": _params_payload(params),
            "A": pentagram.overlap_sum,
            "spectrum": _spectrum_payload(spectrum),
        },
        args.pretty,
    )
    return 0


def _cmd_scan_family(args) -> int:
    kernel = get_backend()
    n = args.grid
    angles = np.linspace(0.0, np.pi / 2, n)
    phases = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    lines = ["a,b,mu,nu,A,lambda1,lambda2,lambda3"]
    if args.real:
        grids = np.meshgrid(angles, angles, indexing="ij")
        flat = [grids[0].ravel(), grids[1].ravel()]
        flat += [np.zeros_like(flat[0]), np.zeros_like(flat[0])]
    else:
        grids = np.meshgrid(angles, angles, phases, phases, indexing="ij")
        flat = [g.ravel() for g in grids]
    overlap, lam = kernel.family_spectra(*flat)
    if args.out:
        for row in range(overlap.size):
            values = [flat[0][row], flat[1][row], flat[2][row], flat[3][row],
                      overlap[row], lam[row, 0], lam[row, 1], lam[row, 2]]
            lines.append(",".join(format(v, ".17g") for v in values))
        manifest = _manifest(
            "scan-family",
            {"grid": n, "real": bool(args.real), "refine": bool(args.refine)},
            [args.out],
        )
        _write_output(args.out, "\n".join(lines) + "\n", manifest)
    summary = {
        "grid": n,
        "real": bool(args.real),
        "min_A": float(overlap.min()),
        "max_lambda": float(lam[:, 0].max()),
    }
    if args.refine:
        min_params, min_value = min_overlap_sum_scan(args.grid)
        max_params, max_value = max_eigenvalue_over_family(
            grid=min(args.grid, 64), symmetric_only=args.real
        )
        summary["refined_min_A"] = min_value
        summary["refined_min_params"] = _params_payload(min_params)
        summary["refined_max_lambda"] = max_value
        summary["refined_max_params"] = _params_payload(max_params)
    _emit(summary, args.pretty)
    return 0


def _cmd_tailor(args) -> int:
    state = statevector_from_json(_load_json(args.state))
    result = tailor_pentagram(state, epsilon=args.epsilon)
    _emit(
        {
            "sigma": result.sigma,
            "concurrence": result.concurrence,
            "pentagram": [statevector_to_json(v) for v in result.pentagram.vectors],
            "expectation": result.expectation,
            "violates": result.violates,
        },
        args.pretty,
    )
    return 0


def _cmd_color(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    validate_graph(graph)
    weight_set = None
    if args.weight_set:
        weight_set = [int(tok) for tok in args.weight_set.split(",") if tok != ""]
    result = classical_max(graph, weight_set)
    payload = {
        "colorable": result.colorable,
        "max_ones": result.max_ones,
        "weight_set": list(result.weight_set),
        "assignment": list(result.assignment.values) if result.assignment else None,
    }
    _emit(payload, args.pretty)
    return 0


def _cmd_pentagons(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    pentagons = induced_pentagons(graph)
    _emit({"count": len(pentagons), "pentagons": [list(p) for p in pentagons]}, args.pretty)
    return 0


def _cmd_ks_max(args) -> int:
    params, p = maximize_ks_probability(real_only=args.real)
    _emit(
        {"params": _params_payload(params), "p": p, "expectation": p + 2.0},
        args.pretty,
    )
    return 0


def _cmd_av_game(args) -> int:
    stats = av_game(args.runs, args.seed)
    _emit(
        {
            "runs": stats.runs,
            "selected": stats.selected,
            "wins_among_selected": stats.wins_among_selected,
            "rng_seed": stats.rng_seed,
        },
        args.pretty,
    )
    return 0


def _cmd_hardy(args) -> int:
    if args.maximize:
        params, p = hardy_maximize()
        hardy = hardy_construct(params)
    else:
        params = HardyParams(args.alpha1, args.alpha2, args.beta1, args.beta2)
        hardy = hardy_construct(params)
        p = hardy.probability()
    expectation = hardy.upper_operator().expectation(hardy.vector("Psi"))
    _emit(
        {
            "params": {
                "alpha1": params.alpha1,
                "alpha2": params.alpha2,
                "beta1": params.beta1,
                "beta2": params.beta2,
            },
            "p": p,
            "expectation": expectation,
        },
        args.pretty,
    )
    return 0


def _cmd_four(args) -> int:
    if args.mode == "separable-regular":
        solution = separable_regular()
        payload = {
            "kind": solution.kind,
            "spectrum": _spectrum_payload(solution.spectrum),
            "vectors": [statevector_to_json(v) for v in solution.pentagram.vectors],
        }
        _emit(payload, args.pretty)
        return 0
    if args.mode == "entangled-regular":
        first, second = entangled_regular()
        payload = {
            "solutions": [
                {
                    "kind": sol.kind,
                    "spectrum": _spectrum_payload(sol.spectrum),
                    "vectors": [statevector_to_json(v) for v in sol.pentagram.vectors],
                }
                for sol in (first, second)
            ]
        }
        _emit(payload, args.pretty)
        return 0
    results = cabello_pentagon_spectra()
    lines = ["nodes,lambda1,lambda2,lambda3,lambda4"]
    for subset, spectrum in results:
        cells = ["+".join(str(i) for i in subset)]
        cells += [format(v, ".17g") for v in spectrum.eigenvalues]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_output(args.out, text, _manifest("four", {"mode": args.mode}, [args.out]))
    else:
        sys.stdout.write(text)
    _emit({"mode": args.mode, "pentagon_count": len(results)}, args.pretty)
    return 0


def _cmd_conjecture(args) -> int:
    if args.graph == "cabello18":
        graph = cabello18()
    else:
        graph = graph_from_json(_load_json(args.graph))
    validate_graph(graph)
    report = conjecture_scan(graph, args.samples, args.seed)
    payload = {
        "samples": report.samples,
        "seed": report.seed,
        "dim": report.dim,
        "pentagon_count": report.pentagon_count,
        "violating_fraction": report.violating_fraction,
        "min_max_expectation": report.min_max_expectation,
        "argmin_state": statevector_to_json(report.argmin_state),
        "refined_min": report.refined_min,
        "refined_state": statevector_to_json(report.refined_state),
        "all_states_violate": report.all_states_violate,
    }
    if args.out:
        text = _to_json_text(payload, pretty=False) + "\n"
        manifest = _manifest(
            "conjecture",
            {"graph": args.graph, "samples": args.samples},
            [args.out],
            seed=args.seed,
        )
        _write_output(args.out, text, manifest)
    _emit(payload, args.pretty)
    return 0


def _cmd_validate(args) -> int:
    graph = graph_from_json(_load_json(args.graph))
    validate_graph(graph)
    _emit({"graph": args.graph, "nodes": graph.node_count, "status": "ok"}, args.pretty)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pentaks",
        description="Pentagram operators, contextuality bounds and derived paradoxes.",
    )
    parser.add_argument("--version", action="version", version=f"pentaks {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--pretty", action="store_true", help="round output for humans")
        p.set_defaults(handler=handler)
        return p

    p = add("spectrum", _cmd_spectrum, help="spectrum of one family pentagram")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=0.0)

    p = add("scan-family", _cmd_scan_family, help="grid scan of the pentagram family")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--real", action="store_true", help="restrict to mu = nu = 0")
    p.add_argument("--refine", action="store_true", help="polish the extrema")
    p.add_argument("--out", help="CSV output path")

    p = add("tailor", _cmd_tailor, help="pentagram tailored to one state")
    p.add_argument("--state", required=True, help="state vector JSON file")
    p.add_argument("--epsilon", type=float, default=0.05)

    p = add("color", _cmd_color, help="exact classical bound of a graph")
    p.add_argument("graph")
    p.add_argument("--weight-set", help="comma-separated node indices")

    p = add("pentagons", _cmd_pentagons, help="induced pentagons of a graph")
    p.add_argument("graph")

    p = add("ks-max", _cmd_ks_max, help="maximal subgraph probability")
    p.add_argument("--real", action="store_true", help="restrict to real pentagons")

    p = add("av-game", _cmd_av_game, help="simulate the run-selection game")
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = add("hardy", _cmd_hardy, help="Hardy graph probability")
    p.add_argument("--maximize", action="store_true")
    p.add_argument("--alpha1", type=float, default=0.9)
    p.add_argument("--alpha2", type=float, default=0.0)
    p.add_argument("--beta1", type=float, default=0.9)
    p.add_argument("--beta2", type=float, default=0.0)

    p = add("four", _cmd_four, help="four-dimensional pentagram classes")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--separable-regular", dest="mode", action="store_const", const="separable-regular"
    )
    group.add_argument(
        "--entangled-regular", dest="mode", action="store_const", const="entangled-regular"
    )
    group.add_argument(
        "--cabello-pentagons", dest="mode", action="store_const", const="cabello-pentagons"
    )
    p.add_argument("--out", help="CSV output path for pentagon spectra")

    p = add("conjecture", _cmd_conjecture, help="pentagon violation scan")
    p.add_argument("graph", help="graph JSON file, or the literal 'cabello18'")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report JSON output path")

    p = add("validate", _cmd_validate, help="check a graph JSON file")
    p.add_argument("graph")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PentaksError as exc:
        sys.stderr.write(f"pentaks: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
