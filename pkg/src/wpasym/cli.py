"""Command-line front end.

Commands run the pipeline pieces on a named fixture or a JSON datum and
write JSON reports (plus CSV length series for distance commands).

Exit codes: 0 success, 2 schema/parse error, 3 math-domain error,
4 negative verdict where divergence was expected (CI gating).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialize as ser
from .classifier import (DominantPolynomial, classify, dominant, hessian_log,
                         psd_large_y)
from .errors import (ParseError, SchemaError, UnknownFixture, WpasymError)
from .fixtures import CANDIDATE_CATALOG, FIXTURE_NAMES, fixture_info
from .hodge import weight_filtration
from .limiting import classify_divisor
from .metric import (NumericMetric, PolyMetric, QuadratureConfig, angular_slice,
                     curve_length, diagonal_ray, divergence_fit,
                     perturbation_example, power_ray, probe_catalog, spiral,
                     corollary_strict_cases)
from .potential import decompose, get_evaluator, polynomial_part


def _load_expansion(args):
    if args.fixture:
        return fixture_info(args.fixture).expansion
    if not args.input:
        raise SchemaError("need --input or --fixture")
    with open(args.input) as fh:
        return ser.decode_expansion(ser.loads(fh.read()))


def _write(args, payload: dict) -> None:
    text = ser.dumps(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def describe_potential(poly) -> dict:
    """Classification record for a polynomial part, covering the one-variable
    and constant shapes that sit outside the two-variable table."""
    d1, d2 = max(poly.degree(1), 0), max(poly.degree(2), 0)
    if d1 == 0 and d2 == 0:
        return {"kind": "constant", "valid": bool(poly.coeff(0, 0) > 0),
                "leading_positive": bool(poly.coeff(0, 0) > 0)}
    if d1 == 0 or d2 == 0:
        var = 1 if d2 == 0 else 2
        deg = d1 if d2 == 0 else d2
        lead = poly.coeff(deg, 0) if var == 1 else poly.coeff(0, deg)
        return {"kind": "one-variable", "variable": var, "deg": deg,
                "valid": bool(lead > 0), "leading_positive": bool(lead > 0)}
    dom = dominant(poly)
    report = classify(dom)
    out = {"kind": "table", "report": ser.encode_classification(report)}
    if report.valid:
        out["psd_large_y"] = psd_large_y(dom)
    return out


def _curve_from_args(args, k: int):
    t0, t_end, n = args.t0, args.T, args.checkpoints
    name = args.curve
    if name == "diagonal":
        return diagonal_ray(k, t0=t0, T=t_end)
    if name == "slice":
        return angular_slice((0.0, 0.0), t0=t0, T=t_end)
    if name == "slice-offset":
        return angular_slice((0.3, -0.2), t0=t0, T=t_end)
    if name.startswith("power-"):
        return power_ray(float(name.split("-", 1)[1]), t0=t0, T=t_end)
    if name == "spiral":
        return spiral(t0=t0, T=t_end)
    raise SchemaError(f"unknown curve {name!r}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_filtration(args) -> int:
    exp = _load_expansion(args)
    out = {}
    for i, nilpotent in enumerate(exp.nilpotents, start=1):
        w = weight_filtration(nilpotent, exp.space.weight)
        out[f"N{i}"] = ser.encode_filtration(w)
    _write(args, out)
    return 0


def cmd_classify_divisor(args) -> int:
    exp = _load_expansion(args)
    divisors = [classify_divisor(n, exp.a0) for n in exp.nilpotents]
    _write(args, {"divisors": [{"tag": d.tag, "degree": d.degree} for d in divisors]})
    return 0


def cmd_expand(args) -> int:
    exp = _load_expansion(args)
    deco = decompose(exp)
    _write(args, {"polynomial": ser.encode_polynomial(deco.poly),
                  "degrees": [max(deco.poly.degree(1), 0), max(deco.poly.degree(2), 0)],
                  "slice1_records": len(deco.slice1),
                  "slice2_records": len(deco.slice2),
                  "remainder_bound": deco.remainder_bound})
    return 0


def cmd_classify_potential(args) -> int:
    if args.fixture:
        poly = polynomial_part(fixture_info(args.fixture).expansion)
    else:
        if not args.input:
            raise SchemaError("need --input or --fixture")
        with open(args.input) as fh:
            poly = ser.decode_polynomial(ser.loads(fh.read()))
    _write(args, describe_potential(poly))
    return 0


def cmd_metric(args) -> int:
    exp = _load_expansion(args)
    point = ser.loads(args.point)
    z = np.array([complex(p[0], p[1]) for p in point], dtype=np.complex128)[None, :]
    source = NumericMetric(get_evaluator(exp))
    tensor = source.tensor_batch(z)[0]
    _write(args, {"point": [[c.real, c.imag] for c in z[0]],
                  "tensor": [[[v.real, v.imag] for v in row] for row in tensor],
                  "source": source.name})
    return 0


def cmd_distance(args) -> int:
    exp = _load_expansion(args)
    curve = _curve_from_args(args, exp.k)
    cfg = QuadratureConfig(checkpoints=args.checkpoints, rel_tol=args.tolerance)
    if args.metric == "symbolic":
        source = PolyMetric(polynomial_part(exp), k=exp.k)
    else:
        source = NumericMetric(get_evaluator(exp))
    series = curve_length(source, curve, cfg)
    verdict = divergence_fit(series)
    if args.output:
        ser.write_length_csv(str(args.output) + ".csv", series)
    _write(args, {"curve": series.curve_id, "verdict": ser.encode_fit(verdict)})
    if args.expect_diverge and not verdict.diverges_log:
        return 4
    return 0


def cmd_corollary(args) -> int:
    exp = _load_expansion(args)
    cfg = QuadratureConfig(checkpoints=max(args.checkpoints, 8), rel_tol=args.tolerance)
    verdict = corollary_strict_cases(exp, probes=probe_catalog(args.t0, args.T),
                                     quadrature=cfg)
    _write(args, {"degrees": list(verdict.degrees),
                  "all_diverge": verdict.all_diverge,
                  "curves": {k: ser.encode_fit(v) for k, v in verdict.per_curve.items()}})
    return 0 if verdict.all_diverge else 4


def cmd_demo(args) -> int:
    summary = {}
    for name in FIXTURE_NAMES:
        info = fixture_info(name)
        exp = info.expansion
        entry = {"divisors": [classify_divisor(n, exp.a0).tag for n in exp.nilpotents],
                 "degrees": list(info.divisor_degrees)}
        poly = polynomial_part(exp)
        entry["potential"] = str(poly)
        entry["classification"] = describe_potential(poly)
        if name in CANDIDATE_CATALOG:
            source = PolyMetric(dominant(poly).poly, k=exp.k)
            series = curve_length(source, diagonal_ray(exp.k),
                                  QuadratureConfig(checkpoints=8))
            entry["diagonal_fit"] = ser.encode_fit(divergence_fit(series))
        summary[name] = entry
    _write(args, summary)
    if not args.output:
        return 0
    for name, entry in summary.items():
        cls = entry["classification"]
        label = cls.get("report", {}).get("case_label", cls["kind"])
        fit = entry.get("diagonal_fit")
        verdict = "diverges" if fit and fit["diverges_log"] else "-"
        print(f"{name:22s} {'/'.join(entry['divisors']):18s} {label:12s} {verdict}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wpasym",
                                     description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "filtration": cmd_filtration,
        "classify-divisor": cmd_classify_divisor,
        "expand": cmd_expand,
        "classify-potential": cmd_classify_potential,
        "metric": cmd_metric,
        "distance": cmd_distance,
        "corollary": cmd_corollary,
        "demo": cmd_demo,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--input", help="input JSON path")
        p.add_argument("--output", help="output path (JSON; distance also writes .csv)")
        p.add_argument("--fixture", choices=FIXTURE_NAMES, help="named builtin datum")
        p.add_argument("--curve", default="diagonal",
                       help="diagonal | slice | slice-offset | power-<a> | spiral")
        p.add_argument("--point", default="[[0.0,5.0],[0.0,5.0]]",
                       help="JSON [[x,y],...] evaluation point (metric command)")
        p.add_argument("--t0", type=float, default=2.0)
        p.add_argument("--T", type=float, default=2.0e4)
        p.add_argument("--checkpoints", type=int, default=10)
        p.add_argument("--grid-lo", type=int, default=2, dest="grid_lo")
        p.add_argument("--grid-hi", type=int, default=6, dest="grid_hi")
        p.add_argument("--tolerance", type=float, default=1e-8)
        p.add_argument("--metric", choices=["numeric", "symbolic"], default="numeric")
        p.add_argument("--expect-diverge", action="store_true", dest="expect_diverge")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, SchemaError, UnknownFixture, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WpasymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
