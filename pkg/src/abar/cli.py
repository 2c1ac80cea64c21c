"""Command-line interface: ``abar {eval,curve,sample,fit,tcp-validate,figures}``.

Exit codes: 0 success, 2 usage or input error, 3 numerical or validation
failure. CSV floats use Python's shortest round-trip ``repr`` so reruns are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import core, plus
from .core import AbarParams
from .errors import AbarError, BracketError, DomainError, InputError, NumericalError, RangeError
from .fitting import fit_mle, fit_moments
from .sampling import FAMILIES, METHODS, MeanVector3, draw
from .tcp import TcpConfig, generate_tcp, validate_application2

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILURE = 3

QUANTITIES = ("pdf", "cdf", "survival")


class UsageError(AbarError):
    pass


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _funcs(family):
    if family == "abar":
        return {"pdf": core.pdf, "log_pdf": core.log_pdf, "cdf": core.cdf,
                "survival": core.survival, "quantile": core.quantile}
    return {"pdf": plus.plus_pdf, "log_pdf": plus.plus_log_pdf, "cdf": plus.plus_cdf,
            "survival": plus.plus_survival, "quantile": plus.plus_quantile}


def cmd_eval(args) -> int:
    p = AbarParams(args.a, args.sigma)
    q = args.quantity
    fns = _funcs(args.family)
    if q in ("pdf", "log_pdf", "cdf", "survival"):
        if args.y is None:
            raise UsageError(f"--{q.replace('_', '-')} needs --y")
        value = fns[q](p, args.y)
    elif q == "quantile":
        if args.prob is None:
            raise UsageError("--quantile needs --prob")
        value = fns[q](p, args.prob)
    elif q == "mean":
        value = core.mean(p) if args.family == "abar" else plus.plus_mean(p)
    elif args.family != "abar":
        raise UsageError(f"--{q} is only available for the abar family")
    elif q == "moment2":
        value = core.raw_moment2(p)
    elif q == "variance":
        value = core.variance(p)
    else:
        value = core.mgf(p, args.mgf)
    print(_fmt(value))
    return EXIT_OK


def curve_csv(family, p, y, quantities, extra_comments=()) -> str:
    fns = _funcs(family)
    cols = [np.asarray(fns[q](p, y), dtype=float) for q in quantities]
    lines = [f"# family={family} a={p.a!r} sigma={p.sigma!r}"]
    lines += [f"# {c}" for c in extra_comments]
    lines.append(",".join(["y", *quantities]))
    for i, yi in enumerate(y.tolist()):
        lines.append(",".join([repr(yi), *(repr(float(c[i])) for c in cols)]))
    return "\n".join(lines) + "\n"


def _parse_quantities(text):
    qs = [q.strip() for q in text.split(",") if q.strip()]
    bad = [q for q in qs if q not in QUANTITIES]
    if not qs or bad:
        raise UsageError(f"--quantities must be a comma list drawn from {QUANTITIES}")
    return qs


def cmd_curve(args) -> int:
    p = AbarParams(args.a, args.sigma)
    if not (0 <= args.y_min < args.y_max):
        raise UsageError("need 0 <= --y-min < --y-max")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    y = np.linspace(args.y_min, args.y_max, args.points)
    _write(curve_csv(args.family, p, y, _parse_quantities(args.quantities)), args.out)
    return EXIT_OK


def load_figure_recipe() -> dict:
    return json.loads(resources.files("abar").joinpath("data/figures.json").read_text())


def figure_csv(fig: dict, points: int, span: float) -> str:
    """Long-format CSV (``a,sigma,y,pdf,cdf``), one block per sweep value.

    Each curve has its own grid on ``[0, a + span*sigma]``; for Abar+ the grid
    is uniform in ``sqrt(y)`` so the square-root behaviour at the origin is
    resolved.
    """
    (key, values), = fig["sweep"].items()
    lines = [f"# figure={fig['name']} family={fig['family']}",
             "# sweep values are an artifact choice",
             "a,sigma,y,pdf,cdf"]
    for v in values:
        kw = dict(fig["fixed"])
        kw[key] = v
        p = AbarParams(kw["a"], kw["sigma"])
        r = np.linspace(0.0, p.a + span * p.sigma, points)
        if fig["family"] == "abar":
            y, f, F = r, core.pdf(p, r), core.cdf(p, r)
        else:
            y = r * r
            f, F = plus.plus_pdf(p, y), plus.plus_cdf(p, y)
        for yi, fi, Fi in zip(y.tolist(), f.tolist(), F.tolist()):
            lines.append(f"{p.a!r},{p.sigma!r},{yi!r},{fi!r},{Fi!r}")
    return "\n".join(lines) + "\n"


def cmd_figures(args) -> int:
    recipe = load_figure_recipe()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for fig in recipe["figures"]:
        path = out / f"{fig['name']}.csv"
        path.write_text(figure_csv(fig, recipe["points"], recipe["span_sigmas"]))
        print(path)
    return EXIT_OK


def cmd_sample(args) -> int:
    if (args.a is None) == (args.mean_vector is None):
        raise UsageError("give exactly one of --a or --mean-vector")
    mv = MeanVector3(*args.mean_vector) if args.mean_vector is not None else None
    a = mv.norm if mv is not None else args.a
    batch = draw(
        AbarParams(a, args.sigma), args.n, method=args.method, family=args.family,
        seed=args.seed, stream_id=args.stream_id, mean_vector=mv,
    )
    _write(batch.to_csv(), args.out)
    return EXIT_OK


def read_samples(text: str) -> np.ndarray:
    """Parse a one-column CSV; ``#`` lines and a leading ``value`` header are skipped."""
    values = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen and not values:
            header_seen = True
            if line.lower() == "value":
                continue
        try:
            if "," in line:
                raise ValueError
            values.append(float(line))
        except ValueError:
            raise InputError(f"line {lineno}: cannot parse {raw!r} as a number") from None
    if not values:
        raise InputError("no samples found")
    return np.array(values)


def cmd_fit(args) -> int:
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    samples = read_samples(text)
    res = fit_moments(samples) if args.method == "moments" else fit_mle(samples)
    print(json.dumps(res.to_dict()))
    if args.strict and not res.converged:
        return EXIT_FAILURE
    return EXIT_OK


def cmd_tcp_validate(args) -> int:
    cfg = TcpConfig(
        box_half_width=args.box_half_width,
        parent_intensity=args.parent_intensity,
        mean_daughters=args.mean_daughters,
        scatter_sigma=args.scatter_sigma,
        seed=args.seed,
        stream_id=args.stream_id,
    )
    real = generate_tcp(cfg)
    if args.realization_out:
        _write(real.to_csv(), args.realization_out)
    faults = {k: cfg.scatter_sigma for k in args.inject_fault}
    report = validate_application2(cfg, args.clusters, realization=real, fault_shift=faults)
    print(report.to_json())
    return EXIT_OK if report.overall_pass else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abar", description="Abar / Abar+ distributions toolkit", allow_abbrev=False
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def params(sp, need_a=True):
        sp.add_argument("--family", choices=FAMILIES, default="abar",
                        help="distribution family (default: abar)")
        sp.add_argument("--a", type=float, required=need_a, help="mean-vector norm a >= 0")
        sp.add_argument("--sigma", type=float, required=True, help="component scale sigma > 0")

    ev = sub.add_parser("eval", help="evaluate one quantity", allow_abbrev=False)
    params(ev)
    g = ev.add_mutually_exclusive_group(required=True)
    for name in ("pdf", "log-pdf", "cdf", "survival", "quantile", "mean", "moment2", "variance"):
        g.add_argument(f"--{name}", dest="quantity", action="store_const",
                       const=name.replace("-", "_"), help=f"print the {name}")
    g.add_argument("--mgf", type=float, metavar="S", help="print the MGF at S (abar only)")
    ev.add_argument("--y", type=float, help="evaluation point for pdf/log-pdf/cdf/survival")
    ev.add_argument("--prob", type=float, help="probability for --quantile")
    ev.set_defaults(func=cmd_eval)

    cv = sub.add_parser("curve", help="write a pdf/cdf/survival grid as CSV", allow_abbrev=False)
    params(cv)
    cv.add_argument("--y-min", type=float, default=0.0, help="grid start (default 0)")
    cv.add_argument("--y-max", type=float, required=True, help="grid end")
    cv.add_argument("--points", type=int, default=201, help="grid size (default 201)")
    cv.add_argument("--quantities", default="pdf,cdf",
                    help="comma list from pdf,cdf,survival (default pdf,cdf)")
    cv.add_argument("--out", help="output path (default stdout)")
    cv.set_defaults(func=cmd_curve)

    sp = sub.add_parser("sample", help="draw a reproducible sample as CSV", allow_abbrev=False)
    params(sp, need_a=False)
    sp.add_argument("--mean-vector", type=float, nargs=3, metavar=("A1", "A2", "A3"),
                    help="component means instead of --a (norm3 only)")
    sp.add_argument("--n", type=int, required=True, help="number of draws")
    sp.add_argument("--method", choices=METHODS, default="norm3", help="sampler (default norm3)")
    sp.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    sp.add_argument("--stream-id", type=int, default=0, help="64-bit stream id (default 0)")
    sp.add_argument("--out", help="output path (default stdout)")
    sp.set_defaults(func=cmd_sample)

    ft = sub.add_parser("fit", help="fit (a, sigma) to a sample CSV", allow_abbrev=False)
    ft.add_argument("input", help="sample CSV path, or - for stdin")
    ft.add_argument("--method", choices=("moments", "mle"), default="mle",
                    help="estimator (default mle)")
    ft.add_argument("--strict", action="store_true", help="exit 3 if the fit did not converge")
    ft.set_defaults(func=cmd_fit)

    tv = sub.add_parser("tcp-validate", help="check cluster distance laws on a 3D Thomas process",
                        allow_abbrev=False)
    tv.add_argument("--box-half-width", type=float, default=10.0, help="cube half width w")
    tv.add_argument("--parent-intensity", type=float, default=0.005, help="parents per unit volume")
    tv.add_argument("--mean-daughters", type=float, default=200.0, help="Poisson mean per cluster")
    tv.add_argument("--scatter-sigma", type=float, default=1.5, help="daughter displacement sigma")
    tv.add_argument("--seed", type=int, default=0, help="64-bit seed")
    tv.add_argument("--stream-id", type=int, default=0, help="64-bit stream id")
    tv.add_argument("--clusters", type=int, default=20, help="clusters to test (default 20)")
    tv.add_argument("--inject-fault", type=int, action="append", default=[], metavar="SLOT",
                    help="shift distances of the SLOT-th tested cluster by +sigma (repeatable)")
    tv.add_argument("--realization-out", help="also write the realization CSV here")
    tv.set_defaults(func=cmd_tcp_validate)

    fg = sub.add_parser("figures", help="write the four figure-sweep CSVs", allow_abbrev=False)
    fg.add_argument("--out-dir", default="figures", help="output directory (default ./figures)")
    fg.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "mgf", None) is not None:
        args.quantity = "mgf"
    try:
        return args.func(args)
    except (UsageError, DomainError, InputError, BracketError, OSError) as exc:
        print(f"abar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, RangeError) as exc:
        print(f"abar: numerical error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
