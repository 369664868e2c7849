"""Command-line front end: parameter sweeps, key-window finding, CSV and plots.

Subcommands: ``symmetric``, ``asym-tw``, ``cavity``, ``plot``.  Every run
writes a self-describing CSV whose first line is

    # cv-triparty v1, subcommand=<id>, params=<canonical serialization>

followed by a column-header line and data rows.  Floats are printed with 9
significant digits and '\\n' line endings, so identical invocations produce
byte-identical files.  Exit codes: 0 success, 2 argument or validation
failure, 3 physical-regime failure (pump at/above threshold, or no key
window found when one was requested).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cavity, criteria, symmetric, travelling_wave

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REGIME = 3

_FLOAT_FMT = "%.9g"


def _fmt(value) -> str:
    if isinstance(value, float) or isinstance(value, np.floating):
        return _FLOAT_FMT % value
    return str(value)


def _write_csv(path: str, subcommand: str, params: list[tuple[str, object]],
               header: list[str], rows) -> None:
    serialized = ";".join(f"{k}={_fmt(v)}" for k, v in params)
    lines = [f"# cv-triparty v1, subcommand={subcommand}, params={serialized}"]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _append_lines(path: str, lines: list[str]) -> None:
    text = "".join(line + "\n" for line in lines)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "a", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommand implementations

def run_symmetric(args) -> int:
    grid = np.linspace(args.r_min, args.r_max, args.steps)
    header = ["r", "ds_plus", "ds_minus", "pi", "v_ij", "v_ijk",
              "e_3_1", "e_3_2", "consistency"]
    rows = []
    for r in grid:
        state = symmetric.build_symmetric_state(
            symmetric.SymmetricParams(r=float(r), mu=args.mu, nu=args.nu)
        )
        ds_plus, ds_minus = criteria.duan_simon(state, 1, 2)
        pi = criteria.reid_product(state, 1, 2).value
        v_ij = criteria.vlf_pair(state, 1, 2, 3).value
        v_ijk = criteria.vlf_trio(state, 1, 2, 3).value
        forms = symmetric.closed_forms(float(r))
        consistency = max(
            abs(ds_plus.value - forms.ds_plus),
            abs(ds_minus.value - forms.ds_minus),
            abs(pi - forms.reid_product),
            abs(v_ij - forms.v_ij),
            abs(v_ijk - forms.v_ijk),
        )
        rows.append([
            float(r), ds_plus.value, ds_minus.value, pi, v_ij, v_ijk,
            criteria.wang_bound(3, 1, float(r)), criteria.wang_bound(3, 2, float(r)),
            consistency,
        ])
    _write_csv(
        args.out, "symmetric",
        [("r_min", args.r_min), ("r_max", args.r_max), ("steps", args.steps),
         ("mu", args.mu), ("nu", args.nu)],
        header, rows,
    )
    return EXIT_OK


def run_asym_tw(args) -> int:
    params = travelling_wave.AsymParams(
        kappa1=1.0, kappa2=args.kappa_ratio, coefficient_mode=args.coefficients
    )
    grid = np.linspace(args.zt_min, args.zt_max, args.steps)
    header = ["zt", "ds_minus_13", "v_123", "v_312", "v_13",
              "pi_13", "pi_31", "k_13", "k_31"]
    rows = []
    for zt in grid:
        state = travelling_wave.tw_state(params, float(zt))
        _, ds_minus = criteria.duan_simon(state, 1, 3)
        v_123 = criteria.vlf_trio(state, 1, 2, 3).value
        v_312 = criteria.vlf_trio(state, 3, 1, 2).value
        v_13 = criteria.vlf_pair(state, 1, 3, 2).value
        pi_13 = criteria.reid_product(state, 1, 3).value
        pi_31 = criteria.reid_product(state, 3, 1).value
        rows.append([
            float(zt), ds_minus.value, v_123, v_312, v_13, pi_13, pi_31,
            criteria.key_rate(pi_13).value, criteria.key_rate(pi_31).value,
        ])
    _write_csv(
        args.out, "asym-tw",
        [("zt_min", args.zt_min), ("zt_max", args.zt_max), ("steps", args.steps),
         ("kappa_ratio", args.kappa_ratio), ("coefficients", args.coefficients)],
        header, rows,
    )
    if args.find_window:
        scan_max = max(args.zt_max, travelling_wave.DEFAULT_ZT_MAX)
        summaries = []
        missing = False
        for steered, steerer in ((1, 3), (3, 1)):
            window = travelling_wave.key_window(params, (steered, steerer), zt_max=scan_max)
            if window is None:
                summaries.append(f"# window steered={steered} steerer={steerer} none")
                missing = True
            else:
                summaries.append(
                    f"# window steered={steered} steerer={steerer} "
                    f"zt_lo={_fmt(window[0])} zt_hi={_fmt(window[1])}"
                )
        _append_lines(args.out, summaries)
        if missing:
            print("error: no positive key-rate window found", file=sys.stderr)
            return EXIT_REGIME
    return EXIT_OK


def _cavity_params(args) -> cavity.CavityParams:
    defaults = cavity.CavityParams()
    return cavity.CavityParams(kappa2=args.kappa_ratio * defaults.kappa1, pump=0.0)


def run_cavity(args) -> int:
    base = _cavity_params(args)
    eps_c = cavity.critical_pump(base)
    omegas = np.linspace(args.omega_min, args.omega_max, args.steps)
    pair_names = [f"{i}{j}" for i, j in cavity.ORDERED_PAIRS]
    if args.sweep_pump:
        lo, hi, steps = args.sweep_pump
        fracs = np.linspace(lo, hi, steps)
        rows_data = cavity.pump_sweep(base, fracs, omegas=omegas)
        header = (["eps_frac"]
                  + [f"pi_{p}_min" for p in pair_names]
                  + [f"k_{p}_max" for p in pair_names])
        rows = [
            [row["eps_frac"]]
            + [row[f"pi_{p}"] for p in pair_names]
            + [row[f"k_{p}"] for p in pair_names]
            for row in rows_data
        ]
        _write_csv(
            args.out, "cavity",
            [("sweep_pump", "%s:%s:%d" % (_fmt(lo), _fmt(hi), steps)),
             ("omega_min", args.omega_min), ("omega_max", args.omega_max),
             ("steps", args.steps), ("kappa_ratio", args.kappa_ratio),
             ("eps_c", eps_c)],
            header, rows,
        )
        return EXIT_OK

    system = cavity.build_system(
        cavity.CavityParams(kappa2=base.kappa2, pump=args.eps_frac * eps_c)
    )
    header = (["omega"]
              + [f"pi_{p}" for p in pair_names]
              + [f"k_{p}" for p in pair_names])
    rows = []
    for omega in omegas:
        state = cavity.spectral_state(system, float(omega))
        pis = [criteria.reid_product(state, i, j).value for i, j in cavity.ORDERED_PAIRS]
        rows.append([float(omega)] + pis + [criteria.key_rate(pi).value for pi in pis])
    _write_csv(
        args.out, "cavity",
        [("eps_frac", args.eps_frac), ("omega_min", args.omega_min),
         ("omega_max", args.omega_max), ("steps", args.steps),
         ("kappa_ratio", args.kappa_ratio), ("eps_c", eps_c)],
        header, rows,
    )
    return EXIT_OK


_GUIDE_BY_PREFIX = (
    ("ds", 4.0), ("v", 4.0), ("pi", 1.0), ("e", 1.0), ("k", 0.0),
)


def _guide_for(column: str) -> float | None:
    for prefix, bound in _GUIDE_BY_PREFIX:
        if column == prefix or column.startswith(prefix + "_"):
            return bound
    return None


def run_plot(args) -> int:
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "cv-triparty"
    import matplotlib.pyplot as plt

    with open(args.csv) as fh:
        lines = [line.rstrip("\n") for line in fh if not line.startswith("#")]
    lines = [line for line in lines if line.strip()]
    if len(lines) < 2:
        print(f"error: {args.csv} has no data rows", file=sys.stderr)
        return EXIT_USAGE
    header = lines[0].split(",")
    wanted = [c.strip() for c in args.columns.split(",") if c.strip()]
    missing = [c for c in wanted if c not in header]
    if not wanted or missing:
        print(f"error: columns not found in CSV: {missing or args.columns}", file=sys.stderr)
        return EXIT_USAGE
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    x = data[:, 0]

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    guides = set()
    for name in wanted:
        ax.plot(x, data[:, header.index(name)], label=name)
        guide = args.guide if args.guide is not None else _guide_for(name)
        if guide is not None:
            guides.add(guide)
    for bound in sorted(guides):
        ax.axhline(bound, color="0.4", linestyle="--", linewidth=0.8)
    ax.set_xlabel(header[0])
    ax.legend()
    fig.tight_layout()
    # a fixed Date keeps repeated SVG renders byte-identical
    metadata = {"Date": None} if args.out.endswith(".svg") else None
    fig.savefig(args.out, metadata=metadata)
    plt.close(fig)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="cv-triparty",
        description="Tripartite Gaussian entanglement, EPR-steering and "
                    "1SDI-QKD key-rate sweeps for optical network models.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sym = sub.add_parser("symmetric", help="squeezing sweep of the beamsplitter network")
    p_sym.add_argument("--r-min", type=float, default=0.0)
    p_sym.add_argument("--r-max", type=float, default=2.0)
    p_sym.add_argument("--steps", type=int, default=201)
    p_sym.add_argument("--mu", type=float, default=symmetric.FULLY_SYMMETRIC_MU,
                       help="first beamsplitter reflectivity")
    p_sym.add_argument("--nu", type=float, default=symmetric.FULLY_SYMMETRIC_NU,
                       help="second beamsplitter reflectivity")

    p_tw = sub.add_parser("asym-tw", help="interaction-strength sweep of the travelling-wave model")
    p_tw.add_argument("--zt-min", type=float, default=0.0)
    p_tw.add_argument("--zt-max", type=float, default=2.0)
    p_tw.add_argument("--steps", type=int, default=201)
    p_tw.add_argument("--kappa-ratio", type=float, default=0.6,
                      help="kappa2 / kappa1")
    p_tw.add_argument("--coefficients", choices=[travelling_wave.CANONICAL,
                                                 travelling_wave.PAPER_LITERAL],
                      default=travelling_wave.CANONICAL)
    p_tw.add_argument("--find-window", action="store_true",
                      help="append the positive key-rate window per direction")

    p_cav = sub.add_parser("cavity", help="output spectra of the intracavity model")
    p_cav.add_argument("--eps-frac", type=float, default=0.8,
                       help="pump amplitude as a fraction of threshold")
    p_cav.add_argument("--omega-min", type=float, default=cavity.DEFAULT_OMEGA_RANGE[0])
    p_cav.add_argument("--omega-max", type=float, default=cavity.DEFAULT_OMEGA_RANGE[1])
    p_cav.add_argument("--steps", type=int, default=cavity.DEFAULT_OMEGA_POINTS)
    p_cav.add_argument("--kappa-ratio", type=float, default=0.6)
    p_cav.add_argument("--sweep-pump", type=_parse_sweep, default=None,
                       metavar="LO:HI:STEPS",
                       help="sweep pump fractions instead of frequencies")

    p_plot = sub.add_parser("plot", help="render CSV columns to a vector-graphics file")
    p_plot.add_argument("csv", help="input CSV produced by another subcommand")
    p_plot.add_argument("--columns", required=True,
                        help="comma-separated column names to plot")
    p_plot.add_argument("--guide", type=float, default=None,
                        help="override the criterion-bound guide line")

    for p in (p_sym, p_tw, p_cav, p_plot):
        p.add_argument("--out", default="-", help="output path ('-' for stdout)")
        p.add_argument("--config", default=None,
                       help="JSON file with defaults; flags take precedence")
    subparsers = {"symmetric": p_sym, "asym-tw": p_tw, "cavity": p_cav, "plot": p_plot}
    return parser, subparsers


def _parse_sweep(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, steps = text.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected LO:HI:STEPS, got {text!r}"
        ) from exc


def _apply_config(parser: argparse.ArgumentParser,
                  subparser: argparse.ArgumentParser, argv: list[str],
                  args: argparse.Namespace) -> argparse.Namespace:
    with open(args.config) as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError("config file must hold a JSON object")
    allowed = set(vars(args)) - {"subcommand", "func"}
    unknown = sorted(set(config) - allowed)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    if "sweep_pump" in config and isinstance(config["sweep_pump"], str):
        config["sweep_pump"] = _parse_sweep(config["sweep_pump"])
    # defaults must land on the subparser: its own defaults would otherwise
    # overwrite anything set on the top-level parser
    subparser.set_defaults(**config)
    return parser.parse_args(argv)


def _validate(args) -> None:
    if getattr(args, "steps", 2) < 2:
        raise ValueError("--steps must be >= 2")
    for lo_name, hi_name in (("r_min", "r_max"), ("zt_min", "zt_max"),
                             ("omega_min", "omega_max")):
        lo = getattr(args, lo_name, None)
        hi = getattr(args, hi_name, None)
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError(f"--{lo_name.replace('_', '-')} must be below "
                             f"--{hi_name.replace('_', '-')}")
    sweep = getattr(args, "sweep_pump", None)
    if sweep is not None:
        lo, hi, steps = sweep
        if steps < 2 or not 0 < lo < hi < 1:
            raise ValueError("--sweep-pump needs 0 < LO < HI < 1 and STEPS >= 2")
    frac = getattr(args, "eps_frac", None)
    if frac is not None and frac < 0:
        raise ValueError("--eps-frac must be >= 0")
    ratio = getattr(args, "kappa_ratio", None)
    if ratio is not None and not 0 <= ratio < 1:
        raise ValueError("--kappa-ratio must lie in [0, 1)")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build_parser()
    args = parser.parse_args(argv)
    runners = {
        "symmetric": run_symmetric,
        "asym-tw": run_asym_tw,
        "cavity": run_cavity,
        "plot": run_plot,
    }
    try:
        if args.config is not None:
            args = _apply_config(parser, subparsers[args.subcommand], argv, args)
        _validate(args)
        if args.subcommand == "cavity" and not args.sweep_pump and args.eps_frac >= 1.0:
            raise cavity.AboveThresholdError(
                f"--eps-frac {args.eps_frac} is at or above threshold"
            )
        return runners[args.subcommand](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except cavity.PhysicalRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME


def entrypoint() -> None:
    sys.exit(main())
