"""Command-line entry point.

Examples::

    qucouple concurrence --w1 1 --w2 1 --g 5 --temp 1
    qucouple sweep --preset case2-b --format matrix --output case2b.csv
    qucouple validate-swt --w1 4 --w2 4 --wc 6 --g 0.4,0.2,0.1,0.05 --temp 0.5

Results go to stdout (or ``--output``); diagnostics go to stderr. Exit codes:
0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import warnings
from pathlib import Path

from scipy import constants

from . import __version__
from .circuit import (
    CircuitParams,
    JunctionPair,
    TransmonMode,
    check_hierarchy,
    transmon_frequency,
    tunable_josephson_energy,
)
from .effective_model import EffectiveTwoQubit, ThreeModeSpins, analytic_eigensystem, effective_hamiltonian, swt_reduce
from .entanglement import concurrence_thermal, critical_temperature
from .exact_bench import MODES, validation_rows
from .sweep import WRITERS, SweepSpec, case_presets, fmt, run_sweep
from .thermal import gibbs_state

log = logging.getLogger("qucouple")

SI_CAVEAT = (
    "converted as T[K] = hbar * 2*pi*f / (k_B * t), i.e. the reference frequency taken as "
    "angular frequency 2*pi*f with f in GHz; the source relation is dimensionally ambiguous"
)


def to_physical_temperature(t_dimensionless: float, reference_frequency: float) -> float:
    """Dimensionless temperature to millikelvin for a reference frequency in GHz."""
    if not t_dimensionless > 0 or not reference_frequency > 0:
        raise ValueError("temperature and reference frequency must be positive")
    omega = 2.0 * math.pi * reference_frequency * 1e9
    return constants.hbar * omega / (constants.k * t_dimensionless) * 1e3


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _assignment(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None


def _kv(out: list[str], key: str, value) -> None:
    out.append(f"{key}={fmt(value) if isinstance(value, float) else value}")


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_transmon(args) -> str:
    if args.ej is not None:
        ej = args.ej
    elif args.ej_left is not None and args.ej_right is not None:
        ej = tunable_josephson_energy(JunctionPair(args.ej_left, args.ej_right, args.flux))
    else:
        raise _Usage("transmon needs --ej or both --ej-left and --ej-right")
    omega, anharm = transmon_frequency(TransmonMode(args.ec, ej))
    out = []
    _kv(out, "e_j", float(ej))
    _kv(out, "omega", omega)
    _kv(out, "anharmonicity", anharm)
    return "\n".join(out) + "\n"


def cmd_couple(args) -> str:
    params = CircuitParams.from_json(args.config)
    for w in check_hierarchy(params.topology):
        print(f"warning: {w}", file=sys.stderr)
    freqs = params.frequencies()
    g = params.couplings()
    out = []
    for m in CircuitParams.MODES:
        _kv(out, f"omega_{m}", freqs[m][0])
    _kv(out, "g_1", g.g_1)
    _kv(out, "g_2", g.g_2)
    _kv(out, "g_12", g.g_12)
    _kv(out, "eta", "none" if g.eta is None else float(g.eta))
    return "\n".join(out) + "\n"


def _spins(args) -> ThreeModeSpins:
    if args.config:
        return ThreeModeSpins.from_circuit(CircuitParams.from_json(args.config))
    missing = [n for n in ("w1", "w2", "wc") if getattr(args, n) is None]
    if missing:
        raise _Usage(f"missing --{', --'.join(missing)} (or give --config)")
    return ThreeModeSpins(args.w1, args.w2, args.wc, args.g1, args.g2, args.g12)


def cmd_effective(args) -> str:
    spins = _spins(args)
    eff = swt_reduce(spins)
    eig = analytic_eigensystem(eff)
    out = []
    _kv(out, "omega_1_eff", eff.omega_1)
    _kv(out, "omega_2_eff", eff.omega_2)
    _kv(out, "g_eff", eff.g)
    _kv(out, "alpha", eff.alpha)
    _kv(out, "omega", eff.omega)
    _kv(out, "gamma", eff.gamma)
    out.append("energies=" + ",".join(fmt(float(v)) for v in eig.energies))
    return "\n".join(out) + "\n"


def cmd_concurrence(args) -> str:
    eff = EffectiveTwoQubit(args.w1, args.w2, args.g)
    value = concurrence_thermal(eff, args.temp)
    if args.dump_state:
        Path(args.dump_state).write_text(gibbs_state(effective_hamiltonian(eff), args.temp).to_json(), encoding="utf-8")
    return fmt(value) + "\n"


def cmd_critical_temp(args) -> str:
    tc = critical_temperature(EffectiveTwoQubit(args.w1, args.w2, args.g))
    out = []
    _kv(out, "T_c", tc)
    if args.ref_ghz is not None:
        _kv(out, "T_c_mK", to_physical_temperature(tc, args.ref_ghz))
        print(f"note: {SI_CAVEAT}", file=sys.stderr)
    return "\n".join(out) + "\n"


def cmd_si_temp(args) -> str:
    print(f"note: {SI_CAVEAT}", file=sys.stderr)
    return fmt(to_physical_temperature(args.temp, args.ref_ghz)) + "\n"


def _sweep_spec(args) -> SweepSpec:
    if bool(args.preset) == bool(args.config):
        raise _Usage("sweep needs exactly one of --preset or --config")
    if args.preset:
        presets = case_presets()
        if args.preset not in presets:
            raise _Usage(f"unknown preset {args.preset!r}; choose from {', '.join(presets)}")
        d = presets[args.preset].to_dict()
    else:
        d = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.points is not None:
        for key in ("x", "y"):
            if d.get(key) is not None:
                d[key]["points"] = args.points
    for key, value in args.fixed or []:
        d.setdefault("fixed", {})[key] = value
    return SweepSpec.from_dict(d)


def cmd_sweep(args) -> str:
    grid = run_sweep(_sweep_spec(args), workers=args.workers)
    return WRITERS[args.format](grid)


def cmd_presets(args) -> str:
    return "".join(f"{name}: {spec.to_json()}\n" for name, spec in case_presets().items())


def cmd_validate_swt(args) -> str:
    base = ThreeModeSpins(args.w1, args.w2, args.wc, 0.0, 0.0, args.g12)
    modes = MODES if args.mode == "both" else (args.mode,)
    rows = validation_rows(base, args.g, args.temp, modes)
    lines = ["# qucouple validate-swt", f"# version: {__version__}",
             f"# w1={fmt(args.w1)}, w2={fmt(args.w2)}, wc={fmt(args.wc)}, g12={fmt(args.g12)}",
             "g,T,mode,C_exact,C_eff,error"]
    for g, t, mode, c_exact, c_eff, err in rows:
        lines.append(f"{fmt(g)},{fmt(t)},{mode},{fmt(c_exact)},{fmt(c_eff)},{fmt(err)}")
    return "\n".join(lines) + "\n"


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qucouple", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"qucouple {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transmon", help="transmon frequency and anharmonicity")
    p.add_argument("--ec", type=float, required=True)
    p.add_argument("--ej", type=float)
    p.add_argument("--ej-left", type=float)
    p.add_argument("--ej-right", type=float)
    p.add_argument("--flux", type=float, default=0.0, help="external flux in flux quanta")
    p.set_defaults(func=cmd_transmon)

    p = sub.add_parser("couple", help="coupling constants from a circuit JSON file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_couple)

    p = sub.add_parser("effective", help="coupler-eliminated two-qubit model")
    p.add_argument("--config", help="circuit JSON file (instead of the flags below)")
    for name in ("w1", "w2", "wc"):
        p.add_argument(f"--{name}", type=float)
    for name in ("g1", "g2", "g12"):
        p.add_argument(f"--{name}", type=float, default=0.0)
    p.set_defaults(func=cmd_effective)

    p = sub.add_parser("concurrence", help="thermal concurrence at one point")
    for name in ("w1", "w2", "g", "temp"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--dump-state", metavar="PATH", help="write the Gibbs state as JSON")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("critical-temp", help="temperature where the concurrence vanishes")
    for name in ("w1", "w2", "g"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--ref-ghz", type=float, help="also print millikelvin for this reference frequency")
    p.set_defaults(func=cmd_critical_temp)

    p = sub.add_parser("si-temp", help="dimensionless temperature to millikelvin")
    p.add_argument("--temp", type=float, required=True)
    p.add_argument("--ref-ghz", type=float, default=4.0)
    p.set_defaults(func=cmd_si_temp)

    p = sub.add_parser("sweep", help="concurrence over a parameter grid")
    p.add_argument("--preset")
    p.add_argument("--config", help="sweep JSON file")
    p.add_argument("--points", type=int, help="override points per axis")
    p.add_argument("--fixed", type=_assignment, action="append", metavar="NAME=VALUE")
    p.add_argument("--format", choices=sorted(WRITERS), default="csv")
    p.add_argument("--workers", type=int, default=None, help="0 = all cores (default: $QUCOUPLE_WORKERS or 1)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("presets", help="list sweep presets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("validate-swt", help="exact 8x8 chain against the reduced model")
    p.add_argument("--w1", type=float, default=4.0)
    p.add_argument("--w2", type=float, default=4.0)
    p.add_argument("--wc", type=float, default=6.0)
    p.add_argument("--g12", type=float, default=0.0)
    p.add_argument("--g", type=_float_list, default=[0.4, 0.2, 0.1, 0.05])
    p.add_argument("--temp", type=_float_list, default=[0.5])
    p.add_argument("--mode", choices=[*MODES, "both"], default="both")
    p.add_argument("--output")
    p.set_defaults(func=cmd_validate_swt)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        _emit(text, getattr(args, "output", None))
    except BrokenPipeError:
        return 0
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"qucouple: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"qucouple: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
