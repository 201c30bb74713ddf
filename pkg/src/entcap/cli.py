"""Command line reports over the library.

Subcommands:
  converge   entropy gap series of seeded random state pairs
  commuting  closed-form gap series for a diagonal pair
  stein      hypothesis-test error series at a fixed rate
  codesim    weight-one codebooks decoded by repetition tests
  checks     the seeded invariant bank, as JSON

Reports go to --out as CSV (or JSON with --format json); without --out
they go to stdout. When a report is written to a file, a PNG figure of
the same series lands next to it unless --no-figure is given. A JSON
--config file overrides flags (keys are the flag names with
underscores); converge, stein and codesim also accept a config-only
"state_pair" object giving the states explicitly, as spectra (lists of
weights) or real matrices, instead of drawing them from the seed.

Every row is re-checked against the owning module's invariants before
anything is written.

Exit codes: 0 success, 2 bad arguments or config, 3 a size cap was hit,
4 an invariant or check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from . import plotting
from .checks import run_all_checks
from .codesim import theorem3_series
from .commuting import (
    ClassicalPair,
    compute_qn,
    gap_exact,
    singular_lower_bound,
)
from .linalg import DEFAULT_SIZE_CAP, SizeCapError
from .mixture import convergence_series
from .rand import generator, random_density
from .stein import TIE_TOL, exponent_series


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".entcap-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


class InvariantViolation(RuntimeError):
    """A computed row failed the owning module's invariants."""


def _merge(args: argparse.Namespace, config: dict, defaults: dict) -> None:
    """Apply config values over flags, then defaults for what is left."""
    known = set(defaults)
    stray = set(config) - known - {"lam", "lambda", "state_pair"}
    if stray:
        raise ValueError(f"unknown config keys: {sorted(stray)}")
    for key, fallback in defaults.items():
        if key in config:
            setattr(args, key, config[key])
        elif getattr(args, key, None) is None:
            setattr(args, key, fallback)


def _state_from_json(value, name: str):
    """A state given in config: a weight list (diagonal) or a real matrix."""
    import numpy as np

    arr = np.asarray(value, dtype=float)
    if arr.ndim == 1:
        return np.diag(arr).astype(complex)
    if arr.ndim == 2:
        return arr.astype(complex)
    raise ValueError(f"state_pair entry {name!r} must be a vector or a matrix")


def _config_states(config: dict, first: str, second: str):
    """Pull an explicit state pair out of the config, if present."""
    pair = config.get("state_pair")
    if pair is None:
        return None
    if not isinstance(pair, dict) or set(pair) != {first, second}:
        raise ValueError(f"state_pair must hold exactly {first!r} and {second!r}")
    return _state_from_json(pair[first], first), _state_from_json(pair[second], second)


def _parse_weights(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(part) for part in str(text).split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"bad weight list {text!r}: {exc}") from None


def _emit(args: argparse.Namespace, payload: dict, columns: list[str],
          rows: list[dict], plot_fn=None) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = _csv_text(columns, rows)
    if args.out:
        _atomic_write(args.out, text)
        if plot_fn is not None and not args.no_figure:
            figure = os.path.splitext(args.out)[0] + ".png"
            plot_fn(figure)
    else:
        sys.stdout.write(text)


def _cmd_converge(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    _merge(args, config, {
        "dim": 2, "m": 1, "n_max": 8, "seed": 11,
        "size_cap": DEFAULT_SIZE_CAP, "format": "csv", "out": None,
    })
    explicit = _config_states(config, "sigma", "rho")
    if explicit is not None:
        sigma, rho = explicit
    else:
        rng = generator(int(args.seed))
        sigma = random_density(int(args.dim), rng)
        rho = random_density(int(args.dim), rng)
    records = convergence_series(sigma, rho, m=int(args.m),
                                 n_max=int(args.n_max),
                                 size_cap=int(args.size_cap))
    for r in records:
        if r.residual < -1e-9:
            raise InvariantViolation(
                f"n={r.n}: gap overshoots m*target by {-r.residual:.3e}")
        if r.gap < -1e-9:
            raise InvariantViolation(f"n={r.n}: negative gap {r.gap:.3e}")
    columns = ["n", "gap_nats", "residual_nats", "target_nats"]
    rows = [{"n": r.n, "gap_nats": r.gap, "residual_nats": r.residual,
             "target_nats": r.target} for r in records]
    payload = {"command": "converge",
               "dim": int(args.dim), "m": int(args.m),
               "seed": int(args.seed), "rows": rows}
    _emit(args, payload, columns, rows,
          lambda path: plotting.plot_convergence(records, path))
    return 0


def _cmd_commuting(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    _merge(args, config, {
        "lam": None, "mu": None, "n_max": 20, "format": "csv", "out": None,
    })
    if args.lam is None and "lambda" in config:
        args.lam = config["lambda"]
    if args.lam is None or args.mu is None:
        raise ValueError("commuting needs --lambda and --mu weight lists")
    pair = ClassicalPair.from_weights(_parse_weights(args.mu),
                                      _parse_weights(args.lam))
    singular = pair.is_singular
    target = pair.target()
    rows = []
    for n in range(1, int(args.n_max) + 1):
        row = {
            "n": n,
            "gap_formula": gap_exact(pair, n),
            "qn": compute_qn(pair, n),
            "regular_flag": not singular,
            "singular_lower_bound":
                singular_lower_bound(pair, n) if singular else None,
        }
        if row["gap_formula"] < -1e-9:
            raise InvariantViolation(f"n={n}: negative gap {row['gap_formula']:.3e}")
        if singular:
            if row["singular_lower_bound"] > row["gap_formula"] + 1e-9:
                raise InvariantViolation(
                    f"n={n}: group-sum bound above the exact gap")
        else:
            if row["qn"] > 1e-12:
                raise InvariantViolation(f"n={n}: positive Q_n {row['qn']:.3e}")
            if row["gap_formula"] > target + 1e-9:
                raise InvariantViolation(f"n={n}: gap above the target")
        rows.append(row)
    columns = ["n", "gap_formula", "qn", "regular_flag",
               "singular_lower_bound"]
    payload = {"command": "commuting",
               "mu": list(pair.mu), "lambda": list(pair.lam),
               "target_nats": pair.target(), "rows": rows}
    _emit(args, payload, columns, rows,
          lambda path: plotting.plot_commuting(rows, path))
    return 0


def _cmd_stein(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    _merge(args, config, {
        "dim": 2, "rate": None, "n_max": 6, "seed": 11,
        "size_cap": DEFAULT_SIZE_CAP, "tolerance": TIE_TOL,
        "format": "csv", "out": None,
    })
    if args.rate is None:
        raise ValueError("stein needs --rate")
    explicit = _config_states(config, "rho0", "rho1")
    if explicit is not None:
        rho0, rho1 = explicit
    else:
        rng = generator(int(args.seed))
        rho0 = random_density(int(args.dim), rng)
        rho1 = random_density(int(args.dim), rng)
    records = exponent_series(rho0, rho1, float(args.rate),
                              n_max=int(args.n_max),
                              size_cap=int(args.size_cap),
                              tie_tol=float(args.tolerance))
    for r in records:
        if r.beta > math.exp(-r.n_copies * r.rate) + 1e-12:
            raise InvariantViolation(
                f"N={r.n_copies}: beta {r.beta:.3e} above its guarantee")
        if not (0.0 <= r.alpha <= 1.0 and 0.0 <= r.beta <= 1.0):
            raise InvariantViolation(f"N={r.n_copies}: error outside [0, 1]")
    columns = ["N", "alpha", "beta", "beta_exponent", "rate"]
    rows = [{"N": r.n_copies, "alpha": r.alpha, "beta": r.beta,
             "beta_exponent": r.beta_exponent, "rate": r.rate,
             "underflow": r.underflow} for r in records]
    payload = {"command": "stein", "dim": int(args.dim),
               "seed": int(args.seed), "rate": float(args.rate),
               "rows": rows}
    _emit(args, payload, columns, rows,
          lambda path: plotting.plot_stein(records, path))
    return 0


def _cmd_codesim(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    _merge(args, config, {
        "dim": 2, "rate": None, "n_max": 6, "seed": 11,
        "epsilon": None, "repetitions": None,
        "size_cap": DEFAULT_SIZE_CAP, "format": "csv", "out": None,
    })
    if args.rate is None:
        raise ValueError("codesim needs --rate")
    if args.epsilon is not None and args.repetitions is not None:
        raise ValueError("give --epsilon or --repetitions, not both")
    epsilon = args.epsilon
    if epsilon is None and args.repetitions is None:
        epsilon = 0.25
    explicit = _config_states(config, "rho0", "rho1")
    if explicit is not None:
        rho0, rho1 = explicit
    else:
        rng = generator(int(args.seed))
        rho0 = random_density(int(args.dim), rng)
        rho1 = random_density(int(args.dim), rng)
    rows_data = theorem3_series(
        rho0, rho1, n_max=int(args.n_max), rate=float(args.rate),
        epsilon=None if epsilon is None else float(epsilon),
        n_repeats=None if args.repetitions is None else int(args.repetitions),
        size_cap=int(args.size_cap))
    for r in rows_data:
        if r.max_block_error > r.lemma3_bound + 1e-9:
            raise InvariantViolation(
                f"n={r.n}: block error {r.max_block_error:.3e} above its bound")
        if r.holevo > r.cost_bound + 1e-9:
            raise InvariantViolation(
                f"n={r.n}: Holevo above the cost bound")
    columns = ["n", "holevo", "cost", "cost_bound", "fano_lower",
               "max_block_error", "lemma3_bound"]
    rows = [{"n": r.n, "holevo": r.holevo, "cost": r.cost,
             "cost_bound": r.cost_bound, "gap_target": r.gap_target,
             "fano_lower": r.fano_lower,
             "max_block_error": r.max_block_error,
             "lemma3_bound": r.lemma3_bound,
             "n_repeats": r.n_repeats,
             "per_word_error": r.per_word_error} for r in rows_data]
    payload = {"command": "codesim", "dim": int(args.dim),
               "seed": int(args.seed), "rate": float(args.rate),
               "rows": rows}
    _emit(args, payload, columns, rows,
          lambda path: plotting.plot_codesim(rows_data, path))
    return 0


def _cmd_checks(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    _merge(args, config, {"seed": 7, "out": None})
    results = run_all_checks(int(args.seed))
    rows = [{"check_name": r.name, "pass": r.passed,
             "worst_violation": r.worst_violation} for r in results]
    text = json.dumps(rows, indent=2) + "\n"
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in results) else 4


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"),
                     help="output format (default csv)")
    sub.add_argument("--config", help="JSON file whose values override the flags")
    sub.add_argument("--no-figure", action="store_true",
                     help="skip the PNG figure next to --out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entcap",
        description="entropy gap, hypothesis testing and codebook reports")
    subs = parser.add_subparsers(dest="command", required=True)

    conv = subs.add_parser("converge",
                           help="dense entropy gap series for random states")
    conv.add_argument("--dim", type=int, help="state dimension (default 2)")
    conv.add_argument("--m", type=int, help="signal block length (default 1)")
    conv.add_argument("--n-max", type=int, help="largest n (default 8)")
    conv.add_argument("--seed", type=int, help="generator seed (default 11)")
    conv.add_argument("--size-cap", type=int,
                      help=f"matrix dimension cap (default {DEFAULT_SIZE_CAP})")
    _add_output_flags(conv)
    conv.set_defaults(func=_cmd_converge)

    comm = subs.add_parser("commuting",
                           help="closed-form series for a diagonal pair")
    comm.add_argument("--lambda", dest="lam", metavar="W1,W2,...",
                      help="sigma weights")
    comm.add_argument("--mu", metavar="W1,W2,...", help="rho weights")
    comm.add_argument("--n-max", type=int, help="largest n (default 20)")
    _add_output_flags(comm)
    comm.set_defaults(func=_cmd_commuting)

    stn = subs.add_parser("stein", help="hypothesis-test error series")
    stn.add_argument("--dim", type=int, help="state dimension (default 2)")
    stn.add_argument("--rate", type=float, help="type-2 exponent target, nats")
    stn.add_argument("--n-max", type=int, help="largest copy count (default 6)")
    stn.add_argument("--seed", type=int, help="generator seed (default 11)")
    stn.add_argument("--size-cap", type=int,
                     help=f"matrix dimension cap (default {DEFAULT_SIZE_CAP})")
    stn.add_argument("--tolerance", type=float,
                     help="tie exclusion width around zero (default 1e-12)")
    _add_output_flags(stn)
    stn.set_defaults(func=_cmd_stein)

    code = subs.add_parser("codesim",
                           help="weight-one codebooks with repetition decoding")
    code.add_argument("--dim", type=int, help="state dimension (default 2)")
    code.add_argument("--rate", type=float, help="per-test exponent, nats")
    code.add_argument("--n-max", type=int, help="largest codebook (default 6)")
    code.add_argument("--epsilon", type=float,
                      help="target block error sizing the repetitions")
    code.add_argument("--repetitions", type=int,
                      help="fixed repetition count instead of --epsilon")
    code.add_argument("--seed", type=int, help="generator seed (default 11)")
    code.add_argument("--size-cap", type=int,
                      help=f"matrix dimension cap (default {DEFAULT_SIZE_CAP})")
    _add_output_flags(code)
    code.set_defaults(func=_cmd_codesim)

    chk = subs.add_parser("checks", help="run the seeded invariant bank")
    chk.add_argument("--seed", type=int, help="generator seed (default 7)")
    chk.add_argument("--out", help="output file (default: stdout)")
    chk.add_argument("--config", help="JSON file whose values override the flags")
    chk.set_defaults(func=_cmd_checks)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
