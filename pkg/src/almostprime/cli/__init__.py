"""Command line: ``almostprime {verify-uncond,verify-grh,tabulate,optimize} --config FILE``.

Exit codes: 0 verified, 1 verification failed, 2 usage or configuration
error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal
from typing import Callable, Optional, Sequence

from .. import bounds_grh, bounds_uncond, search, sieve_fns, small_n, verify
from .. import __version__
from ..rigor import DEFAULT_PRECISION, DomainError, Enclosure, Magnitude, PrecisionExhausted, enc, working_precision
from .certificate import Certificate, certificate_for, write_atomic
from .config import (
    GRH_KEYS,
    SEARCH_KEYS,
    STRICT_GRH,
    STRICT_UNCOND,
    TABLE_KEYS,
    UNCOND_KEYS,
    ConfigError,
    RunConfig,
    load_config,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
TABLES = ("constants", "sieve_fn", "small_n")


# --- config -> parameters ----------------------------------------------------------


def _epsilon(cfg: RunConfig) -> Enclosure:
    if cfg.has("epsilon") == cfg.has("epsilon_inv"):
        raise ConfigError("give exactly one of epsilon, epsilon_inv")
    if cfg.has("epsilon"):
        return enc(cfg.decimal("epsilon"))
    return enc(1) / cfg.decimal("epsilon_inv")


def _row(cfg: RunConfig) -> bounds_uncond.PNTAPRow:
    row = bounds_uncond.PNTAPRow(*cfg.decimals("row", 4))
    if cfg.has("row_stitch"):
        row = bounds_uncond.stitch_pntap_rows(row, bounds_uncond.PNTAPRow(*cfg.decimals("row_stitch", 4)))
    return row


def uncond_params(cfg: RunConfig, *, strict: bool = False, conservative_p2: bool = False,
                  need_C: bool = True) -> bounds_uncond.UncondParams:
    required = ["X2", "delta", "alpha", "M", "u", "row"] + (["C1", "C2"] if need_C else [])
    cfg.require(required)
    if strict:
        cfg.require(STRICT_UNCOND, "--strict refuses defaults")
    return bounds_uncond.UncondParams(
        X2=cfg.magnitude("X2"),
        delta=cfg.decimal("delta"),
        alpha=cfg.decimal("alpha"),
        M=cfg.integer("M"),
        u=cfg.decimal("u"),
        row=_row(cfg),
        epsilon=_epsilon(cfg),
        C1_eps=enc(cfg.decimal("C1")) if cfg.has("C1") else None,
        C2_eps=enc(cfg.decimal("C2")) if cfg.has("C2") else None,
        use_strong_beta=cfg.flag("use_strong_beta", True),
        conservative_p2=conservative_p2 or cfg.flag("conservative_p2", False),
        normalizer=cfg.choice("normalizer", bounds_uncond.NORMALIZERS, "e_gamma"),
        c_alpha_scale=cfg.decimal("c_alpha_scale") if cfg.has("c_alpha_scale") else None,
    )


def _range_spec(text: str) -> verify.RangeSpec:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (3, 5):
        raise ConfigError(f"range: expected 'start, end, L+1[, B, C]', got {text!r}")
    try:
        start, end = Magnitude.parse(parts[0]), Magnitude.parse(parts[1])
        B = Magnitude.parse(parts[3]) if len(parts) == 5 else None
        lp1 = int(parts[2])
        C = Decimal(parts[4]) if len(parts) == 5 else None
    except (ValueError, ArithmeticError):
        raise ConfigError(f"range: cannot parse {text!r}") from None
    return verify.RangeSpec(start, end, lp1, B, C)


def grh_params(cfg: RunConfig, *, strict: bool = False, need_C: bool = True) -> bounds_grh.GrhParams:
    cfg.require(["X2", "alpha", "A", "M", "u"] + (["C1"] if need_C else []))
    if strict:
        cfg.require(STRICT_GRH, "--strict refuses defaults")
    return bounds_grh.GrhParams(
        X2=cfg.magnitude("X2"),
        alpha=cfg.decimal("alpha"),
        A=cfg.decimal("A"),
        M=cfg.integer("M"),
        u=cfg.decimal("u"),
        epsilon=_epsilon(cfg),
        C1_eps=enc(cfg.decimal("C1")) if cfg.has("C1") else None,
        normalizer=cfg.choice("normalizer", bounds_uncond.NORMALIZERS, "e_gamma"),
    )


def grh_options(cfg: RunConfig) -> dict:
    opts = {
        "fourth_group_log_factor": cfg.flag("fourth_group_log_factor", True),
        "exact_antiderivative": cfg.flag("exact_antiderivative", False),
    }
    if cfg.has("range"):
        opts["ranges"] = tuple(_range_spec(t) for t in cfg.all("range"))
    return opts


# --- commands ------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_verify_uncond(cfg: RunConfig, args) -> int:
    cfg.check_keys(UNCOND_KEYS)
    params = uncond_params(cfg, strict=args.strict, conservative_p2=args.conservative_p2)
    run = verify.verify_uncond(params)
    cert = certificate_for(run, cfg.echo(), args.precision)
    _emit(cert.to_json(), args.out)
    _report(cert)
    return EXIT_OK if cert.verdict else EXIT_FAILED


def cmd_verify_grh(cfg: RunConfig, args) -> int:
    cfg.check_keys(GRH_KEYS)
    params = grh_params(cfg, strict=args.strict)
    run = verify.verify_grh(params, **grh_options(cfg))
    cert = certificate_for(run, cfg.echo(), args.precision)
    _emit(cert.to_json(), args.out)
    _report(cert)
    return EXIT_OK if cert.verdict else EXIT_FAILED


def _report(cert: Certificate) -> None:
    state = "verified" if cert.verdict else f"not verified: {cert.binding}"
    print(f"{cert.mode}: final K = {cert.final_K}; {state}", file=sys.stderr)


def _csv(rows: list[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_sieve_fn(cfg: RunConfig) -> str:
    """Columns: s, f_lo, f_hi, F_lo, F_hi."""
    lo, hi, step = cfg.decimal("s_min", "2"), cfg.decimal("s_max", "7"), cfg.decimal("s_step", "0.5")
    if step <= 0 or hi < lo:
        raise ConfigError("need s_step > 0 and s_max >= s_min")
    rows = []
    s = lo
    while s <= hi:
        f, F = sieve_fns.eval_f(s), sieve_fns.eval_F(s)
        rows.append((format(s.normalize(), "f"), str(f.lo), str(f.hi), str(F.lo), str(F.hi)))
        s += step
    return _csv(rows, ("s", "f_lo", "f_hi", "F_lo", "F_hi"))


def table_small_n(cfg: RunConfig) -> str:
    """Columns: X2, L_plus_1, K."""
    cfg.require(["X2", "L_plus_1"])
    X2 = cfg.magnitude("X2")
    rows = []
    for text in cfg.all("L_plus_1"):
        for part in text.split(","):
            lp1 = int(part)
            rows.append((str(X2), str(lp1), str(small_n.max_k_for_range(X2, lp1))))
    return _csv(rows, ("X2", "L_plus_1", "K"))


def table_constants(cfg: RunConfig, args) -> str:
    """Columns: name, lo, hi (upper bounds are stored as [0, hi])."""
    params = uncond_params(cfg, strict=args.strict, conservative_p2=args.conservative_p2, need_C=False)
    tower = bounds_uncond.constant_tower(params)
    rows = [(name, str(v.lo), str(v.hi)) for name, v in tower.items()]
    return _csv(rows, ("name", "lo", "hi"))


def cmd_tabulate(cfg: RunConfig, args) -> int:
    table = cfg.choice("table", TABLES)
    if table == "constants":
        cfg.check_keys(UNCOND_KEYS | {"table"})
        text = table_constants(cfg, args)
    elif table == "sieve_fn":
        cfg.check_keys(TABLE_KEYS)
        text = table_sieve_fn(cfg)
    else:
        cfg.check_keys(TABLE_KEYS | {"X2"})
        text = table_small_n(cfg)
    _emit(text, args.out)
    return EXIT_OK


def search_space(cfg: RunConfig, args) -> search.SearchSpace:
    mode = cfg.choice("mode", ("uncond", "grh"))
    if mode == "uncond":
        cfg.check_keys(UNCOND_KEYS | SEARCH_KEYS)
        base = uncond_params(cfg, strict=args.strict, conservative_p2=args.conservative_p2)
        options: dict = {}
    else:
        cfg.check_keys(GRH_KEYS | SEARCH_KEYS)
        base = grh_params(cfg, strict=args.strict)
        options = grh_options(cfg)
    grids = {}
    for key in sorted(cfg.values):
        if key.startswith("search."):
            axis = key.split(".", 1)[1]
            grids[axis] = tuple(int(v) if axis == "M" else v for v in cfg.decimals(key))
    return search.SearchSpace(base, grids, options)


def cmd_optimize(cfg: RunConfig, args) -> int:
    space = search_space(cfg, args)
    result = search.optimize(space, cfg.integer("budget", 50))
    payload = {
        "best_K": result.best_K,
        "best_point": None if result.best_params is None else _point_of(result, space),
        "nearest": None if result.nearest is None else _entry(result.nearest),
        "params": cfg.echo(),
        "precision_digits": args.precision,
        "trace": [_entry(e) for e in result.trace],
        "tool_version": __version__,
    }
    _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    return EXIT_OK if result.feasible else EXIT_FAILED


def _entry(e: search.TraceEntry) -> dict:
    return {"point": dict(e.point), "K": e.K, "reason": e.reason}


def _point_of(result: search.SearchResult, space: search.SearchSpace) -> dict:
    # trace keys hold strings; map them back to grid values before comparing
    for e in result.trace:
        if e.K != result.best_K:
            continue
        point = {a: next(v for v in space.grids[a] if str(v) == s) for a, s in e.point}
        if space.params_at(point) == result.best_params:
            return dict(e.point)
    return {}


COMMANDS: dict[str, Callable] = {
    "verify-uncond": cmd_verify_uncond,
    "verify-grh": cmd_verify_grh,
    "tabulate": cmd_tabulate,
    "optimize": cmd_optimize,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="almostprime", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="key = value configuration file")
    parser.add_argument("--out", help="write the certificate or table here instead of stdout")
    parser.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working digits (default 60)")
    parser.add_argument("--strict", action="store_true", help="refuse defaults for trusted inputs")
    parser.add_argument("--conservative-p2", action="store_true", help="add the stray term to p2")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.precision < 10:
        print("error: --precision must be at least 10", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load_config(args.config)
        with working_precision(args.precision):
            return COMMANDS[args.command](cfg, args)
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
