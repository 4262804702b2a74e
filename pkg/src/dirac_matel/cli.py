"""Command-line front end.

    dirac-matel gaunt --l 1 1 0 --m 0 0 0
    dirac-matel hyp --2f1 1 1 2 -1
    dirac-matel radial --s1 0 -1 0.5 --s2 1 -1 0.5 --l 0 --k 0.01
    dirac-matel quadruple --s1 0 -1 0.5 --s2 0 -1 0.5 --k 1e-6
    dirac-matel shift --config run.ini

Every command writes CSV (default) or JSON to --output (stdout when "-").
Exit status: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import angular, matel, numerics, radial, shift, states
from .errors import DiracMatelError, DomainError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class ConfigError(DomainError):
    """Malformed run configuration."""


def fmt(x) -> str:
    """Shortest round-trip representation (at most 17 significant digits)."""
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def _render(rows, header, out_format, extra=None):
    if out_format == "json":
        obj = dict(extra or {})
        obj["records"] = [dict(zip(header, r)) for r in rows]
        return json.dumps(obj, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def _emit(text: str, path: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _number(s: str):
    """Real or complex literal ("0.5", "1/2", "1+2j")."""
    try:
        return float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        z = complex(s.replace(" ", ""))
    except ValueError as exc:
        raise DomainError(f"not a number: {s!r}") from exc
    return z.real if z.imag == 0 else z


def _consts(args):
    return states.PhysicalConstants(alpha=args.alpha, Z=args.Z)


def _bound(spec, consts):
    n_r, kappa, m = spec
    return states.BoundState(int(n_r), int(kappa), Fraction(m), consts)


def _free(spec, consts):
    p, kappa, m = spec
    return states.FreeState(float(p), int(kappa), Fraction(m), consts)


def _pair_states(args):
    c = _consts(args)
    s1 = _free(args.s1_free, c) if args.s1_free else _bound(args.s1, c)
    s2 = _free(args.s2_free, c) if args.s2_free else _bound(args.s2, c)
    return s1, s2


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_gaunt(args):
    l1, l2, l3 = args.l
    m1, m2, m3 = args.m
    if args.kind == "legendre":
        gv = angular.gaunt_legendre((l1, l2, l3, m1, m2, m3))
    else:
        gv = angular.gaunt_sph_value(l1, m1, l2, m2, l3, m3)
    header = ["kind", "l1", "l2", "l3", "m1", "m2", "m3", "value", "vanishing_reason"]
    rows = [[args.kind, l1, l2, l3, m1, m2, m3, gv.value, gv.vanishing_reason]]
    return header, rows


def cmd_hyp(args):
    if args.f21 is not None:
        a, b, c, z = (_number(x) for x in args.f21)
        val, d = numerics.hyp2f1(a, b, c, z)
        params = [a, b, c]
        kind = "2f1"
    else:
        a, c, z = (_number(x) for x in args.f11)
        val, d = numerics.hyp1f1(a, c, z)
        params = [a, None, c]
        kind = "1f1"
    val = complex(val)
    header = ["kind", "a", "b", "c", "z", "re", "im", "terms_used", "transformation"]
    rows = [[kind, *(fmt(x) if x is not None else "" for x in params), fmt(z), val.real, val.imag,
             d.terms_used, d.transformation_applied]]
    return header, rows


def cmd_radial(args):
    s1, s2 = _pair_states(args)
    d1, d2 = states.decomposition(s1), states.decomposition(s2)
    a, b = "gf".index(args.component[0]), "gf".index(args.component[1])
    header = ["k", "l", "component", "value", "path"]
    rows = []
    for k in args.k:
        res = radial.radial_integral(d1[a], d2[b], args.l, k)
        rows.append([k, args.l, args.component, float(complex(res.value).real), res.path])
    return header, rows


def cmd_quadruple(args):
    s1, s2 = _pair_states(args)
    header = ["k", "t0", "t1", "t2", "t3", "combined"]
    rows = []
    for k in args.k:
        q = matel.transition_quadruple(s1, s2, k)
        rows.append([k, *q.as_tuple()])
    return header, rows


# ---------------------------------------------------------------------------
# shift configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    Z: int = 1
    alpha: float = states.ALPHA_CODATA
    n_r: int = 0
    kappa: int = -1
    m: str = "1/2"
    N_max: int = 2
    K_max: int = 3
    p_nodes: int = 64
    p_mapping: str = "rational"
    lam: float = 10.0
    hook: str = "zero"
    refine: int = 3
    rtol: float = 1e-10
    tail_budget: float = 0.05
    out_format: str = "csv"
    path: str = "-"

    def state(self):
        c = states.PhysicalConstants(alpha=self.alpha, Z=self.Z)
        return states.BoundState(self.n_r, self.kappa, Fraction(self.m), c)

    def truncation(self):
        return shift.Truncation(self.N_max, self.K_max, self.p_nodes, self.p_mapping)

    def hook_object(self):
        return shift.DeltaMHook.self_subtraction() if self.hook == "self" else shift.DeltaMHook.zero()

    def validate(self):
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.out_format!r}")
        if self.hook not in ("zero", "self"):
            raise ConfigError(f"hook must be zero or self, got {self.hook!r}")
        if self.Z < 1:
            raise ConfigError("Z must be a positive integer for a bound reference state")
        s1 = self.state()
        trunc = self.truncation()
        shift.RegularizationSpec(self.lam)
        if not self.rtol > 0 or not self.tail_budget > 0:
            raise ConfigError("rtol and tail_budget must be positive")
        return s1, trunc

    def as_dict(self):
        d = asdict(self)
        # where the output goes does not change the result
        d.pop("path")
        d.pop("out_format")
        d["lam"] = "inf" if math.isinf(self.lam) else self.lam
        return d


_SCHEMA = {
    "physics": {"Z": int, "alpha": float},
    "state": {"n_r": int, "kappa": int, "m": str},
    "truncation": {"N_max": int, "K_max": int, "p_nodes": int, "p_mapping": str},
    "regularization": {"lambda": float, "hook": str},
    "grid": {"refine": int, "rtol": float},
    "tolerance": {"tail_budget": float},
    "output": {"format": str, "path": str},
}
_FIELD = {"lambda": "lam", "format": "out_format"}


def load_config(path: str) -> RunConfig:
    """Read a sectioned key = value file; unknown sections or keys are errors."""
    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    cfg = RunConfig()
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            typ = _SCHEMA[section][key]
            try:
                val = typ(raw) if typ is not float else float(raw)
            except ValueError as exc:
                raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc
            setattr(cfg, _FIELD.get(key, key), val)
    return cfg


def _shift_rows(result):
    rows = []
    for r in result.records:
        d = r.diagnostics
        rows.append([r.s2_label, r.raw_pv, r.regularized_pv, r.dm_subtracted,
                     d.get("raw_error", 0.0), d.get("regularized_error", 0.0), d.get("nodes", 0)])
    return rows


SHIFT_HEADER = ["s2_label", "raw_pv", "regularized_pv", "dm_subtracted", "raw_error", "regularized_error", "nodes"]


def cmd_shift(cfg: RunConfig):
    """Run the state sum; returns (exit code, output text)."""
    s1, trunc = cfg.validate()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", shift.TruncationWarning)
        result = shift.state_sum(s1, trunc, shift.RegularizationSpec(cfg.lam), cfg.hook_object(),
                                 cfg.refine, cfg.rtol, cfg.tail_budget, strict=False)
    for w in caught:
        if issubclass(w.category, shift.TruncationWarning):
            print(f"warning: {w.message}", file=sys.stderr)
    rows = _shift_rows(result)
    code = EXIT_OK
    if result.failed:
        code = EXIT_NUMERICAL
        for r in result.failed:
            rows.append(["FAILED", "", "", "", "", "", r.s2_label + ": " + r.diagnostics["failed"]])
    if cfg.out_format == "json":
        obj = {"config": cfg.as_dict(),
               "records": [dict(zip(SHIFT_HEADER, r)) for r in rows],
               "total": result.total, "tail_estimate": result.tail_estimate,
               "status": "FAILED" if result.failed else "ok"}
        text = json.dumps(obj, indent=1) + "\n"
    else:
        rows.append(["TOTAL", "", "", result.total, "", "", ""])
        rows.append(["TAIL_ESTIMATE", "", "", result.tail_estimate, "", "", ""])
        text = _render(rows, SHIFT_HEADER, "csv")
    return code, text


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_states(p):
    p.add_argument("--Z", type=int, default=1)
    p.add_argument("--alpha", type=float, default=states.ALPHA_CODATA)
    g1 = p.add_mutually_exclusive_group(required=True)
    g1.add_argument("--s1", nargs=3, metavar=("N_R", "KAPPA", "M"), help="bound state n' kappa m")
    g1.add_argument("--s1-free", nargs=3, metavar=("P", "KAPPA", "M"), help="continuum state p kappa m")
    g2 = p.add_mutually_exclusive_group(required=True)
    g2.add_argument("--s2", nargs=3, metavar=("N_R", "KAPPA", "M"))
    g2.add_argument("--s2-free", nargs=3, metavar=("P", "KAPPA", "M"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dirac-matel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gaunt", help="Legendre triple integral or spherical Gaunt coefficient")
    p.add_argument("--l", nargs=3, type=int, required=True)
    p.add_argument("--m", nargs=3, type=int, required=True)
    p.add_argument("--kind", choices=("legendre", "sph"), default="legendre",
                   help="legendre: int P P P dx; sph: int conj(Y_l1m1) conj(Y_l2m2) Y_l3m3 dOmega")
    _add_common(p)

    p = sub.add_parser("hyp", help="1F1 or 2F1 value")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--2f1", dest="f21", nargs=4, metavar=("A", "B", "C", "Z"))
    g.add_argument("--1f1", dest="f11", nargs=3, metavar=("A", "C", "Z"))
    _add_common(p)

    p = sub.add_parser("radial", help="radial Fourier integral int r^2 h1 h2 j_l(kr) dr")
    _add_states(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=float, nargs="+", required=True)
    p.add_argument("--component", choices=("gg", "gf", "fg", "ff"), default="gg")
    _add_common(p)

    p = sub.add_parser("quadruple", help="t0..t3 and combined for a pair of states")
    _add_states(p)
    p.add_argument("--k", type=float, nargs="+", required=True)
    _add_common(p)

    p = sub.add_parser("shift", help="itemised second-order shift from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", "-o", default=None, help="overrides [output] path")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="overrides [output] format")
    return ap


_COMMANDS = {"gaunt": cmd_gaunt, "hyp": cmd_hyp, "radial": cmd_radial, "quadruple": cmd_quadruple}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "shift":
            cfg = load_config(args.config)
            if args.output is not None:
                cfg.path = args.output
            if args.format is not None:
                cfg.out_format = args.format
            code, text = cmd_shift(cfg)
            _emit(text, cfg.path)
            return code
        header, rows = _COMMANDS[args.command](args)
        _emit(_render(rows, header, args.format), args.output)
        return EXIT_OK
    except (DomainError, ValueError, NotImplementedError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DiracMatelError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
