"""Command-line front end. Every command writes one JSON document (or CSV
table) to stdout and echoes the effective configuration."""
from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from dataclasses import asdict, dataclass, field
from typing import Any

from . import circle, density, fourier, recurrence, sieve
from .digits import DigitSystem, new_digit_system, parse_digit_list, parse_system
from .errors import BudgetExceeded, PreconditionError, require
from .frequency import Frequency, parse_theta

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    system: str
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    theta: str | None = None
    fmt: str = "json"
    workers: int = 1
    seed: int = 0

    def canonical(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_canonical(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- set specs -------------------------------------------------------------

def parse_set(spec: str) -> tuple[int, ...]:
    """'arith:<start>:<step>:<limit>' or 'file:<path>' (one integer per line)."""
    kind, _, rest = spec.partition(":")
    if kind == "arith":
        try:
            start, step, limit = (int(x) for x in rest.split(":"))
        except ValueError as exc:
            raise PreconditionError(f"malformed set spec {spec!r}") from exc
        require(step >= 1, "arith step must be >= 1")
        return tuple(range(start, limit, step))
    if kind == "file":
        try:
            with open(rest) as fh:
                vals = sorted({int(line) for line in fh if line.strip()})
        except (OSError, ValueError) as exc:
            raise PreconditionError(f"cannot read set file {rest!r}: {exc}") from exc
        return tuple(vals)
    raise PreconditionError(f"unknown set spec {spec!r}")


def _range(text: str) -> list[int]:
    if ":" in text:
        lo, hi = (int(x) for x in text.split(":"))
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",")]


def _cx(z: complex) -> list[float]:
    return [z.real, z.imag]


# -- commands ----------------------------------------------------------------

def _theta(args, ds: DigitSystem, N: int) -> Frequency:
    return parse_theta(args.theta, N, ds.base)


def cmd_digits(ds, args):
    out = {"constants": asdict(ds.constants()),
           "conditions": ds.check_conditions(args.epsilon).to_dict(),
           "allowed": list(ds.allowed)}
    if args.N is not None:
        out["count"] = ds.count(args.N)
    return out


def cmd_fourier(ds, args):
    th = _theta(args, ds, args.N)
    v = fourier.chat(ds, args.N, th)
    out = {"value": _cx(v.value), "absErrorBound": v.abs_error_bound,
           "magnitude": abs(v.value), "envelope": fourier.envelope(ds, args.N, th)}
    if ds.has_consecutive_pair:
        out["decayEnvelope"] = fourier.decay_envelope(ds, args.N, th)
    return out


def cmd_bounds(ds, args):
    if args.samples:
        rng = random.Random(args.seed)
        xs = [Frequency.rat(rng.randrange(10**6), 10**6) for _ in range(args.samples)]
    else:
        xs = [_theta(args, ds, args.N)]
    rows = []
    for x in xs:
        if args.kind == "l1":
            r = fourier.l1_scan(ds, args.N, x)
        elif args.kind == "large-sieve":
            r = fourier.large_sieve_scan(ds, args.N, args.D, x)
        elif args.kind == "hybrid":
            r = fourier.hybrid_scan(ds, args.N, args.D, args.B, x)
        else:
            lo, hi = (int(v) for v in args.interval.split(":"))
            r = fourier.large_spectra_count(ds, args.N, x, (lo, hi), args.lam)
        d = r.to_dict()
        rows.append({"x": x.spec(), "lhs": d["lhs"], "rhs": d["rhs"],
                     "ratio": d["ratio"], "satisfied": d["satisfied"]})
    return {"kind": args.kind, "allSatisfied": all(r["satisfied"] for r in rows), "rows": rows}


def cmd_kappa(ds, args):
    k = density.kappa(ds, args.q, args.t)
    dec = k.decomposition
    return {"kappa": str(k), "kappaDecimal": float(k.value),
            "obstruction": density.obstruction(ds, args.q, args.t).value,
            "u": dec.u, "v": dec.v, "h": dec.h, "L": dec.L, "count": k.term_count}


def cmd_verify(ds, args):
    rep = density.verify_dirichlet(ds, args.q, args.t, _range(args.Ns), args.workers)
    return rep.to_dict()


def cmd_expsum(ds, args):
    th = _theta(args, ds, args.N)
    v = sieve.lambda_exp_sum(ds, args.N, th, args.workers)
    return {"value": _cx(v), "magnitude": abs(v),
            "normalized": abs(v) / ds.size**args.N if ds.size else 0.0}


def cmd_arcs(ds, args):
    pts = circle.arc_decomposition(ds, args.N, args.D0)
    rows = [{"a": p.a, "ell": p.ell, "d": p.d, "eta": str(p.eta)} for p in pts]
    out: dict[str, Any] = {"rows": rows}
    if args.theta is not None:
        th = _theta(args, ds, args.N)
        out["exceptional"] = circle.exceptional_rational_scan(
            ds, args.N, th, cutoff=args.cutoff).to_dict()
    return out


def cmd_reduce(ds, args):
    th = _theta(args, ds, args.N)
    params = circle.ReductionParameters(D0=args.D0, cutoff=args.cutoff)
    return circle.compare_direct_vs_reduced(ds, args.N, th, params, args.workers).to_dict()


def cmd_weyl(ds, args):
    rows = []
    for N in _range(args.Ns):
        rows.append(recurrence.weyl_average(ds, args.m, N, _theta(args, ds, N),
                                            args.workers).to_dict())
    rows = [{"m": r["m"], "N": r["N"], "sampleCount": r["sampleCount"],
             "re": r["average"][0], "im": r["average"][1], "magnitude": r["magnitude"]}
            for r in rows]
    return {"rows": rows,
            "relativeDensity": recurrence.relative_density(ds, args.m, max(_range(args.Ns)),
                                                           args.workers)}


def cmd_search(ds, args):
    q = recurrence.WitnessQuery(parse_set(args.set), args.limit)
    w = recurrence.sarkozy_witness(ds, q)
    return {"found": w is not None, "witness": list(w) if w else None,
            "setSize": len(q.elements)}


def cmd_vdc(ds, args):
    thetas = [parse_theta(s, args.N + 1, ds.base) for s in args.thetas.split(",")]
    rep = recurrence.vdc_harness(ds, args.q_index, thetas, args.N, args.workers)
    d = rep.to_dict()
    d["rows"] = [{"theta": r["theta"], "harmonic": r["harmonic"], "re": r["average"][0],
                  "im": r["average"][1], "magnitude": r["magnitude"],
                  "belowThreshold": r["belowThreshold"]} for r in d["rows"]]
    return d


def cmd_primes(ds, args):
    rc = sieve.ResidueClass(args.q, args.t)
    return {"rows": [{"p": p} for p in sieve.iter_restricted_primes(ds, args.limit, rc)]}


COMMANDS = {
    "digits": cmd_digits, "fourier": cmd_fourier, "bounds": cmd_bounds,
    "kappa": cmd_kappa, "verify-dirichlet": cmd_verify, "expsum": cmd_expsum,
    "arcs": cmd_arcs, "reduce": cmd_reduce, "weyl": cmd_weyl, "search": cmd_search,
    "vdc": cmd_vdc, "primes": cmd_primes,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--base", type=int)
    common.add_argument("--exclude", default="")
    common.add_argument("--system", help="e.g. 'b=10;exclude=7'")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="rdprimes")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        return sp

    sp = add("digits")
    sp.add_argument("--epsilon", type=float, default=0.01)
    sp.add_argument("--N", type=int)

    sp = add("fourier")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--theta", default="0")

    sp = add("bounds")
    sp.add_argument("--kind", choices=("l1", "large-sieve", "hybrid", "spectra"), default="l1")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--theta", default="0", help="the shift x")
    sp.add_argument("--D", type=int, default=1)
    sp.add_argument("--B", type=float, default=1.0)
    sp.add_argument("--lam", type=float, default=2.0)
    sp.add_argument("--interval", default="0:100")
    sp.add_argument("--samples", type=int, default=0, help="random x drawn from --seed")

    sp = add("kappa")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = add("verify-dirichlet")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--Ns", default="4:7")

    sp = add("expsum")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--theta", default="0")

    sp = add("arcs")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--D0", type=int)
    sp.add_argument("--theta")
    sp.add_argument("--cutoff", type=float)

    sp = add("reduce")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--theta", default="0")
    sp.add_argument("--D0", type=int)
    sp.add_argument("--cutoff", type=float)

    sp = add("weyl")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--Ns", default="4:7")
    sp.add_argument("--theta", default="golden")

    sp = add("search")
    sp.add_argument("--set", required=True)
    sp.add_argument("--limit", type=int, required=True)

    sp = add("vdc")
    sp.add_argument("--q-index", type=int, required=True)
    sp.add_argument("--thetas", default="golden,sqrt2")
    sp.add_argument("--N", type=int, required=True)

    sp = add("primes")
    sp.add_argument("--limit", type=int, required=True)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--t", type=int, default=0)
    return p


def _system(args) -> DigitSystem:
    if args.system:
        return parse_system(args.system)
    if args.base is None:
        raise UsageError("either --system or --base is required")
    return new_digit_system(args.base, parse_digit_list(args.exclude))


_SKIP = {"base", "exclude", "system", "fmt", "workers", "seed", "command", "theta"}


def _config(ds: DigitSystem, args) -> RunConfig:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _SKIP}
    return RunConfig(ds.spec(), args.command, params, getattr(args, "theta", None),
                     args.fmt, args.workers, args.seed)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _emit(cfg: RunConfig, result: dict, out) -> None:
    if cfg.fmt == "json":
        json.dump(_json_safe({"config": asdict(cfg), "result": result}), out, indent=2)
        out.write("\n")
        return
    rows = result.get("rows")
    if rows is None:
        rows = [{k: json.dumps(_json_safe(v)) if isinstance(v, (dict, list)) else v
                 for k, v in result.items()}]
    cols = list(rows[0].keys()) if rows else ["empty"]
    w = csv.DictWriter(out, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        require(args.workers >= 1, "--workers must be >= 1")
        ds = _system(args)
        cfg = _config(ds, args)
        result = COMMANDS[args.command](ds, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(cfg, result, out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
