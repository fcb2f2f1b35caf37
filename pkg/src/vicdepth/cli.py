"""Command line front end.

    vicdepth branch --plus 1 --minus 1 --rank 3 --pieri
    vicdepth dim --plus 2 1 --rank 4
    vicdepth depth --rep sum_zero_p2_3.json
    vicdepth bounds --n 4 --ell 6
    vicdepth group-table 3 2 SL
    vicdepth vic-run --module std.json --ops growth,filtration

Every report embeds the configuration and the package version; with the
same seed and inputs the JSON output is byte-identical.  Exit codes: 0 on
success, 2 for a violated precondition or usage error, 3 for inconsistent
input data, 4 when a resource cap would be exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from . import __version__
from .errors import CapExceededError, PreconditionError, VicDepthError

VIC_OPS = ("triple", "shift", "phi0", "phi1", "phi2", "stabilization", "injectivity", "generation", "filtration",
           "growth", "length", "stable-depth", "twist", "noetherian")


@dataclass
class Config:
    group_cap: int = 10**7
    cyclotomic_cap: int = 5040
    seed: int = 0
    samples: int = 100
    window: tuple = (3, 7)

    def __post_init__(self):
        if self.group_cap < 1 or self.cyclotomic_cap < 1 or self.samples < 1:
            raise PreconditionError("caps and sample counts must be positive")
        lo, hi = self.window
        if lo < 1 or hi < lo:
            raise PreconditionError(f"invalid window {self.window}")

    def to_json(self):
        out = asdict(self)
        out["window"] = list(self.window)
        return out


def report(command: str, config: Config, result) -> dict:
    return {"command": command, "version": __version__, "config": config.to_json(), "result": result}


def dumps(rep: dict) -> str:
    return json.dumps(rep, sort_keys=True, ensure_ascii=False, indent=2)


def _data_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    bundled = resources.files("vicdepth") / "data" / name
    if bundled.is_file():
        return Path(str(bundled))
    raise PreconditionError(f"no such file or bundled data: {name}")


# ---------------------------------------------------------------------------
# commands


def cmd_branch(args, config: Config):
    from .glweights import AlgebraicLabel, lr_restrict, pieri_restrict, weyl_dimension

    label = AlgebraicLabel.of(args.plus, args.minus, args.rank)
    dim = weyl_dimension(label)
    if args.lr is not None:
        terms = lr_restrict(label, args.lr)
        rows = [{"left": l.to_json(), "right": r.to_json(), "multiplicity": c,
                 "dimension": weyl_dimension(l) * weyl_dimension(r) * c} for l, r, c in terms]
        return {"label": label.to_json(), "dimension": dim, "mode": f"lr {args.lr}", "branches": rows,
                "total": sum(r["dimension"] for r in rows)}
    branches = pieri_restrict(label)
    rows = [dict(b.to_json(), dimension=weyl_dimension(b.label) * b.multiplicity) for b in branches]
    return {"label": label.to_json(), "dimension": dim, "mode": "pieri", "branches": rows,
            "total": sum(r["dimension"] for r in rows)}


def cmd_dim(args, config: Config):
    from .glweights import AlgebraicLabel, weyl_dimension

    label = AlgebraicLabel.of(args.plus, args.minus, args.rank)
    return {"label": label.to_json(), "dimension": weyl_dimension(label)}


def cmd_depth(args, config: Config):
    from .depth import IntegralRep, classify, gamma_u_check

    rep = IntegralRep.load(_data_path(args.rep))
    rep_report = classify(rep, cap=config.cyclotomic_cap)
    gamma = gamma_u_check(rep, rep_report.depth, samples=config.samples, seed=config.seed)
    return {"representation": rep.name, "depth": rep_report.to_json(), "gamma_u": gamma.to_json()}


def cmd_bounds(args, config: Config):
    from .groups.bounds import algebraic_forced, bmk_lower_bound, depth_dim_lower_bound, max_depth_for_dim

    n = args.n
    out = {"n": n}
    if args.dim is not None:
        forced = algebraic_forced(args.dim, n)
        out.update({"dimension": args.dim, "threshold": 2**n - 2, "algebraic_forced": forced,
                    "max_depth": max_depth_for_dim(args.dim, n) if n >= 3 else None})
        out["message"] = (f"below 2^n-2 = {2**n - 2}: algebraic forced" if forced
                          else f"not forced (threshold 2^n-2 = {2**n - 2}, needs n >= 5)")
    if args.ell is not None:
        b = depth_dim_lower_bound(args.ell, n)
        out["depth_bound"] = b.to_json()
    if args.p is not None:
        if args.k is None:
            raise PreconditionError("--p needs --k")
        out["pk_bound"] = {"p": args.p, "k": args.k, "bound": str(bmk_lower_bound(n, args.p, args.k))}
    if len(out) == 1:
        raise PreconditionError("bounds needs --dim, --ell or --p/--k")
    return out


def cmd_group(args, config: Config):
    from .groups.characters import character_table

    table = character_table(args.n, args.ell, args.variant, cap=config.group_cap)
    table.verify()
    out = table.to_json()
    out["degrees"] = sorted(table.degrees)
    return out


def _vic_op(module, op: str, config: Config):
    from . import vic

    if op == "triple":
        return [vic.validate_weak_triple(module, n).to_json() for n in module.window[1:-1]]
    if op == "shift":
        return vic.shift(module).summary()
    if op in ("phi0", "phi1", "phi2"):
        a = int(op[-1])
        return dict(vic.covariants_phi(module, a).to_json(), identity=_jsonable(vic.phi_shift_identity(module, a)))
    if op == "stabilization":
        return {str(a): vic.stabilization_degree(vic.covariants_phi(module, a)) for a in (0, 1)}
    if op == "injectivity":
        return vic.injectivity_degree(module)
    if op == "generation":
        return vic.shift_generation(module)
    if op == "filtration":
        return vic.algebraic_isotypic_filtration(module).to_json()
    if op == "growth":
        return vic.growth_classify(module).to_json()
    if op == "length":
        return vic.length_bound(module)
    if op == "stable-depth":
        return vic.stable_depth(module).to_json()
    if op == "twist":
        tw = vic.inverse_transpose_twist(module)
        return {"name": tw.name, "labels": {str(n): [[b.to_json(), m] for b, m in ls] for n, ls in tw.labels.items()}}
    if op == "noetherian":
        return vic.noetherian_witness(module, seed=config.seed)
    raise PreconditionError(f"unknown op {op}")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_vic(args, config: Config):
    from .vic import load_module

    module = load_module(_data_path(args.module))
    if args.window is not None:
        lo, hi = config.window
        module = module.truncate(max(lo, module.n_min), min(hi, module.n_max))
    return {"module": module.summary(), "ops": {op: _vic_op(module, op, config) for op in args.ops}}


# ---------------------------------------------------------------------------
# table output


def render(rep: dict) -> str:
    lines = [f"vicdepth {rep['version']}  {rep['command']}  seed={rep['config']['seed']}"]
    _render_value(rep["result"], lines, 0)
    return "\n".join(lines)


def _render_value(value, lines, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                _render_value(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                _render_value(v, lines, depth + 1)
            else:
                lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    else:
        lines.append(f"{pad}{value}")


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items) and len(v) <= 8


# ---------------------------------------------------------------------------
# argument parsing


def _ops(text: str):
    ops = [o.strip() for o in text.split(",") if o.strip()]
    bad = [o for o in ops if o not in VIC_OPS]
    if bad or not ops:
        raise argparse.ArgumentTypeError(f"unknown op(s) {bad}; choose from {', '.join(VIC_OPS)}")
    return ops


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--group-cap", type=int, default=10**7)
    common.add_argument("--cyclotomic-cap", type=int, default=5040)
    common.add_argument("--window", type=int, nargs=2, metavar=("N_MIN", "N_MAX"))

    parser = argparse.ArgumentParser(prog="vicdepth", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("branch", parents=[common], help="restrict an algebraic label")
    p.add_argument("--plus", type=int, nargs="*", default=[])
    p.add_argument("--minus", type=int, nargs="*", default=[])
    p.add_argument("--rank", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--pieri", action="store_true", help="restrict to GL_{n-1} x GL_1 (default)")
    mode.add_argument("--lr", type=int, metavar="M", help="restrict to GL_M x GL_{n-M}")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("dim", parents=[common], help="Weyl dimension of a label")
    p.add_argument("--plus", type=int, nargs="*", default=[])
    p.add_argument("--minus", type=int, nargs="*", default=[])
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("depth", parents=[common], help="depth of an integral representation file")
    p.add_argument("--rep", required=True, help="JSON file or bundled name")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("bounds", parents=[common], help="dimension and depth bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("group-table", parents=[common], help="character table of SL_n(Z/ℓ) and variants")
    p.add_argument("n", type=int)
    p.add_argument("ell", type=int)
    p.add_argument("variant", nargs="?", default="SL")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("vic-run", parents=[common], help="run analyses on a window module")
    p.add_argument("--module", required=True, help="JSON file or bundled name")
    p.add_argument("--ops", type=_ops, required=True, help="comma separated: " + ",".join(VIC_OPS))
    p.set_defaults(func=cmd_vic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config(args.group_cap, args.cyclotomic_cap, args.seed, args.samples,
                        tuple(args.window) if args.window else (3, 7))
        result = args.func(args, config)
    except VicDepthError as exc:
        kind = type(exc).__name__
        print(f"error ({kind}): {exc}", file=sys.stderr)
        if getattr(args, "json", False):
            print(dumps({"command": args.command, "version": __version__, "error": {"type": kind, "message": str(exc)}}))
        return exc.exit_code
    except MemoryError:
        err = CapExceededError("out of memory")
        print(f"error (CapExceededError): {err}", file=sys.stderr)
        return err.exit_code
    rep = report(args.command, config, result)
    print(dumps(rep) if args.json else render(rep))
    return 0


if __name__ == "__main__":
    sys.exit(main())
