"""Command line entry point.

Exit status is 0 when a report has no violations, 2 when it has some and 1
on usage or configuration errors.  Every flag can also be given as an
environment variable ``CURVEKIT_<FLAG>`` (upper case, dashes as
underscores); explicit flags win.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .construction import Constants, TwistSchedule, generate
from .errors import CurvekitError, ScheduleInvalid
from .mapping_classes import word_to_json
from .report import Report, merge
from .surface import NormalCurve, base_chart, curve_to_json
from .transport import audit_mode

ENV_PREFIX = "CURVEKIT_"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    surface: str = "S0,5"
    n: int = 10
    a: Fraction = Fraction(3)
    e1: Optional[int] = None
    powers: Optional[List[int]] = None
    B0: int = 3
    G: int = 100
    E: Optional[int] = None
    radius: int = 40
    depth: Optional[int] = None
    output: Optional[str] = None
    format: str = "json"
    workers: int = 1
    audit: bool = False

    @property
    def constants(self) -> Constants:
        return Constants(B0=self.B0, G=self.G, E=self.E)

    def schedule(self) -> TwistSchedule:
        floor = self.constants.floor
        if self.powers:
            return TwistSchedule.from_list(self.powers, floor)
        e1 = floor + 1 if self.e1 is None else self.e1
        return TwistSchedule.geometric(self.a, e1, floor)

    def validate(self) -> None:
        if self.n < 5:
            raise UsageError(f"n must be at least 5 (got {self.n})")
        if self.radius < 0:
            raise UsageError("radius must be non-negative")
        if self.depth is not None and self.depth > self.n:
            raise UsageError("depth cannot exceed n")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.surface not in ("S0,5", "cover-g2"):
            raise UsageError(f"unknown surface {self.surface!r}")

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "n": self.n,
            "schedule": self.schedule().to_json(),
            "constants": self.constants.to_json(),
            "radius": self.radius,
            "depth": self.depth,
            "format": self.format,
        }


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--surface", choices=["S0,5", "cover-g2"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=Fraction, help="growth factor of the geometric schedule")
    p.add_argument("--e1", type=int, help="first twist power (default E + 1)")
    p.add_argument("--powers", help="explicit comma separated twist powers")
    p.add_argument("--B0", type=int)
    p.add_argument("--G", type=int)
    p.add_argument("--E", type=int, help="override the derived floor")
    p.add_argument("--radius", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--output", help="write here instead of standard output")
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--workers", type=int)
    p.add_argument("--audit", action="store_true", default=None,
                   help="evaluate twist powers one step at a time")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvekit", description="Curves on the five-punctured sphere and its genus two cover.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("generate", help="the curve sequence and its words")
    _common(g)

    c = sub.add_parser("coeff", help="one subsurface coefficient")
    _common(c)
    c.add_argument("--kind", choices=["annular", "nonannular"], default="annular")
    c.add_argument("--core", required=True, help="g:<i> or comma separated weights")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)

    v = sub.add_parser("verify", help="run one verification")
    _common(v)
    v.add_argument("what", choices=["prop31", "bounded", "behrstock", "covers"])
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--pairs", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--d", type=int, default=None, help="lifted overlap gap")

    e = sub.add_parser("estimate", help="thresholded coefficient sums")
    _common(e)
    e.add_argument("what", choices=["pants"])
    e.add_argument("--A", type=int, default=3)
    e.add_argument("--target", type=int, default=None, help="index N of the second marking")

    r = sub.add_parser("report", help="every verification in one document")
    _common(r)
    r.add_argument("what", choices=["all"])
    r.add_argument("--samples", type=int, default=1000)
    r.add_argument("--pairs", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    return p


_CASTS = {"n": int, "B0": int, "G": int, "E": int, "radius": int, "depth": int, "workers": int,
          "e1": int, "a": Fraction}


def config_from(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    cfg = RunConfig()
    for name in ("surface", "n", "a", "e1", "powers", "B0", "G", "E", "radius", "depth",
                 "output", "format", "workers", "audit"):
        val = getattr(args, name, None)
        if val is None:
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                if name == "audit":
                    val = raw.strip().lower() in ("1", "true", "yes", "on")
                else:
                    val = _CASTS.get(name, str)(raw)
            except ValueError as exc:
                raise UsageError(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}") from exc
        if name == "powers" and isinstance(val, str):
            try:
                val = [int(x) for x in val.split(",") if x.strip()]
            except ValueError as exc:
                raise UsageError(f"bad powers list {val!r}") from exc
        setattr(cfg, name, val)
    cfg.validate()
    return cfg


def _curve_arg(text: str, bundle) -> NormalCurve:
    if text.startswith("g:"):
        i = int(text[2:])
        if not 0 <= i <= bundle.n:
            raise UsageError(f"sequence index {i} out of range")
        return bundle.curves[i]
    try:
        w = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse curve {text!r}") from exc
    try:
        return NormalCurve(base_chart(), w)
    except CurvekitError as exc:
        raise UsageError(f"not a curve: {exc}") from exc


def _bundle(cfg: RunConfig):
    try:
        return generate(cfg.n, cfg.schedule(), cfg.constants)
    except ScheduleInvalid as exc:
        raise UsageError(str(exc)) from exc


def run_generate(cfg: RunConfig, args) -> Report:
    b = _bundle(cfg)
    rep = Report("generate", meta=cfg.to_json())
    rep.tables["curves"] = [{"i": i, "curve": curve_to_json(c)} for i, c in enumerate(b.curves)]
    rep.tables["words"] = [{"i": i + 1, "word": word_to_json(w)} for i, w in enumerate(b.words)]
    rep.tables["marking"] = [{"base": [curve_to_json(c) for c in b.marking.base]}]
    if cfg.surface == "cover-g2":
        from .covers import build_tower, lift_sequence

        _, F = build_tower(2)
        rep.tables["lifted"] = [{"i": i, "curve": curve_to_json(c)}
                                for i, c in enumerate(lift_sequence(F, b.powers, b.n))]
    return rep


def run_coeff(cfg: RunConfig, args) -> Report:
    from .projections import Subsurface, subsurface_coefficient

    b = _bundle(cfg)
    core, left, right = (_curve_arg(x, b) for x in (args.core, args.left, args.right))
    rec = subsurface_coefficient(Subsurface(args.kind, core), left, right)
    from .verification import intersection_bound_holds

    rep = Report("coeff", meta=cfg.to_json())
    rep.tables["coefficient"] = [{"kind": args.kind, "value": rec.value, "slack": rec.slack,
                                  "core": args.core, "left": args.left, "right": args.right}]
    if not intersection_bound_holds(rec):
        rep.violate("claim:intersection-bound", value=rec.value)
    return rep


def run_verify(cfg: RunConfig, args) -> Report:
    from . import verification as V

    if args.what == "behrstock":
        rep = V.verify_behrstock(args.samples, args.seed)
    else:
        b = _bundle(cfg)
        if args.what == "prop31":
            if cfg.n < 8:
                raise UsageError("prop31 needs n >= 8")
            rep = V.verify_prop31(b, cfg.workers)
        elif args.what == "bounded":
            depth = cfg.depth if cfg.depth is not None else cfg.n - 2
            if depth + 2 > cfg.n:
                raise UsageError("bounded needs depth + 2 <= n")
            rep = V.verify_bounded_combinatorics(b, depth, cfg.radius, workers=cfg.workers)
        else:
            rep = V.verify_covers(b, args.pairs, args.seed, args.d)
    rep.meta["config"] = cfg.to_json()
    return rep


def run_estimate(cfg: RunConfig, args) -> Report:
    from .pants import estimate, sequence_marking

    b = _bundle(cfg)
    N = args.target if args.target is not None else cfg.n
    if not 1 <= N <= cfg.n:
        raise UsageError("target index out of range")
    if args.A <= 2:
        raise UsageError("A must exceed 2")
    est = estimate(b.marking, sequence_marking(b, N), args.A, cfg.radius,
                   witnesses=b.curves[2:max(2, N - 1)], G=cfg.G)
    rep = Report("estimate", meta={**cfg.to_json(), "A": args.A, "target": N})
    rep.tables["contributing"] = [{"kind": r.subsurface.kind, "value": r.value,
                                   "boundary": None if r.subsurface.boundary is None else list(r.subsurface.boundary.weights)}
                                  for r in est.contributing]
    rep.meta["lower_bound_sum"] = est.lower_bound_sum
    rep.meta["family_size"] = est.family_size
    return rep


def run_report(cfg: RunConfig, args) -> Report:
    from . import verification as V

    b = _bundle(cfg)
    if cfg.n < 8:
        raise UsageError("report all needs n >= 8")
    depth = cfg.depth if cfg.depth is not None else cfg.n - 2
    parts = {
        "prop31": V.verify_prop31(b, cfg.workers),
        "bounded": V.verify_bounded_combinatorics(b, depth, cfg.radius, workers=cfg.workers),
        "divergence": V.divergence_certificate(b),
        "behrstock": V.verify_behrstock(args.samples, args.seed),
        "covers": V.verify_covers(b, args.pairs, args.seed),
    }
    return merge("all", parts, {"config": cfg.to_json()})


RUNNERS = {
    "generate": run_generate,
    "coeff": run_coeff,
    "verify": run_verify,
    "estimate": run_estimate,
    "report": run_report,
}


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.dumps()
    chunks = []
    for name in sorted(rep.tables):
        chunks.append(f"# {name}\n" + rep.table_csv(name))
    chunks.append("# violations\n" + Report("v", tables={"v": rep.violations}).table_csv("v"))
    return "\n".join(chunks)


def main(argv: Optional[Sequence[str]] = None, environ=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        cfg = config_from(args, environ)
        ctx = audit_mode(True) if cfg.audit else contextlib.nullcontext()
        with ctx:
            rep = RUNNERS[args.command](cfg, args)
    except UsageError as exc:
        print(f"curvekit: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    text = render(rep, cfg.format)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.ok else 2
