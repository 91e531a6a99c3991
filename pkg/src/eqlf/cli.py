"""Command-line driver.

Exit codes: 0 ok / proven equal, 1 ill-formed or not proven, 2 parse or
input error, 3 fuel exhausted.  Results go to stdout, one per line;
diagnostics and traces go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from eqlf import metatheory, stdsigs
from eqlf.kernel import CheckConfig, FuelExhausted, Kernel, KernelError, Outcome
from eqlf.kernel.env import CTX, SIG
from eqlf.sigparse import ParseError, SurfaceDecl, parse_class, parse_object, parse_signature, show

OK, ILL_FORMED, BAD_INPUT, OUT_OF_FUEL = 0, 1, 2, 3
DEFAULT_FUEL = 10000


class InputError(Exception):
    pass


def trace_render(steps) -> str:
    return "".join(s.render() + "\n" for s in steps)


def resolve(ref: str) -> tuple[str, str]:
    """``(display name, text)`` for a path, a corpus id, or a bundled file name."""
    p = Path(ref)
    if p.is_file():
        return ref, p.read_text(encoding="utf-8")
    stem = p.name[: -len(".eqlf")] if p.name.endswith(".eqlf") else p.name
    if p.suffix == "" and stem in stdsigs.ids():
        return f"{stem}.eqlf", stdsigs.source(stem)
    if stem in stdsigs.bundled_files():
        return f"{stem}.eqlf", stdsigs.data_path(stem).read_text(encoding="utf-8")
    raise InputError(f"{ref}: no such file or bundled signature")


def _default_fuel() -> int:
    env = os.environ.get("EQLF_FUEL")
    if env is None:
        return DEFAULT_FUEL
    try:
        return int(env)
    except ValueError:
        raise InputError(f"EQLF_FUEL must be an integer, not {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-s", "--sig", action="append", default=[], metavar="FILE",
                        help="signature file or bundled name; repeat to concatenate")
    common.add_argument("-x", "--ctx", action="append", default=[], metavar="DECLS",
                        help='context declarations, e.g. "x : el nat. h : Eq(el nat; x; zero)."')
    common.add_argument("--fuel", type=int, default=None, help="rewrite steps per query (default 10000)")
    common.add_argument("--trace", action="store_true", help="log rewrite steps to stderr")
    common.add_argument("--no-eta", dest="eta", action="store_false", help="disable eta and expansion rules")

    ap = argparse.ArgumentParser(prog="eqlf", description="Equational logical framework kernel.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check signature files")
    p.add_argument("files", nargs="*", help="files checked as one concatenated signature")

    p = sub.add_parser("type", parents=[common], help="infer the class of objects")
    p.add_argument("-e", "--expr", action="append", default=[], required=True)

    p = sub.add_parser("eq", parents=[common], help="decide an equality at a class")
    p.add_argument("-e", "--expr", action="append", default=[], required=True)
    p.add_argument("-c", "--class", dest="cls", required=True)

    p = sub.add_parser("norm", parents=[common], help="normalize objects")
    p.add_argument("-e", "--expr", action="append", default=[], required=True)
    p.add_argument("--numerals", action="store_true", help="print succ-chains as numbers")

    sub.add_parser("corpus", help="list the bundled signatures")

    p = sub.add_parser("meta", help="run the metatheory property suites")
    p.add_argument("--sig-id", action="append", choices=stdsigs.ids(), help="default: all")
    p.add_argument("--seeds", default="0-9", help="e.g. 0-9 or 3 or 1,4")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--max-depth", type=int, default=4)
    return ap


def _seeds(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        out.extend(range(int(lo), int(hi or lo) + 1))
    return out


def _signature(files: Sequence[str]) -> list[SurfaceDecl]:
    decls: list[SurfaceDecl] = []
    for f in files:
        name, text = resolve(f)
        decls.extend(parse_signature(text, file=name))
    return decls


def _where(decls, err: KernelError) -> str:
    for d in decls:
        if d.name == err.position:
            s = d.span
            return f"{s.file}:{s.start_line}:{s.start_col}: "
    return ""


class Session:
    def __init__(self, args):
        fuel = args.fuel if args.fuel is not None else _default_fuel()
        if fuel < 1:
            raise InputError("fuel must be at least 1")
        self.steps: list = []
        self.trace = args.trace
        self.cfg = CheckConfig(fuel=fuel, eta_enabled=args.eta,
                               trace_sink=self.steps.append if args.trace else None)
        self.sig = _signature(args.sig)
        self.ctx: list[SurfaceDecl] = []
        for i, text in enumerate(args.ctx):
            self.ctx.extend(parse_signature(text, file=f"<ctx {i + 1}>"))

    def kernel(self) -> Kernel:
        k = Kernel(cfg=self.cfg)
        for role, decls in ((SIG, self.sig), (CTX, self.ctx)):
            for d in decls:
                try:
                    k = k.declare(d.name, d.cls, role)
                except KernelError as e:
                    raise _Located(_where(decls, e), e) from e
        return k

    def flush_trace(self):
        if self.trace:
            sys.stderr.write(trace_render(self.steps))
        self.steps.clear()


class _Located(Exception):
    def __init__(self, where: str, err: KernelError):
        self.where = where
        self.err = err


def _parse_error(e: ParseError) -> str:
    s = e.span
    exp = f" (expected {', '.join(sorted(e.expected))})" if e.expected else ""
    return f"{s.file}:{s.start_line}:{s.start_col}: parse error: {e.message}{exp}"


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else BAD_INPUT
    out = sys.stdout
    try:
        if args.command == "corpus":
            for e in stdsigs.corpus():
                out.write(f"{e.id}\t{'+'.join(e.files)}\treduction={e.reductions}"
                          f"\texpansion={e.expansions}\t{e.description}\n")
            return OK
        if args.command == "meta":
            return _meta(args, out)
        if args.command == "check":
            args.sig = list(args.sig) + list(args.files)
            if not args.sig:
                raise InputError("nothing to check")
        ses = Session(args)
        k = ses.kernel()
        if args.command == "check":
            for w in k.env.warnings:
                sys.stderr.write(f"warning: {w}\n")
            out.write(f"ok {len(ses.sig)} declarations, {len(k.env.rules)} rules\n")
            return OK
        if args.command == "type":
            for text in args.expr:
                cls = k.infer(parse_object(text, "<expr>"))
                out.write(show(cls) + "\n")
            return OK
        if args.command == "norm":
            for text in args.expr:
                nf = k.normalize(parse_object(text, "<expr>"))
                ses.flush_trace()
                out.write(show(nf, numerals=args.numerals) + "\n")
            return OK
        if args.command == "eq":
            if len(args.expr) != 2:
                raise InputError("eq needs exactly two -e expressions")
            a, b = (parse_object(t, "<expr>") for t in args.expr)
            cls = parse_class(args.cls, "<class>")
            k.check_class(cls)
            for o in (a, b):
                k.check(o, cls)
            v = k.equal_objects(a, b, cls)
            ses.flush_trace()
            out.write(str(v) + "\n")
            return {Outcome.PROVEN_EQUAL: OK, Outcome.NOT_PROVEN: ILL_FORMED}.get(v.outcome, OUT_OF_FUEL)
        raise InputError(f"unknown command {args.command}")
    except ParseError as e:
        sys.stderr.write(_parse_error(e) + "\n")
        return BAD_INPUT
    except (InputError, OSError, UnicodeDecodeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return BAD_INPUT
    except _Located as e:
        sys.stderr.write(f"{e.where}error: {e.err}\n")
        return OUT_OF_FUEL if isinstance(e.err, FuelExhausted) else ILL_FORMED
    except FuelExhausted as e:
        sys.stderr.write(f"error: {e}\n")
        return OUT_OF_FUEL
    except KernelError as e:
        sys.stderr.write(f"error: {e}\n")
        return ILL_FORMED


def _meta(args, out) -> int:
    budget = metatheory.EnumBudget(args.max_size, args.max_depth, args.samples)
    sig_ids = args.sig_id or stdsigs.ids()
    total = metatheory.SuiteReport()
    start = time.perf_counter()
    for sid in sig_ids:
        rep = metatheory.SuiteReport()
        for seed in _seeds(args.seeds):
            rep.merge(metatheory.run_suite(sid, seed, budget))
        for line in rep.lines():
            out.write(f"{sid} {line}\n")
        total.merge(rep)
    for line in total.lines():
        out.write(f"total {line}\n")
    out.write(f"samples={total.samples} checks={total.checks} seconds={time.perf_counter() - start:.1f}\n")
    too_many = total.inconclusive > 0.01 * max(1, total.checks)
    return ILL_FORMED if total.failures or too_many else OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
