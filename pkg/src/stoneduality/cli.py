"""Command-line driver.

Exit status: 0 when every verification passed, 1 on a verification failure or
refusal, 2 on malformed input or usage.
"""

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .algebra import PowerSetAlgebra
from .compact import CofiniteElement, CofinitePoint, Refusal, compactify, domination, is_in, stone_cech_extend
from .duality import dual_check, rep_homeo
from .errors import InputError, NoFPP, SizeGuard, StoneError
from .filters import all_ultrafilters, generated_filter
from .hom_z2 import all_homs, hom_listing
from .ring import spectrum, to_ring
from .topology import check_axioms, stone_space

GRAMMAR = (
    "stoneduality [--json] [--seed-order SEED] [--timing] <command>; commands: validate FILE | ultra FILE"
    " | homs FILE | spec FILE | stone FILE | dual check FILE | space check FILE"
    " | filter gen FILE ELEMENT... | compactify FILE | dominate FILE_Z FILE_Y"
    " | onepoint member ELEMENT POINT | extend ALGEBRA MAP SPACE"
)


@dataclass
class RunReport:
    command: str
    input_digest: str
    outcome: str = "pass"  # pass, fail, refusal
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def envelope(self, timing=False):
        data = {"input_digest": self.input_digest, "lines": list(self.lines)}
        data.update(self.data)
        if timing:
            data["wall_time"] = round(self.wall_time, 6)
        return {"command": self.command, "status": self.outcome, "data": data}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(paths, extra=()):
    h = hashlib.sha256()
    for p in paths:
        try:
            h.update(Path(p).read_bytes())
        except OSError:
            h.update(str(p).encode())
        h.update(b"\0")
    for e in extra:
        h.update(str(e).encode() + b"\0")
    return h.hexdigest()[:16]


def _ordered(lines, seed):
    lines = list(lines)
    if seed is not None:
        random.Random(seed).shuffle(lines)
    return lines


def _bool(v):
    return "true" if v else "false"


def _certificate_lines(cert):
    out = [f"certificate: {cert.statement}"]
    out.append(f"  direction: {cert.direction}")
    out.append(f"  source: {cert.source}")
    out.append(f"  target: {cert.target}")
    for k, v in cert.checks.items():
        out.append(f"  check {k}: {'ok' if v else 'FAILED'}")
    for a, b in cert.mapping:
        out.append(f"  {a} -> {b}")
    return out


# ---------------------------------------------------------------------------
# commands; each fills a RunReport


def cmd_validate(args, rep):
    B = io.read_algebra(args.file)
    B.check_axioms()
    rep.lines = [f"valid: {B.describe()}", f"atoms: {B.natoms}"]


def cmd_ultra(args, rep):
    B = io.read_algebra(args.file)
    rep.lines = _ordered([F.format() for F in all_ultrafilters(B)], args.seed_order)


def cmd_homs(args, rep):
    B = io.read_algebra(args.file)
    rep.lines = _ordered([hom_listing(h) for h in all_homs(B)], args.seed_order)


def cmd_spec(args, rep):
    B = io.read_algebra(args.file)
    rep.lines = _ordered(spectrum(to_ring(B)).listing(), args.seed_order)


def cmd_stone(args, rep):
    B = io.read_algebra(args.file)
    S = stone_space(B)
    rep.lines = S.space.listing()
    rep.data["points"] = _ordered(S.space.points, args.seed_order)


def cmd_dual_check(args, rep):
    B = io.read_algebra(args.file)
    certs = dual_check(B)
    for c in certs:
        rep.lines += _certificate_lines(c)
    rep.data["certificates"] = [c.to_dict() for c in certs]


def cmd_space_check(args, rep):
    X = io.read_space(args.file)
    ax = check_axioms(X)
    rep.lines = [f"{k}: {_bool(v)}" for k, v in vars(ax).items()]
    rep.data["axioms"] = dict(vars(ax))
    if ax.stone:
        cert = rep_homeo(X)
        rep.lines += _certificate_lines(cert)
        rep.data["certificates"] = [cert.to_dict()]


def cmd_filter_gen(args, rep):
    B = io.read_algebra(args.file)
    elems = [B.parse_element(e) for e in args.elements]
    try:
        F = generated_filter(B, elems)
    except NoFPP:
        rep.outcome = "refusal"
        rep.lines = ["no filter: the elements lack the finite product property"]
        return
    rep.lines = [F.format()]


def cmd_compactify(args, rep):
    A = io.read_subalgebra(args.file)
    Y, emb = compactify(A)
    rep.lines = Y.listing() + [f"embed {x} -> {p}" for x, p in emb.pairs()]


def cmd_dominate(args, rep):
    BZ = io.read_subalgebra(args.file_z)
    BY = io.read_subalgebra(args.file_y)
    f = domination(BZ, BY)
    if isinstance(f, Refusal):
        rep.outcome = "refusal"
        rep.lines = [f"refusal: {f}"]
        rep.data["witness"] = f.witness
        return
    rep.lines = _ordered([f"{a} -> {b}" for a, b in f.pairs()], args.seed_order)


def cmd_onepoint_member(args, rep):
    e = CofiniteElement.parse(args.element)
    p = CofinitePoint.parse(args.point)
    rep.lines = [_bool(is_in(p, e))]


def cmd_extend(args, rep):
    B = io.read_algebra(args.algebra)
    if not isinstance(B, PowerSetAlgebra):
        raise InputError("extend needs a 'powerset <n>' algebra file for the discrete domain")
    K = io.read_space(args.space)
    f = io.read_map(args.map, B.natoms, K.npoints)
    ext = stone_cech_extend(f, K)
    rep.lines = _ordered([f"{a} -> {b}" for a, b in ext.pairs()], args.seed_order)


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
    common.add_argument(
        "--seed-order", type=int, default=argparse.SUPPRESS, metavar="SEED", help="shuffle listings deterministically"
    )
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="report wall time")

    p = _Parser(prog="stoneduality", parents=[common], description="Finite Stone duality toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def leaf(parent, name, fn, *positionals):
        q = parent.add_parser(name, parents=[common])
        for pos in positionals:
            if pos.endswith("..."):
                q.add_argument(pos[:-3], nargs="+")
            else:
                q.add_argument(pos)
        q.set_defaults(fn=fn)
        return q

    leaf(sub, "validate", cmd_validate, "file")
    leaf(sub, "ultra", cmd_ultra, "file")
    leaf(sub, "homs", cmd_homs, "file")
    leaf(sub, "spec", cmd_spec, "file")
    leaf(sub, "stone", cmd_stone, "file")
    dual = sub.add_parser("dual").add_subparsers(dest="sub", parser_class=_Parser)
    leaf(dual, "check", cmd_dual_check, "file")
    space = sub.add_parser("space").add_subparsers(dest="sub", parser_class=_Parser)
    leaf(space, "check", cmd_space_check, "file")
    filt = sub.add_parser("filter").add_subparsers(dest="sub", parser_class=_Parser)
    leaf(filt, "gen", cmd_filter_gen, "file", "elements...")
    leaf(sub, "compactify", cmd_compactify, "file")
    leaf(sub, "dominate", cmd_dominate, "file_z", "file_y")
    one = sub.add_parser("onepoint").add_subparsers(dest="sub", parser_class=_Parser)
    leaf(one, "member", cmd_onepoint_member, "element", "point")
    leaf(sub, "extend", cmd_extend, "algebra", "map", "space")
    return p


_FILE_ARGS = ("file", "file_z", "file_y", "algebra", "map", "space")


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "fn"):
            raise UsageError("missing command")
        for key, default in (("json", False), ("seed_order", None), ("timing", False)):
            if not hasattr(args, key):
                setattr(args, key, default)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        print(f"usage: {GRAMMAR}", file=err)
        return 2

    name = " ".join(a for a in (args.command, getattr(args, "sub", None)) if a)
    paths = [getattr(args, k) for k in _FILE_ARGS if isinstance(getattr(args, k, None), str)]
    extras = list(getattr(args, "elements", []) or []) + [getattr(args, k, "") for k in ("element", "point")]
    rep = RunReport(name, _digest(paths, extras))
    start = time.perf_counter()
    code = 0
    try:
        args.fn(args, rep)
        code = 0 if rep.outcome == "pass" else 1
    except (InputError, SizeGuard) as exc:
        rep.outcome = "error"
        rep.lines = [f"{type(exc).__name__}: {exc}"]
        code = 2
    except StoneError as exc:
        rep.outcome = "fail"
        rep.lines = [f"{type(exc).__name__}: {exc}"]
        code = 1
    rep.wall_time = time.perf_counter() - start

    if args.json:
        print(json.dumps(rep.envelope(args.timing), indent=2, sort_keys=False), file=out)
    else:
        stream = out if code == 0 or rep.outcome == "refusal" else err
        for line in rep.lines:
            print(line, file=stream)
        if args.timing:
            print(f"wall time: {rep.wall_time:.6f} s", file=err)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
