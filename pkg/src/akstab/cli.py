"""Command-line interface.

    akstab homs --a "[2,3]" --b "[1,2]" --N 2
    akstab hn --condition cond.json --object '{"ext": [[2,3], {"stable": [1,2], "shift": 1}]}'
    akstab loop --condition cond.json --generator 2 --svg loop.svg

Every JSON argument is either a path or an inline document.  Results go to
stdout wrapped in a small version header; domain errors go to stderr as
{"error": <code>, "message": ...} with exit status 1.  Usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from . import algebra as alg
from . import braids, intervals, plotting, walls
from . import objects as ob
from . import stability as st
from .errors import AkstabError, InvalidInput
from .exact import GaussianRational

DEFAULT_SEED = 20240611


def seed_from_env() -> int:
    raw = os.environ.get("AKSTAB_SEED", "")
    try:
        return int(raw) if raw.strip() else DEFAULT_SEED
    except ValueError:
        raise InvalidInput(f"AKSTAB_SEED must be an integer, got {raw!r}")


# -- input -------------------------------------------------------------------------


def load_json(arg: str) -> Any:
    """Parse inline JSON, or read it from a file when arg names one."""
    text = arg.strip()
    if text[:1] in "{[\"" or text in ("zero", "null") or text.lstrip("-").isdigit():
        src = text
    else:
        p = Path(arg)
        if not p.is_file():
            raise InvalidInput(f"no such file: {arg}")
        src = p.read_text()
    try:
        return json.loads(src) if src != "zero" else "zero"
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON in {arg[:40]!r}: {exc.msg}") from None


def _charges(obj) -> List[GaussianRational]:
    if isinstance(obj, dict) and "Z" in obj:
        obj = obj["Z"]
    if not isinstance(obj, list):
        raise InvalidInput("a charge vector is a list of {re, im} entries")
    return [GaussianRational.from_json(z) for z in obj]


def _condition(args) -> st.StabilityCondition:
    raw = load_json(args.condition)
    if not isinstance(raw, dict) or not {"k", "N", "Z"} <= set(raw):
        raise InvalidInput("condition JSON needs k, N and Z")
    S = st.condition_from_json(raw)
    for name in ("k", "N"):
        want = getattr(args, name, None)
        if want is not None and want != getattr(S, name):
            raise InvalidInput(f"--{name} {want} disagrees with the condition ({getattr(S, name)})")
    return S


def _object(arg: str) -> ob.ObjExpr:
    return ob.from_json(load_json(arg))


# -- commands ----------------------------------------------------------------------


class Result:
    """What a command hands back: a JSON payload plus optional artifacts."""

    def __init__(self, payload: Any, svg: Optional[str] = None, figures: Optional[Callable[[Path], List[str]]] = None):
        self.payload = payload
        self.svg = svg
        self.figures = figures


def cmd_algebra(args) -> Result:
    A = alg.build_algebra(args.k, args.N)
    out = alg.to_json(A)
    out["associative"] = alg.is_associative(A)
    out["duality"] = alg.check_duality_pairing(A)
    return Result(out)


def cmd_homs(args) -> Result:
    a, b = _object(args.a), _object(args.b)
    return Result(intervals.dims_to_json(ob.homs(a, b, args.N)))


def cmd_ext(args) -> Result:
    if args.object:
        e = ob.normalize(_object(args.object), args.N)
    else:
        if not (args.a and args.b):
            raise InvalidInput("ext needs --object, or both --a and --b")
        e = ob.ext(_object(args.a), _object(args.b), args.N)
    return Result({"object": ob.to_json(e), "text": str(e)})


def cmd_hn(args) -> Result:
    S = _condition(args)
    E = _object(args.object)
    filt = st.hn(S, E)
    out = st.hn_to_json(filt)
    out["object"] = ob.to_json(E)
    if args.heart is not None:
        raw = load_json(args.heart)
        t = st.PhaseLift(raw, GaussianRational(1)) if isinstance(raw, int) else st.PhaseLift.from_json(raw)
        out["heart"] = {"t": t.to_json(), "member": all(t < p <= t.shifted(1) for p in filt.phases)}

    def figs(d: Path) -> List[str]:
        return [plotting.plot_hn(filt, str(d / "hn.png")), plotting.plot_condition(S, str(d / "condition.png"))]

    return Result(out, plotting.condition_svg(S, "condition"), figs)


def cmd_axioms(args) -> Result:
    S = _condition(args)
    if args.sample:
        raw = load_json(args.sample)
        if not isinstance(raw, list):
            raise InvalidInput("a sample is a list of object expressions")
        sample = [ob.from_json(x) for x in raw]
    else:
        sample = st.expressions(S, args.leaves)
    rep = st.check_axioms(S, sample)
    rep["sample_size"] = len(sample)
    return Result(rep, plotting.condition_svg(S, "condition"))


def cmd_walls(args) -> Result:
    S = _condition(args)
    Z1 = _charges(load_json(args.target))
    events = walls.walls_on_segment(S, Z1)
    out = {"events": [e.to_json() for e in events], "count": len(events)}
    if args.pedantic:
        out["simple"] = walls.simple_report(S, True)
    return Result(out, plotting.walls_svg(S, events, Z1))


def cmd_cross(args) -> Result:
    S = _condition(args)
    Z1 = _charges(load_json(args.target))
    end, events = walls.follow(S, Z1)
    out = {
        "events": [e.to_json() for e in events],
        "condition": st.condition_to_json(end),
        "simple": walls.simple_report(end, args.pedantic),
    }

    def figs(d: Path) -> List[str]:
        return [
            plotting.plot_condition(S, str(d / "start.png"), "start"),
            plotting.plot_condition(end, str(d / "end.png"), "end"),
        ]

    return Result(out, plotting.walls_svg(S, events, Z1), figs)


def cmd_loop(args) -> Result:
    S = _condition(args)
    if args.generator is not None:
        end, report, events, frames = braids.generator_monodromy(S, args.generator, args.sides, args.turns)
        report["condition"] = st.condition_to_json(end)
        report["simple"] = walls.simple_report(end, args.pedantic)
        return Result(report, plotting.loop_svg([S] + frames, events), _loop_figs([S] + frames))
    if not args.loop:
        raise InvalidInput("loop needs --loop or --generator")
    raw = load_json(args.loop)
    path = raw.get("path") if isinstance(raw, dict) else raw
    if not isinstance(path, list) or not path:
        raise InvalidInput("a charge loop is a nonempty list of charge vectors")
    path = [tuple(_charges(Z)) for Z in path]
    out = braids.monodromy_compare(S, path, certify=not args.no_certify)
    frames = [S]
    cur = S
    for Z in path + [tuple(S.Z)]:
        cur = walls.follow(cur, Z)[0]
        frames.append(cur)
    if args.pedantic:
        out["simple"] = walls.simple_report(cur, True)
    return Result(out, plotting.loop_svg(frames), _loop_figs(frames))


def _loop_figs(frames):
    def figs(d: Path) -> List[str]:
        return [plotting.plot_loop(frames, str(d / "loop.png"))]

    return figs


def cmd_braid(args) -> Result:
    raw = load_json(args.loop)
    if isinstance(raw, dict) and "charges" in raw:
        cfgs = [braids.config_from_charge(_charges(Z), center=False) for Z in raw["charges"]]
    else:
        items = raw.get("configurations") if isinstance(raw, dict) else raw
        if not isinstance(items, list) or not items:
            raise InvalidInput("a point loop is a nonempty list of configurations")
        cfgs = [braids.Configuration.from_json(c) for c in items]
    w = braids.braid_of_loop(cfgs, closed=not args.open)
    k = len(cfgs[0].points) - 1
    return Result({"word": list(w), "text": braids.word_str(w), "trivial": braids.is_trivial(w, k) if k else True})


def cmd_word(args) -> Result:
    raw = load_json(args.word)
    if not isinstance(raw, list) or not all(isinstance(g, int) for g in raw):
        raise InvalidInput("a braid word is a list of nonzero integers")
    w = braids.free_reduce(raw)
    k = args.k if args.k is not None else max((abs(g) for g in raw), default=1)
    braids.check_word(w, k)
    out = {
        "word": list(raw),
        "reduced": list(w),
        "trivial": braids.is_trivial(w, k),
        "coordinates": list(braids.coords_action(w, braids.base_coords(k), k)),
    }
    if args.objects:
        out["images"] = [ob.to_json(x) for x in braids.act_on_chain(w, k, args.N)]
        out["K"] = braids.word_K(w, k, args.N)
    return Result(out)


def cmd_selftest(args) -> int:
    try:
        import pytest
    except ImportError:
        print(json.dumps({"error": "InvalidInput", "message": "pytest is not installed"}), file=sys.stderr)
        return 1
    here = Path(__file__).resolve()
    candidates = [Path.cwd() / "tests" / "test_acceptance.py"] + [p / "tests" / "test_acceptance.py" for p in here.parents]
    target = next((p for p in candidates if p.is_file()), None)
    if target is None:
        print(json.dumps({"error": "InvalidInput", "message": "tests/test_acceptance.py not found"}), file=sys.stderr)
        return 1
    os.environ.setdefault("AKSTAB_SEED", str(seed_from_env()))
    code = pytest.main([str(target), "-q", "-s"])
    return 0 if code == 0 else 1


COMMANDS: Dict[str, Callable] = {
    "algebra": cmd_algebra,
    "homs": cmd_homs,
    "ext": cmd_ext,
    "hn": cmd_hn,
    "axioms": cmd_axioms,
    "walls": cmd_walls,
    "cross": cmd_cross,
    "loop": cmd_loop,
    "braid": cmd_braid,
    "word": cmd_word,
}


# -- output ------------------------------------------------------------------------


def _text(obj: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{key}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{key}: {json.dumps(v)}")
        return lines
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [pad + " ".join(json.dumps(v) for v in obj)]
        lines = []
        for v in obj:
            lines.append(f"{pad}-")
            lines += _text(v, indent + 1)
        return lines
    return [pad + json.dumps(obj)]


def render(command: str, payload: Any, fmt: str) -> str:
    if fmt == "text":
        return "\n".join([f"# akstab {__version__} {command}"] + _text(payload)) + "\n"
    doc = {"akstab": __version__, "command": command, "seed": seed_from_env(), "result": payload}
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def write_report(directory: str, command: str, res: Result, fmt: str) -> List[str]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    if res.figures is not None:
        written += res.figures(d)
    if res.svg is not None:
        p = d / f"{command}.svg"
        p.write_text(res.svg)
        written.append(str(p))
    body = render(command, res.payload, fmt)
    p = d / "report.txt"
    parts = [f"===== {command} =====", body.rstrip("\n"), "===== files ====="] + [Path(w).name for w in written]
    p.write_text("\n".join(parts + ["===== end ====="]) + "\n")
    written.append(str(p))
    return written


# -- parser ------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors: name the flag, exit 2
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "UsageError", "message": message}), file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "svg"), default="json")
    common.add_argument("--report", metavar="DIR", help="write figures and a delimited report into DIR")
    common.add_argument("--svg", metavar="PATH", help="also write the SVG figure to PATH")
    common.add_argument("--pedantic", action="store_true", help="include the literal simplicity check")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = _Parser(prog="akstab", description="Stability conditions on A_k categories.")
    p.add_argument("--version", action="version", version=f"akstab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    c = cmd("algebra", "basis and product table of A_k^N")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--N", type=int, required=True)

    c = cmd("homs", "graded Hom dimensions between two objects")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--N", type=int, required=True)

    c = cmd("ext", "normalize an expression, or form a # b")
    c.add_argument("--object")
    c.add_argument("--a")
    c.add_argument("--b")
    c.add_argument("--N", type=int, required=True)

    def cond(c):
        c.add_argument("--condition", required=True)
        c.add_argument("--k", type=int)
        c.add_argument("--N", type=int)

    c = cmd("hn", "Harder-Narasimhan filtration of an object")
    cond(c)
    c.add_argument("--object", required=True)
    c.add_argument("--heart", help="integer t, or a phase JSON: report membership in the heart P((t, t+1])")

    c = cmd("axioms", "check the stability axioms")
    cond(c)
    c.add_argument("--sample", help="list of expressions; default: all small expressions")
    c.add_argument("--leaves", type=int, default=3)

    c = cmd("walls", "walls met on the straight segment to a target charge")
    cond(c)
    c.add_argument("--target", required=True)

    c = cmd("cross", "follow a straight segment, crossing every wall")
    cond(c)
    c.add_argument("--target", required=True)

    c = cmd("loop", "monodromy of a closed charge loop")
    cond(c)
    c.add_argument("--loop", help="charge vectors visited after the condition's own charge")
    c.add_argument("--generator", type=int, help="rotate Z(P_i) once around the origin")
    c.add_argument("--sides", type=int, default=8)
    c.add_argument("--turns", type=int, default=1)
    c.add_argument("--no-certify", action="store_true")

    c = cmd("braid", "braid word of a loop of point configurations")
    c.add_argument("--loop", required=True)
    c.add_argument("--open", action="store_true", help="do not close the loop")

    c = cmd("word", "triviality of a braid word")
    c.add_argument("--word", required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--N", type=int, default=2)
    c.add_argument("--objects", action="store_true", help="also apply the twists to P_1..P_k")

    cmd("selftest", "run the acceptance suite")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return cmd_selftest(args)
    try:
        seed_from_env()
        res = COMMANDS[args.command](args)
        if args.format == "svg":
            if res.svg is None:
                raise InvalidInput(f"{args.command} has no SVG rendering")
            sys.stdout.write(res.svg)
        else:
            sys.stdout.write(render(args.command, res.payload, args.format))
        if args.svg and res.svg is not None:
            Path(args.svg).write_text(res.svg)
        if args.report:
            write_report(args.report, args.command, res, "text" if args.format == "text" else "json")
    except AkstabError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        # malformed documents that got past the schema checks
        print(json.dumps({"error": "InvalidInput", "message": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
