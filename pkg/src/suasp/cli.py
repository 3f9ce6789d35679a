"""Command-line front end.

Exit codes: 10 when a solving mode finds a model, 20 when it finds none,
0 for the other modes, 1 for usage, input and semantic errors, 2 when a
resource cap aborts the run.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from .config import Caps
from .errors import ResourceLimitError, SuaspError
from .program import KCombinedProgram, is_fresh

EXIT_MODEL, EXIT_NO_MODEL, EXIT_OK, EXIT_ERROR, EXIT_RESOURCE = 10, 20, 0, 1, 2

SOLVING_MODES = ("solve", "enumerate", "check", "ground", "reify")
ENCODING_MODES = ("encode-qbf", "encode-parity", "encode-ponr")


@dataclass
class RunConfig:
    mode: str
    files: list = field(default_factory=list)
    instance: Optional[str] = None
    limit: Optional[int] = None
    brute_force: bool = False
    seed: int = 0
    stats: bool = False
    show_internal: bool = False
    output: Optional[str] = None
    caps: Caps = field(default_factory=Caps)


def _role(idx: int) -> str:
    return "g" if idx == 0 else ("t" if idx == 1 else f"t{idx + 1}")


def _shown(model: frozenset, show_internal: bool) -> list[str]:
    return sorted(a for a in model if show_internal or not is_fresh(a))


def _load(config: RunConfig) -> KCombinedProgram:
    from .frontend.assemble import assemble

    texts = [Path(f).read_text() for f in config.files]
    instance = Path(config.instance).read_text() if config.instance else None
    return assemble(texts, instance, config.caps.max_ground_atoms)


def _print_models(models, show_internal: bool, out) -> int:
    count = 0
    for count, model in enumerate(models, start=1):
        atoms = _shown(model, show_internal)
        print(f"Answer {count}:" + "".join(f" {a}" for a in atoms), file=out)
    print("SATISFIABLE" if count else "UNSATISFIABLE", file=out)
    return EXIT_MODEL if count else EXIT_NO_MODEL


def _solve(config: RunConfig, out, err) -> int:
    from .su import SuSearch

    c = _load(config)
    limit = 1 if config.mode == "solve" and config.limit is None else config.limit
    projection = c.outer.vocabulary if config.show_internal else c.outer.visible
    if config.brute_force:
        from .oracle import enum_su_bf

        models = {m & projection for m in enum_su_bf(c, config.caps.bf_max_atoms)}
        ordered = sorted(models, key=lambda m: sorted(m))
        return _print_models(ordered[:limit] if limit is not None else ordered, config.show_internal, out)
    search = SuSearch(c, config.seed)
    code = _print_models(search.enumerate_su(limit, projection), config.show_internal, out)
    if config.stats:
        _print_stats(search, err)
    return code


def _print_stats(search, err) -> None:
    level = 1
    node = search
    while node is not None:
        e = node.engine.stats
        print(f"level {level}: candidates={node.stats.candidates} refutations={node.stats.refutations} "
              f"inner_calls={node.stats.inner_calls} conflicts={e.conflicts} decisions={e.decisions} "
              f"loop_clauses={e.loop_clauses} models={e.models}", file=err)
        if node.tester is not None:
            t = node.tester.stats
            print(f"level {level + 1}: conflicts={t.conflicts} decisions={t.decisions} "
                  f"loop_clauses={t.loop_clauses} models={t.models}", file=err)
        node = node.inner
        level += 1


def _check(config: RunConfig, stdin, out) -> int:
    from .su import check, complete

    c = _load(config)
    atoms = frozenset(stdin.read().split())
    if not config.show_internal and any(is_fresh(a) for a in atoms):
        raise SuaspError("auxiliary atoms cannot be given; pass --show-internal to supply a full interpretation")
    if config.show_internal:
        full = atoms if atoms <= c.outer.vocabulary else None
    else:
        full = complete(c, atoms)
    verdict = full is not None and check(c, full)
    print("TRUE" if verdict else "FALSE", file=out)
    return EXIT_OK


def _ground(config: RunConfig, out) -> int:
    from .encoders.render import combined_sources

    c = _load(config)
    _emit([(f"level{i + 1}.lp", text) for i, text in enumerate(combined_sources(c))], config, out)
    return EXIT_OK


def _reify(config: RunConfig, out) -> int:
    from .encoders.reify import reify

    c = _load(config)
    _emit([(f"reified_{_role(i)}.lp", reify(p, _role(i))) for i, p in enumerate(c.levels)], config, out)
    return EXIT_OK


def _encode(config: RunConfig, out) -> int:
    from . import encoders, instances

    text = Path(config.files[0]).read_text()
    if config.mode == "encode-qbf":
        q = instances.parse_qdimacs(text).canonical()
        files = [(f"level{i + 1}.lp", src) for i, src in enumerate(encoders.combined_sources(encoders.encode_qbfk(q)))]
    else:
        if config.mode == "encode-parity":
            enc = encoders.encode_parity(instances.parse_parity_facts(text))
        else:
            enc = encoders.encode_ponr(instances.parse_ponr_facts(text))
        files = [("generator.lp", enc.components[0]), ("tester.lp", enc.components[1]),
                 ("instance.lp", enc.instance)]
    _emit(files, config, out)
    return EXIT_OK


def _emit(files: list, config: RunConfig, out) -> None:
    if config.output:
        target = Path(config.output)
        target.mkdir(parents=True, exist_ok=True)
        for name, text in files:
            (target / name).write_text(text)
            print(target / name, file=out)
        return
    for name, text in files:
        print(f"% ---- {name} ----", file=out)
        out.write(text)


def run(config: RunConfig, stdin=None, out=None, err=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if config.limit is not None and config.limit < 0:
            raise SuaspError("--limit must be non-negative")
        if config.mode in ("solve", "enumerate"):
            return _solve(config, out, err)
        if config.mode == "check":
            return _check(config, stdin, out)
        if config.mode == "ground":
            return _ground(config, out)
        if config.mode == "reify":
            return _reify(config, out)
        return _encode(config, out)
    except ResourceLimitError as exc:
        print(f"error: resource limit: {exc}", file=err)
        return EXIT_RESOURCE
    except (SuaspError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suasp",
        description="Stable-unstable model solver for combined logic programs.")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--instance", help="facts appended to every component")
        p.add_argument("--max-ground-atoms", type=int, default=None,
                       help="grounding cap (default: $SU_MAX_GROUND_ATOMS or 1000000)")

    for mode in SOLVING_MODES:
        p = sub.add_parser(mode)
        p.add_argument("files", nargs="+", help="component programs, generator first, innermost last")
        common(p)
        p.add_argument("--show-internal", action="store_true", help="also print auxiliary atoms")
        if mode in ("solve", "enumerate"):
            p.add_argument("--limit", type=int, default=None,
                           help="maximum number of models (solve: 1, enumerate: all)")
            p.add_argument("--brute-force", action="store_true", help="use the exhaustive reference solver")
            p.add_argument("--bf-max-atoms", type=int, default=None)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--stats", action="store_true", help="search statistics on stderr")
        if mode in ("ground", "reify"):
            p.add_argument("-o", "--output", help="write one file per level into this directory")
    for mode in ENCODING_MODES:
        p = sub.add_parser(mode)
        p.add_argument("files", nargs=1, metavar="file")
        p.add_argument("-o", "--output", help="write the programs into this directory")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    caps = Caps.from_env()
    if getattr(args, "max_ground_atoms", None) is not None:
        caps = replace(caps, max_ground_atoms=args.max_ground_atoms)
    if getattr(args, "bf_max_atoms", None) is not None:
        caps = replace(caps, bf_max_atoms=args.bf_max_atoms)
    return RunConfig(
        mode=args.mode,
        files=list(args.files),
        instance=getattr(args, "instance", None),
        limit=getattr(args, "limit", None),
        brute_force=getattr(args, "brute_force", False),
        seed=getattr(args, "seed", 0),
        stats=getattr(args, "stats", False),
        show_internal=getattr(args, "show_internal", False),
        output=getattr(args, "output", None),
        caps=caps,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
