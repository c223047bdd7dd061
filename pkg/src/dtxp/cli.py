"""Command-line front end.

Exit status: 0 on success, 1 on usage or parse errors, 2 when the tree
fails validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import kernels
from .contrastive import all_cpxps, cxps_instance
from .encode import EncodingError, encode_path, encode_unrestricted, explain_horn, smallest_horn
from .enumerate import enumerate_apxps, enumerate_by_size, enumerate_dual, smallest_apxp
from .hitting import apxp_mhs, axp_mhs
from .horn import dump_dimacs
from .oracle import gen_tree, or_tree
from .report import report
from .traversal import explain_traversal
from .tree import DEFAULT_SPACE_BOUND, DeadEndError, Path, TreeFormatError, TreeSyntaxError, load_instance, open_tree, validate

MODES = ("path", "path-restricted", "path-unrestricted")


class UsageError(Exception):
    pass


class InvalidTree(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message} (see {self.prog} --help)")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dtxp", description="Formal explanations for decision trees.")
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS), help="kernel implementation")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def tree_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--tree", required=True, metavar="FILE")
        s.add_argument("--format", choices=("json", "text"), default=None)
        s.add_argument("--max-space", type=int, default=DEFAULT_SPACE_BOUND, metavar="N",
                       help="largest feature space validated exhaustively")
        return s

    def target_opts(s, instance_ok=True):
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--leaf", type=int, metavar="ID")
        g.add_argument("--path", metavar="IDS", help='node ids, e.g. "1,2,5,9"')
        if instance_ok:
            g.add_argument("--instance", metavar="VALS", help='JSON array or "name=value,..."')
        s.add_argument("--mode", choices=MODES, default=None)

    tree_cmd("validate", "check the partition assumptions")
    s = tree_cmd("classify", "predict the class of an instance")
    s.add_argument("--instance", required=True, metavar="VALS")
    for name, help_ in (("axp", "one abductive explanation of an instance"),
                        ("apxp", "one abductive explanation of a path")):
        s = tree_cmd(name, help_)
        if name == "axp":
            s.add_argument("--instance", required=True, metavar="VALS")
            s.add_argument("--mode", choices=MODES, default="path-unrestricted")
        else:
            target_opts(s)
        s.add_argument("--algo", choices=("mhs", "traversal", "horn"), default="traversal")
        s.add_argument("--order", choices=("ascending", "descending"), default="ascending")
        s.add_argument("--dump-horn", metavar="FILE", help="write the Horn encoding (with --algo horn)")
    s = tree_cmd("cxp", "all contrastive explanations of an instance")
    s.add_argument("--instance", required=True, metavar="VALS")
    s = tree_cmd("cpxp", "all contrastive explanations of a path")
    target_opts(s, instance_ok=False)
    s = tree_cmd("enumerate", "stream all abductive explanations")
    target_opts(s)
    s.add_argument("--by-size", action="store_true", help="emit in non-decreasing size")
    s.add_argument("--dual", action="store_true", help="emit contrastive explanations too")
    s = tree_cmd("smallest", "a cardinality-minimal abductive explanation")
    target_opts(s)
    s.add_argument("--algo", choices=("mhs", "horn"), default="mhs",
                   help="exact hitting set, or Horn MaxSAT")
    s = tree_cmd("report", "path explanation redundancy")
    s.add_argument("--algo", choices=("mhs", "traversal", "horn"), default="traversal")
    s.add_argument("--all", action="store_true", help="also list features absent from every APXp")
    s = sub.add_parser("gen", help="write a random (or OR-function) tree as JSON")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--features", type=int, default=4)
    s.add_argument("--domain", type=int, default=2)
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--classes", type=int, default=2)
    s.add_argument("--ordinal", action="store_true")
    s.add_argument("--max-nodes", type=int, default=None)
    s.add_argument("--or", dest="or_m", type=int, metavar="M", help="OR function of M features")
    return p


def _target(tree, args):
    if getattr(args, "leaf", None) is not None:
        return tree.path_to(args.leaf)
    if getattr(args, "path", None):
        try:
            nodes = [int(x) for x in args.path.replace(" ", "").split(",")]
        except ValueError:
            raise UsageError(f"bad --path {args.path!r}") from None
        return tree.path_by_nodes(nodes)
    return load_instance(tree, args.instance)


def _emit(out, tree, expl, fmt):
    if fmt == "text":
        out.write(expl.describe(tree) + "\n")
    else:
        out.write(json.dumps(expl.to_json(tree), separators=(",", ":")) + "\n")


def _one(tree, args):
    target = _target(tree, args)
    mode = args.mode or ("path" if args.cmd == "apxp" else "path-unrestricted")
    if args.algo == "horn":
        if args.dump_horn:
            if mode == "path-unrestricted" and args.cmd == "axp":
                problem, _ = encode_unrestricted(tree, target)
            else:
                p = target if isinstance(target, Path) else tree.classify_codes(tree.encode(target))
                problem, _ = encode_path(tree, p, target if mode == "path-restricted" else None)
            with open(args.dump_horn, "w") as fh:
                fh.write(dump_dimacs(problem))
        if args.order != "ascending":
            raise UsageError("--algo horn supports only the ascending order")
        return explain_horn(tree, target, mode)
    if args.algo == "mhs":
        if args.cmd == "apxp" or mode == "path":
            p = target if isinstance(target, Path) else tree.classify_codes(tree.encode(target))
            return apxp_mhs(tree, p, args.order)
        return axp_mhs(tree, target, mode, args.order)
    return explain_traversal(tree, target, mode, args.order)


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    if args.backend:
        kernels.use(args.backend)
    if args.cmd == "gen":
        tree = or_tree(args.or_m) if args.or_m else gen_tree(
            args.features, args.domain, args.depth, args.classes, args.seed,
            ordinal=args.ordinal, max_nodes=args.max_nodes)
        out.write(tree.dumps())
        return 0
    try:
        tree = open_tree(args.tree)
    except TreeSyntaxError:
        raise
    except TreeFormatError as exc:
        # a well-formed file describing an illegal tree is a validation failure
        if args.cmd == "validate":
            raise InvalidTree(f"invalid tree: {exc}") from None
        raise
    rep = validate(tree, args.max_space)
    fmt = args.format or ("text" if args.cmd == "report" else "json")
    if args.cmd == "validate":
        if fmt == "json":
            out.write(json.dumps(rep.to_json()) + "\n")
        else:
            out.write("ok\n" if rep.ok else _describe_failure(rep) + "\n")
        return 0 if rep.ok else 2
    if not rep.ok:
        raise InvalidTree(_describe_failure(rep))
    if args.cmd == "classify":
        v = load_instance(tree, args.instance)
        p = tree.classify_codes(tree.encode(v))
        if fmt == "json":
            out.write(json.dumps({"class": p.klass, "path": p.id, "nodes": list(p.nodes)}) + "\n")
        else:
            out.write(f"{p.klass} (path {p.id}: {','.join(map(str, p.nodes))})\n")
        return 0
    if args.cmd in ("axp", "apxp"):
        _emit(out, tree, _one(tree, args), fmt)
        return 0
    if args.cmd == "cxp":
        for e in cxps_instance(tree, load_instance(tree, args.instance)):
            _emit(out, tree, e, fmt)
        return 0
    if args.cmd == "cpxp":
        for e in all_cpxps(tree, _target(tree, args)):
            _emit(out, tree, e, fmt)
        return 0
    if args.cmd == "enumerate":
        target = _target(tree, args)
        if args.dual and args.by_size:
            raise UsageError("--dual and --by-size are exclusive")
        gen = enumerate_dual if args.dual else enumerate_by_size if args.by_size else enumerate_apxps
        for e in gen(tree, target, args.mode):
            _emit(out, tree, e, fmt)
            out.flush()
        return 0
    if args.cmd == "smallest":
        target = _target(tree, args)
        if args.algo == "horn":
            e = smallest_horn(tree, target, args.mode or ("path" if isinstance(target, Path) else "path-unrestricted"))
        else:
            e = smallest_apxp(tree, target, args.mode)
        _emit(out, tree, e, fmt)
        return 0
    if args.cmd == "report":
        r = report(tree, args.algo, args.all)
        out.write(r.render() if fmt == "text" else r.dumps())
        return 0
    raise UsageError(f"unknown command {args.cmd}")


def _describe_failure(rep) -> str:
    parts = []
    if rep.inconsistent_paths:
        parts.append(f"inconsistent paths {rep.inconsistent_paths}")
    if rep.dead_end_witnesses:
        parts.append(f"dead end at point {list(rep.dead_end_witnesses[0])}")
    if rep.overlap_witnesses:
        x, a, b = rep.overlap_witnesses[0]
        parts.append(f"point {list(x)} follows paths {a} and {b}")
    if rep.uncovered_nodes:
        parts.append(f"children of nodes {rep.uncovered_nodes} leave values uncovered")
    return "invalid tree: " + "; ".join(parts)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except InvalidTree as exc:
        print(f"dtxp: {exc}", file=sys.stderr)
        return 2
    except (UsageError, TreeFormatError, KeyError, ValueError, DeadEndError, EncodingError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"dtxp: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
