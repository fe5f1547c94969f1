"""``charsum`` command line: JSON in, JSON out.

Exit status is 0 on success, 1 when a requested check finds a mismatch and 2
on usage errors (bad flags, malformed class files, infeasible sizes).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classes import (GROUP_KINDS, ClassU, centralizer_Sp, centralizer_U, enumerate_classes_Sp,
                      enumerate_classes_U, group_order)
from .exactnum import int_to_str, rational_to_str
from .ffield import SizeLimitError
from .partitions import Partition, PreconditionError


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _partition_arg(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "[]"):
        return Partition()
    try:
        return Partition(int(x) for x in text.strip("[]").split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}") from exc


def load_classes(path: str, q: int | None = None) -> list[ClassU]:
    """Read one class object or a list of them; errors name the file position or list index."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    items = data if isinstance(data, list) else [data]
    out = []
    for i, obj in enumerate(items):
        where = f"{path}[{i}]" if isinstance(data, list) else path
        try:
            if not isinstance(obj, dict):
                raise ValueError("expected an object with keys q and parts")
            if q is not None and "q" not in obj:
                obj = dict(obj, q=q)
            c = ClassU.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{where}: malformed class: {exc}") from exc
        if q is not None and c.q != q:
            raise UsageError(f"{where}: class is over q={c.q}, expected q={q}")
        out.append(c)
    return out


def _select(args, n: int) -> list[ClassU]:
    if args.cls:
        classes = load_classes(args.cls, args.q)
        for c in classes:
            if c.n != n:
                raise UsageError(f"class {c} has size {c.n}, expected {n}")
        return classes
    if args.all:
        return enumerate_classes_U(n, args.q)
    raise UsageError("give --class FILE or --all")


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


# ---- subcommands ----

def cmd_orders(args) -> int:
    _need(args, "q", "n")
    orders = {}
    for kind in GROUP_KINDS:
        if kind in ("Sp", "Oplus", "Ominus") and args.n % 2:
            continue
        if kind == "Oodd" and args.n % 2 == 0:
            continue
        orders[kind] = int_to_str(group_order(kind, args.n, args.q))
    _emit({"q": args.q, "n": args.n, "orders": orders})
    return 0


def cmd_classes(args) -> int:
    _need(args, "q", "n")
    if args.group == "Sp":
        order = group_order("Sp", args.n, args.q)
        rows = [{"class": c.to_json(), "centralizer": int_to_str(centralizer_Sp(c)),
                 "size": int_to_str(order // centralizer_Sp(c))}
                for c in enumerate_classes_Sp(args.n, args.q)]
    else:
        order = group_order("U", args.n, args.q)
        rows = [{"class": c.to_json(), "centralizer": int_to_str(centralizer_U(c)),
                 "size": int_to_str(order // centralizer_U(c))}
                for c in enumerate_classes_U(args.n, args.q)]
    _emit({"q": args.q, "n": args.n, "group": args.group, "count": len(rows), "classes": rows})
    return 0


def cmd_centralizer(args) -> int:
    _need(args, "q", "n")
    rows = [{"class": c.to_json(), "centralizer": int_to_str(centralizer_U(c))}
            for c in _select(args, args.n)]
    _emit({"q": args.q, "n": args.n, "rows": rows})
    return 0


def _value_table(args, n: int, fn) -> int:
    rows = [{"class": c.to_json(), "value": int_to_str(fn(c))} for c in _select(args, n)]
    _emit({"q": args.q, "n": args.n, "rows": rows})
    return 0


def cmd_permchar(args) -> int:
    from .charsums import perm_char

    _need(args, "q", "n")
    return _value_table(args, 2 * args.n, perm_char)


def cmd_fullsum(args) -> int:
    from .charsums import full_sum

    _need(args, "q", "n")
    return _value_table(args, args.n, full_sum)


def cmd_model_check(args) -> int:
    from .charsums import full_sum, model_sum

    _need(args, "q", "n")
    classes = _select(args, args.n) if args.cls else enumerate_classes_U(args.n, args.q)
    bad = []
    for c in classes:
        a, b = model_sum(c), full_sum(c)
        if a != b:
            bad.append({"class": c.to_json(), "model": int_to_str(a), "full": int_to_str(b)})
    _emit({"q": args.q, "n": args.n, "checked": len(classes), "mismatches": bad})
    return 1 if bad else 0


def cmd_prob(args) -> int:
    from .charsums import prob_sp, prob_twisted

    _need(args, "q", "n")
    which = args.which or "twisted"
    if which not in ("sp", "twisted"):
        raise UsageError("--which must be sp or twisted")
    n, fn = (2 * args.n, prob_sp) if which == "sp" else (args.n, prob_twisted)
    classes = _select(args, n) if (args.cls or args.all) else enumerate_classes_U(n, args.q)
    rows, total = [], Fraction(0)
    for c in classes:
        p = fn(c)
        total += p
        rows.append({"class": c.to_json(), "probability": rational_to_str(p)})
    _emit({"q": args.q, "n": args.n, "which": which, "rows": rows, "total": rational_to_str(total)})
    return 0


def cmd_hall(args) -> int:
    from .symfunc.hall import HallMismatch, hall_poly, hall_triples

    if args.lam is not None:
        _need(args, "mu", "nu")
        try:
            g = hall_poly(args.lam, args.mu, args.nu, method=args.method)
        except HallMismatch as exc:
            _emit({"error": str(exc)})
            return 1
        _emit({"lambda": list(args.lam), "mu": list(args.mu), "nu": list(args.nu),
               "g": str(g), "coeffs": [[e, int_to_str(c)] for e, c in sorted(g.items())]})
        return 0
    size = 5 if args.max_size is None else args.max_size
    bad, k = [], 0
    for lam, mu, nu in hall_triples(size):
        k += 1
        try:
            hall_poly(lam, mu, nu, method="both")
        except HallMismatch as exc:
            bad.append({"lambda": list(lam), "mu": list(mu), "nu": list(nu), "error": str(exc)})
    _emit({"max_size": size, "checked": k, "mismatches": bad})
    return 1 if bad else 0


def cmd_identities(args) -> int:
    from .symfunc.identities import IDENTITIES, verify_identity

    which = args.which or "HLFG"
    if which not in IDENTITIES:
        raise UsageError(f"--which must be one of {', '.join(IDENTITIES)}")
    nvars = 3 if args.nvars is None else args.nvars
    deg = 6 if args.deg is None else args.deg
    if which == "HLprod":
        _need(args, "mu", "nu")
        ok = verify_identity(which, mu=args.mu, nu=args.nu)
        _emit({"which": which, "mu": list(args.mu), "nu": list(args.nu), "ok": ok})
    else:
        ok = verify_identity(which, nvars, deg)
        _emit({"which": which, "nvars": nvars, "deg": deg, "ok": ok})
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    from .oracle import CHECKS, run_check

    _need(args, "check", "q", "n")
    if args.check not in CHECKS:
        raise UsageError(f"--check must be one of {', '.join(CHECKS)}")
    report = run_check(args.check, args.n, args.q)
    _emit(report)
    return 1 if report["mismatches"] else 0


COMMANDS = {
    "orders": (cmd_orders, [], "orders of the classical groups"),
    "classes": (cmd_classes, [], "class labels with centralizer orders"),
    "centralizer": (cmd_centralizer, [], "centralizer orders in U(n)"),
    "permchar": (cmd_permchar, ["perm"], "permutation character of U(2n) on Sp(2n) cosets"),
    "fullsum": (cmd_fullsum, ["full"], "sum of all irreducible characters of U(n)"),
    "model-check": (cmd_model_check, [], "compare the Hall product model with fullsum"),
    "prob": (cmd_prob, [], "class probabilities (--which sp|twisted)"),
    "hall": (cmd_hall, [], "Hall polynomials"),
    "identities": (cmd_identities, [], "Hall-Littlewood generating function identities"),
    "oracle": (cmd_oracle, [], "brute-force checks against explicit matrix groups"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field size (odd prime power for character sums)")
    common.add_argument("--n", type=int, help="rank; permchar and induced/spcent use 2n")
    common.add_argument("--class", dest="cls", metavar="FILE", help="JSON class or list of classes")
    common.add_argument("--all", action="store_true", help="every class")
    common.add_argument("--which", help="identity name, or sp|twisted for prob")
    common.add_argument("--nvars", type=int)
    common.add_argument("--deg", type=int)
    common.add_argument("--check", help="oracle check name")
    common.add_argument("--max-size", dest="max_size", type=int)
    common.add_argument("--group", choices=("U", "Sp"), default="U")
    common.add_argument("--lam", type=_partition_arg, help="partition, e.g. 2,1")
    common.add_argument("--mu", type=_partition_arg)
    common.add_argument("--nu", type=_partition_arg)
    common.add_argument("--method", choices=("both", "interp", "hlprod"), default="both")

    parser = argparse.ArgumentParser(prog="charsum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, aliases, help_text) in COMMANDS.items():
        p = sub.add_parser(name, aliases=aliases, parents=[common], help=help_text)
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.q is not None and args.q < 2:
            raise UsageError("--q must be a prime power")
        if args.n is not None and args.n < 0:
            raise UsageError("--n must be nonnegative")
        return args.func(args)
    except (UsageError, PreconditionError, SizeLimitError) as exc:
        sys.stderr.write(f"charsum {args.command}: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"charsum {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
