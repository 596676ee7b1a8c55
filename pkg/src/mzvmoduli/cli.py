"""Command-line front end.  Every subcommand prints one JSON document
(or DOT with ``tree --dot``) on stdout; diagnostics go to stderr.

Exit codes: 0 success, 1 certification failure or divergence, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import errors
from .divisors import check_disjoint, check_vertex_avoidance, divisor_A, divisor_B
from .jsonio import dumps
from .labels import (
    CompositionIndex,
    EpsilonWord,
    MarkedSet,
    canonicalize_cycle,
    encode_epsilon,
    epsilon_from_parts,
    labels_of,
    parse_parts,
    standard_order,
)
from .partitions import enumerate_stable_partitions, parse_partition, partition_type
from .periods import (
    DEFAULT_K,
    AnchorSequence,
    framed_report,
    iterated_integral,
    mzv_integral,
    mzv_series,
)
from .stasheff import euler_characteristic, f_vector, faces
from .trees import planar_embedding, stratum_signature, to_dot, tree_from_partitions

USAGE_ERRORS = (
    errors.BadArrangement,
    errors.BadComposition,
    errors.BadK,
    errors.BadCodim,
    errors.BadOrder,
    errors.TooSmall,
    errors.EnumerationCap,
    errors.MismatchedCarrier,
)


class UsageError(Exception):
    pass


def _max_labels() -> int:
    raw = os.environ.get("MZV_MAX_N", "12")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MZV_MAX_N must be an integer, got {raw!r}") from None


def _cap(n: int) -> None:
    cap = _max_labels()
    if n + 3 > cap:
        raise UsageError(f"|S| = {n + 3} exceeds MZV_MAX_N = {cap}")


def _order(arg: str | None, n: int):
    if arg is None:
        return standard_order(n)
    return canonicalize_cycle(arg.split(","), carrier=MarkedSet(n).mask)


def _epsilon(args) -> EpsilonWord:
    if args.eps is not None:
        return EpsilonWord.parse(args.eps)
    if args.zeta is not None:
        return epsilon_from_parts(parse_parts(args.zeta))
    raise UsageError("give --zeta or --eps")


def _n(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("n must be >= 1")
    return n


def _anchor(text: str) -> complex:
    s = text.strip().replace("i", "j").replace(" ", "")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"bad anchor {text!r}") from None


def _anchor_json(a):
    return {"re": a.real, "im": a.imag} if isinstance(a, complex) else a


def cmd_divisors(args):
    _cap(args.n)
    S = MarkedSet(args.n)
    parts = sorted(enumerate_stable_partitions(S))
    return {
        "n": args.n,
        "labels": list(S.labels),
        "count": len(parts),
        "partitions": [str(p) for p in parts],
    }, 0


def cmd_divisor_a(args):
    eps = _epsilon(args)
    _cap(eps.n)
    div = divisor_A(eps)
    out = {"epsilon": list(eps.values), "n": eps.n, "convergent": eps.convergent}
    out.update(div.as_dict())
    out["types"] = [partition_type(p, eps).value for p in div]
    return out, 0


def cmd_divisor_b(args):
    _cap(args.n)
    rho = _order(args.order, args.n)
    out = {"n": args.n, "order": list(rho.arrangement)}
    out.update(divisor_B(rho).as_dict())
    return out, 0


def cmd_check(args):
    eps = _epsilon(args)
    _cap(eps.n)
    rho = standard_order(eps.n)
    disj = check_disjoint(eps, rho)
    out = {
        "epsilon": list(eps.values),
        "n": eps.n,
        "order": list(rho.arrangement),
        "A_components": len(divisor_A(eps)),
        "B_components": len(divisor_B(rho)),
        "disjointness": disj.as_dict(),
    }
    try:
        verts = check_vertex_avoidance(eps, rho)
        out["vertex_avoidance"] = verts.as_dict()
        out["hypothesis_violation"] = None
        ok = disj.disjoint and verts.vertex_clear and verts.certified
    except errors.HypothesisViolated as exc:
        out["vertex_avoidance"] = None
        out["hypothesis_violation"] = str(exc)
        ok = False
    out["certified"] = bool(ok)
    if not ok:
        print("certification failed", file=sys.stderr)
    return out, 0 if ok else 1


def cmd_stasheff(args):
    _cap(args.n)
    cap = _max_labels()
    rho = _order(args.order, args.n)
    out = {"n": args.n, "order": list(rho.arrangement)}
    if args.f_vector or args.codim is None:
        fv = f_vector(rho, max_labels=cap)
        out["f_vector"] = list(fv)
        out["euler_characteristic"] = euler_characteristic(fv)
    if args.codim is not None:
        fs = faces(rho, args.codim, max_labels=cap)
        out["codim"] = args.codim
        out["count"] = len(fs)
        out["faces"] = [f.as_dict() for f in fs]
    return out, 0


def cmd_tree(args):
    texts = [t for t in (x.strip() for x in args.partitions.split(";")) if t]
    if not texts:
        raise UsageError("--partitions needs at least one partition")
    parts = [parse_partition(t) for t in texts]
    try:
        tree = tree_from_partitions(parts)
    except errors.NotAStratum as exc:
        print(str(exc), file=sys.stderr)
        return {
            "error": "not a stratum",
            "pair": [str(exc.first), str(exc.second)],
            "delta": exc.distance,
        }, 1
    if args.order is not None:
        n = len(labels_of(tree.carrier)) - 3
        tree = planar_embedding(tree, _order(args.order, n))
    if args.dot:
        return to_dot(tree), 0
    counts, dim = stratum_signature(tree)
    return {
        "partitions": [str(p) for p in sorted(tree.partitions())],
        "signature": {"flag_counts": list(counts), "dimension": dim},
        "tree": tree.as_dict(),
    }, 0


def cmd_mzv(args):
    c = CompositionIndex(parse_parts(args.zeta))
    eps = encode_epsilon(c)
    out = {"composition": list(c.parts), "epsilon": list(eps.values),
           "weight": c.weight, "depth": c.depth}
    code = 0
    series = integral = None
    if args.method in ("series", "both"):
        series = mzv_series(c, args.K)
        out["series"] = series.as_dict()
    if args.method in ("integral", "both"):
        integral = mzv_integral(eps, args.Q)
        out["integral"] = integral.as_dict()
    if series and integral:
        gap = abs(series.value - integral.value)
        agree = gap <= series.error_bound + integral.error_bound
        out["discrepancy"] = gap
        out["agree"] = agree
        if not agree:
            print("series and integral disagree", file=sys.stderr)
            code = 1
    return out, code


def cmd_iterint(args):
    anchors = [_anchor(x) for x in args.a.split(",")]
    seq = AnchorSequence(tuple(anchors))
    result = iterated_integral(seq, args.Q)
    return {
        "anchors": [_anchor_json(a) for a in seq.a],
        "result": result.as_dict(),
    }, 0


def cmd_report(args):
    c = CompositionIndex(parse_parts(args.zeta))
    _cap(c.weight)
    return framed_report(c, args.K, args.Q).as_dict(), 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mzvmoduli",
        description="Boundary combinatorics of M_{0,n+3} and multiple zeta periods.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("divisors", help="list all stable 2-partitions")
    s.add_argument("--n", type=_n, required=True)
    s.set_defaults(func=cmd_divisors)

    s = sub.add_parser("divisor-a", help="components of A(eps)")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--zeta", help="composition n1,...,nm")
    g.add_argument("--eps", help="epsilon word such as 110")
    s.set_defaults(func=cmd_divisor_a)

    s = sub.add_parser("divisor-b", help="components of B(rho)")
    s.add_argument("--n", type=_n, required=True)
    s.add_argument("--order", help="comma-separated cyclic order of the labels")
    s.set_defaults(func=cmd_divisor_b)

    s = sub.add_parser("check", help="certify A/B disjointness and vertex avoidance")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--zeta")
    g.add_argument("--eps")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("stasheff", help="faces of the Stasheff polytope")
    s.add_argument("--n", type=_n, required=True)
    s.add_argument("--order")
    s.add_argument("--codim", type=int)
    s.add_argument("--f-vector", action="store_true")
    s.set_defaults(func=cmd_stasheff)

    s = sub.add_parser("tree", help="dual tree of a set of compatible partitions")
    s.add_argument("--partitions", required=True,
                   help="partitions separated by ';', e.g. '{0,s2}|{1,inf,s1};{inf,s1}|{0,1,s2}'")
    s.add_argument("--order", help="attach the planar structure for this cyclic order")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("mzv", help="evaluate a multiple zeta value")
    s.add_argument("--zeta", required=True)
    s.add_argument("--method", choices=("series", "integral", "both"), default="both")
    s.add_argument("-K", type=int, default=DEFAULT_K)
    s.add_argument("-Q", type=int, default=None)
    s.set_defaults(func=cmd_mzv)

    s = sub.add_parser("iterint", help="evaluate I(a1,...,an)")
    s.add_argument("--a", required=True)
    s.add_argument("-Q", type=int, default=None)
    s.set_defaults(func=cmd_iterint)

    s = sub.add_parser("report", help="full framed-motive report")
    s.add_argument("--zeta", required=True)
    s.add_argument("-K", type=int, default=DEFAULT_K)
    s.add_argument("-Q", type=int, default=None)
    s.set_defaults(func=cmd_report)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, code = args.func(args)
    except USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except errors.ModuliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(result if isinstance(result, str) else dumps(result))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
