"""Command-line front end.

Scalar coefficients, products, transfers, tables and the built-in
verification suites, all over exact integers.  Examples:

    heckealg ccoeff --p 2 --n 2 --M "[1]" --N "[1]" --L "[1,1]"
    heckealg acoeff --p 2 --n 1 --M "[2,1]" --N "[1]"
    heckealg mul --p 2 --n 2 "1*[1]" "1*[1]"
    heckealg omega --p 2 --n 1 "1*[1,1]"
    heckealg decompose --p 2 --n 2 "1*[2]"
    heckealg table omega --p 2 --n 1 --max-order-exp 2 --output json
    heckealg verify all --p 2 --n 1 --max-order-exp 2
    heckealg count-subgroups --p 2 --n 2 --trunc 2
    heckealg selftest

Exit codes: 0 success, 2 bad arguments or unparsable input, 3 an
enumeration would exceed --budget, 4 a verification check failed.

For `omega`, `acoeff` and `table a` the class M lives in the rank-(n+1)
algebra upstairs; --n names the target rank.  `count-subgroups` reads
the truncation exponent from --trunc (default 1).  --cache points at a
directory holding the append-only coefficient cache (environment
variable HECKE_CACHE_DIR supplies the default); --jobs splits table and
hom-verification cells over worker processes, merging results in a
fixed order so output is identical to a sequential run.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .cache import CACHE_ENV, CacheStore
from .errors import BudgetExceededError, ParseError, VerificationError
from .hecke import (
    HeckeContext,
    HeckeElement,
    c_coeff,
    decompose_in_generators,
    eval_generator_poly,
    multiply,
    basis_element,
    parse_element,
    t_aggregate,
)
from .omega import (
    OmegaContext,
    a_coeff,
    b_coeff,
    lift_section,
    omega,
    verify_omega_hom,
    verify_tp_formula,
)
from .partitions import (
    embeds,
    format_partition,
    order_exponent,
    parse_partition,
    partitions_of_exponent,
    partitions_up_to,
)
from .subgroups import (
    DEFAULT_BUDGET,
    Ambient,
    count_of_type_in_group,
    enumerate_subgroups,
    m_count,
    type_of,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4

__all__ = ["main"]


# --- option plumbing ---------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, *, need_rank: bool = True) -> None:
    parser.add_argument("--p", type=int, required=need_rank, help="the prime")
    parser.add_argument(
        "--n", type=int, required=need_rank, help="algebra rank (target rank for omega)"
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="abort any enumeration larger than this (exit 3)",
    )
    parser.add_argument(
        "--cache",
        default=None,
        help=f"cache directory (default: ${CACHE_ENV} if set)",
    )
    parser.add_argument(
        "--output",
        choices=("text", "json", "csv"),
        default="text",
        help="output format",
    )
    parser.add_argument(
        "--split",
        choices=("first", "last"),
        default="first",
        help="which coordinate block forms the transfer kernel",
    )
    parser.add_argument(
        "--trunc",
        type=int,
        default=None,
        help="raise the truncation exponent (never lowers it)",
    )
    parser.add_argument(
        "--max-order-exp",
        dest="max_order_exp",
        type=int,
        default=3,
        help="order-exponent bound for tables and verification sweeps",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker processes for tables and hom verification",
    )


def _cache_dir(args: argparse.Namespace) -> str | None:
    if args.cache:
        return args.cache
    return os.environ.get(CACHE_ENV) or None


def _open_cache(args: argparse.Namespace) -> tuple[CacheStore | None, dict[str, int]]:
    directory = _cache_dir(args)
    if not directory:
        return None, {}
    store = CacheStore(directory)
    return store, store.load()


def _close_cache(store: CacheStore | None, memo: dict[str, int]) -> None:
    if store is not None:
        store.flush(memo)


def _hecke_ctx(args: argparse.Namespace, memo: dict[str, int]) -> HeckeContext:
    return HeckeContext(p=args.p, n=args.n, budget=args.budget, memo=memo)


def _omega_ctx(args: argparse.Namespace, memo: dict[str, int]) -> OmegaContext:
    return OmegaContext(
        p=args.p,
        n=args.n,
        split=args.split,
        trunc_override=args.trunc,
        budget=args.budget,
        memo=memo,
    )


# --- output helpers -----------------------------------------------------------


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


def _emit_scalar(args, fields: list[tuple[str, tuple[int, ...]]], value: int) -> None:
    if args.output == "json":
        payload: dict = {"p": args.p, "n": args.n}
        for name, lam in fields:
            payload[name] = list(lam)
        payload["value"] = str(value)
        print(json.dumps(payload))
    elif args.output == "csv":
        w = _csv_writer()
        w.writerow([name for name, _ in fields] + ["value"])
        w.writerow([format_partition(lam) for _, lam in fields] + [str(value)])
    else:
        print(value)


def _emit_element(args, elem: HeckeElement) -> None:
    if args.output == "json":
        print(json.dumps(elem.to_json_dict()))
    elif args.output == "csv":
        w = _csv_writer()
        w.writerow(["lambda", "coeff"])
        for lam, c in elem.sorted_terms():
            w.writerow([format_partition(lam), str(c)])
    else:
        print(elem.to_text())


def _emit_rows(args, header: list[str], rows: list[list[str]], json_payload: dict) -> None:
    if args.output == "json":
        print(json.dumps(json_payload))
    else:
        # text tables are the csv form
        w = _csv_writer()
        w.writerow(header)
        for row in rows:
            w.writerow(row)


# --- parallel workers ---------------------------------------------------------

_WORKER_PARAMS: dict = {}


def _worker_init(params: dict) -> None:
    _WORKER_PARAMS.update(params)


def _fresh_worker_omega() -> OmegaContext:
    return OmegaContext(
        p=_WORKER_PARAMS["p"],
        n=_WORKER_PARAMS["n"],
        split=_WORKER_PARAMS["split"],
        trunc_override=_WORKER_PARAMS["trunc"],
        budget=_WORKER_PARAMS["budget"],
    )


def _worker_cell(item: tuple):
    kind = item[0]
    if kind == "c":
        ctx = HeckeContext(
            p=_WORKER_PARAMS["p"], n=_WORKER_PARAMS["n"], budget=_WORKER_PARAMS["budget"]
        )
        _, m, n_, l = item
        return c_coeff(m, n_, l, ctx)
    if kind == "a":
        _, m, n_ = item
        return a_coeff(m, n_, _fresh_worker_omega())
    if kind == "b":
        _, b, a = item
        return b_coeff(b, a, _fresh_worker_omega())
    if kind == "omega":
        (_, m) = item
        ctx = _fresh_worker_omega()
        elem = omega(basis_element(m, ctx.source), ctx)
        return elem.sorted_terms()
    if kind == "hom":
        _, m1, m2 = item
        rep = verify_omega_hom(m1, m2, _fresh_worker_omega())
        return rep.passed, rep.describe()
    raise ValueError(f"unknown work item {kind!r}")


def _parallel(args, kind: str, items: list[tuple]) -> list:
    params = {
        "p": args.p,
        "n": args.n,
        "budget": args.budget,
        "split": getattr(args, "split", "first"),
        "trunc": getattr(args, "trunc", None),
    }
    tagged = [(kind, *item) for item in items]
    with ProcessPoolExecutor(
        max_workers=args.jobs, initializer=_worker_init, initargs=(params,)
    ) as pool:
        chunk = max(1, len(tagged) // (4 * args.jobs))
        return list(pool.map(_worker_cell, tagged, chunksize=chunk))


# --- scalar and element commands ----------------------------------------------


def _cmd_ccoeff(args) -> int:
    m = parse_partition(args.M)
    n_ = parse_partition(args.N)
    l = parse_partition(args.L)
    store, memo = _open_cache(args)
    ctx = _hecke_ctx(args, memo)
    value = c_coeff(m, n_, l, ctx)
    _close_cache(store, memo)
    _emit_scalar(args, [("M", m), ("N", n_), ("L", l)], value)
    return EXIT_OK


def _cmd_acoeff(args) -> int:
    m = parse_partition(args.M)
    n_ = parse_partition(args.N)
    store, memo = _open_cache(args)
    ctx = _omega_ctx(args, memo)
    value = a_coeff(m, n_, ctx)
    _close_cache(store, memo)
    _emit_scalar(args, [("M", m), ("N", n_)], value)
    return EXIT_OK


def _cmd_bcoeff(args) -> int:
    b = parse_partition(args.B)
    a = parse_partition(args.A)
    store, memo = _open_cache(args)
    ctx = _omega_ctx(args, memo)
    value = b_coeff(b, a, ctx)
    _close_cache(store, memo)
    _emit_scalar(args, [("B", b), ("A", a)], value)
    return EXIT_OK


def _cmd_mul(args) -> int:
    store, memo = _open_cache(args)
    ctx = _hecke_ctx(args, memo)
    x = parse_element(args.x, args.p, args.n)
    y = parse_element(args.y, args.p, args.n)
    result = multiply(x, y, ctx)
    _close_cache(store, memo)
    _emit_element(args, result)
    return EXIT_OK


def _cmd_omega(args) -> int:
    store, memo = _open_cache(args)
    ctx = _omega_ctx(args, memo)
    x = parse_element(args.x, args.p, args.n + 1)
    result = omega(x, ctx)
    _close_cache(store, memo)
    _emit_element(args, result)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    store, memo = _open_cache(args)
    ctx = _hecke_ctx(args, memo)
    x = parse_element(args.x, args.p, args.n)
    poly = decompose_in_generators(x, ctx)
    _close_cache(store, memo)
    if args.output == "json":
        payload = {"p": args.p, **poly.to_json_dict()}
        print(json.dumps(payload))
    elif args.output == "csv":
        w = _csv_writer()
        w.writerow(["exponents", "coeff"])
        for exps, c in poly.sorted_terms():
            w.writerow(["[" + ",".join(str(a) for a in exps) + "]", str(c)])
    else:
        print(poly.to_text())
    return EXIT_OK


# --- tables --------------------------------------------------------------------


def _cmd_table(args) -> int:
    which = args.kind
    store, memo = _open_cache(args)
    maxoe = args.max_order_exp
    if which == "c":
        items = []
        for l in partitions_up_to(maxoe, args.n):
            d = order_exponent(l)
            for dm in range(d + 1):
                for m in partitions_of_exponent(dm, args.n):
                    for n_ in partitions_of_exponent(d - dm, args.n):
                        items.append((m, n_, l))
        if args.jobs > 1:
            values = _parallel(args, "c", items)
        else:
            ctx = _hecke_ctx(args, memo)
            values = [c_coeff(m, n_, l, ctx) for m, n_, l in items]
        rows = [
            [format_partition(m), format_partition(n_), format_partition(l), str(v)]
            for (m, n_, l), v in zip(items, values)
        ]
        payload = {
            "p": args.p,
            "n": args.n,
            "table": "c",
            "rows": [
                {"M": list(m), "N": list(n_), "L": list(l), "value": str(v)}
                for (m, n_, l), v in zip(items, values)
            ],
        }
        _close_cache(store, memo)
        _emit_rows(args, ["M", "N", "L", "value"], rows, payload)
    elif which == "a":
        items = []
        for m in partitions_up_to(maxoe, args.n + 1):
            for n_ in partitions_up_to(order_exponent(m), args.n):
                if embeds(n_, m):
                    items.append((m, n_))
        if args.jobs > 1:
            values = _parallel(args, "a", items)
        else:
            ctx = _omega_ctx(args, memo)
            values = [a_coeff(m, n_, ctx) for m, n_ in items]
        rows = [
            [format_partition(m), format_partition(n_), str(v)]
            for (m, n_), v in zip(items, values)
        ]
        payload = {
            "p": args.p,
            "n": args.n,
            "table": "a",
            "rows": [
                {"M": list(m), "N": list(n_), "value": str(v)}
                for (m, n_), v in zip(items, values)
            ],
        }
        _close_cache(store, memo)
        _emit_rows(args, ["M", "N", "value"], rows, payload)
    elif which == "b":
        items = []
        for b in partitions_up_to(maxoe, args.n):
            for a in partitions_up_to(order_exponent(b), args.n):
                if embeds(a, b):
                    items.append((b, a))
        if args.jobs > 1:
            values = _parallel(args, "b", items)
        else:
            ctx = _omega_ctx(args, memo)
            values = [b_coeff(b, a, ctx) for b, a in items]
        rows = [
            [format_partition(b), format_partition(a), str(v)]
            for (b, a), v in zip(items, values)
        ]
        payload = {
            "p": args.p,
            "n": args.n,
            "table": "b",
            "rows": [
                {"B": list(b), "A": list(a), "value": str(v)}
                for (b, a), v in zip(items, values)
            ],
        }
        _close_cache(store, memo)
        _emit_rows(args, ["B", "A", "value"], rows, payload)
    else:  # omega
        items = [(m,) for m in partitions_up_to(maxoe, args.n + 1)]
        if args.jobs > 1:
            images = _parallel(args, "omega", items)
        else:
            ctx = _omega_ctx(args, memo)
            images = [
                omega(basis_element(m, ctx.source), ctx).sorted_terms()
                for (m,) in items
            ]
        rows = []
        for (m,), image in zip(items, images):
            for lam, c in image:
                rows.append([format_partition(m), format_partition(lam), str(c)])
        payload = {
            "p": args.p,
            "n": args.n,
            "entries": [
                {
                    "M": list(m),
                    "image": [
                        {"lambda": list(lam), "coeff": str(c)} for lam, c in image
                    ],
                }
                for (m,), image in zip(items, images)
            ],
        }
        _close_cache(store, memo)
        _emit_rows(args, ["M", "lambda", "coeff"], rows, payload)
    return EXIT_OK


# --- verification suites --------------------------------------------------------


def _check(checks: list, name: str, fn) -> None:
    try:
        ok, detail = fn()
    except VerificationError as exc:
        ok, detail = False, str(exc)
    checks.append((name, ok, detail))


def _suite_hom(args, memo, checks) -> None:
    parts = list(partitions_up_to(args.max_order_exp, args.n + 1))
    items = [(m1, m2) for m1 in parts for m2 in parts]
    if args.jobs > 1:
        results = _parallel(args, "hom", items)
    else:
        ctx = _omega_ctx(args, memo)
        results = []
        for m1, m2 in items:
            rep = verify_omega_hom(m1, m2, ctx)
            results.append((rep.passed, rep.describe()))
    for (m1, m2), (ok, detail) in zip(items, results):
        checks.append(
            (f"hom M1={format_partition(m1)} M2={format_partition(m2)}", ok, detail)
        )


def _suite_tp(args, memo, checks) -> None:
    ctx = _omega_ctx(args, memo)
    for r in range(args.max_order_exp + 1):
        rep = verify_tp_formula(r, ctx)
        checks.append((f"aggregate r={r}", rep.passed, rep.describe()))


def _suite_inverse(args, memo, checks) -> None:
    ctx = _omega_ctx(args, memo)
    parts = list(partitions_up_to(args.max_order_exp, args.n))
    for b in parts:
        for a in parts:
            if order_exponent(a) > order_exponent(b) or not embeds(a, b):
                continue
            mids = [
                c
                for c in partitions_up_to(order_exponent(b), args.n)
                if embeds(a, c) and embeds(c, b)
            ]
            lhs = sum(a_coeff(b, c, ctx) * b_coeff(c, a, ctx) for c in mids)
            rhs = sum(b_coeff(b, c, ctx) * a_coeff(c, a, ctx) for c in mids)
            want = 1 if a == b else 0
            ok = lhs == want and rhs == want
            checks.append(
                (
                    f"inverse B={format_partition(b)} A={format_partition(a)}",
                    ok,
                    f"a.b = {lhs}, b.a = {rhs}, expected {want}",
                )
            )
    for n_ in parts:
        lifted = lift_section(n_, ctx)
        back = omega(lifted, ctx)
        want_elem = basis_element(n_, ctx.target)
        checks.append(
            (
                f"section N={format_partition(n_)}",
                back == want_elem,
                f"omega(lift) = {back.to_text()}",
            )
        )


def _suite_shimura(args, memo, checks) -> None:
    ctx = _hecke_ctx(args, memo)
    for lam in partitions_up_to(args.max_order_exp, args.n):
        def attempt(lam=lam):
            elem = basis_element(lam, ctx)
            poly = decompose_in_generators(elem, ctx)
            back = eval_generator_poly(poly, ctx)
            return back == elem, f"{format_partition(lam)} = {poly.to_text()}"

        _check(checks, f"generators L={format_partition(lam)}", attempt)
    for r in range(args.max_order_exp + 1):
        def attempt_aggregate(r=r):
            elem = t_aggregate(r, ctx)
            poly = decompose_in_generators(elem, ctx)
            back = eval_generator_poly(poly, ctx)
            return back == elem, f"aggregate r={r}: {poly.to_text()}"

        _check(checks, f"generators aggregate r={r}", attempt_aggregate)


def _suite_oracle(args, memo, checks) -> None:
    p = args.p
    budget = args.budget

    def total(n: int, r: int) -> int:
        amb = Ambient(p, n, r)
        return sum(1 for _ in enumerate_subgroups(amb, budget=budget))

    checks.append(
        ("count rank2 exponent1", total(2, 1) == p + 3, f"got {total(2, 1)}")
    )
    checks.append(
        (
            "count rank3 exponent1",
            total(3, 1) == 2 * p * p + 2 * p + 4,
            f"got {total(3, 1)}",
        )
    )
    for r in range(1, 5):
        checks.append(
            (f"count chain r={r}", total(1, r) == r + 1, f"got {total(1, r)}")
        )
    for nn, rr in ((1, 1), (1, 2), (2, 1), (2, 2)):
        all_types = [
            m
            for m in partitions_up_to(nn * rr, nn)
            if not m or m[0] <= rr
        ]
        sum_m = sum(m_count(m, nn, p, budget=budget) for m in all_types)
        checks.append(
            (
                f"m-sum n={nn} r={rr}",
                sum_m == total(nn, rr),
                f"sum {sum_m} vs total {total(nn, rr)}",
            )
        )
    maxoe = args.max_order_exp
    shapes = [lam for d in range(maxoe + 1) for lam in partitions_of_exponent(d, d or 1)]
    for lam in shapes:
        for mu in shapes:
            if order_exponent(mu) > order_exponent(lam):
                continue
            found = count_of_type_in_group(lam, mu, p, budget=budget) > 0
            predicted = embeds(mu, lam)
            checks.append(
                (
                    f"embedding L={format_partition(lam)} M={format_partition(mu)}",
                    found == predicted,
                    f"search {found}, containment {predicted}",
                )
            )
    octx = _omega_ctx(args, memo)
    for m in partitions_up_to(maxoe, args.n + 1):
        for n_ in partitions_up_to(order_exponent(m), args.n):
            va = a_coeff(m, n_, octx)
            vb = a_coeff(m, n_, octx, method="enumeration")
            checks.append(
                (
                    f"a-route M={format_partition(m)} N={format_partition(n_)}",
                    va == vb,
                    f"transversal {va}, enumeration {vb}",
                )
            )
    hctx = _hecke_ctx(args, memo)
    for l in partitions_up_to(maxoe, args.n):
        d = order_exponent(l)
        for dm in range(d + 1):
            for m in partitions_of_exponent(dm, args.n):
                for n_ in partitions_of_exponent(d - dm, args.n):
                    vc = c_coeff(m, n_, l, hctx)
                    vv = c_coeff(m, n_, l, hctx, verify=True)
                    checks.append(
                        (
                            f"c-route M={format_partition(m)} "
                            f"N={format_partition(n_)} L={format_partition(l)}",
                            vc == vv,
                            f"table {vc}, normalized count {vv}",
                        )
                    )


_SUITES = {
    "hom": [_suite_hom],
    "tp": [_suite_tp],
    "inverse": [_suite_inverse],
    "shimura": [_suite_shimura],
    "oracle": [_suite_oracle],
}
_SUITES["all"] = [
    _suite_hom,
    _suite_tp,
    _suite_inverse,
    _suite_shimura,
    _suite_oracle,
]


def _emit_checks(args, suite: str, checks: list) -> int:
    failures = [c for c in checks if not c[1]]
    if args.output == "json":
        print(
            json.dumps(
                {
                    "suite": suite,
                    "p": args.p,
                    "n": args.n,
                    "passed": not failures,
                    "checks": [
                        {"name": name, "passed": ok, "detail": detail}
                        for name, ok, detail in checks
                    ],
                }
            )
        )
    elif args.output == "csv":
        w = _csv_writer()
        w.writerow(["name", "passed", "detail"])
        for name, ok, detail in checks:
            w.writerow([name, "true" if ok else "false", detail])
    else:
        for name, ok, detail in checks:
            if ok:
                print(f"ok   {name}")
            else:
                print(f"FAIL {name}: {detail}")
        print(f"{len(checks)} checks, {len(failures)} failed")
    return EXIT_VERIFY if failures else EXIT_OK


def _cmd_verify(args) -> int:
    store, memo = _open_cache(args)
    checks: list = []
    for suite_fn in _SUITES[args.suite]:
        suite_fn(args, memo, checks)
    _close_cache(store, memo)
    return _emit_checks(args, args.suite, checks)


def _cmd_count_subgroups(args) -> int:
    r = args.trunc if args.trunc is not None else 1
    store, memo = _open_cache(args)
    amb = Ambient(args.p, args.n, r)
    by_type: dict = {}
    for s in enumerate_subgroups(amb, budget=args.budget):
        t = type_of(s)
        by_type[t] = by_type.get(t, 0) + 1
    total = sum(by_type.values())
    _close_cache(store, memo)
    ordered = sorted(by_type.items(), key=lambda kv: (order_exponent(kv[0]), kv[0]))
    if args.output == "json":
        print(
            json.dumps(
                {
                    "p": args.p,
                    "n": args.n,
                    "r": r,
                    "total": total,
                    "by_type": [
                        {"type": list(t), "count": c} for t, c in ordered
                    ],
                }
            )
        )
    elif args.output == "csv":
        w = _csv_writer()
        w.writerow(["type", "count"])
        for t, c in ordered:
            w.writerow([format_partition(t), str(c)])
    else:
        print(total)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    ns = argparse.Namespace(
        p=2,
        n=1,
        budget=args.budget,
        cache=None,
        output=args.output,
        split="first",
        trunc=None,
        max_order_exp=2,
        jobs=1,
    )
    checks: list = []
    for suite_fn in _SUITES["all"]:
        suite_fn(ns, {}, checks)
    return _emit_checks(ns, "selftest", checks)


# --- entry point -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckealg",
        description="Exact structure constants, transfers and checks "
        "for algebras of finite abelian p-groups of bounded rank.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ccoeff", help="structure constant c(M, N; L)")
    _add_common(sp)
    sp.add_argument("--M", required=True, help='partition literal, e.g. "[1]"')
    sp.add_argument("--N", required=True)
    sp.add_argument("--L", required=True)
    sp.set_defaults(func=_cmd_ccoeff)

    sp = sub.add_parser("acoeff", help="transfer coefficient a(M, N)")
    _add_common(sp)
    sp.add_argument("--M", required=True, help="class upstairs (rank n+1)")
    sp.add_argument("--N", required=True, help="class downstairs (rank n)")
    sp.set_defaults(func=_cmd_acoeff)

    sp = sub.add_parser("bcoeff", help="inverse-transfer coefficient b(B, A)")
    _add_common(sp)
    sp.add_argument("--B", required=True)
    sp.add_argument("--A", required=True)
    sp.set_defaults(func=_cmd_bcoeff)

    sp = sub.add_parser("mul", help="product of two elements")
    _add_common(sp)
    sp.add_argument("x", help='element literal, e.g. "1*[1] + 2*[]"')
    sp.add_argument("y")
    sp.set_defaults(func=_cmd_mul)

    sp = sub.add_parser("omega", help="transfer an element down one rank")
    _add_common(sp)
    sp.add_argument("x", help="element of the rank-(n+1) algebra")
    sp.set_defaults(func=_cmd_omega)

    sp = sub.add_parser("decompose", help="write an element in the generators T_k")
    _add_common(sp)
    sp.add_argument("x")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("table", help="tabulate coefficients")
    sp.add_argument("kind", choices=("c", "a", "b", "omega"))
    _add_common(sp)
    sp.set_defaults(func=_cmd_table)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument(
        "suite", choices=("hom", "tp", "inverse", "shimura", "oracle", "all")
    )
    _add_common(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser(
        "count-subgroups", help="count subgroups of (Z/p^r)^n, r from --trunc"
    )
    _add_common(sp)
    sp.set_defaults(func=_cmd_count_subgroups)

    sp = sub.add_parser("selftest", help="small fixed verification run")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--output", choices=("text", "json", "csv"), default="text")
    sp.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
