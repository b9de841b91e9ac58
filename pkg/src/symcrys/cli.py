"""Command-line front end.

Subcommands: crystal-graph, expand, coords, global-basis, bar-matrix,
multiplicity, verify.  All numeric output uses the canonical rational
function string format, and repeated runs produce byte-identical output.
Exit codes: 0 success, 1 counterexample/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .canonical import (
    bar_matrix,
    global_lower,
    global_upper,
    multiplicity_polys,
    q1_specialization,
    theta_block,
    typeA_block,
)
from .linalg import rank
from .multisegment import (
    Multisegment,
    Segment,
    cartan,
    cry_sort_key,
    enumerate_multisegments,
    epsilon as a_epsilon,
    etilde as a_etilde,
    ftilde as a_ftilde,
    signature_ops as a_signature_ops,
)
from .ratfunc import RatFunc
from .theta import (
    crystal_E,
    crystal_F,
    crystal_eps,
    enumerate_theta,
    theta_epsilon,
    theta_Etilde,
    theta_Ftilde,
    theta_signature_ops,
)
from .thetamodule import ThetaModule
from .wordalg import WordAlgebra, content_key


class UsageError(Exception):
    """Bad arguments or malformed input; exits with code 2."""


def parse_window(text):
    try:
        win = tuple(sorted(int(t) for t in text.split(",") if t.strip()))
    except ValueError:
        raise UsageError(f"cannot parse window {text!r}")
    if not win or any(i % 2 == 0 for i in win):
        raise UsageError(f"window must be nonempty odd integers, got {text!r}")
    return win


def require_symmetric(window):
    if set(window) != {-i for i in window}:
        raise UsageError(
            f"theta mode needs a negation-symmetric window, got {list(window)}"
        )
    return window


def mseg_from_arg(text):
    try:
        return Multisegment.from_json(text)
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as e:
        raise UsageError(f"cannot parse multisegment {text!r}: {e}")


def content_from_arg(text):
    try:
        obj = json.loads(text)
        return {int(k): int(v) for k, v in obj.items()}
    except (json.JSONDecodeError, ValueError, AttributeError) as e:
        raise UsageError(f"cannot parse content map {text!r}: {e}")


def mseg_label(m, compact):
    if not compact:
        return str(m)
    a = m.mult(-1, 1)
    b = m.mult(1, 1)
    return "{%d,%d}" % (a, b)


# ---------------------------------------------------------------------------
# crystal-graph
# ---------------------------------------------------------------------------

def build_graph(mode, window, max_degree):
    if mode == "theta":
        require_symmetric(window)
        F = crystal_F
    else:
        F = lambda i, m: a_ftilde(i, m)
    start = Multisegment.empty()
    nodes = {start}
    frontier = [start]
    edges = set()
    while frontier:
        nxt = []
        for m in frontier:
            if m.degree() >= max_degree:
                continue
            for i in window:
                m2 = F(i, m)
                if m2.degree() > max_degree:
                    continue
                edges.add((m, m2, i))
                if m2 not in nodes:
                    nodes.add(m2)
                    nxt.append(m2)
        frontier = nxt
    order = sorted(nodes, key=cry_sort_key, reverse=True)
    order = sorted(order, key=lambda m: m.degree())
    index = {m: k for k, m in enumerate(order)}
    edge_list = sorted(
        ((index[a], index[b], i) for a, b, i in edges),
        key=lambda e: (e[0], e[1], e[2]),
    )
    return order, edge_list


def cmd_crystal_graph(args):
    window = parse_window(args.window)
    nodes, edges = build_graph(args.mode, window, args.max_degree)
    compact = args.mode == "theta" and set(window) == {-1, 1}
    if args.format == "json":
        doc = {
            "mode": args.mode,
            "window": list(window),
            "max_degree": args.max_degree,
            "nodes": [m.to_json_obj() for m in nodes],
            "edges": [{"source": a, "target": b, "index": i} for a, b, i in edges],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "dot":
        lines = ["digraph crystal {"]
        for k, m in enumerate(nodes):
            lines.append(f'  n{k} [label="{mseg_label(m, compact)}"];')
        for a, b, i in edges:
            lines.append(f'  n{a} -> n{b} [label="{i}"];')
        lines.append("}")
        print("\n".join(lines))
    else:
        for k, m in enumerate(nodes):
            print(f"node {k}: {mseg_label(m, compact)}")
        for a, b, i in edges:
            print(f"edge {a} -> {b}  (index {i})")
    return 0


# ---------------------------------------------------------------------------
# expand / coords
# ---------------------------------------------------------------------------

def cmd_expand(args):
    window = parse_window(args.window)
    alg = WordAlgebra(window)
    m = mseg_from_arg(args.multisegment)
    for seg in m.entries:
        for k in seg.indices():
            if k not in window:
                raise UsageError(f"index {k} of segment {seg} outside window {list(window)}")
    vec = alg.pbw_element(m)
    if args.format == "json":
        obj = {
            ",".join(map(str, w)): str(c) for w, c in sorted(vec.terms.items())
        }
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(str(vec))
    return 0


def _coords_to_output(coords, fmt):
    items = sorted(coords.items(), key=lambda kv: cry_sort_key(kv[0]), reverse=True)
    if fmt == "json":
        print(json.dumps(
            [{"multisegment": m.to_json_obj(), "coefficient": str(c)} for m, c in items],
            indent=2,
        ))
    else:
        if not items:
            print("0")
        for m, c in items:
            print(f"{m}: {c}")


def _word_from_arg(text):
    try:
        letters = json.loads(text)
        return tuple(int(x) for x in letters)
    except (json.JSONDecodeError, ValueError, TypeError):
        raise UsageError(f"cannot parse word {text!r} (expect a JSON list of letters)")


def cmd_coords(args):
    window = parse_window(args.window)
    word = _word_from_arg(args.word)
    for k in word:
        if k not in window:
            raise UsageError(f"letter {k} outside window {list(window)}")
    if args.mode == "theta":
        module = ThetaModule(require_symmetric(window))
        v = module.from_words({word: RatFunc(1)})
        coords = module.theta_coords(v)
    else:
        alg = WordAlgebra(window)
        coords = alg.pbw_coords(alg.f(*word))
    _coords_to_output(coords, args.format)
    return 0


# ---------------------------------------------------------------------------
# bar-matrix / global-basis / multiplicity
# ---------------------------------------------------------------------------

def _block_context(args, content):
    window = parse_window(args.window)
    if args.mode == "theta":
        module = ThetaModule(require_symmetric(window))
        return theta_block(module, content)
    return typeA_block(WordAlgebra(window), content)


def _print_matrix(tm, fmt):
    if fmt == "json":
        print(json.dumps(tm.to_json_obj(), indent=2))
        return
    print(tm.label)
    names = [str(m) for m in tm.basis]
    cells = [[str(x) for x in row] for row in tm.entries]
    widths = [
        max(len(names[c]), max(len(cells[r][c]) for r in range(len(cells))))
        for c in range(len(names))
    ]
    head = " | ".join(n.rjust(w) for n, w in zip(names, widths))
    print(" " * (max(len(n) for n in names) + 3) + head)
    for r, row in enumerate(cells):
        lead = names[r].rjust(max(len(n) for n in names))
        print(f"{lead} : " + " | ".join(x.rjust(w) for x, w in zip(row, widths)))


def cmd_bar_matrix(args):
    ctx = _block_context(args, content_from_arg(args.content))
    _print_matrix(bar_matrix(ctx), args.format)
    return 0


def cmd_global_basis(args):
    ctx = _block_context(args, content_from_arg(args.content))
    C = global_lower(ctx)
    if args.upper:
        _print_matrix(global_upper(ctx, C), args.format)
    else:
        _print_matrix(C, args.format)
    return 0


def cmd_multiplicity(args):
    ctx = _block_context(args, content_from_arg(args.content))
    polys = multiplicity_polys(args.index, ctx, args.side)
    table, warnings = q1_specialization(polys)
    items = sorted(polys.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))
    if args.format == "json":
        print(json.dumps(
            [
                {
                    "b": str(b),
                    "b_prime": str(bp),
                    "poly": str(c),
                    "at_q1": str(table[(b, bp)]),
                }
                for (b, bp), c in items
            ],
            indent=2,
        ))
    else:
        for (b, bp), c in items:
            print(f"({b} ; {bp}): {c}   [q=1: {table[(b, bp)]}]")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _fail(report, msg):
    report.append(msg)


def suite_crystal_axioms(mode, window, max_degree):
    checked = 0
    fails = []
    if mode == "theta":
        require_symmetric(window)
        msegs = enumerate_theta(window, max_degree)
        eps_f, E_f, F_f = crystal_eps, crystal_E, crystal_F
    else:
        msegs = enumerate_multisegments(window, max_degree)
        eps_f, E_f, F_f = a_epsilon, a_etilde, a_ftilde
    for m in msegs:
        for i in window:
            eps = eps_f(i, m)
            e = E_f(i, m)
            if (eps == 0) != (e is None):
                _fail(fails, f"epsilon/Etilde mismatch at {m}, index {i}")
            if e is not None and F_f(i, e) != m:
                _fail(fails, f"F(E(m)) != m at {m}, index {i}")
            f = F_f(i, m)
            if f.degree() <= max_degree and E_f(i, f) != m:
                _fail(fails, f"E(F(m)) != m at {m}, index {i}")
            # epsilon equals the E-nilpotency degree
            n, cur = 0, m
            while True:
                cur = E_f(i, cur)
                if cur is None:
                    break
                n += 1
            if n != eps:
                _fail(fails, f"epsilon != nilpotency degree at {m}, index {i}")
            checked += 4
    return checked, fails


def suite_oracle_cross_check(mode, window, max_degree):
    checked = 0
    fails = []
    if mode == "theta":
        require_symmetric(window)
        for m in enumerate_theta(window, max_degree):
            for k in (i for i in window if i > 0):
                a = (theta_epsilon(k, m), theta_Etilde(k, m), theta_Ftilde(k, m))
                b = theta_signature_ops(k, m)
                checked += 1
                if a != b:
                    _fail(fails, f"formula/signature mismatch at {m}, index -{k}")
    else:
        for m in enumerate_multisegments(window, max_degree):
            for i in window:
                a = (a_epsilon(i, m), a_etilde(i, m), a_ftilde(i, m))
                b = a_signature_ops(i, m)
                checked += 1
                if a != b:
                    _fail(fails, f"formula/signature mismatch at {m}, index {i}")
    return checked, fails


def suite_serre(mode, window, max_degree):
    alg = WordAlgebra(window)
    checked = 0
    fails = []
    for i in window:
        for j in window:
            if abs(i - j) == 2:
                checked += 1
                if not alg.is_zero_in_uq(alg.serre_element(i, j)):
                    _fail(fails, f"Serre element at ({i},{j}) is nonzero")
            elif i != j:
                checked += 1
                if not alg.is_zero_in_uq(alg.distant_commutator(i, j)):
                    _fail(fails, f"distant commutator at ({i},{j}) is nonzero")
    return checked, fails


def _typeA_contents(window, max_degree):
    seen = set()
    for m in enumerate_multisegments(window, max_degree):
        if m.degree() >= 1:
            seen.add(content_key(m.content()))
    return sorted(seen)


def _theta_symcontents(window, max_degree):
    seen = set()
    for m in enumerate_theta(window, max_degree):
        if m.degree() >= 1:
            c = Counter()
            for k, n in m.content().items():
                c[abs(k)] += n
            seen.add(content_key(c))
    return sorted(seen)


def suite_gram(mode, window, max_degree):
    alg = WordAlgebra(window)
    checked = 0
    fails = []
    for ck in _typeA_contents(window, max_degree):
        g = alg.gram_matrix(dict(ck))
        checked += 1
        if rank(g) != len(g):
            _fail(fails, f"singular Gram matrix on content {dict(ck)}")
    return checked, fails


def suite_theta_dims(mode, window, max_degree):
    module = ThetaModule(require_symmetric(window))
    checked = 0
    fails = []
    for key in _theta_symcontents(window, max_degree):
        try:
            module.block(key)
            checked += 1
        except ArithmeticError as e:
            _fail(fails, str(e))
    return checked, fails


def suite_pbw_crystal_compat(mode, window, max_degree):
    checked = 0
    fails = []
    if mode == "theta":
        module = ThetaModule(require_symmetric(window))
        for m in enumerate_theta(window, max_degree):
            for i in window:
                coords = module.theta_coords(
                    module.theta_mod_ftilde(i, module.ptheta_vector(m))
                )
                target = crystal_F(i, m)
                checked += 1
                ok = target in coords
                for mm, c in coords.items():
                    d = c - RatFunc(1) if mm == target else c
                    if not (d.is_zero() or d.in_qZq()):
                        ok = False
                if not ok:
                    _fail(fails, f"module Ftilde incompatible with crystal at {m}, {i}")
    else:
        alg = WordAlgebra(window)
        for m in enumerate_multisegments(window, max_degree):
            for i in window:
                coords = alg.pbw_coords(alg.mod_ftilde(i, alg.pbw_element(m)))
                target = a_ftilde(i, m)
                checked += 1
                ok = target in coords
                for mm, c in coords.items():
                    d = c - RatFunc(1) if mm == target else c
                    if not (d.is_zero() or d.in_qZq()):
                        ok = False
                if not ok:
                    _fail(fails, f"modified ftilde incompatible with crystal at {m}, {i}")
    return checked, fails


def _contexts(mode, window, max_degree):
    if mode == "theta":
        module = ThetaModule(require_symmetric(window))
        return [theta_block(module, dict(ck)) for ck in _theta_symcontents(window, max_degree)]
    alg = WordAlgebra(window)
    return [typeA_block(alg, dict(ck)) for ck in _typeA_contents(window, max_degree)]


def suite_bar_triangular(mode, window, max_degree):
    checked = 0
    fails = []
    for ctx in _contexts(mode, window, max_degree):
        try:
            bar_matrix(ctx)
            checked += 1
        except ArithmeticError as e:
            _fail(fails, str(e))
    return checked, fails


def suite_global_basis(mode, window, max_degree):
    checked = 0
    fails = []
    for ctx in _contexts(mode, window, max_degree):
        try:
            C = global_lower(ctx)
            for c in range(len(C.basis)):
                for r in range(len(C.basis)):
                    x = C.entries[r][c]
                    if r == c:
                        ok = x == RatFunc(1)
                    else:
                        ok = x.is_zero() or x.in_qZq()
                    if not ok:
                        _fail(fails, f"{ctx.label}: C entry {x} at ({r},{c})")
            global_upper(ctx, C)
            checked += 1
        except ArithmeticError as e:
            _fail(fails, f"{ctx.label}: {e}")
    return checked, fails


def _commutation_holds(lhs, rhs, qc, delta, rows, n):
    Z = RatFunc.zero()
    for r in range(rows):
        for c in range(n):
            l = lhs[r][c] if lhs is not None else Z
            rr = rhs[r][c] if rhs is not None else Z
            if l != qc * rr + (delta if r == c else Z):
                return False
    return True


def suite_qboson_relations(mode, window, max_degree):
    """The commutation of lowering and raising operators on every block."""
    from .linalg import mat_mul

    checked = 0
    fails = []
    if mode == "theta":
        module = ThetaModule(require_symmetric(window))
        keys = [()] + _theta_symcontents(window, max_degree)
        for key in keys:
            n = len(module.block(key)["theta_basis"])
            for i in window:
                for j in window:
                    Fj = module.F_matrix(j, key)
                    sup = Counter(dict(key))
                    sup[abs(j)] += 1
                    supkey = content_key(sup)
                    lhs = (
                        mat_mul(module.E_matrix(i, supkey), Fj)
                        if dict(supkey).get(abs(i))
                        else None
                    )
                    sub = Counter(dict(key))
                    sub[abs(i)] -= 1
                    rhs = (
                        mat_mul(module.F_matrix(j, content_key(sub)), module.E_matrix(i, key))
                        if sub[abs(i)] >= 0
                        else None
                    )
                    qc = RatFunc.q_power(-cartan(i, j))
                    delta = RatFunc(1 if i == j else 0) + (
                        module.T_scalar(i, key) if j == -i else RatFunc.zero()
                    )
                    rows = len(lhs) if lhs is not None else (len(rhs) if rhs is not None else n)
                    checked += 1
                    if not _commutation_holds(lhs, rhs, qc, delta, rows, n):
                        _fail(fails, f"E_{i} F_{j} relation fails on block {dict(key)}")
    else:
        alg = WordAlgebra(window)
        keys = [()] + _typeA_contents(window, max_degree)
        for key in keys:
            n = len(alg.basis_of_content(dict(key)))
            for i in window:
                for j in window:
                    fj = alg.fmul_matrix(j, dict(key))
                    sup = Counter(dict(key))
                    sup[j] += 1
                    lhs = (
                        mat_mul(alg.eprime_matrix(i, sup), fj) if sup.get(i) else None
                    )
                    sub = Counter(dict(key))
                    sub[i] -= 1
                    rhs = (
                        mat_mul(alg.fmul_matrix(j, sub), alg.eprime_matrix(i, dict(key)))
                        if sub[i] >= 0
                        else None
                    )
                    qc = RatFunc.q_power(-cartan(i, j))
                    delta = RatFunc(1 if i == j else 0)
                    rows = len(lhs) if lhs is not None else (len(rhs) if rhs is not None else n)
                    checked += 1
                    if not _commutation_holds(lhs, rhs, qc, delta, rows, n):
                        _fail(fails, f"e'_{i} f_{j} relation fails on content {dict(key)}")
    return checked, fails


def suite_multiplicity_consistency(mode, window, max_degree):
    checked = 0
    fails = []
    for ctx in _contexts(mode, window, min(max_degree, 3)):
        for i in window:
            for side in ("E", "F"):
                try:
                    ctx.shifted(i, -1 if side == "E" else +1)
                except ValueError:
                    continue
                try:
                    polys = multiplicity_polys(i, ctx, side)
                    _, warnings = q1_specialization(polys)
                    for w in warnings:
                        print(f"warning: {ctx.label}: {w}", file=sys.stderr)
                    checked += 1
                except ArithmeticError as e:
                    _fail(fails, f"{ctx.label}, index {i}, side {side}: {e}")
    return checked, fails


SUITES = {
    "crystal-axioms": suite_crystal_axioms,
    "oracle-cross-check": suite_oracle_cross_check,
    "serre": suite_serre,
    "gram": suite_gram,
    "pbw-crystal-compat": suite_pbw_crystal_compat,
    "bar-triangular": suite_bar_triangular,
    "global-basis": suite_global_basis,
    "theta-dims": suite_theta_dims,
    "qboson-relations": suite_qboson_relations,
    "multiplicity-consistency": suite_multiplicity_consistency,
}


def cmd_verify(args):
    window = parse_window(args.window)
    names = [args.suite] if args.suite else sorted(SUITES)
    bad = 0
    for name in names:
        fn = SUITES.get(name)
        if fn is None:
            raise UsageError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        checked, fails = fn(args.mode, window, args.max_degree)
        status = "PASS" if not fails else "FAIL"
        print(f"{name}: {status} ({checked} identities checked)")
        if fails:
            bad += 1
            print(f"  counterexample: {fails[0]}")
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="symcrys",
        description="Crystal and canonical-basis computations on odd-index windows.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mode_default="theta"):
        sp.add_argument("--mode", choices=["typeA", "theta"], default=mode_default)
        sp.add_argument("--window", default="-3,-1,1,3", help="comma-separated odd indices")
        sp.add_argument("--max-degree", type=int, default=4)
        sp.add_argument("--format", choices=["text", "json", "dot"], default="text")
        sp.add_argument(
            "--parallel",
            type=int,
            default=1,
            help="accepted for compatibility; execution is serial",
        )

    sp = sub.add_parser("crystal-graph", help="breadth-first crystal graph from the empty multisegment")
    common(sp)
    sp.set_defaults(fn=cmd_crystal_graph)

    sp = sub.add_parser("expand", help="expand a multisegment's PBW vector into words")
    common(sp, mode_default="typeA")
    sp.add_argument("multisegment", help='JSON, e.g. [{"i":1,"j":3,"mult":1}]')
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("coords", help="coordinates of a word (applied to phi in theta mode)")
    common(sp, mode_default="typeA")
    sp.add_argument("word", help="JSON list of letters, e.g. [1,3]")
    sp.set_defaults(fn=cmd_coords)

    sp = sub.add_parser("bar-matrix", help="bar involution matrix of a block")
    common(sp, mode_default="typeA")
    sp.add_argument("content", help='index->count JSON map, e.g. {"1":1,"3":1}')
    sp.set_defaults(fn=cmd_bar_matrix)

    sp = sub.add_parser("global-basis", help="lower (or upper) global basis of a block")
    common(sp, mode_default="typeA")
    sp.add_argument("content", help='index->count JSON map')
    sp.add_argument("--upper", action="store_true")
    sp.set_defaults(fn=cmd_global_basis)

    sp = sub.add_parser("multiplicity", help="operator multiplicity polynomials on a block")
    common(sp, mode_default="typeA")
    sp.add_argument("content", help='index->count JSON map of the source block')
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--side", choices=["E", "F"], default="F")
    sp.set_defaults(fn=cmd_multiplicity)

    sp = sub.add_parser("verify", help="run an invariant suite")
    common(sp)
    sp.add_argument("--suite", choices=sorted(SUITES), default=None)
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.max_degree < 0:
            raise UsageError("--max-degree must be nonnegative")
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except Exception as e:  # verification failures carry exit code 1
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
