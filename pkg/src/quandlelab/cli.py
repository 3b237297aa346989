"""quandlelab command line.

Every subcommand prints either a short human summary or, with ``--json``,
one JSON document with sorted keys. Exit codes: 0 ok, 2 bad input, 3 a size
cap was hit, 4 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from collections import Counter
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from .abgroup import AbGroup
from .assoc import KerEpsGroup, adjoint_rep, extended_quandle, h2q_eisermann
from .catalog import DATA_ENV, data_dir, knot_diagrams, knot_names, load_knot, load_quandle, quandle_names
from .cosets import DEFAULT_MAX_COSETS
from .errors import InputError, QuandleLabError
from .quandle import check_axioms, inner_group, orbits, type_of
from .rack import DEFAULT_BASIS_CAP, Cocycle, RackComplex

# ---------------------------------------------------------------------------
# plumbing


@contextmanager
def stage(name: str):
    """Prefix errors raised inside the block with the stage name."""
    try:
        yield
    except QuandleLabError as exc:
        exc.stage = getattr(exc, "stage", None) or name
        raise


def _sha(obj) -> str:
    data = obj if isinstance(obj, bytes) else json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(data).hexdigest()


def _quandle_hash(Q) -> str:
    return _sha({"size": Q.n, "table": [list(r) for r in Q.op]})


def _knot_hash(D) -> str:
    return _sha(D.to_json())


def _jsonable(v):
    if isinstance(v, AbGroup):
        return {"rank": v.free_rank, "torsion": list(v.torsion), "text": str(v)}
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    return v


def _human(v) -> str:
    if isinstance(v, AbGroup):
        return str(v)
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_human(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(args, command: str, result: dict, inputs: dict) -> None:
    if args.json:
        doc = {"command": command, "inputs": inputs, "result": _jsonable(result), "version": __version__}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    for k, v in result.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            print(f"{k}:")
            for row in v:
                print(f"  {_human(row)}")
        else:
            print(f"{k}: {_human(v)}")


def _quandle(args):
    with stage("load quandle"):
        Q = load_quandle(args.quandle)
    return Q, {"quandle": args.quandle, "quandle_sha256": _quandle_hash(Q)}


def _knot(args):
    with stage("load knot"):
        D = load_knot(args.knot, args.diagram)
    return D, {"knot": args.knot, "diagram": args.diagram, "knot_sha256": _knot_hash(D)}


def _complex(Q, args, flavor="quandle", coefficients="pt") -> RackComplex:
    return RackComplex(Q, flavor, coefficients, basis_cap=args.max_basis, large=args.large)


# ---------------------------------------------------------------------------
# subcommands


def cmd_quandle(args) -> int:
    Q, inputs = _quandle(args)
    od = orbits(Q)
    res = {"order": Q.n}
    if Q.name:
        res["name"] = Q.name
    ax = check_axioms(Q)
    res["axioms"] = "ok" if ax.ok else f"fails ({ax.axiom}) at {list(ax.witness)}"
    res["orbits"] = od.count
    res["connected"] = od.connected
    res["type"] = type_of(Q)
    with stage("inner group"):
        res["inn"] = inner_group(Q).order
    if od.connected:
        with stage("Ker ε coset enumeration"):
            K = KerEpsGroup(Q, args.max_cosets)
        res["ker_eps"] = K.size
    with stage("H2Q chain complex"):
        res["h2q"] = _complex(Q, args).homology(2)
    with stage("H2Q Eisermann"):
        res["h2q_eisermann"] = h2q_eisermann(Q)
    if res["h2q"] != res["h2q_eisermann"]:
        res["h2q_agree"] = False
    if od.connected and args.extended:
        with stage("extended quandle"):
            Xt, _ = extended_quandle(Q, args.max_cosets, K)
            res["extended"] = {
                "order": Xt.n,
                "connected": orbits(Xt).connected,
                "type": type_of(Xt),
                "h2q": _complex(Xt, args).homology(2),
            }
    emit(args, "quandle", res, inputs)
    return 0 if ax.ok else 4


def cmd_homology(args) -> int:
    Q, inputs = _quandle(args)
    inputs.update(n=args.n, flavor=args.flavor, coefficients=args.coefficients)
    with stage(f"H_{args.n} ({args.flavor}, Y={args.coefficients})"):
        G = _complex(Q, args, args.flavor, args.coefficients).homology(args.n)
    if args.json:
        emit(args, "homology", {"homology": G}, inputs)
    else:
        print(G)
    return 0


def cmd_color(args) -> int:
    from .coloring import enumerate_colorings

    D, inputs = _knot(args)
    Q, qin = _quandle(args)
    inputs.update(qin)
    with stage("colouring search"):
        cols = enumerate_colorings(D, Q)
    res = {"count": len(cols), "trivial": sum(1 for C in cols if C.is_trivial())}
    if args.list:
        res["colorings"] = [[Q.labels[c] for c in C.colors] for C in cols]
    if args.json:
        emit(args, "color", res, inputs)
    else:
        print(res["count"])
        for row in res.get("colorings", []):
            print("  " + " ".join(row))
    return 0


def cmd_invariant(args) -> int:
    from .coloring import cocycle_invariant, enumerate_colorings, state_sum_class

    D, inputs = _knot(args)
    Q, qin = _quandle(args)
    inputs.update(qin)
    with stage("colouring search"):
        cols = enumerate_colorings(D, Q)
    res = {"colorings": len(cols)}
    if args.cocycle:
        p = Path(args.cocycle)
        if not p.is_file():
            raise InputError(f"cocycle file {args.cocycle} not found")
        raw = p.read_bytes()
        inputs["cocycle_sha256"] = _sha(raw)
        try:
            phi = Cocycle.from_json(json.loads(raw), Q.n)
        except json.JSONDecodeError as exc:
            raise InputError(f"{p}: {exc}") from exc
        with stage("cocycle invariant"):
            inv = cocycle_invariant(D, Q, phi, cols)
        res["modulus"] = phi.modulus
        res["invariant"] = [{"value": v, "count": c} for v, c in inv.items()]
    else:
        with stage("state-sum classes"):
            acc = Counter()
            for C in cols:
                v = state_sum_class(D, Q, C)
                acc[(v.torsion, v.free, v.order)] += 1
        res["h2q"] = _quandle_h2(Q, args)
        res["classes"] = [
            {"torsion": list(t), "free": list(f), "order": _jsonable(o), "count": c}
            for (t, f, o), c in sorted(acc.items(), key=lambda kv: repr(kv[0]))
        ]
    emit(args, "invariant", res, inputs)
    return 0


def _quandle_h2(Q, args) -> AbGroup:
    with stage("H2Q chain complex"):
        return _complex(Q, args).homology(2)


def cmd_colpoly(args) -> int:
    from .coloring import coloring_polynomial, enumerate_colorings

    D, inputs = _knot(args)
    Q, qin = _quandle(args)
    inputs.update(qin)
    with stage("colouring search"):
        cols = enumerate_colorings(D, Q)
    with stage("colouring polynomial"):
        poly = coloring_polynomial(D, Q, cols)
    terms = []
    for key, count in poly.items():
        terms.append({
            "components": [
                {"orbit": o, "torsion": list(v.torsion), "free": list(v.free), "order": _jsonable(v.order)}
                for o, v in key
            ],
            "count": count,
        })
    emit(args, "colpoly", {"colorings": len(cols), "terms": terms}, inputs)
    return 0


def cmd_cover(args) -> int:
    from .coloring import enumerate_colorings
    from .cover import branched_cover_presentation, equivariance_check, theta

    D, inputs = _knot(args)
    Q = None
    if args.quandle:
        Q, qin = _quandle(args)
        inputs.update(qin)
    fold = args.fold
    if fold is None:
        if Q is None:
            raise InputError("give --fold or --quandle")
        fold = type_of(Q)
    inputs["fold"] = fold
    with stage("cover presentation"):
        cov = branched_cover_presentation(D, fold, branched=not args.unbranched)
    with stage("cover homology"):
        res = {"h1": cov.h1()}
    if args.theta:
        if Q is None:
            raise InputError("--theta needs --quandle")
        t = type_of(Q)
        if fold != t:
            raise InputError(f"θ lives on the {t}-fold cover (type of {args.quandle}); got --fold {fold}")
        with stage("Ker ε coset enumeration"):
            R = adjoint_rep(Q, args.max_cosets)
        with stage("colouring search"):
            cols = [C for C in enumerate_colorings(D, Q) if not C.is_trivial()]
        well, equi = True, True
        orders = Counter()
        first = None
        with stage("θ"):
            for C in cols:
                r = theta(D, Q, C, R)
                e = equivariance_check(r)
                well &= r.well_defined
                equi &= e
                orders[r.image_order] += 1
                if first is None:
                    first = r
        th = {"colorings": len(cols), "well_defined": well, "equivariant": equi,
              "image_order": first.image_order if first else 1,
              "image_orders": {str(k): v for k, v in sorted(orders.items())}}
        res["theta"] = th
        if not (well and equi):
            emit(args, "cover", res, inputs)
            return 4
    emit(args, "cover", res, inputs)
    return 0


def cmd_verify(args) -> int:
    from .barcomplex import BarContext, verify_chain_map, verify_daiji, verify_lemma_tthm21, verify_lemma_tthm23

    Q, inputs = _quandle(args)
    samples = args.samples
    if samples is None and Q.n > 6 and not args.exhaustive:
        samples = 1000
    inputs["samples"] = samples
    with stage("adjoint representation"):
        R = adjoint_rep(Q, args.max_cosets)
        ctx = BarContext(Q, R)
    reports = {}
    with stage("appendix C"):
        reports["daiji"] = verify_daiji(Q, R)
        reports["chain_map"] = verify_chain_map(Q, ctx)
        reports["tthm21"] = verify_lemma_tthm21(Q, ctx)
        reports["tthm23"] = verify_lemma_tthm23(Q, ctx, samples=samples)
    ok = all(r.ok for r in reports.values())
    res = {"ok": ok, "type": ctx.t}
    for k, r in reports.items():
        res[k] = r.to_json() if args.json else {"ok": r.ok, "checked": r.checked}
    emit(args, "verify", res, inputs)
    return 0 if ok else 4


def cmd_catalog(args) -> int:
    res = {"data_dir": str(data_dir())}
    if args.kind in ("all", "quandles"):
        rows = []
        for name in quandle_names():
            Q = load_quandle(name)
            rows.append({"name": name, "order": Q.n, "type": type_of(Q), "connected": orbits(Q).connected})
        res["quandles"] = rows
        res["families"] = ["Sp_<q>_<n>", "Sphere_<q>_<n>", "R<n>", "Trivial<n>"]
    if args.kind in ("all", "knots"):
        rows = []
        for name in knot_names():
            ds = knot_diagrams(name)
            rows.append({"name": name, "diagrams": len(ds), "components": len(ds[0].components),
                         "crossings": [d.num_crossings for d in ds]})
        res["knots"] = rows
    if args.json:
        emit(args, "catalog", res, {})
        return 0
    print(f"data: {res['data_dir']}")
    for row in res.get("quandles", []):
        print(f"  {row['name']:<20} |X|={row['order']:<4} type={row['type']}"
              f"{'' if row['connected'] else '  (not connected)'}")
    if "families" in res:
        print("  families: " + ", ".join(res["families"]))
    for row in res.get("knots", []):
        print(f"  {row['name']:<20} {row['diagrams']} diagram(s), {row['components']} component(s)")
    return 0


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--large", action="store_true", help="lift the chain-basis size cap")
    common.add_argument("--max-basis", type=_positive, default=DEFAULT_BASIS_CAP, help="chain-basis size cap")
    common.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS, help="coset enumeration cap")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                        help="accepted for compatibility; results do not depend on it")

    p = argparse.ArgumentParser(prog="quandlelab", description="Quandle colouring invariants and homology.")
    p.add_argument("--version", action="version", version=f"quandlelab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quandle", parents=[common], help="summary of a quandle")
    q.add_argument("--quandle", "-q", required=True)
    q.add_argument("--extended", action="store_true", help="also build the extended quandle")
    q.set_defaults(func=cmd_quandle)

    h = sub.add_parser("homology", parents=[common], help="rack or quandle homology")
    h.add_argument("--quandle", "-q", required=True)
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--flavor", choices=["quandle", "rack"], default="quandle")
    h.add_argument("--coefficients", choices=["pt", "X"], default="pt")
    h.set_defaults(func=cmd_homology)

    def knot_args(s):
        s.add_argument("--knot", "-k", required=True, help="catalog name or PD JSON file")
        s.add_argument("--diagram", type=int, default=0, help="which stored diagram of a catalog knot")

    c = sub.add_parser("color", parents=[common], help="count colourings")
    knot_args(c)
    c.add_argument("--quandle", "-q", required=True)
    c.add_argument("--list", action="store_true", help="list the colourings")
    c.set_defaults(func=cmd_color)

    i = sub.add_parser("invariant", parents=[common], help="cocycle invariant or state-sum classes")
    knot_args(i)
    i.add_argument("--quandle", "-q", required=True)
    i.add_argument("--cocycle", help="cocycle JSON file {modulus, values}")
    i.set_defaults(func=cmd_invariant)

    cp = sub.add_parser("colpoly", parents=[common], help="colouring polynomial")
    knot_args(cp)
    cp.add_argument("--quandle", "-q", required=True)
    cp.set_defaults(func=cmd_colpoly)

    cv = sub.add_parser("cover", parents=[common], help="cyclic branched cover and θ")
    knot_args(cv)
    cv.add_argument("--fold", type=_positive)
    cv.add_argument("--quandle", "-q")
    cv.add_argument("--theta", action="store_true")
    cv.add_argument("--unbranched", action="store_true", help="omit the last branching relator")
    cv.set_defaults(func=cmd_cover)

    v = sub.add_parser("verify", parents=[common], help="check the bar-complex identities")
    v.add_argument("target", choices=["appendixC"])
    v.add_argument("--quandle", "-q", required=True)
    v.add_argument("--samples", type=_positive, help="random triples for the degree-3 check")
    v.add_argument("--exhaustive", action="store_true", help="no sampling even for large quandles")
    v.set_defaults(func=cmd_verify)

    ca = sub.add_parser("catalog", parents=[common], help=f"list built-in data (override with {DATA_ENV})")
    ca.add_argument("kind", nargs="?", choices=["all", "quandles", "knots"], default="all")
    ca.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QuandleLabError as exc:
        where = getattr(exc, "stage", None)
        msg = f"{where}: {exc}" if where else str(exc)
        print(f"quandlelab {args.command}: error: {msg}", file=sys.stderr)
        if args.json:
            doc = {"command": args.command, "error": {"stage": where, "message": str(exc),
                                                     "kind": type(exc).__name__, "exit_code": exc.exit_code}}
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
