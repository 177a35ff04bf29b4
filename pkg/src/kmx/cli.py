"""Command-line front end.

Subcommands: classify, roots, affinize, weights, gram, unitarity, twist.
Exit codes: 0 success, 1 validation/rejection (the violated rule is
printed), 2 resource caps exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._ground import Q, rat_str
from .cartan import GCM, catalog_matrix, classify, principal_minors, symmetrize, validate_gcm
from .errors import KmxError, RejectionError, ResourceError
from .finite_lie import build_algebra, fundamental_weights_finite
from .affine import affinize, delta_and_lambda0, fundamental_weights_affine, twisted_decomposition
from .reps import (
    CONVENTIONS,
    ElementarySpec,
    IntegrableWeight,
    MomentSequence,
    elementary_functional,
    exceptional_functional,
    highest_weight_functional,
    integrable_functional,
    verify_unitarity,
)
from .scalars import Scalar, scalar_from_json
from .verma import DEFAULT_BLOCK_CAP, gram_block

MATRIX_PRINT_CAP = 12


def _parse_matrix(text):
    rows = json.loads(text)
    if not isinstance(rows, list):
        raise RejectionError("bad-matrix", "matrix must be a JSON list of rows")
    return rows


def _resolve_gcm(args) -> GCM:
    if getattr(args, "matrix", None):
        return validate_gcm(_parse_matrix(args.matrix))
    name = getattr(args, "algebra", None)
    if not name:
        raise RejectionError("missing-algebra", "pass --algebra NAME or --matrix JSON")
    if name.endswith("~"):
        return affinize(build_algebra(name[:-1])).gcm
    return validate_gcm(catalog_matrix(name))


def _resolve_su(name: str):
    """Parse 'su(n,1)' into n."""
    t = name.replace(" ", "")
    if t.startswith("su(") and t.endswith(",1)"):
        return int(t[3:-3])
    return None


def _load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _context_from_spec(spec, args):
    kind = spec.get("type")
    if kind == "integrable":
        name = args.algebra or spec.get("algebra")
        if not name or not name.endswith("~"):
            raise RejectionError("missing-algebra", "integrable specs need an affine algebra (name ending in ~)")
        aff = affinize(build_algebra(name[:-1]))
        w = IntegrableWeight.make(spec["m"], spec.get("d", 0))
        return integrable_functional(aff, w)
    if kind == "highest_weight":
        name = args.algebra or spec.get("algebra")
        if name and name.endswith("~"):
            aff = affinize(build_algebra(name[:-1]))
            rows, affine = aff.gcm.entries, True
        else:
            rows, affine = _resolve_gcm(args).entries, False
        values = [Q(str(v)) for v in spec["values"]]
        signs = spec.get("omega_signs")
        return highest_weight_functional(rows, values, d=Q(str(spec.get("d", 0))),
                                         omega_signs=signs, affine=affine)
    if kind == "elementary":
        n = int(spec["n"])
        table = [(int(i), int(k), scalar_from_json(v)) for i, k, v in spec.get("table", [])]
        es = ElementarySpec.make(
            [[Q(str(x)) for x in w] for w in spec["weights"]],
            [scalar_from_json(p) for p in spec["points"]],
            table=table,
            c=Q(str(spec.get("c", 0))),
            d=Q(str(spec.get("d", 0))),
            declared_unitarizable=bool(spec.get("declared_unitarizable", True)),
        )
        return elementary_functional(es, n)
    if kind == "exceptional":
        n = int(spec["n"])
        mom = MomentSequence.make(
            {int(k): scalar_from_json(v) for k, v in spec["moments"].items()},
            support=spec.get("support"),
            declared_infinitely_supported=bool(spec.get("declared_infinitely_supported", True)),
        )
        return exceptional_functional(mom, n)
    raise RejectionError("bad-spec", f"unknown functional type {kind!r}")


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _print_block_table(block_json):
    drop = ",".join(str(x) for x in block_json["drop"])
    print(f"block drop=({drop}) dim={block_json['dim']} "
          f"verdict={block_json['verdict']['kind']} rank={block_json['verdict']['rank']} "
          f"exact={block_json['exact']}")
    if block_json["dim"] <= MATRIX_PRINT_CAP:
        for row in block_json["matrix"]:
            print("   [" + ", ".join(_sc_str(x) for x in row) + "]")


def _sc_str(x):
    if isinstance(x, dict):
        if "approx" in x:
            return f"~({x['approx'][0]}+{x['approx'][1]}j)"
        return f"{x['re']}+{x['im']}i"
    return str(x)


# -- subcommands -----------------------------------------------------------------


def _cmd_classify(args):
    gcm = _resolve_gcm(args)
    out = {
        "class": gcm.cls.value,
        "n": gcm.n,
        "leading_principal_minors": [rat_str(m) for m in principal_minors(gcm)],
    }
    if gcm.cls.value in ("finite", "affine"):
        out["symmetrizer"] = [rat_str(x) for x in symmetrize(gcm)]
    if args.format == "table":
        print(out["class"])
    else:
        _emit(out, args)
    return 0


def _cmd_roots(args):
    alg = build_algebra(_resolve_gcm(args))
    out = {
        "rank": alg.rank,
        "dim": alg.dim,
        "positive_roots": [list(r) for r in alg.pos],
        "highest_root": list(alg.highest_root),
    }
    if args.format == "table":
        print(f"rank {alg.rank}, dim {alg.dim}, {len(alg.pos)} positive roots")
        for r in alg.pos:
            print("  " + " ".join(str(c) for c in r))
    else:
        _emit(out, args)
    return 0


def _cmd_affinize(args):
    alg = build_algebra(args.algebra.rstrip("~") if args.algebra else _resolve_gcm(args))
    aff = affinize(alg)
    delta, lam0, marks = delta_and_lambda0(aff.gcm)
    out = {
        "extended_cartan": [list(r) for r in aff.gcm.entries],
        "class": aff.gcm.cls.value,
        "marks": [rat_str(x) for x in aff.marks],
        "dual_marks": [rat_str(x) for x in aff.marks_dual],
        "generators": {
            "e0": aff.e[0].to_json(),
            "f0": aff.f[0].to_json(),
            "h0": aff.h[0].to_json(),
        },
        "lambda0": lam0.to_json(),
        "delta": delta.to_json(),
    }
    if args.format == "table":
        print(json.dumps(out["extended_cartan"]))
    else:
        _emit(out, args)
    return 0


def _cmd_weights(args):
    name = args.algebra or ""
    alg = build_algebra(name.rstrip("~") if name else _resolve_gcm(args))
    finite = fundamental_weights_finite(alg.gcm)
    aff = affinize(alg)
    weights, mus = fundamental_weights_affine(aff)
    out = {
        "finite_fundamental_weights": [[rat_str(x) for x in w] for w in finite],
        "mu": [rat_str(m) for m in mus],
        "affine_fundamental_weights": [w.to_json() for w in weights],
    }
    if args.format == "table":
        print("mu = " + " ".join(out["mu"]))
    else:
        _emit(out, args)
    return 0


def _cmd_gram(args):
    spec = _load_spec(args.spec)
    ctx = _context_from_spec(spec, args)
    drop = tuple(int(x) for x in args.drop.split(","))
    block = gram_block(ctx, drop, window=args.window, cap=args.cap)
    bj = block.to_json()
    if args.format == "table":
        _print_block_table(bj)
    else:
        _emit(bj, args)
    return 0


def _cmd_unitarity(args):
    spec = _load_spec(args.spec)
    ctx = _context_from_spec(spec, args)
    report = verify_unitarity(ctx, args.depth, window=args.window, cap=args.cap)
    rj = report.to_json()
    if args.format == "table":
        print(f"context: {rj['context'].get('type')}  exact={rj['exact']}")
        for b in rj["blocks"]:
            _print_block_table(b)
        print("overall:", rj["overall"])
    else:
        _emit(rj, args)
    return 0


def _cmd_twist(args):
    alg = build_algebra(_resolve_gcm(args))
    perm = tuple(int(x) - 1 for x in args.perm.split(","))
    dec = twisted_decomposition(alg, perm, args.q)
    out = {"q": dec.q, "dims": list(dec.dims), "field": dec.field}
    if args.format == "table":
        print("dims: " + " ".join(str(d) for d in dec.dims))
    else:
        _emit(out, args)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="kmx",
        description="Exact workbench for affine Kac-Moody algebras and unitarity of "
                    "highest weight representations at finite depth.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, spec=False, depth=False):
        p.add_argument("--algebra", help="catalog name (A1..A9, B2..B4, C2..C4, D4, G2, "
                                         "su(n,1); append ~ for the affine extension)")
        p.add_argument("--matrix", help="inline JSON Cartan matrix")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--out", help="write the JSON report to this file")
        p.add_argument("--cap", type=int, default=DEFAULT_BLOCK_CAP, help="block word cap")
        p.add_argument("--samples", type=int, default=200, help="consistency sample budget")
        p.add_argument("--epsilon", type=float, default=Scalar.DEFAULT_EPS)
        if spec:
            p.add_argument("--spec", required=True, help="functional spec JSON file")
            p.add_argument("--window", type=int, default=None, help="token degree window (parabolic modes)")
        if depth:
            p.add_argument("--depth", type=int, default=3, help="maximum total weight drop")

    p = sub.add_parser("classify", help="validate and classify a Cartan matrix")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("roots", help="root system of a finite algebra")
    common(p)
    p.set_defaults(fn=_cmd_roots)

    p = sub.add_parser("affinize", help="extended Cartan matrix and affine generators")
    common(p)
    p.set_defaults(fn=_cmd_affinize)

    p = sub.add_parser("weights", help="fundamental weights, finite and affine")
    common(p)
    p.set_defaults(fn=_cmd_weights)

    p = sub.add_parser("gram", help="one weight block: matrix, verdict, kernel")
    common(p, spec=True)
    p.add_argument("--drop", required=True, help="comma-separated weight drop, e.g. 1,1")
    p.set_defaults(fn=_cmd_gram)

    p = sub.add_parser("unitarity", help="sweep all blocks up to a depth")
    common(p, spec=True, depth=True)
    p.set_defaults(fn=_cmd_unitarity)

    p = sub.add_parser("twist", help="diagram-automorphism eigenspace decomposition")
    common(p)
    p.add_argument("--perm", required=True, help="1-based node permutation, e.g. 2,1")
    p.add_argument("--q", type=int, required=True, choices=[2, 3])
    p.set_defaults(fn=_cmd_twist)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except RejectionError as exc:
        print(f"rejected ({exc.rule}): {exc.message}", file=sys.stderr)
        return 1
    except KmxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
