"""``bracelab`` command line.

Exit codes: 0 success or property true, 1 checked property false,
2 invalid input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import config
from .brace import BraceValidationError, abelian_brace, direct_product, group_shape
from .enumeration import AbelianGroupSpec, enumerate_braces
from .extraspecial import FamilySpec, brace_from_form, classify_strong, family, recognize_extraspecial
from .io import BraceDocument, DocumentError, form_to_dict, load_brace, parse_form
from .report import analyze
from .substructures import all_subbraces, socle_fix_centre
from .verify import THEOREMS, run
from .ybe import associated_solution, check_solution

OK, FALSE, INVALID, CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(INVALID)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    chosen = [args.family is not None, args.abelian is not None, args.from_form is not None, args.product is not None]
    if sum(chosen) != 1:
        raise DocumentError("give exactly one of --family, --abelian, --from-form, --product")
    meta: dict = {}
    if args.family is not None:
        if args.m is None or args.p is None:
            raise DocumentError("--family needs --m and --p")
        spec = FamilySpec(args.family, args.m, args.p)
        config.enforce("max_order", spec.order)
        A = family(spec)
        meta["source"] = {"family": spec.family, "m": spec.m, "p": spec.p}
    elif args.abelian is not None:
        factors = [int(f) for f in args.abelian.replace("x", ",").split(",") if f.strip()]
        if any(f < 2 for f in factors):
            raise DocumentError("cyclic factors must be at least 2")
        config.enforce("max_order", math.prod(factors))
        A = abelian_brace(factors, name="x".join(f"C{f}" for f in factors) or "C1")
        meta["source"] = {"abelian": factors}
    elif args.from_form is not None:
        phi = parse_form(args.from_form)
        config.enforce("max_order", phi.p ** (phi.dim + 1))
        A = brace_from_form(phi)
        meta["source"] = {"form": form_to_dict(phi)}
    else:
        left, right = (load_brace(f) for f in args.product)
        A = direct_product(left, right)
    _emit(BraceDocument.from_brace(A, meta).dumps(), args.output)
    return OK


def cmd_validate(args) -> int:
    doc = BraceDocument.loads(Path(args.file).read_text())
    try:
        A = doc.to_brace()
    except BraceValidationError as exc:
        print(f"invalid brace: {exc}")
        return FALSE
    print(f"valid left brace of order {A.n}, additive group {A.additive_shape}")
    return OK


def cmd_analyze(args) -> int:
    A = load_brace(args.file)
    report = analyze(A)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(report.render(A))
    return OK


def cmd_subbraces(args) -> int:
    A = load_brace(args.file)
    subs = all_subbraces(A)
    if args.json:
        print(json.dumps([{"elements": [int(x) for x in s.mask.elements], "ideal": s.is_ideal} for s in subs]))
        return OK
    for s in subs:
        labels = ", ".join(A.label(int(x)) for x in s.mask.elements)
        print(f"order {len(s):>4}  {'ideal' if s.is_ideal else 'not ideal':9}  {{{labels}}}")
    print(f"{len(subs)} subbraces, {sum(s.is_ideal for s in subs)} ideals")
    return OK


def cmd_enumerate(args) -> int:
    G = AbelianGroupSpec.parse(args.additive)
    braces = enumerate_braces(G, up_to_iso=args.up_to_iso)
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, B in enumerate(braces):
            (out / f"brace_{i:04d}.json").write_text(BraceDocument.from_brace(B).dumps())
    for i, B in enumerate(braces):
        if np.array_equal(B.mul, B.mul.T):
            mult = "x".join(f"C{f}" for f in group_shape(B.mul_order)) or "C1"
        else:
            mult = "non-abelian"
        soc = socle_fix_centre(B)[0]
        print(f"#{i}  {'trivial' if B.is_abelian() else 'non-trivial':11}  (A,.) {mult:12}  |Soc| = {len(soc)}")
    print(f"{len(braces)} braces on {G}{' up to isomorphism' if args.up_to_iso else ''}")
    return OK


def cmd_classify(args) -> int:
    A = load_brace(args.file)
    cert = recognize_extraspecial(A)
    if cert is None or not cert.strong:
        print("not a strong extraspecial brace")
        return FALSE
    spec, hom = classify_strong(A)
    print(f"{spec}  isomorphism: {hom.map.tolist()}")
    return OK


def cmd_ybe(args) -> int:
    A = load_brace(args.file)
    config.enforce("ybe", A.n)
    r = check_solution(associated_solution(A))
    print(f"braid: {r.braid}")
    print(f"involutive: {r.involutive}")
    print(f"nondegenerate: {r.nondegenerate}")
    for name, w in (("braid", r.braid_witness), ("involutive", r.involutive_witness),
                    ("nondegenerate", r.nondegenerate_witness)):
        if w is not None:
            print(f"{name} witness: {w}")
    return OK if r.ok else FALSE


def cmd_verify(args) -> int:
    if args.theorem not in THEOREMS:
        print(f"unknown theorem {args.theorem!r}; choose from {', '.join(THEOREMS)}", file=sys.stderr)
        return INVALID
    res = run(args.theorem, args.max_order)
    print(res.summary())
    for note in res.notes:
        print(f"  {note}")
    for failure in res.failures[1:]:
        print(f"  also: {failure}")
    return OK if res.passed else FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bracelab", description="Finite left braces: construction, analysis, verification.")
    parser.add_argument("--raise-caps", type=int, metavar="N",
                        help="replace every size cap by N (same as BRACELAB_MAX_ORDER); runtime grows quickly")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="write a brace document")
    p.add_argument("--family", choices=("E0", "E1", "E2"))
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--abelian", metavar="F1,F2,...")
    p.add_argument("--from-form", metavar="FILE|diag(a,b)@Fp")
    p.add_argument("--product", nargs=2, metavar=("A.json", "B.json"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    for name, func, helptext in (
        ("validate", cmd_validate, "check the brace axioms of a document"),
        ("analyze", cmd_analyze, "full structural report"),
        ("subbraces", cmd_subbraces, "list every subbrace"),
        ("classify", cmd_classify, "name the family of a strong extraspecial brace"),
        ("ybe", cmd_ybe, "check the associated Yang-Baxter solution"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        if name in ("analyze", "subbraces"):
            p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", help="all braces on an abelian group")
    p.add_argument("--additive", required=True, metavar="F1,F2,...")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run one structural check")
    p.add_argument("--theorem", required=True, metavar="NAME", help=", ".join(THEOREMS))
    p.add_argument("--max-order", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.raise_caps is not None:
        os.environ["BRACELAB_MAX_ORDER"] = str(args.raise_caps)
    try:
        return args.func(args)
    except config.CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return CAP
    except (DocumentError, BraceValidationError, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
