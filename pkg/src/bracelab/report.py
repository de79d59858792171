"""The full analysis of one brace, as a plain record with text and JSON renderings."""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .brace import FiniteBrace
from .extraspecial import classify_strong, extract_form, recognize_extraspecial
from .masks import SubsetMask
from .series import SERIES_KINDS, is_dedekind, nilpotency_report
from .substructures import socle_fix_centre
from .ybe import associated_solution, check_solution


@dataclass(frozen=True)
class AnalysisReport:
    order: int
    additive_shape: tuple[int, ...]
    abelian: bool
    socle: SubsetMask
    fix: SubsetMask
    centre: SubsetMask
    series: dict
    nilpotency: dict
    dedekind: bool
    dedekind_witness: SubsetMask | None
    extraspecial: dict | None
    ybe: dict

    def to_dict(self) -> dict:
        ids = lambda m: [int(x) for x in m.elements]  # noqa: E731
        return {
            "order": self.order,
            "additive_shape": list(self.additive_shape),
            "abelian": self.abelian,
            "socle": ids(self.socle),
            "fix": ids(self.fix),
            "centre": ids(self.centre),
            "series": {k: [ids(t) for t in chain.terms] for k, chain in self.series.items()},
            "nilpotency": self.nilpotency,
            "dedekind": self.dedekind,
            "dedekind_witness": None if self.dedekind_witness is None else ids(self.dedekind_witness),
            "extraspecial": self.extraspecial,
            "ybe": self.ybe,
        }

    def render(self, A: FiniteBrace) -> str:
        def show(m: SubsetMask) -> str:
            els = [A.label(int(x)) for x in m.elements]
            if len(els) > 12:
                els = els[:12] + [f"... ({len(m)} elements)"]
            return "{" + ", ".join(els) + "}"

        lines = [
            f"order: {self.order}  additive group: {' x '.join(f'C{f}' for f in self.additive_shape) or 'C1'}",
            f"abelian (trivial brace): {self.abelian}",
            f"Soc: {show(self.socle)}",
            f"Fix: {show(self.fix)}",
            f"centre: {show(self.centre)}",
        ]
        for kind, chain in self.series.items():
            sizes = " ".join(str(len(t)) for t in chain.terms)
            lines.append(f"{kind} series orders: {sizes}  (length {chain.length}, terminal {chain.reached_terminal})")
        for k, v in self.nilpotency.items():
            lines.append(f"{k}: {v}")
        lines.append(f"dedekind: {self.dedekind}")
        if self.dedekind_witness is not None:
            lines.append(f"  non-ideal subbrace: {show(self.dedekind_witness)}")
        if self.extraspecial is None:
            lines.append("extraspecial: no")
        else:
            ex = self.extraspecial
            lines.append(f"extraspecial: c = {ex['c_label']}, strong = {ex['strong']}, form = {ex['form']}")
            if ex.get("classification"):
                lines.append(f"  classification: {ex['classification']}")
        y = self.ybe
        lines.append(f"ybe: braid {y['braid']}, involutive {y['involutive']}, nondegenerate {y['nondegenerate']}")
        return "\n".join(lines)


def analyze(A: FiniteBrace) -> AnalysisReport:
    soc, fix, zeta = socle_fix_centre(A)
    nil = nilpotency_report(A)
    dedekind, witness = is_dedekind(A)
    extraspecial = None
    cert = recognize_extraspecial(A)
    if cert is not None:
        form = extract_form(A, cert)
        extraspecial = {
            "c": cert.c,
            "c_label": A.label(cert.c),
            "strong": cert.strong,
            "form": [list(r) for r in form.matrix],
            "classification": None,
        }
        p = int(A.add_order[cert.c])
        if cert.strong and A.n <= p**3:
            spec, hom = classify_strong(A)
            extraspecial["classification"] = str(spec)
            extraspecial["isomorphism"] = [int(x) for x in hom.map]
    config.enforce("ybe", A.n)
    report = check_solution(associated_solution(A))
    as_level = lambda v: {"holds": v.holds, "level": v.level}  # noqa: E731
    return AnalysisReport(
        order=A.n,
        additive_shape=A.additive_shape,
        abelian=A.is_abelian(),
        socle=soc,
        fix=fix,
        centre=zeta,
        series={k: nil.series[k] for k in SERIES_KINDS},
        nilpotency={
            "left_nilpotent": as_level(nil.left_nilpotent),
            "right_nilpotent": as_level(nil.right_nilpotent),
            "centrally_nilpotent": as_level(nil.centrally_nilpotent),
            "multipermutation_level": nil.multipermutation_level,
        },
        dedekind=dedekind,
        dedekind_witness=None if witness is None else witness.mask,
        extraspecial=extraspecial,
        ybe={
            "braid": report.braid,
            "involutive": report.involutive,
            "nondegenerate": report.nondegenerate,
            "witnesses": {
                "braid": report.braid_witness,
                "involutive": report.involutive_witness,
                "nondegenerate": report.nondegenerate_witness,
            },
        },
    )
