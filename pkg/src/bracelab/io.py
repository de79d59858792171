"""JSON interchange: brace documents and bilinear-form files."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import config
from .brace import FiniteBrace, TupleCodec
from .fp import BilinearForm, is_prime


class DocumentError(ValueError):
    """A document or form file is malformed."""


@dataclass
class BraceDocument:
    order: int
    add: list[list[int]]
    mul: list[list[int]]
    labels: list[str] | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_brace(cls, A: FiniteBrace, meta: dict | None = None) -> "BraceDocument":
        meta = dict(meta or {})
        if A.name:
            meta.setdefault("name", A.name)
        labels = None
        if A.codec is not None:
            meta["radices"] = list(A.codec.radices)
            meta["cyclic"] = A.codec.cyclic
            labels = [A.label(i) for i in range(A.n)]
        return cls(A.n, A.add.tolist(), A.mul.tolist(), labels, meta)

    def to_brace(self) -> FiniteBrace:
        """Validate the tables and rebuild the brace (with its codec if recorded)."""
        n = self.order
        if not isinstance(n, int) or n < 1:
            raise DocumentError("order must be a positive integer")
        config.enforce("max_order", n)
        try:
            add = np.array(self.add, dtype=np.int64)
            mul = np.array(self.mul, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"tables are not integer matrices: {exc}") from None
        if add.shape != (n, n) or mul.shape != (n, n):
            raise DocumentError(f"tables must be {n} x {n}")
        if self.labels is not None and len(self.labels) != n:
            raise DocumentError(f"{len(self.labels)} labels for {n} elements")
        codec = None
        if "radices" in self.meta:
            radices = tuple(int(r) for r in self.meta["radices"])
            codec = TupleCodec(radices, cyclic=bool(self.meta.get("cyclic", True)))
            if codec.size != n:
                raise DocumentError("meta radices do not multiply to the order")
        return FiniteBrace(add, mul, codec=codec, name=self.meta.get("name"))

    def to_dict(self) -> dict:
        out = {"order": self.order, "add": self.add, "mul": self.mul}
        if self.labels is not None:
            out["labels"] = self.labels
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        # one table row per line keeps files diffable and the output byte-stable
        rows = lambda t: "[\n" + ",\n".join("    " + json.dumps(r) for r in t) + "\n  ]"  # noqa: E731
        parts = [f'  "order": {self.order}', f'  "add": {rows(self.add)}', f'  "mul": {rows(self.mul)}']
        if self.labels is not None:
            parts.append(f'  "labels": {json.dumps(self.labels)}')
        if self.meta:
            parts.append(f'  "meta": {json.dumps(self.meta, sort_keys=True)}')
        return "{\n" + ",\n".join(parts) + "\n}\n"

    @classmethod
    def loads(cls, text: str) -> "BraceDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"not JSON: {exc}") from None
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        missing = {"order", "add", "mul"} - data.keys()
        if missing:
            raise DocumentError(f"missing fields {sorted(missing)}")
        unknown = data.keys() - {"order", "add", "mul", "labels", "meta"}
        if unknown:
            raise DocumentError(f"unknown fields {sorted(unknown)}")
        return cls(data["order"], data["add"], data["mul"], data.get("labels"), data.get("meta") or {})


def load_brace(path: str | Path) -> FiniteBrace:
    return BraceDocument.loads(Path(path).read_text()).to_brace()


def save_brace(A: FiniteBrace, path: str | Path, meta: dict | None = None) -> None:
    Path(path).write_text(BraceDocument.from_brace(A, meta).dumps())


_INLINE = re.compile(r"^\s*(?P<body>diag\([^)]*\)|\[.*\])\s*@\s*F(?P<p>\d+)\s*$")


def form_from_dict(data: dict) -> BilinearForm:
    try:
        p, dim, matrix = int(data["p"]), int(data["dim"]), data["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"form needs integer p, dim and a matrix: {exc}") from None
    if not is_prime(p):
        raise DocumentError(f"p = {p} is not prime")
    if len(matrix) != dim or any(len(row) != dim for row in matrix):
        raise DocumentError(f"matrix is not {dim} x {dim}")
    return BilinearForm(p, tuple(tuple(int(v) for v in row) for row in matrix))


def parse_form(text: str) -> BilinearForm:
    """A form file path, or inline ``diag(a,b)@Fp`` / ``[[a,b],[c,d]]@Fp``."""
    m = _INLINE.match(text)
    if m is None:
        path = Path(text)
        if not path.is_file():
            raise DocumentError(f"{text!r} is neither a form file nor an inline form")
        try:
            return form_from_dict(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise DocumentError(f"form file is not JSON: {exc}") from None
    body, p = m["body"], int(m["p"])
    try:
        if body.startswith("diag"):
            diag = [int(v) for v in body[5:-1].split(",") if v.strip()]
            matrix = [[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))]
        else:
            matrix = json.loads(body)
    except ValueError as exc:
        raise DocumentError(f"cannot read inline form {text!r}: {exc}") from None
    return form_from_dict({"p": p, "dim": len(matrix), "matrix": matrix})


def form_to_dict(phi: BilinearForm) -> dict:
    return {"p": phi.p, "dim": phi.dim, "matrix": [list(r) for r in phi.matrix]}
