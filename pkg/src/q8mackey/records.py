"""Coefficient records: one value of the graded coefficient ring with provenance."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Literal

from . import tables
from .builders import (
    Grading,
    Piece,
    ReductionCertificate,
    assemble_theorem,
    canonicalize,
    theorem_piece_list,
)
from .chains import homology
from .linalg import AbelianGroup
from .modules import fixed_points_z2

Mode = Literal["homology", "cohomology"]
Engine = Literal["theorem", "cellular", "closed-form"]
ENGINES: tuple[str, ...] = ("theorem", "cellular", "closed-form")
MODES: tuple[str, ...] = ("homology", "cohomology")


@dataclass(frozen=True)
class CoefficientRecord:
    grading: Grading
    mode: Mode
    value: AbelianGroup
    provenance: Literal["closed-form", "computed", "outside-published-table"]
    certificate: ReductionCertificate
    engine: str = "theorem"

    def sort_key(self) -> tuple:
        g = self.grading
        return (g.k, g.l, g.m, g.n, g.q, MODES.index(self.mode))

    def to_json(self) -> dict:
        g, c = self.grading, self.certificate
        return {
            "grading": {"k": g.k, "l": g.l, "m": g.m, "n": g.n, "q": g.q},
            "mode": self.mode,
            "value": self.value.to_json(),
            "provenance": self.provenance,
            "engine": self.engine,
            "certificate": {
                "permutation": list(c.permutation),
                "global_sign_flip": c.global_sign_flip,
                "mode": c.mode,
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoefficientRecord":
        c = obj["certificate"]
        return cls(
            grading=Grading(**obj["grading"]),
            mode=obj["mode"],
            value=AbelianGroup.from_json(obj["value"]),
            provenance=obj["provenance"],
            certificate=ReductionCertificate(tuple(c["permutation"]), c["global_sign_flip"], c["mode"]),
            engine=obj.get("engine", "theorem"),
        )


def schema() -> dict:
    text = resources.files("q8mackey").joinpath("data/coefficient_records.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# ------------------------------------------------------------ closed forms

def _piece_table(piece: Piece, degree: int):
    """Closed-form homology of one summand at ``degree``, or OUT_OF_RANGE."""
    if piece.kind == "Theta":
        if piece.index == 0:
            return tables.OUT_OF_RANGE
        table_id = "ThetaPos" if piece.index > 0 else "ThetaNeg"
        params = {"sign": piece.sign, "n": piece.index, "m": piece.second}
        return tables.lookup(table_id, params, degree - piece.shift)
    total = piece.index + piece.second
    base_dual = total < 0
    s = total if total >= 0 else -total
    if piece.dualized:
        base_dual = not base_dual
        q = degree + piece.shift
    else:
        q = degree - piece.shift
    variant = ("A+" if piece.sign == "plus" else "A-") + ("dual" if base_dual else "")
    return tables.lookup("AFamily", {"variant": variant, "s": s}, q)


def closed_form_value(canon: Grading, mode: Mode) -> AbelianGroup | None:
    """Sum of the published closed forms over the summands; None if any summand is untabulated."""
    degree = canon.q if mode == "homology" else -canon.q
    total = AbelianGroup()
    for piece in theorem_piece_list(canon, mode):
        value = _piece_table(piece, degree)
        if value is tables.OUT_OF_RANGE:
            return None
        total = total + value
    return total


# ------------------------------------------------------------ evaluation

def compute_record(g: Grading, mode: Mode = "homology", engine: Engine = "theorem",
                   budget: int | None = None) -> CoefficientRecord:
    """Evaluate one coefficient.  ``closed-form`` falls back to the theorem
    complexes, marked as outside the published tables, when a summand has
    no published value in the needed degree."""
    canon, cert = canonicalize(g, mode)
    if engine == "cellular":
        from .cworacle import DEFAULT_CELL_BUDGET, oracle_coefficient

        value = oracle_coefficient(g.k, g.l, g.m, g.n, g.q, mode,
                                   budget=DEFAULT_CELL_BUDGET if budget is None else budget)
        return CoefficientRecord(g, mode, value, "computed", cert, engine)
    if engine == "closed-form":
        value = closed_form_value(canon, cert.mode)
        if value is not None:
            return CoefficientRecord(g, mode, value, "closed-form", cert, engine)
    elif engine != "theorem":
        raise ValueError(f"unknown engine {engine!r}")
    Z = fixed_points_z2(assemble_theorem(canon, cert.mode))
    value = homology(Z, canon.q if cert.mode == "homology" else -canon.q)
    provenance = "computed" if engine == "theorem" else "outside-published-table"
    return CoefficientRecord(g, mode, value, provenance, cert, engine)


# ------------------------------------------------------------ rendering

def dumps_json(records: Iterable[CoefficientRecord]) -> str:
    ordered = sorted(records, key=CoefficientRecord.sort_key)
    return json.dumps([r.to_json() for r in ordered], sort_keys=True, indent=2, ensure_ascii=False) + "\n"


MD_HEADER = ("k", "l", "m", "n", "q", "mode", "value", "provenance", "engine", "certificate")


def _cert_text(c: ReductionCertificate) -> str:
    return f"perm={''.join(map(str, c.permutation))} flip={int(c.global_sign_flip)} {c.mode}"


def _parse_cert(text: str) -> ReductionCertificate:
    perm, flip, mode = text.split()
    return ReductionCertificate(tuple(int(ch) for ch in perm[5:]), flip == "flip=1", mode)


def render_markdown(records: Iterable[CoefficientRecord]) -> str:
    lines = ["| " + " | ".join(MD_HEADER) + " |", "|" + "---|" * len(MD_HEADER)]
    for r in sorted(records, key=CoefficientRecord.sort_key):
        g = r.grading
        cells = [g.k, g.l, g.m, g.n, g.q, r.mode, r.value, r.provenance, r.engine, _cert_text(r.certificate)]
        lines.append("| " + " | ".join(str(c) for c in cells) + " |")
    return "\n".join(lines) + "\n"


def parse_markdown(text: str) -> list[CoefficientRecord]:
    rows = [ln for ln in text.splitlines() if ln.startswith("|")][2:]
    out = []
    for row in rows:
        cells = [c.strip() for c in row.strip("|").split("|")]
        k, l, m, n, q = (int(c) for c in cells[:5])
        out.append(CoefficientRecord(Grading(k, l, m, n, q), cells[5], AbelianGroup.parse(cells[6]),
                                     cells[7], _parse_cert(cells[9]), cells[8]))
    return out
