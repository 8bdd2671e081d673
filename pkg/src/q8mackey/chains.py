"""Chain complexes of finitely generated free abelian groups.

A :class:`ZComplex` stores a rank per degree and the differential
``d_q: C_q -> C_{q-1}`` as an ``IntegerMatrix`` of shape
``(rank(q-1), rank(q))``.  Missing differentials are zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import (
    AbelianGroup,
    IntegerMatrix,
    matrix_columns,
    smith_normal_form,
    sparse_invariant_factors,
    unimodular_inverse,
)


class ChainComplexError(ValueError):
    """Raised when data does not form a chain complex (bad shapes or d∘d != 0)."""


def _sparse_product_is_zero(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    # A @ B == 0 without materializing a dense product
    a_cols = matrix_columns(A)
    for bcol in matrix_columns(B):
        acc: dict[int, int] = {}
        for k, v in bcol.items():
            for i, w in a_cols[k].items():
                acc[i] = acc.get(i, 0) + v * w
        if any(acc.values()):
            return False
    return True


class ZComplex:
    """Bounded chain complex of free abelian groups."""

    def __init__(
        self,
        ranks: Mapping[int, int],
        differentials: Mapping[int, IntegerMatrix] | None = None,
        labels: Mapping[int, Sequence[str]] | None = None,
        check: bool = True,
    ):
        self.ranks = {int(q): int(r) for q, r in ranks.items() if r}
        diffs = {}
        for q, d in (differentials or {}).items():
            if d.rows != self.rank(q - 1) or d.cols != self.rank(q):
                raise ChainComplexError(
                    f"d_{q} has shape {d.shape}, expected {(self.rank(q - 1), self.rank(q))}"
                )
            if not d.is_zero():
                diffs[int(q)] = d
        self.differentials = diffs
        self.labels = {int(q): list(v) for q, v in (labels or {}).items()}
        if check:
            self.validate()

    def rank(self, q: int) -> int:
        return self.ranks.get(q, 0)

    def d(self, q: int) -> IntegerMatrix:
        m = self.differentials.get(q)
        if m is None:
            return IntegerMatrix.zeros(self.rank(q - 1), self.rank(q))
        return m

    def label(self, q: int) -> list[str]:
        return self.labels.get(q, [f"e{q}_{i}" for i in range(self.rank(q))])

    @property
    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    @property
    def span(self) -> tuple[int, int] | None:
        if not self.ranks:
            return None
        return min(self.ranks), max(self.ranks)

    def validate(self) -> None:
        for q in self.differentials:
            if q - 1 in self.differentials and not _sparse_product_is_zero(self.d(q - 1), self.d(q)):
                raise ChainComplexError(f"d_{q - 1} ∘ d_{q} != 0")

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def homology(self, q: int) -> AbelianGroup:
        return homology(self, q)

    def homology_all(self) -> dict[int, AbelianGroup]:
        return {q: homology(self, q) for q in range(self.span[0], self.span[1] + 1)} if self.ranks else {}

    def __eq__(self, other) -> bool:
        # labels are diagnostic only
        if not isinstance(other, ZComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.differentials == other.differentials

    def __repr__(self) -> str:
        return f"ZComplex(ranks={dict(sorted(self.ranks.items()))})"


def zero_complex() -> ZComplex:
    return ZComplex({})


def homology(C: ZComplex, q: int) -> AbelianGroup:
    """H_q = ker d_q / im d_{q+1}.

    ker d_q is saturated, so the torsion of H_q is that of coker d_{q+1}.
    """
    n = C.rank(q)
    if n == 0:
        return AbelianGroup()
    out_rank = len(sparse_invariant_factors(matrix_columns(C.d(q)), C.rank(q - 1))) if q in C.differentials else 0
    if q + 1 in C.differentials:
        in_factors = sparse_invariant_factors(matrix_columns(C.d(q + 1)), n)
    else:
        in_factors = ()
    return AbelianGroup.from_orders(n - out_rank - len(in_factors), in_factors)


def shift(C: ZComplex, t: int) -> ZComplex:
    """C[t]: degree q of the result is degree q - t of C.  No sign is introduced."""
    return ZComplex(
        {q + t: r for q, r in C.ranks.items()},
        {q + t: d for q, d in C.differentials.items()},
        {q + t: v for q, v in C.labels.items()},
        check=False,
    )


def dual(C: ZComplex) -> ZComplex:
    """Hom(C, Z), placed in degree -q with d^v_p = (d_{1-p})^T."""
    return ZComplex(
        {-q: r for q, r in C.ranks.items()},
        {1 - q: d.T for q, d in C.differentials.items()},
        {-q: [f"{s}*" for s in v] for q, v in C.labels.items()},
        check=False,
    )


def direct_sum(Cs: Sequence[ZComplex]) -> ZComplex:
    Cs = list(Cs)
    degrees = sorted({q for C in Cs for q in C.ranks})
    ranks = {q: sum(C.rank(q) for C in Cs) for q in degrees}
    diffs = {}
    for q in degrees:
        if any(q in C.differentials for C in Cs):
            diffs[q] = IntegerMatrix.block_diagonal([C.d(q) for C in Cs])
    labels = {q: [s for C in Cs for s in C.label(q)] for q in degrees}
    return ZComplex(ranks, diffs, labels, check=False)


@dataclass
class LadderDiagram:
    """Rungs joined by connectors into one total complex.

    ``connectors[i][q]`` maps degree q of rung i (after placement at its
    anchor) to degree q - 1 of rung i + 1.  ``anchor_degrees[i]`` is the
    shift applied to rung i before assembly.
    """

    rungs: list[ZComplex]
    connectors: list[dict[int, IntegerMatrix]]
    anchor_degrees: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.anchor_degrees:
            self.anchor_degrees = [0] * len(self.rungs)
        if len(self.connectors) != max(len(self.rungs) - 1, 0):
            raise ChainComplexError("need exactly one connector per adjacent pair of rungs")
        if len(self.anchor_degrees) != len(self.rungs):
            raise ChainComplexError("one anchor per rung")

    def placed(self) -> list[ZComplex]:
        return [shift(R, a) for R, a in zip(self.rungs, self.anchor_degrees)]


def _assemble(placed: Sequence[ZComplex], connectors, signed: bool) -> ZComplex:
    degrees = sorted({q for C in placed for q in C.ranks})
    ranks = {q: sum(C.rank(q) for C in placed) for q in degrees}
    diffs = {}
    for q in degrees:
        if ranks.get(q - 1, 0) == 0:
            continue
        rows = [[0] * ranks[q] for _ in range(ranks[q - 1])]
        row_off = [0]
        col_off = [0]
        for C in placed:
            row_off.append(row_off[-1] + C.rank(q - 1))
            col_off.append(col_off[-1] + C.rank(q))
        for i, C in enumerate(placed):
            d = C.d(q)
            for a in range(d.rows):
                for b in range(d.cols):
                    rows[row_off[i] + a][col_off[i] + b] = d[a, b]
            if i + 1 < len(placed):
                f = connectors[i].get(q)
                if f is None:
                    continue
                nxt = placed[i + 1]
                if f.shape != (nxt.rank(q - 1), C.rank(q)):
                    raise ChainComplexError(
                        f"connector {i} at degree {q} has shape {f.shape}, "
                        f"expected {(nxt.rank(q - 1), C.rank(q))}"
                    )
                sgn = -1 if signed and q % 2 else 1
                for a in range(f.rows):
                    for b in range(f.cols):
                        rows[row_off[i + 1] + a][col_off[i] + b] = sgn * f[a, b]
        diffs[q] = IntegerMatrix.from_rows(rows, ranks[q])
    labels = {q: [s for C in placed for s in C.label(q)] for q in degrees}
    return ZComplex(ranks, diffs, labels, check=False)


def totalize(L: LadderDiagram) -> ZComplex:
    """Total complex of a ladder.

    Connectors are used as given when that already squares to zero;
    otherwise they are negated on odd source degrees.  If neither works the
    ladder is rejected.
    """
    placed = L.placed()
    for signed in (False, True):
        T = _assemble(placed, L.connectors, signed)
        try:
            T.validate()
        except ChainComplexError:
            continue
        return T
    raise ChainComplexError("ladder does not totalize: d∘d != 0 under either sign convention")


def _split_basis(span: IntegerMatrix):
    """Unimodular basis whose first columns span ``span``; requires a saturated span."""
    n, k = span.shape
    if k == 0:
        return IntegerMatrix.identity(n), IntegerMatrix.identity(n)
    snf = smith_normal_form(span)
    if snf.invariant_factors != (1,) * k:
        raise ChainComplexError("subcomplex span is not a saturated sublattice of full rank")
    # span = U^{-1} [V^{-1}; 0]; columns of U^{-1} give the adapted basis
    return unimodular_inverse(snf.U), snf.U


def quotient_by_acyclic(C: ZComplex, sub: Mapping[int, IntegerMatrix]) -> ZComplex:
    """C / S for an acyclic subcomplex S given by spanning columns per degree."""
    sub = {q: m for q, m in sub.items() if m.cols}
    for q, m in sub.items():
        if m.rows != C.rank(q):
            raise ChainComplexError(f"span in degree {q} has {m.rows} rows, expected {C.rank(q)}")
    bases = {}
    for q in C.ranks:
        span = sub.get(q, IntegerMatrix.zeros(C.rank(q), 0))
        bases[q] = (_split_basis(span), span.cols)
    # closure: d_q(S_q) lies in S_{q-1}
    for q, span in sub.items():
        image = C.d(q) @ span
        if image.rows == 0:
            continue
        (_, U), k = bases.get(q - 1, ((None, IntegerMatrix.identity(0)), 0))
        coords = U @ image
        if any(coords[i, j] for i in range(k, coords.rows) for j in range(coords.cols)):
            raise ChainComplexError(f"span is not closed under d at degree {q}")
    # the subcomplex itself, in the coordinates of its own basis
    sub_ranks = {q: m.cols for q, m in sub.items()}
    sub_diffs = {}
    for q, span in sub.items():
        if q - 1 in sub:
            (_, U), k = bases[q - 1]
            coords = U @ (C.d(q) @ span)
            sub_diffs[q] = coords.submatrix(range(k), range(span.cols))
    S = ZComplex(sub_ranks, sub_diffs, check=False)
    for q in S.ranks:
        if not homology(S, q).is_zero():
            raise ChainComplexError(f"subcomplex is not acyclic: H_{q} = {homology(S, q)}")
    ranks = {q: C.rank(q) - bases[q][1] for q in C.ranks}
    diffs = {}
    for q in C.ranks:
        if ranks[q] == 0 or ranks.get(q - 1, 0) == 0:
            continue
        (Uinv_q, _), k_q = bases[q]
        (_, U_p), k_p = bases[q - 1]
        lift = Uinv_q.submatrix(range(Uinv_q.rows), range(k_q, Uinv_q.cols))
        proj = U_p.submatrix(range(k_p, U_p.rows), range(U_p.cols))
        diffs[q] = proj @ C.d(q) @ lift
    return ZComplex(ranks, diffs)
