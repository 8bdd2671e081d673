"""Named complexes: the cellular complex of S(nρ), its fixed points, and the
C(r), A^±_s, Θ^±_{n,m} pieces that assemble the RO(Q8)-graded answer."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from .chains import ChainComplexError, ZComplex, homology, quotient_by_acyclic
from .groups import C_SIGN, C_TRIVIAL, CPRIME, Q8, GroupRingElement
from .modules import (
    FREE,
    EquivariantComplex,
    MonomialModule,
    eq_direct_sum,
    eq_shift,
    eq_totalize,
    fixed_points_z2,
    kronecker_dual,
    zero_matrix,
)
from .linalg import AbelianGroup, IntegerMatrix

Sign = Literal["plus", "minus"]


def q8(text: str) -> GroupRingElement:
    return GroupRingElement.parse(Q8, text)


def cp(text: str) -> GroupRingElement:
    return GroupRingElement.parse(CPRIME, text)


# Cellular differentials of S(nρ), one cell block r at a time; targets are given as
# (cell name, coefficient).  "(-g)" is the group element -g.
_SNRHO_BLOCK = {
    "b1": [("a1", "i-1")],
    "b2": [("a1", "j-1")],
    "b3": [("a1", "ij-1")],
    "c1": [("b1", "1"), ("b2", "-1"), ("b3", "-j")],
    "c2": [("b1", "1"), ("b3", "-1"), ("b2", "i")],
    "c3": [("b2", "1"), ("b3", "-1"), ("b1", "-ij")],
    "c4": [("b3", "-j"), ("b1", "-ij"), ("b2", "-i")],
    "d1": [("c1", "1"), ("c2", "-1"), ("c3", "1"), ("c4", "-1")],
    "d2": [("c1", "1"), ("c2", "-j"), ("c3", "(-ij)"), ("c4", "-(-i)")],
}
_CELLS = {0: ["a1"], 1: ["b1", "b2", "b3"], 2: ["c1", "c2", "c3", "c4"], 3: ["d1", "d2"]}
_NORM = "1+i+j+ij+(-1)+(-i)+(-j)+(-ij)"


def _cell_label(name: str, r: int) -> str:
    return f"{name[0]}_{{{r},{name[1]}}}"


def _block_complex(n: int, group, block, norm_entry: str, parse) -> EquivariantComplex:
    modules, labels, diffs = {}, {}, {}
    for r in range(1, n + 1):
        for off, names in _CELLS.items():
            q = 4 * r - 4 + off
            modules[q] = [FREE] * len(names)
            labels[q] = [_cell_label(c, r) for c in names]
    for q in modules:
        if q - 1 not in modules:
            continue
        M = zero_matrix(group, len(modules[q - 1]), len(modules[q]))
        r, off = q // 4 + 1, q % 4
        if off == 0:
            # a_{r,1} -> N (d_{r-1,1} - d_{r-1,2})
            M[0][0] = parse(norm_entry)
            M[1][0] = -parse(norm_entry)
        else:
            src_names, tgt_names = _CELLS[off], _CELLS[off - 1]
            for s_idx, s in enumerate(src_names):
                for t, coef in block[s]:
                    M[tgt_names.index(t)][s_idx] = M[tgt_names.index(t)][s_idx] + parse(coef)
        diffs[q] = M
    return EquivariantComplex(group, modules, diffs, labels)


def build_snrho_complex(n: int) -> EquivariantComplex:
    """Q8-equivariant cellular chains of S(nρ): per block r, cells a, b1-b3, c1-c4, d1-d2
    in degrees 4r-4 .. 4r-1, all free."""
    if n < 1:
        raise ValueError("S(nρ) needs n >= 1")
    return _block_complex(n, Q8, _SNRHO_BLOCK, _NORM, q8)


# fixed-point differentials as listed after the Lemma (a_{r,0} read as a_{r,1})
_FIXED_BLOCK = {
    "b1": [],
    "b2": [("a1", "σ-1")],
    "b3": [("a1", "σ-1")],
    "c1": [("b1", "1"), ("b2", "-1"), ("b3", "-σ")],
    "c2": [("b1", "1"), ("b2", "1"), ("b3", "-1")],
    "c3": [("b1", "-σ"), ("b2", "1"), ("b3", "-1")],
    "c4": [("b1", "-σ"), ("b2", "-1"), ("b3", "-σ")],
    "d1": [("c1", "1"), ("c2", "-1"), ("c3", "1"), ("c4", "-1")],
    "d2": [("c1", "1"), ("c2", "-σ"), ("c3", "σ"), ("c4", "-1")],
}


def build_fixed_complex(n: int) -> EquivariantComplex:
    """The C'-complex of fixed points of S(nρ) under an order-4 subgroup, as listed
    cell by cell; da_{r+1,1} = (4+4σ)(d_{r,1} - d_{r,2})."""
    if n < 1:
        raise ValueError("S(nρ) needs n >= 1")
    return _block_complex(n, CPRIME, _FIXED_BLOCK, "4+4σ", cp)


# ------------------------------------------------------------ C'-level pieces

def _sigma_flip(e: GroupRingElement) -> GroupRingElement:
    return GroupRingElement(CPRIME, [e.coeffs[0], -e.coeffs[1]])


def _check_sign(sign: str) -> None:
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', not {sign!r}")


def _chain(top: int, labels: Sequence[str], maps: Sequence[str], sign: str,
           modules: Sequence[MonomialModule] | None = None) -> EquivariantComplex:
    """A complex with one generator per degree, from ``top`` downwards.

    ``maps[i]`` is the differential out of ``labels[i]``; the minus sign
    flips σ in every map."""
    mods = list(modules) if modules is not None else [FREE] * len(labels)
    degs = [top - i for i in range(len(labels))]
    diffs = {}
    for i, text in enumerate(maps):
        e = cp(text)
        if sign == "minus":
            e = _sigma_flip(e)
        diffs[degs[i]] = [[e]]
    return EquivariantComplex(
        CPRIME,
        {q: [m] for q, m in zip(degs, mods)},
        diffs,
        {q: [lab] for q, lab in zip(degs, labels)},
    )


def build_C(r: int, variant: Sign, n: int) -> EquivariantComplex:
    """The rung C(r) of the ladder for S(nρ), at the degrees of its generators.

    C(0) sits in degrees 2..0, C(r) for 0 < r < n in 4r+2..4r-3 and C(n)
    in 4n-1..4n-3.  The minus variant flips σ everywhere."""
    _check_sign(variant)
    if n < 1 or not 0 <= r <= n:
        raise ValueError(f"rung index {r} outside 0..{n}")
    if r == 0:
        return _chain(2, ["c_{1,2}", "b_{1,2}", "-a_{1,1}"], ["1+σ", "1-σ"], variant)
    if r == n:
        return _chain(4 * n - 1, [f"d_{{{n},2}}", f"c_{{{n},2}}-c_{{{n},3}}", f"b_{{{n},2}}-b_{{{n},3}}"],
                      ["1-σ", "1+σ"], variant)
    labels = [f"c_{{{r + 1},2}}", f"b_{{{r + 1},2}}", f"a_{{{r + 1},1}}", f"d_{{{r},2}}",
              f"c_{{{r},2}}-c_{{{r},3}}", f"b_{{{r},2}}-b_{{{r},3}}"]
    return _chain(4 * r + 2, labels, ["1+σ", "1-σ", "4+4σ", "1-σ", "1+σ"], variant)


def build_A(s: int, sign: Sign) -> EquivariantComplex:
    """A^±_s: free C'-modules in degrees 1..s over a tail ℤ (plus) or ℤ⁻ (minus).

    d_1 is the augmentation; above it the maps alternate, d_p = 1 + (-1)^(p-1)σ
    for A⁺ and 1 + (-1)^p σ for A⁻."""
    _check_sign(sign)
    if s < 0:
        raise ValueError("A_s needs s >= 0")
    tail = MonomialModule(C_TRIVIAL if sign == "plus" else C_SIGN)
    labels = [f"x_{p}" for p in range(s, 0, -1)] + ["x_0"]
    maps = []
    for p in range(s, 0, -1):
        if p == 1:
            maps.append("1")
        else:
            parity = p - 1 if sign == "plus" else p
            maps.append("1+σ" if parity % 2 == 0 else "1-σ")
    return _chain(s, labels, maps, "plus", [FREE] * s + [tail])


def build_A_smashed(s: int, sign: Sign, m: int) -> EquivariantComplex:
    """A^±_s(m): A^±_{s+m} when s + m >= 0, else the dual of A^±_{-m-s}."""
    if s < 0:
        raise ValueError("A_s needs s >= 0")
    if s + m >= 0:
        return build_A(s + m, sign)
    return kronecker_dual(build_A(-m - s, sign))


def build_C0m(m: int, sign: Sign) -> EquivariantComplex:
    """The bottom rung C(0)_m of the ladder for Θ_{n,m}, already placed.

    For m <= 2 it has 3 - m free terms in degrees 2-m..0 with maps
    1 ± (-1)^j σ, j = 0 from the top down.  For m > 2 it has m - 1 free
    terms in degrees 0..2-m with maps 1 ± (-1)^j σ, j = m-3 down to 0."""
    _check_sign(sign)
    if m <= 2:
        top, count = 2 - m, 3 - m
        maps = ["1+σ" if j % 2 == 0 else "1-σ" for j in range(count - 1)]
    else:
        top, count = 0, m - 1
        maps = ["1+σ" if j % 2 == 0 else "1-σ" for j in range(m - 3, -1, -1)]
    labels = [f"e_{top - i}" for i in range(count)]
    return _chain(top, labels, maps, sign)


def _connector(src: EquivariantComplex, q: int, tgt: EquivariantComplex, entry: GroupRingElement):
    """Connector map from the single generator of src in degree q onto the
    single generator of tgt in degree q - 1."""
    M = zero_matrix(CPRIME, tgt.rank(q - 1), src.rank(q))
    M[0][0] = entry
    return {q: M}


def build_theta(n: int, m: int, sign: Sign) -> EquivariantComplex:
    """Θ^±_{n,m}: the totalized ladder C(0)_m, C(1), ..., C(n).

    Rungs C(r), r >= 1, sit at their generator degrees shifted by -m.  The
    connector from C(r) hits the bottom of C(r+1) with 1 - σ; for m > 2
    it leaves the bottom of C(0)_m instead.  Negative n is the dual of the
    -n ladder and n = 0 is the bottom rung alone."""
    _check_sign(sign)
    if n < 0:
        return kronecker_dual(build_theta(-n, m, sign))
    bottom = build_C0m(m, sign)
    if n == 0:
        return bottom
    rungs = [bottom] + [eq_shift(build_C(r, sign, n), -m) for r in range(1, n + 1)]
    link = cp("1-σ") if sign == "plus" else cp("1+σ")
    connectors = []
    for i in range(n):
        src, tgt = rungs[i], rungs[i + 1]
        if i == 0 and m > 2:
            q = min(src.degrees)
        else:
            q = max(src.degrees)
        if tgt.rank(q - 1) != 1 or min(tgt.degrees) != q - 1:
            raise ChainComplexError(f"rung {i} does not meet the bottom of rung {i + 1}")
        connectors.append(_connector(src, q, tgt, link))
    return eq_totalize(rungs, connectors)


# ------------------------------------------------------ reductions and grading

def reduce_fixed_complex(n: int) -> ZComplex:
    """Fixed points of build_fixed_complex(n) with, for every block r, the two
    acyclic pieces c_{r,1} -> dc_{r,1} and d_{r,1} -> dd_{r,1} divided out."""
    Z = fixed_points_z2(build_fixed_complex(n))
    cols: dict[int, list[list[int]]] = {}

    def unit(q: int, name: str) -> list[int]:
        v = [0] * Z.rank(q)
        v[Z.label(q).index(name)] = 1
        return v

    for r in range(1, n + 1):
        for cell, q in (("c_{%d,1}" % r, 4 * r - 2), ("d_{%d,1}" % r, 4 * r - 1)):
            v = unit(q, cell)
            cols.setdefault(q, []).append(v)
            d = Z.d(q)
            cols.setdefault(q - 1, []).append([sum(d[i, j] * v[j] for j in range(len(v)))
                                              for i in range(d.rows)])
    sub = {q: IntegerMatrix.from_rows([list(r) for r in zip(*vs)], len(vs)) for q, vs in cols.items()}
    return quotient_by_acyclic(Z, sub)


@dataclass(frozen=True)
class Grading:
    """Degree q + kα + ℓβ + mγ + nρ."""

    k: int
    l: int
    m: int
    n: int
    q: int = 0

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.k, self.l, self.m)

    def is_canonical(self) -> bool:
        return self.k >= self.l >= 0


@dataclass(frozen=True)
class ReductionCertificate:
    """``permutation[i]`` is the input slot (0 = α, 1 = β, 2 = γ) that lands in
    canonical slot i; a sign flip negates all of k, ℓ, m, n, q."""

    permutation: tuple[int, int, int]
    global_sign_flip: bool
    mode: Literal["homology", "cohomology"]

    def apply(self, g: Grading) -> Grading:
        """Recover the input grading from its canonical form."""
        s = -1 if self.global_sign_flip else 1
        w = [0, 0, 0]
        for slot, src in enumerate(self.permutation):
            w[src] = s * g.weights[slot]
        return Grading(w[0], w[1], w[2], s * g.n, s * g.q)


def canonicalize(g: Grading, mode: Literal["homology", "cohomology"] = "homology"):
    """Move two weights of equal sign into the α, β slots, in descending order.

    Nonnegative pairs are preferred.  A negative pair flips every sign and
    swaps homology with cohomology."""
    w = g.weights
    nonneg = [i for i in range(3) if w[i] >= 0]
    flip = len(nonneg) < 2
    if flip:
        pair = sorted((i for i in range(3) if w[i] < 0), key=lambda i: (w[i], i))[:2]
    else:
        pair = sorted(nonneg, key=lambda i: (-w[i], i))[:2]
    s = -1 if flip else 1
    pair.sort(key=lambda i: (-s * w[i], i))
    rest = next(i for i in range(3) if i not in pair)
    perm = (pair[0], pair[1], rest)
    canon = Grading(s * w[perm[0]], s * w[perm[1]], s * w[perm[2]], s * g.n, s * g.q)
    if flip:
        mode = "cohomology" if mode == "homology" else "homology"
    return canon, ReductionCertificate(perm, flip, mode)


def _sign(e: int) -> Sign:
    return "plus" if e % 2 == 0 else "minus"


@dataclass(frozen=True)
class Piece:
    """One summand of the decomposition: an A-piece A^{sign}_index(second)[shift],
    dualized in cohomology mode, or Θ^{sign}_{index,second}[shift]."""

    kind: Literal["A", "Theta"]
    index: int
    second: int
    sign: Sign
    shift: int
    dualized: bool = False

    @property
    def name(self) -> str:
        pm = "+" if self.sign == "plus" else "-"
        if self.kind == "Theta":
            return f"Θ^{pm}_{{{self.index},{self.second}}}[{self.shift}]"
        name = f"A^{pm}_{self.index}({self.second})[{self.shift}]"
        return f"({name})^v" if self.dualized else name

    def build(self) -> EquivariantComplex:
        if self.kind == "Theta":
            return eq_shift(build_theta(self.index, self.second, self.sign), self.shift)
        C = eq_shift(build_A_smashed(self.index, self.sign, self.second), self.shift)
        return kronecker_dual(C) if self.dualized else C


def theorem_piece_list(g: Grading, mode: Literal["homology", "cohomology"] = "homology") -> list[Piece]:
    """Summands of the decomposition for a canonical grading, in display order."""
    if not g.is_canonical():
        raise ValueError(f"grading {g} is not canonical; call canonicalize first")
    k, l, m, n = g.k, g.l, g.m, g.n
    dualized = mode == "cohomology"
    pieces = [Piece("A", l, m, _sign(s), s, dualized) for s in range(l, k)]
    for s in range(l):
        pieces.append(Piece("A", s, m, _sign(s), s, dualized))
        pieces.append(Piece("A", s, m, _sign(s + 1), s + 1, dualized))
    second = -l - m if n >= 0 else l - m
    first = n if mode == "homology" else -n
    pieces.append(Piece("Theta", first, second, _sign((k + 1) * (l + 1)), l))
    return pieces


def theorem_pieces(g: Grading, mode: Literal["homology", "cohomology"] = "homology"):
    """Summands as (name, complex) pairs."""
    return [(p.name, p.build()) for p in theorem_piece_list(g, mode)]


def assemble_theorem(g: Grading, mode: Literal["homology", "cohomology"] = "homology") -> EquivariantComplex:
    """Direct sum of the A-pieces and the Θ-piece for a canonical grading.

    In cohomology mode every A-piece is dualized and Θ takes -n."""
    return eq_direct_sum([C for _, C in theorem_pieces(g, mode)], CPRIME)


def coefficient(g: Grading, mode: Literal["homology", "cohomology"] = "homology",
                engine: Literal["theorem", "cellular"] = "theorem") -> AbelianGroup:
    """H̃_q of S^{kα+ℓβ+mγ+nρ} with constant ℤ coefficients (or H^q in cohomology mode).

    ``theorem`` assembles the closed decomposition; ``cellular`` builds the
    smash complex cell by cell."""
    if engine == "cellular":
        from .cworacle import oracle_coefficient

        return oracle_coefficient(g.k, g.l, g.m, g.n, g.q, mode)
    canon, cert = canonicalize(g, mode)
    Z = fixed_points_z2(assemble_theorem(canon, cert.mode))
    degree = canon.q if cert.mode == "homology" else -canon.q
    return homology(Z, degree)


def build_lemma_sum(k: int, l: int) -> EquivariantComplex:
    """Closed decomposition of the ⟨ij⟩-fixed chains of S^{kα+ℓβ} as C′-pieces."""
    if not k >= l >= 0:
        raise ValueError("need k >= l >= 0")
    pieces = [eq_shift(build_A(l, _sign(s)), s) for s in range(l, k + 1)]
    for s in range(l):
        pieces.append(eq_shift(build_A(s, _sign(s)), s))
        pieces.append(eq_shift(build_A(s, _sign(s + 1)), s + 1))
    return eq_direct_sum(pieces, CPRIME)
