"""Equivariant chain complexes over Q8 and C' = Q8/H.

Each degree is a list of monomial modules: free rank-one Z[G] modules or
rank-one character modules Z_χ.  A differential is a matrix of group ring
elements, rows indexed by target generators and columns by source
generators; column x says ``d(x) = Σ_y entry[y][x] · y`` with the entry
acting on the left.  For a character target Z_χ the entry only matters
through χ(entry).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .chains import ChainComplexError, ZComplex
from .groups import (
    ALPHA,
    BETA,
    CPRIME,
    C_SIGN,
    C_TRIVIAL,
    GAMMA,
    ONE,
    Q8,
    Q8_CHARACTERS,
    TRIVIAL,
    TRIVIAL_GROUP,
    Automorphism,
    Character,
    FiniteGroup,
    GroupRingElement,
)
from .linalg import IntegerMatrix


@dataclass(frozen=True)
class MonomialModule:
    """A free rank-one module (``character is None``) or a character module."""

    character: Character | None = None

    @property
    def is_free(self) -> bool:
        return self.character is None

    def rank(self, group: FiniteGroup) -> int:
        return len(group) if self.character is None else 1

    def __repr__(self) -> str:
        if self.character is None:
            return "Free"
        return f"Z[{self.character.name}]"


FREE = MonomialModule()


def char_module(chi: Character) -> MonomialModule:
    return MonomialModule(chi)


Matrix = list[list[GroupRingElement]]


def zero_matrix(group: FiniteGroup, rows: int, cols: int) -> Matrix:
    z = GroupRingElement(group)
    return [[z] * cols for _ in range(rows)]


class EquivariantComplex:
    """Bounded complex of monomial G-modules with group-ring differentials."""

    def __init__(
        self,
        group: FiniteGroup,
        modules: Mapping[int, Sequence[MonomialModule]],
        differentials: Mapping[int, Matrix] | None = None,
        labels: Mapping[int, Sequence[str]] | None = None,
        check: bool = True,
    ):
        self.group = group
        self.modules = {int(q): list(ms) for q, ms in modules.items() if ms}
        self.differentials: dict[int, Matrix] = {}
        for q, m in (differentials or {}).items():
            rows, cols = len(self.module_list(q - 1)), len(self.module_list(q))
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ChainComplexError(f"differential {q} has the wrong shape")
            if rows and cols and any(not e.is_zero() for r in m for e in r):
                self.differentials[int(q)] = [list(r) for r in m]
        self.labels = {int(q): list(v) for q, v in (labels or {}).items()}
        if check:
            self.validate()

    def module_list(self, q: int) -> list[MonomialModule]:
        return self.modules.get(q, [])

    def rank(self, q: int) -> int:
        return len(self.module_list(q))

    def d(self, q: int) -> Matrix:
        return self.differentials.get(q) or zero_matrix(self.group, self.rank(q - 1), self.rank(q))

    def label(self, q: int) -> list[str]:
        return self.labels.get(q, [f"x{q}_{i}" for i in range(self.rank(q))])

    @property
    def degrees(self) -> list[int]:
        return sorted(self.modules)

    def entry(self, q: int, target: int, source: int) -> GroupRingElement:
        return self.d(q)[target][source]

    def column(self, q: int, source: int) -> dict[str, GroupRingElement]:
        """d of one generator, keyed by target label (for diagnostics)."""
        labels = self.label(q - 1)
        return {labels[t]: row[source] for t, row in enumerate(self.d(q)) if not row[source].is_zero()}

    def underlying(self, check: bool = True) -> ZComplex:
        """The complex of underlying free abelian groups."""
        return ZComplex(
            {q: sum(m.rank(self.group) for m in ms) for q, ms in self.modules.items()},
            {q: underlying_map(self.group, self.module_list(q), self.module_list(q - 1), m)
             for q, m in self.differentials.items()},
            check=check,
        )

    def validate(self) -> None:
        self.underlying(check=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquivariantComplex):
            return NotImplemented
        return (self.group is other.group and self.modules == other.modules
                and self.differentials == other.differentials)

    def __repr__(self) -> str:
        parts = {q: self.modules[q] for q in self.degrees}
        return f"EquivariantComplex({self.group.name}, {parts})"


def underlying_map(group: FiniteGroup, sources: Sequence[MonomialModule],
                   targets: Sequence[MonomialModule], M: Matrix) -> IntegerMatrix:
    """Z-matrix of a module map, checking equivariance on character sources."""
    n = len(group)
    t_off = [0]
    for t in targets:
        t_off.append(t_off[-1] + t.rank(group))
    cols = []
    for s_idx, s in enumerate(sources):
        if s.is_free:
            for g in range(n):
                col = [0] * t_off[-1]
                for t_idx, t in enumerate(targets):
                    lam = M[t_idx][s_idx]
                    if lam.is_zero():
                        continue
                    if t.is_free:
                        gl = lam.left_translate(g)
                        for h, c in enumerate(gl.coeffs):
                            col[t_off[t_idx] + h] += c
                    else:
                        col[t_off[t_idx]] += t.character(g) * lam.evaluate(t.character)
                cols.append(col)
        else:
            psi = s.character
            col = [0] * t_off[-1]
            for t_idx, t in enumerate(targets):
                lam = M[t_idx][s_idx]
                if lam.is_zero():
                    continue
                if t.is_free:
                    for g in range(n):
                        if lam.left_translate(g) != lam * psi(g):
                            raise ChainComplexError(
                                f"entry {lam} from {psi} into a free module is not {psi}-isotypic"
                            )
                    for h, c in enumerate(lam.coeffs):
                        col[t_off[t_idx] + h] += c
                else:
                    v = lam.evaluate(t.character)
                    if v and t.character != psi:
                        raise ChainComplexError(f"nonzero map between Z[{psi}] and Z[{t.character}]")
                    col[t_off[t_idx]] += v
            cols.append(col)
    rows = t_off[-1]
    return IntegerMatrix(rows, len(cols), (cols[j][i] for i in range(rows) for j in range(len(cols))))


# ----------------------------------------------------------------- structure

def eq_shift(C: EquivariantComplex, t: int) -> EquivariantComplex:
    return EquivariantComplex(
        C.group,
        {q + t: ms for q, ms in C.modules.items()},
        {q + t: m for q, m in C.differentials.items()},
        {q + t: v for q, v in C.labels.items()},
        check=False,
    )


def eq_direct_sum(Cs: Sequence[EquivariantComplex], group: FiniteGroup | None = None) -> EquivariantComplex:
    Cs = list(Cs)
    if group is None:
        if not Cs:
            raise ValueError("empty sum needs an explicit group")
        group = Cs[0].group
    degrees = sorted({q for C in Cs for q in C.modules})
    modules = {q: [m for C in Cs for m in C.module_list(q)] for q in degrees}
    diffs = {}
    for q in degrees:
        rows = sum(C.rank(q - 1) for C in Cs)
        cols = sum(C.rank(q) for C in Cs)
        if not rows or not cols:
            continue
        M = zero_matrix(group, rows, cols)
        r0 = c0 = 0
        for C in Cs:
            d = C.d(q)
            for a in range(C.rank(q - 1)):
                for b in range(C.rank(q)):
                    M[r0 + a][c0 + b] = d[a][b]
            r0 += C.rank(q - 1)
            c0 += C.rank(q)
        diffs[q] = M
    labels = {q: [s for C in Cs for s in C.label(q)] for q in degrees}
    return EquivariantComplex(group, modules, diffs, labels, check=False)


def eq_dual(C: EquivariantComplex) -> EquivariantComplex:
    """Hom_Z(C, Z) with the contragredient action, C^v_p = Hom(C_{-p}).

    Free modules are self-dual (entries get the involution g -> g^-1);
    characters are self-dual since they take values +-1.
    """
    G = C.group
    modules = {-q: list(ms) for q, ms in C.modules.items()}
    diffs = {}
    for q, M in C.differentials.items():
        src, tgt = C.module_list(q), C.module_list(q - 1)
        # dual map goes from Hom(C_{q-1}) in degree 1-q to Hom(C_q) in degree -q
        D = zero_matrix(G, len(src), len(tgt))
        for t_idx, t in enumerate(tgt):
            for s_idx, s in enumerate(src):
                lam = M[t_idx][s_idx]
                if lam.is_zero():
                    continue
                if s.is_free and t.is_free:
                    e = lam.involution()
                elif s.is_free:
                    chi = t.character
                    e = GroupRingElement(G, [chi(g) for g in range(len(G))]) * lam.evaluate(chi)
                elif t.is_free:
                    e = GroupRingElement.scalar(G, lam.coeffs[G.identity])
                else:
                    e = GroupRingElement.scalar(G, lam.evaluate(t.character))
                D[s_idx][t_idx] = e
        diffs[1 - q] = D
    labels = {-q: [f"{s}*" for s in v] for q, v in C.labels.items()}
    return EquivariantComplex(G, modules, diffs, labels, check=True)


def kronecker_dual(C: EquivariantComplex) -> EquivariantComplex:
    """Dual of a C'-complex whose C'-fixed points are the transpose of the fixed points of C.

    It differs from ``eq_dual`` only on maps between free and trivial
    modules.  Those entries are rescaled by 2 so that taking fixed points
    commutes with dualizing.
    """
    if C.group is not CPRIME:
        raise ValueError("kronecker_dual expects a complex over C'")
    D = eq_dual(C)
    diffs = {}
    for q, M in D.differentials.items():
        src, tgt = D.module_list(q), D.module_list(q - 1)
        new = [list(r) for r in M]
        for t_idx, t in enumerate(tgt):
            for s_idx, s in enumerate(src):
                lam = new[t_idx][s_idx]
                if lam.is_zero():
                    continue
                if s.is_free and t.character is C_TRIVIAL:
                    if any(c % 2 for c in lam.coeffs):
                        raise ChainComplexError("no integral dual for an odd norm map")
                    new[t_idx][s_idx] = GroupRingElement(CPRIME, [c // 2 for c in lam.coeffs])
                elif t.is_free and s.character is C_TRIVIAL:
                    new[t_idx][s_idx] = lam * 2
        diffs[q] = new
    return EquivariantComplex(CPRIME, D.modules, diffs, D.labels, check=True)


def eq_totalize(rungs: Sequence[EquivariantComplex],
                connectors: Sequence[Mapping[int, Matrix]]) -> EquivariantComplex:
    """Total complex of already-placed rungs joined by degree-lowering connectors.

    ``connectors[i][q]`` maps degree q of rung i to degree q - 1 of rung
    i + 1.  The connectors are used as given if that squares to zero,
    otherwise negated on odd source degrees; failing both raises.
    """
    rungs = list(rungs)
    group = rungs[0].group
    degrees = sorted({q for R in rungs for q in R.modules})
    modules = {q: [m for R in rungs for m in R.module_list(q)] for q in degrees}
    labels = {q: [s for R in rungs for s in R.label(q)] for q in degrees}
    for signed in (False, True):
        diffs = {}
        for q in degrees:
            rows = sum(R.rank(q - 1) for R in rungs)
            cols = sum(R.rank(q) for R in rungs)
            if not rows or not cols:
                continue
            M = zero_matrix(group, rows, cols)
            r_off = [0]
            c_off = [0]
            for R in rungs:
                r_off.append(r_off[-1] + R.rank(q - 1))
                c_off.append(c_off[-1] + R.rank(q))
            for i, R in enumerate(rungs):
                d = R.d(q)
                for a in range(R.rank(q - 1)):
                    for b in range(R.rank(q)):
                        M[r_off[i] + a][c_off[i] + b] = d[a][b]
                if i + 1 < len(rungs) and q in connectors[i]:
                    f = connectors[i][q]
                    nxt = rungs[i + 1]
                    if len(f) != nxt.rank(q - 1) or any(len(r) != R.rank(q) for r in f):
                        raise ChainComplexError(f"connector {i} at degree {q} has the wrong shape")
                    sgn = -1 if signed and q % 2 else 1
                    for a in range(nxt.rank(q - 1)):
                        for b in range(R.rank(q)):
                            M[r_off[i + 1] + a][c_off[i] + b] = f[a][b] * sgn
            diffs[q] = M
        try:
            return EquivariantComplex(group, modules, diffs, labels, check=True)
        except ChainComplexError:
            continue
    raise ChainComplexError("ladder does not totalize under either sign convention")


def relabel(C: EquivariantComplex, auto: Automorphism) -> EquivariantComplex:
    """Apply a group automorphism to every coefficient and character."""
    G = C.group

    def tr(e: GroupRingElement) -> GroupRingElement:
        return e.map_group(G, auto)

    def tr_mod(m: MonomialModule) -> MonomialModule:
        if m.is_free:
            return m
        inv = [0] * len(G)
        for g in range(len(G)):
            inv[auto(g)] = g
        vals = tuple(m.character(inv[g]) for g in range(len(G)))
        return MonomialModule(next(c for c in Q8_CHARACTERS.values() if c.values == vals))

    return EquivariantComplex(
        G,
        {q: [tr_mod(m) for m in ms] for q, ms in C.modules.items()},
        {q: [[tr(e) for e in r] for r in M] for q, M in C.differentials.items()},
        C.labels,
    )


# ------------------------------------------------------------ change of rings

def tensor_coefficients(C: EquivariantComplex, twist: Character = TRIVIAL) -> ZComplex:
    """C ⊗_{Z[G]} Z_twist as a complex of free abelian groups.

    Free columns collapse to rank one and entries are evaluated on the
    twist.  Character modules are only accepted when they equal the twist.
    """
    ranks = {}
    for q, ms in C.modules.items():
        for m in ms:
            if not m.is_free and m.character != twist:
                raise ChainComplexError(
                    f"Z[{m.character}] ⊗ Z[{twist}] is not free; twist incompatible with the complex"
                )
        ranks[q] = len(ms)
    diffs = {
        q: IntegerMatrix.from_rows([[e.evaluate(twist) for e in r] for r in M], C.rank(q))
        for q, M in C.differentials.items()
    }
    return ZComplex(ranks, diffs, C.labels)


@dataclass(frozen=True)
class Quotient:
    """G -> G/H with H normal, and the induced group ring map."""

    group: FiniteGroup
    subgroup: frozenset[int]
    target: FiniteGroup
    project: tuple[int, ...]  # image of each element of G

    def ring_map(self, e: GroupRingElement) -> GroupRingElement:
        return e.map_group(self.target, self.project.__getitem__)

    def descend(self, chi: Character) -> Character | None:
        """The character of G/H induced by chi, or None if chi is nontrivial on H."""
        if any(chi(h) != 1 for h in self.subgroup):
            return None
        vals = [0] * len(self.target)
        for g in range(len(self.group)):
            vals[self.project[g]] = chi(g)
        pool = (C_TRIVIAL, C_SIGN) if self.target is CPRIME else (ONE,)
        return next(c for c in pool if c.values == tuple(vals))


def q8_to_cprime(kernel: Character = GAMMA) -> Quotient:
    """Q8 -> C' = Q8/ker(kernel) for kernel in {alpha, beta, gamma}."""
    if kernel.group is not Q8 or kernel.is_trivial():
        raise ValueError("kernel must be a nontrivial character of Q8")
    H = kernel.kernel
    return Quotient(Q8, H, CPRIME, tuple(0 if g in H else 1 for g in range(8)))


def to_trivial(group: FiniteGroup) -> Quotient:
    return Quotient(group, frozenset(range(len(group))), TRIVIAL_GROUP, (0,) * len(group))


def fixed_points(C: EquivariantComplex, quot: Quotient) -> EquivariantComplex:
    """H-fixed points of C as a complex over G/H.

    Free modules go to free modules on the norm element N_H x; a character
    module survives iff the character is trivial on H.  Entries transform
    by the ring map π, scaled by |H| into a character target and by 1/|H|
    out of a character source.
    """
    if C.group is not quot.group:
        raise ValueError("complex is over the wrong group")
    h = len(quot.subgroup)
    modules: dict[int, list[MonomialModule]] = {}
    keep: dict[int, list[int]] = {}
    for q, ms in C.modules.items():
        out, idx = [], []
        for i, m in enumerate(ms):
            if m.is_free:
                out.append(FREE)
                idx.append(i)
            else:
                chi = quot.descend(m.character)
                if chi is not None:
                    out.append(MonomialModule(chi))
                    idx.append(i)
        modules[q] = out
        keep[q] = idx
    diffs = {}
    for q, M in C.differentials.items():
        src, tgt = C.module_list(q), C.module_list(q - 1)
        D = []
        for t_idx in keep.get(q - 1, []):
            row = []
            for s_idx in keep[q]:
                lam = quot.ring_map(M[t_idx][s_idx])
                if src[s_idx].is_free and not tgt[t_idx].is_free:
                    lam = lam * h
                elif not src[s_idx].is_free and tgt[t_idx].is_free:
                    if any(c % h for c in lam.coeffs):
                        raise ChainComplexError("map from a character module is not H-invariant")
                    lam = GroupRingElement(lam.group, [c // h for c in lam.coeffs])
                row.append(lam)
            D.append(row)
        diffs[q] = D
    labels = {q: [C.label(q)[i] for i in keep[q]] for q in C.modules}
    return EquivariantComplex(quot.target, modules, diffs, labels, check=True)


def fixed_points_z4(C: EquivariantComplex, kernel: Character = GAMMA) -> EquivariantComplex:
    """Fixed points under the order-4 subgroup ker(kernel); ker(gamma) = <ij> by default."""
    return fixed_points(C, q8_to_cprime(kernel))


def as_zcomplex(C: EquivariantComplex) -> ZComplex:
    """A complex over the trivial group is just a ZComplex."""
    if len(C.group) != 1:
        raise ValueError("not a complex over the trivial group")
    return ZComplex(
        {q: len(ms) for q, ms in C.modules.items()},
        {q: IntegerMatrix.from_rows([[e.coeffs[0] for e in r] for r in M], C.rank(q))
         for q, M in C.differentials.items()},
        C.labels,
    )


def fixed_points_z2(C: EquivariantComplex) -> ZComplex:
    """C'-fixed points of a C'-complex: Free -> Z (basis 1+σ), Z -> Z, Z^- -> 0."""
    if C.group is not CPRIME:
        raise ValueError("fixed_points_z2 expects a complex over C'")
    return as_zcomplex(fixed_points(C, to_trivial(CPRIME)))


def fixed_homology(C: EquivariantComplex) -> dict[int, "AbelianGroup"]:
    return fixed_points_z2(C).homology_all()


from .linalg import AbelianGroup  # noqa: E402  (type reference above)
