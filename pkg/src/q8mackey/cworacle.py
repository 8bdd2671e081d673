"""Independent cellular oracle.

Every module here is a signed permutation module: a Z basis permuted up to
sign by the group.  Cellular chains of representation spheres and of
S(nρ) are built cell by cell, smashed by the tensor product with the
diagonal action and Leibniz signs, and reduced by taking fixed points on
orbit sums.  Nothing from ``builders`` is used, so agreement between the
two is a genuine cross-check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .chains import ChainComplexError, ZComplex, homology
from .groups import CPRIME, Q8, TRIVIAL_GROUP, Character, FiniteGroup
from .linalg import AbelianGroup, IntegerMatrix

DEFAULT_CELL_BUDGET = 20_000


class BudgetExceeded(RuntimeError):
    """The requested complex would exceed the configured cell budget."""


@dataclass
class MonoComplex:
    """Complex of signed permutation modules.

    ``perm[q][g][x]`` and ``sign[q][g][x]`` give ``g·e_x = sign * e_{perm}``;
    ``diff[q][x]`` is ``d(e_x)`` in degree q - 1 as ``{y: coefficient}``.
    """

    group: FiniteGroup
    perm: dict[int, list[list[int]]]
    sign: dict[int, list[list[int]]]
    diff: dict[int, list[dict[int, int]]]
    names: dict[int, list[str]] = field(default_factory=dict)

    def rank(self, q: int) -> int:
        p = self.perm.get(q)
        return len(p[0]) if p else 0

    @property
    def degrees(self) -> list[int]:
        return sorted(q for q in self.perm if self.rank(q))

    def total_cells(self) -> int:
        return sum(self.rank(q) for q in self.perm)

    def act(self, g: int, q: int, vec: dict[int, int]) -> dict[int, int]:
        p, s = self.perm[q][g], self.sign[q][g]
        return {p[x]: s[x] * c for x, c in vec.items()}

    def validate(self) -> None:
        """d∘d = 0 and equivariance d(g e_x) = g d(e_x)."""
        n = len(self.group)
        for q in self.degrees:
            for x in range(self.rank(q)):
                dx = self.diff.get(q, [{}] * self.rank(q))[x]
                if q - 1 in self.diff and dx:
                    acc: dict[int, int] = {}
                    for y, c in dx.items():
                        for z, e in self.diff[q - 1][y].items():
                            acc[z] = acc.get(z, 0) + c * e
                    if any(acc.values()):
                        raise ChainComplexError(f"d∘d != 0 on degree {q} cell {x}")
                for g in range(n):
                    gx, s = self.perm[q][g][x], self.sign[q][g][x]
                    lhs = {y: s * c for y, c in self.diff[q][gx].items()} if q in self.diff else {}
                    rhs = self.act(g, q - 1, dx) if dx else {}
                    if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                        raise ChainComplexError(f"differential not equivariant at degree {q} cell {x}")

    def to_zcomplex(self) -> ZComplex:
        ranks = {q: self.rank(q) for q in self.degrees}
        diffs = {}
        for q in self.degrees:
            if q in self.diff and self.rank(q - 1):
                rows = self.rank(q - 1)
                cols = self.rank(q)
                flat = [0] * (rows * cols)
                for x, col in enumerate(self.diff[q]):
                    for y, c in col.items():
                        flat[y * cols + x] += c
                diffs[q] = IntegerMatrix(rows, cols, flat)
        return ZComplex(ranks, diffs, self.names, check=False)


def _regular_action(group: FiniteGroup, cosets: Sequence[frozenset[int]]):
    """Left action of the group on a list of cosets gK (as index permutations)."""
    index = {}
    for c_idx, c in enumerate(cosets):
        for g in c:
            index[g] = c_idx
    perms = []
    for g in range(len(group)):
        perms.append([index[group.mul(g, next(iter(c)))] for c in cosets])
    return perms


def left_cosets(group: FiniteGroup, K: frozenset[int]) -> list[frozenset[int]]:
    seen, out = set(), []
    for g in range(len(group)):
        if g in seen:
            continue
        c = frozenset(group.mul(g, k) for k in K)
        seen |= c
        out.append(c)
    return out


def build_rep_sphere(chi: Character, t: int) -> MonoComplex:
    """Reduced cellular chains of S^{tχ}: a fixed 0-cell, then in each degree
    1..t the two cells of the free orbit Q8/ker χ.  d_1 is the augmentation
    and d_p = 1 - (-1)^p g with g outside ker χ."""
    G = chi.group
    n = len(G)
    ident = list(range(1))
    perm = {0: [[0] for _ in range(n)]}
    sign = {0: [[1] for _ in range(n)]}
    diff: dict[int, list[dict[int, int]]] = {}
    names = {0: ["pt"]}
    if t == 0:
        return MonoComplex(G, perm, sign, diff, names)
    cos = left_cosets(G, chi.kernel)
    act = _regular_action(G, cos)
    # basis 0 = ker χ, basis 1 = the other coset
    for p in range(1, t + 1):
        perm[p] = [list(a) for a in act]
        sign[p] = [[1, 1] for _ in range(n)]
        names[p] = [f"{chi.name}{p}+", f"{chi.name}{p}-"]
        if p == 1:
            diff[1] = [{0: 1}, {0: 1}]
        else:
            eps = -((-1) ** p)
            diff[p] = [{0: 1, 1: eps}, {1: 1, 0: eps}]
    del ident
    return MonoComplex(G, perm, sign, diff, names)


# S(nρ) boundary data re-transcribed from the cell-by-cell list of incidence
# numbers.  Each target is (cell, scalar, group element).
_SNRHO = {
    "b1": [("a1", 1, "i"), ("a1", -1, "1")],
    "b2": [("a1", 1, "j"), ("a1", -1, "1")],
    "b3": [("a1", 1, "ij"), ("a1", -1, "1")],
    "c1": [("b1", 1, "1"), ("b2", -1, "1"), ("b3", -1, "j")],
    "c2": [("b1", 1, "1"), ("b3", -1, "1"), ("b2", 1, "i")],
    "c3": [("b2", 1, "1"), ("b3", -1, "1"), ("b1", -1, "ij")],
    "c4": [("b3", -1, "j"), ("b1", -1, "ij"), ("b2", -1, "i")],
    "d1": [("c1", 1, "1"), ("c2", -1, "1"), ("c3", 1, "1"), ("c4", -1, "1")],
    "d2": [("c1", 1, "1"), ("c2", -1, "j"), ("c3", 1, "-ij"), ("c4", -1, "-i")],
}
_LAYERS = (("a1",), ("b1", "b2", "b3"), ("c1", "c2", "c3", "c4"), ("d1", "d2"))


def build_sphere_nrho_plus(n: int) -> MonoComplex:
    """Unreduced cellular chains of S(nρ): free Q8-cells, basis (cell, g) = g·cell."""
    G = Q8
    perm, sign, diff, names = {}, {}, {}, {}
    for r in range(1, n + 1):
        for off, layer in enumerate(_LAYERS):
            q = 4 * r - 4 + off
            size = len(layer) * 8
            perm[q] = [[(x // 8) * 8 + G.mul(g, x % 8) for x in range(size)] for g in range(8)]
            sign[q] = [[1] * size for _ in range(8)]
            names[q] = [f"{G.elements[x % 8]}·{layer[x // 8][0]}_{{{r},{layer[x // 8][1]}}}"
                        for x in range(size)]
            if q == 0:
                continue
            cols = []
            for x in range(size):
                cell, g = layer[x // 8], x % 8
                col: dict[int, int] = {}
                if off == 0:
                    # a_{r,1} -> norm element times (d_{r-1,1} - d_{r-1,2})
                    for h in range(8):
                        gh = G.mul(g, h)
                        col[0 * 8 + gh] = col.get(0 * 8 + gh, 0) + 1
                        col[1 * 8 + gh] = col.get(1 * 8 + gh, 0) - 1
                else:
                    prev = _LAYERS[off - 1]
                    for tgt, c, elem in _SNRHO[cell]:
                        y = prev.index(tgt) * 8 + G.mul(g, G.index(elem))
                        col[y] = col.get(y, 0) + c
                cols.append({k: v for k, v in col.items() if v})
            diff[q] = cols
    return MonoComplex(G, perm, sign, diff, names)


def build_sphere_nrho(n: int) -> MonoComplex:
    """Reduced chains of S^{nρ}: the cone on the augmentation C(S(nρ)_+) -> Z."""
    base = build_sphere_nrho_plus(n) if n > 0 else None
    G = Q8
    perm = {0: [[0] for _ in range(8)]}
    sign = {0: [[1] for _ in range(8)]}
    diff: dict[int, list[dict[int, int]]] = {}
    names = {0: ["pt"]}
    if base is None:
        return MonoComplex(G, perm, sign, diff, names)
    for q in base.degrees:
        perm[q + 1] = base.perm[q]
        sign[q + 1] = base.sign[q]
        names[q + 1] = ["Σ" + s for s in base.names[q]]
        if q == 0:
            diff[1] = [{0: 1} for _ in range(base.rank(0))]
        else:
            diff[q + 1] = [{y: -c for y, c in col.items()} for col in base.diff[q]]
    return MonoComplex(G, perm, sign, diff, names)


def mono_dual(C: MonoComplex) -> MonoComplex:
    """Hom_Z(C, Z) with the contragredient action; dual bases, degrees negated."""
    G = C.group
    perm, sign, diff, names = {}, {}, {}, {}
    for q in C.degrees:
        perm[-q] = [list(p) for p in C.perm[q]]
        # (g·f)(v) = f(g^-1 v); on dual basis with signed permutations the sign is unchanged
        sign[-q] = [[C.sign[q][G.inverse[g]][C.perm[q][g][x]] for x in range(C.rank(q))]
                    for g in range(len(G))]
        names[-q] = [s + "*" for s in C.names.get(q, [str(i) for i in range(C.rank(q))])]
    for q in C.degrees:
        if q in C.diff and C.rank(q - 1):
            cols = [dict() for _ in range(C.rank(q - 1))]
            for x, col in enumerate(C.diff[q]):
                for y, c in col.items():
                    cols[y][x] = c
            diff[1 - q] = cols
    return MonoComplex(G, perm, sign, diff, names)


def smash(factors: Sequence[MonoComplex], budget: int | None = DEFAULT_CELL_BUDGET) -> MonoComplex:
    """Tensor product of reduced complexes with the diagonal action."""
    factors = list(factors)
    if not factors:
        raise ValueError("smash of nothing")
    out = factors[0]
    for B in factors[1:]:
        out = _smash2(out, B, budget)
    return out


def _smash2(A: MonoComplex, B: MonoComplex, budget: int | None) -> MonoComplex:
    G = A.group
    estimate = A.total_cells() * B.total_cells()
    if budget is not None and estimate > budget * len(G):
        raise BudgetExceeded(f"smash would have {estimate} cells (budget {budget * len(G)})")
    index: dict[int, dict[tuple[int, int, int], int]] = {}
    pairs: dict[int, list[tuple[int, int, int]]] = {}
    for p in A.degrees:
        for r in B.degrees:
            q = p + r
            lst = pairs.setdefault(q, [])
            idx = index.setdefault(q, {})
            for x in range(A.rank(p)):
                for y in range(B.rank(r)):
                    idx[(p, x, y)] = len(lst)
                    lst.append((p, x, y))
    perm, sign, diff, names = {}, {}, {}, {}
    n = len(G)
    for q, lst in pairs.items():
        perm[q] = [[index[q][(p, A.perm[p][g][x], B.perm[q - p][g][y])] for (p, x, y) in lst]
                   for g in range(n)]
        sign[q] = [[A.sign[p][g][x] * B.sign[q - p][g][y] for (p, x, y) in lst] for g in range(n)]
        names[q] = [f"{A.names.get(p, ['?'] * (x + 1))[x]}⊗{B.names.get(q - p, ['?'] * (y + 1))[y]}"
                    for (p, x, y) in lst]
    for q, lst in pairs.items():
        if q - 1 not in pairs:
            continue
        tgt = index[q - 1]
        cols = []
        for (p, x, y) in lst:
            col: dict[int, int] = {}
            if p in A.diff:
                for x2, c in A.diff[p][x].items():
                    k = tgt[(p - 1, x2, y)]
                    col[k] = col.get(k, 0) + c
            r = q - p
            if r in B.diff:
                s = -1 if p % 2 else 1
                for y2, c in B.diff[r][y].items():
                    k = tgt[(p, x, y2)]
                    col[k] = col.get(k, 0) + s * c
            cols.append({k: v for k, v in col.items() if v})
        diff[q] = cols
    return MonoComplex(G, perm, sign, diff, names)


@dataclass(frozen=True)
class Quot:
    """G -> G/H for a normal subgroup H, with the quotient realized as a group."""

    group: FiniteGroup
    H: frozenset[int]
    target: FiniteGroup
    project: tuple[int, ...]
    section: tuple[int, ...]  # a preimage for each element of the quotient


def quotient_by(group: FiniteGroup, H: frozenset[int]) -> Quot:
    if len(H) == len(group):
        return Quot(group, H, TRIVIAL_GROUP, (0,) * len(group), (group.identity,))
    if len(group) == 8 and len(H) == 4:
        proj = tuple(0 if g in H else 1 for g in range(8))
        outside = next(g for g in range(8) if g not in H)
        return Quot(group, H, CPRIME, proj, (group.identity, outside))
    raise ValueError("only index-2 and full quotients are needed here")


def mono_fixed_points(C: MonoComplex, quot: Quot) -> MonoComplex:
    """H-fixed points on orbit sums, as a signed permutation complex over G/H."""
    H = sorted(quot.H)
    G = C.group
    reps: dict[int, list[int]] = {}
    where: dict[int, dict[int, tuple[int, int]]] = {}  # basis x -> (fixed index, sign)
    for q in C.degrees:
        seen: dict[int, tuple[int, int]] = {}
        rep_list: list[int] = []
        for x in range(C.rank(q)):
            if x in seen:
                continue
            orbit: dict[int, int] = {}
            dead = False
            for h in H:
                y, s = C.perm[q][h][x], C.sign[q][h][x]
                if y in orbit:
                    if orbit[y] != s:
                        dead = True
                else:
                    orbit[y] = s
            if dead:
                for y in orbit:
                    seen[y] = (-1, 0)
                continue
            k = len(rep_list)
            rep_list.append(x)
            for y, s in orbit.items():
                seen[y] = (k, s)
        reps[q] = rep_list
        where[q] = seen
    perm, sign, diff, names = {}, {}, {}, {}
    m = len(quot.target)
    for q, rl in reps.items():
        if not rl:
            continue
        perm[q], sign[q] = [], []
        for a in range(m):
            g = quot.section[a]
            pp, ss = [], []
            for x in rl:
                k, s = where[q][C.perm[q][g][x]]
                pp.append(k)
                ss.append(C.sign[q][g][x] * s)
            perm[q].append(pp)
            sign[q].append(ss)
        names[q] = [C.names.get(q, [str(i) for i in range(C.rank(q))])[x] for x in rl]
    for q, rl in reps.items():
        if not rl or q not in C.diff or not reps.get(q - 1):
            continue
        idx = {x: k for k, x in enumerate(reps[q - 1])}
        cols = []
        for x in rl:
            # coefficient of each target orbit sum = coefficient on its representative
            acc: dict[int, int] = {}
            for y, s in _orbit_vector(C, q, x, H).items():
                for z, c in C.diff[q][y].items():
                    if z in idx:
                        acc[idx[z]] = acc.get(idx[z], 0) + s * c
            cols.append({k: v for k, v in acc.items() if v})
        diff[q] = cols
    return MonoComplex(quot.target, perm, sign, diff, names)


def _orbit_vector(C: MonoComplex, q: int, x: int, H: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for h in H:
        y, s = C.perm[q][h][x], C.sign[q][h][x]
        out[y] = s
    return out


def fixed_under_kernel(C: MonoComplex, chi: Character) -> MonoComplex:
    return mono_fixed_points(C, quotient_by(C.group, chi.kernel))


def total_fixed_points(C: MonoComplex) -> ZComplex:
    return mono_fixed_points(C, quotient_by(C.group, frozenset(range(len(C.group))))).to_zcomplex()


def homology_table(Z: ZComplex, degrees: Sequence[int] | None = None) -> dict[int, AbelianGroup]:
    if degrees is None:
        if not Z.ranks:
            return {}
        lo, hi = Z.span
        degrees = range(lo, hi + 1)
    return {q: homology(Z, q) for q in degrees}


def from_equivariant(C) -> MonoComplex:
    """Signed permutation model of an EquivariantComplex with free and character modules."""
    G = C.group
    n = len(G)
    perm, sign, diff, names = {}, {}, {}, {}
    offsets: dict[int, list[int]] = {}
    for q in C.degrees:
        offs, size = [], 0
        for mod in C.module_list(q):
            offs.append(size)
            size += n if mod.is_free else 1
        offsets[q] = offs
        p_rows, s_rows = [], []
        for g in range(n):
            pr, sr = [], []
            for idx, mod in enumerate(C.module_list(q)):
                if mod.is_free:
                    pr.extend(offs[idx] + G.mul(g, h) for h in range(n))
                    sr.extend([1] * n)
                else:
                    pr.append(offs[idx])
                    sr.append(mod.character(g))
            p_rows.append(pr)
            s_rows.append(sr)
        perm[q], sign[q] = p_rows, s_rows
        labels = C.label(q)
        nm = []
        for idx, mod in enumerate(C.module_list(q)):
            if mod.is_free:
                nm.extend(f"{G.elements[h]}·{labels[idx]}" for h in range(n))
            else:
                nm.append(labels[idx])
        names[q] = nm
    Z = C.underlying()
    for q in C.degrees:
        if q in Z.differentials and C.rank(q - 1):
            M = Z.d(q)
            cols = []
            for x in range(M.cols):
                cols.append({y: M[y, x] for y in range(M.rows) if M[y, x]})
            diff[q] = cols
    return MonoComplex(G, perm, sign, diff, names)


# ------------------------------------------------------------ grading engine

def _signed_sphere(chi: Character, t: int) -> MonoComplex:
    S = build_rep_sphere(chi, abs(t))
    return mono_dual(S) if t < 0 else S


def sphere_complex(k: int, l: int, m: int, n: int, *, cofiber: bool = True,
                   budget: int | None = DEFAULT_CELL_BUDGET) -> MonoComplex:
    """Chains of S^{kα+ℓβ+mγ} smashed with S^{nρ} (cofiber) or with S(nρ)₊.

    Negative weights use the dual complex of the positive sphere, which is
    its Spanier-Whitehead dual on the chain level."""
    from .groups import ALPHA, BETA, GAMMA

    factors = [_signed_sphere(ALPHA, k), _signed_sphere(BETA, l), _signed_sphere(GAMMA, m)]
    if n:
        if cofiber:
            R = build_sphere_nrho(abs(n))
            factors.append(mono_dual(R) if n < 0 else R)
        else:
            if n < 0:
                raise ValueError("S(nρ)₊ needs n >= 0")
            factors.append(build_sphere_nrho_plus(n))
    total = 1
    for f in factors:
        total *= f.total_cells()
    if budget is not None and total > budget * len(Q8):
        raise BudgetExceeded(f"smash needs {total} basis cells, above {budget * len(Q8)}")
    return smash(factors, budget=None)


def oracle_fixed_complex(k: int, l: int, m: int, n: int, *, cofiber: bool = True,
                         mode: str = "homology", budget: int | None = DEFAULT_CELL_BUDGET) -> ZComplex:
    """Q8-fixed chains (or cochains, negated degrees) of the smash complex."""
    X = sphere_complex(k, l, m, n, cofiber=cofiber, budget=budget)
    if mode == "cohomology":
        X = mono_dual(X)
    return total_fixed_points(X)


def oracle_coefficient(k: int, l: int, m: int, n: int, q: int, mode: str = "homology",
                       budget: int | None = DEFAULT_CELL_BUDGET) -> AbelianGroup:
    Z = oracle_fixed_complex(k, l, m, n, mode=mode, budget=budget)
    return homology(Z, q if mode == "homology" else -q)


# ------------------------------------------------------------ verification

@dataclass(frozen=True)
class SmashSpec:
    k: int
    l: int
    m: int
    n: int
    include_cofiber: bool = True

    def __post_init__(self):
        if min(self.k, self.l, self.m, self.n) < 0:
            raise ValueError("the oracle covers nonnegative multiplicities only")


def _twisted_free_route(spec: SmashSpec) -> ZComplex:
    """S(nρ)₊ smashed with S^V: the free complex twisted by det V, shifted by dim V."""
    from .builders import build_snrho_complex
    from .chains import shift
    from .groups import ALPHA, BETA, GAMMA, TRIVIAL
    from .modules import tensor_coefficients

    det = TRIVIAL
    for chi, t in ((ALPHA, spec.k), (BETA, spec.l), (GAMMA, spec.m)):
        if t % 2:
            det = det * chi
    return shift(tensor_coefficients(build_snrho_complex(spec.n), det), spec.k + spec.l + spec.m)


def _table_route(spec: SmashSpec, q: int):
    """Closed-form value where a published table applies, else None."""
    from . import tables

    if spec.include_cofiber or spec.n < 1:
        return None
    key = {(0, 0, 0): "SnrhoHomology", (1, 0, 0): "SuspAlpha", (1, 1, 0): "SuspAlphaBeta",
           (1, 1, 1): "SuspAlphaBetaGamma"}.get((spec.k, spec.l, spec.m))
    if key is None:
        return None
    return tables.lookup(key, {"n": spec.n}, q)


def _matrix_dump(Z: ZComplex, q: int) -> dict:
    out = {}
    for deg in (q, q + 1):
        if deg in Z.differentials:
            out[f"d_{deg}"] = Z.d(deg).to_rows()
    return out


def verify_decomposition(spec: SmashSpec, degrees: Sequence[int] | None = None,
                         budget: int | None = DEFAULT_CELL_BUDGET) -> dict:
    """Oracle homology against the decomposition route, degree by degree.

    With the cofiber the decomposition is the assembled theorem; without it
    the free complex twisted by the orientation character and shifted by
    the sphere dimension.  Raises BudgetExceeded instead of truncating."""
    from .builders import Grading, assemble_theorem, canonicalize
    from .modules import fixed_points_z2

    oracle = oracle_fixed_complex(spec.k, spec.l, spec.m, spec.n, cofiber=spec.include_cofiber,
                                  budget=budget)
    if spec.include_cofiber:
        canon, cert = canonicalize(Grading(spec.k, spec.l, spec.m, spec.n))
        route = fixed_points_z2(assemble_theorem(canon, cert.mode))
        route_name = "theorem"
    else:
        route = _twisted_free_route(spec)
        route_name = "twisted-free"
    if degrees is None:
        spans = [Z.span for Z in (oracle, route) if Z.span is not None]
        lo = min(s[0] for s in spans) if spans else 0
        hi = max(s[1] for s in spans) if spans else 0
        degrees = range(lo, hi + 1)
    rows = []
    ok = True
    for q in degrees:
        o, r = homology(oracle, q), homology(route, q)
        row = {"q": q, "oracle": o.to_json(), route_name: r.to_json(), "match": o == r}
        table = _table_route(spec, q)
        if table is not None:
            from .tables import OUT_OF_RANGE

            if table is OUT_OF_RANGE:
                row["table"] = None
                row["note"] = "outside published table"
            else:
                row["table"] = table.to_json()
                row["table_match"] = table == o
        if not row["match"]:
            ok = False
            row["forensics"] = {"oracle": _matrix_dump(oracle, q), route_name: _matrix_dump(route, q)}
        rows.append(row)
    return {
        "spec": {"k": spec.k, "l": spec.l, "m": spec.m, "n": spec.n, "include_cofiber": spec.include_cofiber},
        "route": route_name,
        "cells": sum(oracle.ranks.values()),
        "pass": ok,
        "degrees": rows,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def verify_lemma(k: int, l: int, budget: int | None = DEFAULT_CELL_BUDGET) -> dict:
    """Compare S^{kα+ℓβ} against the closed decomposition, after ⟨ij⟩ and after all of Q8.

    Rank per degree of the ⟨ij⟩-fixed complex is reported too; it is the
    part of the decomposition that survives."""
    from .builders import build_lemma_sum
    from .groups import ALPHA, BETA, GAMMA
    from .modules import fixed_points_z2

    X = smash([build_rep_sphere(ALPHA, k), build_rep_sphere(BETA, l)], budget=budget)
    mid = fixed_under_kernel(X, GAMMA)
    L = build_lemma_sum(k, l)
    under_o, under_l = mid.to_zcomplex(), from_equivariant(L).to_zcomplex()
    fixed_o, fixed_l = total_fixed_points(X), fixed_points_z2(L)
    rows, ok, ranks_ok = [], True, True
    for q in range(0, k + l + 2):
        r = {
            "q": q,
            "rank_oracle": under_o.ranks.get(q, 0),
            "rank_lemma": under_l.ranks.get(q, 0),
            "oracle": homology(fixed_o, q).to_json(),
            "lemma": homology(fixed_l, q).to_json(),
        }
        r["match"] = r["oracle"] == r["lemma"] and homology(under_o, q) == homology(under_l, q)
        ranks_ok &= r["rank_oracle"] == r["rank_lemma"]
        ok &= r["match"]
        if not r["match"]:
            r["forensics"] = {"oracle": _matrix_dump(fixed_o, q), "lemma": _matrix_dump(fixed_l, q)}
        rows.append(r)
    return {"k": k, "l": l, "pass": ok, "ranks_match": ranks_ok, "degrees": rows}
