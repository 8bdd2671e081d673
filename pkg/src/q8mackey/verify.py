"""Verification suites comparing builders, closed-form tables and the cellular oracle.

Each check returns a :class:`Check` with the number of comparisons, the
mismatches (capped, with the full count kept), and degrees that fall
outside a published table, which are counted separately and never as
failures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

from . import tables
from .builders import (
    Grading,
    assemble_theorem,
    build_A,
    build_C,
    build_C0m,
    build_fixed_complex,
    build_snrho_complex,
    build_theta,
    canonicalize,
    reduce_fixed_complex,
)
from .chains import ZComplex, dual, homology, shift
from .cworacle import DEFAULT_CELL_BUDGET, SmashSpec, verify_decomposition, verify_lemma
from .groups import ALPHA, GAMMA, TRIVIAL, q8_automorphism
from .linalg import AbelianGroup, IntegerMatrix, determinant, smith_normal_form
from .modules import fixed_points_z2, fixed_points_z4, kronecker_dual, relabel, tensor_coefficients
from .tables import OUT_OF_RANGE

MAX_RECORDED = 50


@dataclass
class Check:
    name: str
    compared: int = 0
    mismatches: int = 0
    outside: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.compared > 0

    def record(self, ok: bool, **detail) -> None:
        self.compared += 1
        if not ok:
            self.mismatches += 1
            if len(self.failures) < MAX_RECORDED:
                self.failures.append(detail)

    def merge(self, other: "Check") -> None:
        self.compared += other.compared
        self.mismatches += other.mismatches
        self.outside += other.outside
        room = MAX_RECORDED - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        self.notes.extend(other.notes)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {self.outside} outside published tables" if self.outside else ""
        return f"{status} {self.name}: {self.compared - self.mismatches}/{self.compared} agree{extra}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "compared": self.compared,
            "mismatches": self.mismatches,
            "outside": self.outside,
            "failures": self.failures,
            "notes": self.notes,
        }


def _s(G) -> str:
    return str(G)


def _compare_table(check: Check, Z: ZComplex, table_id: str, params: dict, **tag) -> None:
    degrees = set(tables.window(table_id, params))
    if Z.span is not None:
        degrees |= set(range(Z.span[0], Z.span[1] + 1))
    for q in sorted(degrees):
        expected = tables.lookup(table_id, params, q)
        if expected is OUT_OF_RANGE:
            check.outside += 1
            continue
        got = homology(Z, q)
        check.record(got == expected, q=q, computed=_s(got), expected=_s(expected), **tag)


# ------------------------------------------------------------ free part

def snrho_fixed(n: int) -> ZComplex:
    return tensor_coefficients(build_snrho_complex(n), TRIVIAL)


def check_snrho(n_max: int = 6) -> Check:
    c = Check("S(nρ) homology table")
    for n in range(1, n_max + 1):
        _compare_table(c, snrho_fixed(n), "SnrhoHomology", {"n": n}, n=n)
    return c


SUSPENSIONS = {"SuspAlpha": (ALPHA, 1), "SuspAlphaBeta": (GAMMA, 2), "SuspAlphaBetaGamma": (TRIVIAL, 3)}


def check_suspensions(n_max: int = 6) -> Check:
    """Twisted coefficient route against the suspension tables."""
    c = Check("suspension tables")
    for table_id, (det, dim) in SUSPENSIONS.items():
        sub = Check(table_id)
        for n in range(1, n_max + 1):
            Z = shift(tensor_coefficients(build_snrho_complex(n), det), dim)
            _compare_table(sub, Z, table_id, {"n": n}, table=table_id, n=n)
        c.notes.append(sub.summary())
        c.merge(sub)
    return c


def check_fixed_list(n_max: int = 6) -> Check:
    """The closed ℤ/4-fixed differentials against the fixed points of the full complex.

    The comparison is literal under ⟨ij⟩; the note records the same
    comparison after exchanging i and ij, i.e. under ⟨i⟩."""
    c = Check("fixed differentials under ⟨ij⟩")
    swap = q8_automorphism("ij", "i")
    alt = True
    for n in range(1, n_max + 1):
        S = build_snrho_complex(n)
        target = build_fixed_complex(n)
        c.record(fixed_points_z4(S) == target, n=n)
        alt &= fixed_points_z4(relabel(S, swap)) == target and fixed_points_z4(S, kernel=ALPHA) == target
    c.notes.append(f"equality under ⟨i⟩ for n <= {n_max}: {alt}")
    return c


def _builder_complexes(n_max: int, m_range=range(-3, 4), s_max: int = 6):
    for n in range(1, n_max + 1):
        yield f"S(nρ) n={n}", build_snrho_complex(n)
        yield f"fixed n={n}", build_fixed_complex(n)
        for r in range(n + 1):
            for sign in ("plus", "minus"):
                yield f"C({r}) {sign} n={n}", build_C(r, sign, n)
    for s in range(s_max + 1):
        for sign in ("plus", "minus"):
            yield f"A{sign}_{s}", build_A(s, sign)
            yield f"A{sign}_{s} dual", kronecker_dual(build_A(s, sign))
    for m in m_range:
        for sign in ("plus", "minus"):
            yield f"C0({m}) {sign}", build_C0m(m, sign)
    for n in range(-min(n_max, 3), min(n_max, 3) + 1):
        for m in m_range:
            for sign in ("plus", "minus"):
                yield f"Θ{sign}_{{{n},{m}}}", build_theta(n, m, sign)


def check_d_squared(n_max: int = 6) -> Check:
    c = Check("d∘d = 0 on constructed complexes")
    for name, C in _builder_complexes(n_max):
        try:
            C.validate()
            C.underlying().validate()
            ok = True
        except ValueError as exc:
            ok, name = False, f"{name}: {exc}"
        c.record(ok, complex=name)
    return c


def check_reduction(n_max: int = 4) -> Check:
    """Quotienting the acyclic pieces keeps homology and lands on Θ⁺_{n,0}."""
    c = Check("acyclic reduction")
    for n in range(1, n_max + 1):
        full = fixed_points_z2(build_fixed_complex(n))
        red = reduce_fixed_complex(n)
        theta = fixed_points_z2(build_theta(n, 0, "plus"))
        for q in range(-1, 4 * n + 1):
            a, b, t = homology(full, q), homology(red, q), homology(theta, q)
            c.record(a == b == t, n=n, q=q, full=_s(a), reduced=_s(b), theta=_s(t))
    return c


# ------------------------------------------------------------ propositions

PROP1_VARIANTS = {
    "A+": lambda s: build_A(s, "plus"),
    "A+dual": lambda s: kronecker_dual(build_A(s, "plus")),
    "A-": lambda s: build_A(s, "minus"),
    "A-dual": lambda s: kronecker_dual(build_A(s, "minus")),
}


def check_prop1(s_max: int = 8) -> Check:
    c = Check("A-family closed forms")
    for variant, make in PROP1_VARIANTS.items():
        for s in range(s_max + 1):
            _compare_table(c, fixed_points_z2(make(s)), "AFamily", {"variant": variant, "s": s},
                           variant=variant, s=s)
    return c


def check_theta_tables(n_max: int = 5, m_max: int = 8) -> dict[str, Check]:
    """Θ± against the closed forms, one check per family and m-regime."""
    out: dict[str, Check] = {}
    for sign in ("plus", "minus"):
        for n in [*range(1, n_max + 1), *range(-n_max, 0)]:
            table_id = "ThetaPos" if n > 0 else "ThetaNeg"
            for m in range(-m_max, m_max + 1):
                key = f"{table_id} {sign} {'m<=0' if m <= 0 else 'm>0'}"
                c = out.setdefault(key, Check(key))
                Z = fixed_points_z2(build_theta(n, m, sign))
                _compare_table(c, Z, table_id, {"sign": sign, "n": n, "m": m}, sign=sign, n=n, m=m)
    return out


def check_props(n_max: int = 5, m_max: int = 8) -> Check:
    c = Check("Θ closed forms")
    for sub in check_theta_tables(n_max, m_max).values():
        c.notes.append(sub.summary())
        c.merge(sub)
    return c


# ------------------------------------------------------------ oracle comparisons

def check_lemma_decomposition(k_max: int = 7) -> Check:
    c = Check("S^{kα+ℓβ} decomposition")
    ranks = True
    for k in range(k_max + 1):
        for l in range(k + 1):
            rep = verify_lemma(k, l)
            ranks &= rep["ranks_match"]
            for row in rep["degrees"]:
                c.record(row["match"], k=k, l=l, q=row["q"], oracle=row["oracle"], lemma=row["lemma"])
    c.notes.append(f"cell ranks per degree agree: {ranks}")
    return c


def theorem_grid(k_max: int = 3, m_max: int = 3, n_max: int = 2):
    for k in range(k_max + 1):
        for l in range(k + 1):
            for m in range(m_max + 1):
                for n in range(n_max + 1):
                    yield k, l, m, n


def check_oracle(k_max: int = 3, m_max: int = 3, n_max: int = 2,
                 budget: int | None = DEFAULT_CELL_BUDGET) -> Check:
    """Assembled theorem against the cellular oracle; mismatches carry the matrices."""
    c = Check("theorem vs cellular oracle")
    for k, l, m, n in theorem_grid(k_max, m_max, n_max):
        rep = verify_decomposition(SmashSpec(k, l, m, n), budget=budget)
        for row in rep["degrees"]:
            detail = {"grading": [k, l, m, n], "q": row["q"], "oracle": row["oracle"], "theorem": row["theorem"]}
            if "forensics" in row:
                detail["forensics"] = row["forensics"]
            c.record(row["match"], **detail)
    return c


def check_free_oracle(k_max: int = 3, m_max: int = 3, n_max: int = 2,
                      budget: int | None = DEFAULT_CELL_BUDGET) -> Check:
    """Twisted free complex against the cellular oracle for S^V ∧ S(nρ)₊."""
    c = Check("twisted free complex vs cellular oracle")
    for k, l, m, n in theorem_grid(k_max, m_max, n_max):
        if n == 0:
            continue
        rep = verify_decomposition(SmashSpec(k, l, m, n, include_cofiber=False), budget=budget)
        for row in rep["degrees"]:
            c.record(row["match"], grading=[k, l, m, n], q=row["q"])
    return c


# ------------------------------------------------------------ duality

def universal_coefficients_ok(Z: ZComplex) -> list[int]:
    """Degrees where H_{-q}(dual) fails to be Z^{b_q} + T_{q-1}."""
    bad = []
    D = dual(Z)
    if Z.span is None:
        return bad
    lo, hi = Z.span
    for q in range(lo - 1, hi + 2):
        expected = AbelianGroup.from_orders(homology(Z, q).free_rank, homology(Z, q - 1).torsion)
        if homology(D, -q) != expected:
            bad.append(q)
    return bad


def check_universal_coefficients(n_max: int = 4) -> Check:
    c = Check("universal coefficients on builder outputs")
    for name, C in _builder_complexes(n_max):
        for view, Z in (("fixed", fixed_points_z2(C) if len(C.group) == 2 else None),
                        ("underlying", C.underlying())):
            if Z is None:
                continue
            bad = universal_coefficients_ok(Z)
            c.record(not bad, complex=name, view=view, degrees=bad)
    return c


def check_cohomology_routes(k_max: int = 3, m_max: int = 3, n_max: int = 2) -> Check:
    """Dual decomposition against the dual of the homology decomposition."""
    c = Check("cohomology decomposition vs dualized homology decomposition")
    for k, l, m, n in theorem_grid(k_max, m_max, n_max):
        g = Grading(k, l, m, n)
        canon, _ = canonicalize(g)
        coh = fixed_points_z2(assemble_theorem(canon, "cohomology"))
        hom_dual = dual(fixed_points_z2(assemble_theorem(canon, "homology")))
        spans = [Z.span for Z in (coh, hom_dual) if Z.span]
        lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
        for q in range(lo, hi + 1):
            a, b = homology(coh, q), homology(hom_dual, q)
            c.record(a == b, grading=[k, l, m, n], degree=-q, cohomology=_s(a), dualized=_s(b))
    return c


# ------------------------------------------------------------ Smith normal form

def naive_invariant_factors(rows: list[list[int]]) -> tuple[int, ...]:
    """Invariant factors from gcds of k×k minors."""
    if not rows or not rows[0]:
        return ()
    r, cdim = len(rows), len(rows[0])
    prev, out = 1, []
    for k in range(1, min(r, cdim) + 1):
        g = 0
        for I in combinations(range(r), k):
            for J in combinations(range(cdim), k):
                g = gcd(g, determinant(IntegerMatrix.from_rows([[rows[i][j] for j in J] for i in I])))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def snf_violations(M: IntegerMatrix) -> list[str]:
    res = smith_normal_form(M)
    problems = []
    if res.U @ M @ res.V != res.S:
        problems.append("U·M·V != S")
    if abs(determinant(res.U)) != 1 or abs(determinant(res.V)) != 1:
        problems.append("transform not unimodular")
    diag = [res.S[i, i] for i in range(min(M.shape))]
    off = any(res.S[i, j] for i in range(M.rows) for j in range(M.cols) if i != j)
    if off:
        problems.append("S not diagonal")
    nz = [d for d in diag if d]
    if diag[:len(nz)] != nz or any(d < 0 for d in nz) or any(b % a for a, b in zip(nz, nz[1:])):
        problems.append("diagonal not a divisor chain")
    if tuple(nz) != res.invariant_factors:
        problems.append("invariant factors disagree with S")
    return problems


def check_snf(samples: int = 10_000, max_dim: int = 6, bound: int = 9, seed: int = 20260101) -> Check:
    c = Check("Smith normal form properties")
    rng = random.Random(seed)
    for i in range(samples):
        r, k = rng.randint(1, max_dim), rng.randint(1, max_dim)
        rows = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(r)]
        M = IntegerMatrix.from_rows(rows)
        problems = snf_violations(M)
        if r <= 3 and k <= 3 and smith_normal_form(M).invariant_factors != naive_invariant_factors(rows):
            problems.append("disagrees with minor gcds")
        c.record(not problems, sample=i, matrix=rows, problems=problems)
    return c


# ------------------------------------------------------------ suites

SUITES = ("lemma", "props", "theorems", "oracle")


def run_suite(name: str, *, n_max: int | None = None, m_max: int | None = None, k_max: int | None = None,
              budget: int | None = DEFAULT_CELL_BUDGET) -> list[Check]:
    if name == "lemma":
        n = n_max or 6
        return [check_snrho(n), check_suspensions(n), check_fixed_list(n), check_d_squared(n),
                check_reduction(min(n, 4))]
    if name == "props":
        return [check_prop1(), check_props(n_max or 5, m_max or 8)]
    if name == "theorems":
        return [check_lemma_decomposition(k_max if k_max is not None else 7),
                check_universal_coefficients(min(n_max or 4, 4)),
                check_cohomology_routes(k_max if k_max is not None else 3, m_max if m_max is not None else 3,
                                        n_max if n_max is not None else 2)]
    if name == "oracle":
        k = k_max if k_max is not None else 3
        m = m_max if m_max is not None else 3
        n = n_max if n_max is not None else 2
        return [check_oracle(k, m, n, budget), check_free_oracle(k, m, n, budget)]
    raise ValueError(f"unknown suite {name!r}")
