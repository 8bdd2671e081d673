"""The quaternion group, its quotient C' and their integral group rings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

# units 1, i, j, k with k = ij; products of units as (sign, unit)
_UNIT_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}
_UNIT_NAMES = ("1", "i", "j", "ij")


class FiniteGroup:
    """A finite group given by element names and a multiplication table."""

    def __init__(self, name: str, elements: Sequence[str], mul: Callable[[int, int], int]):
        self.name = name
        self.elements = tuple(elements)
        n = len(self.elements)
        self.table = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
        self.identity = next(a for a in range(n) if all(self.table[a][b] == b for b in range(n)))
        self.inverse = tuple(
            next(b for b in range(n) if self.table[a][b] == self.identity) for a in range(n)
        )
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name})"

    def index(self, name: str) -> int:
        return self._index[name]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)


def _q8_mul(a: int, b: int) -> int:
    sa, ua = (-1 if a >= 4 else 1), a % 4
    sb, ub = (-1 if b >= 4 else 1), b % 4
    s, u = _UNIT_TABLE[(ua, ub)]
    s *= sa * sb
    return u if s == 1 else u + 4


Q8 = FiniteGroup("Q8", _UNIT_NAMES + tuple("-" + u for u in _UNIT_NAMES), _q8_mul)
CPRIME = FiniteGroup("C'", ("1", "σ"), lambda a, b: (a + b) % 2)
TRIVIAL_GROUP = FiniteGroup("1", ("1",), lambda a, b: 0)

I, J, IJ, MINUS_ONE = Q8.index("i"), Q8.index("j"), Q8.index("ij"), Q8.index("-1")


@dataclass(frozen=True)
class Character:
    """One-dimensional sign character of Q8 (or C'), named by its kernel."""

    name: str
    group: FiniteGroup
    values: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.values[g]

    def __mul__(self, other: "Character") -> "Character":
        prod = tuple(a * b for a, b in zip(self.values, other.values))
        return character_from_values(self.group, prod)

    @property
    def kernel(self) -> frozenset[int]:
        return frozenset(g for g, v in enumerate(self.values) if v == 1)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __repr__(self) -> str:
        return self.name


def _q8_char(i_val: int, j_val: int) -> tuple[int, ...]:
    vals = []
    for g in range(8):
        u = g % 4
        v = {0: 1, 1: i_val, 2: j_val, 3: i_val * j_val}[u]
        vals.append(v)  # -1 = i^2 maps to i_val^2 = 1
    return tuple(vals)


TRIVIAL = Character("1", Q8, _q8_char(1, 1))
ALPHA = Character("alpha", Q8, _q8_char(1, -1))
BETA = Character("beta", Q8, _q8_char(-1, 1))
GAMMA = Character("gamma", Q8, _q8_char(-1, -1))
Q8_CHARACTERS = {c.name: c for c in (TRIVIAL, ALPHA, BETA, GAMMA)}

C_TRIVIAL = Character("1", CPRIME, (1, 1))
C_SIGN = Character("sign", CPRIME, (1, -1))
ONE = Character("1", TRIVIAL_GROUP, (1,))


def character_from_values(group: FiniteGroup, values: Sequence[int]) -> Character:
    pool = {Q8: Q8_CHARACTERS.values(), CPRIME: (C_TRIVIAL, C_SIGN), TRIVIAL_GROUP: (ONE,)}[group]
    for c in pool:
        if c.values == tuple(values):
            return c
    raise ValueError("not a character")


class GroupRingElement:
    """Element of Z[G], stored as one integer coefficient per group element."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Sequence[int] | Mapping[int, int] | None = None):
        n = len(group)
        if coeffs is None:
            c = [0] * n
        elif isinstance(coeffs, Mapping):
            c = [0] * n
            for g, v in coeffs.items():
                c[g] += int(v)
        else:
            c = [int(v) for v in coeffs]
            if len(c) != n:
                raise ValueError("coefficient vector has the wrong length")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    @classmethod
    def parse(cls, group: FiniteGroup, text: str) -> "GroupRingElement":
        """Parse sums like ``"1+i-j+(-ij)"`` or ``"4+4σ"``.

        A leading sign is the ring's scalar sign; ``(-g)`` is the group
        element -g, which is different from the scalar -1 times g.
        """
        import re

        text = text.replace(" ", "")
        coeffs = [0] * len(group)
        pos = 0
        token = re.compile(r"([+-]?)(\d*)(\([^)]*\)|[a-zσ]+|)")
        while pos < len(text):
            m = token.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            sign, num, elem = m.groups()
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            elem = elem.strip("()") or "1"
            coeffs[group.index(elem)] += c
            pos = m.end()
        return cls(group, coeffs)

    @classmethod
    def scalar(cls, group: FiniteGroup, c: int) -> "GroupRingElement":
        return cls(group, {group.identity: c})

    @classmethod
    def element(cls, group: FiniteGroup, g: int | str, c: int = 1) -> "GroupRingElement":
        if isinstance(g, str):
            g = group.index(g)
        return cls(group, {g: c})

    @classmethod
    def norm(cls, group: FiniteGroup, subgroup: Iterable[int] | None = None) -> "GroupRingElement":
        sub = range(len(group)) if subgroup is None else subgroup
        return cls(group, {g: 1 for g in sub})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, [-a for a in self.coeffs])

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(self.group, [other * a for a in self.coeffs])
        out = [0] * len(self.group)
        t = self.group.table
        for a, x in enumerate(self.coeffs):
            if x:
                for b, y in enumerate(other.coeffs):
                    if y:
                        out[t[a][b]] += x * y
        return GroupRingElement(self.group, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def evaluate(self, chi: Character) -> int:
        return sum(c * chi(g) for g, c in enumerate(self.coeffs))

    def involution(self) -> "GroupRingElement":
        inv = self.group.inverse
        return GroupRingElement(self.group, {inv[g]: c for g, c in enumerate(self.coeffs) if c})

    def left_translate(self, g: int) -> "GroupRingElement":
        return GroupRingElement.element(self.group, g) * self

    def map_group(self, target: FiniteGroup, f: Callable[[int], int]) -> "GroupRingElement":
        out = [0] * len(target)
        for g, c in enumerate(self.coeffs):
            out[f(g)] += c
        return GroupRingElement(target, out)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == GroupRingElement.scalar(self.group, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.group.name, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for g, c in enumerate(self.coeffs):
            if not c:
                continue
            name = self.group.elements[g]
            if name.startswith("-"):
                name = f"({name})"
            if name == "1":
                t = str(abs(c))
            else:
                t = (str(abs(c)) if abs(c) != 1 else "") + name
            terms.append(("-" if c < 0 else "+") + t)
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


@dataclass(frozen=True)
class Automorphism:
    """Group automorphism given on all elements."""

    group: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.images[g]


def q8_automorphism(i_image: str, j_image: str) -> Automorphism:
    """The automorphism of Q8 sending i and j to the given elements."""
    gi, gj = Q8.index(i_image), Q8.index(j_image)
    images = {Q8.identity: Q8.identity}
    words = {0: [], 1: [I], 2: [J], 3: [I, J]}
    for g in range(8):
        img = Q8.identity
        for w in words[g % 4]:
            img = Q8.mul(img, gi if w == I else gj)
        if g >= 4:
            img = Q8.mul(img, Q8.mul(gi, gi))
        images[g] = img
    auto = Automorphism(Q8, tuple(images[g] for g in range(8)))
    for a in range(8):
        for b in range(8):
            if auto(Q8.mul(a, b)) != Q8.mul(auto(a), auto(b)):
                raise ValueError(f"i -> {i_image}, j -> {j_image} is not an automorphism")
    return auto
