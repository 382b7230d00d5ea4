"""Exact monomials and monomial ideals.

Variables are 1-based everywhere a caller can see them; exponent vectors are
plain tuples indexed from 0 internally.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class AmbientMismatch(ValueError):
    """Two monomials or ideals live in polynomial rings of different size."""


def _check_same(a: int, b: int) -> None:
    if a != b:
        raise AmbientMismatch(f"ambient variable counts differ: {a} != {b}")


@dataclass(frozen=True, order=True)
class Monomial:
    exps: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exps):
            raise ValueError(f"negative exponent in {self.exps}")

    @classmethod
    def unit(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def from_support(cls, indices: Iterable[int], n: int) -> Monomial:
        """Squarefree monomial prod_{i in indices} x_i (1-based indices)."""
        exps = [0] * n
        for i in indices:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} outside 1..{n}")
            exps[i - 1] = 1
        return cls(tuple(exps))

    @classmethod
    def var(cls, i: int, n: int, e: int = 1) -> Monomial:
        exps = [0] * n
        exps[i - 1] = e
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, e in enumerate(self.exps) if e)

    @property
    def mask(self) -> int:
        """Bitmask of the support; bit i-1 is set iff x_i divides."""
        m = 0
        for i, e in enumerate(self.exps):
            if e:
                m |= 1 << i
        return m

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def is_unit(self) -> bool:
        return not any(self.exps)

    def divides(self, other: Monomial) -> bool:
        _check_same(self.n, other.n)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def lcm(self, other: Monomial) -> Monomial:
        _check_same(self.n, other.n)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def __mul__(self, other: Monomial) -> Monomial:
        _check_same(self.n, other.n)
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __str__(self) -> str:
        return format_monomial(self)


def support(m: Monomial) -> frozenset[int]:
    return m.support()


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def lcm_all(ms: Iterable[Monomial], n: int) -> Monomial:
    out = [0] * n
    for m in ms:
        _check_same(m.n, n)
        for i, e in enumerate(m.exps):
            if e > out[i]:
                out[i] = e
    return Monomial(tuple(out))


def _canonical(ms: Iterable[Monomial]) -> tuple[Monomial, ...]:
    # descending lex on exponent vectors: x1-heavy generators first
    return tuple(sorted(set(ms), reverse=True))


def minimal_elements(ms: Iterable[Monomial]) -> list[Monomial]:
    """Drop every monomial divisible by a different one in the collection."""
    uniq = sorted(set(ms), key=lambda m: (m.degree, m.exps))
    kept: list[Monomial] = []
    for m in uniq:
        if not any(k.divides(m) for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators G(I).

    Build through :func:`minimalize` (or ``MonomialIdeal.of``) unless the
    generators are already known to form an antichain; the constructor only
    validates.
    """

    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        gens = tuple(self.gens)
        for g in gens:
            _check_same(g.n, self.n)
            if g.is_unit():
                raise ValueError("the unit monomial cannot be a generator of a proper ideal")
        canon = _canonical(gens)
        if len(canon) != len(gens) or len(minimal_elements(canon)) != len(canon):
            raise ValueError("generators do not form a divisibility antichain")
        object.__setattr__(self, "gens", canon)

    @classmethod
    def of(cls, ms: Iterable[Monomial], n: int) -> MonomialIdeal:
        return minimalize(ms, n)

    @classmethod
    def squarefree(cls, supports: Iterable[Iterable[int]], n: int) -> MonomialIdeal:
        return minimalize((Monomial.from_support(s, n) for s in supports), n)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m: Monomial) -> bool:
        """Ideal membership of a monomial."""
        return any(g.divides(m) for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def support(self) -> frozenset[int]:
        return ideal_support(self)

    def has_full_support(self) -> bool:
        return self.support() == frozenset(range(1, self.n + 1))

    def max_exponents(self) -> tuple[int, ...]:
        out = [0] * self.n
        for g in self.gens:
            for i, e in enumerate(g.exps):
                out[i] = max(out[i], e)
        return tuple(out)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_intersection(self, other)

    def __str__(self) -> str:
        return format_ideal(self)


def ideal_support(I: MonomialIdeal) -> frozenset[int]:
    out: set[int] = set()
    for g in I.gens:
        out |= g.support()
    return frozenset(out)


def minimalize(ms: Iterable[Monomial], n: int) -> MonomialIdeal:
    ms = list(ms)
    for m in ms:
        _check_same(m.n, n)
    return MonomialIdeal(n, tuple(minimal_elements(ms)))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I.n, J.n)
    return minimalize(I.gens + J.gens, I.n)


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I.n, J.n)
    return minimalize((a.lcm(b) for a in I.gens for b in J.gens), I.n)


def principal(m: Monomial) -> MonomialIdeal:
    return MonomialIdeal(m.n, (m,))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ())


def permute(I: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Rename x_i to x_{perm[i-1]}; ``perm`` is a 1-based permutation list."""
    out = []
    for g in I.gens:
        exps = [0] * I.n
        for i, e in enumerate(g.exps):
            exps[perm[i] - 1] = e
        out.append(Monomial(tuple(exps)))
    return MonomialIdeal(I.n, tuple(out))


# --- variable isomorphism -------------------------------------------------

def _refined_colors(I: MonomialIdeal, table: dict, rounds: int = 3) -> list:
    """Colour refinement on the variable/generator incidence structure.

    ``table`` is shared between the two ideals being compared so that equal
    signatures receive equal colour ids.
    """
    n, gens = I.n, I.gens
    vcol = [table.setdefault(("v0",), len(table))] * n
    gcol = [table.setdefault(("g0", g.degree), len(table)) for g in gens]
    for r in range(rounds):
        vsig = []
        for i in range(n):
            prof = sorted((g.exps[i], gcol[k]) for k, g in enumerate(gens) if g.exps[i])
            vsig.append(("v", r, vcol[i], tuple(prof)))
        vcol = [table.setdefault(s, len(table)) for s in vsig]
        gsig = []
        for k, g in enumerate(gens):
            prof = sorted((e, vcol[i]) for i, e in enumerate(g.exps) if e)
            gsig.append(("g", r, gcol[k], tuple(prof)))
        gcol = [table.setdefault(s, len(table)) for s in gsig]
    return vcol


def find_variable_isomorphism(I: MonomialIdeal, J: MonomialIdeal) -> tuple[int, ...] | None:
    """Search for a variable bijection carrying G(I) onto G(J).

    Returns a 1-based tuple ``perm`` with ``permute(I, perm) == J``, or
    ``None``.  Candidates are pruned by refined degree profiles, and partial
    assignments are rejected as soon as the projected generator multisets
    disagree.
    """
    _check_same(I.n, J.n)
    n = I.n
    if len(I) != len(J):
        return None
    if Counter(g.degree for g in I.gens) != Counter(g.degree for g in J.gens):
        return None
    table: dict = {}
    ci = _refined_colors(I, table)
    cj = _refined_colors(J, table)
    if Counter(ci) != Counter(cj):
        return None
    cands = {i: [j for j in range(n) if cj[j] == ci[i]] for i in range(n)}
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    Ie = [g.exps for g in I.gens]
    Je = [g.exps for g in J.gens]
    target = set(Je)
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(depth: int) -> bool:
        src = [order[k] for k in range(depth)]
        dst = [assign[i] for i in src]
        left = Counter(tuple(e[i] for i in src) for e in Ie)
        right = Counter(tuple(e[j] for j in dst) for e in Je)
        return left == right

    def search(depth: int) -> bool:
        if depth == n:
            mapped = set()
            for e in Ie:
                out = [0] * n
                for i, x in enumerate(e):
                    out[assign[i]] = x
                mapped.add(tuple(out))
            return mapped == target
        i = order[depth]
        for j in cands[i]:
            if j in used:
                continue
            assign[i] = j
            used.add(j)
            if consistent(depth + 1) and search(depth + 1):
                return True
            used.discard(j)
            del assign[i]
        return False

    if not search(0):
        return None
    return tuple(assign[i] + 1 for i in range(n))


def are_isomorphic(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return I.n == J.n and find_variable_isomorphism(I, J) is not None


# --- text format ----------------------------------------------------------

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m.exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    text = "".join(text.split())
    if text == "1":
        return Monomial.unit(n)
    exps = [0] * n
    for factor in text.split("*"):
        hit = _FACTOR.match(factor)
        if not hit:
            raise ValueError(f"bad monomial factor {factor!r}")
        i = int(hit.group(1))
        e = int(hit.group(2) or 1)
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} outside 1..{n}")
        exps[i - 1] += e
    return Monomial(tuple(exps))


def format_ideal(I: MonomialIdeal) -> str:
    return f"vars: {I.n}\n" + ", ".join(format_monomial(g) for g in I.gens) + "\n"


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse ``vars: n`` followed by comma separated monomials.

    Lines starting with ``#`` are ignored; generators may span lines.
    Non-minimal input is minimalized.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty ideal description")
    head = "".join(lines[0].split())
    if not head.startswith("vars:"):
        raise ValueError("ideal text must start with a 'vars: n' line")
    n = int(head[len("vars:"):])
    body = "".join("".join(lines[1:]).split())
    ms = [parse_monomial(tok, n) for tok in body.split(",") if tok]
    return minimalize(ms, n)
