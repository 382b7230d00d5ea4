"""Support families, support posets and realizability checks."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .monomials import Monomial, MonomialIdeal, lcm_all, minimalize
from .poset import Poset

MAX_BRUTE_FORCE_VARS = 4


class NotSquarefree(ValueError):
    pass


class InvalidFamily(ValueError):
    pass


@dataclass(frozen=True)
class SupportFamily:
    """The sets C_i, keyed by variable index.

    For ideals with full support the keys are 1..n.  Ideals with smaller
    support get a family indexed by supp(I) only.
    """

    n: int
    C: Mapping[int, frozenset]

    def __init__(self, n: int, C):
        if not isinstance(C, Mapping):
            C = {i + 1: c for i, c in enumerate(C)}
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "C", {i: frozenset(c) for i, c in sorted(C.items())})

    def __hash__(self):
        return hash((self.n, tuple(self.C.items())))

    def __eq__(self, other):
        return isinstance(other, SupportFamily) and (self.n, self.C) == (other.n, other.C)

    def __getitem__(self, i: int) -> frozenset:
        return self.C[i]

    @property
    def domain(self) -> list[int]:
        return list(self.C)

    def violations(self) -> list[str]:
        out = []
        dom = set(self.C)
        for i, c in self.C.items():
            if i not in c:
                out.append(f"{i} not in C_{i}")
            if not c <= dom:
                out.append(f"C_{i} leaves the index set")
        for j, cj in self.C.items():
            for i in cj:
                if i in self.C and not self.C[i] <= cj:
                    out.append(f"{i} in C_{j} but C_{i} not inside C_{j}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def check(self) -> None:
        bad = self.violations()
        if bad:
            raise InvalidFamily("; ".join(bad))

    def to_json(self) -> str:
        data = {"n": self.n, "C": [sorted(c) for c in self.C.values()]}
        if self.domain != list(range(1, self.n + 1)):
            data["domain"] = self.domain
        return json.dumps(data)

    @classmethod
    def from_json(cls, text: str) -> SupportFamily:
        data = json.loads(text)
        dom = data.get("domain", range(1, data["n"] + 1))
        return cls(data["n"], dict(zip(dom, data["C"])))


def support_family(I: MonomialIdeal) -> SupportFamily:
    """C_i = indices present in every generator that x_i divides."""
    if not I.is_squarefree():
        raise NotSquarefree("support families need a squarefree ideal; polarize first")
    supps = [g.support() for g in I.gens]
    C = {}
    for i in sorted(I.support()):
        containing = [s for s in supps if i in s]
        C[i] = frozenset.intersection(*containing)
    return SupportFamily(I.n, C)


def display_labels(p: Poset, fam: SupportFamily | None = None) -> dict:
    """Per node, the indices not already present in a node below it."""
    out = {}
    for c in p.elements:
        below = set().union(*(d for d in p.down(c) if d != c))
        out[c] = ",".join(str(i) for i in sorted(set(c) - below))
    return out


def poset_of_family(fam: SupportFamily) -> Poset:
    sets = set(fam.C.values())
    return Poset(sets, ((a, b) for a in sets for b in sets if a <= b))


def support_poset(I: MonomialIdeal) -> Poset:
    """Distinct C_i ordered by inclusion; non-squarefree ideals are polarized."""
    if not I.is_squarefree():
        from .polarity import polarize
        I = polarize(I)[0]
    return poset_of_family(support_family(I))


def ordered_support_poset(I: MonomialIdeal, var_order: Sequence[int] | None = None) -> Poset:
    """Poset on variable indices: i < j iff C_i is a proper subset of C_j, or
    C_i == C_j and i precedes j in ``var_order`` (natural order by default)."""
    if not I.is_squarefree():
        from .polarity import polarize
        I = polarize(I)[0]
    fam = support_family(I)
    dom = fam.domain
    order = list(var_order) if var_order is not None else sorted(dom)
    order += [i for i in sorted(dom) if i not in order]
    rank = {v: k for k, v in enumerate(order)}
    pairs = []
    for i in dom:
        for j in dom:
            ci, cj = fam[i], fam[j]
            if ci < cj or (ci == cj and rank[i] <= rank[j]):
                pairs.append((i, j))
    return Poset(dom, pairs)


def ideal_from_sigma(fam: SupportFamily, sigma: Iterable[Iterable[int]]) -> MonomialIdeal:
    fam.check()
    n = fam.n
    m = {i: Monomial.from_support(c, n) for i, c in fam.C.items()}
    gens = [lcm_all((m[i] for i in s), n) for s in sigma]
    return minimalize(gens, n)


def sigma_conditions_hold(fam: SupportFamily, sigma: Sequence[Iterable[int]],
                          minimal: bool = True) -> bool:
    """Both sufficient conditions for ``fam`` to be the support family of I_Sigma.

    By default the conditions are evaluated over the m_sigma that survive as
    minimal generators.  With ``minimal=False`` every m_sigma counts, which is
    not sufficient: a redundant m_sigma can satisfy the conditions on behalf of
    generators that vanish after minimalization.
    """
    n = fam.n
    m = {i: Monomial.from_support(c, n) for i, c in fam.C.items()}
    lcms = [lcm_all((m[i] for i in s), n) for s in sigma]
    if minimal:
        lcms = list(minimalize(lcms, n).gens) if lcms else []
    m_sigma = [g.support() for g in lcms]
    hits = {i: frozenset(k for k, s in enumerate(m_sigma) if i in s) for i in fam.C}
    if any(not h for h in hits.values()):
        return False
    for i in fam.C:
        for j in fam.C:
            if hits[i] <= hits[j] and not fam[j] <= fam[i]:
                return False
    return True


def is_support_poset_of(fam: SupportFamily, I: MonomialIdeal) -> bool:
    return I.is_squarefree() and support_family(I) == fam


def _antichains(items: list[int]):
    """All antichains of bitmasks under inclusion (items sorted by popcount)."""
    def rec(start: int, chosen: list[int]):
        yield list(chosen)
        for k in range(start, len(items)):
            s = items[k]
            if any((s & c) == c or (s & c) == s for c in chosen):
                continue
            chosen.append(s)
            yield from rec(k + 1, chosen)
            chosen.pop()
    yield from rec(0, [])


def brute_force_realizability(fam: SupportFamily) -> MonomialIdeal | None:
    """Exhaustive search over squarefree ideals on n <= 4 variables."""
    n = fam.n
    if n > MAX_BRUTE_FORCE_VARS:
        raise ValueError(f"brute force realizability is limited to n <= {MAX_BRUTE_FORCE_VARS}, got {n}")
    need = set(fam.domain)
    full = (1 << n) - 1
    masks = sorted(range(1, full + 1), key=lambda s: (bin(s).count("1"), s))
    for ac in _antichains(masks):
        supp = 0
        for s in ac:
            supp |= s
        if {i + 1 for i in range(n) if supp >> i & 1} != need:
            continue
        I = minimalize((Monomial(tuple(s >> i & 1 for i in range(n))) for s in ac), n)
        if support_family(I) == fam:
            return I
    return None


def random_family(n: int, rng: random.Random) -> SupportFamily:
    """Random valid family: draw a random DAG on 1..n (edges only from
    lower to higher position in a shuffled order), give each i the set of
    everything reachable below it, then let random blocks share a C-set.

    The result satisfies both family invariants by construction.
    """
    order = list(range(1, n + 1))
    rng.shuffle(order)
    below = {v: set() for v in order}
    for k, v in enumerate(order):
        for u in order[:k]:
            if rng.random() < 0.25:
                below[v].add(u)
    C = {}
    for v in order:
        reach = {v}
        stack = list(below[v])
        while stack:
            u = stack.pop()
            if u not in reach:
                reach.add(u)
                stack.extend(below[u])
        C[v] = reach
    # merge an occasional pair i -> j into an equal class
    if n >= 2 and rng.random() < 0.5:
        k = rng.randrange(1, n)
        i, j = order[k - 1], order[k]
        merged = C[i] | C[j]
        for v in order:
            if i in C[v] or j in C[v]:
                C[v] = C[v] | merged
    # close transitively
    changed = True
    while changed:
        changed = False
        for v in C:
            extra = set().union(*(C[u] for u in C[v])) - C[v]
            if extra:
                C[v] |= extra
                changed = True
    return SupportFamily(n, C)


def random_sigma(fam: SupportFamily, rng: random.Random, size: int | None = None) -> list[frozenset]:
    dom = fam.domain
    size = size or rng.randint(1, len(dom) + 2)
    return [frozenset(rng.sample(dom, rng.randint(1, min(3, len(dom))))) for _ in range(size)]
