"""Multigraded Betti numbers: an exact homology oracle, Mayer-Vietoris trees
with their two-sided bounds, Taylor minimality, projdim and regularity.

Indexing follows the resolution of the ideal itself, so beta_0 counts the
minimal generators.  Regularity is reported in the quotient convention
max(|mu| - d - 1); pass ``convention="ideal"`` for the +1 version.
"""
from __future__ import annotations

import os
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .linalg import rank
from .monomials import Monomial, MonomialIdeal, format_monomial
from .polarity import PolarizationMap

DEFAULT_MAX_SUBSETS = 2 ** 20


class OracleLimitError(RuntimeError):
    pass


def max_subsets() -> int:
    return int(os.environ.get("SUPPOS_MAX_SUBSETS", DEFAULT_MAX_SUBSETS))


@dataclass
class BettiTable:
    """Counts keyed by (homological degree d, multidegree)."""

    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __bool__(self):
        return bool(self.entries)

    def keys(self):
        return self.entries.keys()

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], kv[0][1].degree, kv[0][1].exps))

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        top = max(d for d, _ in self.entries)
        out = [0] * (top + 1)
        for (d, _), v in self.entries.items():
            out[d] += v
        return out

    def total(self, d: int) -> int:
        t = self.totals()
        return t[d] if 0 <= d < len(t) else 0

    def graded(self) -> dict[tuple[int, int], int]:
        out: Counter = Counter()
        for (d, mu), v in self.entries.items():
            out[d, mu.degree] += v
        return dict(out)

    def le(self, other: BettiTable) -> bool:
        """Entrywise <=."""
        keys = set(self.entries) | set(other.entries)
        return all(self[k] <= other[k] for k in keys)

    def euler(self) -> int:
        return sum((-1) ** d * v for d, v in enumerate(self.totals()))

    def map_multidegrees(self, f: Callable[[Monomial], Monomial], n: int) -> BettiTable:
        out: Counter = Counter()
        for (d, mu), v in self.entries.items():
            out[d, f(mu)] += v
        return BettiTable(n, dict(out))

    def to_records(self) -> list[dict]:
        return [{"d": d, "mu": format_monomial(mu), "count": v} for (d, mu), v in self.items()]

    def format(self) -> str:
        """Graded table: rows are internal degree j, columns homological degree d."""
        if not self.entries:
            return "(zero)\n"
        g = self.graded()
        ds = range(max(d for d, _ in g) + 1)
        js = sorted({j for _, j in g})
        width = max(4, max(len(str(v)) for v in g.values()) + 1)
        head = "j\\d".ljust(6) + "".join(str(d).rjust(width) for d in ds)
        lines = [head]
        for j in js:
            lines.append(str(j).ljust(6) + "".join(
                (str(g[d, j]) if g.get((d, j)) else ".").rjust(width) for d in ds))
        lines.append("total".ljust(6) + "".join(str(v).rjust(width) for v in self.totals()))
        return "\n".join(lines) + "\n"


def polarize_table(B: BettiTable, pmap: PolarizationMap) -> BettiTable:
    return B.map_multidegrees(pmap.polarize_monomial, pmap.target_n)


# --- homology oracle --------------------------------------------------------

def lcm_lattice(I: MonomialIdeal, cap: int | None = None) -> set[tuple[int, ...]]:
    """Distinct lcms of nonempty generator subsets, as exponent tuples."""
    cap = max_subsets() if cap is None else cap
    found: set[tuple[int, ...]] = set()
    for g in I.gens:
        e = g.exps
        new = {tuple(max(a, b) for a, b in zip(l, e)) for l in found}
        found |= new
        found.add(e)
        if len(found) > cap:
            raise OracleLimitError(f"more than {cap} candidate multidegrees (cap set by SUPPOS_MAX_SUBSETS)")
    return found


def _reduced_homology(faces: list[list[int]]) -> dict[int, int]:
    """Reduced Betti numbers over Q of a complex given by faces per size.

    ``faces[k]`` lists the faces with k vertices as bitmasks (faces[0] == [0]).
    Returns {degree: dim} for nonzero reduced homology.
    """
    index = [{f: i for i, f in enumerate(level)} for level in faces]
    ranks = [0] * (len(faces) + 1)
    for k in range(1, len(faces)):
        rows = []
        for f in faces[k]:
            row = {}
            sign = 1
            bits = f
            while bits:
                low = bits & -bits
                row[index[k - 1][f ^ low]] = sign
                sign = -sign
                bits ^= low
            rows.append(row)
        ranks[k] = rank(rows)
    out = {}
    for k in range(len(faces)):
        h = len(faces[k]) - ranks[k] - ranks[k + 1]
        if h:
            out[k - 1] = h
    return out


def koszul_complex_homology(I: MonomialIdeal, mu: tuple[int, ...]) -> dict[int, int]:
    """Reduced homology of K^mu = {S squarefree : x^(mu - S) in I}."""
    gens = [g.exps for g in I.gens]

    def member(e) -> bool:
        return any(all(a <= b for a, b in zip(g, e)) for g in gens)

    verts = []
    for i, e in enumerate(mu):
        if e:
            lowered = mu[:i] + (e - 1,) + mu[i + 1:]
            if member(lowered):
                verts.append(i)
    nv = len(verts)

    def is_face(mask: int) -> bool:
        e = list(mu)
        for k in range(nv):
            if mask >> k & 1:
                e[verts[k]] -= 1
        return member(e)

    faces = [[0]]
    while True:
        nxt = set()
        for f in faces[-1]:
            top = f.bit_length()
            for k in range(top, nv):
                g = f | (1 << k)
                if is_face(g):
                    nxt.add(g)
        if not nxt:
            break
        faces.append(sorted(nxt))
    allfaces = {f for level in faces for f in level}
    for k in range(nv):
        bit = 1 << k
        if all((f | bit) in allfaces for f in allfaces):
            return {}  # cone over vertex k, acyclic
    return _reduced_homology(faces)


def betti_oracle(I: MonomialIdeal, cap: int | None = None) -> BettiTable:
    """beta_{d,mu}(I) = dim of reduced H_{d-1}(K^mu; Q) over the lcm lattice."""
    if I.is_zero():
        raise ValueError("the zero ideal has no resolution to compute")
    out = {}
    for mu in lcm_lattice(I, cap):
        for deg, h in koszul_complex_homology(I, mu).items():
            out[deg + 1, Monomial(mu)] = h
    return BettiTable(I.n, out)


def projdim(B: BettiTable) -> int:
    if not B:
        raise ValueError("empty Betti table")
    return max(d for d, _ in B.keys())


def regularity(B: BettiTable, convention: str = "quotient") -> int:
    if not B:
        raise ValueError("empty Betti table")
    r = max(mu.degree - d - 1 for d, mu in B.keys())
    if convention == "quotient":
        return r
    if convention == "ideal":
        return r + 1
    raise ValueError(f"unknown convention {convention!r}")


def derived_invariants(B: BettiTable) -> tuple[int, int]:
    """(projective dimension, regularity in the quotient convention)."""
    return projdim(B), regularity(B)


# --- Taylor complex -----------------------------------------------------------

def taylor_is_minimal(I: MonomialIdeal) -> bool:
    """The Taylor complex is minimal iff no subset lcm is unchanged by
    dropping a member, which happens iff no generator divides the lcm of
    all the others."""
    gens = I.gens
    for k, g in enumerate(gens):
        rest = [h for j, h in enumerate(gens) if j != k]
        if not rest:
            continue
        top = tuple(max(col) for col in zip(*(h.exps for h in rest)))
        if all(a <= b for a, b in zip(g.exps, top)):
            return False
    return True


def taylor_is_minimal_bruteforce(I: MonomialIdeal, limit: int = 20) -> bool:
    r = len(I)
    if r > limit:
        raise ValueError(f"subset enumeration limited to {limit} generators")
    gens = [g.exps for g in I.gens]
    n = I.n
    lcms = [(0,) * n] * (1 << r)
    for s in range(1, 1 << r):
        low = (s & -s).bit_length() - 1
        lcms[s] = tuple(max(a, b) for a, b in zip(lcms[s & (s - 1)], gens[low]))
    for s in range(1, 1 << r):
        if s & (s - 1) == 0:
            continue
        bits = s
        while bits:
            low = bits & -bits
            if lcms[s ^ low] == lcms[s]:
                return False
            bits ^= low
    return True


# --- Mayer-Vietoris trees -----------------------------------------------------

def _listing_to_order(listing_key):
    # listings name the first pivot first; the tree pivots on the last entry
    return lambda gens: sorted(gens, key=listing_key, reverse=True)


def _lines_key(g: Monomial):
    # pure powers by variable, then rows y1^a * y_j^b by increasing a, then j
    supp = sorted(g.support())
    if len(supp) == 1:
        return (0, 0, supp[0])
    return (1, g.exps[0], supp[-1])


def _diamonds_key(g: Monomial):
    top = max(g.exps)
    return (-top, g.exps.index(top))


@dataclass(frozen=True)
class PivotOrder:
    """Orders the generators of the root ideal; the last one is the pivot.

    Children inherit the order: the right child drops the pivot and the left
    child keeps each surviving lcm(f_i, pivot) at the place of f_i.
    """

    name: str = "canonical"
    seed: int | None = None

    def order(self, I: MonomialIdeal) -> list[Monomial]:
        gens = list(I.gens)
        if self.name == "canonical":
            return gens
        if self.name == "reverse":
            return gens[::-1]
        if self.name == "degree":
            return sorted(gens, key=lambda g: g.degree)
        if self.name == "random":
            if self.seed is None:
                raise ValueError("the random pivot order needs a seed")
            random.Random(self.seed).shuffle(gens)
            return gens
        if self.name == "lines-rows":
            return _listing_to_order(_lines_key)(gens)
        if self.name == "diamonds-groups":
            return _listing_to_order(_diamonds_key)(gens)
        raise ValueError(f"unknown pivot order {self.name!r}")


PIVOT_ORDERS = ("canonical", "reverse", "degree", "random", "lines-rows", "diamonds-groups")


@dataclass
class MVTNode:
    gens: tuple[Monomial, ...]
    position: int
    dimension: int
    left: MVTNode | None = None
    right: MVTNode | None = None

    @property
    def relevant(self) -> bool:
        return self.position == 1 or self.position % 2 == 0

    @property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.gens[0].n, self.gens)

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if node.right is not None:
                stack.append(node.right)
            if node.left is not None:
                stack.append(node.left)


def _ordered_minimal(ms: list[Monomial]) -> tuple[Monomial, ...]:
    out = []
    seen = set()
    for k, m in enumerate(ms):
        if m in seen:
            continue
        if any(o != m and o.divides(m) for o in ms):
            continue
        seen.add(m)
        out.append(m)
    return tuple(out)


def mvt_build(I: MonomialIdeal, order: PivotOrder | None = None) -> MVTNode:
    if I.is_zero():
        raise ValueError("Mayer-Vietoris trees need a nonzero ideal")
    order = order or PivotOrder()
    root = MVTNode(tuple(order.order(I)), 1, 0)
    stack = [root]
    while stack:
        node = stack.pop()
        if len(node.gens) < 2:
            continue
        *rest, pivot = node.gens
        node.right = MVTNode(tuple(rest), 2 * node.position + 1, node.dimension)
        node.left = MVTNode(_ordered_minimal([f.lcm(pivot) for f in rest]),
                            2 * node.position, node.dimension + 1)
        stack += [node.right, node.left]
    return root


def mvt_counts(tree: MVTNode) -> tuple[BettiTable, BettiTable]:
    """(all relevant generators by (dimension, multidegree),
    those whose multidegree occurs exactly once among all relevant nodes)."""
    full: Counter = Counter()
    per_mu: Counter = Counter()
    for node in tree.walk():
        if node.relevant:
            for g in node.gens:
                full[node.dimension, g] += 1
                per_mu[g] += 1
    once = {k: v for k, v in full.items() if per_mu[k[1]] == 1}
    n = tree.gens[0].n
    return BettiTable(n, dict(full)), BettiTable(n, once)


def nonconsecutive_exact(full: BettiTable) -> set:
    """Keys (d, mu) pinned down exactly: mu occurs in dimensions no two of
    which are consecutive."""
    dims = defaultdict(set)
    for d, mu in full.keys():
        dims[mu].add(d)
    out = set()
    for mu, ds in dims.items():
        if all(d + 1 not in ds for d in ds):
            out.update((d, mu) for d in ds)
    return out


def mvt_bounds(I: MonomialIdeal, order: PivotOrder | None = None) -> tuple[BettiTable, BettiTable]:
    full, once = mvt_counts(mvt_build(I, order))
    lower = dict(once.entries)
    for key in nonconsecutive_exact(full):
        lower[key] = full[key]
    return BettiTable(I.n, lower), full


def mvt_to_dot(tree: MVTNode) -> str:
    lines = ["digraph mvt {", "  node [shape=box];"]
    for node in sorted(tree.walk(), key=lambda nd: nd.position):
        style = ', style=filled, fillcolor="lightgrey"' if node.relevant else ""
        lines.append(f'  p{node.position} [label="pos {node.position}\\ndim {node.dimension}\\n'
                     f'{len(node.gens)} gens"{style}];')
    for node in sorted(tree.walk(), key=lambda nd: nd.position):
        for child in (node.left, node.right):
            if child is not None:
                lines.append(f"  p{node.position} -> p{child.position};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def total_betti(I: MonomialIdeal) -> list[int]:
    return betti_oracle(I).totals()
