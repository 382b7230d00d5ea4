"""Explicit ideal families realizing given posets, and their closed-form
Betti numbers."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .monomials import Monomial, MonomialIdeal, ideal_intersection, ideal_sum, minimalize
from .poset import NotAForest, Poset, components, is_forest, label_key, leaves, lower_covers, upper_covers
from .support import SupportFamily


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _sq(indices, n) -> Monomial:
    return Monomial.from_support(indices, n)


# --- disjoint lines -------------------------------------------------------

def lines_squarefree(n: int, m: int) -> MonomialIdeal:
    """I_{n,m} on nm variables; its support poset is n disjoint m-chains."""
    if n < 2 or m < 1:
        raise ValueError("lines need n >= 2 and m >= 1")
    N = n * m
    gens = [_sq(range(1, m + 1), N)]
    for i in range(2, n + 1):
        base = (i - 1) * m
        gens.append(_sq(range(base + 1, base + m + 1), N))
        for j in range(1, m):
            gens.append(_sq(list(range(1, m - j + 1)) + list(range(base + 1, base + j + 1)), N))
    return minimalize(gens, N)


def lines_sigma(n: int, m: int) -> list[frozenset]:
    """The collection producing I_{n,m} from the disjoint-chains family."""
    out = [frozenset({i * m}) for i in range(1, n + 1)]
    out += [frozenset({m - j, i * m + j}) for i in range(1, n) for j in range(1, m)]
    return out


def chains_family(n: int, m: int) -> SupportFamily:
    return SupportFamily(n * m, {(i - 1) * m + j: range((i - 1) * m + 1, (i - 1) * m + j + 1)
                                 for i in range(1, n + 1) for j in range(1, m + 1)})


def lines_depolarized(n: int, m: int) -> MonomialIdeal:
    """J_{n,m} in n variables: pure m-th powers plus y_1^(m-k) y_j^k."""
    if n < 2 or m < 1:
        raise ValueError("lines need n >= 2 and m >= 1")
    gens = [Monomial.var(i, n, m) for i in range(1, n + 1)]
    for j in range(2, n + 1):
        for k in range(1, m):
            e = [0] * n
            e[0], e[j - 1] = m - k, k
            gens.append(Monomial(tuple(e)))
    return minimalize(gens, n)


def lines_betti_formula(n: int, m: int, i: int) -> int:
    if i == 0:
        return n + (n - 1) * (m - 1)
    if not 1 <= i <= n - 1:
        return 0
    return (binom(n - 1, i)
            + sum((m - 1) * binom(1 + n - j, i) for j in range(2, n + 1))
            + binom(n - 1, i + 1))


def lines_projdim(n: int, m: int) -> int:
    return n - 1


def lines_regularity(n: int, m: int) -> int:
    return (n - 1) * (m - 1)


# --- diamonds -------------------------------------------------------------

def _dvar(i: int, j: int, width: int) -> int:
    return (i - 1) * width + j


def diamonds_squarefree(m: int) -> MonomialIdeal:
    """Ibar_m on 4m variables x_{ij} (flat index 4(i-1)+j); its support
    poset is m disjoint diamonds."""
    if m < 2:
        raise ValueError("diamonds need m >= 2")
    N = 4 * m
    gens = []
    for i in range(1, m + 1):
        nxt = i % m + 1
        gens.append(_sq([_dvar(i, j, 4) for j in (1, 2, 3, 4)], N))
        gens.append(_sq([_dvar(i, 1, 4), _dvar(i, 2, 4), _dvar(nxt, 1, 4), _dvar(nxt, 3, 4)], N))
    return minimalize(gens, N)


def diamonds_chain_partition(m: int) -> list[list[int]]:
    """Per diamond, the chain {i1, i2, i4} and the singleton {i3}."""
    out = []
    for i in range(1, m + 1):
        out.append([_dvar(i, 1, 4), _dvar(i, 2, 4), _dvar(i, 4, 4)])
        out.append([_dvar(i, 3, 4)])
    return out


def diamonds_depolarized(m: int) -> MonomialIdeal:
    """I_m on 2m variables x_{i1}, x_{i2} (flat index 2(i-1)+j)."""
    if m < 2:
        raise ValueError("diamonds need m >= 2")
    N = 2 * m
    gens = []
    for i in range(1, m + 1):
        nxt = i % m + 1
        e = [0] * N
        e[_dvar(i, 1, 2) - 1], e[_dvar(i, 2, 2) - 1] = 3, 1
        gens.append(Monomial(tuple(e)))
        e = [0] * N
        e[_dvar(i, 1, 2) - 1] = 2
        e[_dvar(nxt, 1, 2) - 1] += 1
        e[_dvar(nxt, 2, 2) - 1] += 1
        gens.append(Monomial(tuple(e)))
    return minimalize(gens, N)


@lru_cache(maxsize=None)
def k_value(m: int, a: int, b: int) -> int:
    """K^m_{a,b} from the two-term recurrence and its base cases."""
    if a < 0 or b < 0:
        raise ValueError(f"K^{m}_{{{a},{b}}} is undefined for negative indices")
    if a == 0:
        return binom(m, b + 1)
    if b == 0:
        return m + a
    if a == 1:
        return binom(m, b) + binom(m, b + 1)
    return k_value(m, a - 2, b - 1) + k_value(m, a - 1, b)


def k_closed_form(m: int, a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError(f"K^{m}_{{{a},{b}}} is undefined for negative indices")
    total, t = 0, 0
    while a + 1 - t >= t and b + 1 - t >= 0:
        total += binom(a + 1 - t, t) * binom(m, b + 1 - t)
        t += 1
    return total


def diamonds_betti_formula(m: int, i: int) -> int:
    if i == 0:
        return 2 * m
    if m < 3:
        raise ValueError("the diamond Betti formula needs m >= 3; use the oracle for m = 2")
    if i < 0:
        return 0
    return 2 * k_value(m, m - 3, i - 1) + k_value(m, m - 2, i)


def diamonds_projdim(m: int) -> int:
    return m // 2 + m - 1


def diamonds_regularity(m: int) -> int:
    return 2 * m


# --- forests --------------------------------------------------------------

def _require_int_forest(F: Poset) -> int:
    if not is_forest(F):
        raise NotAForest("expected a forest")
    n = len(F)
    if set(F.elements) != set(range(1, n + 1)):
        raise ValueError("forest labels must be 1..n")
    return n


def leaf_ideal(F: Poset) -> MonomialIdeal:
    """One generator per leaf: the product of the leaf and all its ancestors."""
    n = _require_int_forest(F)
    return minimalize((_sq(F.down(l), n) for l in leaves(F)), n)


def reduce_forest(F: Poset) -> tuple[Poset, dict]:
    """Merge every only child into its parent until each node is a leaf or
    branches.  A merged node keeps the label of its topmost member; the map
    sends each surviving label to the set of original labels it absorbed."""
    if not is_forest(F):
        raise NotAForest("expected a forest")
    par = {a: (d[0] if d else None) for a, d in lower_covers(F).items()}
    merged = {a: {a} for a in F.elements}
    while True:
        kids = {a: [] for a in par}
        for a, p in par.items():
            if p is not None:
                kids[p].append(a)
        target = next((b for b in sorted(kids, key=label_key) if len(kids[b]) == 1), None)
        if target is None:
            break
        a = kids[target][0]
        par[a] = par[target]
        for c, p in par.items():
            if p == target:
                par[c] = a
        merged[a] |= merged.pop(target)
        del par[target]
    forest = Poset.from_covers(par, [(p, a) for a, p in par.items() if p is not None])
    return forest, {a: frozenset(s) for a, s in merged.items()}


def reduction_stages(F: Poset) -> list[Poset]:
    """The forest, its reduction, then alternately deleting every root that
    has children and reducing again, until only isolated points remain."""
    stages = [F]
    cur, _ = reduce_forest(F)
    stages.append(cur)
    while True:
        up = upper_covers(cur)
        inner_roots = [r for r in cur.elements if not cur.down(r) - {r} and up[r]]
        if not inner_roots:
            return stages
        cur, _ = reduce_forest(cur.induced(cur.elements - set(inner_roots)))
        stages.append(cur)


def random_forest(n: int, rng: random.Random) -> Poset:
    """Random forest on 1..n: node k attaches to a uniformly chosen earlier
    node or becomes a new root; labels are then shuffled."""
    par = {1: None}
    for k in range(2, n + 1):
        choice = rng.randrange(k)
        par[k] = choice if choice else None
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    relabel = dict(zip(range(1, n + 1), perm))
    return Poset.from_covers(perm, [(relabel[p], relabel[a]) for a, p in par.items() if p])


# --- k-out-of-n -----------------------------------------------------------

def _check_kn(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")


def consecutive_kn(k: int, n: int) -> MonomialIdeal:
    _check_kn(k, n)
    return minimalize((_sq(range(t, t + k), n) for t in range(1, n - k + 2)), n)


def k_out_of_n(k: int, n: int) -> MonomialIdeal:
    _check_kn(k, n)
    return minimalize((_sq(c, n) for c in combinations(range(1, n + 1), k)), n)


def kn_support_family(k: int, n: int) -> SupportFamily:
    """Closed form of the support family of the consecutive ideal J_{k,n}."""
    _check_kn(k, n)
    C = {}
    if k < n - k + 1:
        for i in range(1, n + 1):
            if i <= k:
                C[i] = range(i, k + 1)
            elif i <= n - k:
                C[i] = {i}
            else:
                C[i] = range(n - k + 1, i + 1)
    else:
        for i in range(1, n + 1):
            if i <= n - k:
                C[i] = range(i, k + 1)
            elif i <= k:
                C[i] = range(n - k + 1, k + 1)
            else:
                C[i] = range(n - k + 1, i + 1)
    return SupportFamily(n, C)


def copolar_kn(k: int, n: int) -> MonomialIdeal:
    """A small ideal with the same polarization class as J_{k,n}.

    If k >= n-k+1: a^(k-t) b^t for t = 0..n-k, in two variables.
    Otherwise 2+n-2k variables a, b_1..b_{n-2k}, c: the window starting at
    position t becomes a^(#left block) * (middle b's it covers) *
    c^(#right block).
    """
    _check_kn(k, n)
    if k >= n - k + 1:
        return minimalize((Monomial((k - t, t)) for t in range(n - k + 1)), 2)
    mid = n - 2 * k
    N = 2 + mid
    gens = []
    for t in range(1, n - k + 2):
        e = [0] * N
        e[0] = max(0, k - t + 1)
        for j in range(1, mid + 1):
            if t <= k + j <= t + k - 1:
                e[j] = 1
        e[N - 1] = max(0, t + 2 * k - 1 - n)
        gens.append(Monomial(tuple(e)))
    return minimalize(gens, N)


# --- series-parallel ------------------------------------------------------

class InvalidExpression(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class Sum:
    left: object
    right: object

    def __str__(self):
        return f"{_wrap(self.left, ())} + {_wrap(self.right, (Sum,))}"


@dataclass(frozen=True)
class Inter:
    left: object
    right: object

    def __str__(self):
        return f"{_wrap(self.left, (Sum,))} * {_wrap(self.right, (Sum, Inter))}"


SPExpr = Var | Sum | Inter


def _wrap(e, paren_types) -> str:
    return f"({e})" if isinstance(e, paren_types) else str(e)


def sp_variables(e: SPExpr) -> list[int]:
    out = []
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.append(x.index)
        else:
            stack += [x.right, x.left]
    return out


_TOKEN = re.compile(r"\s*(\d+|[()+*])")


def parse_sp(text: str) -> SPExpr:
    """``*`` is intersection (series), ``+`` is sum (parallel); ``*`` binds tighter."""
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        hit = _TOKEN.match(text, pos)
        if not hit:
            raise InvalidExpression(f"unexpected character at {pos}: {text[pos:]!r}")
        toks.append(hit.group(1))
        pos = hit.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    k = 0

    def peek():
        return toks[k] if k < len(toks) else None

    def take(expected=None):
        nonlocal k
        tok = peek()
        if tok is None or (expected and tok != expected):
            raise InvalidExpression(f"expected {expected or 'a token'}, got {tok!r}")
        k += 1
        return tok

    def expr():
        node = term()
        while peek() == "+":
            take()
            node = Sum(node, term())
        return node

    def term():
        node = factor()
        while peek() == "*":
            take()
            node = Inter(node, factor())
        return node

    def factor():
        tok = take()
        if tok == "(":
            node = expr()
            take(")")
            return node
        if tok.isdigit():
            return Var(int(tok))
        raise InvalidExpression(f"unexpected token {tok!r}")

    node = expr()
    if peek() is not None:
        raise InvalidExpression(f"trailing input starting at {peek()!r}")
    return node


def sp_ideal(e: SPExpr, n: int | None = None) -> MonomialIdeal:
    vs = sp_variables(e)
    if len(vs) != len(set(vs)):
        raise InvalidExpression("each variable may appear only once")
    if min(vs) < 1:
        raise InvalidExpression("variable indices start at 1")
    n = max(vs) if n is None else n

    def ev(x):
        if isinstance(x, Var):
            return MonomialIdeal(n, (Monomial.var(x.index, n),))
        a, b = ev(x.left), ev(x.right)
        return ideal_sum(a, b) if isinstance(x, Sum) else ideal_intersection(a, b)

    return ev(e)


def _fold(op, items):
    out = items[0]
    for x in items[1:]:
        out = op(out, x)
    return out


def sp_from_forest(F: Poset) -> SPExpr:
    """I_j = <x_j> intersected with the sum of the children's ideals."""
    if not is_forest(F):
        raise NotAForest("expected a forest")
    up = upper_covers(F)

    def build(j):
        if not up[j]:
            return Var(j)
        return Inter(Var(j), _fold(Sum, [build(c) for c in up[j]]))

    trees = [build(min(c.elements - {b for a, b in c.covers()}, key=label_key)) for c in components(F)]
    return _fold(Sum, trees)


def _catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def random_sp_expr(leaves_count: int, rng: random.Random) -> SPExpr:
    """Binary tree shape uniform among all shapes with the given number of
    leaves, a fair coin for sum/intersection at each inner node, leaves
    numbered 1.. from left to right."""
    counter = iter(range(1, leaves_count + 1))

    def shape(k):
        if k == 1:
            return Var(next(counter))
        weights = [_catalan(i - 1) * _catalan(k - i - 1) for i in range(1, k)]
        left = rng.choices(range(1, k), weights=weights)[0]
        a = shape(left)
        b = shape(k - left)
        return Sum(a, b) if rng.random() < 0.5 else Inter(a, b)

    return shape(leaves_count)


S1_EXPR = "((1 * (2*3 + 4)) * (5 * (6*7 + 8)))"


def example_leaf_tree() -> Poset:
    """The 12-node tree used to illustrate leaf ideals and tree reduction."""
    edges = [(1, 2), (2, 3), (3, 4), (3, 7), (3, 5), (5, 6), (7, 8), (8, 9), (8, 10),
             (10, 11), (10, 12)]
    return Poset.from_covers(range(1, 13), edges)
