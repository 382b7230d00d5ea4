"""Finite posets, Hasse diagrams and the forest vocabulary.

Orientation: in a forest the roots are the minimal elements and the leaves
the maximal ones, so a tree grows upward from its root.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import networkx as nx


class NotAForest(ValueError):
    pass


def label_key(x):
    """Sort key that orders ints, strings and sets of ints deterministically."""
    if isinstance(x, (frozenset, set)):
        return (1, len(x), tuple(sorted(x)))
    if isinstance(x, int):
        return (0, x, ())
    return (2, 0, str(x))


def _transitive_closure(elements, pairs) -> set:
    up = {a: set() for a in elements}
    for a, b in pairs:
        up[a].add(b)
    closed = set()
    for a in elements:
        seen, stack = {a}, [a]
        while stack:
            x = stack.pop()
            for y in up[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        closed.update((a, b) for b in seen)
    return closed


@dataclass(frozen=True)
class Poset:
    """A finite poset stored as the full set of pairs ``(a, b)`` with a <= b.

    Reflexive pairs are added automatically; transitivity and antisymmetry
    are checked.
    """

    elements: frozenset
    leq: frozenset

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple] = ()):
        els = frozenset(elements)
        rel = set(leq)
        for a, b in rel:
            if a not in els or b not in els:
                raise ValueError(f"pair {(a, b)} mentions an unknown element")
        rel.update((a, a) for a in els)
        up = {a: set() for a in els}
        for a, b in rel:
            up[a].add(b)
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"antisymmetry fails for {a!r}, {b!r}")
            if not up[b] <= up[a]:
                raise ValueError("relation is not transitive")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "leq", frozenset(rel))

    @classmethod
    def from_covers(cls, elements: Iterable[Hashable], covers: Iterable[tuple]) -> Poset:
        els = list(elements)
        return cls(els, _transitive_closure(els, list(covers)))

    @classmethod
    def chain(cls, labels: Iterable[Hashable]) -> Poset:
        labels = list(labels)
        return cls.from_covers(labels, zip(labels, labels[1:]))

    @classmethod
    def antichain(cls, labels: Iterable[Hashable]) -> Poset:
        return cls(labels)

    def __len__(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=label_key)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt(self, a, b) -> bool:
        return a != b and (a, b) in self.leq

    def up(self, a) -> set:
        return {b for b in self.elements if (a, b) in self.leq}

    def down(self, a) -> set:
        return {b for b in self.elements if (b, a) in self.leq}

    def covers(self) -> frozenset:
        return covers(self)

    def relabel(self, mapping: Mapping) -> Poset:
        return Poset((mapping[a] for a in self.elements),
                     ((mapping[a], mapping[b]) for a, b in self.leq))

    def induced(self, subset: Iterable[Hashable]) -> Poset:
        sub = frozenset(subset)
        return Poset(sub, ((a, b) for a, b in self.leq if a in sub and b in sub))

    def to_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers())
        return g


def covers(p: Poset) -> frozenset:
    """Hasse diagram edges (a, b): a < b with nothing strictly between."""
    strict = [(a, b) for a, b in p.leq if a != b]
    above = {a: set() for a in p.elements}
    for a, b in strict:
        above[a].add(b)
    out = set()
    for a, b in strict:
        if not any(c != b and (c, b) in p.leq for c in above[a]):
            out.add((a, b))
    return frozenset(out)


def lower_covers(p: Poset) -> dict:
    down = {a: [] for a in p.elements}
    for a, b in covers(p):
        down[b].append(a)
    return down


def upper_covers(p: Poset) -> dict:
    up = {a: [] for a in p.elements}
    for a, b in covers(p):
        up[a].append(b)
    for a in up:
        up[a].sort(key=label_key)
    return up


def is_forest(p: Poset) -> bool:
    """Every element covers at most one element."""
    return all(len(v) <= 1 for v in lower_covers(p).values())


def parent(p: Poset, a):
    down = lower_covers(p)[a]
    return down[0] if down else None


def _require_forest(p: Poset) -> None:
    if not is_forest(p):
        raise NotAForest("poset is not a forest")


def leaves(p: Poset) -> frozenset:
    _require_forest(p)
    up = upper_covers(p)
    return frozenset(a for a in p.elements if not up[a])


def roots(p: Poset) -> frozenset:
    _require_forest(p)
    down = lower_covers(p)
    return frozenset(a for a in p.elements if not down[a])


def trunk(p: Poset) -> list:
    """Initial chain of a tree below its first branching, listed bottom-up."""
    rs = roots(p)
    if len(rs) != 1:
        raise NotAForest("trunk is defined for trees (exactly one root)")
    up = upper_covers(p)
    chain = [next(iter(rs))]
    while len(up[chain[-1]]) == 1:
        chain.append(up[chain[-1]][0])
    return chain


def upper_set(p: Poset, j) -> Poset:
    if j not in p.elements:
        raise KeyError(j)
    return p.induced(p.up(j))


def components(p: Poset) -> list[Poset]:
    g = p.to_graph().to_undirected()
    comps = [p.induced(c) for c in nx.connected_components(g)]
    comps.sort(key=lambda q: min(label_key(a) for a in q.elements))
    return comps


def disjoint_union(p: Poset, q: Poset) -> tuple[Poset, dict]:
    """Disjoint union; on a label clash ``q`` is relabelled.

    Returns the union and a map from each element of ``q`` to its new label.
    """
    if p.elements.isdisjoint(q.elements):
        return Poset(p.elements | q.elements, p.leq | q.leq), {a: a for a in q.elements}
    taken = set(p.elements)
    mapping = {}
    fresh = itertools.count(1)
    ints = all(isinstance(a, int) for a in p.elements | q.elements)
    for a in sorted(q.elements, key=label_key):
        if a not in taken:
            new = a
        elif ints:
            new = max(taken | set(mapping.values())) + 1
        else:
            new = f"{a}'"
            while new in taken:
                new = f"{new}{next(fresh)}"
        mapping[a] = new
        taken.add(new)
    q2 = q.relabel(mapping)
    return Poset(p.elements | q2.elements, p.leq | q2.leq), mapping


def is_isomorphic(p: Poset, q: Poset) -> bool:
    if len(p) != len(q) or len(p.leq) != len(q.leq):
        return False
    return nx.is_isomorphic(p.to_graph(), q.to_graph())


def disjoint_chains(count: int, length: int) -> Poset:
    out = Poset(())
    for c in range(count):
        out = disjoint_union(out, Poset.chain(range(c * length + 1, (c + 1) * length + 1)))[0]
    return out


def diamond(a, b, c, d) -> Poset:
    return Poset.from_covers([a, b, c, d], [(a, b), (a, c), (b, d), (c, d)])


def forest_from_parents(parents: Mapping) -> Poset:
    """Forest given as ``{node: parent or None}``."""
    return Poset.from_covers(parents, [(par, a) for a, par in parents.items() if par is not None])


# --- I/O ------------------------------------------------------------------

def _fmt_label(a) -> str:
    if isinstance(a, (frozenset, set)):
        return "{" + ",".join(str(x) for x in sorted(a)) + "}"
    return str(a)


def _parse_label(tok: str):
    tok = tok.strip()
    return int(tok) if tok.lstrip("-").isdigit() else tok


def to_dot(p: Poset, labels: Mapping | None = None, name: str = "poset") -> str:
    """Hasse diagram as DOT, drawn bottom to top."""
    els = p.sorted_elements()
    ids = {a: f"n{k}" for k, a in enumerate(els)}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for a in els:
        text = labels[a] if labels is not None else _fmt_label(a)
        lines.append(f'  {ids[a]} [label="{text}"];')
    for a, b in sorted(covers(p), key=lambda e: (label_key(e[0]), label_key(e[1]))):
        lines.append(f"  {ids[a]} -> {ids[b]} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_poset(p: Poset) -> str:
    els = p.sorted_elements()
    cov = sorted(covers(p), key=lambda e: (label_key(e[0]), label_key(e[1])))
    return ("elements: " + ",".join(_fmt_label(a) for a in els) + "\n"
            + "covers: " + ", ".join(f"{_fmt_label(a)}<{_fmt_label(b)}" for a, b in cov) + "\n")


def parse_poset(text: str) -> Poset:
    elements: list = []
    cov: list = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        if key == "elements":
            elements += [_parse_label(t) for t in rest.split(",") if t.strip()]
        elif key == "covers":
            for t in rest.split(","):
                if not t.strip():
                    continue
                a, sep, b = t.partition("<")
                if not sep:
                    raise ValueError(f"bad cover {t!r}")
                cov.append((_parse_label(a), _parse_label(b)))
        else:
            raise ValueError(f"unknown poset line {line!r}")
    return Poset.from_covers(elements, cov)
