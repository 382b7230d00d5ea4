"""Polarization, chain-partition depolarization and copolarity."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .monomials import Monomial, MonomialIdeal, find_variable_isomorphism, minimalize
from .support import NotSquarefree, support_family


class DepolarizationError(ValueError):
    pass


@dataclass(frozen=True)
class PolarizationMap:
    """Bookkeeping between x_i^b and the squarefree x_{i,1}...x_{i,b}.

    Flat index k (1-based) of the polarized ring corresponds to
    ``slots[k-1] == (i, s)``; blocks are laid out by increasing i, then s.
    """

    source_n: int
    bounds: tuple[int, ...]

    @property
    def slots(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, s) for i, a in enumerate(self.bounds) for s in range(1, a + 1))

    @property
    def target_n(self) -> int:
        return sum(self.bounds)

    def flat(self, i: int, s: int) -> int:
        if not 1 <= s <= self.bounds[i - 1]:
            raise IndexError(f"slot ({i},{s}) outside the polarization")
        return sum(self.bounds[: i - 1]) + s

    def name(self, k: int) -> str:
        i, s = self.slots[k - 1]
        return f"x_{{{i},{s}}}"

    def polarize_monomial(self, m: Monomial) -> Monomial:
        exps = []
        for b, a in zip(m.exps, self.bounds):
            if b > a:
                raise ValueError(f"{m} exceeds the polarization bounds {self.bounds}")
            exps += [1] * b + [0] * (a - b)
        return Monomial(tuple(exps))

    def depolarize_monomial(self, m: Monomial) -> Monomial:
        out = [0] * self.source_n
        for k, e in enumerate(m.exps):
            if e:
                out[self.slots[k][0] - 1] += 1
        return Monomial(tuple(out))


def polarize(I: MonomialIdeal) -> tuple[MonomialIdeal, PolarizationMap]:
    pmap = PolarizationMap(I.n, I.max_exponents())
    gens = [pmap.polarize_monomial(g) for g in I.gens]
    # polarizing an antichain gives an antichain
    return MonomialIdeal(pmap.target_n, tuple(gens)), pmap


def _check_chain_partition(I: MonomialIdeal, blocks: Sequence[Sequence[int]]) -> None:
    fam = support_family(I)
    flat = [i for b in blocks for i in b]
    if sorted(flat) != sorted(fam.domain):
        raise ValueError("blocks must partition the support of the ideal")
    for b in blocks:
        for x in b:
            for y in b:
                if not (fam[x] <= fam[y] or fam[y] <= fam[x]):
                    raise ValueError(f"x{x} and x{y} are incomparable in the support poset")


def parse_chains(text: str) -> list[list[int]]:
    """``"1,2,4|3"`` -> [[1, 2, 4], [3]]."""
    return [[int(t) for t in blk.split(",") if t.strip()] for blk in text.split("|") if blk.strip()]


def depolarize_by_chains(I: MonomialIdeal, blocks: Iterable[Iterable[int]]) -> MonomialIdeal:
    """Collapse each chain of variables into one variable y_b.

    The exponent of y_b in the image of g is |supp(g) & block|.  The result is
    returned only if its polarization is isomorphic to ``I``.
    """
    if not I.is_squarefree():
        raise NotSquarefree("depolarization starts from a squarefree ideal")
    blocks = [list(b) for b in blocks]
    _check_chain_partition(I, blocks)
    k = len(blocks)
    gens = []
    for g in I.gens:
        s = g.support()
        gens.append(Monomial(tuple(len(s.intersection(b)) for b in blocks)))
    J = minimalize(gens, k)
    if len(J) != len(I) or not are_copolar(J, I):
        raise DepolarizationError("partition does not induce a depolarization")
    return J


def are_copolar(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    PI, PJ = polarize(I)[0], polarize(J)[0]
    if PI.n != PJ.n or len(PI) != len(PJ):
        return False
    return find_variable_isomorphism(PI, PJ) is not None
