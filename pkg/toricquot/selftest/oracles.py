"""Brute-force oracles on explicit finite groups.

Cosets of ``Z^g / M Z^g`` are represented by ``x - M floor(M^-1 x)``,
computed with exact rationals. Groups are compared through their
torsion-count profile ``d -> #{x : d x = 0}`` over the divisors of the
order, which determines a finite abelian group up to isomorphism.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import floor

from sympy import Matrix, divisors

from toricquot.lattice_algebra import FinAbGroup, to_rows
from toricquot.toric_hom import ComponentMap

Coset = tuple[int, ...]


class CosetSpace:
    """``Z^g / M Z^g`` for a non-singular integer matrix ``M``."""

    def __init__(self, relations) -> None:
        self.rows = to_rows(relations)
        self.g = len(self.rows)
        inverse = Matrix(self.rows).inv()
        self.inverse = [[Fraction(int(x.p), int(x.q)) for x in inverse.row(i)] for i in range(self.g)]

    def reduce(self, x: Sequence[int]) -> Coset:
        g = self.g
        shift = [floor(sum(self.inverse[i][j] * x[j] for j in range(g))) for i in range(g)]
        return tuple(x[i] - sum(self.rows[i][j] * shift[j] for j in range(g)) for i in range(g))

    def add(self, x: Coset, y: Coset) -> Coset:
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, d: int, x: Coset) -> Coset:
        return self.reduce([d * a for a in x])

    def zero(self) -> Coset:
        return tuple([0] * self.g)

    def closure(self, generators: Iterable[Sequence[int]]) -> set[Coset]:
        """Subgroup generated by *generators*, by breadth-first search."""
        steps = [self.reduce(gen) for gen in generators]
        seen = {self.zero()}
        queue = deque(seen)
        while queue:
            current = queue.popleft()
            for step in steps:
                nxt = self.add(current, step)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    def elements(self) -> set[Coset]:
        unit_vectors = [[1 if i == j else 0 for i in range(self.g)] for j in range(self.g)]
        return self.closure(unit_vectors)


def group_profile(group: FinAbGroup) -> dict[int, int]:
    order = group.order
    return {d: group.torsion_count(d) for d in divisors(order)}


def brute_force_profile(relations) -> dict[int, int]:
    """Torsion profile of ``Z^g / M Z^g`` from its explicit cosets."""
    space = CosetSpace(relations)
    elements = space.elements()
    return {d: sum(1 for x in elements if space.scale(d, x) == space.zero()) for d in divisors(len(elements))}


def brute_force_cokernel_profile(cmap: ComponentMap) -> dict[int, int]:
    """Torsion profile of ``target / image`` for a component map.

    ``#{x in Phi_2 : d x in image} / #image`` counts the d-torsion of the
    quotient.
    """
    source_g = cmap.source_relations.rows
    target = CosetSpace(cmap.target_relations)
    images = [cmap.apply([1 if i == j else 0 for i in range(source_g)]) for j in range(source_g)]
    image = target.closure(images)
    elements = target.elements()
    quotient_order = len(elements) // len(image)
    return {
        d: sum(1 for x in elements if target.scale(d, x) in image) // len(image) for d in divisors(quotient_order)
    }
