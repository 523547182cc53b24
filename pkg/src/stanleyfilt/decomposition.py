"""Irreducible decomposition of monomial ideals and invariants derived from it."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .monomial import (
    Monomial,
    MonomialIdeal,
    PrimeIdeal,
    format_monomial,
    intersect_all,
    minimal_generators,
    var_power,
)


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class IrreducibleComponent:
    """The ideal (x_i^{d_i} : i in support), stored as sorted (variable, exponent) pairs."""

    n: int
    powers: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.powers:
            raise ValueError("irreducible component needs non-empty support")
        if any(e <= 0 for _, e in self.powers):
            raise ValueError("exponents of an irreducible component must be positive")

    @classmethod
    def from_ideal(cls, Q: MonomialIdeal) -> IrreducibleComponent:
        powers = []
        for g in Q.gens:
            supp = [k for k, e in enumerate(g) if e]
            if len(supp) != 1:
                raise ValueError(f"{Q} is not generated by pure powers")
            powers.append((supp[0], g[supp[0]]))
        return cls(Q.n, tuple(sorted(powers)))

    @property
    def height(self) -> int:
        return len(self.powers)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(k for k, _ in self.powers)

    def exponent(self, k: int) -> int:
        """Exponent of x_k among the generators, 0 if x_k is not involved."""
        return dict(self.powers).get(k, 0)

    def radical(self) -> PrimeIdeal:
        return PrimeIdeal(self.n, self.support)

    def to_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.n, minimal_generators(var_power(self.n, k, e) for k, e in self.powers))

    def contains(self, other: IrreducibleComponent) -> bool:
        mine = dict(self.powers)
        return all(k in mine and mine[k] <= e for k, e in other.powers)

    def sort_key(self) -> tuple:
        return (self.height, self.powers)

    def __str__(self) -> str:
        return "(" + ", ".join(format_monomial(var_power(self.n, k, e)) for k, e in self.powers) + ")"


def _is_pure(g: Monomial) -> bool:
    return sum(1 for e in g if e) <= 1


@lru_cache(maxsize=65536)
def _split(n: int, gens: tuple[Monomial, ...]) -> frozenset[tuple[tuple[int, int], ...]]:
    for i, g in enumerate(gens):
        if not _is_pure(g):
            break
    else:
        return frozenset([tuple(sorted((g.index(max(g)), max(g)) for g in gens))])
    k = next(j for j, e in enumerate(g) if e)
    rest = gens[:i] + gens[i + 1:]
    pure = var_power(n, k, g[k])
    cofactor = tuple(0 if j == k else e for j, e in enumerate(g))
    return _split(n, minimal_generators(rest + (pure,))) | _split(
        n, minimal_generators(rest + (cofactor,))
    )


def irreducible_decomposition(I: MonomialIdeal) -> list[IrreducibleComponent]:
    """Irredundant irreducible components of I, sorted by (height, powers).

    Splits the lexicographically first mixed generator x_k^a * h at its lowest
    variable into (rest, x_k^a) and (rest, h), then discards components that
    contain another one.  Monomial ideals form a distributive lattice, so a
    component is redundant exactly when it contains some other component.
    """
    if not I.is_proper_nonzero:
        raise DecompositionError(f"irreducible decomposition needs a proper nonzero ideal, got {I}")
    comps = [IrreducibleComponent(I.n, p) for p in _split(I.n, I.gens)]
    kept = [Q for Q in comps if not any(R != Q and Q.contains(R) for R in comps)]
    return sorted(kept, key=IrreducibleComponent.sort_key)


def s_count(I: MonomialIdeal) -> int:
    return len(irreducible_decomposition(I))


def associated_primes(I: MonomialIdeal) -> list[PrimeIdeal]:
    primes = {Q.radical() for Q in irreducible_decomposition(I)}
    return sorted(primes, key=PrimeIdeal.sort_key)


def minimal_primes(I: MonomialIdeal) -> list[PrimeIdeal]:
    ass = associated_primes(I)
    return [P for P in ass if not any(Q.variables < P.variables for Q in ass)]


def height_part(I: MonomialIdeal, h: int) -> MonomialIdeal:
    """Intersection of the components of height exactly h (the unit ideal if none)."""
    if not 1 <= h <= I.n:
        raise ValueError(f"height {h} outside 1..{I.n}")
    comps = [Q.to_ideal() for Q in irreducible_decomposition(I) if Q.height == h]
    return intersect_all(I.n, comps)


def dimension_filtration(I: MonomialIdeal) -> list[MonomialIdeal]:
    """Chain F_0 = I, ..., F_n = S with F_k the intersection of components of height <= n - k."""
    n = I.n
    parts = {h: height_part(I, h) for h in range(1, n + 1)}
    chain = []
    for k in range(n + 1):
        chain.append(intersect_all(n, (parts[h] for h in range(1, n - k + 1))))
    for lower, upper in zip(chain, chain[1:]):
        if not upper.contains_ideal(lower):
            raise DecompositionError("dimension filtration is not ascending")
    return chain


def codim(I: MonomialIdeal) -> int:
    return min(P.height for P in associated_primes(I))


def dim_quotient(I: MonomialIdeal) -> int:
    return I.n - codim(I)
