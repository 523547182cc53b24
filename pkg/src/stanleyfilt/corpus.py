"""Seeded random monomial ideals for batch verification.

Profiles:

any            random generators, exponents in [0, max_exp], 1..max_gens of them
height2        intersection of 1..5 random components (x_i^a, x_j^b), a, b in [1, 3]
height2_n5     height2 in five variables
principal_plus (u) intersected with an ``any`` ideal, so a height-1 part always survives
"""

from __future__ import annotations

import random
from typing import Iterator

from .monomial import MonomialIdeal, intersect_all, var_power

PROFILES = ("any", "height2", "height2_n5", "principal_plus")


def _random_monomial(rng: random.Random, n: int, max_exp: int) -> tuple[int, ...]:
    while True:
        m = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(m):
            return m


def random_any(rng: random.Random, n: int, max_exp: int = 3, max_gens: int = 8) -> MonomialIdeal:
    count = rng.randint(1, max_gens)
    return MonomialIdeal.from_generators(n, [_random_monomial(rng, n, max_exp) for _ in range(count)])


def random_height2(rng: random.Random, n: int, max_components: int = 5, max_exp: int = 3) -> MonomialIdeal:
    comps = []
    for _ in range(rng.randint(1, max_components)):
        i, j = rng.sample(range(n), 2)
        comps.append(
            MonomialIdeal.from_generators(n, [var_power(n, i, rng.randint(1, max_exp)), var_power(n, j, rng.randint(1, max_exp))])
        )
    return intersect_all(n, comps)


def random_principal_plus(rng: random.Random, n: int, max_exp: int = 3, max_gens: int = 8) -> MonomialIdeal:
    u = MonomialIdeal(n, (_random_monomial(rng, n, max_exp),))
    return u.intersect(random_any(rng, n, max_exp, max_gens))


def corpus(
    n: int,
    count: int,
    profile: str = "any",
    seed: int = 0,
    max_exp: int = 3,
    max_gens: int = 8,
) -> Iterator[MonomialIdeal]:
    """Deterministic stream of ``count`` proper nonzero ideals."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    if profile == "height2_n5":
        n = 5
    if profile.startswith("height2") and n < 2:
        raise ValueError("height-2 components need n >= 2")
    rng = random.Random(seed)
    emitted = 0
    while emitted < count:
        if profile == "any":
            I = random_any(rng, n, max_exp, max_gens)
        elif profile == "principal_plus":
            I = random_principal_plus(rng, n, max_exp, max_gens)
        else:
            I = random_height2(rng, n, max_exp=max_exp)
        if I.is_proper_nonzero:
            emitted += 1
            yield I
