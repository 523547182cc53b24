"""Brute-force oracles shared by the test modules.

Everything here works directly on exponent tuples and never calls into the
library's ideal arithmetic, so it can check that arithmetic independently.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from stanleyfilt.monomial import MonomialIdeal

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def box(bounds):
    """All exponent vectors b with 0 <= b_k <= bounds[k]."""
    return list(itertools.product(*(range(d + 1) for d in bounds)))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def brute_member(gens, m):
    return any(divides(g, m) for g in gens)


def bounds_for(n, *gen_lists, extra=1):
    """Per-variable max exponent over all generator lists, plus ``extra``."""
    out = [0] * n
    for gens in gen_lists:
        for g in gens:
            out = [max(a, b) for a, b in zip(out, g)]
    return [b + extra for b in out]


def brute_colon_is_prime(gens, u, variables, bounds):
    """Check (I : u) = (x_k : k in variables) on every monomial w of the box."""
    for w in box(bounds):
        in_colon = brute_member(gens, tuple(a + b for a, b in zip(u, w)))
        in_prime = any(w[k] > 0 for k in variables)
        if in_colon != in_prime:
            return False
    return True


def brute_coverage(ideal_gens, pieces, bounds):
    """Map each box cell to how many pieces (u, Z) contain it (clamp semantics)."""
    out = {}
    for b in box(bounds):
        count = 0
        for u, Z in pieces:
            if all((b[k] >= u[k]) if k in Z else (b[k] == u[k]) for k in range(len(b))):
                count += 1
        out[b] = count
    return out


def brute_replay(base_gens, steps, n):
    """Independent replay of a filtration given as [(u, prime variable set)].

    Returns the 1-based index of the first bad step, 0 if the chain does not
    end at S, or None when every step is sound.
    """
    gens = list(base_gens)
    bounds = bounds_for(n, gens, [u for u, _ in steps])
    for j, (u, P) in enumerate(steps, start=1):
        if brute_member(gens, u) or not brute_colon_is_prime(gens, u, P, bounds):
            return j
        gens.append(u)
    return None if brute_member(gens, (0,) * n) else 0


@st.composite
def monomials(draw, n, max_exp=3):
    return tuple(draw(st.integers(0, max_exp)) for _ in range(n))


@st.composite
def ideals(draw, n=None, max_exp=3, max_gens=6, min_n=2, max_n=4):
    """Proper nonzero monomial ideals."""
    if n is None:
        n = draw(st.integers(min_n, max_n))
    gens = draw(st.lists(monomials(n, max_exp), min_size=1, max_size=max_gens))
    gens = [g for g in gens if any(g)] or [tuple([1] + [0] * (n - 1))]
    return MonomialIdeal.from_generators(n, gens)


@st.composite
def height2_ideals(draw, n=None, max_components=5, max_exp=3):
    """Intersections of random (x_i^a, x_j^b), so every associated prime has height 2."""
    if n is None:
        n = draw(st.integers(2, 5))
    count = draw(st.integers(1, max_components))
    J = MonomialIdeal.unit(n)
    for _ in range(count):
        i, j = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        a, b = draw(st.integers(1, max_exp)), draw(st.integers(1, max_exp))
        gens = [tuple(a if k == i else 0 for k in range(n)), tuple(b if k == j else 0 for k in range(n))]
        J = J.intersect(MonomialIdeal.from_generators(n, gens))
    return J


@pytest.fixture
def tmp_text(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return write


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """record(name, passed, detail): one summary line per acceptance criterion."""
    results = request.config.stash.setdefault(_ACCEPTANCE, {})

    def record(name, passed, detail):
        line = f"{name} {'PASS' if passed else 'FAIL'}: {detail}"
        results[name] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(results[name])
