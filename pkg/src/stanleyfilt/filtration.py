"""Monomial prime filtrations: replay verification and constructions.

A filtration I = I_0 < I_1 < ... < I_r = S is stored as its base ideal and the
monomials u_j adjoined at each step, together with the prime P_j claimed to
equal (I_{j-1} : u_j).  That colon condition certifies
I_j / I_{j-1} = S/P_j(-deg u_j), so every constructor here returns a chain
that has been replayed step by step.

Segments (chains that stop at some ideal short of S) use the same type; pass
``top=`` to the verifier for them.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .decomposition import (
    IrreducibleComponent,
    associated_primes,
    height_part,
    irreducible_decomposition,
    dimension_filtration,
    minimal_primes,
    s_count,
)
from .homological import depth_report
from .monomial import (
    Monomial,
    MonomialIdeal,
    PrimeIdeal,
    format_ideal,
    format_monomial,
    mono_mul,
    parse_ideal,
    parse_monomial,
    parse_variable_set,
    var_power,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_NODE_BUDGET = 20_000


class PreconditionError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """A construction that should succeed did not; carries the offending ideal."""

    def __init__(self, message: str, ideal: MonomialIdeal | None = None, segment: str | None = None):
        detail = message
        if segment:
            detail = f"[{segment}] {detail}"
        if ideal is not None:
            detail = f"{detail}; ideal n={ideal.n} {format_ideal(ideal)}"
        super().__init__(detail)
        self.ideal = ideal
        self.segment = segment


class SearchExhausted(ConstructionError):
    pass


@dataclass(frozen=True)
class FiltrationStep:
    u: Monomial
    prime: PrimeIdeal

    @property
    def shift(self) -> Monomial:
        return self.u


@dataclass(frozen=True)
class PrimeFiltration:
    base: MonomialIdeal
    steps: tuple[FiltrationStep, ...] = ()

    @property
    def n(self) -> int:
        return self.base.n

    def ideals(self) -> list[MonomialIdeal]:
        """I_0, ..., I_r obtained by adjoining the step monomials in order."""
        out = [self.base]
        for step in self.steps:
            out.append(out[-1].add(step.u))
        return out

    def primes(self) -> list[PrimeIdeal]:
        return [s.prime for s in self.steps]

    def to_text(self) -> str:
        lines = [f"n = {self.n}", f"base = {format_ideal(self.base)}"]
        lines += [f"{format_monomial(s.u)} ; {s.prime}" for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PrimeFiltration:
        header, body = _split_header(text)
        n = int(header["n"])
        base = parse_ideal(header["base"], n)
        steps = []
        for line in body:
            u_text, _, p_text = line.partition(";")
            steps.append(
                FiltrationStep(parse_monomial(u_text, n), PrimeIdeal(n, parse_variable_set(p_text, n)))
            )
        return cls(base, tuple(steps))


def _split_header(text: str) -> tuple[dict[str, str], list[str]]:
    header: dict[str, str] = {}
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if eq and ";" not in line:
            header[key.strip()] = value.strip()
        else:
            body.append(line)
    if "n" not in header:
        raise ValueError("missing 'n = ...' header line")
    return header, body


@dataclass(frozen=True)
class FiltrationReport:
    valid: bool
    supp: tuple[PrimeIdeal, ...]
    is_pretty_clean: bool
    is_clean: bool
    supp_equals_ass: bool
    max_height: int
    min_factor_dim: int
    failure: tuple[int, str] | None = None

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "filtration_report",
            "valid": self.valid,
            "supp": [str(P) for P in self.supp],
            "is_pretty_clean": self.is_pretty_clean,
            "is_clean": self.is_clean,
            "supp_equals_ass": self.supp_equals_ass,
            "max_height": self.max_height,
            "min_factor_dim": self.min_factor_dim,
            "failure": None if self.failure is None else {"step": self.failure[0], "reason": self.failure[1]},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def is_pretty_clean_sequence(primes: Sequence[PrimeIdeal]) -> bool:
    """For all i < j: P_i contained in P_j forces P_i = P_j."""
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if p.variables < q.variables:
                return False
    return True


def verify_filtration(F: PrimeFiltration, top: MonomialIdeal | None = None) -> FiltrationReport:
    """Replay F and check u_j not in I_{j-1} and (I_{j-1} : u_j) = P_j at every step.

    Without ``top`` the chain must end at S; with it, at ``top``.  Failures
    are reported with a 1-based step index (0 for the chain as a whole).
    """
    n = F.n
    top = MonomialIdeal.unit(n) if top is None else top
    primes = F.primes()
    failure = None
    current = F.base
    for j, step in enumerate(F.steps, start=1):
        if len(step.u) != n or step.prime.n != n:
            failure = (j, "dimension mismatch")
            break
        if step.u in current:
            failure = (j, f"{format_monomial(step.u)} already lies in I_{j - 1}")
            break
        if step.u not in top:
            failure = (j, f"{format_monomial(step.u)} leaves the target ideal {format_ideal(top)}")
            break
        colon = current.colon(step.u)
        if colon != step.prime.to_ideal():
            failure = (j, f"colon (I_{j - 1} : {format_monomial(step.u)}) = {format_ideal(colon)}, claimed {step.prime}")
            break
        current = current.add(step.u)
    else:
        if current != top:
            failure = (0, f"chain incomplete: ends at {format_ideal(current)}, not {format_ideal(top)}")

    supp = tuple(sorted(set(primes), key=PrimeIdeal.sort_key))
    max_height = max((P.height for P in primes), default=0)
    pretty = is_pretty_clean_sequence(primes)
    if F.base.is_proper_nonzero:
        ass = set(associated_primes(F.base))
        mins = set(minimal_primes(F.base))
    else:
        ass, mins = set(), set()
    return FiltrationReport(
        valid=failure is None,
        supp=supp,
        is_pretty_clean=pretty,
        is_clean=set(supp) <= mins if supp else True,
        supp_equals_ass=set(supp) == ass,
        max_height=max_height,
        min_factor_dim=n - max_height,
        failure=failure,
    )


def _require_valid(F: PrimeFiltration, top: MonomialIdeal | None, what: str, ideal: MonomialIdeal) -> PrimeFiltration:
    report = verify_filtration(F, top)
    if not report.valid:
        raise ConstructionError(f"{what} failed replay at step {report.failure[0]}: {report.failure[1]}", ideal, what)
    return F


def glue(*segments: PrimeFiltration) -> PrimeFiltration:
    """Concatenate adjacent segments, bottom first."""
    segments = [s for s in segments if s is not None]
    if not segments:
        raise ValueError("nothing to glue")
    steps: list[FiltrationStep] = []
    current = segments[0].base
    for seg in segments:
        if seg.base != current:
            raise ValueError(f"segment starts at {format_ideal(seg.base)}, expected {format_ideal(current)}")
        steps.extend(seg.steps)
        current = seg.ideals()[-1]
    return PrimeFiltration(segments[0].base, tuple(steps))


# ------------------------------------------------------------ clean pieces


def clean_filtration_irreducible(Q: IrreducibleComponent) -> PrimeFiltration:
    """Adjoin the standard monomials of the box below Q from the top down.

    Descending lex order is a linear extension of divisibility read from the
    top, so every colon is the radical of Q.
    """
    n = Q.n
    P = Q.radical()
    ranges = [range(e) for _, e in Q.powers]
    box = []
    for exps in itertools.product(*ranges):
        m = [0] * n
        for (k, _), e in zip(Q.powers, exps):
            m[k] = e
        box.append(tuple(m))
    box.sort(reverse=True)
    F = PrimeFiltration(Q.to_ideal(), tuple(FiltrationStep(u, P) for u in box))
    return _require_valid(F, None, "clean_filtration_irreducible", Q.to_ideal())


def filtration_principal(u: Monomial, n: int | None = None) -> PrimeFiltration:
    """(u) < (u/x_i) < ... < S, peeling the lowest-index variable first."""
    n = len(u) if n is None else n
    if len(u) != n:
        raise PreconditionError(f"monomial of length {len(u)} in ring of dimension {n}")
    if not any(u):
        raise PreconditionError("filtration_principal needs u != 1")
    steps = []
    current = list(u)
    while any(current):
        k = next(i for i, e in enumerate(current) if e)
        current[k] -= 1
        steps.append(FiltrationStep(tuple(current), PrimeIdeal(n, frozenset([k]))))
    base = MonomialIdeal(n, (tuple(u),))
    return _require_valid(PrimeFiltration(base, tuple(steps)), None, "filtration_principal", base)


# ------------------------------------------------- transport between rings


def _embed(m: Monomial, variables: Sequence[int], n: int) -> Monomial:
    out = [0] * n
    for k, e in zip(variables, m):
        out[k] = e
    return tuple(out)


def embed_ideal(J: MonomialIdeal, variables: Sequence[int], n: int) -> MonomialIdeal:
    """J in K[x_v : v in variables] viewed as J*S in n variables."""
    return MonomialIdeal(n, tuple(sorted(_embed(g, variables, n) for g in J.gens)))


def restrict_ideal(I: MonomialIdeal, variables: Sequence[int]) -> MonomialIdeal:
    """Inverse of :func:`embed_ideal`; I must be generated in the given variables."""
    outside = set(range(I.n)) - set(variables)
    for g in I.gens:
        if any(g[k] for k in outside):
            raise PreconditionError(f"{format_ideal(I)} involves variables outside {sorted(variables)}")
    return MonomialIdeal(len(variables), tuple(sorted(tuple(g[k] for k in variables) for g in I.gens)))


def extend_filtration(F: PrimeFiltration, variables: Sequence[int], n: int) -> PrimeFiltration:
    """Transport a filtration over K[x_v : v in variables] to n variables.

    ``variables`` lists the global (0-based) index of each local variable.
    Primes keep their generators, so every factor dimension grows by
    n - len(variables) and validity and (pretty) cleanness are preserved.
    """
    variables = list(variables)
    if len(variables) != F.n or len(set(variables)) != len(variables) or any(not 0 <= v < n for v in variables):
        raise PreconditionError(f"bad variable map {variables} for a filtration in {F.n} variables")
    steps = tuple(
        FiltrationStep(_embed(s.u, variables, n), PrimeIdeal(n, frozenset(variables[k] for k in s.prime.variables)))
        for s in F.steps
    )
    return PrimeFiltration(embed_ideal(F.base, variables, n), steps)


def translate_filtration(F: PrimeFiltration, u: Monomial, new_base: MonomialIdeal) -> PrimeFiltration:
    """Multiply every step monomial by u and replay from ``new_base``.

    Valid when (new_base : u) equals F.base; the result climbs from new_base
    to new_base + (u).
    """
    steps = tuple(FiltrationStep(mono_mul(u, s.u), s.prime) for s in F.steps)
    out = PrimeFiltration(new_base, steps)
    return _require_valid(out, new_base.add(u), "translate_filtration", new_base)


# ------------------------------------------------------------------ search


def _members(cells: np.ndarray, gens: np.ndarray) -> np.ndarray:
    if len(gens) == 0:
        return np.zeros(len(cells), dtype=bool)
    return (cells[:, None, :] >= gens[None, :, :]).all(-1).any(-1)


class _PrettyCleanSearch:
    def __init__(self, base: MonomialIdeal, top: MonomialIdeal, height_cap: int | None,
                 pretty: bool, node_budget: int) -> None:
        n = base.n
        self.n = n
        self.base = base
        self.top = top
        self.cap = height_cap
        self.pretty = pretty
        self.budget = node_budget
        self.nodes = 0
        self.failed: set = set()
        # (I : u) only depends on min(u_k, max exponent of x_k), so this box holds every
        # candidate up to that clamp.
        bound = [max(a, b) for a, b in zip(base.max_exponents(), top.max_exponents())]
        cells = np.array(list(itertools.product(*(range(b + 1) for b in bound))), dtype=np.int32)
        cells = cells[_members(cells, np.array(top.gens, dtype=np.int32).reshape(-1, n))]
        order = np.lexsort(tuple(-cells[:, k] for k in reversed(range(n))) + (-cells.sum(1),))
        self.cells = cells[order]
        self.bits = 1 << np.arange(n)

    def candidates(self, gens: tuple[Monomial, ...]) -> list[tuple[int, int, int]]:
        """(height, prime mask, cell index) for every u in top with (I : u) prime."""
        G = np.array(gens, dtype=np.int32).reshape(-1, self.n)
        cells = self.cells
        ge = cells[:, None, :] >= G[None, :, :]
        lt = ~ge
        misses = lt.sum(-1)
        in_I = (misses == 0).any(-1)
        # x_k * u in I: some generator fails only in coordinate k and is met after the shift
        shift_ok = (misses[:, :, None] - lt == 0) & (cells[:, None, :] + 1 >= G[None, :, :])
        pmat = shift_ok.any(1) & ~in_I[:, None]
        # (I : u) = (x_P) iff every generator exceeds u in some coordinate of P
        prime = (lt & pmat[:, None, :]).any(-1).all(-1) & ~in_I & pmat.any(-1)
        idx = np.nonzero(prime)[0]
        masks = pmat[idx] @ self.bits
        heights = pmat[idx].sum(-1)
        return [(int(h), int(m), int(i)) for h, m, i in zip(heights, masks, idx)]

    def dead(self, cands, earlier: frozenset[int]) -> bool:
        # every associated prime of top/I_cur must show up later in the chain
        for h, m, _ in cands:
            if self.cap is not None and h > self.cap:
                return True
            if self.pretty and any(e & m == e and e != m for e in earlier):
                return True
        return False

    def run(self) -> list[FiltrationStep]:
        steps: list[FiltrationStep] = []
        if self._dfs(self.base, frozenset(), steps):
            return steps
        if self.nodes >= self.budget:
            raise SearchExhausted(f"node budget {self.budget} exhausted", self.base, "pretty_clean_search")
        raise SearchExhausted("no admissible filtration exists in the candidate box", self.base, "pretty_clean_search")

    def _dfs(self, current: MonomialIdeal, earlier: frozenset[int], steps: list[FiltrationStep]) -> bool:
        if current.contains_ideal(self.top):
            return True
        key = (current.gens, earlier if self.pretty else None)
        if key in self.failed or self.nodes >= self.budget:
            return False
        self.nodes += 1
        cands = self.candidates(current.gens)
        if not cands or self.dead(cands, earlier):
            self.failed.add(key)
            return False
        cands.sort(key=lambda c: (-c[0], c[2]))
        for h, m, i in cands:
            u = tuple(int(e) for e in self.cells[i])
            P = PrimeIdeal(self.n, frozenset(k for k in range(self.n) if m >> k & 1))
            steps.append(FiltrationStep(u, P))
            if self._dfs(current.add(u), earlier | {m} if self.pretty else earlier, steps):
                return True
            steps.pop()
            if self.nodes >= self.budget:
                return False
        self.failed.add(key)
        return False


def pretty_clean_search(
    I: MonomialIdeal,
    height_cap: int | None = None,
    *,
    top: MonomialIdeal | None = None,
    pretty: bool = True,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> PrimeFiltration:
    """Backtracking search for a prime filtration from I up to ``top`` (default S).

    Candidates u are drawn from the clamped exponent box; u is admissible when
    (I_cur : u) is a prime of height at most ``height_cap``.  Higher primes are
    tried first, which is the order a pretty clean chain needs.  A state is
    abandoned as soon as some associated prime of top/I_cur violates the cap or
    the pretty clean condition, since that prime must appear later anyway.

    Raises SearchExhausted when no chain is found.
    """
    n = I.n
    top = MonomialIdeal.unit(n) if top is None else top
    if I.is_zero:
        raise PreconditionError("pretty_clean_search needs a nonzero ideal")
    if not top.contains_ideal(I):
        raise PreconditionError(f"{format_ideal(top)} does not contain {format_ideal(I)}")
    search = _PrettyCleanSearch(I, top, height_cap, pretty, node_budget)
    F = PrimeFiltration(I, tuple(search.run()))
    log.debug("pretty_clean_search: %d steps after %d nodes", len(F.steps), search.nodes)
    report = verify_filtration(F, top)
    if not report.valid or (pretty and not report.is_pretty_clean):
        raise ConstructionError(f"search produced a chain that fails replay: {report.failure}", I, "pretty_clean_search")
    if height_cap is not None and report.max_height > height_cap:
        raise ConstructionError("search exceeded its height cap", I, "pretty_clean_search")
    return F


# ------------------------------------------------- height-two recursion


def _all_height_two(I: MonomialIdeal) -> bool:
    return I.is_proper_nonzero and all(P.height == 2 for P in associated_primes(I))


def choose_pivot(comps: Sequence[IrreducibleComponent]) -> tuple[int, int, IrreducibleComponent]:
    """Pick (a, b, Q) with Q = (x_a^d_a, x_b^d_b) and d_a the largest pure power anywhere.

    Ties go to the lowest a, then the lowest partner b.
    """
    top = max(e for Q in comps for _, e in Q.powers)
    options = []
    for Q in comps:
        for a, e in Q.powers:
            if e == top:
                b = next(k for k, _ in Q.powers if k != a)
                options.append((a, b, Q.sort_key(), Q))
    a, b, _, Q = min(options, key=lambda t: t[:3])
    return a, b, Q


def lemma2_filtration(I: MonomialIdeal) -> PrimeFiltration:
    """Prime filtration of S/I with every prime of height <= 3.

    Requires n <= 5 and every associated prime of I of height 2.  Recurses on
    the number of irreducible components through the chain
    I < (I, x_b^d_b) < (x_a^d_a, x_b^d_b) < S.
    """
    if I.n > 5:
        raise PreconditionError(f"lemma2_filtration needs n <= 5, got n={I.n}")
    if not _all_height_two(I):
        raise PreconditionError(f"every associated prime of {format_ideal(I)} must have height 2")
    F = _lemma2(I)
    report = verify_filtration(F)
    if not report.valid:
        raise ConstructionError(f"glued chain fails replay: {report.failure}", I, "lemma2")
    if report.max_height > 3:
        raise ConstructionError(f"prime of height {report.max_height} in the chain", I, "lemma2")
    return F


def _lemma2(I: MonomialIdeal) -> PrimeFiltration:
    n = I.n
    comps = irreducible_decomposition(I)
    if len(comps) == 1:
        return clean_filtration_irreducible(comps[0])
    a, b, Q1 = choose_pivot(comps)
    xa = var_power(n, a, Q1.exponent(a))
    xb = var_power(n, b, Q1.exponent(b))
    F1 = I.add(xb)
    segments = [PrimeFiltration(I)]

    # bottom: F1/I = S/(I : x_b^d_b)
    C = I.colon(xb)
    if not C.is_unit:
        if s_count(C) >= len(comps):
            raise ConstructionError("s(I : x_b^d_b) did not drop", I, "lemma2 bottom")
        segments.append(translate_filtration(_lemma2(C), xb, I))

    # middle: F2/F1 = S/E with E = (F1 : x_a^d_a) generated away from x_a
    E = F1.colon(xa)
    if not E.is_unit:
        segments.append(translate_filtration(_lemma2_middle(E, a, len(comps)), xa, F1))

    # top: S/Q1
    segments.append(clean_filtration_irreducible(Q1))
    return glue(*segments)


def _lemma2_middle(E: MonomialIdeal, a: int, s_parent: int) -> PrimeFiltration:
    n = E.n
    rest = [k for k in range(n) if k != a]
    W = restrict_ideal(E, rest)
    if n - 1 <= 3:
        FW = pretty_clean_search(W)
    else:
        # W < G < T with G the height-2 part of W; G/W only has height-3 primes
        G = height_part(W, 2)
        segments = []
        if G != W:
            segments.append(pretty_clean_search(W, 3, top=G))
        if not G.is_unit:
            if s_count(G) >= s_parent:
                raise ConstructionError("s(G) did not drop", embed_ideal(G, rest, n), "lemma2 middle")
            segments.append(_lemma2(G))
        FW = glue(*segments)
    return extend_filtration(FW, rest, n)


# -------------------------------------------------- Stanley-adapted chains


def _pivots(comps: Sequence[IrreducibleComponent]) -> list[tuple[int, int, IrreducibleComponent]]:
    """Every (a, b, Q) where Q carries the largest power of x_a over all components."""
    largest: dict[int, int] = {}
    for Q in comps:
        for k, e in Q.powers:
            largest[k] = max(largest.get(k, 0), e)
    out = []
    for Q in comps:
        for a, e in Q.powers:
            if e == largest[a]:
                out.append((a, next(k for k, _ in Q.powers if k != a), Q))
    return sorted(out, key=lambda t: (-t[2].exponent(t[0]), t[0], t[1], t[2].sort_key()))


def clean_height2_filtration(I: MonomialIdeal) -> PrimeFiltration | None:
    """Clean filtration (every prime of height 2) of S/I via the pivot chain of lemma2_filtration.

    Tries each admissible pivot until both (I : x_b^d_b) and the middle ideal
    ((I, x_b^d_b) : x_a^d_a) are again unmixed of height 2 with clean chains.
    Returns None when no pivot sequence works.
    """
    return _clean2(I)


@lru_cache(maxsize=4096)
def _clean2(I: MonomialIdeal) -> PrimeFiltration | None:
    comps = irreducible_decomposition(I)
    if any(Q.height != 2 for Q in comps):
        return None
    if len(comps) == 1:
        return clean_filtration_irreducible(comps[0])
    n = I.n
    for a, b, Q1 in _pivots(comps):
        xa = var_power(n, a, Q1.exponent(a))
        xb = var_power(n, b, Q1.exponent(b))
        F1 = I.add(xb)
        E = F1.colon(xa)
        C = I.colon(xb)
        middle = None if E.is_unit else _clean2(E)
        if middle is None and not E.is_unit:
            continue
        bottom = None if C.is_unit else _clean2(C)
        if bottom is None and not C.is_unit:
            continue
        segments = [PrimeFiltration(I)]
        if bottom is not None:
            segments.append(translate_filtration(bottom, xb, I))
        if middle is not None:
            segments.append(translate_filtration(middle, xa, F1))
        segments.append(clean_filtration_irreducible(Q1))
        return glue(*segments)
    return None


def height2_stanley_filtration(I: MonomialIdeal, node_budget: int = 2_000) -> PrimeFiltration:
    """Filtration of S/I (all associated primes of height 2) with factor dims >= depth.

    Non Cohen-Macaulay quotients have depth <= n - 3, which lemma2_filtration
    already meets.  Cohen-Macaulay quotients have depth n - 2 and need every
    prime of height 2: the pivot-enumerating recursion is tried first, then a
    capped search, and only then plain lemma2_filtration.
    """
    if depth_report(I).is_cohen_macaulay:
        F = clean_height2_filtration(I)
        if F is not None:
            return F
        try:
            return pretty_clean_search(I, 2, node_budget=node_budget)
        except SearchExhausted:
            log.warning("no clean chain for Cohen-Macaulay %s; falling back to lemma2_filtration", format_ideal(I))
    return lemma2_filtration(I)


def theorem_main_filtration(I: MonomialIdeal) -> PrimeFiltration:
    """Prime filtration of S/I in four variables whose factor dims are >= depth(S/I).

    Refines the dimension filtration I = F0 < F1 < F2 < F3 = (u) < S, bottom first:
    F1/F0 has only the maximal ideal as associated prime, F2/F1 only height-3
    primes, F3/F2 = S/(F2 : u) has height-2 primes and S/(u) peels off u.
    """
    if I.n != 4:
        raise PreconditionError(f"theorem_main_filtration needs n = 4, got n={I.n}")
    if not I.is_proper_nonzero:
        raise PreconditionError("theorem_main_filtration needs a proper nonzero ideal")
    F0, F1, F2, F3, _ = dimension_filtration(I)
    u = F3.gens[0]
    segments = [PrimeFiltration(I)]
    if F1 != F0:
        segments.append(_segment(lambda: pretty_clean_search(F0, top=F1), I, "F1/F0"))
    if F2 != F1:
        segments.append(_segment(lambda: pretty_clean_search(F1, 3, top=F2), I, "F2/F1"))
    if F3 != F2:
        C = F2.colon(u)
        segments.append(_segment(lambda: translate_filtration(height2_stanley_filtration(C), u, F2), I, "F3/F2"))
    if not F3.is_unit:
        segments.append(filtration_principal(u, 4))
    F = glue(*segments)
    report = verify_filtration(F)
    if not report.valid:
        raise ConstructionError(f"glued chain fails replay: {report.failure}", I, "theorem_main")
    depth = depth_report(I).depth
    if report.min_factor_dim < depth:
        raise ConstructionError(
            f"factor dimension {report.min_factor_dim} below depth {depth}", I, "theorem_main"
        )
    return F


def _segment(build, I: MonomialIdeal, name: str) -> PrimeFiltration:
    try:
        return build()
    except ConstructionError as exc:
        raise ConstructionError(f"segment failed: {exc}", I, name) from exc
