"""Stanley decompositions of S/I: extraction, exhaustive checking, exact sdepth.

All checks run on the clamped box prod_k {0..D_k}, where D_k exceeds every
exponent of x_k that occurs in a generator of I or in a piece monomial.  Every
membership predicate involved (x^b in I, x^b in u K[Z]) is a threshold
condition with thresholds below D_k in each coordinate, so coverage counts are
constant along {b_k >= D_k} and the finite scan decides the infinite direct sum.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .decomposition import dim_quotient
from .filtration import (
    SCHEMA_VERSION,
    ConstructionError,
    PreconditionError,
    PrimeFiltration,
    _all_height_two,
    _split_header,
    height2_stanley_filtration,
    theorem_main_filtration,
    verify_filtration,
)
from .homological import depth_report
from .monomial import (
    Monomial,
    MonomialIdeal,
    format_ideal,
    format_monomial,
    format_variable_set,
    parse_ideal,
    parse_monomial,
    parse_variable_set,
)

DEFAULT_CELL_BUDGET = 4096
DEFAULT_ORACLE_NODES = 200_000


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class StanleyPiece:
    u: Monomial
    Z: frozenset[int]

    @property
    def dim(self) -> int:
        return len(self.Z)

    def __str__(self) -> str:
        return f"{format_monomial(self.u)} ; {format_variable_set(self.Z)}"


@dataclass(frozen=True)
class StanleyDecomposition:
    ideal: MonomialIdeal
    pieces: tuple[StanleyPiece, ...]

    @property
    def n(self) -> int:
        return self.ideal.n

    def to_text(self) -> str:
        lines = [f"n = {self.n}", f"ideal = {format_ideal(self.ideal)}"]
        lines += [str(p) for p in self.pieces]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> StanleyDecomposition:
        header, body = _split_header(text)
        n = int(header["n"])
        ideal = parse_ideal(header["ideal"], n)
        pieces = []
        for line in body:
            u_text, _, z_text = line.partition(";")
            pieces.append(StanleyPiece(parse_monomial(u_text, n), parse_variable_set(z_text, n)))
        return cls(ideal, tuple(pieces))


@dataclass(frozen=True)
class StanleyReport:
    is_valid_decomposition: bool
    sdepth_of_decomposition: int
    depth: int
    is_stanley_witness: bool
    failure_witness: Monomial | None = None
    failure_coverage: int | None = None

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "stanley_report",
            "is_valid_decomposition": self.is_valid_decomposition,
            "sdepth_of_decomposition": self.sdepth_of_decomposition,
            "depth": self.depth,
            "is_stanley_witness": self.is_stanley_witness,
            "failure_witness": None if self.failure_witness is None else list(self.failure_witness),
            "failure_coverage": self.failure_coverage,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def stanley_from_filtration(F: PrimeFiltration) -> StanleyDecomposition:
    """One piece u_j K[x_k : x_k not in P_j] per filtration step."""
    report = verify_filtration(F)
    if not report.valid:
        raise PreconditionError(f"invalid filtration, step {report.failure[0]}: {report.failure[1]}")
    everything = frozenset(range(F.n))
    pieces = tuple(StanleyPiece(s.u, everything - s.prime.variables) for s in F.steps)
    return StanleyDecomposition(F.base, pieces)


def sdepth_of_decomposition(D: StanleyDecomposition) -> int:
    """Smallest piece dimension; n for the empty decomposition of S/S."""
    return min((p.dim for p in D.pieces), default=D.n)


def clamp_bounds(I: MonomialIdeal, monomials=()) -> list[int]:
    """D_k = 1 + the largest exponent of x_k among the generators and extra monomials."""
    bound = list(I.max_exponents())
    for m in monomials:
        bound = [max(a, b) for a, b in zip(bound, m)]
    return [b + 1 for b in bound]


def _box(bounds: list[int]) -> np.ndarray:
    return np.array(list(itertools.product(*(range(d + 1) for d in bounds))), dtype=np.int32)


def _in_ideal(cells: np.ndarray, I: MonomialIdeal) -> np.ndarray:
    if not I.gens:
        return np.zeros(len(cells), dtype=bool)
    G = np.array(I.gens, dtype=np.int32)
    return (cells[:, None, :] >= G[None, :, :]).all(-1).any(-1)


def _piece_cover(cells: np.ndarray, u: Monomial, Z: frozenset[int]) -> np.ndarray:
    hit = np.ones(len(cells), dtype=bool)
    for k, e in enumerate(u):
        hit &= cells[:, k] >= e if k in Z else cells[:, k] == e
    return hit


def coverage_counts(D: StanleyDecomposition) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Clamped box cells, their membership in I and how many pieces cover each."""
    bounds = clamp_bounds(D.ideal, [p.u for p in D.pieces])
    cells = _box(bounds)
    counts = np.zeros(len(cells), dtype=np.int64)
    for p in D.pieces:
        counts += _piece_cover(cells, p.u, p.Z)
    return cells, _in_ideal(cells, D.ideal), counts


def verify_stanley(D: StanleyDecomposition, depth: int | None = None) -> StanleyReport:
    """Exhaustive direct-sum check of D over the clamped box.

    Standard monomials must be covered once and monomials of I never; the
    first offending exponent vector (lex order) is reported as the witness.
    """
    for p in D.pieces:
        if len(p.u) != D.n or any(not 0 <= k < D.n for k in p.Z):
            raise ValueError(f"piece {p} does not live in {D.n} variables")
    cells, in_I, counts = coverage_counts(D)
    bad = np.nonzero(np.where(in_I, counts != 0, counts != 1))[0]
    if depth is None:
        depth = depth_report(D.ideal).depth
    sdepth = sdepth_of_decomposition(D)
    if len(bad):
        b = tuple(int(e) for e in cells[bad[0]])
        return StanleyReport(False, sdepth, depth, False, b, int(counts[bad[0]]))
    return StanleyReport(True, sdepth, depth, sdepth >= depth)


def stanley_certificate_height2(I: MonomialIdeal) -> tuple[StanleyDecomposition, StanleyReport]:
    """Stanley decomposition for I in n <= 5 variables with all associated primes of height 2."""
    if I.n > 5 or not _all_height_two(I):
        raise PreconditionError(f"need n <= 5 and all associated primes of height 2: {format_ideal(I)}")
    D = stanley_from_filtration(height2_stanley_filtration(I))
    return D, verify_stanley(D)


def stanley_certificate_n4(I: MonomialIdeal) -> tuple[StanleyDecomposition, StanleyReport]:
    D = stanley_from_filtration(theorem_main_filtration(I))
    return D, verify_stanley(D)


def stanley_certificate(I: MonomialIdeal) -> tuple[StanleyDecomposition, StanleyReport]:
    """Dispatch to the height-2 or four-variable pipeline, whichever applies."""
    if I.n <= 5 and I.is_proper_nonzero and _all_height_two(I):
        return stanley_certificate_height2(I)
    if I.n == 4:
        return stanley_certificate_n4(I)
    raise PreconditionError(f"no certificate pipeline for n={I.n} {format_ideal(I)}")


# ------------------------------------------------------------------ oracle


class _CoverSearch:
    """Exact cover of the standard cells by pieces (u, Z) with |Z| >= target.

    The lexicographically smallest uncovered cell is always the monomial u of
    the piece covering it, so branching is over Z only.
    """

    def __init__(self, I: MonomialIdeal, cell_budget: int, node_budget: int) -> None:
        n = I.n
        self.n = n
        bounds = clamp_bounds(I)
        size = int(np.prod([d + 1 for d in bounds]))
        if size > cell_budget:
            raise OracleBudgetExceeded(f"clamped box has {size} cells, budget {cell_budget}")
        cells = _box(bounds)
        standard = ~_in_ideal(cells, I)
        self.cells = [tuple(int(e) for e in c) for c in cells[standard]]
        index = {c: i for i, c in enumerate(self.cells)}
        self.full = (1 << len(self.cells)) - 1
        self.node_budget = node_budget
        self.nodes = 0
        # pieces[i] = [(|Z|, cover bitmask)] for pieces with u = cells[i]
        self.pieces: list[list[tuple[int, int]]] = []
        std_cells = cells[standard]
        for c in self.cells:
            opts = []
            for r in range(n + 1):
                for Z in itertools.combinations(range(n), r):
                    if any(c[k] == bounds[k] for k in range(n) if k not in Z):
                        continue  # the clamp cell stands for a whole tail
                    top = tuple(bounds[k] if k in Z else c[k] for k in range(n))
                    if top not in index:
                        continue
                    hit = np.nonzero(_piece_cover(std_cells, c, frozenset(Z)))[0]
                    opts.append((r, sum(1 << int(i) for i in hit)))
            opts.sort(key=lambda t: -t[0])
            self.pieces.append(opts)

    def feasible(self, target: int) -> bool:
        self.failed: set[int] = set()
        return self._dfs(self.full, target)

    def _dfs(self, uncovered: int, target: int) -> bool:
        if not uncovered:
            return True
        if uncovered in self.failed:
            return False
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise OracleBudgetExceeded(f"oracle node budget {self.node_budget} exhausted")
        i = (uncovered & -uncovered).bit_length() - 1
        for r, mask in self.pieces[i]:
            if r < target:
                break
            if mask & uncovered == mask and self._dfs(uncovered ^ mask, target):
                return True
        self.failed.add(uncovered)
        return False


def sdepth_oracle(
    I: MonomialIdeal,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    node_budget: int = DEFAULT_ORACLE_NODES,
) -> int:
    """Exact Stanley depth of S/I by exhaustive interval partition of the clamped box."""
    if I.n > 4:
        raise PreconditionError("sdepth_oracle is limited to n <= 4")
    if I.is_unit:
        return I.n
    if I.is_zero:
        return I.n
    search = _CoverSearch(I, cell_budget, node_budget)
    for target in range(dim_quotient(I), -1, -1):
        if search.feasible(target):
            return target
    raise ConstructionError("no partition found even with target 0", I, "sdepth_oracle")
