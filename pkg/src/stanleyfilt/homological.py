"""Depth and projective dimension of S/I from multigraded homology.

Two independent routes are provided:

* :func:`depth_report` reads Betti numbers off the upper Koszul simplicial
  complexes K^b(I) = {squarefree tau : x^(b - tau) in I}, using
  beta_{i,b}(I) = dim H~_{i-1}(K^b(I)) and pd(S/I) = pd(I) + 1.
* :func:`depth_taylor_oracle` tensors the Taylor resolution of S/I with the
  residue field; each multidegree strand is a small complex of generator
  subsets whose homology is Tor(S/I, K).

Ranks are taken over the rationals by exact integer elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .decomposition import dim_quotient
from .monomial import Monomial, MonomialIdeal, mono_lcm, one

MAX_TAYLOR_GENERATORS = 12


class TaylorOverflow(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplexSmall:
    """Simplicial complex on at most 8 vertices, faces as bitmasks.

    Only the facets are stored.  ``facets == ()`` is the void complex;
    ``facets == (0,)`` is the complex {empty face}.
    """

    vertices: frozenset[int]
    facets: tuple[int, ...]

    @classmethod
    def from_faces(cls, vertices: frozenset[int], faces: set[int]) -> SimplicialComplexSmall:
        facets = [f for f in faces if not any(g != f and g & f == f for g in faces)]
        return cls(frozenset(vertices), tuple(sorted(facets)))

    def faces(self) -> set[int]:
        out: set[int] = set()
        for f in self.facets:
            sub = f
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return out

    @property
    def is_void(self) -> bool:
        return not self.facets


def integer_rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as a list of {column: entry} rows."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = min(rows, key=len)
        rows.remove(pivot_row)
        col = min(pivot_row)
        p = pivot_row[col]
        rank += 1
        rest = []
        for r in rows:
            a = r.get(col)
            if a is None:
                rest.append(r)
                continue
            g = gcd(a, p)
            fr, fp = p // g, a // g
            new = {c: fr * v for c, v in r.items()}
            for c, v in pivot_row.items():
                w = new.get(c, 0) - fp * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                cg = 0
                for v in new.values():
                    cg = gcd(cg, v)
                if cg > 1:
                    new = {c: v // cg for c, v in new.items()}
                rest.append(new)
        rows = rest
    return rank


def _chain_homology(groups: dict[int, list], boundary) -> dict[int, int]:
    """Homology dimensions of a finite chain complex.

    ``groups[d]`` lists basis elements in degree d; ``boundary(x)`` returns
    {basis element of degree d-1: coefficient}.
    """
    index = {d: {x: i for i, x in enumerate(basis)} for d, basis in groups.items()}
    ranks: dict[int, int] = {}
    for d, basis in groups.items():
        lower = index.get(d - 1)
        if not basis or not lower:
            ranks[d] = 0
            continue
        rows = [{lower[y]: c for y, c in boundary(x).items() if c} for x in basis]
        ranks[d] = integer_rank(rows)
    return {
        d: len(basis) - ranks[d] - ranks.get(d + 1, 0) for d, basis in groups.items()
    }


def _sign(mask: int, bit: int) -> int:
    return -1 if bin(mask & ((1 << bit) - 1)).count("1") % 2 else 1


def reduced_homology_ranks(K: SimplicialComplexSmall) -> list[int]:
    """Ranks of reduced homology over Q, list index i holds H~_{i-1}.

    The void complex gives [0]; the complex {empty face} gives [1].
    """
    if K.is_void:
        return [0]
    faces = K.faces()
    top = max(bin(f).count("1") for f in faces) - 1
    groups = {d: sorted(f for f in faces if bin(f).count("1") == d + 1) for d in range(-1, top + 1)}

    def boundary(f: int) -> dict[int, int]:
        out = {}
        b = f
        while b:
            low = b & -b
            out[f ^ low] = _sign(f, low.bit_length() - 1)
            b ^= low
        return out

    h = _chain_homology(groups, boundary)
    return [h[d] for d in range(-1, top + 1)]


def upper_koszul_complex(I: MonomialIdeal, b: Monomial) -> SimplicialComplexSmall:
    """Faces are squarefree tau with tau <= b and x^(b - tau) in I."""
    supp = [k for k, e in enumerate(b) if e > 0]
    faces = set()
    for r in range(len(supp) + 1):
        for tau in combinations(supp, r):
            m = list(b)
            for k in tau:
                m[k] -= 1
            if tuple(m) in I:
                faces.add(sum(1 << k for k in tau))
    return SimplicialComplexSmall.from_faces(frozenset(supp), faces)


@dataclass(frozen=True)
class DepthReport:
    depth: int
    projective_dimension: int
    dim_quotient: int
    is_cohen_macaulay: bool
    witness_degree: Monomial

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "projective_dimension": self.projective_dimension,
            "dim_quotient": self.dim_quotient,
            "is_cohen_macaulay": self.is_cohen_macaulay,
            "witness_degree": list(self.witness_degree),
        }


def lcm_lattice(gens: tuple[Monomial, ...]) -> set[Monomial]:
    """Distinct lcms of nonempty subsets of ``gens``."""
    out: set[Monomial] = set()
    for g in gens:
        out |= {mono_lcm(g, m) for m in out}
        out.add(g)
    return out


def _degenerate(I: MonomialIdeal) -> DepthReport | None:
    # S/0 = S is free; S/S = 0 follows the sdepth = n convention.
    if I.is_zero or I.is_unit:
        return DepthReport(I.n, 0, I.n, True, one(I.n))
    return None


def _report(I: MonomialIdeal, pd: int, witness: Monomial) -> DepthReport:
    depth = I.n - pd
    dim = dim_quotient(I)
    return DepthReport(depth, pd, dim, depth == dim, witness)


def depth_report(I: MonomialIdeal) -> DepthReport:
    degenerate = _degenerate(I)
    if degenerate is not None:
        return degenerate
    best, witness = -1, one(I.n)
    for b in sorted(lcm_lattice(I.gens)):
        ranks = reduced_homology_ranks(upper_koszul_complex(I, b))
        nonzero = [i for i, r in enumerate(ranks) if r]
        if nonzero and nonzero[-1] > best:
            best, witness = nonzero[-1], b
    # ranks[i] is H~_{i-1}, i.e. beta_{i,b}(I)
    return _report(I, best + 1, witness)


def depth_taylor_oracle(I: MonomialIdeal) -> DepthReport:
    degenerate = _degenerate(I)
    if degenerate is not None:
        return degenerate
    gens = I.gens
    if len(gens) > MAX_TAYLOR_GENERATORS:
        raise TaylorOverflow(f"{len(gens)} generators exceed the Taylor oracle limit {MAX_TAYLOR_GENERATORS}")
    lcm_of = {0: one(I.n)}
    for mask in range(1, 1 << len(gens)):
        low = mask & -mask
        lcm_of[mask] = mono_lcm(lcm_of[mask ^ low], gens[low.bit_length() - 1])
    strands: dict[Monomial, dict[int, list[int]]] = {}
    for mask, b in lcm_of.items():
        strands.setdefault(b, {}).setdefault(bin(mask).count("1"), []).append(mask)

    best, witness = 0, one(I.n)
    for b in sorted(strands):
        strand = strands[b]
        groups = {d: strand.get(d, []) for d in range(0, max(strand) + 1)}

        def boundary(mask: int, b=b) -> dict[int, int]:
            out = {}
            pos = 0
            for j in range(len(gens)):
                if mask >> j & 1:
                    face = mask ^ (1 << j)
                    if lcm_of[face] == b:
                        out[face] = -1 if pos % 2 else 1
                    pos += 1
            return out

        h = _chain_homology(groups, boundary)
        tor = [d for d, r in h.items() if r]
        if tor and max(tor) > best:
            best, witness = max(tor), b
    return _report(I, best, witness)
