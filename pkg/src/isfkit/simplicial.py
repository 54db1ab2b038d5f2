"""Pure simplicial complexes: cage-free spanning subcomplexes, their
generating function, upper links, and the simplicial notion of a perfect
elimination ordering.

A pure d-complex is stored by its facets ((d+1)-subsets of {1..n}); a
spanning subcomplex keeps a subset of the facets and implicitly all faces
of lower dimension.  Facets are grouped into blocks indexed by (peak,
largest vertex); a subcomplex is cage-free exactly when it keeps at most
one facet per block, which is what makes the generating function factor.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BudgetExceededError, InputError, InternalCheckError
from . import graphcore
from .graphcore import Graph, counts_to_polynomial
from .polycore import (
    IntPolynomial,
    WeightedGF,
    poly_from_linear_factors,
    product_of_weighted_factors,
)
from .report import Report

__all__ = [
    "PureComplex",
    "SpanningSubcomplex",
    "PhiPartition",
    "phi_partition",
    "caged_ridges",
    "is_cage_free",
    "cage_free_subcomplexes",
    "enumerate_cage_free",
    "cf_polynomial",
    "upper_link",
    "upper_links",
    "verify_product_formula",
    "is_simplicial_peo",
    "top_homology_rank",
    "has_leaf",
    "is_shifted",
    "structure_report",
    "full_subcomplex",
]

Face = tuple[int, ...]


class PureComplex:
    """A pure d-dimensional simplicial complex on {1..n}, stored by facets."""

    __slots__ = ("n", "d", "facets")

    def __init__(self, n: int, d: int, facets: Iterable[Sequence[int]] = ()):
        n, d = int(n), int(d)
        if d < 1:
            raise InputError("complex dimension must be at least 1")
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        clean = set()
        for f in facets:
            face = tuple(sorted(int(v) for v in f))
            if len(face) != d + 1 or len(set(face)) != d + 1:
                raise InputError(f"facet {f} must have {d + 1} distinct vertices")
            if face[0] < 1 or face[-1] > n:
                raise InputError(f"facet {f} out of range for n={n}")
            clean.add(face)
        self.n = n
        self.d = d
        self.facets = frozenset(clean)

    def faces(self) -> set[Face]:
        """Downward closure of the facets, excluding the empty face."""
        out: set[Face] = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return out

    def peaks(self) -> list[Face]:
        """The (d-2)-dimensional faces; for d=1 this is the empty face."""
        if self.d == 1:
            return [()]
        return sorted(
            {sub for f in self.facets
             for sub in itertools.combinations(f, self.d - 1)}
        )

    def ridges(self) -> list[Face]:
        return sorted(
            {sub for f in self.facets
             for sub in itertools.combinations(f, self.d)}
        )

    def relabeled(self, perm: Sequence[int]) -> "PureComplex":
        """Apply the vertex relabeling v -> perm[v-1]."""
        perm = [int(v) for v in perm]
        if sorted(perm) != list(range(1, self.n + 1)):
            raise InputError(f"expected a permutation of 1..{self.n}")
        return PureComplex(
            self.n, self.d,
            (tuple(perm[v - 1] for v in f) for f in self.facets),
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "facets": [list(f) for f in sorted(self.facets)],
        }

    @classmethod
    def from_json(cls, data) -> "PureComplex":
        if not isinstance(data, dict) or not {"n", "d", "facets"} <= set(data):
            raise InputError(
                'complex JSON must be {"n": int, "d": int, "facets": [[...],...]}'
            )
        return cls(data["n"], data["d"], data["facets"])

    def __eq__(self, other):
        if not isinstance(other, PureComplex):
            return NotImplemented
        return (self.n, self.d, self.facets) == (other.n, other.d, other.facets)

    def __hash__(self):
        return hash((self.n, self.d, self.facets))

    def __repr__(self):
        return f"PureComplex(n={self.n}, d={self.d}, facets={sorted(self.facets)})"


class SpanningSubcomplex:
    """A spanning subcomplex: a facet subset plus every lower face of the parent."""

    __slots__ = ("parent", "kept_facets")

    def __init__(self, parent: PureComplex, kept_facets: Iterable[Sequence[int]]):
        kept = frozenset(tuple(sorted(int(v) for v in f)) for f in kept_facets)
        if not kept <= parent.facets:
            raise InputError("kept facets must be facets of the parent complex")
        self.parent = parent
        self.kept_facets = kept

    def faces(self) -> set[Face]:
        """All faces: lower-dimensional parent faces plus kept facets' closures."""
        out = {f for f in self.parent.faces() if len(f) <= self.parent.d}
        for f in self.kept_facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return out

    def __repr__(self):
        return (
            f"SpanningSubcomplex({sorted(self.kept_facets)} "
            f"of n={self.parent.n}, d={self.parent.d})"
        )


def full_subcomplex(delta: PureComplex) -> SpanningSubcomplex:
    return SpanningSubcomplex(delta, delta.facets)


@dataclass(frozen=True)
class PhiPartition:
    """Facets grouped by (peak, largest vertex); N is the block count."""

    blocks: dict[tuple[Face, int], frozenset[Face]]

    @property
    def N(self) -> int:
        return len(self.blocks)


def _facet_block(facet: Face) -> tuple[Face, int]:
    return facet[:-2], facet[-1]


def phi_partition(delta: PureComplex) -> PhiPartition:
    """Group each facet by its d-1 smallest vertices and its largest vertex."""
    blocks: dict[tuple[Face, int], set[Face]] = defaultdict(set)
    for f in delta.facets:
        blocks[_facet_block(f)].add(f)
    return PhiPartition({k: frozenset(v) for k, v in blocks.items()})


# ---------------------------------------------------------------------------
# Caged ridges and cage-free subcomplexes
# ---------------------------------------------------------------------------


def _caged_by_blocks(kept: frozenset[Face]) -> set[Face]:
    counts: Counter = Counter(_facet_block(f) for f in kept)
    return {sigma + (k,) for (sigma, k), c in counts.items() if c >= 2}


def _caged_by_pair_scan(kept: frozenset[Face]) -> set[Face]:
    out: set[Face] = set()
    for f1, f2 in itertools.combinations(sorted(kept), 2):
        shared = tuple(sorted(set(f1) & set(f2)))
        if len(shared) != len(f1) - 1:
            continue
        k = shared[-1]
        sigma = shared[:-1]
        (i,) = set(f1) - set(shared)
        (j,) = set(f2) - set(shared)
        bound = sigma[-1] if sigma else 0
        if bound < i < k and bound < j < k:
            out.add(shared)
    return out


def caged_ridges(upsilon: SpanningSubcomplex) -> frozenset[Face]:
    """Ridges trapped between two kept facets of the same block.

    Computed both from block multiplicities and by scanning facet pairs
    against the defining condition; the two answers must coincide.
    """
    by_blocks = _caged_by_blocks(upsilon.kept_facets)
    by_pairs = _caged_by_pair_scan(upsilon.kept_facets)
    if by_blocks != by_pairs:
        raise InternalCheckError(
            f"caged-ridge criteria disagree: {by_blocks} vs {by_pairs}"
        )
    return frozenset(by_blocks)


def is_cage_free(upsilon: SpanningSubcomplex) -> bool:
    return not caged_ridges(upsilon)


def cage_free_subcomplexes(delta: PureComplex) -> list[SpanningSubcomplex]:
    """Every cage-free spanning subcomplex: at most one facet per block."""
    partition = phi_partition(delta)
    options = [
        [None, *sorted(block)] for _, block in sorted(partition.blocks.items())
    ]
    out = []
    for choice in itertools.product(*options):
        kept = frozenset(f for f in choice if f is not None)
        out.append(SpanningSubcomplex(delta, kept))
    return out


def enumerate_cage_free(delta: PureComplex, budget: int = 22) -> dict[int, int]:
    """Counts of cage-free subcomplexes by facet count, by facet-subset sweep."""
    facets = sorted(delta.facets)
    q = len(facets)
    if q > budget:
        raise BudgetExceededError(f"{q} facets exceeds the sweep budget {budget}")
    block_masks: dict[tuple[Face, int], int] = defaultdict(int)
    for idx, f in enumerate(facets):
        block_masks[_facet_block(f)] |= 1 << idx
    subsets = np.arange(1 << q, dtype=np.uint64)
    ok = np.ones(subsets.shape, dtype=bool)
    for mask in block_masks.values():
        hits = subsets & np.uint64(mask)
        ok &= (hits & (hits - np.uint64(1))) == 0
    sizes = np.bitwise_count(subsets[ok])
    counts = Counter(int(s) for s in sizes)
    return dict(sorted(counts.items()))


def cf_polynomial(
    delta: PureComplex, weights: Mapping[Face, object] | None = None
) -> IntPolynomial | WeightedGF:
    """The factored cage-free generating function, one linear factor per block."""
    partition = phi_partition(delta)
    blocks = [block for _, block in sorted(partition.blocks.items())]
    if weights is None:
        return poly_from_linear_factors([len(b) for b in blocks])
    return product_of_weighted_factors(
        WeightedGF.t_plus_vars(weights[f] for f in sorted(block))
        for block in blocks
    )


# ---------------------------------------------------------------------------
# Upper links and the product formula
# ---------------------------------------------------------------------------


def upper_link(delta: PureComplex, sigma: Sequence[int]) -> Graph:
    """The graph whose edge ij records the facet obtained by appending i < j."""
    sigma = tuple(sorted(int(v) for v in sigma))
    bound = sigma[-1] if sigma else 0
    edges = set()
    for f in delta.facets:
        if set(sigma) <= set(f):
            i, j = sorted(set(f) - set(sigma))
            if bound < i:
                edges.add((i, j))
    return Graph(delta.n, edges)


def upper_links(delta: PureComplex) -> tuple[dict[Face, Graph], list[Face]]:
    """Upper links of every peak, plus the list of effective peaks."""
    links = {sigma: upper_link(delta, sigma) for sigma in delta.peaks()}
    effective = [sigma for sigma, g in sorted(links.items()) if g.edges]
    return links, effective


def verify_product_formula(delta: PureComplex, budget: int = 22) -> Report:
    """Check the factorization and upper-link product identities on one complex."""
    report = Report()
    partition = phi_partition(delta)
    factored = cf_polynomial(delta)
    counts = enumerate_cage_free(delta, budget=budget)
    enum_poly = counts_to_polynomial(counts, partition.N)
    report.check("cf_factorization_vs_enumeration", factored, enum_poly,
                 expect_equal=True)

    links, effective = upper_links(delta)
    s = len(effective)
    isf_product = IntPolynomial.one()
    for sigma in effective:
        isf_product = isf_product * graphcore.isf_polynomial(links[sigma])
    # CF has degree N and the product degree n*s; shift CF up by the gap
    shift = delta.n * s - partition.N
    if shift < 0:
        raise InternalCheckError("block count exceeded total upper-link degree")
    report.check(
        "cf_times_t_gap_vs_isf_product",
        factored.shifted(shift),
        isf_product,
        expect_equal=True,
    )

    cf_total = sum(counts.values())
    isf_total = 1
    for sigma in effective:
        isf_total *= len(graphcore.isf_set_list(links[sigma], budget=budget))
    report.check("cage_free_count_vs_isf_count_product", cf_total, isf_total,
                 expect_equal=True)

    speo = is_simplicial_peo(delta)
    report.fact("natural_labeling_is_peo", speo)
    ao_product = 1
    for sigma in effective:
        ao_product *= graphcore.acyclic_orientation_count(links[sigma])
    report.fact("cf_at_most_ao_product", cf_total <= ao_product, required=True)
    report.fact("cf_equals_ao_product_iff_peo", (cf_total == ao_product) == speo,
                required=True)
    report.witnesses["cage_free_count"] = cf_total
    report.witnesses["ao_product"] = ao_product
    report.witnesses["effective_peaks"] = [list(p) for p in effective]
    return report


# ---------------------------------------------------------------------------
# Simplicial perfect elimination orderings
# ---------------------------------------------------------------------------


def is_simplicial_peo(
    delta: PureComplex, labeling: Sequence[int] | None = None
) -> bool:
    """Whether the (relabeled) complex closes every block pair.

    The defining condition: facets built from a peak by appending i,k and
    j,k force the facet appending i,j.  This is checked directly and also
    via the equivalent statement that every upper link is PEO-ordered by
    the natural labels; the routes must agree.
    """
    complex_ = delta if labeling is None else delta.relabeled(labeling)
    partition = phi_partition(complex_)
    direct = True
    for (sigma, _), block in partition.blocks.items():
        tops = sorted(f[-2] for f in block)
        for i, j in itertools.combinations(tops, 2):
            if tuple(sorted(sigma + (i, j))) not in complex_.facets:
                direct = False
                break
        if not direct:
            break
    links, _ = upper_links(complex_)
    via_links = all(
        graphcore.is_peo(g, range(1, complex_.n + 1)) for g in links.values()
    )
    if direct != via_links:
        raise InternalCheckError(
            "simplicial PEO criteria disagree "
            f"(direct={direct}, links={via_links})"
        )
    return direct


# ---------------------------------------------------------------------------
# Structure of spanning subcomplexes
# ---------------------------------------------------------------------------


def _rational_rank(rows: list[list[int]]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, len(mat)) if mat[r][col] != 0), None
        )
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def top_homology_rank(upsilon: SpanningSubcomplex) -> int:
    """Rank of the kernel of the top boundary map, over the rationals.

    The top homology group embeds in a free abelian group, so it is
    torsion-free and its integral rank equals this rational one.
    """
    kept = sorted(upsilon.kept_facets)
    if not kept:
        return 0
    ridge_index: dict[Face, int] = {}
    for f in kept:
        for i in range(len(f)):
            ridge = f[:i] + f[i + 1:]
            ridge_index.setdefault(ridge, len(ridge_index))
    matrix = [[0] * len(kept) for _ in range(len(ridge_index))]
    for col, f in enumerate(kept):
        for i in range(len(f)):
            ridge = f[:i] + f[i + 1:]
            matrix[ridge_index[ridge]][col] = (-1) ** i
    return len(kept) - _rational_rank(matrix)


def has_leaf(upsilon: SpanningSubcomplex) -> bool:
    """Whether some ridge lies in exactly one kept facet."""
    counts: Counter = Counter()
    for f in upsilon.kept_facets:
        for i in range(len(f)):
            counts[f[:i] + f[i + 1:]] += 1
    return any(c == 1 for c in counts.values())


def is_shifted(obj: PureComplex | SpanningSubcomplex) -> bool:
    """Exchange condition: swapping any vertex for a smaller one stays a face."""
    if isinstance(obj, PureComplex):
        faces = obj.faces()
        n = obj.n
    else:
        faces = obj.faces()
        n = obj.parent.n
    for face in faces:
        members = set(face)
        for k in face:
            for j in range(1, k):
                if j in members:
                    continue
                swapped = tuple(sorted(members - {k} | {j}))
                if swapped not in faces:
                    return False
    return True


def _link_graph(upsilon: SpanningSubcomplex, sigma: Face) -> Graph:
    sig = set(sigma)
    edges = set()
    for f in upsilon.kept_facets:
        if sig <= set(f):
            rest = sorted(set(f) - sig)
            if len(rest) == 2:
                edges.add((rest[0], rest[1]))
    return Graph(upsilon.parent.n, edges)


def structure_report(upsilon: SpanningSubcomplex) -> dict:
    """Topological and order-theoretic facts about one spanning subcomplex."""
    peaks = upsilon.parent.peaks()
    lex_min = min(peaks) if peaks else None
    link_peo = None
    if lex_min is not None:
        link_peo = graphcore.find_peo(_link_graph(upsilon, lex_min))
    return {
        "top_homology_rank": top_homology_rank(upsilon),
        "has_leaf": has_leaf(upsilon),
        "is_shifted": is_shifted(upsilon),
        "lex_min_peak": list(lex_min) if lex_min is not None else None,
        "lex_min_peak_link_chordal": link_peo is not None,
        "link_peo_witness": link_peo,
    }
