"""Labeled multigraphs, their hyperplane arrangements over exact Gaussian
rationals, intersection lattices, characteristic polynomials, perfect
labelings, lattice NBC theory, signed-graph coloring, and supersolvability.

Subspaces are represented canonically by the reduced row-echelon form of a
spanning set of hyperplane normals; two subspaces are equal exactly when
their echelon forms are equal, which keeps all lattice computations exact.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InputError, InternalCheckError
from .polycore import IntPolynomial, poly_from_linear_factors
from .report import Report

__all__ = [
    "GaussRational",
    "LabeledMultigraph",
    "Arrangement",
    "IntersectionLattice",
    "build_arrangement",
    "intersection_lattice",
    "characteristic_polynomial",
    "edge_partition",
    "multigraph_isf_polynomial",
    "is_perfectly_labeled",
    "PerfectLabelingResult",
    "prefix_multichain",
    "atom_blocks",
    "block_compatible_atom_order",
    "lattice_nbc_sets",
    "lattice_nbc",
    "atomic_transversal_sets",
    "atomic_transversals",
    "verify_isf_chi",
    "topology_report",
    "region_count_deletion_restriction",
    "signed_chromatic_count",
    "is_supersolvable",
]


class GaussRational:
    """An exact Gaussian rational a + b*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return f"GaussRational({self.re})"
        return f"GaussRational({self.re}, {self.im})"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, data) -> "GaussRational":
        if not isinstance(data, dict) or "re" not in data:
            raise InputError('labels must be {"re": "p/q", "im": "r/s"}')
        try:
            return cls(Fraction(str(data["re"])), Fraction(str(data.get("im", 0))))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational component: {exc}") from exc


def _coerce(value) -> GaussRational:
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRational(value)
    raise TypeError(f"cannot treat {value!r} as a Gaussian rational")


GR_ZERO = GaussRational(0)
GR_ONE = GaussRational(1)


# ---------------------------------------------------------------------------
# Labeled multigraphs
# ---------------------------------------------------------------------------

# An edge token is (0, k, None) for the plain edge 0--k, or (i, j, label)
# with 1 <= i < j <= n for a labeled edge.
EdgeToken = tuple[int, int, GaussRational | None]


class LabeledMultigraph:
    """A multigraph on {0..n}: optional plain edges from 0, labeled edges between
    nonzero vertices (nonzero Gaussian-rational labels, parallels allowed)."""

    __slots__ = ("n", "zero_edges", "labeled_edges")

    def __init__(
        self,
        n: int,
        zero_edges: Iterable[int] = (),
        labeled_edges: Iterable[tuple[int, int, object]] = (),
    ):
        n = int(n)
        if n < 1:
            raise InputError("multigraph needs at least one nonzero vertex")
        zset = set()
        for k in zero_edges:
            k = int(k)
            if not 1 <= k <= n:
                raise InputError(f"zero-edge endpoint {k} out of range")
            zset.add(k)
        lset = set()
        for i, j, label in labeled_edges:
            i, j = int(i), int(j)
            label = _coerce(label) if not isinstance(label, GaussRational) else label
            if not 1 <= i < j <= n:
                raise InputError(f"labeled edge ({i},{j}) out of range")
            if not label:
                raise InputError(f"edge ({i},{j}) has zero label")
            if (i, j, label) in lset:
                raise InputError(f"duplicate edge ({i},{j}) with equal label")
            lset.add((i, j, label))
        self.n = n
        self.zero_edges = frozenset(zset)
        self.labeled_edges = frozenset(lset)

    def edge_list(self) -> list[EdgeToken]:
        """All edges in a canonical deterministic order."""
        out: list[EdgeToken] = [(0, k, None) for k in sorted(self.zero_edges)]
        out.extend(
            sorted(self.labeled_edges, key=lambda e: (e[0], e[1], e[2].sort_key()))
        )
        return out

    def is_real(self) -> bool:
        return all(z.is_real() for _, _, z in self.labeled_edges)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "zero_edges": sorted(self.zero_edges),
            "edges": [
                [i, j, z.to_json()]
                for i, j, z in sorted(
                    self.labeled_edges, key=lambda e: (e[0], e[1], e[2].sort_key())
                )
            ],
        }

    @classmethod
    def from_json(cls, data) -> "LabeledMultigraph":
        if not isinstance(data, dict) or not {"n", "zero_edges", "edges"} <= set(data):
            raise InputError(
                'multigraph JSON must be {"n", "zero_edges", "edges"}'
            )
        edges = []
        for e in data["edges"]:
            if not isinstance(e, (list, tuple)) or len(e) != 3:
                raise InputError("multigraph edges must be [i, j, label]")
            edges.append((e[0], e[1], GaussRational.from_json(e[2])))
        return cls(data["n"], data["zero_edges"], edges)

    def __repr__(self):
        return (
            f"LabeledMultigraph(n={self.n}, zero_edges={sorted(self.zero_edges)}, "
            f"labeled_edges={self.edge_list()[len(self.zero_edges):]})"
        )


def edge_partition(G: LabeledMultigraph) -> dict[int, list[EdgeToken]]:
    """Edges grouped by larger nonzero endpoint; the 0--k edge joins group k."""
    blocks: dict[int, list[EdgeToken]] = {k: [] for k in range(1, G.n + 1)}
    for e in G.edge_list():
        blocks[e[1]].append(e)
    return blocks


def multigraph_isf_polynomial(
    G: LabeledMultigraph, cross_check_budget: int = 16
) -> IntPolynomial:
    """The factored ISF generating function prod_k (t + |E_k|).

    Within the budget, every edge subset is swept and classified by the
    no-two-edges-into-a-vertex-from-below criterion (parallel edges count
    as a cycle); disagreement with the factored form is a library bug.
    """
    blocks = edge_partition(G)
    factored = poly_from_linear_factors(
        [len(blocks[k]) for k in range(1, G.n + 1)]
    )
    edges = G.edge_list()
    if len(edges) <= cross_check_budget:
        tops = [e[1] for e in edges]
        counts: Counter = Counter()
        for bits in range(1 << len(edges)):
            seen = set()
            ok = True
            size = 0
            for idx, top in enumerate(tops):
                if bits >> idx & 1:
                    if top in seen:
                        ok = False
                        break
                    seen.add(top)
                    size += 1
            if ok:
                counts[size] += 1
        enum = IntPolynomial()
        for m, c in counts.items():
            enum = enum + IntPolynomial.monomial(G.n - m, c)
        if enum != factored:
            raise InternalCheckError(
                f"multigraph ISF enumeration {enum!r} != factored {factored!r}"
            )
    return factored


@dataclass(frozen=True)
class PerfectLabelingResult:
    ok: bool
    failed_condition: int | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_perfectly_labeled(G: LabeledMultigraph) -> PerfectLabelingResult:
    """Check the three closure conditions; return the first violation found.

    (1) edges i-k and j-k (i<j<k) force an i-j edge labeled by the quotient;
    (2) parallel edges at j-k force the plain edge 0-j;
    (3) a j-k edge together with 0-k forces 0-j.
    """
    by_pair: dict[tuple[int, int], list[GaussRational]] = defaultdict(list)
    for i, j, z in sorted(
        G.labeled_edges, key=lambda e: (e[0], e[1], e[2].sort_key())
    ):
        by_pair[(i, j)].append(z)
    by_top: dict[int, list[tuple[int, GaussRational]]] = defaultdict(list)
    for (i, j), labels in sorted(by_pair.items()):
        for z in labels:
            by_top[j].append((i, z))

    for k in sorted(by_top):
        for (i, alpha), (j, beta) in itertools.combinations(by_top[k], 2):
            if i == j:
                continue
            if i > j:
                (i, alpha), (j, beta) = (j, beta), (i, alpha)
            needed = alpha / beta
            if needed not in by_pair.get((i, j), ()):
                return PerfectLabelingResult(False, 1, (i, j, k, alpha, beta))
    for (j, k), labels in sorted(by_pair.items()):
        if len(labels) >= 2 and j not in G.zero_edges:
            return PerfectLabelingResult(False, 2, (j, k))
    for (j, k), labels in sorted(by_pair.items()):
        if k in G.zero_edges and j not in G.zero_edges:
            return PerfectLabelingResult(False, 3, (j, k))
    return PerfectLabelingResult(True)


# ---------------------------------------------------------------------------
# Arrangements and exact linear algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arrangement:
    """Central hyperplane arrangement given by one normal vector per hyperplane."""

    dim: int
    normals: tuple[tuple[GaussRational, ...], ...]
    real_flag: bool


def build_arrangement(G: LabeledMultigraph) -> Arrangement:
    """One hyperplane per edge: x_i = label * x_j for i-j, x_k = 0 for 0-k."""
    normals = []
    for i, j, z in G.edge_list():
        vec = [GR_ZERO] * G.n
        if i == 0:
            vec[j - 1] = GR_ONE
        else:
            vec[i - 1] = GR_ONE
            vec[j - 1] = -z
        normals.append(tuple(vec))
    return Arrangement(G.n, tuple(normals), G.is_real())


def _rref(rows: Iterable[Sequence[GaussRational]]) -> tuple:
    """Reduced row-echelon form with unit pivots and no zero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        scale = mat[rank][col]
        mat[rank] = [x / scale for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return tuple(tuple(row) for row in mat[:rank])


def _reduce_against(vec: Sequence[GaussRational], form: tuple) -> list:
    v = list(vec)
    for row in form:
        pivot = next(i for i, x in enumerate(row) if x)
        if v[pivot]:
            c = v[pivot]
            v = [a - c * b for a, b in zip(v, row)]
    return v


def _rowspace_contains(form: tuple, vec: Sequence[GaussRational]) -> bool:
    return not any(_reduce_against(vec, form))


def _form_sort_key(form: tuple):
    return (len(form), tuple(x.sort_key() for row in form for x in row))


class IntersectionLattice:
    """The lattice of intersections of a central arrangement.

    Elements are canonical echelon forms of normal spans, ordered by
    row-space inclusion; the bottom is the ambient space (empty form).
    """

    def __init__(self, dim: int, forms: list[tuple], atom_forms: list[tuple]):
        order = sorted(range(len(forms)), key=lambda i: _form_sort_key(forms[i]))
        self.dim = dim
        self.forms = [forms[i] for i in order]
        self.index = {f: i for i, f in enumerate(self.forms)}
        self.rank = [len(f) for f in self.forms]
        self.bottom = self.index[()]
        self.atoms = [self.index[f] for f in atom_forms]
        self.size = len(self.forms)
        self._below: list[set[int]] = [
            {
                j
                for j in range(self.size)
                if j != i
                and self.rank[j] < self.rank[i]
                and all(_rowspace_contains(self.forms[i], row)
                        for row in self.forms[j])
            }
            for i in range(self.size)
        ]
        top_form = _rref([row for f in atom_forms for row in f])
        self.top = self.index[top_form]
        self.rho = self.rank[self.top]
        self.mobius = self._mobius()
        self._join_memo: dict[tuple[int, int], int] = {}

    def _mobius(self) -> list[int]:
        mob = [0] * self.size
        for i in sorted(range(self.size), key=self.rank.__getitem__):
            if i == self.bottom:
                mob[i] = 1
            else:
                mob[i] = -sum(mob[j] for j in self._below[i])
        return mob

    def leq(self, x: int, y: int) -> bool:
        return x == y or x in self._below[y]

    def join(self, x: int, y: int) -> int:
        if x > y:
            x, y = y, x
        key = (x, y)
        cached = self._join_memo.get(key)
        if cached is None:
            form = _rref(list(self.forms[x]) + list(self.forms[y]))
            cached = self.index[form]
            self._join_memo[key] = cached
        return cached

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def meet(self, x: int, y: int) -> int:
        lower = [
            z
            for z in range(self.size)
            if self.leq(z, x) and self.leq(z, y)
        ]
        best = max(lower, key=self.rank.__getitem__)
        if not all(self.leq(z, best) for z in lower):
            raise InternalCheckError("meet is not unique; order data corrupt")
        return best


def intersection_lattice(
    A: Arrangement, hyperplane_budget: int = 20, size_cap: int = 5000
) -> IntersectionLattice:
    """Close the atoms under pairwise join, deduplicating by echelon form."""
    if len(A.normals) > hyperplane_budget:
        raise BudgetExceededError(
            f"{len(A.normals)} hyperplanes exceeds budget {hyperplane_budget}"
        )
    if any(not any(row) for row in A.normals):
        raise InputError("hyperplane normals must be nonzero")
    atom_forms: list[tuple] = []
    for normal in A.normals:
        f = _rref([normal])
        if f not in atom_forms:
            atom_forms.append(f)
    forms: dict[tuple, None] = {(): None}
    for f in atom_forms:
        forms.setdefault(f, None)
    frontier = list(forms)
    while frontier:
        new: list[tuple] = []
        for x in frontier:
            for a in atom_forms:
                joined = _rref(list(x) + list(a))
                if joined not in forms:
                    forms[joined] = None
                    new.append(joined)
                    if len(forms) > size_cap:
                        raise BudgetExceededError(
                            f"intersection lattice exceeds {size_cap} elements"
                        )
        frontier = new
    return IntersectionLattice(A.dim, list(forms), atom_forms)


def characteristic_polynomial(L: IntersectionLattice) -> IntPolynomial:
    """chi(L, t) = sum over elements of mobius * t**(rank(L) - rank(x))."""
    out = IntPolynomial()
    for i in range(L.size):
        out = out + IntPolynomial.monomial(L.rho - L.rank[i], L.mobius[i])
    return out


# ---------------------------------------------------------------------------
# Multichains, blocks, transversals, lattice NBC sets
# ---------------------------------------------------------------------------


def prefix_multichain(G: LabeledMultigraph, L: IntersectionLattice) -> list[int]:
    """The multichain joining in the hyperplanes of E_1, then E_2, and so on."""
    edges = G.edge_list()
    if len(L.atoms) != len(edges):
        raise InternalCheckError("atoms do not correspond to edges one-to-one")
    atom_of_edge = dict(zip(edges, L.atoms))
    blocks = edge_partition(G)
    chain = [L.bottom]
    for k in range(1, G.n + 1):
        chain.append(L.join_all([chain[-1]] + [atom_of_edge[e] for e in blocks[k]]))
    if chain[-1] != L.top:
        raise InternalCheckError("prefix multichain does not reach the top")
    return chain


def atom_blocks(L: IntersectionLattice, multichain: Sequence[int]) -> list[list[int]]:
    """Partition the atoms: block i holds atoms below z_i but not below z_{i-1}."""
    out = []
    for prev, cur in zip(multichain, multichain[1:]):
        out.append(
            [a for a in L.atoms if L.leq(a, cur) and not L.leq(a, prev)]
        )
    return out


def block_compatible_atom_order(
    L: IntersectionLattice, blocks: Sequence[Sequence[int]]
) -> list[int]:
    order = [a for block in blocks for a in block]
    if sorted(order) != sorted(L.atoms):
        raise InternalCheckError("blocks do not partition the atom set")
    return order


def _lattice_circuits(L: IntersectionLattice, budget: int) -> list[frozenset[int]]:
    atoms = L.atoms
    if len(atoms) > budget:
        raise BudgetExceededError(
            f"{len(atoms)} atoms exceeds the circuit budget {budget}"
        )
    independent: set[frozenset[int]] = {frozenset()}
    circuits: list[frozenset[int]] = []
    for size in range(1, len(atoms) + 1):
        for combo in itertools.combinations(atoms, size):
            fs = frozenset(combo)
            if any(fs - {a} not in independent for a in fs):
                continue
            if L.rank[L.join_all(combo)] == size:
                independent.add(fs)
            else:
                circuits.append(fs)
    return circuits


def lattice_nbc_sets(
    L: IntersectionLattice,
    atom_order: Sequence[int] | None = None,
    budget: int = 14,
) -> list[frozenset[int]]:
    """All atom sets containing no broken circuit of the lattice's matroid."""
    order = list(atom_order) if atom_order is not None else list(L.atoms)
    if sorted(order) != sorted(L.atoms):
        raise InputError("atom order must be a permutation of the atoms")
    position = {a: i for i, a in enumerate(order)}
    blockers: dict[int, list[frozenset[int]]] = defaultdict(list)
    for circuit in _lattice_circuits(L, budget):
        smallest = min(circuit, key=position.__getitem__)
        broken = circuit - {smallest}
        top = max(broken, key=position.__getitem__)
        blockers[position[top]].append(broken - {top})
    out: list[frozenset[int]] = []

    def walk(current: frozenset[int], start: int):
        out.append(current)
        for idx in range(start, len(order)):
            if any(rest <= current for rest in blockers.get(idx, ())):
                continue
            walk(current | {order[idx]}, idx + 1)

    walk(frozenset(), 0)
    return out


def lattice_nbc(
    L: IntersectionLattice,
    atom_order: Sequence[int] | None = None,
    budget: int = 14,
) -> dict[int, int]:
    counts = Counter(len(s) for s in lattice_nbc_sets(L, atom_order, budget))
    return dict(sorted(counts.items()))


def atomic_transversal_sets(
    L: IntersectionLattice, multichain: Sequence[int]
) -> list[frozenset[int]]:
    """Atom sets meeting each multichain-induced block at most once."""
    blocks = atom_blocks(L, multichain)
    out = []
    for choice in itertools.product(*[[None, *block] for block in blocks]):
        out.append(frozenset(a for a in choice if a is not None))
    return out


def atomic_transversals(
    L: IntersectionLattice, multichain: Sequence[int]
) -> dict[int, int]:
    counts = Counter(len(s) for s in atomic_transversal_sets(L, multichain))
    return dict(sorted(counts.items()))


# ---------------------------------------------------------------------------
# The ISF / characteristic polynomial correspondence
# ---------------------------------------------------------------------------


def verify_isf_chi(
    G: LabeledMultigraph,
    hyperplane_budget: int = 20,
    atom_budget: int = 14,
) -> Report:
    """Check that the ISF polynomial matches the signed characteristic
    polynomial exactly when the labeling is perfect, along with the
    multichain factorization and the transversal/NBC facts."""
    report = Report()
    isf = multigraph_isf_polynomial(G)
    L = intersection_lattice(build_arrangement(G), hyperplane_budget)
    chi = characteristic_polynomial(L)
    perfect = is_perfectly_labeled(G)
    report.fact("perfectly_labeled", perfect.ok)
    if not perfect.ok:
        report.witnesses["perfect_labeling_violation"] = {
            "condition": perfect.failed_condition,
            "witness": [str(w) for w in perfect.witness],
        }
    report.fact("lattice_rank_equals_vertex_count", L.rho == G.n)
    report.witnesses["lattice_size"] = L.size

    signed_chi = ((-1) ** L.rho * chi.compose_neg()).shifted(G.n - L.rho)
    isf_matches = report.check("isf_vs_signed_characteristic", isf, signed_chi)
    report.fact("isf_chi_identity_iff_perfect", isf_matches == perfect.ok,
                required=True)

    chain = prefix_multichain(G, L)
    blocks = atom_blocks(L, chain)
    chain_product = IntPolynomial.one()
    for block in blocks:
        chain_product = chain_product * IntPolynomial((-len(block), 1))
    chain_matches = report.check(
        "chain_factorization_vs_chi", chi.shifted(G.n - L.rho), chain_product
    )
    report.fact("chain_factorization_iff_perfect", chain_matches == perfect.ok,
                required=True)

    order = block_compatible_atom_order(L, blocks)
    transversals = set(atomic_transversal_sets(L, chain))
    nbc = set(lattice_nbc_sets(L, order, atom_budget))
    report.fact("transversals_are_nbc", transversals <= nbc, required=True)
    trans_counts = Counter(len(s) for s in transversals)
    nbc_counts = Counter(len(s) for s in nbc)
    report.check(
        "transversal_counts_vs_isf_coefficients",
        dict(sorted(trans_counts.items())),
        {m: isf.coefficient(G.n - m) for m in range(G.n + 1)
         if isf.coefficient(G.n - m)},
        expect_equal=True,
    )
    all_m = sorted(set(trans_counts) | set(nbc_counts))
    report.fact(
        "isf_counts_at_most_nbc_counts",
        all(trans_counts.get(m, 0) <= nbc_counts.get(m, 0) for m in all_m),
        required=True,
    )
    counts_equal = all(
        trans_counts.get(m, 0) == nbc_counts.get(m, 0) for m in all_m
    )
    report.fact("isf_equals_nbc_iff_perfect", counts_equal == perfect.ok,
                required=True)

    rota = IntPolynomial()
    for m, c in nbc_counts.items():
        rota = rota + IntPolynomial.monomial(L.rho - m, (-1) ** m * c)
    report.check("rota_nbc_sum_vs_chi", rota, chi, expect_equal=True)

    supersolvable = is_supersolvable(L)
    report.fact("supersolvable", supersolvable)
    if perfect.ok:
        report.fact("perfect_implies_supersolvable", supersolvable, required=True)
    return report


# ---------------------------------------------------------------------------
# Topology of the complement
# ---------------------------------------------------------------------------


def _real_normals(A: Arrangement) -> list[tuple[Fraction, ...]]:
    if not A.real_flag:
        raise InputError("region counting requires all-real edge labels")
    return [tuple(x.re for x in row) for row in A.normals]


def _normalize_real(vec: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    lead = next((x for x in vec if x != 0), None)
    if lead is None:
        return None
    return tuple(x / lead for x in vec)


def region_count_deletion_restriction(A: Arrangement) -> int:
    """Regions of a real arrangement via r(A) = r(A - H) + r(A restricted to H)."""

    def rec(normals: list[tuple[Fraction, ...]], dim: int) -> int:
        seen: dict[tuple, None] = {}
        for v in normals:
            norm = _normalize_real(v)
            if norm is not None:
                seen.setdefault(norm, None)
        hs = list(seen)
        if not hs:
            return 1
        h = hs[-1]
        rest = hs[:-1]
        pivot = next(i for i, x in enumerate(h) if x != 0)
        basis = []
        for free in range(dim):
            if free == pivot:
                continue
            vec = [Fraction(0)] * dim
            vec[free] = Fraction(1)
            vec[pivot] = -h[free] / h[pivot]
            basis.append(tuple(vec))
        restricted = [
            tuple(sum(g[i] * b[i] for i in range(dim)) for b in basis)
            for g in rest
        ]
        return rec(rest, dim) + rec(restricted, dim - 1)

    return rec(_real_normals(A), A.dim)


def topology_report(
    G: LabeledMultigraph,
    hyperplane_budget: int = 20,
    atom_budget: int = 14,
) -> Report:
    """Betti profile of the complement from lattice NBC counts and, for real
    labels, the region count cross-checked by deletion-restriction."""
    report = Report()
    L = intersection_lattice(build_arrangement(G), hyperplane_budget)
    nbc_counts = lattice_nbc(L, budget=atom_budget)
    betti = {G.n - m: c for m, c in nbc_counts.items()}
    report.witnesses["betti_profile"] = dict(sorted(betti.items()))

    isf_poly = multigraph_isf_polynomial(G)
    isf_by_m = {
        m: isf_poly.coefficient(G.n - m)
        for m in range(G.n + 1)
        if isf_poly.coefficient(G.n - m)
    }
    report.fact(
        "isf_at_most_betti",
        all(c <= betti.get(G.n - m, 0) for m, c in isf_by_m.items()),
        required=True,
    )
    perfect = is_perfectly_labeled(G)
    report.fact("perfectly_labeled", perfect.ok)
    equality = all(
        isf_by_m.get(m, 0) == nbc_counts.get(m, 0)
        for m in set(isf_by_m) | set(nbc_counts)
    )
    report.fact("isf_equals_betti_iff_perfect", equality == perfect.ok,
                required=True)

    if G.is_real():
        regions = sum(nbc_counts.values())
        regions_dr = region_count_deletion_restriction(build_arrangement(G))
        report.check("regions_nbc_vs_deletion_restriction", regions, regions_dr,
                     expect_equal=True)
        report.witnesses["regions"] = regions
        report.fact(
            "isf_at_most_regions", sum(isf_by_m.values()) <= regions,
            required=True,
        )
        report.fact(
            "isf_equals_regions_iff_perfect",
            (sum(isf_by_m.values()) == regions) == perfect.ok,
            required=True,
        )
    return report


# ---------------------------------------------------------------------------
# Signed graphs
# ---------------------------------------------------------------------------


def signed_chromatic_count(G: LabeledMultigraph, s: int) -> int:
    """Proper colorings of a signed graph by {-s..s}, counted exhaustively."""
    if s < 0:
        raise InputError("s must be nonnegative")
    for i, j, z in G.labeled_edges:
        if not z.is_real() or z.re not in (1, -1):
            raise InputError("signed graphs require labels +1 or -1")
    n = G.n
    width = 2 * s + 1
    shape = (width,) * n
    coords = [arr - s for arr in np.indices(shape).reshape(n, -1)]
    valid = np.ones(coords[0].shape, dtype=bool)
    for i, j, z in G.labeled_edges:
        eps = int(z.re)
        valid &= coords[i - 1] != eps * coords[j - 1]
    for k in G.zero_edges:
        valid &= coords[k - 1] != 0
    return int(valid.sum())


# ---------------------------------------------------------------------------
# Supersolvability
# ---------------------------------------------------------------------------


def is_supersolvable(L: IntersectionLattice, size_budget: int = 600) -> bool:
    """Search for a maximal bottom-to-top chain of modular elements."""
    if L.size > size_budget:
        raise BudgetExceededError(
            f"lattice size {L.size} exceeds the modularity budget {size_budget}"
        )
    modular = set()
    for x in range(L.size):
        if all(
            L.rank[x] + L.rank[y]
            == L.rank[L.join(x, y)] + L.rank[L.meet(x, y)]
            for y in range(L.size)
        ):
            modular.add(x)
    dead: set[int] = set()

    def climb(x: int) -> bool:
        if x == L.top:
            return True
        if x in dead:
            return False
        for y in modular:
            if L.rank[y] == L.rank[x] + 1 and L.leq(x, y) and climb(y):
                return True
        dead.add(x)
        return False

    return L.bottom in modular and climb(L.bottom)
