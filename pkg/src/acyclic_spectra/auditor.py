"""Mechanical checks of the multiplicity theorems on constructed and sampled matrices.

Irrational eigenvalues are never named: every membership or multiplicity
claim is phrased as divisibility by a square-free factor of the
characteristic polynomial, which is exact.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .exactpoly import ONE, Poly, divides, poly_gcd, poly_lcm, squarefree_decomposition
from .graphs import (
    BRUTE_CAP,
    Figure14,
    Graph,
    Whirl,
    _cap,
    connected_components,
    cycle_graph,
    detect_whirl,
    diameter,
    figure14_graph,
    figure2_tree,
    is_tree,
    max_coverage_by_k_paths,
    path_cover_number,
    random_tree,
    validate_family,
    whirl,
)
from .polymatrix import (
    CYCLE_COVER_CAP,
    PolyMatrix,
    det,
    det_via_cycle_covers,
    invariant_factor_multiplicities,
    principal_submatrix,
    smith_normal_form,
    submatrix,
)
from .spectra import (
    RatSymMatrix,
    charpoly,
    eigen_structure,
    example36_matrix,
    member_of_S,
    multiplicity_counts,
    plant_tree_eigenvalue,
    planted_spectrum_matrix,
    sample_S,
    structure_from_charpoly,
)

__all__ = [
    "Violation",
    "AuditReport",
    "DeductionStep",
    "audit_factor_structure",
    "audit_planted_spectrum",
    "audit_submatrix_identity",
    "audit_path_deletion",
    "audit_count_bound",
    "coverage_deficits",
    "audit_bounds",
    "audit_whirl_lemma",
    "screen_multiplicity_list",
    "example36_certificate",
    "EXAMPLE36_STEPS",
    "EXAMPLE36_FAMILIES",
    "CLAIMS",
    "run_claim",
    "run_all",
    "example36_report",
    "CLAIM_IDS",
]


@dataclass(frozen=True, order=True)
class Violation:
    instance: str
    expected: str
    observed: str

    def to_json(self) -> dict:
        return {"instance": self.instance, "expected": self.expected, "observed": self.observed}


@dataclass
class AuditReport:
    claim: str
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list, compare=False)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, instance: str, expected: object, observed: object) -> None:
        self.violations.append(Violation(instance, str(expected), str(observed)))

    def merge(self, other: "AuditReport") -> "AuditReport":
        """Combine counts and violations; the result keeps this report's claim."""
        return AuditReport(
            self.claim,
            self.checked + other.checked,
            sorted(self.violations + other.violations),
            self.notes + other.notes,
        )

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
            "passed": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.claim}: {status} checked={self.checked} violations={len(self.violations)}"]
        lines += [f"  {v.instance}: expected {v.expected}, observed {v.observed}" for v in self.violations]
        return "\n".join(lines)


def _simple_in(g: Poly, p: Poly) -> bool:
    """Every root of square-free g is a simple root of p."""
    return divides(g, p) and poly_gcd(g, p.derivative()).is_constant()


def _exact_power(g: Poly, j: int, p: Poly) -> bool:
    """g^j divides p and no root of g survives in p / g^j."""
    gj = g**j
    return divides(gj, p) and poly_gcd(g, p.exact_div(gj)).is_constant()


def _principal_charpoly(a: RatSymMatrix, keep: Iterable[int]) -> Poly:
    keep = sorted(keep)
    return charpoly(a.principal(keep)) if keep else ONE


# ------------------------------------------------------------ factor structure


def audit_factor_structure(a: RatSymMatrix, label: str = "A") -> AuditReport:
    """Placement of each multiplicity class in the determinantal divisors and
    invariant factors of xI - A, checked per square-free class factor."""
    rep = AuditReport("thm-2.3", 1)
    n = a.n
    cp = charpoly(a)
    snf = smith_normal_form(a.characteristic_matrix())
    e = (ONE,) + snf.invariant_factors
    delta = [ONE]
    for f in snf.invariant_factors:
        delta.append(delta[-1] * f)
    if delta[n] != cp:
        rep.fail(label, f"product of invariant factors = {cp}", delta[n])
    groups = squarefree_decomposition(cp)
    for g, m in groups:
        for k in range(1, n + 1):
            if k <= n - m:
                if not poly_gcd(g, delta[k]).is_constant() or not poly_gcd(g, e[k]).is_constant():
                    rep.fail(f"{label} class m={m} k={k}", f"({g}) coprime to Delta_k and e_k", "common root")
            else:
                if not _exact_power(g, k - n + m, delta[k]):
                    rep.fail(f"{label} class m={m} k={k}", f"({g})^{k - n + m} exactly divides Delta_k", delta[k])
                if not _exact_power(g, 1, e[k]):
                    rep.fail(f"{label} class m={m} k={k}", f"({g}) exactly divides e_k", e[k])
    for k in range(n):
        want = ONE
        for g, m in groups:
            if m > k:
                want = want * g
        if e[n - k] != want:
            rep.fail(f"{label} e_{n - k}", want, e[n - k])
    by_snf = invariant_factor_multiplicities(snf)
    by_charpoly = {m: g for g, m in groups}
    if by_snf != by_charpoly:
        rep.fail(f"{label} multiplicity classes", by_charpoly, by_snf)
    return rep


def audit_planted_spectrum(a: RatSymMatrix, planted: Sequence[Fraction], label: str = "A") -> AuditReport:
    """Invariant-factor multiplicities must reproduce the planted multiset, plus
    the factor placement checks."""
    rep = audit_factor_structure(a, label)
    counts = Counter(Fraction(v) for v in planted)
    want: dict[int, Poly] = {}
    for v, m in counts.items():
        want[m] = want.get(m, ONE) * Poly([-v, 1])
    got = invariant_factor_multiplicities(smith_normal_form(a.characteristic_matrix(), witness=False))
    if got != want:
        rep.fail(label, {m: str(g) for m, g in sorted(want.items())}, {m: str(g) for m, g in sorted(got.items())})
    es = eigen_structure(a)
    ordered = tuple(counts[v] for v in sorted(counts))
    if es.multiplicity_list != ordered:
        rep.fail(label, f"ordered list {ordered}", es.multiplicity_list)
    return rep


# ------------------------------------------------------ submatrix identity


def _tree_of(m: PolyMatrix) -> Graph:
    n = m.rows
    return Graph.from_edges(n, [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if m.entries[i][j]])


def audit_submatrix_identity(
    m: PolyMatrix, tree: Graph, family: Sequence[Sequence[int]], label: str = "M"
) -> AuditReport:
    """det M({j_s},{i_s}) against +-prod wt(P_{i_s -> j_s}) * det M[T minus paths].

    The left side is a fraction-free determinant; the right side multiplies
    path weights with the complementary principal minor, taken by cycle covers
    when small.  The matching sign is recorded in ``notes``.
    """
    if not m.is_symmetric():
        raise ValueError("matrix must be symmetric")
    if _tree_of(m).edges != tree.edges or m.rows != tree.n:
        raise ValueError("off-diagonal pattern of the matrix is not the tree")
    validate_family(tree, family)
    rep = AuditReport("thm-3.3", 1)
    starts = [p[0] for p in family]
    ends = [p[-1] for p in family]
    left = det(submatrix(m, ends, starts))
    weight = ONE
    for p in family:
        for u, v in zip(p, p[1:]):
            weight = weight * m[u - 1, v - 1]
    covered = {v for p in family for v in p}
    keep = [v for v in range(1, m.rows + 1) if v not in covered]
    if not keep:
        minor = ONE
    else:
        sub = principal_submatrix(m, keep)
        minor = det_via_cycle_covers(sub) if len(keep) <= CYCLE_COVER_CAP else det(sub)
    right = weight * minor
    signs = [s for s, r in (("+", right), ("-", -right)) if left == r]
    if not signs:
        rep.fail(label, f"+-({right})", left)
    else:
        rep.notes.append(f"{label}: sign {'/'.join(signs)}")
    return rep


# ------------------------------------------------------------ path deletion


def _require_member(a: RatSymMatrix, g: Graph) -> None:
    if not member_of_S(a, g):
        raise ValueError("matrix graph differs from the given graph")


def audit_path_deletion(
    a: RatSymMatrix, tree: Graph, family: Sequence[Sequence[int]], label: str = "A"
) -> AuditReport:
    """Eigenvalues of multiplicity m >= k+1 survive in A[T minus k paths] with
    multiplicity >= m-k, and deg Delta_(n-k) <= number of uncovered vertices.

    Both the direct divisibility of the submatrix charpoly and the route
    through Delta_(n-k) are checked.
    """
    if not is_tree(tree):
        raise ValueError("host graph must be a tree")
    _require_member(a, tree)
    validate_family(tree, family)
    rep = AuditReport("cor-3.4", 1)
    n, k = a.n, len(family)
    covered = {v for p in family for v in p}
    rest = [v for v in range(1, n + 1) if v not in covered]
    t = len(rest)
    cp_rest = _principal_charpoly(a, rest)
    if k == 0:
        delta = charpoly(a)
    elif k >= n:
        delta = ONE
    else:
        delta = smith_normal_form(a.characteristic_matrix(), witness=False).determinantal_divisor(n - k)
    if delta.degree > t:
        rep.fail(label, f"deg Delta_{n - k} <= {t}", delta.degree)
    if not divides(delta, cp_rest):
        rep.fail(label, f"Delta_{n - k} divides det((xI-A)[rest])", f"{delta} vs {cp_rest}")
    for g, mult in squarefree_decomposition(charpoly(a)):
        if mult < k + 1:
            continue
        power = g ** (mult - k)
        if not divides(power, cp_rest):
            rep.fail(f"{label} class m={mult}", f"({g})^{mult - k} divides charpoly of A[{rest}]", cp_rest)
        if not divides(power, delta):
            rep.fail(f"{label} class m={mult}", f"({g})^{mult - k} divides Delta_{n - k}", delta)
    return rep


def coverage_deficits(tree: Graph, cap: int | None = None) -> dict[int, int]:
    """k -> t_k = n - (most vertices k disjoint paths can cover), k = 1..p(T)."""
    limit = _cap(BRUTE_CAP) if cap is None else cap
    if tree.n > limit:
        raise ValueError(f"coverage maxima capped at n <= {limit}")
    p, _ = path_cover_number(tree)
    return {k: tree.n - max_coverage_by_k_paths(tree, k, strategy="dp")[0] for k in range(1, p + 1)}


def audit_count_bound(a: RatSymMatrix, tree: Graph, cap: int | None = None, label: str = "A") -> AuditReport:
    """At most t_k eigenvalues have multiplicity >= k+1.

    The count is taken from the square-free decomposition and, independently,
    as deg e_(n-k) from the Smith form; the two must agree.
    """
    if not is_tree(tree):
        raise ValueError("host graph must be a tree")
    _require_member(a, tree)
    deficits = coverage_deficits(tree, cap)
    rep = AuditReport("cor-3.5", 1)
    counts = multiplicity_counts(a)
    inv = smith_normal_form(a.characteristic_matrix(), witness=False).invariant_factors
    n = a.n
    for k, t in deficits.items():
        big = sum(c for m, c in counts.items() if m >= k + 1)
        via_snf = inv[n - k - 1].degree if n - k >= 1 else 0
        if big != via_snf:
            rep.fail(f"{label} k={k}", f"deg e_{n - k} = {big}", via_snf)
        if big > t:
            rep.fail(f"{label} k={k}", f"at most {t} eigenvalues with multiplicity >= {k + 1}", big)
    return rep


# ------------------------------------------------------------------- bounds

BOUND_CLAIMS = {
    "M_le_p": "cor-4.1",
    "q_ge_d1": "thm-5.1",
    "whirl_52": "thm-5.2",
    "whirl_54": "thm-5.4",
    "graph_61": "thm-6.1",
    "extremes_simple": "extremes-simple",
}


def _as_whirl(g: Graph | Whirl) -> Whirl:
    w = g if isinstance(g, Whirl) else detect_whirl(g)
    if w is None:
        raise ValueError("graph is not a whirl")
    return w


def audit_bounds(a: RatSymMatrix, g: Graph | Whirl | Figure14, which: str, label: str = "A") -> AuditReport:
    """One of the lower bounds on q(A) / upper bound on the largest multiplicity.

    ``g`` is a tree for M_le_p, q_ge_d1 and extremes_simple, a whirl (or a
    graph recognised as one) for whirl_52 / whirl_54, and a Figure14
    descriptor for graph_61.
    """
    if which not in BOUND_CLAIMS:
        raise ValueError(f"unknown bound {which!r}")
    rep = AuditReport(BOUND_CLAIMS[which], 1)
    if which == "graph_61":
        if not isinstance(g, Figure14):
            raise ValueError("graph_61 needs a Figure14 descriptor")
        host = g.graph
    elif which in ("whirl_52", "whirl_54"):
        w = _as_whirl(g)
        host = w.graph
        if which == "whirl_52" and (w.k != 3 or w.ell < 2):
            raise ValueError("whirl_52 targets (3, l)-whirls with l >= 2")
        if which == "whirl_54" and (w.k < 3 or w.ell < 2):
            raise ValueError("whirl_54 targets (k, l)-whirls with k >= 3, l >= 2")
    else:
        host = g.graph if isinstance(g, (Whirl, Figure14)) else g
        if not is_tree(host):
            raise ValueError(f"{which} applies to trees only")
    _require_member(a, host)

    if which == "extremes_simple":
        ml = eigen_structure(a).multiplicity_list
        if ml[0] != 1 or ml[-1] != 1:
            rep.fail(label, "extreme eigenvalues simple", ml)
        return rep

    counts = multiplicity_counts(a)
    q = sum(counts.values())
    if which == "M_le_p":
        p, _ = path_cover_number(host)
        top = max(counts)
        if top > p:
            rep.fail(label, f"max multiplicity <= p = {p}", top)
        return rep
    if which == "graph_61":
        bound = Fraction(9 * g.ell, 4) - 2 * g.m + Fraction(15, 2)
    else:
        d = diameter(host)
        if which == "q_ge_d1":
            bound = Fraction(d + 1)
        elif which == "whirl_52":
            bound = Fraction(9 * d, 8) + Fraction(1, 2)
        else:
            k, ell = w.k, w.ell
            bound = d + 1 + Fraction((k - 2) * (ell - 1), (k - 1) ** 2)
    if q < bound:
        rep.fail(label, f"q >= {bound}", q)
    return rep


# ------------------------------------------------------------- whirl lemma


def audit_whirl_lemma(a: RatSymMatrix, w: Whirl, label: str = "A") -> AuditReport:
    """Counts n_r of eigenvalues with multiplicity r on a (k, l)-whirl and
    the behaviour of the top two multiplicity classes on the legs."""
    _require_member(a, w.graph)
    rep = AuditReport("lem-5.3", 1)
    k, n = w.k, a.n
    groups = squarefree_decomposition(charpoly(a))
    counts = {m: g.degree for g, m in groups}
    if counts.get(k + 1, 0) > 1:
        rep.fail(f"{label} (a)", f"n_{k + 1} <= 1", counts[k + 1])
    for m, c in counts.items():
        if m >= k + 2:
            rep.fail(f"{label} (a)", f"n_{m} = 0", c)
    lhs = (2 * k - 2) * counts.get(k, 0) + 2 * k * counts.get(k + 1, 0)
    if lhs > n - (k + 1):
        rep.fail(f"{label} (d)", f"(2k-2)n_k + 2k n_(k+1) <= {n - (k + 1)}", lhs)
    leg_cp = {key: _principal_charpoly(a, leg) for key, leg in sorted(w.legs.items())}
    for g, m in groups:
        if m == k + 1:
            for key, cp in leg_cp.items():
                if not _simple_in(g, cp):
                    rep.fail(f"{label} (b) leg {key}", f"({g}) simple in leg charpoly", cp)
        elif m == k:
            simple = {}
            for key, cp in leg_cp.items():
                common = poly_gcd(g, cp)
                simple[key] = common.exact_div(poly_gcd(common, cp.derivative())) if common else ONE
            for (k1, s1), (k2, s2) in combinations(simple.items(), 2):
                if k1[0] != k2[0] and not divides(g, poly_lcm(s1, s2)):
                    rep.fail(f"{label} (c) legs {k1},{k2}", f"each root of ({g}) simple in one of the legs", "missing")
    return rep


# --------------------------------------------------------------- screening


def screen_multiplicity_list(t: Graph, mults: Iterable[int], cap: int | None = None) -> AuditReport:
    """Necessary conditions on a multiplicity multiset for S(t); reports the
    first condition that fails."""
    if not is_tree(t):
        raise ValueError("screening needs a tree")
    ms = sorted(int(m) for m in mults)
    if any(m < 1 for m in ms):
        raise ValueError("multiplicities must be positive")
    rep = AuditReport("screen", 1)
    inst = f"<{','.join(map(str, ms))}>"
    if sum(ms) != t.n:
        rep.fail(inst, f"sum = n = {t.n}", sum(ms))
        return rep
    p, _ = path_cover_number(t)
    if ms[-1] > p:
        rep.fail(inst, f"max multiplicity <= p = {p}", ms[-1])
        return rep
    d = diameter(t)
    if len(ms) < d + 1:
        rep.fail(inst, f"at least d+1 = {d + 1} distinct eigenvalues", len(ms))
        return rep
    for k, deficit in coverage_deficits(t, cap).items():
        big = sum(1 for m in ms if m >= k + 1)
        if big > deficit:
            rep.fail(inst, f"at most {deficit} multiplicities >= {k + 1}", big)
            return rep
    return rep


# --------------------------------------------------------- Example 3.6 certificate

EXAMPLE36_LIST = (1, 2, 4, 2, 1)
# lambda1 + lambda5 - lambda2 - lambda4 = 0
EXAMPLE36_RELATION = {1: 1, 2: -1, 3: 0, 4: -1, 5: 1}

# families for the figures: vertex 6 left alone, then {4,1,5} and {4,1,5,8,9}
EXAMPLE36_FAMILIES = {
    "fig3": ((4, 1, 5), (7, 2, 8), (10, 3, 9)),
    "fig4": ((4, 1, 6, 2, 7), (10, 3, 9), (8,)),
    "fig5": ((7, 2, 6, 3, 10), (8,), (9,)),
}


@dataclass(frozen=True)
class DeductionStep:
    """Delete ``path_family`` and assert (tag, block, m): eigenvalue ``tag``
    has multiplicity >= m in the principal submatrix on ``block``."""

    path_family: tuple[tuple[int, ...], ...]
    remaining_vertices: frozenset[int]
    asserted_memberships: tuple[tuple[int, frozenset[int], int], ...]


def _step(paths, rest, *claims) -> DeductionStep:
    return DeductionStep(
        tuple(tuple(p) for p in paths),
        frozenset(rest),
        tuple((tag, frozenset(block), m) for tag, block, m in claims),
    )


EXAMPLE36_STEPS: tuple[DeductionStep, ...] = (
    # each leaf and the centre carries lambda3
    _step([(4, 1, 5), (7, 2, 8), (10, 3, 9)], {6}, (3, {6}, 1)),
    _step([(4, 1, 6, 2, 7), (10, 3, 9), (8,)], {5}, (3, {5}, 1)),
    _step([(5, 1, 6, 2, 7), (10, 3, 9), (8,)], {4}, (3, {4}, 1)),
    _step([(4, 1, 6, 2, 8), (10, 3, 9), (5,)], {7}, (3, {7}, 1)),
    _step([(4, 1, 6, 2, 7), (10, 3, 9), (5,)], {8}, (3, {8}, 1)),
    _step([(4, 1, 6, 3, 10), (7, 2, 8), (5,)], {9}, (3, {9}, 1)),
    _step([(4, 1, 6, 3, 9), (7, 2, 8), (5,)], {10}, (3, {10}, 1)),
    # lambda3 in each arm
    _step([(7, 2, 6, 3, 10), (8,), (9,)], {4, 1, 5}, (3, {4, 1, 5}, 1)),
    _step([(4, 1, 6, 2, 7), (8,), (5,)], {10, 3, 9}, (3, {10, 3, 9}, 1)),
    _step([(4, 1, 6, 3, 10), (5,), (9,)], {7, 2, 8}, (3, {7, 2, 8}, 1)),
    # lambda2 and lambda4 in each arm, one path each
    _step([(7, 2, 6, 3, 10)], {4, 1, 5, 8, 9}, (2, {4, 1, 5}, 1), (4, {4, 1, 5}, 1)),
    _step([(4, 1, 6, 2, 7)], {10, 3, 9, 8, 5}, (2, {10, 3, 9}, 1), (4, {10, 3, 9}, 1)),
    _step([(4, 1, 6, 3, 10)], {7, 2, 8, 5, 9}, (2, {7, 2, 8}, 1), (4, {7, 2, 8}, 1)),
)


class _Knowledge:
    """Lower bounds on tag multiplicities in principal blocks."""

    def __init__(self, mults: Mapping[int, int]):
        self.mults = dict(mults)
        self.blocks: dict[frozenset[int], Counter] = {}

    def upper(self, tag: int, block: frozenset[int]) -> int:
        known = self.blocks.get(block, Counter())
        return len(block) - sum(v for t, v in known.items() if t != tag)

    def determined(self) -> list[frozenset[int]]:
        return [b for b, c in self.blocks.items() if sum(c.values()) == len(b)]


def _exact_cover(universe: frozenset[int], blocks: list[frozenset[int]]) -> list[frozenset[int]] | None:
    if not universe:
        return []
    v = min(universe)
    for b in sorted(blocks, key=sorted):
        if v in b and b <= universe:
            rest = _exact_cover(universe - b, blocks)
            if rest is not None:
                return [b] + rest
    return None


def _apply_steps(tree: Graph, steps: Sequence[DeductionStep], rep: AuditReport) -> _Knowledge:
    know = _Knowledge(dict(enumerate(EXAMPLE36_LIST, start=1)))
    for idx, st in enumerate(steps, start=1):
        try:
            validate_family(tree, st.path_family)
        except ValueError as exc:
            raise ValueError(f"step {idx}: {exc}") from None
        covered = {v for p in st.path_family for v in p}
        if st.remaining_vertices != tree.vertices - covered:
            raise ValueError(f"step {idx}: remaining vertices are not the complement of the paths")
        k = len(st.path_family)
        comps = connected_components(tree.induced(st.remaining_vertices)) if st.remaining_vertices else []
        for tag, block, want in st.asserted_memberships:
            where = f"step {idx} tag {tag} block {sorted(block)}"
            if tag not in know.mults or want < 1:
                raise ValueError(f"{where}: malformed assertion")
            inside = [c for c in comps if c <= block]
            if not inside or frozenset().union(*inside) != block:
                rep.fail(where, "block is a union of remaining components", "not a union")
                continue
            m = know.mults[tag]
            if m < k + 1:
                rep.fail(where, f"multiplicity >= {k + 1} to survive {k} deletions", m)
                continue
            allowed = (m - k) - sum(know.upper(tag, c) for c in comps if not c <= block)
            if want > allowed:
                rep.fail(where, f"claimed multiplicity <= {allowed}", want)
                continue
            known = know.blocks.setdefault(block, Counter())
            known[tag] = max(known[tag], want)
            if sum(known.values()) > len(block):
                rep.fail(where, f"at most {len(block)} eigenvalues in block", sum(known.values()))
    return know


def _sigma_relation_value(sigma: Sequence[Fraction] | Poly, relation: Mapping[int, int]) -> Fraction:
    if isinstance(sigma, Poly):
        es = structure_from_charpoly(sigma)
        if es.multiplicity_list != EXAMPLE36_LIST:
            raise ValueError(f"sigma has ordered multiplicity list {es.multiplicity_list}")
        # constant coefficient per multiplicity class -> root sums of class factors
        value = Fraction(0)
        for g, m in squarefree_decomposition(sigma):
            tags = [t for t, mm in enumerate(EXAMPLE36_LIST, start=1) if mm == m]
            coefs = {relation.get(t, 0) for t in tags}
            if len(coefs) != 1:
                raise ValueError("relation is not symmetric within a multiplicity class")
            value += coefs.pop() * (-g[g.degree - 1] / g[g.degree])
        return value
    vals = sorted(Fraction(v) for v in sigma)
    if len(vals) != sum(EXAMPLE36_LIST):
        raise ValueError(f"sigma needs {sum(EXAMPLE36_LIST)} values, got {len(vals)}")
    distinct = sorted(set(vals))
    counts = Counter(vals)
    if tuple(counts[v] for v in distinct) != EXAMPLE36_LIST:
        raise ValueError(f"sigma has ordered multiplicity list {tuple(counts[v] for v in distinct)}")
    return sum((relation.get(t, 0) * v for t, v in enumerate(distinct, start=1)), Fraction(0))


def example36_certificate(
    sigma: Sequence[Fraction | int | str] | Poly,
    steps: Sequence[DeductionStep] = EXAMPLE36_STEPS,
) -> AuditReport:
    """Check the deletion steps on the Figure 2 tree, derive the block spectra
    and the resulting trace relation, then test ``sigma`` against it.

    ``sigma`` is either ten rationals or a degree-10 polynomial whose roots
    are the spectrum; the latter is evaluated through root sums of its
    square-free factors.
    """
    tree = figure2_tree()
    rep = AuditReport("ex-3.6", len(steps) + 1)
    know = _apply_steps(tree, steps, rep)
    cover = _exact_cover(tree.vertices, know.determined())
    if cover is None:
        rep.fail("blocks", "determined blocks partition the vertices", "no partition")
        return rep
    block_sum: Counter = Counter()
    for b in cover:
        block_sum.update(know.blocks[b])
        rep.notes.append(f"block {sorted(b)}: " + " ".join(f"l{t}x{c}" for t, c in sorted(know.blocks[b].items())))
    relation = {t: m - block_sum[t] for t, m in enumerate(EXAMPLE36_LIST, start=1)}
    if relation != EXAMPLE36_RELATION:
        rep.fail("trace", "l1 + l5 = l2 + l4", relation)
    value = _sigma_relation_value(sigma if isinstance(sigma, Poly) else [Fraction(v) for v in sigma], relation)
    if value != 0:
        rep.fail("sigma", "l1 + l5 - l2 - l4 = 0", value)
    return rep


# ------------------------------------------------------------- batch runner


def random_path_family(t: Graph, rng: random.Random, max_paths: int) -> list[tuple[int, ...]]:
    """Up to ``max_paths`` disjoint paths grown by random walks on unused vertices."""
    used: set[int] = set()
    family = []
    verts = t.sorted_vertices()
    for _ in range(rng.randint(1, max_paths)):
        free = [v for v in verts if v not in used]
        if not free:
            break
        path = [rng.choice(free)]
        used.add(path[0])
        for _ in range(rng.randint(0, t.n)):
            nxt = [u for u in t.adj[path[-1]] if u not in used]
            if not nxt:
                break
            path.append(rng.choice(nxt))
            used.add(path[-1])
        if rng.random() < 0.5:
            path.reverse()
        family.append(tuple(path))
    return family


def _with_diagonal(a: RatSymMatrix, changes: Mapping[int, Fraction]) -> RatSymMatrix:
    rows = [list(r) for r in a.entries]
    for v, x in changes.items():
        rows[v - 1][v - 1] = Fraction(x)
    return RatSymMatrix(rows)


def planted_tree_sample(t: Graph, rng: random.Random, attempts: int = 20) -> RatSymMatrix:
    """Sample of S(t), retuned when possible so a max-degree vertex forces a repeated eigenvalue."""
    hub = max(t.sorted_vertices(), key=lambda v: (t.degree(v), -v))
    a = sample_S(t, rng)
    if t.degree(hub) < 3:
        return a
    for _ in range(attempts):
        b = plant_tree_eigenvalue(a, t, hub, rng.randint(-2, 2))
        if b is not None:
            return b
        a = sample_S(t, rng)
    return a


def whirl_sample(w: Whirl, rng: random.Random, mode: int, attempts: int = 20) -> RatSymMatrix:
    """mode 0: plain sample; 1: one value planted in all 2k legs (multiplicity >= k);
    2: additionally on the axis (multiplicity k+1)."""
    a = sample_S(w.graph, rng)
    if mode == 0:
        return a
    lam = Fraction(rng.randint(-2, 2))
    for _ in range(attempts):
        b: RatSymMatrix | None = a
        for i, s in enumerate(w.spokes, start=1):
            b = plant_tree_eigenvalue(b, w.graph, s, lam, branches=[w.legs[(i, 1)][0], w.legs[(i, 2)][0]])
            if b is None:
                break
        if b is not None:
            return _with_diagonal(b, {w.axis: lam}) if mode == 2 else b
        a = sample_S(w.graph, rng)
    return a


def _random_tree_matrix_poly(t: Graph, rng: random.Random) -> PolyMatrix:
    """Symmetric PolyMatrix of degree <= 1 entries whose off-diagonal pattern is t."""
    n = t.n
    rows = [[Poly() for _ in range(n)] for _ in range(n)]

    def entry(nonzero: bool) -> Poly:
        while True:
            p = Poly([rng.randint(-3, 3), rng.randint(-2, 2)])
            if p or not nonzero:
                return p

    for v in range(n):
        rows[v][v] = entry(False)
    for u, v in t.edges:
        rows[u - 1][v - 1] = rows[v - 1][u - 1] = entry(True)
    return PolyMatrix(rows)


def _claim_thm23(seed: int) -> AuditReport:
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    pool = rng.sample(range(-4, 5), rng.randint(1, n))
    diag = [Fraction(v) for v in pool] + [Fraction(rng.choice(pool)) for _ in range(n - len(pool))]
    a = planted_spectrum_matrix(diag, rng)
    return audit_planted_spectrum(a, diag, f"seed {seed}")


def _claim_thm33(seed: int) -> AuditReport:
    rng = random.Random(seed)
    t = random_tree(rng.randint(1, 9), rng)
    m = _random_tree_matrix_poly(t, rng)
    return audit_submatrix_identity(m, t, random_path_family(t, rng, 3), f"seed {seed}")


def _claim_cor34(seed: int) -> AuditReport:
    rng = random.Random(seed)
    t = random_tree(rng.randint(4, 10), rng)
    a = planted_tree_sample(t, rng)
    return audit_path_deletion(a, t, random_path_family(t, rng, 3), f"seed {seed}")


def _claim_cor35(seed: int) -> AuditReport:
    rng = random.Random(seed)
    t = random_tree(rng.randint(4, 12), rng)
    return audit_count_bound(planted_tree_sample(t, rng), t, label=f"seed {seed}")


def _claim_cor41(seed: int) -> AuditReport:
    rng = random.Random(seed)
    t = random_tree(rng.randint(3, 12), rng)
    a = planted_tree_sample(t, rng)
    return audit_bounds(a, t, "M_le_p", f"seed {seed}").merge(audit_bounds(a, t, "extremes_simple", f"seed {seed}"))


THM51_TREES = 20


def thm51_tree(index: int) -> Graph:
    """Fixed pool of trees for the q >= d+1 audit."""
    rng = random.Random(10_000 + index)
    return random_tree(rng.randint(4, 12), rng)


def _claim_thm51(seed: int) -> AuditReport:
    rep = AuditReport("thm-5.1")
    for i in range(THM51_TREES):
        t = thm51_tree(i)
        rng = random.Random(seed * THM51_TREES + i)
        a = planted_tree_sample(t, rng) if seed % 2 else sample_S(t, rng)
        rep = rep.merge(audit_bounds(a, t, "q_ge_d1", f"tree {i} seed {seed}"))
    return rep


def _claim_lem53(seed: int) -> AuditReport:
    rng = random.Random(seed)
    rep = AuditReport("lem-5.3")
    for k, ell in ((3, 2), (4, 2)):
        w = whirl(k, ell)
        rep = rep.merge(audit_whirl_lemma(whirl_sample(w, rng, seed % 3), w, f"whirl({k},{ell}) seed {seed}"))
    return rep


def _claim_thm52(seed: int) -> AuditReport:
    rng = random.Random(seed)
    w = whirl(3, 2)
    return audit_bounds(whirl_sample(w, rng, seed % 3), w, "whirl_52", f"seed {seed}")


def _claim_thm54(seed: int) -> AuditReport:
    rng = random.Random(seed)
    rep = AuditReport("thm-5.4")
    for k, ell in ((4, 2), (4, 3)):
        w = whirl(k, ell)
        rep = rep.merge(audit_bounds(whirl_sample(w, rng, seed % 3), w, "whirl_54", f"whirl({k},{ell}) seed {seed}"))
    return rep


def figure14_instance() -> Figure14:
    """6-cycle with anchors 1, 3, 5 and legs of 4 vertices."""
    return figure14_graph(cycle_graph(6), (1, 3, 5), 4)


def _claim_thm61(seed: int) -> AuditReport:
    f = figure14_instance()
    return audit_bounds(sample_S(f.graph, seed), f, "graph_61", f"seed {seed}")


def example36_report() -> AuditReport:
    """Everything checkable on the 10x10 example: certificate, deletion
    figures, count bound and the whirl lemma on its (3,1)-whirl."""
    a = example36_matrix()
    t = figure2_tree()
    rep = example36_certificate(charpoly(a))
    for name, fam in EXAMPLE36_FAMILIES.items():
        rep = rep.merge(audit_path_deletion(a, t, fam, name))
    rep = rep.merge(audit_count_bound(a, t, label="example"))
    rep = rep.merge(audit_whirl_lemma(a, _as_whirl(t), "example"))
    rep = rep.merge(audit_factor_structure(a, "example"))
    rejected = example36_certificate([2, 3, 3, 5, 5, 5, 5, 7, 7, 10])
    rep.checked += 1
    if rejected.passed:
        rep.fail("sigma (2,3,3,5,5,5,5,7,7,10)", "rejected", "accepted")
    return rep


CLAIMS: dict[str, Callable[[int], AuditReport]] = {
    "thm-2.3": _claim_thm23,
    "thm-3.3": _claim_thm33,
    "cor-3.4": _claim_cor34,
    "cor-3.5": _claim_cor35,
    "cor-4.1": _claim_cor41,
    "thm-5.1": _claim_thm51,
    "lem-5.3": _claim_lem53,
    "thm-5.2": _claim_thm52,
    "thm-5.4": _claim_thm54,
    "thm-6.1": _claim_thm61,
}


def _run_one(args: tuple[str, int]) -> AuditReport:
    claim, seed = args
    return CLAIMS[claim](seed)


def run_claim(claim: str, seeds: Iterable[int], jobs: int = 1) -> AuditReport:
    """Audit ``claim`` once per seed; the merge is order-independent.

    ``ex-3.6`` is a fixed instance and ignores the seeds.
    """
    if claim == "ex-3.6":
        return example36_report()
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}; known: {', '.join(sorted(CLAIMS) + ['ex-3.6'])}")
    seeds = list(seeds)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_run_one, [(claim, s) for s in seeds]))
    else:
        parts = [CLAIMS[claim](s) for s in seeds]
    rep = AuditReport(claim)
    for part in parts:
        rep = rep.merge(part)
    return rep


CLAIM_IDS = tuple(CLAIMS) + ("ex-3.6",)


def run_all(seeds: Iterable[int], jobs: int = 1) -> list[AuditReport]:
    seeds = list(seeds)
    return [run_claim(c, seeds, jobs) for c in CLAIM_IDS]
