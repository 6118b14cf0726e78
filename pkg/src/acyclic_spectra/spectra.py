"""Rational symmetric matrices with a prescribed graph and their exact spectra.

Nothing here uses floating point: eigenvalues are located by square-free
factors of the characteristic polynomial plus rational isolating intervals.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactpoly import (
    Interval,
    Number,
    Poly,
    isolate_real_roots,
    parse_poly,
    squarefree_decomposition,
)
from .graphs import Graph, connected_components
from .polymatrix import (
    characteristic_matrix,
    det,
    format_rational_matrix,
    parse_rational_matrix,
    smith_normal_form,
)

__all__ = [
    "RatSymMatrix",
    "EigenGroup",
    "EigenStructure",
    "graph_of",
    "member_of_S",
    "charpoly",
    "eigen_structure",
    "minimal_polynomial",
    "multiplicity_counts",
    "sample_S",
    "cayley_orthogonal",
    "planted_spectrum_matrix",
    "plant_tree_eigenvalue",
    "example36_matrix",
]


class RatSymMatrix:
    """Symmetric matrix with Fraction entries, rows/columns labelled 1..n."""

    def __init__(self, entries: Sequence[Sequence[Number | str]]):
        rows = [tuple(Fraction(v) for v in row) for row in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"not symmetric at ({i + 1}, {j + 1})")
        self.n = n
        self.entries: tuple[tuple[Fraction, ...], ...] = tuple(rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-based access ``a[i, j]``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatSymMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RatSymMatrix({[[str(v) for v in r] for r in self.entries]})"

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.n)), Fraction(0))

    def principal(self, keep: Iterable[int]) -> "RatSymMatrix":
        k = sorted(set(keep))
        if any(not 1 <= v <= self.n for v in k):
            raise IndexError("principal submatrix index out of range")
        return RatSymMatrix([[self.entries[i - 1][j - 1] for j in k] for i in k])

    def characteristic_matrix(self):
        return characteristic_matrix(self.entries)

    @classmethod
    def parse(cls, text: str) -> "RatSymMatrix":
        return cls(parse_rational_matrix(text))

    def format(self) -> str:
        return format_rational_matrix(self.entries)


def graph_of(a: RatSymMatrix) -> Graph:
    """Edges ij (i != j) with a nonzero entry; the diagonal is ignored."""
    return Graph.from_edges(
        a.n, [(i + 1, j + 1) for i in range(a.n) for j in range(i + 1, a.n) if a.entries[i][j] != 0]
    )


def member_of_S(a: RatSymMatrix, g: Graph) -> bool:
    if a.n != g.n:
        raise ValueError(f"order mismatch: matrix {a.n}, graph {g.n}")
    if g.vertices != frozenset(range(1, g.n + 1)):
        raise ValueError("graph must be labelled 1..n")
    return graph_of(a).edges == g.edges


def charpoly(a: RatSymMatrix) -> Poly:
    """det(xI - A) by fraction-free elimination."""
    return det(a.characteristic_matrix())


@dataclass(frozen=True)
class EigenGroup:
    """One distinct eigenvalue: an exact rational or an isolating interval,
    its multiplicity and the square-free factor of the charpoly it is a root of."""

    root: Fraction | Interval
    mult: int
    factor: Poly

    @property
    def is_rational(self) -> bool:
        return isinstance(self.root, Fraction)

    def to_json(self) -> dict:
        if isinstance(self.root, Fraction):
            root: object = str(self.root)
        else:
            root = {"lo": str(self.root.lo), "hi": str(self.root.hi)}
        return {"root": root, "mult": self.mult}


@dataclass(frozen=True)
class EigenStructure:
    charpoly: Poly
    groups: tuple[EigenGroup, ...]

    @property
    def q(self) -> int:
        return len(self.groups)

    @property
    def multiplicity_list(self) -> tuple[int, ...]:
        return tuple(g.mult for g in self.groups)

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicity_list, default=0)

    def to_json(self) -> dict:
        return {
            "charpoly": str(self.charpoly),
            "groups": [g.to_json() for g in self.groups],
            "q": self.q,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> "EigenStructure":
        if isinstance(data, str):
            data = json.loads(data)
        cp = parse_poly(data["charpoly"])
        factors = {m: g for g, m in squarefree_decomposition(cp)}
        groups = []
        for g in data["groups"]:
            r = g["root"]
            root = Fraction(r) if isinstance(r, str) else Interval(Fraction(r["lo"]), Fraction(r["hi"]))
            groups.append(EigenGroup(root, int(g["mult"]), factors[int(g["mult"])]))
        es = cls(cp, tuple(groups))
        if es.q != data["q"]:
            raise ValueError("inconsistent q in eigen structure JSON")
        return es


def _root_in(g: Poly, root: Fraction | Interval) -> bool:
    if isinstance(root, Fraction):
        return g.sign_at(root) == 0
    # endpoints are non-roots of the full square-free part, hence of g
    return g.sign_at(root.lo) != g.sign_at(root.hi)


def structure_from_charpoly(cp: Poly) -> EigenStructure:
    """Group the (all real) roots of cp by multiplicity, ascending."""
    sqf = squarefree_decomposition(cp)
    squarefree = Poly([1])
    for g, _ in sqf:
        squarefree = squarefree * g
    groups = []
    for iv in isolate_real_roots(squarefree):
        root: Fraction | Interval = iv.lo if iv.is_exact else iv
        owners = [(g, m) for g, m in sqf if _root_in(g, root)]
        if len(owners) != 1:
            raise ArithmeticError("isolating interval matched %d square-free factors" % len(owners))
        g, m = owners[0]
        groups.append(EigenGroup(root, m, g))
    return EigenStructure(cp, tuple(groups))


def eigen_structure(a: RatSymMatrix) -> EigenStructure:
    """Ordered multiplicity structure of a symmetric rational matrix.

    Symmetric implies every root is real, so the number of isolated roots
    must equal the degree of the square-free part.
    """
    es = structure_from_charpoly(charpoly(a))
    if sum(es.multiplicity_list) != a.n:
        raise ArithmeticError("multiplicities do not sum to n; matrix spectrum not real?")
    return es


def multiplicity_counts(a: RatSymMatrix | Poly) -> dict[int, int]:
    """n_m: number of distinct eigenvalues of multiplicity m (no root isolation)."""
    cp = charpoly(a) if isinstance(a, RatSymMatrix) else a
    return {m: g.degree for g, m in squarefree_decomposition(cp)}


def minimal_polynomial(a: RatSymMatrix, check_snf: bool = True) -> Poly:
    """Square-free part of the charpoly; with ``check_snf`` it must also equal
    the last invariant factor of xI - A, and q(A) = n - deg(Delta_(n-1))."""
    cp = charpoly(a)
    mp = Poly([1])
    for g, _ in squarefree_decomposition(cp):
        mp = mp * g
    if check_snf and a.n:
        snf = smith_normal_form(a.characteristic_matrix())
        if snf.invariant_factors[-1] != mp:
            raise ArithmeticError("last invariant factor differs from the square-free charpoly part")
        q_snf = a.n - snf.determinantal_divisor(a.n - 1).degree if a.n > 1 else 1
        if q_snf != mp.degree:
            raise ArithmeticError("q(A) from Delta_(n-1) disagrees with the minimal polynomial")
    return mp


# ------------------------------------------------------------------ sampling

DEFAULT_POOL = (1, 5)


def sample_S(g: Graph, seed: int | random.Random, entry_pool: tuple[int, int] = DEFAULT_POOL) -> RatSymMatrix:
    """Random matrix in S(g): edge entries are +-lo..+-hi, diagonal -hi..hi."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    lo, hi = entry_pool
    if lo < 1:
        raise ValueError("off-diagonal pool must exclude zero")
    n = g.n
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = Fraction(rng.randint(-hi, hi))
    for u, v in sorted(g.edges):
        x = Fraction(rng.randint(lo, hi) * rng.choice((-1, 1)))
        a[u - 1][v - 1] = a[v - 1][u - 1] = x
    return RatSymMatrix(a)


def _mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def _mat_inv(a):
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def cayley_orthogonal(skew: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    """U = (I - S)(I + S)^-1, a rational orthogonal matrix for skew-symmetric S."""
    n = len(skew)
    s = [[Fraction(v) for v in row] for row in skew]
    for i in range(n):
        for j in range(n):
            if s[i][j] != -s[j][i]:
                raise ValueError("Cayley transform needs a skew-symmetric matrix")
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    minus = [[eye[i][j] - s[i][j] for j in range(n)] for i in range(n)]
    plus = [[eye[i][j] + s[i][j] for j in range(n)] for i in range(n)]
    return _mat_mul(minus, _mat_inv(plus))


def planted_spectrum_matrix(diag: Sequence[Number], seed: int | random.Random, pool: int = 3) -> RatSymMatrix:
    """U D U^T with D = diag(diag) and U a random Cayley orthogonal matrix.

    The spectrum (with multiplicities) is exactly the multiset ``diag``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = len(diag)
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-pool, pool), rng.randint(1, 2))
            s[i][j], s[j][i] = v, -v
    u = cayley_orthogonal(s)
    d = [Fraction(x) for x in diag]
    ud = [[u[i][k] * d[k] for k in range(n)] for i in range(n)]
    ut = [list(col) for col in zip(*u)]
    return RatSymMatrix(_mat_mul(ud, ut))


def plant_tree_eigenvalue(
    a: RatSymMatrix,
    t: Graph,
    vertex: int,
    value: Number = 0,
    branches: Iterable[int] | None = None,
) -> RatSymMatrix | None:
    """Retune diagonal entries so ``value`` is an eigenvalue of every branch at ``vertex``.

    Off-diagonal entries are untouched, so the result stays in S(t).  When b
    branches share the eigenvalue, interlacing forces multiplicity >= b - 1
    in the whole matrix.  For each branch the diagonal entry r of the
    neighbour of ``vertex`` is solved from the linear equation
    det(value I - A[B]) = 0; returns None if that equation is degenerate.
    ``branches`` limits the tuning to the branches entered through those
    neighbours of ``vertex``.
    """
    wanted = set(t.adj[vertex]) if branches is None else set(branches)
    if not wanted <= set(t.adj[vertex]):
        raise ValueError("branches must be given by neighbours of the vertex")
    lam = Fraction(value)
    rows = [list(r) for r in a.entries]
    rest = t.remove([vertex])
    for comp in connected_components(rest):
        root = next(u for u in t.adj[vertex] if u in comp)
        if root not in wanted:
            continue
        others = sorted(comp - {root})
        # det(lam I - B) = (lam - b_rr) * det(lam I - B(r)) - c, linear in b_rr
        sub = RatSymMatrix([[rows[i - 1][j - 1] for j in others] for i in others]) if others else None
        d_rest = charpoly(sub)(lam) if sub is not None else Fraction(1)
        if d_rest == 0:
            return None
        full_idx = sorted(comp)
        rows[root - 1][root - 1] = Fraction(0)
        b = RatSymMatrix([[rows[i - 1][j - 1] for j in full_idx] for i in full_idx])
        f0 = charpoly(b)(lam)  # value at b_rr = 0
        # f(b_rr) = f0 - b_rr * d_rest
        rows[root - 1][root - 1] = f0 / d_rest
    return RatSymMatrix(rows)


def example36_matrix() -> RatSymMatrix:
    """The 0/1 adjacency-type matrix on the Figure 2 tree with spectrum <1,2,4,2,1>."""
    edges = [(1, 4), (1, 5), (1, 6), (2, 6), (2, 7), (2, 8), (3, 6), (3, 9), (3, 10)]
    a = [[0] * 10 for _ in range(10)]
    for u, v in edges:
        a[u - 1][v - 1] = a[v - 1][u - 1] = 1
    return RatSymMatrix(a)
