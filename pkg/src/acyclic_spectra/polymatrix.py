"""Matrices over Q[x]: determinants, determinantal divisors and Smith normal form.

Index sets passed to :func:`submatrix` and :func:`principal_submatrix` are
1-based so they line up with graph vertex labels.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactpoly import ONE, ZERO, X, Number, Poly, divides, parse_poly, poly_gcd

__all__ = [
    "PolyMatrix",
    "SnfResult",
    "characteristic_matrix",
    "det",
    "det_via_cycle_covers",
    "determinantal_divisor",
    "smith_normal_form",
    "invariant_factor_multiplicities",
    "submatrix",
    "principal_submatrix",
    "parse_polymatrix",
    "format_polymatrix",
    "parse_rational_matrix",
    "format_rational_matrix",
]

CYCLE_COVER_CAP = 8
BRUTE_MINOR_CAP = 7


def _cap(default: int) -> int:
    env = os.environ.get("ACYCLIC_SPECTRA_MAX_N")
    return int(env) if env else default


class PolyMatrix:
    """Immutable rows x cols grid of :class:`Poly` entries."""

    def __init__(self, entries: Sequence[Sequence[Poly | Number | str]], cols: int | None = None):
        rows = [tuple(_as_poly(e) for e in row) for row in entries]
        self.rows = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.cols = cols
        self.entries: tuple[tuple[Poly, ...], ...] = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def diagonal(cls, diag: Sequence[Poly | Number]) -> "PolyMatrix":
        n = len(diag)
        return cls([[_as_poly(diag[i]) if i == j else ZERO for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_diagonal(self) -> bool:
        return all(
            not self.entries[i][j] for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def diagonal_entries(self) -> list[Poly]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, other.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix([{body}])"

    def max_degree(self) -> int:
        return max((e.degree for row in self.entries for e in row), default=-1)


def _as_poly(e: Poly | Number | str) -> Poly:
    if isinstance(e, Poly):
        return e
    if isinstance(e, str):
        return parse_poly(e)
    return Poly.constant(e)


def characteristic_matrix(a: Sequence[Sequence[Number]]) -> PolyMatrix:
    """``xI - A`` for a square rational matrix A."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("characteristic matrix needs a square matrix")
    return PolyMatrix(
        [
            [X - Fraction(a[i][j]) if i == j else Poly.constant(-Fraction(a[i][j])) for j in range(n)]
            for i in range(n)
        ],
        n,
    )


# ------------------------------------------------------------------ determinants


def _min_degree_order(m: PolyMatrix) -> list[int]:
    """Greedy minimum-degree elimination order on the symmetrized pattern.

    For tree patterns this is a leaf-first order and Bareiss then produces
    no fill-in.
    """
    n = m.rows
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and (m.entries[i][j] or m.entries[j][i]):
                adj[i].add(j)
                adj[j].add(i)
    alive = set(range(n))
    order = []
    while alive:
        v = min(alive, key=lambda u: (len(adj[u]), u))
        order.append(v)
        alive.remove(v)
        nb = adj[v]
        for u in nb:
            adj[u].discard(v)
            adj[u].update(w for w in nb if w != u)
        adj[v] = set()
    return order


def det(m: PolyMatrix) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination with exact division.

    Rows and columns are first permuted symmetrically into a fill-reducing
    order, which leaves the determinant unchanged.  Zero entries are skipped
    so sparse (e.g. acyclic) matrices stay cheap.
    """
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    order = _min_degree_order(m)
    a = [[m.entries[i][j] for j in order] for i in order]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                v = rowi[j]
                if aik and rowk[j]:
                    v = piv * v - aik * rowk[j] if v else -(aik * rowk[j])
                elif v:
                    v = piv * v
                else:
                    continue
                rowi[j] = v.exact_div(prev) if prev != ONE else v
            rowi[k] = ZERO
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_via_cycle_covers(m: PolyMatrix, cap: int | None = None) -> Poly:
    """Sum of signed weights of all spanning sets of disjoint directed cycles.

    Arcs are the nonzero entries (loops included); a cycle of length l has
    sign (-1)^(l-1).  Exponential, so limited to small orders.
    """
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    limit = _cap(CYCLE_COVER_CAP) if cap is None else cap
    if n > limit:
        raise ValueError(f"cycle-cover enumeration capped at n <= {limit}, got {n}")
    if n == 0:
        return ONE
    out_arcs = [[j for j in range(n) if m.entries[i][j]] for i in range(n)]
    total = ZERO

    def extend(covered: int, weight: Poly) -> None:
        nonlocal total
        if covered == (1 << n) - 1:
            total = total + weight
            return
        start = next(i for i in range(n) if not covered >> i & 1)
        # grow a directed path from start through uncovered vertices; close it back
        stack = [(start, 1 << start, ONE, 0)]
        while stack:
            v, used, w, length = stack.pop()
            for u in out_arcs[v]:
                arc = w * m.entries[v][u]
                if u == start:
                    cyc_len = length + 1
                    sign = -1 if cyc_len % 2 == 0 else 1
                    extend(covered | used, weight * (arc if sign > 0 else -arc))
                elif u > start and not (covered | used) >> u & 1:
                    stack.append((u, used | 1 << u, arc, length + 1))

    extend(0, ONE)
    return total


# ------------------------------------------------------------- sub-matrices


def _check_labels(labels: Iterable[int], n: int) -> set[int]:
    s = set(labels)
    bad = [v for v in s if not 1 <= v <= n]
    if bad:
        raise IndexError(f"indices {sorted(bad)} out of range 1..{n}")
    return s


def submatrix(m: PolyMatrix, delete_rows: Iterable[int], delete_cols: Iterable[int]) -> PolyMatrix:
    """M(alpha, beta): remove the given rows and columns (1-based)."""
    dr = _check_labels(delete_rows, m.rows)
    dc = _check_labels(delete_cols, m.cols)
    keep_r = [i for i in range(m.rows) if i + 1 not in dr]
    keep_c = [j for j in range(m.cols) if j + 1 not in dc]
    return PolyMatrix([[m.entries[i][j] for j in keep_c] for i in keep_r], len(keep_c))


def principal_submatrix(m: PolyMatrix, keep: Iterable[int]) -> PolyMatrix:
    """M[alpha]: keep the given rows and columns (1-based), in increasing order."""
    k = sorted(_check_labels(keep, m.rows))
    return PolyMatrix([[m.entries[i - 1][j - 1] for j in k] for i in k], len(k))


# ----------------------------------------------------- determinantal divisors


def _minor_gcd(m: PolyMatrix, k: int) -> Poly:
    g = ZERO
    for rows in itertools.combinations(range(m.rows), k):
        sub_rows = [m.entries[i] for i in rows]
        for cols in itertools.combinations(range(m.cols), k):
            d = det(PolyMatrix([[r[j] for j in cols] for r in sub_rows], k))
            if d:
                g = d.monic() if not g else poly_gcd(g, d)
                if g == ONE:
                    return ONE
    return g


def determinantal_divisor(m: PolyMatrix, k: int, strategy: str = "auto") -> Poly:
    """Monic gcd of all k x k minors (zero if they all vanish).

    ``strategy`` is ``"minors"`` (brute force, order <= 7 unless overridden
    by ``ACYCLIC_SPECTRA_MAX_N``), ``"snf"`` (product of the first k
    invariant factors) or ``"auto"``.
    """
    if not 1 <= k <= min(m.rows, m.cols):
        raise ValueError(f"k={k} out of range 1..{min(m.rows, m.cols)}")
    limit = _cap(BRUTE_MINOR_CAP)
    if strategy == "auto":
        strategy = "minors" if max(m.rows, m.cols) <= limit else "snf"
    if strategy == "minors":
        if max(m.rows, m.cols) > limit:
            raise ValueError(f"brute-force minors capped at order {limit}")
        return _minor_gcd(m, k)
    if strategy == "snf":
        return smith_normal_form(m).determinantal_divisor(k)
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------- Smith form


@dataclass(frozen=True)
class SnfResult:
    """``P @ M @ Q == S`` with S = diag(e_1, .., e_r, 0, ..)."""

    S: PolyMatrix
    P: PolyMatrix
    Q: PolyMatrix
    invariant_factors: tuple[Poly, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def determinantal_divisor(self, k: int) -> Poly:
        if not 1 <= k <= min(self.S.rows, self.S.cols):
            raise ValueError(f"k={k} out of range")
        if k > self.rank:
            return ZERO
        out = ONE
        for e in self.invariant_factors[:k]:
            out = out * e
        return out

    def determinantal_divisors(self) -> list[Poly]:
        return [self.determinantal_divisor(k) for k in range(1, min(self.S.rows, self.S.cols) + 1)]


def _row_op(a: list[list[Poly]], dst: int, src: int, q: Poly) -> None:
    """row dst -= q * row src."""
    rs, rd = a[src], a[dst]
    for j, v in enumerate(rs):
        if v:
            rd[j] = rd[j] - q * v


def _col_op(a: list[list[Poly]], dst: int, src: int, q: Poly) -> None:
    """col dst -= q * col src."""
    for row in a:
        v = row[src]
        if v:
            row[dst] = row[dst] - q * v


def smith_normal_form(m: PolyMatrix, witness: bool = True, verify: bool = True) -> SnfResult:
    """Smith normal form over Q[x] with unimodular witnesses P, Q.

    Pivot is the nonzero entry of least degree (ties: smallest row, then
    column).  Row and column reductions use polynomial division; when the
    pivot fails to divide some remaining entry, that entry's row is added to
    the pivot row and reduction restarts.  With ``verify`` the identity
    ``P M Q = S`` is checked before returning.
    """
    rows, cols = m.shape
    a = [list(r) for r in m.entries]
    P = [[ONE if i == j else ZERO for j in range(rows)] for i in range(rows)] if witness else None
    Q = [[ONE if i == j else ZERO for j in range(cols)] for i in range(cols)] if witness else None
    factors: list[Poly] = []

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    e = a[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                if P is not None:
                    P[t], P[pi] = P[pi], P[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                if Q is not None:
                    for row in Q:
                        row[t], row[pj] = row[pj], row[t]
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q, r = a[i][t].divrem(piv)
                    _row_op(a, i, t, q)
                    if P is not None:
                        _row_op(P, i, t, q)
                    if r:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q, r = a[t][j].divrem(piv)
                    _col_op(a, j, t, q)
                    if Q is not None:
                        _col_op(Q, j, t, q)
                    if r:
                        dirty = True
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] and not divides(piv, a[i][j])),
                None,
            )
            if bad is None:
                break
            # divisibility repair: fold the offending row into the pivot row
            _row_op(a, t, bad, -ONE)
            if P is not None:
                _row_op(P, t, bad, -ONE)
        if best is None:
            break
        piv = a[t][t]
        lc = piv.lc
        if lc != 1:
            inv = 1 / lc
            a[t] = [e.scale(inv) if e else e for e in a[t]]
            if P is not None:
                P[t] = [e.scale(inv) if e else e for e in P[t]]
        factors.append(a[t][t])

    S = PolyMatrix(a, cols)
    Pm = PolyMatrix(P, rows) if P is not None else PolyMatrix.identity(0)
    Qm = PolyMatrix(Q, cols) if Q is not None else PolyMatrix.identity(0)
    result = SnfResult(S, Pm, Qm, tuple(factors))
    if witness and verify and Pm @ m @ Qm != S:
        raise ArithmeticError("Smith normal form self-check failed: P M Q != S")
    return result


def invariant_factor_multiplicities(snf: SnfResult) -> dict[int, Poly]:
    """Map multiplicity m -> monic square-free polynomial whose roots are the
    eigenvalues of multiplicity exactly m.

    For ``xI - A`` with A symmetric, a root has multiplicity >= m exactly when
    it divides ``e_(n-m+1)``, so the multiplicity-m roots are those of
    ``e_(n-m+1) / e_(n-m)``.
    """
    n = snf.S.rows
    if snf.S.cols != n or snf.rank != n:
        raise ValueError("invariant_factor_multiplicities needs a full-rank square Smith form")
    e = (ONE,) + snf.invariant_factors
    out: dict[int, Poly] = {}
    for mult in range(1, n + 1):
        g = e[n - mult + 1].exact_div(e[n - mult])
        if not g.is_constant():
            out[mult] = g.monic()
    return out


# ----------------------------------------------------------------- file formats


def parse_polymatrix(text: str) -> PolyMatrix:
    """``rows cols`` header, then one polynomial per line in row-major order."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty polymatrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("polymatrix header must be 'rows cols'")
    r, c = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != r * c:
        raise ValueError(f"expected {r * c} entries, found {len(body)}")
    polys = [parse_poly(s) for s in body]
    return PolyMatrix([polys[i * c : (i + 1) * c] for i in range(r)], c)


def format_polymatrix(m: PolyMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [str(e) for row in m.entries for e in row]
    return "\n".join(lines) + "\n"


def parse_rational_matrix(text: str) -> list[list[Fraction]]:
    """``n`` header, then n lines of n rationals (``p/q`` or integers)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    n = int(lines[0])
    rows = [[Fraction(tok) for tok in ln.split()] for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    return rows


def format_rational_matrix(a: Sequence[Sequence[Number]]) -> str:
    lines = [str(len(a))]
    lines += [" ".join(str(Fraction(v)) for v in row) for row in a]
    return "\n".join(lines) + "\n"
