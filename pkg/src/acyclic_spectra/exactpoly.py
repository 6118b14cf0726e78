"""Exact univariate polynomials over the rationals.

A :class:`Poly` is stored as a tuple of integer numerators (lowest degree
first) over one positive common denominator.  Keeping the arithmetic on
Python ints instead of per-coefficient ``Fraction`` objects is what makes
10x10 .. 30x30 characteristic matrices tractable.

Coefficients are exposed as ``fractions.Fraction`` through :attr:`Poly.coeffs`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "Interval",
    "X",
    "ONE",
    "ZERO",
    "poly_gcd",
    "divides",
    "exact_power",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_sequence",
    "sign_variations",
    "count_roots",
    "isolate_real_roots",
    "parse_poly",
]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Immutable dense polynomial in ``x`` with rational coefficients.

    ``Poly([1, 0, -2])`` is ``x^2 - 2``; coefficients may be ints, Fractions
    or strings accepted by ``Fraction``.
    """

    def __init__(self, coeffs: Iterable[Number | str] = ()):
        fr = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(num, den)

    def _set(self, num: list[int], den: int) -> None:
        _trim(num)
        if not num:
            self._num: tuple[int, ...] = ()
            self._den = 1
            return
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self._num = tuple(num)
        self._den = den

    @classmethod
    def _raw(cls, num: list[int], den: int = 1) -> "Poly":
        p = cls.__new__(cls)
        if den < 0:
            num = [-c for c in num]
            den = -den
        p._set(num, den)
        return p

    @classmethod
    def constant(cls, c: Number | str) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Poly":
        p = ONE
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # ------------------------------------------------------------------ access

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self._num) - 1

    @cached_property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def integer_coeffs(self) -> tuple[int, ...]:
        """Numerators over the common denominator (a positive multiple of self)."""
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def lc(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[-1], self._den)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return len(self._num) <= 1

    def __bool__(self) -> bool:
        return bool(self._num)

    def __len__(self) -> int:
        return len(self._num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        return f"Poly('{self}')"

    def __str__(self) -> str:
        return format_poly(self)

    # -------------------------------------------------------------- arithmetic

    @staticmethod
    def _coerce(other: object) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other)
        return None

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self._num], self._den)

    def __add__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            return self
        if not self._num:
            return o
        den = _lcm(self._den, o._den)
        fa, fb = den // self._den, den // o._den
        a, b = self._num, o._num
        if len(a) < len(b):
            a, b, fa, fb = b, a, fb, fa
        out = [c * fa for c in a]
        for i, c in enumerate(b):
            out[i] += c * fb
        return Poly._raw(out, den)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        if not self._num or not o._num:
            return ZERO
        return Poly._raw(_int_mul(self._num, o._num), self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Number) -> "Poly":
        c = Fraction(c)
        return Poly._raw([x * c.numerator for x in self._num], self._den * c.denominator)

    def monic(self) -> "Poly":
        if not self._num:
            return self
        return Poly._raw(list(self._num), self._num[-1])

    def primitive(self) -> tuple[int, ...]:
        """Integer primitive part with positive leading coefficient."""
        if not self._num:
            return ()
        g = math.gcd(*self._num)
        if self._num[-1] < 0:
            g = -g
        return tuple(c // g for c in self._num)

    def divrem(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Quotient and remainder with ``deg(r) < deg(other)``."""
        if not other._num:
            raise ZeroDivisionError("polynomial division by zero")
        db = len(other._num) - 1
        if len(self._num) - 1 < db:
            return ZERO, self
        q, r, e = _pseudo_divrem(self._num, other._num)
        # lc^e * a_num = q * b_num + r over Z, then restore denominators.
        lce = other._num[-1] ** e
        qp = Poly._raw(q, lce * self._den)
        qp = qp.scale(other._den)
        rp = Poly._raw(r, lce * self._den)
        return qp, rp

    def __divmod__(self, other: object) -> tuple["Poly", "Poly"]:
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self.divrem(o)

    def __floordiv__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self.divrem(o)[0]

    def __mod__(self, other: object) -> "Poly":
        o = Poly._coerce(other)
        if o is None:
            return NotImplemented
        return self.divrem(o)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient, raising ``ArithmeticError`` if the division leaves a remainder."""
        q, r = self.divrem(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self._num)][1:], self._den)

    def __call__(self, x: Number) -> Fraction:
        x = Fraction(x)
        u, v = x.numerator, x.denominator
        return Fraction(_homogeneous_eval(self._num, u, v), self._den * v ** max(self.degree, 0))

    def sign_at(self, x: Number) -> int:
        """Sign of ``self(x)`` using integer-only evaluation."""
        x = Fraction(x)
        val = _homogeneous_eval(self._num, x.numerator, x.denominator)
        return (val > 0) - (val < 0)

    def compose_shift(self, a: Number) -> "Poly":
        """``self(x + a)``."""
        a = Fraction(a)
        out = ZERO
        lin = Poly([a, 1])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out


def _homogeneous_eval(num: Sequence[int], u: int, v: int) -> int:
    """``sum c_i u^i v^(d-i)``; same sign as p(u/v) for v > 0."""
    if not num:
        return 0
    acc = 0
    vp = 1
    # Horner in u with powers of v accumulated from the top.
    for c in reversed(num):
        acc = acc * u + c * vp
        vp *= v
    return acc


_KRONECKER_MIN = 24


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        return _kronecker_mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    ba = max(abs(c) for c in a).bit_length()
    bb = max(abs(c) for c in b).bit_length()
    bits = ba + bb + min(len(a), len(b)).bit_length() + 2
    pa = sum(c << (bits * i) for i, c in enumerate(a))
    pb = sum(c << (bits * i) for i, c in enumerate(b))
    prod = pa * pb
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        d = prod & mask
        prod >>= bits
        if d >= half:
            d -= 1 << bits
            prod += 1
        out.append(d)
    return out


def _pseudo_divrem(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int], int]:
    """Integer long division with ``lc(b)^e * a = q * b + r``.

    The running remainder is scaled by ``lc(b)`` only when the next quotient
    coefficient would not be an integer, so ``e`` is 0 for monic divisors.
    """
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    e = 0
    for i in range(len(a) - 1 - db, -1, -1):
        top = r[i + db]
        if top == 0:
            continue
        if top % lb:
            r = [c * lb for c in r]
            q = [c * lb for c in q]
            e += 1
            top = r[i + db]
        coef = top // lb
        q[i] = coef
        for j, c in enumerate(b):
            r[i + j] -= coef * c
    return q, _trim(r), e


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


# ----------------------------------------------------------------- gcd family


def _int_content(c: Sequence[int]) -> int:
    return math.gcd(*c) if c else 0


def _int_primitive(c: Sequence[int]) -> list[int]:
    g = _int_content(c)
    if c and c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _int_prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Pseudo-remainder over Z: returns (r, e) with r = lc(b)^e * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = 0
    while r and len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        e += 1
        for j, c in enumerate(b):
            r[shift + j] -= top * c
        _trim(r)
    return r, e


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive pseudo-remainder sequence over Z[x]."""
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not b:
        return a.monic()
    if not a:
        return b.monic()
    u = _int_primitive(list(a.integer_coeffs))
    v = _int_primitive(list(b.integer_coeffs))
    if len(u) < len(v):
        u, v = v, u
    while v:
        if len(v) == 1:
            return ONE
        r, _ = _int_prem(u, v)
        u, v = v, (_int_primitive(r) if r else [])
    return Poly._raw(u, u[-1])


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def divides(p: Poly, q: Poly) -> bool:
    """True iff ``p | q`` in Q[x]; only zero is divisible by zero."""
    if not p:
        return not q
    return not (q % p)


def exact_power(p: Poly, a: Number) -> int:
    """Largest k with (x - a)^k dividing p."""
    if not p:
        raise ValueError("exact_power of the zero polynomial is unbounded")
    a = Fraction(a)
    k = 0
    coeffs = list(p.coeffs)
    while len(coeffs) > 1:
        # synthetic division by (x - a)
        acc = Fraction(0)
        quot = []
        for c in reversed(coeffs):
            acc = acc * a + c
            quot.append(acc)
        if acc != 0:
            break
        quot.pop()
        coeffs = list(reversed(quot))
        k += 1
    return k


def multiplicity_of_factor(g: Poly, p: Poly) -> int:
    """Largest k with g^k | p, for nonconstant g and nonzero p."""
    if g.is_constant():
        raise ValueError("factor must be nonconstant")
    if not p:
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    k = 0
    while True:
        q, r = p.divrem(g)
        if r:
            return k
        p, k = q, k + 1


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lc(p) * prod g_i^i`` with monic, square-free, coprime g_i.

    Only nonconstant factors are returned, ordered by multiplicity.
    """
    if not p:
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.is_constant():
        return []
    f = p.monic()
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out: list[tuple[Poly, int]] = []
    i = 1
    while not b.is_constant():
        g = poly_gcd(b, d)
        if not g.is_constant():
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of p."""
    out = ONE
    for g, _ in squarefree_decomposition(p):
        out = out * g
    return out


# ---------------------------------------------------------- real root isolation


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints locating one real root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def sturm_sequence(p: Poly) -> list[tuple[int, ...]]:
    """Sturm chain of p as integer coefficient tuples.

    Each remainder is replaced by its primitive part times a positive
    constant, which leaves every sign pattern unchanged.
    """
    p0 = list(p.primitive())
    p1 = _int_primitive(list(p.derivative().integer_coeffs)) if p.degree > 0 else []
    seq = [tuple(p0)]
    if not p1:
        return seq
    seq.append(tuple(p1))
    u, v = p0, p1
    while len(v) > 1:
        # prem(u, v) = lc(v)^e * rem(u, v); the next Sturm term is -rem(u, v)
        r, e = _int_prem(u, v)
        if not r:
            break
        sign = 1 if (v[-1] > 0 or e % 2 == 0) else -1
        r = [-sign * c for c in r]
        g = _int_content(r)
        r = [c // g for c in r]
        seq.append(tuple(r))
        u, v = v, r
    return seq


def sign_variations(seq: Sequence[Sequence[int]], x: Number) -> int:
    x = Fraction(x)
    u, v = x.numerator, x.denominator
    prev = 0
    count = 0
    for c in seq:
        val = _homogeneous_eval(c, u, v)
        # v^(deg) > 0 so the sign of val is the sign of the polynomial at x
        s = (val > 0) - (val < 0)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_roots(seq: Sequence[Sequence[int]], lo: Number, hi: Number) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: Poly) -> Fraction:
    c = p.coeffs
    lead = abs(c[-1])
    return 1 + max((abs(x) for x in c[:-1]), default=Fraction(0)) / lead


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _bisect_once(p: Poly, iv: Interval) -> Interval:
    """Halve an interval holding one simple root of p, with p(hi) != 0."""
    mid = (iv.lo + iv.hi) / 2
    sm = p.sign_at(mid)
    if sm == 0:
        return Interval(mid, mid)
    # left of the root p has sign -sign(p(hi)), right of it sign(p(hi))
    if sm == p.sign_at(iv.hi):
        return Interval(iv.lo, mid)
    return Interval(mid, iv.hi)


def isolate_real_roots(p: Poly) -> list[Interval]:
    """Disjoint, ascending isolating intervals for the real roots of square-free p.

    Rational roots come back as degenerate intervals ``[r, r]``.  Every
    non-degenerate interval has non-root endpoints and contains exactly one
    root.  Raises ``ValueError`` for zero or non-square-free input.
    """
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree <= 0:
        return []
    if not poly_gcd(p, p.derivative()).is_constant():
        raise ValueError("isolate_real_roots requires a square-free polynomial")
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    found: list[Interval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            if p.sign_at(hi) == 0:
                found.append(Interval(hi, hi))
            else:
                found.append(Interval(lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    found.sort(key=lambda iv: (iv.lo, iv.hi))
    found = _separate(p, found)
    return _snap_rational_roots(p, found)


def _separate(p: Poly, ivs: list[Interval]) -> list[Interval]:
    """Refine until the closed intervals are pairwise disjoint with non-root endpoints."""
    ivs = list(ivs)
    changed = True
    while changed:
        changed = False
        for i, iv in enumerate(ivs):
            if iv.is_exact:
                continue
            touches = (i > 0 and ivs[i - 1].hi >= iv.lo) or (
                i + 1 < len(ivs) and ivs[i + 1].lo <= iv.hi
            )
            if touches or p.sign_at(iv.lo) == 0:
                ivs[i] = _bisect_once(p, iv)
                changed = True
    return ivs


def _snap_rational_roots(p: Poly, ivs: list[Interval]) -> list[Interval]:
    """Replace intervals holding a rational root by the exact root.

    A rational root u/v of the integer primitive form has v | lc, so once
    an interval is narrower than 1/lc it holds at most one candidate per v.
    """
    prim = p.primitive()
    lead = abs(prim[-1])
    dens = _divisors(lead)
    width = Fraction(1, lead)
    out = []
    for iv in ivs:
        while not iv.is_exact and iv.width >= width:
            iv = _bisect_once(p, iv)
        if not iv.is_exact:
            for v in dens:
                u_lo = math.ceil(iv.lo * v)
                u_hi = math.floor(iv.hi * v)
                for u in range(u_lo, u_hi + 1):
                    r = Fraction(u, v)
                    if p.sign_at(r) == 0:
                        iv = Interval(r, r)
                        break
                if iv.is_exact:
                    break
        out.append(iv)
    return out


def refine(p: Poly, iv: Interval, width: Number) -> Interval:
    """Bisect an isolating interval of square-free p down to the given width."""
    while not iv.is_exact and iv.width > width:
        iv = _bisect_once(p, iv)
    return iv


# --------------------------------------------------------------- text format

_TERM = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+(?:/\d+)?)(?:\*?(?P<x1>x)(?:\^(?P<e1>\d+))?)?
      | (?P<x2>x)(?:\^(?P<e2>\d+))?
    )
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> Poly:
    """Parse ``3/2*x^2 - x + 1/3``-style text (whitespace ignored)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("x1"):
                e = int(m.group("e1") or 1)
            else:
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("e2") or 1)
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c
        pos = m.end()
        first = False
    deg = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(deg + 1)])


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if i == 0:
            body = str(a)
        else:
            mon = "x" if i == 1 else f"x^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
