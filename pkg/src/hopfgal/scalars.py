"""Exact arithmetic over cyclotomic fields Q(zeta_N).

Every scalar is a rational linear combination of powers of a fixed primitive
N-th root of unity zeta_N, stored in the power basis

    { zeta_N^k : 0 <= k < phi(N) }

reduced modulo the N-th cyclotomic polynomial.  The coefficient vector is an
integer tuple over a single positive denominator, with the content gcd
divided out, so the representation of a given field element is unique and
equality is tuple comparison.  All field operations are exact; a floating
point embedding at zeta_N = exp(2*pi*i/N) exists only for the positivity
checks that are analytic rather than algebraic.

Scalars of different orders interoperate by lifting to the lcm of the two
orders (Q(zeta_N) embeds in Q(zeta_M) whenever N divides M).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, InputError


def _poly_exact_div(num: list[int], den) -> list[int]:
    # Synthetic division of integer polynomials; den monic up to +-1 lead.
    num = list(num)
    den = list(den)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first, monic."""
    if n < 1:
        raise InputError(f"order must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Context:
    """Per-order tables: reduction rows for zeta^j and all powers zeta^m."""

    __slots__ = ("order", "phi", "powers", "roots")

    def __init__(self, order: int):
        cp = cyclotomic_polynomial(order)
        phi = len(cp) - 1
        self.order = order
        self.phi = phi
        top = [-c for c in cp[:phi]]  # zeta^phi in the power basis
        powers = []
        cur = None
        for m in range(2 * order):
            if m < phi:
                row = [0] * phi
                row[m] = 1
            else:
                prev = cur
                row = [0] + prev[:-1]
                carry = prev[-1]
                if carry:
                    row = [a + carry * b for a, b in zip(row, top)]
            cur = row
            powers.append(tuple(row))
        self.powers = tuple(powers)
        self.roots = tuple(
            cmath.exp(2j * cmath.pi * k / order) for k in range(phi)
        )


@lru_cache(maxsize=None)
def _context(order: int) -> _Context:
    return _Context(order)


def _reduce_conv(ctx: _Context, conv: list[int]) -> list[int]:
    # Fold coefficients of zeta^j (j >= phi) down into the power basis.
    phi = ctx.phi
    powers = ctx.powers
    out = conv[:phi]
    for j in range(phi, len(conv)):
        c = conv[j]
        if c:
            row = powers[j]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


class Scalar:
    """An element of Q(zeta_N) in canonical reduced form.

    Instances are immutable once constructed and safe to share.
    """

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int, num, den: int = 1):
        ctx = _context(order)
        num = list(num)
        if len(num) != ctx.phi:
            raise InputError(
                f"coefficient vector of length {len(num)} for order {order}"
                f" (expected {ctx.phi})"
            )
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-a for a in num]
        g = math.gcd(den, *(abs(a) for a in num)) if any(num) else den
        if g > 1:
            den //= g
            num = [a // g for a in num]
        if not any(num):
            den = 1
        self.order = order
        self.num = tuple(num)
        self.den = den

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "Scalar":
        return _cached_const(order, 0)

    @staticmethod
    def one(order: int = 1) -> "Scalar":
        return _cached_const(order, 1)

    @staticmethod
    def from_int(v: int, order: int = 1) -> "Scalar":
        phi = _context(order).phi
        return Scalar(order, [v] + [0] * (phi - 1), 1)

    @staticmethod
    def from_fraction(f, order: int = 1) -> "Scalar":
        f = Fraction(f)
        phi = _context(order).phi
        return Scalar(order, [f.numerator] + [0] * (phi - 1), f.denominator)

    @staticmethod
    def rational(p: int, q: int = 1, order: int = 1) -> "Scalar":
        phi = _context(order).phi
        return Scalar(order, [p] + [0] * (phi - 1), q)

    @staticmethod
    def root_of_unity(order: int, k: int = 1) -> "Scalar":
        """zeta_order^k as an element of Q(zeta_order)."""
        ctx = _context(order)
        return Scalar(order, list(ctx.powers[k % order]), 1)

    @staticmethod
    def coerce(v, order: int = 1) -> "Scalar":
        if isinstance(v, Scalar):
            return v
        if isinstance(v, int):
            return Scalar.from_int(v, order)
        if isinstance(v, Fraction):
            return Scalar.from_fraction(v, order)
        raise InputError(f"cannot coerce {type(v).__name__} to Scalar")

    # -- order handling --------------------------------------------------

    def lift(self, order: int) -> "Scalar":
        """Reinterpret inside Q(zeta_order); self.order must divide order."""
        if order == self.order:
            return self
        if order % self.order:
            raise InputError(
                f"cannot lift order {self.order} into order {order}"
            )
        ctx = _context(order)
        r = order // self.order
        out = [0] * ctx.phi
        for k, a in enumerate(self.num):
            if a:
                row = ctx.powers[k * r]
                for i in range(ctx.phi):
                    if row[i]:
                        out[i] += a * row[i]
        return Scalar(order, out, self.den)

    def _align(self, other: "Scalar"):
        if self.order == other.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    # -- field operations ------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Scalar.from_int(other, self.order)
        elif isinstance(other, Fraction):
            other = Scalar.from_fraction(other, self.order)
        elif not isinstance(other, Scalar):
            return NotImplemented
        a, b = self._align(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        # Hash through the minimal-order reduction so equal values of
        # different declared orders collide correctly.
        if not any(self.num):
            return hash((0,))
        if all(a == 0 for a in self.num[1:]):
            return hash((self.num[0], self.den))
        return hash((self.order, self.num, self.den))

    def __add__(self, other):
        other = Scalar.coerce(other, self.order)
        a, b = self._align(other)
        if a.den == b.den:
            return Scalar(a.order, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Scalar(
            a.order,
            [x * b.den + y * a.den for x, y in zip(a.num, b.num)],
            a.den * b.den,
        )

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.order = self.order
        s.num = tuple(-a for a in self.num)
        s.den = self.den
        return s

    def __sub__(self, other):
        other = Scalar.coerce(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other, self.order) - self

    def __mul__(self, other):
        other = Scalar.coerce(other, self.order)
        a, b = self._align(other)
        an, bn = a.num, b.num
        if len(an) == 1:
            return Scalar(a.order, [an[0] * bn[0]], a.den * b.den)
        conv = [0] * (2 * len(an) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        out = _reduce_conv(_context(a.order), conv)
        return Scalar(a.order, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if all(a == 0 for a in self.num[1:]):
            return Scalar(self.order, [self.den] + [0] * (len(self.num) - 1),
                          self.num[0])
        # Multiply the remaining Galois conjugates; the full product is the
        # field norm, a nonzero rational.
        prod = Scalar.one(self.order)
        for a in range(2, self.order + 1):
            if math.gcd(a, self.order) == 1 and a < self.order:
                prod = prod * self.galois(a)
        norm = self * prod
        if any(norm.num[1:]):
            raise ConsistencyError("field norm came out irrational")
        p, q = norm.num[0], norm.den
        return prod * Scalar.rational(q, p, self.order)

    def __truediv__(self, other):
        other = Scalar.coerce(other, self.order)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other, self.order) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, a: int) -> "Scalar":
        """Image under the automorphism zeta -> zeta^a, gcd(a, order) = 1."""
        ctx = _context(self.order)
        out = [0] * ctx.phi
        for k, c in enumerate(self.num):
            if c:
                row = ctx.powers[(k * a) % self.order]
                for i in range(ctx.phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Scalar(self.order, out, self.den)

    def conj(self) -> "Scalar":
        """Complex conjugation, zeta -> zeta^{-1}, extended Q-linearly."""
        if self.order <= 2:
            return self
        return self.galois(self.order - 1)

    # -- views -------------------------------------------------------------

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def embed(self) -> complex:
        """Float value at the canonical embedding zeta_N = exp(2*pi*i/N)."""
        roots = _context(self.order).roots
        return sum(a * r for a, r in zip(self.num, roots)) / self.den

    def to_json(self):
        return {"order": self.order, "num": list(self.num), "den": self.den}

    @staticmethod
    def from_json(doc) -> "Scalar":
        if isinstance(doc, int):
            return Scalar.from_int(doc)
        if isinstance(doc, list) and len(doc) == 2:
            return Scalar.rational(int(doc[0]), int(doc[1]))
        if isinstance(doc, dict):
            try:
                return Scalar(int(doc["order"]), [int(a) for a in doc["num"]],
                              int(doc["den"]))
            except KeyError as e:
                raise InputError(f"scalar document missing field {e}") from e
        raise InputError(f"cannot parse scalar from {doc!r}")

    def __repr__(self):
        if self.is_rational():
            body = str(Fraction(self.num[0], self.den))
        else:
            terms = []
            for k, a in enumerate(self.num):
                if not a:
                    continue
                if k == 0:
                    terms.append(str(a))
                else:
                    terms.append(f"{a}*z{self.order}^{k}" if k > 1
                                 else f"{a}*z{self.order}")
            body = " + ".join(terms).replace("+ -", "- ")
            if self.den != 1:
                body = f"({body})/{self.den}"
        return f"Scalar({body})"


@lru_cache(maxsize=None)
def _cached_const(order: int, v: int) -> Scalar:
    return Scalar.from_int(v, order)


def conj(x: Scalar) -> Scalar:
    """Complex conjugation on Q(zeta_N); involutive and multiplicative."""
    return x.conj()


def common_order(*orders: int) -> int:
    out = 1
    for n in orders:
        out = math.lcm(out, n)
    return out


def lift_all(values, order: int):
    return [v.lift(order) for v in values]
