"""Exact scalars: rationals (stdlib ``Fraction``) and cyclotomic numbers.

Rationals are plain :class:`fractions.Fraction` values.  A :class:`Cyclotomic`
is an element of Q(zeta_N) stored in the power basis 1, z, ..., z^(phi(N)-1)
reduced modulo the N-th cyclotomic polynomial, so equality is coefficientwise.
Elements of different orders are coerced to the lcm order before arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]

DEFAULT_ORDER = 8


class IncompatibleOrderError(ValueError):
    """A root of unity was requested outside the ambient cyclotomic field."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, low degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int, size: int) -> tuple[tuple[Fraction, ...], ...]:
    # reduced images of z^0 .. z^(size-1) in the power basis
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(size):
        rows.append(tuple(cur))
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


def _reduce(coeffs: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        out = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        return tuple(out)
    table = _power_table(n, len(coeffs))
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            row = table[k]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


class Cyclotomic:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable, order: int = DEFAULT_ORDER):
        self.order = int(order)
        self.coeffs = _reduce([_as_fraction(c) for c in coeffs], self.order)
        self._hash = None

    # construction helpers
    @classmethod
    def rational(cls, x, order: int = DEFAULT_ORDER) -> "Cyclotomic":
        return cls([x], order)

    @classmethod
    def zeta_power(cls, k: int, order: int = DEFAULT_ORDER) -> "Cyclotomic":
        k %= order
        return cls(_power_table(order, k + 1)[k], order)

    # coercion
    def _at_order(self, m: int) -> tuple[Fraction, ...]:
        if m == self.order:
            return self.coeffs
        step = m // self.order
        spread = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            spread[i * step] = c
        return _reduce(spread, m)

    def _coerce(self, other) -> tuple[int, tuple[Fraction, ...], tuple[Fraction, ...]] | None:
        if isinstance(other, Cyclotomic):
            m = _lcm(self.order, other.order)
            return m, self._at_order(m), other._at_order(m)
        try:
            r = _as_fraction(other)
        except TypeError:
            return None
        return self.order, self.coeffs, _reduce([r], self.order)

    # predicates
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        m, a, b = c
        return Cyclotomic([x + y for x, y in zip(a, b)], m)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic([-x for x in self.coeffs], self.order)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        m, a, b = c
        return Cyclotomic([x - y for x, y in zip(a, b)], m)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        m, a, b = c
        return Cyclotomic([y - x for x, y in zip(a, b)], m)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        m, a, b = c
        if not isinstance(other, Cyclotomic):
            s = b[0]
            return Cyclotomic([x * s for x in a], m)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(prod, m)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        deg = len(self.coeffs)
        # column j of the multiplication matrix is self * z^j
        cols = [(self * Cyclotomic.zeta_power(j, self.order)).coeffs for j in range(deg)]
        mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        sol = solve_linear(mat)
        return Cyclotomic(sol, self.order)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        r = _as_fraction(other)
        if r == 0:
            raise ZeroDivisionError("division by zero")
        return Cyclotomic([x / r for x in self.coeffs], self.order)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Cyclotomic([1], self.order)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        out = Cyclotomic([0], self.order)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclotomic.zeta_power(-i, self.order) * c
        return out

    # comparison
    def __eq__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        _, a, b = c
        return a == b

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                m, co = _minimal_form(self)
                self._hash = hash((m, co))
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self}, order={self.order})"

    def __str__(self):
        return format_scalar(self)


def _minimal_form(x: Cyclotomic) -> tuple[int, tuple[Fraction, ...]]:
    # smallest divisor order d (d even or N odd) whose field contains x
    n = x.order
    for d in range(1, n + 1):
        if n % d:
            continue
        deg = euler_phi(d)
        step = n // d
        basis = [Cyclotomic.zeta_power(step * j, n).coeffs for j in range(deg)]
        rows = [[basis[j][i] for j in range(deg)] + [x.coeffs[i]] for i in range(len(x.coeffs))]
        sol = solve_linear(rows, allow_overdetermined=True)
        if sol is not None:
            return d, tuple(sol)
    return n, x.coeffs


def solve_linear(aug: list[list[Fraction]], allow_overdetermined: bool = False):
    """Solve an augmented system exactly; returns None when inconsistent (overdetermined mode)."""
    rows = [list(r) for r in aug]
    nvar = len(rows[0]) - 1
    piv_cols = []
    r = 0
    for col in range(nvar):
        p = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            if allow_overdetermined:
                return None
            raise ValueError("inconsistent linear system")
    if r < nvar:
        if allow_overdetermined:
            return None
        raise ValueError("singular linear system")
    sol = [Fraction(0)] * nvar
    for i, col in enumerate(piv_cols):
        sol[col] = rows[i][-1]
    return sol


def root_of_unity(num: int, den: int, order: int = DEFAULT_ORDER) -> Cyclotomic:
    """exp(2*pi*i*num/den) inside Q(zeta_order)."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    if order % den:
        raise IncompatibleOrderError(f"1/{den} turn is not in Q(zeta_{order})")
    return Cyclotomic.zeta_power(num * (order // den), order)


def exp_pi_i(r, order: int = DEFAULT_ORDER) -> Cyclotomic:
    """exp(pi*i*r) for rational r."""
    r = _as_fraction(r)
    return root_of_unity(r.numerator, 2 * r.denominator, order)


def root_of_unity_log(x, order: int = DEFAULT_ORDER) -> Fraction | None:
    """Return t in [0,1) with x = exp(2*pi*i*t), or None if x is not a root of unity of the given order."""
    for k in range(order):
        if x == Cyclotomic.zeta_power(k, order):
            return Fraction(k, order)
    return None


def is_zero(x) -> bool:
    return x == 0


def format_rational(x) -> str:
    x = _as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def format_scalar(x) -> str:
    """Render "a/b" for rationals and "c0 + c1*zeta8^1 + ..." for cyclotomics."""
    if not isinstance(x, Cyclotomic):
        return format_rational(x)
    if x.is_rational():
        return format_rational(x.coeffs[0])
    parts = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(format_rational(c))
        else:
            parts.append(f"{format_rational(c)}·ζ{x.order}^{i}")
    return " + ".join(parts)


def simplify(x):
    """Demote rational cyclotomics to Fraction so the common case stays cheap."""
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.coeffs[0]
    if isinstance(x, int):
        return Fraction(x)
    return x
