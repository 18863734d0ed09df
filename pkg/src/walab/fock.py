"""Heisenberg and lattice (generalized) vertex algebra engine.

A state is a finite linear combination of monomials
``b_{i1}(-k1) ... b_{ir}(-kr) e^gamma``, where ``b_i`` runs over a fixed basis of
the Cartan space and ``gamma`` is a lattice point written in that basis.
``a(n)b`` always means the coefficient of ``z^{-n-1}`` in ``Y(a, z)b``; the
index ``n`` is a rational number so that fractional modes of generalized vertex
algebras are handled uniformly with integral ones.

Vertex operators of exponentials are expanded directly from the two
exponential factors; operators of general states are reduced to those by the
Borcherds iterate formula, peeling one Heisenberg mode at a time.
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Iterable, Sequence

from .numeric import exp_pi_i, format_rational, format_scalar, solve_linear

Modes = tuple  # sorted tuple of (basis_index, k) with k >= 1 meaning b_i(-k)
Point = tuple
Mono = tuple  # (Modes, Point)


class CutoffError(ValueError):
    """Requested computation exceeds the configured weight cutoff."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _norm_point(p) -> Point:
    return tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in p)


def _binom(p, j: int) -> Fraction:
    out = Fraction(1)
    for t in range(j):
        out = out * (p - t) / (t + 1)
    return out


def _add_into(acc: dict, terms: dict, c=1) -> None:
    for m, v in terms.items():
        w = acc.get(m, 0) + c * v
        if w:
            acc[m] = w
        else:
            acc.pop(m, None)


def _scaled(terms: dict, c) -> dict:
    if c == 1:
        return dict(terms)
    out = {}
    for m, v in terms.items():
        w = c * v
        if w:
            out[m] = w
    return out


class FockState:
    """Immutable finite linear combination of monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms = {m: v for m, v in (terms or {}).items() if v}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "FockState":
        s = cls.__new__(cls)
        s.terms = terms
        s._hash = None
        return s

    @classmethod
    def exp(cls, point: Sequence, coeff=1) -> "FockState":
        return cls._wrap({((), _norm_point(point)): coeff} if coeff else {})

    @classmethod
    def vacuum(cls, rank: int) -> "FockState":
        return cls.exp((0,) * rank)

    @classmethod
    def zero(cls) -> "FockState":
        return cls._wrap({})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockState") -> "FockState":
        out = dict(self.terms)
        _add_into(out, other.terms)
        return FockState._wrap(out)

    def __sub__(self, other: "FockState") -> "FockState":
        out = dict(self.terms)
        _add_into(out, other.terms, -1)
        return FockState._wrap(out)

    def __neg__(self):
        return FockState._wrap({m: -v for m, v in self.terms.items()})

    def __mul__(self, c) -> "FockState":
        return FockState._wrap(_scaled(self.terms, c))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "FockState":
        return self * (1 / _frac(c) if not hasattr(c, "inverse") else c.inverse())

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coefficient(self, mono: Mono):
        return self.terms.get(mono, 0)

    def points(self) -> set:
        return {p for (_, p) in self.terms}

    def depth(self) -> int:
        return max((sum(k for _, k in m) for m, _ in self.terms), default=0)

    def __repr__(self):
        return f"FockState({render(self)})"


def monomial(modes: Iterable[tuple[int, int]], point: Sequence) -> Mono:
    """Canonical monomial from pairs (basis_index, k>0) meaning b_i(-k)."""
    return (tuple(sorted(modes)), _norm_point(point))


def mono_depth(m: Mono) -> int:
    return sum(k for _, k in m[0])


@dataclass(frozen=True, eq=False)
class LatticeAlgebra:
    """Lattice (generalized) vertex algebra on a rational lattice with Gram matrix ``gram``.

    ``eps`` (optional) multiplies ``Y(e^x, z)e^y`` by ``eps(x, y)``; ``labels``
    name the basis vectors for rendering.  ``phase(x, y)`` is the skew-symmetry
    factor of the (modified) algebra.
    """

    gram: tuple
    labels: tuple
    eps: Callable | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, x: Sequence, y: Sequence):
        g = self.gram
        s = 0
        for i, xi in enumerate(x):
            if xi:
                row = g[i]
                for j, yj in enumerate(y):
                    if yj:
                        s += xi * row[j] * yj
        return s if isinstance(s, Fraction) else Fraction(s)

    def norm(self, x):
        return self.pair(x, x)

    def _ginv(self):
        key = ("ginv",)
        if key not in self._cache:
            n = self.rank
            cols = []
            for j in range(n):
                aug = [[_frac(self.gram[i][c]) for c in range(n)] + [Fraction(int(i == j))] for i in range(n)]
                cols.append(solve_linear(aug))
            self._cache[key] = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        return self._cache[key]

    def sign(self, x, y):
        return 1 if self.eps is None else self.eps(x, y)

    def phase(self, x, y):
        """Omega(x, y) = exp(pi i (x|y)) eps(x,y)/eps(y,x)."""
        w = exp_pi_i(self.pair(x, y))
        if self.eps is not None:
            w = w * self.eps(x, y) / self.eps(y, x)
        return w

    def weight(self, m: Mono) -> Fraction:
        return mono_depth(m) + self.norm(m[1]) / 2

    def vacuum(self) -> FockState:
        return FockState.vacuum(self.rank)

    def exp(self, point) -> FockState:
        return FockState.exp(point)

    def heis(self, h: Sequence, point=None) -> FockState:
        """h(-1) e^point (the vacuum when point is None)."""
        return mode_apply(self, h, -1, FockState.exp(point if point is not None else (0,) * self.rank))

    def unit(self, i: int):
        return tuple(1 if j == i else 0 for j in range(self.rank))


# Heisenberg action ----------------------------------------------------------


def _heis_terms(alg: LatticeAlgebra, h: Sequence, n: int, terms: dict) -> dict:
    out: dict = {}
    if n < 0:
        k = -n
        for (modes, pt), c in terms.items():
            for i, hi in enumerate(h):
                if hi:
                    lst = list(modes)
                    insort(lst, (i, k))
                    key = (tuple(lst), pt)
                    w = out.get(key, 0) + c * hi
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return out
    if n == 0:
        for (modes, pt), c in terms.items():
            w = alg.pair(h, pt)
            if w:
                out[(modes, pt)] = c * w
        return out
    gh = [alg.pair(h, alg.unit(j)) for j in range(alg.rank)]
    for (modes, pt), c in terms.items():
        seen = set()
        for pos, (j, k) in enumerate(modes):
            if k != n or not gh[j] or (j, k) in seen:
                continue
            seen.add((j, k))
            mult = sum(1 for x in modes if x == (j, k))
            rest = modes[:pos] + modes[pos + 1:]
            key = (rest, pt)
            w = out.get(key, 0) + c * n * gh[j] * mult
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def mode_apply(alg: LatticeAlgebra, h: Sequence, n: int, s: FockState) -> FockState:
    """Apply the Heisenberg mode h(n)."""
    return FockState._wrap(_heis_terms(alg, h, n, s.terms))


def creation_poly(alg: LatticeAlgebra, poly: FockState, s: FockState) -> FockState:
    """Act on ``s`` by the creation-operator polynomial whose value on the vacuum is ``poly``."""
    out: dict = {}
    for (pm, pp), c in poly.terms.items():
        if any(pp):
            raise ValueError("creation polynomial must have zero charge")
        for (m, pt), d in s.terms.items():
            key = (tuple(sorted(m + pm)), pt)
            w = out.get(key, 0) + c * d
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return FockState._wrap(out)


# vertex operators of exponentials ------------------------------------------


def _exp_plus(alg, alpha, terms: dict, pmax: int) -> list[dict]:
    """E^+_p applied to terms, for p = 0..pmax (E^+ = exp(sum_{n>0} alpha(n) z^{-n}/(-n)))."""
    out = [terms]
    for p in range(1, pmax + 1):
        acc: dict = {}
        for j in range(1, p + 1):
            if out[p - j]:
                _add_into(acc, _heis_terms(alg, alpha, j, out[p - j]), Fraction(-1, p))
        out.append(acc)
    return out


def _exp_minus(alg, alpha, terms: dict, k: int) -> dict:
    seq = [terms]
    for q in range(1, k + 1):
        acc: dict = {}
        for j in range(1, q + 1):
            if seq[q - j]:
                _add_into(acc, _heis_terms(alg, alpha, -j, seq[q - j]), Fraction(1, q))
        seq.append(acc)
    return seq[k]


def vo_coeff(alg: LatticeAlgebra, alpha: Sequence, n, s: FockState) -> FockState:
    """Coefficient of z^{-n-1} in Y(e^alpha, z)s."""
    alpha = _norm_point(alpha)
    n = _frac(n)
    by_point: dict = {}
    for (m, pt), c in s.terms.items():
        by_point.setdefault(pt, {})[(m, pt)] = c
    out: dict = {}
    for pt, terms in by_point.items():
        ab = alg.pair(alpha, pt)
        shift = -n - 1 - ab  # k - p must equal this
        if shift.denominator != 1:
            continue
        shift = int(shift)
        pmax = max(mono_depth(m) for m in terms)
        plus = _exp_plus(alg, alpha, terms, pmax)
        target = tuple(a + b for a, b in zip(alpha, pt))
        target = _norm_point(target)
        sgn = alg.sign(alpha, pt)
        for p in range(pmax + 1):
            k = p + shift
            if k < 0 or not plus[p]:
                continue
            res = _exp_minus(alg, alpha, plus[p], k)
            for (mm, _), v in res.items():
                key = (mm, target)
                w = out.get(key, 0) + sgn * v
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
    return FockState._wrap(out)


# general products -----------------------------------------------------------


def _max_mode(alg, ma: Mono, mb: Mono) -> Fraction:
    """Largest n with a(n)b possibly nonzero (the result weight must stay >= its lattice minimum)."""
    target = tuple(x + y for x, y in zip(ma[1], mb[1]))
    return alg.weight(ma) + alg.weight(mb) - 1 - alg.norm(target) / 2


def _product_mono(alg: LatticeAlgebra, ma: Mono, n: Fraction, mb: Mono) -> dict:
    key = ("p", ma, n, mb)
    cache = alg._cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    if n > _max_mode(alg, ma, mb):
        res: dict = {}
    else:
        modes, pa = ma
        if not modes:
            res = vo_coeff(alg, pa, n, FockState._wrap({mb: 1})).terms
        else:
            (i, k) = modes[0]
            rest = (modes[1:], pa)
            h = alg.unit(i)
            p = -k
            res = {}
            b = {mb: 1}
            # h(p - j) (rest(n + j) b)
            j = 0
            while n + j <= _max_mode(alg, rest, mb):
                inner = _product_mono(alg, rest, n + j, mb)
                if inner:
                    _add_into(res, _heis_terms(alg, h, p - j, inner), (-1) ** j * _binom(p, j))
                j += 1
            # - (-1)^p rest(p + n - j) h(j) b
            for j in range(0, mono_depth(mb) + 1):
                hb = _heis_terms(alg, h, j, b)
                if not hb:
                    continue
                acc: dict = {}
                for mm, c in hb.items():
                    _add_into(acc, _product_mono(alg, rest, p + n - j, mm), c)
                _add_into(res, acc, -((-1) ** j) * _binom(p, j) * (-1) ** (p % 2))
    cache[key] = res
    return res


def product(alg: LatticeAlgebra, a: FockState, n, b: FockState) -> FockState:
    """a(n)b, the coefficient of z^{-n-1} in Y(a, z)b."""
    n = _frac(n)
    out: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = _product_mono(alg, ma, n, mb)
            if r:
                _add_into(out, r, ca * cb)
    return FockState._wrap(out)


def max_mode(alg: LatticeAlgebra, a: FockState, b: FockState) -> Fraction | None:
    vals = [_max_mode(alg, ma, mb) for ma in a.terms for mb in b.terms]
    return max(vals) if vals else None


def expansion(alg: LatticeAlgebra, a: FockState, b: FockState, count: int) -> list[tuple[Fraction, FockState]]:
    """The first ``count`` coefficients (n, a(n)b) of Y(a, z)b, from the most singular one down."""
    top = max_mode(alg, a, b)
    if top is None:
        return []
    pa = next(iter(a.terms))[1]
    pb = next(iter(b.terms))[1]
    # n is congruent to -(pa|pb) - 1 modulo 1
    r = (-alg.pair(pa, pb) - 1) % 1
    n0 = math.floor(top - r) + r
    return [(n0 - j, product(alg, a, n0 - j, b)) for j in range(count)]


# Virasoro -------------------------------------------------------------------


def conformal_vector(alg: LatticeAlgebra) -> FockState:
    gi = alg._ginv()
    out = FockState.zero()
    vac = alg.vacuum()
    for i in range(alg.rank):
        for j in range(alg.rank):
            if gi[i][j]:
                t = mode_apply(alg, alg.unit(i), -1, mode_apply(alg, alg.unit(j), -1, vac))
                out = out + t * (gi[i][j] / 2)
    return out


def virasoro_mode(alg: LatticeAlgebra, m: int, s: FockState) -> FockState:
    """L_m from the normally ordered quadratic Heisenberg expression."""
    gi = alg._ginv()
    out: dict = {}
    d = s.depth()
    r_lo = -((-m) // 2)  # ceil(m/2)
    for r in range(r_lo, max(d, 0) + 1):
        l = m - r
        if l > r:
            continue
        factor = Fraction(1, 2) if l == r else Fraction(1)
        for j in range(alg.rank):
            inner = _heis_terms(alg, alg.unit(j), r, s.terms)
            if not inner:
                continue
            for i in range(alg.rank):
                g = gi[i][j]
                if g:
                    _add_into(out, _heis_terms(alg, alg.unit(i), l, inner), factor * g)
    return FockState._wrap(out)


def translate(alg: LatticeAlgebra, s: FockState) -> FockState:
    return virasoro_mode(alg, -1, s)


# enumeration of basis states -------------------------------------------------


def lattice_points(alg: LatticeAlgebra, max_norm, coset: Sequence | None = None) -> list[Point]:
    """Points x = coset + integer vector with (x|x) <= max_norm (small ranks only)."""
    n = alg.rank
    coset = tuple(_frac(c) for c in (coset or (0,) * n))
    gi = alg._ginv()
    bounds = [math.isqrt(int(math.ceil(float(max_norm * gi[i][i])))) + 2 for i in range(n)]
    pts = []
    for v in iproduct(*(range(-b, b + 1) for b in bounds)):
        x = tuple(c + t for c, t in zip(coset, v))
        if alg.norm(x) <= max_norm:
            pts.append(_norm_point(x))
    pts.sort()
    return pts


def _colored_partitions(total: int, colors: int) -> list[Modes]:
    out = []

    def rec(rem, max_part, max_color, acc):
        if rem == 0:
            out.append(tuple(sorted(acc)))
            return
        for k in range(min(rem, max_part), 0, -1):
            for c in range(colors - 1 if k < max_part else max_color, -1, -1):
                acc.append((c, k))
                rec(rem - k, k, c, acc)
                acc.pop()

    rec(total, total, colors - 1, [])
    return out


def basis_states(alg: LatticeAlgebra, max_weight, coset: Sequence | None = None) -> list[FockState]:
    """All monomials of weight <= max_weight on the given coset, in a fixed order."""
    max_weight = _frac(max_weight)
    out = []
    for pt in lattice_points(alg, 2 * max_weight, coset):
        room = max_weight - alg.norm(pt) / 2
        for d in range(0, int(math.floor(room)) + 1):
            for modes in _colored_partitions(d, alg.rank):
                out.append(FockState._wrap({(modes, pt): Fraction(1)}))
    return out


def state_weight(alg: LatticeAlgebra, s: FockState) -> Fraction:
    ws = {alg.weight(m) for m in s.terms}
    if len(ws) > 1:
        raise ValueError("state is not weight homogeneous")
    return ws.pop() if ws else Fraction(0)


# property checks -------------------------------------------------------------


def _charge(s: FockState) -> Point:
    pts = s.points()
    if len(pts) != 1:
        raise ValueError("state is not charge homogeneous")
    return next(iter(pts))


def commutator_check(alg: LatticeAlgebra, a: FockState, n: int, b: FockState, m: int,
                     probe: FockState, cutoff=4) -> tuple[bool, FockState, FockState]:
    """[a(n), b(m)] probe versus sum_k C(n,k) (a(k)b)(n+m-k) probe."""
    for s in (a, b, probe):
        if s and max(alg.weight(t) for t in s.terms) > cutoff:
            raise CutoffError(f"state weight exceeds cutoff {cutoff}")
    pa, pb = _charge(a), _charge(b)
    if alg.pair(pa, pb).denominator != 1 or alg.phase(pa, pb) != 1:
        raise ValueError("commutator formula needs mutually local charges")
    lhs = product(alg, a, n, product(alg, b, m, probe)) - product(alg, b, m, product(alg, a, n, probe))
    rhs = FockState.zero()
    top = max_mode(alg, a, b)
    k = 0
    while top is not None and k <= top:
        ab = product(alg, a, k, b)
        if ab:
            rhs = rhs + product(alg, ab, n + m - k, probe) * _binom(n, k)
        k += 1
    return lhs == rhs, lhs, rhs


def skew_symmetry_check(alg: LatticeAlgebra, a: FockState, b: FockState, omega, cutoff: int = 4):
    """Y(a,z)b = Omega e^{zL_{-1}} Y(b, e^{-pi i}z)a, compared on ``cutoff + 1`` leading coefficients.

    Returns (ok, first mismatching n or None).
    """
    lhs = expansion(alg, a, b, cutoff + 1)
    top_ba = max_mode(alg, b, a)
    for n, left in lhs:
        right = FockState.zero()
        j = 0
        while top_ba is not None and n + j <= top_ba:
            t = product(alg, b, n + j, a)
            if t:
                for _ in range(j):
                    t = translate(alg, t)
                right = right + t * (exp_pi_i(n + j + 1) * Fraction(1, math.factorial(j)))
            j += 1
        if not (left - right * omega).is_zero():
            return False, n
    return True, None


def leading_exponent(alg: LatticeAlgebra, a: FockState, b: FockState) -> Fraction:
    """t such that z^t Y(a,z)b is regular at z = 0 with nonzero value."""
    for n, c in expansion(alg, a, b, 16):
        if c:
            return n + 1
    raise ValueError("no nonzero coefficient found")


def _simplify_scalar(x):
    from .numeric import simplify

    return simplify(x)


# rendering -------------------------------------------------------------------


def _render_point(alg: LatticeAlgebra | None, pt: Point) -> str:
    labels = alg.labels if alg is not None else tuple(f"b{i + 1}" for i in range(len(pt)))
    parts = []
    for c, lab in zip(pt, labels):
        if not c:
            continue
        c = _frac(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else format_rational(mag)
        parts.append((sign, f"{coef}{lab}"))
    if not parts:
        return ""
    s = "".join(f"{sg}{t}" for sg, t in parts)
    return s[1:] if s.startswith("+") else s


def render(s: FockState, alg: LatticeAlgebra | None = None) -> str:
    if not s.terms:
        return "0"
    out = []
    for (modes, pt), c in sorted(s.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        labels = alg.labels if alg is not None else tuple(f"b{i + 1}" for i in range(len(pt)))
        body = "".join(f"{labels[i]}(-{k})" for i, k in sorted(modes, key=lambda x: (x[1], x[0]), reverse=True))
        ps = _render_point(alg, pt)
        tail = f"e^{{{ps}}}" if ps else ("|0⟩" if not body else "")
        out.append(f"({format_scalar(_simplify_scalar(c))}) {body}{' ' if body and tail else ''}{tail}")
    return " + ".join(out)


# standard algebras ------------------------------------------------------------


def root_lattice_algebra(rs) -> LatticeAlgebra:
    """eps-modified lattice VOA of a simply-laced root lattice, in simple-root coordinates."""
    from .cocycle import lattice_epsilon

    eps = lattice_epsilon(rs)
    gram = tuple(tuple(int(x) for x in row) for row in rs.simple_gram)

    def sign(x, y):
        return eps.sign_coeffs(x, y)

    labels = tuple(f"α{i + 1}" for i in range(rs.rank))
    return LatticeAlgebra(gram, labels, sign, f"V_{rs.label}")


def dual_a1_algebra(modified: bool = True) -> LatticeAlgebra:
    """The lattice GVA on the dual of the A1 root lattice; points are multiples of the root.

    With ``modified`` the Z_4 quasi 2-cocycle is applied, with charge 2x mod 4 at x*alpha.
    """
    from .cocycle import z4_epsilon

    eps4 = z4_epsilon()

    def sign(x, y):
        a, b = int(2 * x[0]) % 4, int(2 * y[0]) % 4
        v = eps4.eps[((a,), (b,))]
        return int(v.to_rational())

    return LatticeAlgebra(((2,),), ("α",), sign if modified else None, "V_{A1°}" + ("^ε" if modified else ""))


def projected_algebra(rs, basis: Sequence[Sequence], labels: Sequence[str], name: str) -> LatticeAlgebra:
    """Unmodified lattice GVA on a rational lattice spanned by ``basis`` (ambient vectors of rs)."""
    gram = tuple(tuple(rs.form(x, y) for y in basis) for x in basis)
    return LatticeAlgebra(gram, tuple(labels), None, name)
