"""Root systems of the Deligne series (plus C2) with the normalized form (theta|theta) = 2.

Coordinates are exact rational vectors in an ambient Euclidean space whose
form is ``scale`` times the standard dot product.  Simple roots follow the
Bourbaki labeling; the Dynkin orientation is i -> j whenever i < j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

from .numeric import format_rational, solve_linear

Vector = tuple[Fraction, ...]

LABELS = ("A1", "A2", "C2", "G2", "D4", "F4", "E6", "E7", "E8")
DELIGNE = ("A1", "A2", "G2", "D4", "F4", "E6", "E7", "E8")
SIMPLY_LACED = ("A1", "A2", "D4", "E6", "E7", "E8")
# the simply-laced members with a nonempty g_{-1/2}
LATTICE_SUITE = ("A2", "D4", "E6", "E7", "E8")

F = Fraction
H = Fraction(1, 2)


def vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def unit(n: int, i: int, c=1) -> Vector:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(n))


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def vneg(x: Vector) -> Vector:
    return tuple(-a for a in x)


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


def _simple_roots(label: str) -> tuple[int, Fraction, list[Vector]]:
    """(ambient_dim, scale, simple roots)."""
    if label == "A1":
        return 2, F(1), [vec(1, -1)]
    if label == "A2":
        return 3, F(1), [vec(1, -1, 0), vec(0, 1, -1)]
    if label == "C2":
        # B2 coordinates; alpha1 short, alpha2 long
        return 2, F(1), [vec(0, 1), vec(1, -1)]
    if label == "G2":
        # form is one third of the dot product so the long roots have norm 2
        return 3, F(1, 3), [vec(1, -1, 0), vec(-2, 1, 1)]
    if label == "D4":
        return 4, F(1), [vec(1, -1, 0, 0), vec(0, 1, -1, 0), vec(0, 0, 1, -1), vec(0, 0, 1, 1)]
    if label == "F4":
        return 4, F(1), [vec(0, 1, -1, 0), vec(0, 0, 1, -1), vec(0, 0, 0, 1), vec(H, -H, -H, -H)]
    if label in ("E6", "E7", "E8"):
        a1 = vec(H, -H, -H, -H, -H, -H, -H, H)
        a2 = vec(1, 1, 0, 0, 0, 0, 0, 0)
        rest = [vsub(unit(8, i - 2), unit(8, i - 3)) for i in range(3, 9)]
        n = int(label[1])
        return 8, F(1), [a1, a2] + rest[: n - 2]
    raise DomainError(f"unsupported root system {label!r}")


def _explicit_roots(label: str) -> list[Vector]:
    """The epsilon-coordinate root lists for D4 and E8."""
    n = {"D4": 4, "E8": 8}[label]
    out = []
    for i, j in combinations(range(n), 2):
        for mu, nu in product((1, -1), repeat=2):
            v = [F(0)] * n
            v[i], v[j] = F(mu), F(nu)
            out.append(tuple(v))
    if label == "E8":
        for signs in product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                out.append(tuple(F(s, 2) for s in signs))
    return out


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    ambient_dim: int
    scale: Fraction
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    theta: Vector
    orientation: tuple[tuple[int, ...], ...]

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return self.scale * sum((a * b for a, b in zip(x, y)), F(0))

    def norm(self, x: Sequence) -> Fraction:
        return self.form(x, x)

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.ambient_dim
        return tuple(tuple(self.scale if i == j else F(0) for j in range(n)) for i in range(n))

    @cached_property
    def simple_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        s = self.simple_roots
        return tuple(tuple(self.form(a, b) for b in s) for a in s)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        s = self.simple_roots
        return tuple(tuple(int(2 * self.form(a, b) / self.norm(a)) for b in s) for a in s)

    @cached_property
    def _inv_simple_gram(self):
        g = self.simple_gram
        n = self.rank
        cols = []
        for k in range(n):
            aug = [list(g[i]) + [F(int(i == k))] for i in range(n)]
            cols.append(solve_linear(aug))
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    @cached_property
    def _coeff_memo(self) -> dict:
        return {}

    def coeffs(self, x: Sequence) -> tuple[Fraction, ...]:
        """Expansion of x (assumed in the span of the roots) in the simple roots."""
        x = tuple(x)
        memo = self._coeff_memo
        if x in memo:
            return memo[x]
        out = self._solve_coeffs(x)
        if len(memo) < 100000:
            memo[x] = out
        return out

    def _solve_coeffs(self, x: Vector) -> tuple[Fraction, ...]:
        pair = [self.form(a, x) for a in self.simple_roots]
        inv = self._inv_simple_gram
        return tuple(sum((inv[i][j] * pair[j] for j in range(self.rank)), F(0)) for i in range(self.rank))

    def from_coeffs(self, c: Sequence) -> Vector:
        out = [F(0)] * self.ambient_dim
        for ci, a in zip(c, self.simple_roots):
            if ci:
                for k in range(self.ambient_dim):
                    out[k] += ci * a[k]
        return tuple(out)

    def height(self, x: Sequence) -> Fraction:
        return sum(self.coeffs(x), F(0))

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.roots if self.height(r) > 0)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_root(self, x) -> bool:
        return tuple(x) in self.root_set

    @cached_property
    def rho(self) -> Vector:
        tot = (F(0),) * self.ambient_dim
        for r in self.positive_roots:
            tot = vadd(tot, r)
        return vscale(H, tot)

    @property
    def dim(self) -> int:
        return len(self.roots) + self.rank

    @property
    def simply_laced(self) -> bool:
        return len({self.norm(r) for r in self.roots}) == 1

    def reflect(self, alpha: Vector, x: Vector) -> Vector:
        c = 2 * self.form(alpha, x) / self.norm(alpha)
        return vsub(x, vscale(c, alpha))

    def to_json(self) -> dict:
        fv = lambda v: [format_rational(c) for c in v]
        return {
            "label": self.label,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "form_scale": format_rational(self.scale),
            "simple_roots": [fv(a) for a in self.simple_roots],
            "theta": fv(self.theta),
            "roots": [fv(r) for r in self.roots],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def reflection_closure(simple: Sequence[Vector], scale: Fraction) -> list[Vector]:
    """All roots as the orbit of the simple roots under simple reflections."""
    seen = set(simple)
    frontier = list(simple)
    form = lambda x, y: scale * sum((a * b for a, b in zip(x, y)), F(0))
    while frontier:
        nxt = []
        for x in frontier:
            for a in simple:
                c = 2 * form(a, x) / form(a, a)
                y = vsub(x, vscale(c, a))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


_CACHE: dict[str, RootSystem] = {}


def build(label: str) -> RootSystem:
    """Construct the root system ``label`` (one of LABELS)."""
    if label in _CACHE:
        return _CACHE[label]
    if label not in LABELS:
        raise DomainError(f"unsupported root system {label!r}; expected one of {LABELS}")
    amb, scale, simple = _simple_roots(label)
    roots = sorted(_explicit_roots(label)) if label in ("D4", "E8") else reflection_closure(simple, scale)
    rank = len(simple)
    orient = tuple(
        tuple(
            0 if i == j or scale * sum(a * b for a, b in zip(simple[i], simple[j])) == 0 else (1 if i < j else -1)
            for j in range(rank)
        )
        for i in range(rank)
    )
    rs = RootSystem(label, rank, amb, scale, tuple(roots), tuple(simple), (F(0),) * amb, orient)
    heights = {r: rs.height(r) for r in roots}
    top = max(heights.values())
    tops = [r for r in roots if heights[r] == top]
    if len(tops) != 1:
        raise AssertionError(f"{label}: highest root not unique")
    rs = RootSystem(label, rank, amb, scale, tuple(roots), tuple(simple), tops[0], orient)
    _CACHE[label] = rs
    return rs


def comarks(rs: RootSystem) -> tuple[Fraction, ...]:
    """Coefficients of theta^vee in the simple coroots."""
    c = rs.coeffs(rs.theta)
    theta_norm = rs.norm(rs.theta)
    return tuple(ci * rs.norm(a) / theta_norm for ci, a in zip(c, rs.simple_roots))


def dual_coxeter(rs: RootSystem) -> Fraction:
    return 1 + sum(comarks(rs), F(0))


@dataclass(frozen=True)
class NaturalComponent:
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    highest_root: Vector
    long_norm: Fraction
    dual_coxeter: Fraction  # with respect to the restricted form
    dual_coxeter_normalized: Fraction  # with respect to the form making long roots norm 2

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def dim(self) -> int:
        return len(self.roots) + self.rank


@dataclass(frozen=True)
class MinimalGradation:
    s_plus_half: tuple[Vector, ...]
    s_minus_half: tuple[Vector, ...]
    phi_natural: tuple[Vector, ...]
    natural_components: tuple[NaturalComponent, ...]
    natural_rank: int
    flags: tuple[str, ...] = field(default=())

    @property
    def natural_dim(self) -> int:
        return len(self.phi_natural) + self.natural_rank

    @property
    def abelian_rank(self) -> int:
        """Dimension of the center of g-natural (nonzero only for A2)."""
        return self.natural_rank - sum(c.rank for c in self.natural_components)


def _connected_components(rs: RootSystem, roots: Sequence[Vector]) -> list[list[Vector]]:
    remaining = set(roots)
    comps = []
    for r in roots:
        if r not in remaining:
            continue
        comp = [r]
        remaining.discard(r)
        stack = [r]
        while stack:
            x = stack.pop()
            for y in list(remaining):
                if rs.form(x, y) != 0:
                    remaining.discard(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _component(rs: RootSystem, roots: list[Vector]) -> NaturalComponent:
    pos = [r for r in roots if rs.height(r) > 0]
    posset = set(pos)
    simple = [r for r in pos if not any(vsub(r, s) in posset for s in pos if s != r)]
    simple.sort(key=lambda r: rs.coeffs(r))
    top = max(pos, key=rs.height)
    # comarks of the component; coroot ratios are independent of the form scale
    mat = [[rs.form(a, b) for b in simple] for a in simple]
    aug = [list(mat[i]) + [rs.form(simple[i], top)] for i in range(len(simple))]
    c = solve_linear(aug)
    h_std = 1 + sum((ci * rs.norm(a) / rs.norm(top) for ci, a in zip(c, simple)), F(0))
    # restricted form: kappa(t, t) = sum over component roots of (beta|t)^2 = 2 h (t|t)
    kappa_tt = sum((rs.form(b, top) ** 2 for b in roots), F(0))
    h_restricted = kappa_tt / (2 * rs.norm(top))
    return NaturalComponent(tuple(roots), tuple(simple), top, rs.norm(top), h_restricted, h_std)


def minimal_gradation(rs: RootSystem) -> MinimalGradation:
    t = rs.theta
    sp = tuple(r for r in rs.roots if rs.form(r, t) == 1)
    sm = tuple(r for r in rs.roots if rs.form(r, t) == -1)
    nat = tuple(r for r in rs.roots if rs.form(r, t) == 0)
    comps = tuple(_component(rs, c) for c in _connected_components(rs, nat))
    flags = []
    for c in comps:
        if c.long_norm != 2:
            flags.append(f"component of rank {c.rank} has long-root norm {format_rational(c.long_norm)} in the restricted form")
    if rs.label == "F4":
        flags.append("F4: natural component C3 dual Coxeter number taken from the restricted-form trace")
    return MinimalGradation(sp, sm, nat, comps, rs.rank - 1, tuple(flags))


def is_dominant_integral(rs: RootSystem, lam: Sequence) -> bool:
    for a in rs.simple_roots:
        v = 2 * rs.form(lam, a) / rs.norm(a)
        if v.denominator != 1 or v < 0:
            return False
    return True


def weyl_dim(rs: RootSystem, highest_weight: Sequence) -> Fraction:
    lam = tuple(F(x) for x in highest_weight)
    if not is_dominant_integral(rs, lam):
        raise DomainError("highest weight is not dominant integral")
    lr = vadd(lam, rs.rho)
    num, den = F(1), F(1)
    for a in rs.positive_roots:
        num *= rs.form(lr, a)
        den *= rs.form(rs.rho, a)
    return num / den


def deligne_dim(h) -> Fraction:
    h = F(h)
    return 2 * (h + 1) * (5 * h - 6) / (h + 6)


def deligne_dim_2theta(h) -> Fraction:
    h = F(h)
    return 5 * h * h * (2 * h + 3) * (5 * h - 6) / ((h + 12) * (h + 6))


def deligne_checks(rs: RootSystem) -> dict:
    h = dual_coxeter(rs)
    rep = {"label": rs.label, "h_vee": format_rational(h)}
    if rs.label not in DELIGNE:
        rep.update(status="skipped", note=f"{rs.label} is not in the Deligne series")
        return rep
    dim = rs.dim
    w2 = weyl_dim(rs, vscale(2, rs.theta))
    f1, f2 = deligne_dim(h), deligne_dim_2theta(h)
    ok = dim == f1 and w2 == f2
    rep.update(
        status="pass" if ok else "fail",
        dim=dim,
        dim_formula=format_rational(f1),
        weyl_dim_2theta=format_rational(w2),
        dim_2theta_formula=format_rational(f2),
    )
    return rep
