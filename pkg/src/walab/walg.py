"""Minimal W-algebra structure data: central charge, the natural form and lambda-bracket records.

For simply-laced g the Lie algebra is realized as the weight-one space of the
eps-modified lattice vertex algebra, with bracket a(0)b and invariant form
given by a(1)b = (a|b)|0>.  Every structure constant therefore inherits the
lattice cocycle signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cocycle import lattice_epsilon
from .fock import FockState, LatticeAlgebra, mode_apply, product, render, root_lattice_algebra, translate
from .numeric import format_rational
from .rootsys import SIMPLY_LACED, DomainError, build, dual_coxeter, minimal_gradation

F = Fraction


class CriticalLevelError(ValueError):
    pass


class UnsupportedTypeError(ValueError):
    pass


def central_charge(dim: int, h, k) -> Fraction:
    k, h = F(k), F(h)
    if k == -h:
        raise CriticalLevelError("critical level k = -h_vee")
    return k * dim / (k + h) - 6 * k + h - 4


# lattice realization of g --------------------------------------------------


class LatticeLie:
    """g = (V_Q)_1 for a simply-laced root lattice Q, with lattice points in simple-root coordinates."""

    def __init__(self, label: str):
        rs = build(label)
        if label not in SIMPLY_LACED:
            raise UnsupportedTypeError(f"{label} is not simply laced")
        self.rs = rs
        self.label = label
        self.alg: LatticeAlgebra = root_lattice_algebra(rs)
        self.eps = lattice_epsilon(rs)
        self.rank = rs.rank
        self.h_vee = dual_coxeter(rs)
        pt = lambda r: tuple(int(c) for c in rs.coeffs(r))
        self.roots = tuple(sorted(pt(r) for r in rs.roots))
        self.theta = pt(rs.theta)
        grad = minimal_gradation(rs)
        self.s_plus = tuple(sorted(pt(r) for r in grad.s_plus_half))
        self.s_minus = tuple(sorted(pt(r) for r in grad.s_minus_half))
        self.natural_roots = tuple(sorted(pt(r) for r in grad.phi_natural))
        self.components = tuple(tuple(sorted(pt(r) for r in c.roots)) for c in grad.natural_components)
        self.component_h = tuple(c.dual_coxeter for c in grad.natural_components)
        self.gradation = grad
        self._bracket_cache: dict = {}

    # basic vectors
    def pair(self, x, y) -> Fraction:
        return self.alg.pair(x, y)

    def e(self, beta: Sequence) -> FockState:
        return FockState.exp(tuple(beta))

    def h(self, vec: Sequence) -> FockState:
        """The Cartan element with simple-root coordinates vec, i.e. vec(-1)|0>."""
        return mode_apply(self.alg, vec, -1, self.alg.vacuum())

    @property
    def vacuum(self) -> FockState:
        return self.alg.vacuum()

    @property
    def e_elt(self) -> FockState:
        return self.e(self.theta) * F(-1, 2)

    @property
    def f_elt(self) -> FockState:
        return self.e(tuple(-x for x in self.theta))

    def bracket(self, x: FockState, y: FockState) -> FockState:
        return product(self.alg, x, 0, y)

    def form(self, x: FockState, y: FockState) -> Fraction:
        return product(self.alg, x, 1, y).coefficient(((), (0,) * self.rank))

    # coordinates on the basis {h_i = alpha_i(-1)|0>} u {e^beta}
    def coords(self, x: FockState) -> dict:
        out = {}
        for (modes, pt), c in x.terms.items():
            if not modes:
                out[("e", pt)] = c
            elif len(modes) == 1 and modes[0][1] == 1 and not any(pt):
                out[("h", modes[0][0])] = c
            else:
                raise ValueError("state is not of weight one")
        return out

    def from_coords(self, c: dict) -> FockState:
        out = FockState.zero()
        for (kind, key), v in c.items():
            if kind == "e":
                out = out + self.e(key) * v
            else:
                out = out + self.h(self.alg.unit(key)) * v
        return out

    def basis_bracket(self, a: tuple, b: tuple) -> dict:
        key = (a, b)
        hit = self._bracket_cache.get(key)
        if hit is None:
            hit = self.coords(self.bracket(self.from_coords({a: 1}), self.from_coords({b: 1})))
            self._bracket_cache[key] = hit
        return hit

    def cbracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in self.basis_bracket(a, b).items():
                    w = out.get(k, 0) + ca * cb * v
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    # gradation pieces
    @property
    def g0_keys(self) -> tuple:
        return tuple(("h", i) for i in range(self.rank)) + tuple(("e", b) for b in self.natural_roots)

    def cartan_vector(self, x: dict) -> tuple:
        """Cartan part of a coordinate vector, as simple-root coordinates."""
        v = [F(0)] * self.rank
        for (kind, key), c in x.items():
            if kind == "h":
                v[key] += c
        return tuple(v)

    def natural_projection(self, x: FockState) -> FockState:
        """Orthogonal projection of g0 onto g-natural: drop theta from the Cartan part and e^{+-theta}."""
        c = self.coords(x)
        out: dict = {}
        for (kind, key), v in c.items():
            if kind == "e":
                if self.pair(key, self.theta) == 0:
                    out[("e", key)] = v
                elif key not in (self.theta, tuple(-t for t in self.theta)):
                    raise ValueError("vector is not in g_0")
        hv = self.cartan_vector(c)
        t = self.pair(hv, self.theta) / 2
        hv = tuple(a - t * b for a, b in zip(hv, self.theta))
        res = self.from_coords(out)
        if any(hv):
            res = res + self.h(hv)
        return res

    def natural_cartan_basis(self) -> list[tuple]:
        """Greedy basis of the orthogonal complement of theta among projected simple roots."""
        basis: list[tuple] = []
        for i in range(self.rank):
            ai = self.alg.unit(i)
            t = self.pair(ai, self.theta) / 2
            p = tuple(F(a) - t * b for a, b in zip(ai, self.theta))
            if _independent(basis + [p]):
                basis.append(p)
        return basis

    def natural_basis(self) -> list[FockState]:
        return [self.e(b) for b in self.natural_roots] + [self.h(v) for v in self.natural_cartan_basis()]


def _independent(vectors: list[tuple]) -> bool:
    n = len(vectors)
    if n == 0:
        return True
    rows = [list(map(F, v)) for v in vectors]
    # rank via elimination on the transpose
    m = [list(col) for col in zip(*rows)]
    rank = 0
    cols = len(m[0])
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank == n


@lru_cache(maxsize=None)
def lattice_lie(label: str) -> LatticeLie:
    return LatticeLie(label)


def _sparse_inverse(mat: list[list[Fraction]]) -> list[dict]:
    """Inverse of a square matrix by Gauss-Jordan on sparse rows; row i of the result as a dict."""
    n = len(mat)
    rows = [{j: v for j, v in enumerate(r) if v} for r in mat]
    inv = [{i: F(1)} for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i].get(c)), None)
        if p is None:
            raise ZeroDivisionError("singular pairing")
        rows[c], rows[p] = rows[p], rows[c]
        inv[c], inv[p] = inv[p], inv[c]
        pv = rows[c][c]
        rows[c] = {j: v / pv for j, v in rows[c].items()}
        inv[c] = {j: v / pv for j, v in inv[c].items()}
        for i in range(n):
            f = rows[i].get(c) if i != c else None
            if f:
                for j, v in rows[c].items():
                    w = rows[i].get(j, 0) - f * v
                    if w:
                        rows[i][j] = w
                    else:
                        rows[i].pop(j, None)
                for j, v in inv[c].items():
                    w = inv[i].get(j, 0) - f * v
                    if w:
                        inv[i][j] = w
                    else:
                        inv[i].pop(j, None)
    return inv


def dual_basis(basis: Sequence[FockState], pairing) -> list[FockState]:
    """Return {b^j} with pairing(basis_i, b^j) = delta_ij."""
    n = len(basis)
    gram = [[F(pairing(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    # b^j = sum_l c_{jl} basis_l requires gram . C^T = I, so C^T = gram^{-1}
    inv = _sparse_inverse(gram)
    out = []
    for j in range(n):
        s = FockState.zero()
        for l in range(n):
            c = inv[l].get(j)
            if c:
                s = s + basis[l] * c
        out.append(s)
    return out


# Killing form of g0 and traces ---------------------------------------------


@lru_cache(maxsize=None)
def kappa_g0_matrix(label: str) -> dict:
    """kappa_{g0}(a, b) = tr_{g0}(ad a ad b) on the coordinate basis of g0."""
    L = lattice_lie(label)
    keys = L.g0_keys
    ad = {a: {x: L.basis_bracket(a, x) for x in keys} for a in keys}
    out = {}
    for a in keys:
        for b in keys:
            tr = 0
            ada, adb = ad[a], ad[b]
            for x in keys:
                for y, c in adb[x].items():
                    d = ada.get(y, {}).get(x) if y in ada else None
                    if d:
                        tr += c * d
            if tr:
                out[(a, b)] = F(tr)
    return out


def kappa_g0(label: str, x: FockState, y: FockState) -> Fraction:
    L = lattice_lie(label)
    K = kappa_g0_matrix(label)
    cx, cy = L.coords(x), L.coords(y)
    s = F(0)
    for a, ca in cx.items():
        for b, cb in cy.items():
            v = K.get((a, b))
            if v:
                s += ca * cb * v
    return s


@lru_cache(maxsize=None)
def _trace_functional(label: str) -> dict:
    """tr over g_{1/2} + g_1 of ad(x), tabulated on the g0 coordinate basis."""
    L = lattice_lie(label)
    targets = [("e", g) for g in L.s_plus] + [("e", L.theta)]
    out = {}
    for a in L.g0_keys:
        t = sum((L.basis_bracket(a, x).get(x, 0) for x in targets), F(0))
        if t:
            out[a] = t
    return out


def trace_half_one(label: str, x: FockState) -> Fraction:
    L = lattice_lie(label)
    T = _trace_functional(label)
    return sum((c * T.get(a, 0) for a, c in L.coords(x).items()), F(0))


# parameters ------------------------------------------------------------------


@dataclass(frozen=True)
class WParams:
    g: str
    k: Fraction
    h_vee: Fraction
    c_w: Fraction
    k_natural: tuple  # one level per simple component of g-natural
    natural_form: dict  # symmetric table on a basis of g-natural (Cartan part for non simply-laced g)
    c_natural: Fraction
    natural_dim: int
    component_h: tuple
    abelian_rank: int
    notes: tuple = ()

    @property
    def c_w_minus_natural(self) -> Fraction:
        return self.c_w - self.c_natural

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "k": format_rational(self.k),
            "h_vee": format_rational(self.h_vee),
            "c_w": format_rational(self.c_w),
            "k_natural": [format_rational(x) for x in self.k_natural],
            "component_h_vee": [format_rational(x) for x in self.component_h],
            "abelian_rank": self.abelian_rank,
            "c_natural": format_rational(self.c_natural),
            "notes": list(self.notes),
        }


def params(g: str, k) -> WParams:
    k = F(k)
    rs = build(g)
    h = dual_coxeter(rs)
    if k == -h:
        raise CriticalLevelError(f"k = {format_rational(k)} is the critical level for {g}")
    grad = minimal_gradation(rs)
    c_w = central_charge(rs.dim, h, k)
    notes = list(grad.flags)
    levels = []
    table: dict = {}
    if g in SIMPLY_LACED and grad.natural_components:
        L = lattice_lie(g)
        for comp in L.components:
            # level read off from any root vector pair of the component
            b = comp[0]
            x, y = L.e(b), L.e(tuple(-t for t in b))
            nat = (k + h / 2) * L.form(x, y) - kappa_g0(g, x, y) / 4
            levels.append(nat / L.form(x, y))
        basis = L.natural_basis()
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                v = (k + h / 2) * L.form(x, y) - kappa_g0(g, x, y) / 4
                if v:
                    table[(i, j)] = v
    else:
        # kappa on a Cartan element t of component i is sum_{beta in comp} (beta|t)^2
        for c in grad.natural_components:
            levels.append(k + h / 2 - c.dual_coxeter / 2)
        cart = [r for c in grad.natural_components for r in c.simple_roots]
        for i, x in enumerate(cart):
            for j, y in enumerate(cart):
                kap = sum((rs.form(b, x) * rs.form(b, y) for b in grad.phi_natural), F(0))
                v = (k + h / 2) * rs.form(x, y) - kap / 4
                if v:
                    table[(i, j)] = v
        if g not in SIMPLY_LACED and grad.natural_components:
            notes.append("natural form tabulated on the Cartan part only (no lattice realization)")
    c_nat = F(grad.abelian_rank)
    for lev, c in zip(levels, grad.natural_components):
        c_nat += lev * c.dim / (lev + c.dual_coxeter)
    return WParams(
        g=g,
        k=k,
        h_vee=h,
        c_w=c_w,
        k_natural=tuple(levels),
        natural_form=table,
        c_natural=c_nat,
        natural_dim=grad.natural_dim,
        component_h=tuple(c.dual_coxeter for c in grad.natural_components),
        abelian_rank=grad.abelian_rank,
        notes=tuple(notes),
    )


def natural_level_check(g: str) -> dict:
    """(e_a, e_b)-natural = k-natural (e_a|e_b) on every pair of g-natural root vectors, at k = -h_vee/6."""
    L = lattice_lie(g)
    k = -L.h_vee / 6
    kn = F(1)
    bad = None
    count = 0
    for a in L.natural_roots:
        for b in L.natural_roots:
            x, y = L.e(a), L.e(b)
            form = L.form(x, y)
            nat = (k + L.h_vee / 2) * form - kappa_g0(g, x, y) / 4
            count += 1
            if nat != kn * form:
                bad = (a, b)
                break
        if bad:
            break
    cart_ok = True
    if not L.natural_roots:
        for x in L.natural_cartan_basis():
            for y in L.natural_cartan_basis():
                hx, hy = L.h(x), L.h(y)
                if (k + L.h_vee / 2) * L.form(hx, hy) - kappa_g0(g, hx, hy) / 4 != kn * L.form(hx, hy):
                    cart_ok = False
    return {"ok": bad is None and cart_ok, "pairs": count, "witness": bad,
            "identity": format_rational(L.h_vee / 3 - (L.component_h[0] if L.component_h else F(0)) / 2)}


# lambda-bracket records -------------------------------------------------------


@dataclass(frozen=True)
class Term:
    kind: str  # "omega", "vac", "J", "dJ", "JJ"
    coeff: Fraction
    labels: tuple = ()

    def to_json(self, alg: LatticeAlgebra | None = None) -> dict:
        return {
            "kind": self.kind,
            "coeff": format_rational(self.coeff),
            "labels": [render(x, alg) for x in self.labels],
        }


def _collect(terms: list[Term]) -> tuple:
    return tuple(t for t in terms if t.coeff != 0 and all(not x.is_zero() for x in t.labels))


@dataclass(frozen=True)
class GGBracket:
    g: str
    k: Fraction
    u: FockState
    v: FockState
    lambda0: tuple
    lambda1: tuple
    lambda2: tuple

    def to_json(self) -> dict:
        alg = lattice_lie(self.g).alg
        return {
            "g": self.g,
            "k": format_rational(self.k),
            "u": render(self.u, alg),
            "v": render(self.v, alg),
            "lambda0": [t.to_json(alg) for t in self.lambda0],
            "lambda1": [t.to_json(alg) for t in self.lambda1],
            "lambda2": [t.to_json(alg) for t in self.lambda2],
        }


def _check_minus_half(L: LatticeLie, u: FockState):
    pts = u.points()
    ok = len(u.terms) == 1 and len(pts) == 1 and next(iter(pts)) in L.s_minus and not next(iter(u.terms))[0]
    if not ok:
        raise DomainError("G-labels must be root vectors e^alpha with alpha in S_{-1/2}")


@lru_cache(maxsize=None)
def _half_dual(label: str) -> tuple:
    """Basis u_gamma = e^gamma of g_{1/2} and the dual basis for <a,b> = (f|[a,b])."""
    L = lattice_lie(label)
    basis = [L.e(gm) for gm in L.s_plus]
    f = L.f_elt
    dual = dual_basis(basis, lambda a, b: L.form(f, L.bracket(a, b)))
    return tuple(basis), tuple(dual)


@lru_cache(maxsize=None)
def _natural_dual(label: str) -> tuple:
    L = lattice_lie(label)
    basis = L.natural_basis()
    return tuple(basis), tuple(dual_basis(basis, L.form))


def half_dual_basis(label: str):
    return _half_dual(label)


def natural_dual_basis(label: str):
    return _natural_dual(label)


@lru_cache(maxsize=None)
def _lambda2_constant(label: str, k: Fraction) -> Fraction:
    p = params(label, k)
    L = lattice_lie(label)
    grad = L.gradation
    comp_dims = [c.dim for c in grad.natural_components]
    return (
        -(k + L.h_vee) * p.c_w
        + (k + L.h_vee / 2) * grad.natural_dim
        - sum((h * d for h, d in zip(L.component_h, comp_dims)), F(0)) / 2
    )


def gg_bracket(g: str, k, u: FockState, v: FockState) -> GGBracket:
    k = F(k)
    L = lattice_lie(g)
    _check_minus_half(L, u)
    _check_minus_half(L, v)
    e = L.e_elt
    euv = L.form(e, L.bracket(u, v))
    nat_basis, nat_dual = _natural_dual(g)
    half, half_dual = _half_dual(g)
    eu = L.bracket(e, u)
    euv_nat = L.natural_projection(L.bracket(eu, v))

    lam0 = [Term("omega", -2 * (k + L.h_vee) * euv)]
    for a, ad in zip(nat_basis, nat_dual):
        lam0.append(Term("JJ", euv, (ad, a)))
    pairs = []
    for ug, ud in zip(half, half_dual):
        x = L.natural_projection(L.bracket(u, ud))
        y = L.natural_projection(L.bracket(ug, v))
        pairs.append((x, y))
        lam0.append(Term("JJ", F(1), (x, y)))
    lam0.append(Term("dJ", 2 * (k + 1), (euv_nat,)))

    lam1 = [Term("J", 4 * (k + 1), (euv_nat,))]
    for x, y in pairs:
        lam1.append(Term("J", F(1), (L.natural_projection(L.bracket(x, y)),)))

    scal = euv * _lambda2_constant(g, k)
    for x, y in pairs:
        if x.is_zero() or y.is_zero():
            continue
        scal += (k + L.h_vee / 2) * L.form(x, y) - kappa_g0(g, x, y) / 4
        scal += trace_half_one(g, L.bracket(x, y)) / 4
    lam2 = [Term("vac", scal / 3)]
    return GGBracket(g, k, u, v, _collect(lam0), _collect(lam1), _collect(lam2))


def jj_bracket(g: str, k, a: FockState, b: FockState) -> dict:
    k = F(k)
    L = lattice_lie(g)
    label = L.bracket(a, b)
    scalar = (k + L.h_vee / 2) * L.form(a, b) - kappa_g0(g, a, b) / 4
    return {"label": label, "lambda_scalar": scalar}


def jg_bracket(g: str, k, a: FockState, v: FockState) -> dict:
    L = lattice_lie(g)
    _check_minus_half(L, v)
    return {"label": L.bracket(a, v)}


def sugawara_natural(g: str, levels: Sequence | None = None) -> FockState:
    """omega-natural: per component (1/(2(k+h))) sum u^a(-1)u_a, plus the free-boson part of the abelian remainder."""
    L = lattice_lie(g)
    if levels is None:
        levels = params(g, -L.h_vee / 6).k_natural
    alg = L.alg
    out = FockState.zero()
    cart_all = L.natural_cartan_basis()
    comp_cartans = []
    for comp, lev, hc in zip(L.components, levels, L.component_h):
        pos = [b for b in comp if _height(b) > 0]
        simple = [b for b in pos if not any(tuple(x - y for x, y in zip(b, c)) in set(pos) for c in pos if c != b)]
        basis = [L.e(b) for b in comp] + [L.h(s) for s in simple]
        comp_cartans.extend(simple)
        dual = dual_basis(basis, L.form)
        acc = FockState.zero()
        for x, xd in zip(basis, dual):
            acc = acc + product(alg, xd, -1, x)
        out = out + acc * (F(1) / (2 * (lev + hc)))
    # abelian remainder: orthogonal complement of the component Cartans in the natural Cartan
    rem = _orth_complement(L, cart_all, comp_cartans)
    if rem:
        basis = [L.h(x) for x in rem]
        dual = dual_basis(basis, L.form)
        acc = FockState.zero()
        for x, xd in zip(basis, dual):
            acc = acc + product(alg, xd, -1, x)
        out = out + acc * F(1, 2)
    return out


def _height(b) -> int:
    return sum(b)


def _orth_complement(L: LatticeLie, space: list, sub: list) -> list:
    """Basis of the orthogonal complement of span(sub) inside span(space)."""
    if not space:
        return []
    n = len(space)
    if not sub:
        return list(space)
    # solve for combinations x of space orthogonal to every vector of sub
    rows = [[L.pair(s, v) for v in space] for s in sub]
    # null space of rows
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv]
    out = []
    for fc in free:
        coeffs = [F(0)] * n
        coeffs[fc] = F(1)
        for i, pc in enumerate(piv):
            coeffs[pc] = -m[i][fc]
        vec = tuple(sum((coeffs[j] * space[j][t] for j in range(n)), F(0)) for t in range(L.rank))
        out.append(vec)
    return out


def translate_state(g: str, x: FockState) -> FockState:
    return translate(lattice_lie(g).alg, x)
