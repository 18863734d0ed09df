"""Abelian cocycles on finite abelian groups and sign cocycles on root lattices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Mapping, Sequence

from .numeric import DEFAULT_ORDER, Cyclotomic, exp_pi_i, format_scalar, root_of_unity, root_of_unity_log
from .rootsys import SIMPLY_LACED, RootSystem

Elem = tuple[int, ...]


class RepresentationError(ValueError):
    """A value is not a root of unity of the working order."""


class UnsupportedTypeError(ValueError):
    pass


class SearchTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic groups Z_{n1} x ... x Z_{nr}; elements are residue tuples."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 or n > 8 for n in self.moduli):
            raise ValueError("cyclic factors must have order between 1 and 8")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls((n,))

    @cached_property
    def elements(self) -> tuple[Elem, ...]:
        return tuple(product(*(range(n) for n in self.moduli)))

    @property
    def order(self) -> int:
        out = 1
        for n in self.moduli:
            out *= n
        return out

    @property
    def zero(self) -> Elem:
        return tuple(0 for _ in self.moduli)

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def elem(self, x) -> Elem:
        if isinstance(x, int):
            x = (x,)
        return tuple(int(v) % n for v, n in zip(x, self.moduli))

    def label(self, a: Elem) -> str:
        return str(a[0]) if len(a) == 1 else "(" + ",".join(map(str, a)) + ")"


def _tabulate(group: AbelianGroup, fn, arity: int, order: int) -> dict:
    out = {}
    for args in product(group.elements, repeat=arity):
        v = fn(*args)
        out[args] = v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v, order)
    return out


@dataclass(frozen=True)
class Violation:
    axiom: str
    args: tuple

    def render(self, group: AbelianGroup) -> str:
        return f"{self.axiom} fails at (" + ", ".join(group.label(a) for a in self.args) + ")"


@dataclass(frozen=True, eq=False)
class CocycleTable:
    """A pair (F, Omega) of tables on a finite abelian group."""

    group: AbelianGroup
    F: Mapping[tuple, Cyclotomic]
    Omega: Mapping[tuple, Cyclotomic]
    order: int = DEFAULT_ORDER

    @classmethod
    def from_functions(cls, group: AbelianGroup, F: Callable, Omega: Callable, order: int = DEFAULT_ORDER):
        return cls(group, _tabulate(group, F, 3, order), _tabulate(group, Omega, 2, order), order)

    def with_F(self, args: tuple, value) -> "CocycleTable":
        F = dict(self.F)
        F[args] = value if isinstance(value, Cyclotomic) else Cyclotomic.rational(value, self.order)
        return CocycleTable(self.group, F, self.Omega, self.order)

    def to_json(self) -> dict:
        g = self.group
        return {
            "group": list(g.moduli),
            "Omega": [[format_scalar(self.Omega[(a, b)]) for b in g.elements] for a in g.elements],
            "F": {
                ",".join(g.label(x) for x in k): format_scalar(v)
                for k, v in sorted(self.F.items())
                if v != 1
            },
        }


def _na3_violation(t: CocycleTable) -> Violation | None:
    G, F, W = t.group, t.F, t.Omega
    add, els, z = G.add, G.elements, G.zero
    for i in els:
        if W[(i, z)] != 1 or W[(z, i)] != 1:
            return Violation("A5", (i,))
        for j in els:
            if F[(i, j, z)] != 1 or F[(i, z, j)] != 1 or F[(z, i, j)] != 1:
                return Violation("A4", (i, j))
    for i, j, k in product(els, repeat=3):
        jk, ij = add(j, k), add(i, j)
        lhs = W[(i, jk)] / (F[(i, j, k)] * F[(j, k, i)])
        rhs = W[(i, j)] * W[(i, k)] / F[(j, i, k)]
        if lhs != rhs:
            return Violation("A2", (i, j, k))
        lhs = F[(i, j, k)] * W[(ij, k)] * F[(k, i, j)]
        rhs = W[(j, k)] * F[(i, k, j)] * W[(i, k)]
        if lhs != rhs:
            return Violation("A3", (i, j, k))
    for i, j, k, l in product(els, repeat=4):
        val = F[(i, j, k)] * F[(i, add(j, k), l)] * F[(j, k, l)]
        if val != F[(i, j, add(k, l))] * F[(add(i, j), k, l)]:
            return Violation("A1", (i, j, k, l))
    return None


def is_na3(t: CocycleTable) -> tuple[bool, Violation | None]:
    """Scan the five normalized abelian 3-cocycle axioms; return (ok, first violation)."""
    if t.group.order ** 4 > 10**4:
        raise SearchTooLargeError(f"{t.group.order ** 4} quadruples exceed the scan bound 10^4")
    v = _na3_violation(t)
    return v is None, v


def b_map(t: CocycleTable) -> dict:
    F, W = t.F, t.Omega
    return {
        (i, j, k): W[(i, j)] * F[(i, j, k)] / F[(j, i, k)]
        for i, j, k in product(t.group.elements, repeat=3)
    }


def quadratic_form(t: CocycleTable) -> dict:
    return {i: t.Omega[(i, i)] for i in t.group.elements}


def delta(t: CocycleTable) -> dict:
    """Delta(i,j) in [0,1) with exp(-2 pi i Delta) = Omega(i,j) Omega(j,i)."""
    out = {}
    for i, j in product(t.group.elements, repeat=2):
        x = t.Omega[(i, j)] * t.Omega[(j, i)]
        s = root_of_unity_log(x, t.order)
        if s is None:
            raise RepresentationError(f"Omega{(i, j)}Omega{(j, i)} = {format_scalar(x)} is not in mu_{t.order}")
        out[(i, j)] = (-s) % 1
    return out


def check_feq1(t: CocycleTable) -> tuple[bool, tuple | None]:
    """F(i,j,k+l)^-1 B(j,k,l) B(i,k,j+l) F(i,j,l) = B(i+j,k,l) on all quadruples."""
    B, F, add = b_map(t), t.F, t.group.add
    for i, j, k, l in product(t.group.elements, repeat=4):
        lhs = B[(j, k, l)] * B[(i, k, add(j, l))] * F[(i, j, l)] / F[(i, j, add(k, l))]
        if lhs != B[(add(i, j), k, l)]:
            return False, (i, j, k, l)
    return True, None


def special_shape_checks(t: CocycleTable) -> dict:
    """Consequences of the axioms for special shapes of F; inapplicable items are None."""
    els, add, F, W = t.group.elements, t.group.add, t.F, t.Omega
    out = {"trivial_F_bimultiplicative": None, "symmetric_F_formula": None}
    if all(v == 1 for v in F.values()):
        out["trivial_F_bimultiplicative"] = all(
            W[(add(i, j), k)] == W[(i, k)] * W[(j, k)] and W[(k, add(i, j))] == W[(k, i)] * W[(k, j)]
            for i, j, k in product(els, repeat=3)
        )
    if all(F[(i, j, k)] == F[(j, i, k)] for i, j, k in product(els, repeat=3)):
        out["symmetric_F_formula"] = all(
            F[(i, j, k)] * W[(add(i, j), k)] == W[(i, k)] * W[(j, k)]
            for i, j, k in product(els, repeat=3)
        )
    return out


def z2_symmetry_check(t: CocycleTable) -> bool:
    """On Z_2 every NA3 has F symmetric in its first two arguments."""
    if t.group.moduli != (2,):
        raise UnsupportedTypeError("only defined for Z_2")
    return all(t.F[(i, j, k)] == t.F[(j, i, k)] for i, j, k in product(t.group.elements, repeat=3))


# quasi 2-cocycles


@dataclass(frozen=True, eq=False)
class QuasiTwoCocycle:
    group: AbelianGroup
    eps: Mapping[tuple, Cyclotomic]
    order: int = DEFAULT_ORDER

    @classmethod
    def from_function(cls, group: AbelianGroup, eps: Callable, order: int = DEFAULT_ORDER):
        return cls(group, _tabulate(group, eps, 2, order), order)

    def __call__(self, a, b) -> Cyclotomic:
        return self.eps[(self.group.elem(a), self.group.elem(b))]


def coboundary(e: QuasiTwoCocycle) -> CocycleTable:
    """(f, omega) with f the group coboundary of eps and omega its antisymmetrization."""
    G, eps = e.group, e.eps
    add = G.add
    f = {
        (a, b, c): eps[(a, add(b, c))] * eps[(b, c)] / (eps[(add(a, b), c)] * eps[(a, b)])
        for a, b, c in product(G.elements, repeat=3)
    }
    w = {(a, b): eps[(a, b)] / eps[(b, a)] for a, b in product(G.elements, repeat=2)}
    return CocycleTable(G, f, w, e.order)


def is_quasi(e: QuasiTwoCocycle) -> bool:
    G, z = e.group, e.group.zero
    if any(e.eps[(z, a)] != 1 or e.eps[(a, z)] != 1 for a in G.elements):
        return False
    f = coboundary(e).F
    return all(f[(a, b, c)] == f[(b, a, c)] for a, b, c in product(G.elements, repeat=3))


def modified_eta(eta: Callable, e: QuasiTwoCocycle) -> dict:
    """eta^eps(a,b) = omega(a,b) eta(a,b)."""
    w = coboundary(e).Omega
    return {(a, b): w[(a, b)] * eta(a, b) for a, b in product(e.group.elements, repeat=2)}


# the Z_4 data used for the simple current extension of the level-one A1 lattice VOA

Z4 = AbelianGroup.cyclic(4)
Z2 = AbelianGroup.cyclic(2)
_Z4_MINUS = {(1, 2), (2, 2), (2, 3), (3, 1)}


def z4_epsilon() -> QuasiTwoCocycle:
    return QuasiTwoCocycle.from_function(Z4, lambda a, b: -1 if (a[0], b[0]) in _Z4_MINUS else 1)


def z4_eta(a, b) -> Cyclotomic:
    """exp(pi i k l / 2), the braiding of the lattice GVA on the dual A1 lattice."""
    return exp_pi_i(Fraction(a[0] * b[0], 2))


def z4_eta_table() -> CocycleTable:
    return CocycleTable.from_functions(Z4, lambda i, j, k: 1, z4_eta)


def z4_omega_formula(k: int, l: int) -> int:
    return (-1) ** ((k * l * (k * l - 1) // 2) % 2)


def z4_eta_eps_formula(k: int, l: int) -> Cyclotomic:
    return exp_pi_i(Fraction(k * k * l * l, 2))


# sign cocycles on simply-laced root lattices


@dataclass(frozen=True)
class LatticeCocycle:
    """Bimultiplicative sign cocycle on a simply-laced root lattice.

    ``matrix[i][j]`` is 1 when eps(alpha_i, alpha_j) = -1, i.e. i == j or an
    edge oriented i -> j in the Dynkin diagram, and 0 otherwise.
    """

    root_system: RootSystem
    matrix: tuple[tuple[int, ...], ...]

    def sign_coeffs(self, a: Sequence, b: Sequence) -> int:
        """Sign on lattice vectors given by integer simple-root coordinates."""
        s = 0
        m = self.matrix
        for i, ai in enumerate(a):
            if ai:
                row = m[i]
                for j, bj in enumerate(b):
                    if bj and row[j]:
                        s += ai * bj
        return -1 if s % 2 else 1

    def __call__(self, x: Sequence, y: Sequence) -> int:
        rs = self.root_system
        cx, cy = rs.coeffs(x), rs.coeffs(y)
        if any(c.denominator != 1 for c in cx + cy):
            raise ValueError("vectors are not in the root lattice")
        return self.sign_coeffs([int(c) for c in cx], [int(c) for c in cy])


def lattice_epsilon(rs: RootSystem) -> LatticeCocycle:
    if rs.label not in SIMPLY_LACED:
        raise UnsupportedTypeError(f"{rs.label} is not simply laced")
    a = rs.cartan_matrix
    n = rs.rank
    mat = tuple(tuple(1 if i == j or (i < j and a[i][j] != 0) else 0 for j in range(n)) for i in range(n))
    return LatticeCocycle(rs, mat)


def lattice_epsilon_checks(rs: RootSystem) -> dict:
    eps = lattice_epsilon(rs)
    coeffs = {r: tuple(int(c) for c in rs.coeffs(r)) for r in rs.roots}
    bad = None
    for a in rs.roots:
        for b in rs.roots:
            prod_ = eps.sign_coeffs(coeffs[a], coeffs[b]) * eps.sign_coeffs(coeffs[b], coeffs[a])
            if prod_ != (-1) ** int(rs.form(a, b) % 2):
                bad = (a, b)
                break
        if bad:
            break
    t = rs.theta
    return {
        "skew_ok": bad is None,
        "witness": bad,
        "theta_sign": eps(t, tuple(-x for x in t)),
    }


# injectivity of (F, Omega) -> B, by exhaustive search with mu_N values

_SEARCH_BOUND = 10**6


def _free_slots(G: AbelianGroup):
    nz = [a for a in G.elements if a != G.zero]
    return list(product(nz, repeat=3)), list(product(nz, repeat=2))


def na3_search_size(G: AbelianGroup, N: int) -> int:
    fs, ws = _free_slots(G)
    return N ** (len(fs) + len(ws))


def enumerate_na3(G: AbelianGroup, N: int) -> list[CocycleTable]:
    """All mu_N-valued NA3 pairs on G (values as exponents of zeta_N)."""
    size = na3_search_size(G, N)
    if size > _SEARCH_BOUND:
        raise SearchTooLargeError(f"search space has {size} candidates, bound is {_SEARCH_BOUND}")
    fs, ws = _free_slots(G)
    add, els = G.add, G.elements
    found = []
    for vals in product(range(N), repeat=len(fs) + len(ws)):
        F = {k: 0 for k in product(els, repeat=3)}
        W = {k: 0 for k in product(els, repeat=2)}
        F.update(zip(fs, vals[: len(fs)]))
        W.update(zip(ws, vals[len(fs):]))
        ok = True
        for i, j, k in product(els, repeat=3):
            jk, ij = add(j, k), add(i, j)
            if (W[(i, jk)] - F[(i, j, k)] - F[(j, k, i)] - W[(i, j)] + F[(j, i, k)] - W[(i, k)]) % N:
                ok = False
                break
            if (F[(i, j, k)] + W[(ij, k)] + F[(k, i, j)] - W[(j, k)] - F[(i, k, j)] - W[(i, k)]) % N:
                ok = False
                break
        if ok:
            for i, j, k, l in product(els, repeat=4):
                if (F[(i, j, k)] - F[(i, j, add(k, l))] + F[(i, add(j, k), l)] - F[(add(i, j), k, l)] + F[(j, k, l)]) % N:
                    ok = False
                    break
        if ok:
            order = N if N % 2 == 0 or N == 1 else 2 * N
            zeta = lambda e: root_of_unity(e, N, order)
            found.append(CocycleTable(
                G,
                {k: zeta(v) for k, v in F.items()},
                {k: zeta(v) for k, v in W.items()},
                order,
            ))
    return found


def na3_enumeration_injectivity(G: AbelianGroup, N: int) -> dict:
    tables = enumerate_na3(G, N)
    images: dict = {}
    for t in tables:
        key = tuple(sorted((k, v.coeffs, v.order) for k, v in b_map(t).items()))
        images.setdefault(key, []).append(t)
    collisions = [v for v in images.values() if len(v) > 1]
    trivial_kernel = [
        t for t in tables if all(v == 1 for v in b_map(t).values())
    ]
    kernel_ok = all(
        all(v == 1 for v in t.Omega.values()) and all(v == 1 for v in t.F.values()) for t in trivial_kernel
    )
    return {
        "group": list(G.moduli),
        "value_order": N,
        "candidates": na3_search_size(G, N),
        "na3_count": len(tables),
        "injective": not collisions,
        "kernel_trivial": kernel_ok and len(trivial_kernel) == 1,
    }
