"""The extended affine Hecke algebra: T-basis arithmetic, the bar involution,
Kazhdan-Lusztig polynomials, both canonical bases, and structure constants.

Conventions.  The ground ring is Z[t, 1/t] with q = t^2.  The T-basis obeys
(T_s + 1)(T_s - q) = 0 and T_w T_w' = T_ww' whenever lengths add; T_rho
multiplies length-freely.  C_w = t^{-l(w)} sum_{y <= w} P_{y,w}(q) T_y is the
positive canonical basis and C'_w its signed twin; both are bar-invariant.

Kazhdan-Lusztig polynomials are produced by the classical left-multiplication
recursion: pick the lowest-index left descent s of w, combine P_{sy,sw} and
P_{y,sw}, and subtract the mu-corrections.  The memo table is keyed by pairs
in W' after splitting off the rho-power (P is invariant under a common rho
twist).  Correctness is not taken on faith: the acceptance suite re-derives
bar(C_w) = C_w and the degree bounds over whole balls.

Polynomials in q are represented in t with even exponents throughout.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from . import affperm
from .affperm import AffPerm, bruhat_leq, bruhat_lower
from .errors import BasisMismatch, PeriodMismatch
from .laurent import ONE, Q, QINV, ZERO, LaurentPoly, t_pow
from .parabolic import Composition, CosetTriple, double_coset, young_elements

__all__ = [
    "HeckeElt",
    "t_elt",
    "h_mul",
    "h_bar",
    "kl_poly",
    "kl_mu",
    "c_elt",
    "cprime_elt",
    "t_to_c",
    "c_to_t",
    "h_struct",
    "h_expansion",
    "x_lambda",
    "y_lambda",
    "coset_sum_TD",
    "j_inv",
    "psi",
    "is_in_H_IJ",
    "kl_memo_stats",
    "kl_memo_items",
    "kl_memo_insert",
]


@dataclass(frozen=True)
class HeckeElt:
    """A finitely supported A-linear combination of basis elements T_w or C_w."""

    r: int
    basis: str
    terms: Mapping[AffPerm, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {w: c for w, c in self.terms.items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)
        if self.basis not in ("T", "C"):
            raise BasisMismatch(f"unknown Hecke basis tag {self.basis!r}")
        for w in clean:
            if w.r != self.r:
                raise PeriodMismatch(f"term {w} has period {w.r}, element has {self.r}")

    def coeff(self, w: AffPerm) -> LaurentPoly:
        return self.terms.get(w, ZERO)

    def support(self) -> list[AffPerm]:
        return sorted(self.terms, key=lambda w: w.sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return (self.r, self.basis, dict(self.terms)) == (
            other.r,
            other.basis,
            dict(other.terms),
        )

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check_compatible(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return HeckeElt(self.r, self.basis, terms)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + other.scale(LaurentPoly(-1))

    def scale(self, c: "LaurentPoly | int") -> "HeckeElt":
        if isinstance(c, int):
            c = LaurentPoly(c)
        return HeckeElt(self.r, self.basis, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        return h_mul(self, other)

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "HeckeElt":
        return HeckeElt(self.r, self.basis, {w: f(c) for w, c in self.terms.items()})

    def _check_compatible(self, other: "HeckeElt") -> None:
        if self.r != other.r:
            raise PeriodMismatch(f"periods {self.r} and {other.r} differ")
        if self.basis != other.basis:
            raise BasisMismatch(f"bases {self.basis} and {other.basis} differ")

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "basis": self.basis,
            "terms": [
                {"window": list(w.window), "coeff": c.to_json()}
                for w, c in sorted(self.terms.items(), key=lambda p: p[0].sort_key)
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "HeckeElt":
        r = obj["r"]
        terms = {
            AffPerm(r, tuple(t["window"])): LaurentPoly.from_json(t["coeff"])
            for t in obj["terms"]
        }
        return HeckeElt(r, obj.get("basis", "T"), terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"HeckeElt({self.r}, {self.basis}, 0)"
        bits = ", ".join(
            f"{self.basis}{w.window}: {c!r}"
            for w, c in sorted(self.terms.items(), key=lambda p: p[0].sort_key)
        )
        return f"HeckeElt({self.r}, {bits})"


def t_elt(w: AffPerm, coeff: "LaurentPoly | int" = 1) -> HeckeElt:
    if isinstance(coeff, int):
        coeff = LaurentPoly(coeff)
    return HeckeElt(w.r, "T", {w: coeff})


# ---------------------------------------------------------------------------
# T-basis multiplication


def _mul_gen_right(terms: dict[AffPerm, LaurentPoly], r: int, i: int) -> dict:
    """Right-multiply a T-basis term dict by T_{s_i}."""
    s = affperm.generator(r, i)
    qm1 = Q - 1
    out: dict[AffPerm, LaurentPoly] = {}
    for w, c in terms.items():
        ws = w * s
        if ws.length > w.length:
            out[ws] = out.get(ws, ZERO) + c
        else:
            out[ws] = out.get(ws, ZERO) + c * Q
            out[w] = out.get(w, ZERO) + c * qm1
    return {w: c for w, c in out.items() if not c.is_zero()}


def _mul_word_right(
    terms: dict[AffPerm, LaurentPoly], r: int, omega: int, word: Iterable[int]
) -> dict:
    """Right-multiply by T_{rho^omega} then by T_{s_i} for each letter."""
    if omega:
        rho = affperm.rho(r, omega)
        terms = {w * rho: c for w, c in terms.items()}
    for i in word:
        terms = _mul_gen_right(terms, r, i)
    return terms


@functools.lru_cache(maxsize=None)
def _t_product(u: AffPerm, v: AffPerm) -> HeckeElt:
    omega, word = v.reduced_word()
    return HeckeElt(u.r, "T", _mul_word_right({u: ONE}, u.r, omega, word))


def h_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """The product of two T-basis elements, expanded in the T-basis."""
    if a.r != b.r:
        raise PeriodMismatch(f"periods {a.r} and {b.r} differ")
    if a.basis != "T" or b.basis != "T":
        raise BasisMismatch("h_mul multiplies T-basis elements; convert first")
    acc: dict[AffPerm, LaurentPoly] = {}
    for v, cv in b.terms.items():
        for u, cu in a.terms.items():
            cuv = cu * cv
            for w, c in _t_product(u, v).terms.items():
                acc[w] = acc.get(w, ZERO) + cuv * c
    return HeckeElt(a.r, "T", acc)


# ---------------------------------------------------------------------------
# Bar involution


@functools.lru_cache(maxsize=None)
def _bar_t(w: AffPerm) -> HeckeElt:
    """The element (T_{w^{-1}})^{-1} in the T-basis."""
    r = w.r
    omega, word = w.reduced_word()
    # T_{w^{-1}}^{-1} = T_{rho^omega} * T_{s_{i_1}}^{-1} ... T_{s_{i_k}}^{-1}
    terms: dict[AffPerm, LaurentPoly] = {affperm.rho(r, omega): ONE}
    qinv_m1 = QINV - 1
    for i in word:
        s = affperm.generator(r, i)
        out: dict[AffPerm, LaurentPoly] = {}
        for u, c in terms.items():
            us = u * s
            # x * T_s^{-1} = q^{-1} (x T_s) + (q^{-1} - 1) x; the descent case collapses
            if us.length > u.length:
                out[us] = out.get(us, ZERO) + c * QINV
                out[u] = out.get(u, ZERO) + c * qinv_m1
            else:
                out[us] = out.get(us, ZERO) + c
        terms = {u: c for u, c in out.items() if not c.is_zero()}
    return HeckeElt(r, "T", terms)


def h_bar(a: HeckeElt) -> HeckeElt:
    """The bar involution: coefficients bar'd, T_w replaced by T_{w^{-1}}^{-1}."""
    if a.basis != "T":
        raise BasisMismatch("h_bar acts on T-basis elements")
    acc: dict[AffPerm, LaurentPoly] = {}
    for w, c in a.terms.items():
        cb = c.bar()
        for u, d in _bar_t(w).terms.items():
            acc[u] = acc.get(u, ZERO) + cb * d
    return HeckeElt(a.r, "T", acc)


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig polynomials

_KL: dict[tuple[int, tuple, tuple], LaurentPoly] = {}
_KL_STATS = {"hits": 0, "computed": 0, "loaded": 0}
_KL_NEW: set[tuple[int, tuple, tuple]] = set()


def kl_memo_stats() -> dict:
    return dict(_KL_STATS, entries=len(_KL))


def kl_memo_items() -> list[tuple[int, tuple, tuple, LaurentPoly]]:
    return [(r, y, w, p) for (r, y, w), p in _KL.items()]


def kl_memo_insert(r: int, y: tuple, w: tuple, p: LaurentPoly) -> bool:
    """Seed the memo table (used by the disk cache); duplicate keys are ignored."""
    key = (r, tuple(y), tuple(w))
    if key in _KL:
        return False
    _KL[key] = p
    _KL_STATS["loaded"] += 1
    return True


def kl_poly(y: AffPerm, w: AffPerm) -> LaurentPoly:
    """P_{y,w} as a polynomial in q = t^2 (zero unless y <= w; P_{w,w} = 1)."""
    if y.r != w.r:
        raise PeriodMismatch(f"periods {y.r} and {w.r} differ")
    ay, uy = y.omega_split()
    aw, uw = w.omega_split()
    if ay != aw:
        return ZERO
    return _kl(uy, uw)


def _kl(y: AffPerm, w: AffPerm) -> LaurentPoly:
    key = (y.r, y.window, w.window)
    hit = _KL.get(key)
    if hit is not None:
        _KL_STATS["hits"] += 1
        return hit
    if y == w:
        val = ONE
    elif not bruhat_leq(y, w):
        val = ZERO
    else:
        s = affperm.generator(w.r, min(w.left_descents))
        v = s * w
        sy = s * y
        if sy.length < y.length:
            val = _kl(sy, v) + Q * _kl(y, v)
        else:
            val = Q * _kl(sy, v) + _kl(y, v)
        for z in bruhat_lower(v):
            if (s * z).length < z.length and bruhat_leq(y, z):
                mu = kl_mu(z, v)
                if mu:
                    val = val - mu * t_pow(w.length - z.length) * _kl(y, z)
        # P_{y,w} is a polynomial in q of q-degree <= (l(w) - l(y) - 1)/2
        if not val.in_q() or val.min_degree() < 0 or (
            val.degree() > w.length - y.length - 1
        ):
            raise AssertionError(f"KL recursion violated degree bounds at {key}: {val!r}")
    _KL[key] = val
    _KL_STATS["computed"] += 1
    _KL_NEW.add(key)
    return val


def kl_mu(y: AffPerm, w: AffPerm) -> int:
    """The coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w} (0 when not integral)."""
    return kl_poly(y, w).coeff(w.length - y.length - 1)


# ---------------------------------------------------------------------------
# Canonical bases


@functools.lru_cache(maxsize=None)
def c_elt(w: AffPerm) -> HeckeElt:
    """C_w = t^{-l(w)} sum_{y <= w} P_{y,w}(q) T_y, in the T-basis."""
    a, u = w.omega_split()
    scale = t_pow(-u.length)
    terms = {
        y.shift(a): _kl(y, u) * scale for y in bruhat_lower(u)
    }
    return HeckeElt(w.r, "T", terms)


@functools.lru_cache(maxsize=None)
def cprime_elt(w: AffPerm) -> HeckeElt:
    """C'_w = sum_{y <= w} (-1)^{l(w)-l(y)} t^{l(w)-2l(y)} P_{y,w}(1/q) T_y."""
    a, u = w.omega_split()
    lw = u.length
    terms = {}
    for y in bruhat_lower(u):
        sign = -1 if (lw - y.length) % 2 else 1
        terms[y.shift(a)] = t_pow(lw - 2 * y.length, sign) * _kl(y, u).bar()
    return HeckeElt(w.r, "T", terms)


def t_to_c(a: HeckeElt) -> HeckeElt:
    """Rewrite a T-basis element exactly in the C-basis (triangular peeling)."""
    if a.basis != "T":
        raise BasisMismatch("t_to_c expects a T-basis element")
    work = dict(a.terms)
    out: dict[AffPerm, LaurentPoly] = {}
    while work:
        w = max(work, key=lambda x: x.sort_key)
        g = work[w] * t_pow(w.length)
        out[w] = g
        for y, c in c_elt(w).terms.items():
            nv = work.get(y, ZERO) - g * c
            if nv.is_zero():
                work.pop(y, None)
            else:
                work[y] = nv
    return HeckeElt(a.r, "C", out)


def c_to_t(a: HeckeElt) -> HeckeElt:
    """Expand a C-basis element in the T-basis."""
    if a.basis != "C":
        raise BasisMismatch("c_to_t expects a C-basis element")
    acc: dict[AffPerm, LaurentPoly] = {}
    for w, g in a.terms.items():
        for y, c in c_elt(w).terms.items():
            acc[y] = acc.get(y, ZERO) + g * c
    return HeckeElt(a.r, "T", acc)


# ---------------------------------------------------------------------------
# Structure constants h_{x,y,z}


@functools.lru_cache(maxsize=None)
def _h_expansion_core(u: AffPerm, v: AffPerm) -> tuple[tuple[AffPerm, LaurentPoly], ...]:
    prod = h_mul(c_elt(u), c_elt(v))
    return tuple(sorted(t_to_c(prod).terms.items(), key=lambda p: p[0].sort_key))


def h_expansion(x: AffPerm, y: AffPerm) -> dict[AffPerm, LaurentPoly]:
    """The full expansion C_x C_y = sum_z h_{x,y,z} C_z as a dict.

    Computed once per rho-normalized pair: h_{rho^a u, v rho^b, rho^a z rho^b}
    equals h_{u,v,z}, so the memo key lives in W' x W'.
    """
    a, u = x.omega_split()
    b = y.omega_degree
    v = y * affperm.rho(y.r, -b)
    core = _h_expansion_core(u, v)
    if a == 0 and b == 0:
        return dict(core)
    ra = affperm.rho(x.r, a)
    rb = affperm.rho(x.r, b)
    return {ra * z * rb: h for z, h in core}


def h_struct(x: AffPerm, y: AffPerm, z: AffPerm) -> LaurentPoly:
    """The structure constant h_{x,y,z} of C_x C_y = sum h_{x,y,z} C_z."""
    return h_expansion(x, y).get(z, ZERO)


# ---------------------------------------------------------------------------
# Parabolic sums and the auxiliary involutions


@functools.lru_cache(maxsize=None)
def x_lambda(lam: Composition) -> HeckeElt:
    """x_lambda = sum of T_w over the Young subgroup W_lambda."""
    return HeckeElt(lam.r, "T", {w: ONE for w in young_elements(lam)})


@functools.lru_cache(maxsize=None)
def y_lambda(lam: Composition) -> HeckeElt:
    """y_lambda = j(x_lambda)."""
    return j_inv(x_lambda(lam))


def coset_sum_TD(triple: CosetTriple) -> HeckeElt:
    """T_D = sum of T_x over the double coset D."""
    return HeckeElt(triple.w.r, "T", {x: ONE for x in double_coset(triple)})


def j_inv(a: HeckeElt) -> HeckeElt:
    """The involution j: sum a_w T_w -> sum bar(a_w) (-q)^{-l(w)} T_w."""
    if a.basis != "T":
        raise BasisMismatch("j_inv acts on T-basis elements")
    terms = {}
    for w, c in a.terms.items():
        sign = -1 if w.length % 2 else 1
        terms[w] = c.bar() * t_pow(-2 * w.length, sign)
    return HeckeElt(a.r, "T", terms)


def psi(a: HeckeElt) -> HeckeElt:
    """The automorphism Psi: t -> -t, T_x -> (-q)^{l(x)} T_{x^{-1}}^{-1}."""
    if a.basis != "T":
        raise BasisMismatch("psi acts on T-basis elements")
    acc: dict[AffPerm, LaurentPoly] = {}
    for w, c in a.terms.items():
        sign = -1 if w.length % 2 else 1
        factor = c.neg_t() * t_pow(2 * w.length, sign)
        for u, d in _bar_t(w).terms.items():
            acc[u] = acc.get(u, ZERO) + factor * d
    return HeckeElt(a.r, "T", acc)


def is_in_H_IJ(a: HeckeElt, lam: Composition, mu: Composition) -> bool:
    """True iff T_s a = q a = a T_s' for all s in I(lam), s' in I(mu)."""
    if a.basis != "T":
        raise BasisMismatch("is_in_H_IJ expects a T-basis element")
    qa = a.scale(Q)
    for i in lam.gens:
        if h_mul(t_elt(affperm.generator(a.r, i)), a) != qa:
            return False
    for i in mu.gens:
        if h_mul(a, t_elt(affperm.generator(a.r, i))) != qa:
            return False
    return True
