"""The affine q-Schur algebra over Z[t, 1/t].

Basis bookkeeping.  The standard basis phi_{lam,mu}^w is indexed by coset
triples, equivalently by periodic matrices; phi-hat is its length-normalized
rescaling, theta the canonical (IC) basis, and e / bracket the convolution
algebra's names for the same two objects (e_A = phi_A, [A] = phihat_A via the
dimension statistic d_A).  Structure constants in the theta basis divide the
corresponding Hecke constants exactly by the Poincare polynomial h_mu; that
division is the primary multiplication route, with honest endomorphism
composition kept alive as an independent cross-check.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import affperm, hecke
from .affperm import AffPerm, bruhat_lower
from .errors import BasisMismatch, NotInModule, PeriodMismatch
from .hecke import HeckeElt, coset_sum_TD, h_bar, h_expansion, h_mul, t_elt
from .laurent import ONE, ZERO, LaurentPoly, t_pow
from .parabolic import (
    Composition,
    CosetTriple,
    PeriodicMatrix,
    compositions,
    double_coset,
    longest_in_parabolic,
    matrix_of_triple,
    min_double_rep,
    plus_rep,
    triple_of_matrix,
    young_elements,
)

__all__ = [
    "SchurElt",
    "BASES",
    "poincare_h",
    "phi_elt",
    "theta_elt",
    "phi_apply",
    "phi_mul",
    "alpha_coeff",
    "theta_in_phihat",
    "basis_convert",
    "g_struct",
    "g_expansion",
    "theta_mul",
    "theta_mul_lemma42",
    "theta_mul_lemma61",
    "schur_bar",
    "theta_apply",
    "schur_identity",
    "omega_comp",
    "embed_hecke",
]

BASES = ("phi", "phihat", "theta", "e", "bracket")


@dataclass(frozen=True)
class SchurElt:
    """A finitely supported combination of basis elements of S_q(n, r)."""

    n: int
    r: int
    basis: str
    terms: Mapping[PeriodicMatrix, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {A: c for A, c in self.terms.items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)
        if self.basis not in BASES:
            raise BasisMismatch(f"unknown Schur basis tag {self.basis!r}")
        for A in clean:
            if A.n != self.n or A.r != self.r:
                raise PeriodMismatch(f"matrix {A} does not live in (n,r)=({self.n},{self.r})")

    def coeff(self, A: PeriodicMatrix) -> LaurentPoly:
        return self.terms.get(A, ZERO)

    def support(self) -> list[PeriodicMatrix]:
        return sorted(self.terms, key=lambda A: A.sort_key)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchurElt):
            return NotImplemented
        return (self.n, self.r, self.basis, dict(self.terms)) == (
            other.n,
            other.r,
            other.basis,
            dict(other.terms),
        )

    def __add__(self, other: "SchurElt") -> "SchurElt":
        self._check_compatible(other)
        terms = dict(self.terms)
        for A, c in other.terms.items():
            terms[A] = terms.get(A, ZERO) + c
        return SchurElt(self.n, self.r, self.basis, terms)

    def __sub__(self, other: "SchurElt") -> "SchurElt":
        return self + other.scale(-1)

    def scale(self, c: "LaurentPoly | int") -> "SchurElt":
        if isinstance(c, int):
            c = LaurentPoly(c)
        return SchurElt(self.n, self.r, self.basis, {A: v * c for A, v in self.terms.items()})

    def __mul__(self, other: "SchurElt") -> "SchurElt":
        self._check_compatible(other)
        if self.basis == "phi":
            return phi_mul(self, other)
        if self.basis == "theta":
            return theta_mul(self, other)
        raise BasisMismatch(f"no direct product in basis {self.basis!r}; convert first")

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "SchurElt":
        return SchurElt(self.n, self.r, self.basis, {A: f(c) for A, c in self.terms.items()})

    def _check_compatible(self, other: "SchurElt") -> None:
        if (self.n, self.r) != (other.n, other.r):
            raise PeriodMismatch(f"(n,r) mismatch: {(self.n, self.r)} vs {(other.n, other.r)}")
        if self.basis != other.basis:
            raise BasisMismatch(f"bases {self.basis} and {other.basis} differ")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "basis": self.basis,
            "terms": [
                {"matrix": [list(e) for e in A.entries], "coeff": c.to_json()}
                for A, c in sorted(self.terms.items(), key=lambda p: p[0].sort_key)
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "SchurElt":
        n = obj["n"]
        terms = {
            PeriodicMatrix(n, tuple(tuple(e) for e in t["matrix"])): LaurentPoly.from_json(
                t["coeff"]
            )
            for t in obj["terms"]
        }
        return SchurElt(n, obj["r"], obj.get("basis", "phi"), terms)

    def __repr__(self) -> str:
        bits = ", ".join(
            f"{self.basis}{A.entries}: {c!r}"
            for A, c in sorted(self.terms.items(), key=lambda p: p[0].sort_key)
        )
        return f"SchurElt({self.n}, {self.r}, {bits or '0'})"


def phi_elt(A: PeriodicMatrix, coeff: "LaurentPoly | int" = 1) -> SchurElt:
    if isinstance(coeff, int):
        coeff = LaurentPoly(coeff)
    return SchurElt(A.n, A.r, "phi", {A: coeff})


def theta_elt(A: PeriodicMatrix, coeff: "LaurentPoly | int" = 1) -> SchurElt:
    if isinstance(coeff, int):
        coeff = LaurentPoly(coeff)
    return SchurElt(A.n, A.r, "theta", {A: coeff})


@functools.lru_cache(maxsize=None)
def poincare_h(mu: Composition) -> LaurentPoly:
    """h_mu = t^{-l(w_{0,mu})} sum_{w in W_mu} t^{2 l(w)}."""
    shift = -longest_in_parabolic(mu).length
    out = ZERO
    for w in young_elements(mu):
        out = out + t_pow(shift + 2 * w.length)
    return out


# ---------------------------------------------------------------------------
# The standard basis as endomorphisms of the induced modules


def _decompose_over_x(h: HeckeElt, mu: Composition) -> dict[AffPerm, LaurentPoly]:
    """Write h = sum_z c_z x_mu T_z (z minimal in W_mu z), or raise NotInModule."""
    work = dict(h.terms)
    out: dict[AffPerm, LaurentPoly] = {}
    gens = mu.gens
    while work:
        w = min(work, key=lambda x: x.sort_key)
        rep = w
        changed = True
        while changed:
            changed = False
            for i in rep.left_descents & gens:
                rep = affperm.generator(rep.r, i) * rep
                changed = True
                break
        c = work[w]
        for u in young_elements(mu):
            cx = work.pop(u * rep, ZERO)
            if cx != c:
                raise NotInModule(f"coefficients not constant on the coset of {rep}")
        out[rep] = c
    return out


def _expand_in_TD(
    h: HeckeElt, lam: Composition, mu: Composition
) -> dict[AffPerm, LaurentPoly]:
    """Expand h in the double-coset sums T_D of H_{lam,mu}; keys are minimal reps."""
    work = dict(h.terms)
    out: dict[AffPerm, LaurentPoly] = {}
    while work:
        w = min(work, key=lambda x: x.sort_key)
        rep = min_double_rep(w, lam, mu)
        c = work[w]
        for x in double_coset(CosetTriple(lam, rep, mu)):
            cx = work.pop(x, ZERO)
            if cx != c:
                raise NotInModule(f"coefficients not constant on the double coset of {rep}")
        out[rep] = c
    return out


def phi_apply(A: PeriodicMatrix, h: HeckeElt) -> HeckeElt:
    """Apply the standard basis endomorphism phi_A to h in x_mu H (mu = co(A))."""
    triple = triple_of_matrix(A)
    parts = _decompose_over_x(h, triple.mu)
    td = coset_sum_TD(triple)
    acc = HeckeElt(h.r, "T", {})
    for z, c in parts.items():
        acc = acc + h_mul(td, t_elt(z)).scale(c)
    return acc


@functools.lru_cache(maxsize=None)
def _phi_pair(A: PeriodicMatrix, B: PeriodicMatrix) -> tuple:
    """phi_A . phi_B expanded in the phi basis, as a tuple of (matrix, coeff)."""
    tA = triple_of_matrix(A)
    tB = triple_of_matrix(B)
    if tA.mu != tB.lam:
        return ()
    mu = tA.mu
    image = HeckeElt(A.r, "T", {})
    td_a = coset_sum_TD(tA)
    for z in double_coset(tB):
        if not (z.left_descents & mu.gens):
            image = image + h_mul(td_a, t_elt(z))
    reps = _expand_in_TD(image, tA.lam, tB.mu)
    return tuple(
        sorted(
            (
                (matrix_of_triple(CosetTriple(tA.lam, rep, tB.mu)), c)
                for rep, c in reps.items()
            ),
            key=lambda p: p[0].sort_key,
        )
    )


def phi_mul(a: SchurElt, b: SchurElt) -> SchurElt:
    """Composition product of phi-basis elements (zero unless colors match)."""
    if a.basis != "phi" or b.basis != "phi":
        raise BasisMismatch("phi_mul expects phi-basis elements")
    acc: dict[PeriodicMatrix, LaurentPoly] = {}
    for A, ca in a.terms.items():
        for B, cb in b.terms.items():
            cab = ca * cb
            for C, c in _phi_pair(A, B):
                acc[C] = acc.get(C, ZERO) + cab * c
    return SchurElt(a.n, a.r, "phi", acc)


# ---------------------------------------------------------------------------
# The canonical basis


def alpha_coeff(z: AffPerm, triple: CosetTriple) -> LaurentPoly:
    """The coefficient alpha_{z,w} = t^{-l(w+)} P_{z+,w+} of T_{W zW} in C_{w+}."""
    wp = plus_rep(triple)
    zp = plus_rep(CosetTriple(triple.lam, min_double_rep(z, triple.lam, triple.mu), triple.mu))
    return t_pow(-wp.length) * hecke.kl_poly(zp, wp)


@functools.lru_cache(maxsize=None)
def _theta_phihat(B: PeriodicMatrix) -> tuple:
    """theta_B over the phihat basis: unitriangular with strictly lower tail."""
    tB = triple_of_matrix(B)
    lam, mu = tB.lam, tB.mu
    wp = plus_rep(tB)
    out = []
    for zp in bruhat_lower(wp):
        if not (lam.gens <= zp.left_descents and mu.gens <= zp.right_descents):
            continue
        z = min_double_rep(zp, lam, mu)
        coeff = t_pow(zp.length - wp.length) * hecke.kl_poly(zp, wp)
        out.append((matrix_of_triple(CosetTriple(lam, z, mu)), coeff))
    return tuple(sorted(out, key=lambda p: p[0].sort_key))


def theta_in_phihat(B: PeriodicMatrix) -> SchurElt:
    """Expand theta_B in the phihat basis."""
    return SchurElt(B.n, B.r, "phihat", dict(_theta_phihat(B)))


def _phihat_scale(A: PeriodicMatrix) -> int:
    """phihat_A = t^{exp} phi_A with exp = -l(w_A^+) + l(w_{0,co(A)})."""
    t = triple_of_matrix(A)
    return -plus_rep(t).length + longest_in_parabolic(t.mu).length


def basis_convert(a: SchurElt, target: str) -> SchurElt:
    """Exact conversion among the phi / phihat / theta / e / bracket bases."""
    if target not in BASES:
        raise BasisMismatch(f"unknown Schur basis tag {target!r}")
    src = "phi" if a.basis == "e" else "phihat" if a.basis == "bracket" else a.basis
    dst = "phi" if target == "e" else "phihat" if target == "bracket" else target
    out = SchurElt(a.n, a.r, src, dict(a.terms))
    if src != dst:
        if src == "phi":
            out = SchurElt(
                a.n, a.r, "phihat",
                {A: c * t_pow(-_phihat_scale(A)) for A, c in out.terms.items()},
            )
        elif src == "theta":
            acc: dict[PeriodicMatrix, LaurentPoly] = {}
            for B, c in out.terms.items():
                for A, d in _theta_phihat(B):
                    acc[A] = acc.get(A, ZERO) + c * d
            out = SchurElt(a.n, a.r, "phihat", acc)
        # now out is in phihat
        if dst == "phi":
            out = SchurElt(
                a.n, a.r, "phi",
                {A: c * t_pow(_phihat_scale(A)) for A, c in out.terms.items()},
            )
        elif dst == "theta":
            work = dict(out.terms)
            acc = {}
            while work:
                B = max(work, key=lambda A: (plus_rep(triple_of_matrix(A)).length, A.sort_key))
                c = work[B]
                acc[B] = c
                for A, d in _theta_phihat(B):
                    nv = work.get(A, ZERO) - c * d
                    if nv.is_zero():
                        work.pop(A, None)
                    else:
                        work[A] = nv
            out = SchurElt(a.n, a.r, "theta", acc)
    return SchurElt(a.n, a.r, target, dict(out.terms))


# ---------------------------------------------------------------------------
# Structure constants in the theta basis


@functools.lru_cache(maxsize=None)
def g_expansion(A: PeriodicMatrix, B: PeriodicMatrix) -> tuple:
    """theta_A theta_B = sum g_{A,B,C} theta_C, via exact division by h_mu.

    Every Hecke term C_x C_y with x, y maximal double-coset representatives is
    supported on maximal representatives again, so each z in the expansion
    pins down a unique matrix C.
    """
    tA = triple_of_matrix(A)
    tB = triple_of_matrix(B)
    if tA.mu != tB.lam:
        return ()
    lam, mu, nu = tA.lam, tA.mu, tB.mu
    hmu = poincare_h(mu)
    out = []
    for z, h in h_expansion(plus_rep(tA), plus_rep(tB)).items():
        t = CosetTriple(lam, min_double_rep(z, lam, nu), nu)
        if plus_rep(t) != z:
            raise NotInModule(f"product term {z} is not maximal in its double coset")
        out.append((matrix_of_triple(t), h.exact_div(hmu)))
    return tuple(sorted(out, key=lambda p: p[0].sort_key))


def g_struct(A: PeriodicMatrix, B: PeriodicMatrix, C: PeriodicMatrix) -> LaurentPoly:
    """The structure constant g_{A,B,C} of the theta basis."""
    tC = triple_of_matrix(C)
    tA = triple_of_matrix(A)
    tB = triple_of_matrix(B)
    if tA.mu != tB.lam or (tA.lam, tB.mu) != (tC.lam, tC.mu):
        return ZERO
    for C2, g in g_expansion(A, B):
        if C2 == C:
            return g
    return ZERO


def theta_mul(a: SchurElt, b: SchurElt) -> SchurElt:
    """Product in the theta basis (bilinear extension of g_expansion)."""
    if a.basis != "theta" or b.basis != "theta":
        raise BasisMismatch("theta_mul expects theta-basis elements")
    acc: dict[PeriodicMatrix, LaurentPoly] = {}
    for A, ca in a.terms.items():
        for B, cb in b.terms.items():
            cab = ca * cb
            for C, g in g_expansion(A, B):
                acc[C] = acc.get(C, ZERO) + cab * g
    return SchurElt(a.n, a.r, "theta", acc)


def theta_mul_lemma42(A: PeriodicMatrix, B: PeriodicMatrix) -> SchurElt:
    """Fast path theta_A theta_B = theta_C for A = (lam,1,mu) with W_lam inside W_mu."""
    tA = triple_of_matrix(A)
    tB = triple_of_matrix(B)
    if not tA.w.is_identity() or not (tA.lam.gens <= tA.mu.gens) or tA.mu != tB.lam:
        raise NotInModule("lemma 4.2 fast path needs A = (lam,1,mu) with W_lam <= W_mu")
    wprime = min_double_rep(plus_rep(tB), tA.lam, tB.mu)
    C = matrix_of_triple(CosetTriple(tA.lam, wprime, tB.mu))
    return theta_elt(C)


def theta_mul_lemma61(A: PeriodicMatrix, B: PeriodicMatrix) -> SchurElt:
    """Fast path theta_A theta_B = theta_C for B = (mu,1,nu) with W_nu inside W_mu."""
    tA = triple_of_matrix(A)
    tB = triple_of_matrix(B)
    if not tB.w.is_identity() or not (tB.mu.gens <= tB.lam.gens) or tA.mu != tB.lam:
        raise NotInModule("lemma 6.1 fast path needs B = (mu,1,nu) with W_nu <= W_mu")
    wprime = min_double_rep(plus_rep(tA), tA.lam, tB.mu)
    C = matrix_of_triple(CosetTriple(tA.lam, wprime, tB.mu))
    return theta_elt(C)


# ---------------------------------------------------------------------------
# The bar involution


@functools.lru_cache(maxsize=None)
def _bar_phi(B: PeriodicMatrix) -> tuple:
    """bar(phi_B) in the phi basis, pulled back through the defining property."""
    tB = triple_of_matrix(B)
    lam, mu = tB.lam, tB.mu
    # bar(phi_B)(C_{w0mu}) = bar(phi_B(C_{w0mu})) = t^{-l(w0mu)} bar(T_{D_B});
    # matching against phi_z(C_{w0mu}) = t^{-l(w0mu)} T_{D_z} leaves q^{l(w0mu)}.
    g = h_bar(coset_sum_TD(tB)).scale(t_pow(2 * longest_in_parabolic(mu).length))
    reps = _expand_in_TD(g, lam, mu)
    return tuple(
        sorted(
            (
                (matrix_of_triple(CosetTriple(lam, rep, mu)), c)
                for rep, c in reps.items()
            ),
            key=lambda p: p[0].sort_key,
        )
    )


def schur_bar(a: SchurElt) -> SchurElt:
    """The bar involution of the q-Schur algebra (semilinear, fixes every theta_B)."""
    phi = basis_convert(a, "phi")
    acc: dict[PeriodicMatrix, LaurentPoly] = {}
    for B, c in phi.terms.items():
        cb = c.bar()
        for C, d in _bar_phi(B):
            acc[C] = acc.get(C, ZERO) + cb * d
    return basis_convert(SchurElt(a.n, a.r, "phi", acc), a.basis)


# ---------------------------------------------------------------------------
# Miscellany


def theta_apply(B: PeriodicMatrix, h: HeckeElt) -> HeckeElt:
    """theta_B as a map x_mu H -> x_lam H (used to check theta_B(C_{w0mu}) = C_{w+})."""
    phi = basis_convert(theta_elt(B), "phi")
    acc = HeckeElt(h.r, "T", {})
    for A, c in phi.terms.items():
        acc = acc + phi_apply(A, h).scale(c)
    return acc


def schur_identity(n: int, r: int) -> SchurElt:
    """The unit sum of diagonal theta_lambda over all compositions."""
    terms = {PeriodicMatrix.diagonal(lam): ONE for lam in compositions(n, r)}
    return SchurElt(n, r, "theta", terms)


def omega_comp(n: int, r: int) -> Composition:
    """The composition (1^r, 0^{n-r}) giving the Hecke embedding (needs n >= r)."""
    if n < r:
        raise NotInModule(f"omega needs n >= r, got ({n},{r})")
    return Composition(n, (1,) * r + (0,) * (n - r))


def embed_hecke(h: HeckeElt, n: int) -> SchurElt:
    """The embedding T_w -> phi_{omega,omega}^w of the Hecke algebra (n >= r)."""
    om = omega_comp(n, h.r)
    terms = {
        matrix_of_triple(CosetTriple(om, w, om)): c for w, c in h.terms.items()
    }
    return SchurElt(n, h.r, "phi", terms)
