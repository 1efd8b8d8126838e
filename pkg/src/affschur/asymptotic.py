"""The a-function, gamma-coefficients, asymptotic rings, cells, and the
Lusztig-property verification suite.

The a-function is a supremum over an infinite group, so every value computed
here is window-bounded and carries a certification flag.  A scanned maximum
is promoted to a certified value only when it reaches one of the two exact
ceilings: the global ceiling nu = l(w_0) of the finite symmetric group, or
the per-element ceiling Delta(z) = l(z) - 2 deg P_{1,z}.  Everything
downstream (gamma, the J-rings, cell partitions, the Q-suite) refuses or
reports "skipped" on uncertified data; it never silently trusts a scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .affperm import AffPerm, ball, identity, rho_conjugate
from .errors import (
    BasisMismatch,
    PeriodMismatch,
    UncertifiedAValue,
    UncertifiedBoundary,
    WindowExceeded,
)
from .hecke import h_expansion, kl_poly
from .laurent import ONE, ZERO, LaurentPoly
from .parabolic import (
    Composition,
    CosetTriple,
    PeriodicMatrix,
    compositions,
    enumerate_theta,
    matrix_of_triple,
    min_double_rep,
    plus_rep,
    sigma_plus,
)
from .schur import g_expansion

__all__ = [
    "AValue",
    "JElt",
    "CellReport",
    "nu",
    "delta_small",
    "delta_cap",
    "a_bounded",
    "certified_a",
    "gamma",
    "gamma_mat",
    "gamma_expansion",
    "distinguished_involutions",
    "is_distinguished",
    "dinv_schur",
    "j_elt",
    "j_mul",
    "j_identity_hecke",
    "j_identity_schur",
    "lusztig_phi_hecke",
    "lusztig_phi_schur",
    "hecke_sim_L",
    "schur_sim_L",
    "schur_sim_R",
    "cell_preorder",
    "lowest_cell",
    "based_ring_checks",
    "q_suite",
]


def nu(r: int) -> int:
    """The global a-ceiling: length of the longest element of the finite S_r."""
    return r * (r - 1) // 2


def delta_small(z: AffPerm) -> int:
    """delta(z) = deg_q P_{1,z}, with the rho-part of z matched on both sides."""
    _, u = z.omega_split()
    p = kl_poly(identity(z.r), u)
    return int(p.degree()) // 2


def delta_cap(z: AffPerm) -> int:
    """Delta(z) = l(z) - 2 delta(z), an exact upper bound for a(z)."""
    return z.length - 2 * delta_small(z)


@dataclass(frozen=True)
class AValue:
    """A window-bounded a-function value with its certification status."""

    value: int
    certified: bool
    witness: tuple[AffPerm, AffPerm] | None
    upper_bound: int
    scan_radius: int

    def to_json(self) -> dict:
        return {
            "a": self.value,
            "certified": self.certified,
            "upper_bound": self.upper_bound,
            "scan_radius": self.scan_radius,
            "witness": [list(w.window) for w in self.witness] if self.witness else None,
        }


_A_CACHE: dict[tuple[AffPerm, int], AValue] = {}


def a_bounded(z: AffPerm, length_bound: int) -> AValue:
    """Scan deg h_{x,y,z} over the W' ball of the given radius (rho-reduced).

    Translates fold away on both sides, so the scan ranges over W' pairs and
    the r cyclic conjugates of z.  Certification happens exactly when the
    scanned maximum reaches min(nu, Delta(z)); the witness is the
    lexicographically least pair attaining it.
    """
    _, zf = z.omega_split()
    key = (zf, length_bound)
    hit = _A_CACHE.get(key)
    if hit is not None:
        return hit
    r = z.r
    cap = min(nu(r), delta_cap(zf))
    conjugates = sorted(
        {rho_conjugate(zf, b) for b in range(r)}, key=lambda w: w.sort_key
    )
    # h_{e,z,z} = 1 always contributes degree 0
    best = 0
    witness = (identity(r), zf)
    elems = ball(r, length_bound)
    done = best == cap
    for x in elems:
        if done:
            break
        for y in elems:
            if x.length + y.length < zf.length:
                continue
            exp = h_expansion(x, y)
            for zc in conjugates:
                h = exp.get(zc)
                if h is not None and h.degree() > best:
                    best = int(h.degree())
                    witness = (x, y)
                    if best == cap:
                        done = True
            if done:
                break
    out = AValue(best, best == cap, witness, cap, length_bound)
    _A_CACHE[key] = out
    return out


def certified_a(z: AffPerm, length_bound: int, max_radius: int | None = None) -> AValue:
    """a_bounded with an adaptively widened scan radius until certification.

    The witness pairs needed for long elements live just past half their
    length, so the radius grows to that point and no further.
    """
    _, zf = z.omega_split()
    if max_radius is None:
        max_radius = max(length_bound, (zf.length + 3) // 2 + 1)
    radius = length_bound
    av = a_bounded(zf, radius)
    while not av.certified and radius < max_radius:
        radius += 1
        av = a_bounded(zf, radius)
    return av


# ---------------------------------------------------------------------------
# gamma-coefficients


def gamma(x: AffPerm, y: AffPerm, z: AffPerm, length_bound: int = 4) -> int:
    """The coefficient of t^{a(z)} in h_{x,y,z}; requires a certified a(z)."""
    av = certified_a(z, length_bound)
    if not av.certified:
        raise UncertifiedAValue(f"a({z}) not certified at radius {av.scan_radius}")
    h = h_expansion(x, y).get(z, ZERO)
    return h.coeff(av.value)


def gamma_expansion(
    x: AffPerm, y: AffPerm, length_bound: int = 4
) -> dict[AffPerm, int]:
    """All nonzero gamma_{x,y,z}: the J-ring product t_x t_y."""
    out: dict[AffPerm, int] = {}
    for z, h in h_expansion(x, y).items():
        av = certified_a(z, length_bound)
        if not av.certified:
            raise WindowExceeded(
                f"product term {z} has uncertified a-value at radius {av.scan_radius}"
            )
        g = h.coeff(av.value)
        if g:
            out[z] = g
    return out


def gamma_mat(
    A: PeriodicMatrix, B: PeriodicMatrix, C: PeriodicMatrix, length_bound: int = 4
) -> int:
    """gamma_{A,B,C}: the Hecke gamma of the sigma's when g_{A,B,C} is nonzero."""
    for C2, g in g_expansion(A, B):
        if C2 == C and not g.is_zero():
            return gamma(sigma_plus(A), sigma_plus(B), sigma_plus(C), length_bound)
    return 0


def gamma_mat_expansion(
    A: PeriodicMatrix, B: PeriodicMatrix, length_bound: int = 4
) -> dict[PeriodicMatrix, int]:
    """All nonzero gamma_{A,B,C}: the J_Schur product t_A t_B."""
    out: dict[PeriodicMatrix, int] = {}
    sa, sb = sigma_plus(A), sigma_plus(B)
    for C, g in g_expansion(A, B):
        gm = gamma(sa, sb, sigma_plus(C), length_bound)
        if gm:
            out[C] = gm
    return out


# ---------------------------------------------------------------------------
# Distinguished involutions


def is_distinguished(z: AffPerm, length_bound: int = 4) -> bool:
    """True iff z is an involution with certified a(z) = Delta(z)."""
    if z.omega_degree != 0:
        return False
    if not (z * z).is_identity():
        return False
    av = certified_a(z, length_bound)
    if not av.certified:
        raise UncertifiedAValue(f"a({z}) not certified at radius {av.scan_radius}")
    return av.value == delta_cap(z)


def distinguished_involutions(r: int, length_bound: int) -> tuple[AffPerm, ...]:
    """All distinguished involutions found in the W' ball of the given radius.

    Raises UncertifiedBoundary if any a-value in the ball fails to certify at
    exactly this radius (no adaptive widening here, per the window contract).
    """
    out = []
    for z in ball(r, length_bound):
        av = a_bounded(z, length_bound)
        if not av.certified:
            raise UncertifiedBoundary(
                f"a({z}) uncertified at radius {length_bound}; enlarge the window"
            )
        if av.value == delta_cap(z) and (z * z).is_identity():
            out.append(z)
    return tuple(sorted(out, key=lambda w: w.sort_key))


def dinv_schur(
    n: int, r: int, length_bound: int, omega_window: tuple[int, int] | None = None
) -> tuple[PeriodicMatrix, ...]:
    """The distinguished matrices in the window: ro = co and sigma in D."""
    out = []
    for A in enumerate_theta(n, r, length_bound, omega_window):
        if A.ro != A.co:
            continue
        if is_distinguished(sigma_plus(A), length_bound):
            out.append(A)
    return tuple(sorted(out, key=lambda A: A.sort_key))


def dinv_schur_colored(
    n: int, r: int, mu: Composition, length_bound: int
) -> tuple[PeriodicMatrix, ...]:
    """D_Delta(n,r)_mu: distinguished matrices with ro = co = mu, via the Hecke D."""
    out = []
    for d in distinguished_involutions(r if r >= 2 else 1, length_bound):
        if mu.gens <= d.left_descents and mu.gens <= d.right_descents:
            t = CosetTriple(mu, min_double_rep(d, mu, mu), mu)
            if plus_rep(t) == d:
                out.append(matrix_of_triple(t))
    return tuple(sorted(set(out), key=lambda A: A.sort_key))


# ---------------------------------------------------------------------------
# The asymptotic rings


@dataclass(frozen=True)
class JElt:
    """An element of an asymptotic ring, over W (ring="J_W") or matrices
    (ring="J_Schur").

    Based-ring elements carry constant (integer) coefficients; the images of
    the Lusztig homomorphisms extend scalars to Laurent polynomials.
    """

    ring: str
    r: int
    n: int = 0
    terms: Mapping[object, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: c for k, c in self.terms.items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)
        if self.ring not in ("J_W", "J_Schur"):
            raise BasisMismatch(f"unknown asymptotic ring tag {self.ring!r}")

    def coeff(self, key) -> LaurentPoly:
        return self.terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def support(self) -> list:
        return sorted(self.terms, key=lambda k: k.sort_key)

    def __add__(self, other: "JElt") -> "JElt":
        if (self.ring, self.r, self.n) != (other.ring, other.r, other.n):
            raise PeriodMismatch("asymptotic ring mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return JElt(self.ring, self.r, self.n, terms)

    def __sub__(self, other: "JElt") -> "JElt":
        return self + other.scale(-1)

    def scale(self, c: "LaurentPoly | int") -> "JElt":
        if isinstance(c, int):
            c = LaurentPoly(c)
        return JElt(self.ring, self.r, self.n, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, JElt):
            return NotImplemented
        return (self.ring, self.r, self.n, dict(self.terms)) == (
            other.ring,
            other.r,
            other.n,
            dict(other.terms),
        )

    def to_json(self) -> dict:
        def key_json(k):
            if isinstance(k, AffPerm):
                return {"window": list(k.window)}
            return {"matrix": [list(e) for e in k.entries]}

        return {
            "ring": self.ring,
            "r": self.r,
            "n": self.n,
            "terms": [
                dict(key_json(k), coeff=c.to_json())
                for k, c in sorted(self.terms.items(), key=lambda p: p[0].sort_key)
            ],
        }


def j_elt(key, ring: str | None = None, coeff: "LaurentPoly | int" = 1) -> JElt:
    """The basis element t_key of the appropriate asymptotic ring."""
    if isinstance(coeff, int):
        coeff = LaurentPoly(coeff)
    if isinstance(key, AffPerm):
        return JElt(ring or "J_W", key.r, 0, {key: coeff})
    return JElt(ring or "J_Schur", key.r, key.n, {key: coeff})


def j_mul(a: JElt, b: JElt, length_bound: int = 4) -> JElt:
    """The based-ring product t_x t_y = sum gamma_{x,y,z} t_z (both rings)."""
    if (a.ring, a.r, a.n) != (b.ring, b.r, b.n):
        raise PeriodMismatch("asymptotic ring mismatch")
    expand = gamma_expansion if a.ring == "J_W" else gamma_mat_expansion
    acc: dict[object, LaurentPoly] = {}
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            cxy = cx * cy
            for z, g in expand(x, y, length_bound).items():
                acc[z] = acc.get(z, ZERO) + cxy * g
    return JElt(a.ring, a.r, a.n, acc)


def j_identity_hecke(r: int, length_bound: int) -> JElt:
    terms = {d: ONE for d in distinguished_involutions(r, length_bound)}
    return JElt("J_W", r, 0, terms)


def j_identity_schur(n: int, r: int, length_bound: int) -> JElt:
    terms: dict[object, LaurentPoly] = {}
    for lam in compositions(n, r):
        for D in dinv_schur_colored(n, r, lam, length_bound):
            terms[D] = ONE
    return JElt("J_Schur", r, n, terms)


# ---------------------------------------------------------------------------
# The Lusztig homomorphisms (A-coefficient images in the asymptotic rings)


def lusztig_phi_hecke(w: AffPerm, length_bound: int) -> JElt:
    """phi(C_w) = sum over u and distinguished d with a(d) = a(u) of h_{w,d,u} t_u."""
    acc: dict[object, LaurentPoly] = {}
    for d in distinguished_involutions(w.r, length_bound):
        ad = certified_a(d, length_bound)
        for u, h in h_expansion(w, d).items():
            au = certified_a(u, length_bound)
            if not au.certified:
                raise WindowExceeded(f"a({u}) uncertified in phi(C_w) truncation")
            if au.value == ad.value:
                acc[u] = acc.get(u, ZERO) + h
    return JElt("J_W", w.r, 0, acc)


def lusztig_phi_hecke_elt(a, length_bound: int) -> JElt:
    """A-linear extension of lusztig_phi_hecke to C-basis Hecke elements."""
    out = JElt("J_W", a.r, 0, {})
    for w, c in a.terms.items():
        out = out + lusztig_phi_hecke(w, length_bound).scale(c)
    return out


def lusztig_phi_schur(A: PeriodicMatrix, length_bound: int) -> JElt:
    """Phi(theta_A) = sum over B and distinguished D colored co(A) with
    a(D) = a(B) of g_{A,D,B} t_B."""
    mu = A.co
    acc: dict[object, LaurentPoly] = {}
    for D in dinv_schur_colored(A.n, A.r, mu, length_bound):
        aD = certified_a(sigma_plus(D), length_bound)
        for B, g in g_expansion(A, D):
            aB = certified_a(sigma_plus(B), length_bound)
            if not aB.certified:
                raise WindowExceeded(f"a({B}) uncertified in Phi truncation")
            if aB.value == aD.value:
                acc[B] = acc.get(B, ZERO) + g
    return JElt("J_Schur", A.r, A.n, acc)


def lusztig_phi_schur_elt(a, length_bound: int) -> JElt:
    """A-linear extension of lusztig_phi_schur to theta-basis elements."""
    out = JElt("J_Schur", a.r, a.n, {})
    for A, c in a.terms.items():
        out = out + lusztig_phi_schur(A, length_bound).scale(c)
    return out


# ---------------------------------------------------------------------------
# Cells


@dataclass
class CellReport:
    """A window-bounded cell computation: preorder edges, the partition, and
    explicit caveats about what the window cannot decide."""

    flavor: str
    window: str
    elements: list
    edges: list[tuple[int, int]]
    cells: list[list[int]]
    caveats: list[str]
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def key_json(k):
            if isinstance(k, AffPerm):
                return list(k.window)
            return [list(e) for e in k.entries]

        return {
            "flavor": self.flavor,
            "window": self.window,
            "elements": [key_json(k) for k in self.elements],
            "edges": [list(e) for e in self.edges],
            "cells": [sorted(c) for c in self.cells],
            "caveats": self.caveats,
            "extra": self.extra,
        }


def _transitive_closure(n: int, edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    succ = {i: set() for i in range(n)}
    for a, b in edges:
        succ[a].add(b)
    closed = set()
    for start in range(n):
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in succ[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closed.update((start, t) for t in seen)
    return closed


def _scc_partition(n: int, relation: set[tuple[int, int]]) -> list[list[int]]:
    cells = []
    assigned = [False] * n
    for i in range(n):
        if assigned[i]:
            continue
        cell = [
            j
            for j in range(n)
            if (i, j) in relation and (j, i) in relation and not assigned[j]
        ]
        for j in cell:
            assigned[j] = True
        cells.append(sorted(cell))
    return sorted(cells)


def hecke_sim_L(x: AffPerm, y: AffPerm, length_bound: int = 4) -> bool:
    """x ~L y in W, by the exact criterion t_x t_{y^{-1}} != 0."""
    return bool(gamma_expansion(x, y.inverse, length_bound))


def schur_sim_L(A: PeriodicMatrix, B: PeriodicMatrix, length_bound: int = 4) -> bool:
    """A ~L B, by the exact criterion t_A t_{B^t} != 0."""
    return bool(gamma_mat_expansion(A, B.transpose(), length_bound))


def schur_sim_R(A: PeriodicMatrix, B: PeriodicMatrix, length_bound: int = 4) -> bool:
    """A ~R B, i.e. A^t ~L B^t."""
    return bool(gamma_mat_expansion(A.transpose(), B, length_bound))


def cell_preorder(
    elements,
    flavor: str = "L",
    length_bound: int = 4,
    window_desc: str = "",
) -> CellReport:
    """Window-bounded cell preorder over Hecke elements or matrices.

    One-step relations come from products with left (and, for LR, right)
    factors inside the window, then the reflexive-transitive closure is taken
    and its strongly-connected components reported as cells.  Because the
    quantified factor ranges only over the window, missing edges (never wrong
    edges) are possible; the caveats say so.
    """
    elements = sorted(set(elements), key=lambda k: k.sort_key)
    index = {k: i for i, k in enumerate(elements)}
    n = len(elements)
    is_hecke = bool(elements) and isinstance(elements[0], AffPerm)

    def left_edges(items) -> set[tuple[int, int]]:
        edges = set()
        for b in items:
            for c in items:
                if is_hecke:
                    support = h_expansion(c, b).keys()
                else:
                    support = (C for C, _ in g_expansion(c, b))
                for a in support:
                    ia = index.get(a)
                    if ia is not None:
                        edges.add((ia, index[b]))
        return edges

    if flavor == "L":
        edges = left_edges(elements)
    elif flavor == "R":
        flip = (lambda w: w.inverse) if is_hecke else (lambda A: A.transpose())
        rep = cell_preorder([flip(k) for k in elements], "L", length_bound)
        edges = {
            (index[flip(rep.elements[a])], index[flip(rep.elements[b])])
            for a, b in rep.edges
        }
    elif flavor == "LR":
        left = cell_preorder(elements, "L", length_bound).edges
        right = cell_preorder(elements, "R", length_bound).edges
        edges = set(left) | set(right)
    else:
        raise BasisMismatch(f"unknown cell flavor {flavor!r}")

    closure = _transitive_closure(n, set(edges))
    cells = _scc_partition(n, closure)
    return CellReport(
        flavor=flavor,
        window=window_desc or f"{n} elements",
        elements=list(elements),
        edges=sorted(edges),
        cells=cells,
        caveats=[
            "window-bounded: relations are sound but cells may merge or extend "
            "outside the window"
        ],
    )


def lowest_cell(
    n: int,
    r: int,
    length_bound: int,
    omega_window: tuple[int, int] | None = None,
) -> CellReport:
    """Members of the lowest two-sided cell in the window and its left cells.

    Membership is a(A) = nu (certified); the left-cell partition pairs the
    Hecke-level left cell of sigma(A) with the column composition co(A).
    """
    win = enumerate_theta(n, r, length_bound, omega_window)
    nu_r = nu(r)
    members = []
    for A in win:
        av = certified_a(sigma_plus(A), length_bound)
        if not av.certified:
            raise UncertifiedAValue(f"a({A}) uncertified; enlarge the window")
        if av.value == nu_r:
            members.append(A)
    members = sorted(members, key=lambda A: A.sort_key)
    index = {A: i for i, A in enumerate(members)}

    # partition the sigma values by Hecke ~L (exact criterion)
    sigmas = sorted({sigma_plus(A) for A in members}, key=lambda w: w.sort_key)
    sig_class: dict[AffPerm, int] = {}
    reps: list[AffPerm] = []
    for s in sigmas:
        for ci, rep in enumerate(reps):
            if hecke_sim_L(s, rep, length_bound):
                sig_class[s] = ci
                break
        else:
            sig_class[s] = len(reps)
            reps.append(s)

    groups: dict[tuple, list[int]] = {}
    for A in members:
        key = (A.co.parts, sig_class[sigma_plus(A)])
        groups.setdefault(key, []).append(index[A])
    cells = sorted(sorted(g) for g in groups.values())
    return CellReport(
        flavor="L",
        window=f"(n={n}, r={r}, L={length_bound}, omega={omega_window or (-r, r)})",
        elements=members,
        edges=[],
        cells=cells,
        caveats=[
            "left cells computed inside the lowest two-sided cell only; the "
            "count is exact once every class is inhabited in the window"
        ],
        extra={
            "left_cell_count": len(cells),
            "nu": nu_r,
            "member_count": len(members),
            "certified": True,
        },
    )


# ---------------------------------------------------------------------------
# Based-ring checks and the Q-suite


def based_ring_checks(
    n: int,
    r: int,
    length_bound: int,
    omega_window: tuple[int, int] | None = None,
) -> dict:
    """Verify the based-ring axioms for the matrix asymptotic ring on a window."""
    win = enumerate_theta(n, r, length_bound, omega_window)
    win = tuple(sorted(set(win) | {A.transpose() for A in win}, key=lambda A: A.sort_key))
    dd = set(dinv_schur(n, r, length_bound, omega_window))
    report = {
        "window_size": len(win),
        "distinguished": len(dd),
        "nonnegative_integer_constants": True,
        "identity_is_basis_subsum": True,
        "tau_pairing": True,
        "transpose_antiautomorphism": True,
        "failures": [],
    }
    ident = j_identity_schur(n, r, length_bound)
    if not (set(ident.terms) == dd and all(c == ONE for c in ident.terms.values())):
        report["identity_is_basis_subsum"] = False
        report["failures"].append("identity is not the sub-sum over distinguished basis elements")
    for A in win:
        ta = j_elt(A)
        if j_mul(ident, ta, length_bound) != ta or j_mul(ta, ident, length_bound) != ta:
            report["identity_is_basis_subsum"] = False
            report["failures"].append(f"identity does not fix t_A for A={A.entries}")
    for A in win:
        for B in win:
            gm = gamma_mat_expansion(A, B, length_bound)
            for C, g in gm.items():
                if g < 0:
                    report["nonnegative_integer_constants"] = False
                    report["failures"].append(
                        f"gamma({A.entries},{B.entries},{C.entries}) = {g} < 0"
                    )
                gt = gamma_mat_expansion(B.transpose(), A.transpose(), length_bound).get(
                    C.transpose(), 0
                )
                if gt != g:
                    report["transpose_antiautomorphism"] = False
                    report["failures"].append(
                        f"transpose map fails on ({A.entries},{B.entries},{C.entries})"
                    )
            tau = sum(
                g
                for C, g in gm.items()
                if C.ro == C.co and is_distinguished(sigma_plus(C), length_bound)
            )
            expected = 1 if B == A.transpose() else 0
            if tau != expected:
                report["tau_pairing"] = False
                report["failures"].append(
                    f"tau(t_A t_B) = {tau} != {expected} for A={A.entries}, B={B.entries}"
                )
    report["ok"] = not report["failures"]
    return report


def _q15_identity_holds(
    A: PeriodicMatrix,
    Ap: PeriodicMatrix,
    B: PeriodicMatrix,
    C: PeriodicMatrix,
    points: list[int],
) -> bool:
    """Check the two-indeterminate commutation identity at integer points.

    Both sides are finite sums sum g'(v') * g(v) with exactly one primed
    factor per term, hence Laurent polynomials in v' whose exponent span is
    bounded by the individual g's; agreement at enough nonzero points is
    agreement as bivariate Laurent polynomials.
    """
    lhs_pairs = []  # (primed value poly, unprimed poly)
    for Bp, g1 in g_expansion(C, Ap):
        g2 = next((g for C2, g in g_expansion(A, Bp) if C2 == B), None)
        if g2 is not None:
            lhs_pairs.append((g1, g2))
    rhs_pairs = []
    for Bp, g1 in g_expansion(A, C):
        g2 = next((g for C2, g in g_expansion(Bp, Ap) if C2 == B), None)
        if g2 is not None:
            rhs_pairs.append((g2, g1))  # primed factor is g_{B',A',B}
    spans = [
        int(p.degree() - p.min_degree())
        for p, _ in itertools.chain(lhs_pairs, rhs_pairs)
        if not p.is_zero()
    ]
    needed = max([3, len(points)] + [s + 1 for s in spans])
    eval_points = list(points)
    nxt = (max(points) if points else 1) + 1
    while len(eval_points) < needed:
        eval_points.append(nxt)
        nxt += 1
    for c in eval_points:
        lhs: dict[int, Fraction] = {}
        for primed, plain in lhs_pairs:
            scalar = primed.evaluate(c)
            for e, v in plain.items():
                lhs[e] = lhs.get(e, Fraction(0)) + scalar * v
        rhs: dict[int, Fraction] = {}
        for primed, plain in rhs_pairs:
            scalar = primed.evaluate(c)
            for e, v in plain.items():
                rhs[e] = rhs.get(e, Fraction(0)) + scalar * v
        if {e: v for e, v in lhs.items() if v} != {e: v for e, v in rhs.items() if v}:
            return False
    return True


def q_suite(
    n: int,
    r: int,
    length_bound: int,
    omega_window: tuple[int, int] | None = None,
    q15_points: tuple[int, ...] = (2, 3, 5),
    q15_cap: int = 600,
    q15_sub_length: int = 2,
) -> dict:
    """Run the Q1-Q15 property suite on a certified window.

    Every check is restricted to certified data; anything the window cannot
    decide is reported as skipped, never as a pass.  Q12 does not exist in
    the numbering and is reported as such.
    """
    win = enumerate_theta(n, r, length_bound, omega_window)
    win = tuple(sorted(set(win) | {A.transpose() for A in win}, key=lambda A: A.sort_key))
    index = {A: i for i, A in enumerate(win)}
    results: dict[str, str] = {}
    details: dict[str, object] = {}
    counterexamples: dict[str, list] = {}

    aval: dict[PeriodicMatrix, AValue] = {}
    uncertified = []
    for A in win:
        av = certified_a(sigma_plus(A), length_bound)
        aval[A] = av
        if not av.certified:
            uncertified.append(A)
    certified = [A for A in win if aval[A].certified]
    details["window_size"] = len(win)
    details["uncertified"] = len(uncertified)

    def a_of(A: PeriodicMatrix) -> int:
        av = aval.get(A) or certified_a(sigma_plus(A), length_bound)
        if not av.certified:
            raise UncertifiedAValue(str(A))
        return av.value

    def dinv_pred(A: PeriodicMatrix) -> bool:
        return A.ro == A.co and is_distinguished(sigma_plus(A), length_bound)

    def fail(q: str, payload) -> None:
        results[q] = "fail"
        counterexamples.setdefault(q, []).append(payload)

    def finish(q: str, checked: int, skipped: int = 0) -> None:
        if results.get(q) != "fail":
            results[q] = "pass" if checked else "skipped"
        details[q] = {"checked": checked, "skipped": skipped}

    # gamma expansions for all composable window pairs
    gam: dict[tuple, dict[PeriodicMatrix, int]] = {}
    for A in certified:
        for B in certified:
            if A.co == B.ro:
                try:
                    gam[(A, B)] = gamma_mat_expansion(A, B, length_bound)
                except (UncertifiedAValue, WindowExceeded):
                    gam[(A, B)] = None  # type: ignore[assignment]

    # Q1: a(A) <= Delta(sigma(A))
    checked = 0
    for A in certified:
        if aval[A].value > delta_cap(sigma_plus(A)):
            fail("Q1", {"A": A.to_json(), "a": aval[A].value})
        checked += 1
    finish("Q1", checked, len(uncertified))

    # Q2: gamma_{A,B,D} != 0 with D distinguished forces B = A^t
    checked = skipped = 0
    for (A, B), gm in gam.items():
        if gm is None:
            skipped += 1
            continue
        for D, g in gm.items():
            if dinv_pred(D):
                checked += 1
                if B != A.transpose():
                    fail("Q2", {"A": A.to_json(), "B": B.to_json(), "D": D.to_json()})
    finish("Q2", checked, skipped)

    # Q3 and Q5: unique distinguished D with gamma_{A^t,A,D} != 0, and it is 1
    dinv_of: dict[PeriodicMatrix, PeriodicMatrix] = {}
    checked = skipped = 0
    for A in certified:
        gm = gam.get((A.transpose(), A))
        if gm is None:
            gm = gamma_mat_expansion(A.transpose(), A, length_bound)
        hits = [(D, g) for D, g in gm.items() if dinv_pred(D)]
        checked += 1
        if len(hits) != 1:
            fail("Q3", {"A": A.to_json(), "count": len(hits)})
            continue
        D, g = hits[0]
        dinv_of[A] = D
        if g != 1:
            fail("Q5", {"A": A.to_json(), "D": D.to_json(), "gamma": g})
    finish("Q3", checked, skipped)
    finish("Q5", checked, skipped)

    # Q6: distinguished matrices are symmetric
    dd = [A for A in certified if dinv_pred(A)]
    for D in dd:
        if D.transpose() != D:
            fail("Q6", {"D": D.to_json()})
    finish("Q6", len(dd))

    # preorders from in-window products (sound one-step edges + closure);
    # edges live at the g-level, which is how the preorder is defined
    edges_L: set[tuple[int, int]] = set()
    for C in win:
        for B in win:
            if C.co != B.ro:
                continue
            for A2, _g in g_expansion(C, B):
                ia = index.get(A2)
                if ia is not None:
                    edges_L.add((ia, index[B]))
    rel_L = _transitive_closure(len(win), edges_L)
    edges_R = set()
    for a, b in edges_L:
        ta, tb = win[a].transpose(), win[b].transpose()
        if ta in index and tb in index:
            edges_R.add((index[ta], index[tb]))
    rel_R = _transitive_closure(len(win), edges_R)
    rel_LR = _transitive_closure(len(win), edges_L | edges_R)

    # Q4: A <=_LR B implies a(A) >= a(B)
    checked = skipped = 0
    for ia, ib in rel_LR:
        A, B = win[ia], win[ib]
        if not (aval[A].certified and aval[B].certified):
            skipped += 1
            continue
        checked += 1
        if aval[A].value < aval[B].value:
            fail("Q4", {"A": A.to_json(), "B": B.to_json()})
    finish("Q4", checked, skipped)

    # Q7: cyclic symmetry of gamma, over every g-support triple of the window
    checked = 0
    for (A, B), gm in gam.items():
        if gm is None:
            continue
        for C, _g in g_expansion(A, B):
            g1 = gm.get(C, 0)
            g2 = gamma_mat_expansion(B, C.transpose(), length_bound).get(A.transpose(), 0)
            g3 = gamma_mat_expansion(C.transpose(), A, length_bound).get(B.transpose(), 0)
            checked += 1
            if not (g1 == g2 == g3):
                fail(
                    "Q7",
                    {"A": A.to_json(), "B": B.to_json(), "C": C.to_json(), "g": [g1, g2, g3]},
                )
    finish("Q7", checked)

    # Q8: gamma != 0 forces the three cell relations
    checked = 0
    for (A, B), gm in gam.items():
        if not gm:
            continue
        for C, g in gm.items():
            checked += 1
            if not (
                schur_sim_L(A, B.transpose(), length_bound)
                and schur_sim_L(B, C, length_bound)
                and schur_sim_R(A, C, length_bound)
            ):
                fail("Q8", {"A": A.to_json(), "B": B.to_json(), "C": C.to_json()})
    finish("Q8", checked)

    # Q9/Q10/Q11: preorder plus equal a forces equivalence
    checked9 = checked10 = checked11 = 0
    skipped11 = 0
    for ia, ib in rel_L:
        A, B = win[ia], win[ib]
        if ia == ib or not (aval[A].certified and aval[B].certified):
            continue
        if aval[A].value == aval[B].value:
            checked9 += 1
            if not schur_sim_L(A, B, length_bound):
                fail("Q9", {"A": A.to_json(), "B": B.to_json()})
    for ia, ib in rel_R:
        A, B = win[ia], win[ib]
        if ia == ib or not (aval[A].certified and aval[B].certified):
            continue
        if aval[A].value == aval[B].value:
            checked10 += 1
            if not schur_sim_R(A, B, length_bound):
                fail("Q10", {"A": A.to_json(), "B": B.to_json()})
    for ia, ib in rel_LR:
        A, B = win[ia], win[ib]
        if ia == ib or not (aval[A].certified and aval[B].certified):
            continue
        if aval[A].value != aval[B].value:
            continue
        checked11 += 1
        found = False
        candidates = [dinv_of.get(A), A.transpose()] + list(win)
        for C in candidates:
            if C is None or A.co != C.ro or C.co != B.ro:
                continue
            step = gamma_mat_expansion(A, C, length_bound)
            for E, g1 in step.items():
                if gamma_mat_expansion(E, B, length_bound):
                    found = True
                    break
            if found:
                break
        if not found:
            skipped11 += 1  # no witness inside the window; not decidable here
    finish("Q9", checked9)
    finish("Q10", checked10)
    finish("Q11", checked11 - skipped11, skipped11)

    # Q13: each left cell (exact ~L classes in the window) has a unique D
    classes: list[list[PeriodicMatrix]] = []
    for A in certified:
        for cls in classes:
            if A.co == cls[0].co and schur_sim_L(A, cls[0], length_bound):
                cls.append(A)
                break
        else:
            classes.append([A])
    checked = skipped = 0
    for cls in classes:
        ds = [A for A in cls if dinv_pred(A)]
        if len(ds) > 1:
            fail("Q13", {"cell": [A.to_json() for A in cls], "count": len(ds)})
        elif len(ds) == 0:
            skipped += 1  # the cell's involution lies outside the window
        else:
            checked += 1
            D = ds[0]
            for A in cls:
                gm = gam.get((A.transpose(), A)) or gamma_mat_expansion(
                    A.transpose(), A, length_bound
                )
                if gm.get(D, 0) == 0:
                    fail("Q13", {"A": A.to_json(), "D": D.to_json()})
    finish("Q13", checked, skipped)

    # Q14: A ~LR A^t, witnessed through the distinguished involution of A
    checked = skipped = 0
    for A in certified:
        D = dinv_of.get(A)
        if D is None:
            skipped += 1
            continue
        ta = j_elt(A)
        prod = j_mul(j_mul(ta, j_elt(D), length_bound), j_elt(A.transpose()), length_bound)
        checked += 1
        if prod.is_zero():
            fail("Q14", {"A": A.to_json()})
    finish("Q14", checked, skipped)

    # Q15: the two-indeterminate commutation identity, on a capped tuple set
    sub = [A for A in certified if sigma_plus(A).length <= q15_sub_length]
    tuples = []
    off_hypothesis = []
    for C in sub:
        for Ap in sub:
            if C.co != Ap.ro:
                continue
            for A in sub:
                if A.co != C.ro:
                    continue
                for B in sub:
                    if B.ro != A.ro or B.co != Ap.co:
                        continue
                    if aval[B].value == aval[C].value:
                        tuples.append((A, Ap, B, C))
                    else:
                        off_hypothesis.append((A, Ap, B, C))
    enumerated = len(tuples)
    tuples = tuples[:q15_cap]
    checked = 0
    for A, Ap, B, C in tuples:
        checked += 1
        if not _q15_identity_holds(A, Ap, B, C, list(q15_points)):
            fail(
                "Q15",
                {
                    "A": A.to_json(),
                    "A'": Ap.to_json(),
                    "B": B.to_json(),
                    "C": C.to_json(),
                },
            )
    finish("Q15", checked)
    # informational only: does the identity also hold without a(C) = a(B)?
    held = failed = 0
    for A, Ap, B, C in off_hypothesis[: max(q15_cap // 10, 20)]:
        if _q15_identity_holds(A, Ap, B, C, list(q15_points)):
            held += 1
        else:
            failed += 1
    details["Q15"] = {
        "checked": checked,
        "skipped": 0,
        "tuples_enumerated": enumerated,
        "without_hypothesis": {"held": held, "failed": failed},
    }

    results["Q12"] = "absent-in-paper"
    ordered = {f"Q{i}": results.get(f"Q{i}", "skipped") for i in range(1, 16)}
    out = {
        "n": n,
        "r": r,
        "length_bound": length_bound,
        "omega_window": list(omega_window or (-r, r)),
        "results": ordered,
        "details": details,
        "counterexamples": counterexamples,
        "failures": sorted(q for q, s in ordered.items() if s == "fail"),
    }
    out["ok"] = not out["failures"]
    return out
