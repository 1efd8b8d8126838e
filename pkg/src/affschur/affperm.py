"""The extended affine symmetric group in window notation.

Elements are periodic bijections w of the integers with w(i + r) = w(i) + r,
stored by the window (w(1), ..., w(r)).  The Coxeter part W' is generated by
s_0, ..., s_{r-1}; the length-zero rotation rho shifts every integer by one
and generates the group Omega, with W = Omega x| W'.

>>> s0 = generator(2, 0)
>>> s0.window
(0, 3)
>>> (s0 * s0).is_identity()
True
>>> rho(2).length
0
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from .errors import IndexOutOfRange, InvalidWindow, PeriodMismatch

__all__ = [
    "AffPerm",
    "identity",
    "generator",
    "rho",
    "from_word",
    "ball",
    "bruhat_leq",
    "bruhat_lower",
    "rho_conjugate",
]


@dataclass(frozen=True)
class AffPerm:
    """A periodic permutation of Z with period r, given by its window."""

    r: int
    window: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        if self.r < 1 or len(self.window) != self.r:
            raise InvalidWindow(f"window {self.window} has wrong size for r={self.r}")
        if len({v % self.r for v in self.window}) != self.r:
            raise InvalidWindow(f"window {self.window} repeats a residue mod {self.r}")

    # -- evaluation and group law ----------------------------------------

    def apply(self, i: int) -> int:
        """The image w(i), via periodic extension of the window."""
        j = (i - 1) % self.r
        return self.window[j] + (i - 1 - j)

    def __mul__(self, other: "AffPerm") -> "AffPerm":
        """Composition (self*other)(i) = self(other(i))."""
        if not isinstance(other, AffPerm):
            return NotImplemented
        if self.r != other.r:
            raise PeriodMismatch(f"periods {self.r} and {other.r} differ")
        return AffPerm(self.r, tuple(self.apply(v) for v in other.window))

    @functools.cached_property
    def inverse(self) -> "AffPerm":
        win = [0] * self.r
        for i, v in enumerate(self.window, start=1):
            j = (v - 1) % self.r
            # w(i) = (j+1) + k*r  =>  w^{-1}(j+1) = i - k*r
            win[j] = i - (v - 1 - j)
        return AffPerm(self.r, tuple(win))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.window, start=1))

    # -- statistics --------------------------------------------------------

    @functools.cached_property
    def length(self) -> int:
        """Coxeter length, by the floor-sum inversion count over the window."""
        w, r = self.window, self.r
        return sum(
            abs((w[j] - w[i]) // r) for i in range(r) for j in range(i + 1, r)
        )

    @functools.cached_property
    def omega_degree(self) -> int:
        """The power of rho in the factorization rho^a * (element of W')."""
        return (sum(self.window) - self.r * (self.r + 1) // 2) // self.r

    @functools.cached_property
    def right_descents(self) -> frozenset[int]:
        """Indices i in 0..r-1 with w*s_i < w, i.e. w(i) > w(i+1)."""
        if self.r == 1:
            return frozenset()
        out = set()
        if self.window[self.r - 1] - self.r > self.window[0]:
            out.add(0)
        for i in range(1, self.r):
            if self.window[i - 1] > self.window[i]:
                out.add(i)
        return frozenset(out)

    @functools.cached_property
    def left_descents(self) -> frozenset[int]:
        return self.inverse.right_descents

    @property
    def sort_key(self) -> tuple:
        return (self.length, self.window)

    # -- normal form -------------------------------------------------------

    def omega_split(self) -> tuple[int, "AffPerm"]:
        """Write self as rho^a * u with u in W'; returns (a, u)."""
        a = self.omega_degree
        return a, AffPerm(self.r, tuple(v - a for v in self.window))

    def shift(self, a: int) -> "AffPerm":
        """Left-multiply by rho^a (add a to every window entry)."""
        if a == 0:
            return self
        return AffPerm(self.r, tuple(v + a for v in self.window))

    def reduced_word(self) -> tuple[int, tuple[int, ...]]:
        """A reduced factorization rho^a * s_{i1} ... s_{ik}; returns (a, word).

        Letters are produced by greedily stripping the lowest-index right
        descent, so the word is canonical.
        """
        a, u = self.omega_split()
        letters = []
        while not u.is_identity():
            i = min(u.right_descents)
            letters.append(i)
            u = u * generator(self.r, i)
        return a, tuple(reversed(letters))

    def __repr__(self) -> str:
        return f"AffPerm({self.r}, {self.window})"


def identity(r: int) -> AffPerm:
    return AffPerm(r, tuple(range(1, r + 1)))


@functools.lru_cache(maxsize=None)
def generator(r: int, i: int) -> AffPerm:
    """The Coxeter generator s_i: adds 1 to integers = i, subtracts 1 from = i+1 (mod r)."""
    if r < 2:
        raise IndexOutOfRange(f"r={r} has no Coxeter generators")
    if not 0 <= i < r:
        raise IndexOutOfRange(f"generator index {i} not in 0..{r - 1}")
    win = []
    for j in range(1, r + 1):
        if j % r == i % r:
            win.append(j + 1)
        elif j % r == (i + 1) % r:
            win.append(j - 1)
        else:
            win.append(j)
    return AffPerm(r, tuple(win))


def rho(r: int, k: int = 1) -> AffPerm:
    """The length-zero rotation rho^k, taking every integer i to i + k."""
    return AffPerm(r, tuple(range(1 + k, r + 1 + k)))


def from_word(r: int, omega_power: int, word: Iterable[int]) -> AffPerm:
    """The element rho^omega_power * s_{i1} * ... * s_{ik} (word need not be reduced)."""
    w = rho(r, omega_power)
    for i in word:
        w = w * generator(r, i)
    return w


def rho_conjugate(w: AffPerm, k: int) -> AffPerm:
    """The conjugate rho^k * w * rho^{-k}; shifts generator indices by k mod r."""
    win = [0] * w.r
    for i in range(1, w.r + 1):
        j = (i - k - 1) % w.r
        win[i - 1] = w.window[j] + (i - k - 1 - j) + k
    return AffPerm(w.r, tuple(win))


@functools.lru_cache(maxsize=None)
def ball(r: int, length_bound: int) -> tuple[AffPerm, ...]:
    """All elements of W' with length <= length_bound, sorted by (length, window)."""
    seen = {identity(r)}
    frontier = [identity(r)]
    for _ in range(length_bound):
        nxt = []
        for w in frontier:
            for i in range(r if r >= 2 else 0):
                ws = w * generator(r, i)
                if ws.length > w.length and ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return tuple(sorted(seen, key=lambda w: w.sort_key))


@functools.lru_cache(maxsize=None)
def _leq_coxeter(y: AffPerm, w: AffPerm) -> bool:
    # Bruhat order inside W', by the lifting property.
    if y == w or y.is_identity():
        return True
    if y.length >= w.length:
        return False
    s = generator(y.r, min(w.left_descents))
    sw = s * w
    sy = s * y
    if sy.length < y.length:
        return _leq_coxeter(sy, sw)
    return _leq_coxeter(y, sw)


def bruhat_leq(y: AffPerm, w: AffPerm) -> bool:
    """Bruhat order on W: rho^a*u <= rho^b*v iff a == b and u <= v in W'."""
    if y.r != w.r:
        raise PeriodMismatch(f"periods {y.r} and {w.r} differ")
    ay, uy = y.omega_split()
    aw, uw = w.omega_split()
    if ay != aw:
        return False
    return _leq_coxeter(uy, uw)


@functools.lru_cache(maxsize=None)
def _lower_coxeter(w: AffPerm) -> frozenset[AffPerm]:
    if w.is_identity():
        return frozenset([w])
    s = generator(w.r, min(w.left_descents))
    below = _lower_coxeter(s * w)
    return below | frozenset(s * y for y in below)


def bruhat_lower(w: AffPerm) -> frozenset[AffPerm]:
    """The (always finite) set {y : y <= w}."""
    a, u = w.omega_split()
    if a == 0:
        return _lower_coxeter(u)
    return frozenset(y.shift(a) for y in _lower_coxeter(u))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
