"""The two rank-2 geometry families as parameter values plus pure predicates.

A subspace/subspace geometry has m-subspaces as points, k-subspaces as
lines, and incidence dim(point meet line) = j.  A subspace/bisection
geometry lives in V(2k,q): points are m-subspaces, lines are bisections
{V1,V2}, and incidence asks for the unordered intersection-dimension
pattern {k1,k2}.  Geometries are never materialised; enumeration-backed
checks walk the element sets lazily under an explicit budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .subspace import (Bisection, bisections, coordinate_subspace,
                       grassmannian, intersection_dim, perp)
from .counts import gaussian, TooLargeError


class BadDimensionsError(ValueError):
    pass


class BadParamsError(ValueError):
    pass


class DegenerateGeometryError(BadParamsError):
    """Point and line stabilisers coincide: every point lies on one line only."""


@dataclass(frozen=True)
class ProjParams:
    """Parameters (n, m, k, j) of an m-versus-k subspace geometry over GF(q)."""
    n: int
    m: int
    k: int
    j: int
    field: object

    def __post_init__(self):
        n, m, k, j = self.n, self.m, self.k, self.j
        if not (1 <= m < n and 1 <= k < n):
            raise BadParamsError("need 1 <= m,k < n")
        if not (max(0, m + k - n) <= j <= min(m, k)):
            raise BadParamsError("j outside the admissible interval")
        if m == k == j:
            raise DegenerateGeometryError(
                "incidence would be equality: point and line stabilisers coincide")

    def dual(self):
        n, m, k, j = self.n, self.m, self.k, self.j
        return ProjParams(n, n - m, n - k, n - m - k + j, self.field)

    def to_json_dict(self):
        return {"family": "proj", "q": self.field.q, "n": self.n,
                "m": self.m, "k": self.k, "j": self.j}


@dataclass(frozen=True)
class BisParams:
    """Parameters (k; m; k1 <= k2) of a subspace/bisection geometry in V(2k,q)."""
    k: int
    m: int
    k1: int
    k2: int
    field: object

    def __post_init__(self):
        k, m, k1, k2 = self.k, self.m, self.k1, self.k2
        if k < 1 or not (1 <= m < 2 * k):
            raise BadParamsError("need k >= 1 and 1 <= m < 2k")
        if not (0 <= k1 <= k2 <= k):
            raise BadParamsError("need 0 <= k1 <= k2 <= k")
        # flag existence: an m-space meeting the halves in k1, k2 dimensions
        if k1 + k2 > m or m > k + k1:
            raise BadParamsError("no flag exists: need k1+k2 <= m <= k+k1")

    @property
    def n(self):
        return 2 * self.k

    def dual(self):
        k, m, k1, k2 = self.k, self.m, self.k1, self.k2
        return BisParams(k, 2 * k - m, k - m + k1, k - m + k2, self.field)

    def pattern(self):
        return (self.k1, self.k2)

    def to_json_dict(self):
        return {"family": "bis", "q": self.field.q, "k": self.k,
                "m": self.m, "k1": self.k1, "k2": self.k2}


class Flag(NamedTuple):
    point: object
    line: object


def incident_proj(params, u, w):
    """True iff dim(U meet W) = j, for an m-space U and k-space W."""
    if u.dim != params.m or w.dim != params.k or u.n != params.n or w.n != params.n:
        raise BadDimensionsError("element dimensions do not match the geometry")
    return intersection_dim(u, w) == params.j


def incident_bis(params, u, b):
    """True iff the intersection pattern of U with the halves is {k1,k2}."""
    if u.dim != params.m or u.n != params.n or b.n != params.n:
        raise BadDimensionsError("element dimensions do not match the geometry")
    d1 = intersection_dim(u, b.half1)
    d2 = intersection_dim(u, b.half2)
    if d1 > d2:
        d1, d2 = d2, d1
    return (d1, d2) == (params.k1, params.k2)


def canonical_flag(params):
    """The flag (<e_1..e_m>, <e_1..e_j, e_{m+1}..e_{k+m-j}>)."""
    n, m, k, j = params.n, params.m, params.k, params.j
    field = params.field
    u = coordinate_subspace(field, n, range(m))
    w = coordinate_subspace(field, n, list(range(j)) + list(range(m, k + m - j)))
    return Flag(u, w)


def dual_proj(params, element):
    """Perp map element of the geometry -> element of the dual geometry."""
    if element.dim not in (params.m, params.k) or element.n != params.n:
        raise BadDimensionsError("not a point or line of this geometry")
    return perp(element)


def dual_bis(params, element):
    """Perp map for the subspace/bisection family (points and lines)."""
    if isinstance(element, Bisection):
        if element.n != params.n:
            raise BadDimensionsError("bisection in the wrong ambient space")
        return element.dual()
    if element.dim != params.m or element.n != params.n:
        raise BadDimensionsError("not a point of this geometry")
    return perp(element)


@dataclass
class NondegeneracyReport:
    ok: bool
    num_points: int
    num_lines: int
    num_flags: int
    violation: str | None = None


def _proj_sizes(params):
    q = params.field.q
    return gaussian(params.n, params.m, q), gaussian(params.n, params.k, q)


def _bis_line_count(params):
    q = params.field.q
    return gaussian(2 * params.k, params.k, q) * q ** (params.k**2) // 2


def nondegeneracy_check(params, budget=10**7):
    """Verify the three non-degeneracy conditions by enumeration.

    (i) points and lines finite of size >= 2, (ii) every point on at least
    one line, (iii) every line carries at least one point.  Refuses with
    TooLargeError above the incidence-test budget.
    """
    field = params.field
    if isinstance(params, ProjParams):
        npts, nlin = _proj_sizes(params)
        points = lambda: grassmannian(params.n, field, params.m)
        lines = lambda: grassmannian(params.n, field, params.k)
        inc = lambda u, l: incident_proj(params, u, l)
    else:
        npts = gaussian(2 * params.k, params.m, field.q)
        nlin = _bis_line_count(params)
        points = lambda: grassmannian(2 * params.k, field, params.m)
        lines = lambda: bisections(params.k, field)
        inc = lambda u, l: incident_bis(params, u, l)
    if npts * nlin > budget:
        raise TooLargeError("incidence enumeration exceeds budget")
    if npts < 2 or nlin < 2:
        return NondegeneracyReport(False, npts, nlin, 0,
                                   "point or line set smaller than 2")
    nflags = 0
    for u in points():
        deg = 0
        for l in lines():
            if inc(u, l):
                deg += 1
        nflags += deg
        if deg == 0:
            return NondegeneracyReport(False, npts, nlin, nflags,
                                       f"point {u!r} on no line")
    for l in lines():
        if not any(inc(u, l) for u in points()):
            return NondegeneracyReport(False, npts, nlin, nflags,
                                       f"line {l!r} carries no point")
    return NondegeneracyReport(True, npts, nlin, nflags)
