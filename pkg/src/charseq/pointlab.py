"""Exact projective plane geometry over a prime field.

Points, curves, evaluation matrices, and the rank-based measurement of
Hilbert functions and characteristic sequences.  Everything is exact mod p
and deterministic given the inputs and a seed, so this module doubles as
the brute-force oracle behind every sequence-level statement in the
package.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import modlin
from .errors import DomainError, GeometryError
from .liaison import RelCharSeq
from .seqcalc import CharSeq, entries_from_widths, plane_curve_charseq

DEFAULT_MODULUS = 10007
SMALL_FIELD_SCAN = 101  # full P^2 enumeration is feasible up to here
POOL_MAX = 5000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_modulus(p: int) -> int:
    if not _is_prime(p):
        raise DomainError(f"modulus must be prime, got {p}")
    return p


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Projective plane point, normalized so the last nonzero coordinate is 1."""

    coords: tuple[int, int, int]


def proj_point(x: int, y: int, z: int, p: int) -> ProjPoint:
    coords = (x % p, y % p, z % p)
    last = next((i for i in (2, 1, 0) if coords[i] != 0), None)
    if last is None:
        raise DomainError("projective point needs a nonzero coordinate")
    inv = pow(coords[last], -1, p)
    return ProjPoint(tuple((c * inv) % p for c in coords))


@dataclass(frozen=True)
class PlaneCurve:
    """Homogeneous trivariate form over F_p, stored as sorted monomial terms."""

    p: int
    terms: tuple[tuple[int, int, int, int], ...]  # (e1, e2, e3, coeff)
    irreducible_flag: bool = False

    @property
    def degree(self) -> int:
        e1, e2, e3, _ = self.terms[0]
        return e1 + e2 + e3

    def coeff_dict(self) -> dict[tuple[int, int, int], int]:
        return {(e1, e2, e3): c for e1, e2, e3, c in self.terms}

    def evaluate(self, q: ProjPoint) -> int:
        x, y, z = q.coords
        return sum(
            c * pow(x, e1, self.p) * pow(y, e2, self.p) * pow(z, e3, self.p)
            for e1, e2, e3, c in self.terms
        ) % self.p

    def contains(self, q: ProjPoint) -> bool:
        return self.evaluate(q) == 0


def plane_curve(p: int, coeffs, irreducible: bool = False) -> PlaneCurve:
    """Build a curve from {(e1,e2,e3): c} or an iterable of (e1,e2,e3,c).

    Coefficients are reduced mod p, zero terms dropped; the form must be
    nonzero and homogeneous.
    """
    check_modulus(p)
    if isinstance(coeffs, dict):
        items = [(e[0], e[1], e[2], c) for e, c in coeffs.items()]
    else:
        items = [tuple(t) for t in coeffs]
    merged: dict[tuple[int, int, int], int] = {}
    for e1, e2, e3, c in items:
        if min(e1, e2, e3) < 0:
            raise DomainError("negative exponent in curve definition")
        key = (e1, e2, e3)
        merged[key] = (merged.get(key, 0) + c) % p
    terms = tuple(sorted((e1, e2, e3, c) for (e1, e2, e3), c in merged.items() if c != 0))
    if not terms:
        raise DomainError("the zero form does not define a curve")
    degrees = {e1 + e2 + e3 for e1, e2, e3, _ in terms}
    if len(degrees) != 1:
        raise DomainError(f"form is not homogeneous: degrees {sorted(degrees)}")
    return PlaneCurve(p, terms, irreducible)


def multiply_curves(a: PlaneCurve, b: PlaneCurve) -> PlaneCurve:
    if a.p != b.p:
        raise DomainError("curves live over different fields")
    out: dict[tuple[int, int, int], int] = {}
    for e1, e2, e3, c in a.terms:
        for f1, f2, f3, d in b.terms:
            key = (e1 + f1, e2 + f2, e3 + f3)
            out[key] = (out.get(key, 0) + c * d) % a.p
    return plane_curve(a.p, out)


def _partial_dict(curve: PlaneCurve, var: int) -> dict[tuple[int, int, int], int]:
    out: dict[tuple[int, int, int], int] = {}
    for e1, e2, e3, c in curve.terms:
        e = (e1, e2, e3)
        if e[var] == 0:
            continue
        new = list(e)
        new[var] -= 1
        key = tuple(new)
        out[key] = (out.get(key, 0) + e[var] * c) % curve.p
    return {k: v for k, v in out.items() if v != 0}


def gradient_at(curve: PlaneCurve, q: ProjPoint) -> tuple[int, int, int]:
    x, y, z = q.coords
    p = curve.p
    grads = []
    for var in range(3):
        total = 0
        for (e1, e2, e3), c in _partial_dict(curve, var).items():
            total += c * pow(x, e1, p) * pow(y, e2, p) * pow(z, e3, p)
        grads.append(total % p)
    return tuple(grads)


def is_singular_point(curve: PlaneCurve, q: ProjPoint) -> bool:
    """Whether every partial derivative vanishes at q (q assumed on the curve)."""
    return gradient_at(curve, q) == (0, 0, 0)


def tangent_line(curve: PlaneCurve, q: ProjPoint) -> PlaneCurve:
    gx, gy, gz = gradient_at(curve, q)
    if (gx, gy, gz) == (0, 0, 0):
        raise DomainError("no tangent line at a singular point")
    return plane_curve(curve.p, {(1, 0, 0): gx, (0, 1, 0): gy, (0, 0, 1): gz})


def substitute_linear(curve: PlaneCurve, matrix: Sequence[Sequence[int]]) -> PlaneCurve:
    """The form v -> f(M v) for a 3x3 matrix M over F_p."""
    p = curve.p
    rows = [tuple(int(x) % p for x in row) for row in matrix]

    def linear_power(row: tuple[int, int, int], e: int) -> dict[tuple[int, int, int], int]:
        a, b, c = row
        out: dict[tuple[int, int, int], int] = {}
        for i in range(e + 1):
            for j in range(e - i + 1):
                k = e - i - j
                coeff = comb(e, i) * comb(e - i, j) * pow(a, i, p) * pow(b, j, p) * pow(c, k, p)
                coeff %= p
                if coeff:
                    out[(i, j, k)] = (out.get((i, j, k), 0) + coeff) % p
        return out

    def dict_mul(u: dict, v: dict) -> dict:
        out: dict[tuple[int, int, int], int] = {}
        for eu, cu in u.items():
            for ev, cv in v.items():
                key = (eu[0] + ev[0], eu[1] + ev[1], eu[2] + ev[2])
                out[key] = (out.get(key, 0) + cu * cv) % p
        return out

    total: dict[tuple[int, int, int], int] = {}
    for e1, e2, e3, c in curve.terms:
        piece: dict[tuple[int, int, int], int] = {(0, 0, 0): c}
        for var, e in ((0, e1), (1, e2), (2, e3)):
            if e:
                piece = dict_mul(piece, linear_power(rows[var], e))
        for key, val in piece.items():
            total[key] = (total.get(key, 0) + val) % p
    return plane_curve(p, total)


@dataclass(frozen=True)
class PointGroup:
    """A reduced set of distinct projective points, optionally on a curve."""

    p: int
    points: tuple[ProjPoint, ...]
    curve: PlaneCurve | None = None

    @property
    def size(self) -> int:
        return len(self.points)

    def coords_array(self) -> np.ndarray:
        return np.array([q.coords for q in self.points], dtype=np.int64).reshape(-1, 3)

    def union(self, extra: Iterable[ProjPoint]) -> "PointGroup":
        return point_group(self.p, tuple(self.points) + tuple(extra), self.curve)


def point_group(p: int, points: Iterable[ProjPoint], curve: PlaneCurve | None = None) -> PointGroup:
    raw = tuple(points)
    pts = tuple(sorted(set(raw)))
    if len(pts) != len(raw):
        raise DomainError("point group needs pairwise distinct points")
    if curve is not None:
        if curve.p != p:
            raise DomainError("curve modulus differs from the group modulus")
        bad = [q for q in pts if not curve.contains(q)]
        if bad:
            raise DomainError(f"{len(bad)} point(s) do not lie on the ambient curve")
    return PointGroup(p, pts, curve)


# --- monomials and evaluation ---


@lru_cache(maxsize=None)
def monomial_basis(l: int, nvars: int = 3) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of degree l in graded lex order, x > y > z."""
    if nvars != 3:
        raise DomainError("only the trivariate case is supported")
    if l < 0:
        raise DomainError("degree must be >= 0")
    return tuple(
        (e1, e2, l - e1 - e2) for e1 in range(l, -1, -1) for e2 in range(l - e1, -1, -1)
    )


def _power_table(coords: np.ndarray, max_e: int, p: int) -> list[list[np.ndarray]]:
    n = coords.shape[0]
    table = []
    for var in range(3):
        col = coords[:, var] % p
        pws = [np.ones(n, dtype=np.int64)]
        for _ in range(max_e):
            pws.append((pws[-1] * col) % p)
        table.append(pws)
    return table


def evaluation_matrix(points: Sequence[ProjPoint], l: int, p: int) -> np.ndarray:
    """|points| x C(l+2,2) matrix of degree-l monomials evaluated at the points."""
    basis = monomial_basis(l)
    coords = np.array([q.coords for q in points], dtype=np.int64).reshape(-1, 3)
    table = _power_table(coords, l, p)
    out = np.empty((coords.shape[0], len(basis)), dtype=np.int64)
    for j, (e1, e2, e3) in enumerate(basis):
        out[:, j] = (table[0][e1] * table[1][e2]) % p * table[2][e3] % p
    return out


def evaluate_terms(terms, coords: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a term list (e1,e2,e3,c) at many points at once."""
    if coords.size == 0:
        return np.zeros(0, dtype=np.int64)
    max_e = max(max(e1, e2, e3) for e1, e2, e3, _ in terms)
    table = _power_table(coords, max_e, p)
    acc = np.zeros(coords.shape[0], dtype=np.int64)
    for e1, e2, e3, c in terms:
        term = (table[0][e1] * table[1][e2]) % p
        term = (term * table[2][e3]) % p
        acc = (acc + c * term) % p
    return acc


def evaluate_curve_at(curve: PlaneCurve, points: Sequence[ProjPoint]) -> np.ndarray:
    coords = np.array([q.coords for q in points], dtype=np.int64).reshape(-1, 3)
    return evaluate_terms(curve.terms, coords, curve.p)


def phi_points(group: PointGroup, l: int) -> int:
    """Hilbert function of a reduced point group: rank of the evaluation matrix."""
    if l < 0 or group.size == 0:
        return 0
    return modlin.rank(evaluation_matrix(group.points, l, group.p), group.p)


def phi_plane_curve(d: int, l: int) -> int:
    """Hilbert function of a plane curve of degree d."""
    if d < 1:
        raise DomainError("curve degree must be >= 1")
    if l < 0:
        return 0
    high = comb(l - d + 2, 2) if l >= d else 0
    return comb(l + 2, 2) - high


def span_rank(group: PointGroup) -> int:
    """Rank of the coordinate matrix: 1 + projective dimension of the span."""
    if group.size == 0:
        return 0
    return modlin.rank(group.coords_array(), group.p)


# --- rational points: exact scan for small fields, cached sampling above ---


@lru_cache(maxsize=None)
def rational_points(curve: PlaneCurve) -> tuple[ProjPoint, ...]:
    """Every rational point of the curve; exact, for p <= SMALL_FIELD_SCAN."""
    p = curve.p
    if p > SMALL_FIELD_SCAN:
        raise GeometryError(
            f"rational scan infeasible: full enumeration needs p <= {SMALL_FIELD_SCAN}, got {p}"
        )
    xs, ys = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64))
    chart1 = np.stack([xs.ravel(), ys.ravel(), np.ones(p * p, dtype=np.int64)], axis=1)
    chart2 = np.stack(
        [np.arange(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.zeros(p, dtype=np.int64)],
        axis=1,
    )
    chart3 = np.array([[1, 0, 0]], dtype=np.int64)
    found = []
    for chart in (chart1, chart2, chart3):
        vals = evaluate_terms(curve.terms, chart, p)
        for row in chart[vals == 0]:
            found.append(ProjPoint((int(row[0]), int(row[1]), int(row[2]))))
    return tuple(sorted(found))


class _Pool:
    __slots__ = ("points", "seen", "lines_tried")

    def __init__(self):
        self.points: list[ProjPoint] = []
        self.seen: set[ProjPoint] = set()
        self.lines_tried = 0


_POOLS: dict[PlaneCurve, _Pool] = {}


def _curve_seed(curve: PlaneCurve) -> int:
    return zlib.crc32(repr(curve.terms).encode())


def line_span_points(p: int, a: ProjPoint, b: ProjPoint) -> np.ndarray:
    """Coordinates of all p+1 points of the line through two independent points."""
    av = np.array(a.coords, dtype=np.int64)
    bv = np.array(b.coords, dtype=np.int64)
    ts = np.arange(p, dtype=np.int64).reshape(-1, 1)
    rows = (av.reshape(1, 3) + ts * bv.reshape(1, 3)) % p
    return np.vstack([rows, bv.reshape(1, 3)])


def line_points_on_curve(curve: PlaneCurve, a: ProjPoint, b: ProjPoint) -> tuple[ProjPoint, ...]:
    """All rational points of the curve on the line through a and b (exact)."""
    p = curve.p
    coords = line_span_points(p, a, b)
    vals = evaluate_terms(curve.terms, coords, p)
    pts = {proj_point(int(r[0]), int(r[1]), int(r[2]), p) for r in coords[vals == 0]}
    return tuple(sorted(pts))


def _random_proj_point(rng: random.Random, p: int) -> ProjPoint:
    while True:
        x, y, z = rng.randrange(p), rng.randrange(p), rng.randrange(p)
        if (x, y, z) != (0, 0, 0):
            return proj_point(x, y, z, p)


def _independent(a: ProjPoint, b: ProjPoint, p: int) -> bool:
    (x1, y1, z1), (x2, y2, z2) = a.coords, b.coords
    cross = ((y1 * z2 - z1 * y2) % p, (z1 * x2 - x1 * z2) % p, (x1 * y2 - y1 * x2) % p)
    return cross != (0, 0, 0)


def point_pool(curve: PlaneCurve, size: int) -> tuple[ProjPoint, ...]:
    """At least ``size`` rational points of the curve when that many can be
    found: the full set for small p, else a deterministic cached sample
    built from random line sections (capped at POOL_MAX)."""
    if curve.p <= SMALL_FIELD_SCAN:
        return rational_points(curve)
    size = min(size, POOL_MAX)
    pool = _POOLS.setdefault(curve, _Pool())
    base = _curve_seed(curve)
    budget = 40 * max(size, 1)
    # Each sampling line gets its own rng keyed by its index, so the pool is
    # a deterministic sequence and earlier prefixes never change as it grows.
    while len(pool.points) < size and pool.lines_tried < budget:
        rng = random.Random(base * 1000003 + pool.lines_tried)
        pool.lines_tried += 1
        a = _random_proj_point(rng, curve.p)
        b = _random_proj_point(rng, curve.p)
        if not _independent(a, b, curve.p):
            continue
        for q in line_points_on_curve(curve, a, b):
            if q not in pool.seen:
                pool.seen.add(q)
                pool.points.append(q)
    return tuple(pool.points[:size])


def random_points_on_curve(
    curve: PlaneCurve,
    count: int,
    seed: int,
    avoid_singular: bool = True,
    avoid: Iterable[ProjPoint] = (),
) -> PointGroup:
    """Deterministic sample of ``count`` distinct rational points on the curve."""
    if count < 0:
        raise DomainError("count must be >= 0")
    if count == 0:
        return point_group(curve.p, (), curve)
    pool = point_pool(curve, max(4 * count, 64))
    banned = set(avoid)
    usable = [q for q in sorted(pool) if q not in banned]
    if avoid_singular:
        usable = [q for q in usable if not is_singular_point(curve, q)]
    if len(usable) < count:
        raise GeometryError(
            f"insufficient rational points: need {count}, found {len(usable)} "
            "(raise the modulus or relax the constraints)"
        )
    rng = random.Random(seed)
    return point_group(curve.p, rng.sample(usable, count), curve)


# --- curve intersection via resultants ---


def _pure_power_coeff(curve: PlaneCurve, var: int) -> int:
    d = curve.degree
    target = tuple(d if i == var else 0 for i in range(3))
    for e1, e2, e3, c in curve.terms:
        if (e1, e2, e3) == target:
            return c
    return 0


def _x_slices(curve: PlaneCurve) -> list[dict[tuple[int, int], int]]:
    # coefficient of x^k as a polynomial in (y, z)
    d = curve.degree
    slices: list[dict[tuple[int, int], int]] = [dict() for _ in range(d + 1)]
    for e1, e2, e3, c in curve.terms:
        slices[e1][(e2, e3)] = c
    return slices


def _eval_slice(slice_yz: dict[tuple[int, int], int], y: int, z: int, p: int) -> int:
    return sum(c * pow(y, e2, p) * pow(z, e3, p) for (e2, e3), c in slice_yz.items()) % p


def _sylvester(fc: list[int], hc: list[int], p: int) -> np.ndarray:
    # coefficient lists in decreasing degree, full length
    n, m = len(fc) - 1, len(hc) - 1
    size = n + m
    mat = np.zeros((size, size), dtype=np.int64)
    for i in range(m):
        mat[i, i : i + n + 1] = fc
    for i in range(n):
        mat[m + i, i : i + m + 1] = hc
    return mat % p


def _random_invertible(rng: random.Random, p: int) -> list[list[int]]:
    while True:
        mat = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
        if modlin.det(np.array(mat, dtype=np.int64), p) != 0:
            return mat


def intersect_curves(f: PlaneCurve, h: PlaneCurve, seed: int = 0) -> tuple[ProjPoint, ...]:
    """All rational common zeros of two curves with no shared component.

    Exact for any prime field with p > deg(f)*deg(h): the intersection is
    projected out through a resultant in coordinates where both forms carry
    a full power of the first variable.  A shared component is detected as
    an identically vanishing resultant and raises GeometryError.
    """
    if f.p != h.p:
        raise DomainError("curves live over different fields")
    p = f.p
    d, s = f.degree, h.degree
    if d * s >= p:
        raise DomainError(f"field too small for an exact intersection of degrees {d} and {s}")
    rng = random.Random(seed)
    matrix = None
    f2, h2 = f, h
    if _pure_power_coeff(f, 0) == 0 or _pure_power_coeff(h, 0) == 0:
        for _ in range(64):
            candidate = _random_invertible(rng, p)
            f2 = substitute_linear(f, candidate)
            h2 = substitute_linear(h, candidate)
            if _pure_power_coeff(f2, 0) != 0 and _pure_power_coeff(h2, 0) != 0:
                matrix = candidate
                break
        else:
            raise GeometryError("could not reach coordinates with full leading terms")

    fs, hs = _x_slices(f2), _x_slices(h2)
    nodes = list(range(d * s + 1))
    dets = []
    for y0 in nodes:
        fc = [_eval_slice(fs[k], y0, 1, p) for k in range(d, -1, -1)]
        hc = [_eval_slice(hs[k], y0, 1, p) for k in range(s, -1, -1)]
        dets.append(modlin.det(_sylvester(fc, hc, p), p))
    res_coeffs = modlin.interpolate(nodes, dets, p)
    if not res_coeffs:
        raise GeometryError("improper intersection: the curves share a component")

    found: set[ProjPoint] = set()
    for y0 in modlin.poly_roots(res_coeffs, p):
        fc = [_eval_slice(fs[k], y0, 1, p) for k in range(d + 1)]
        hc = [_eval_slice(hs[k], y0, 1, p) for k in range(s + 1)]
        g = modlin.poly_gcd(fc, hc, p)
        if len(g) > 1:
            for x0 in modlin.poly_roots(g, p):
                found.add(proj_point(x0, y0, 1, p))
    # fiber at z = 0
    fc0 = [_eval_slice(fs[k], 1, 0, p) for k in range(d + 1)]
    hc0 = [_eval_slice(hs[k], 1, 0, p) for k in range(s + 1)]
    g0 = modlin.poly_gcd(fc0, hc0, p)
    if len(g0) > 1:
        for x0 in modlin.poly_roots(g0, p):
            found.add(proj_point(x0, 1, 0, p))
    q = ProjPoint((1, 0, 0))
    if f2.contains(q) and h2.contains(q):
        found.add(q)

    if matrix is not None:
        mat = np.array(matrix, dtype=np.int64)
        mapped = set()
        for q in found:
            v = (mat @ np.array(q.coords, dtype=np.int64)) % p
            mapped.add(proj_point(int(v[0]), int(v[1]), int(v[2]), p))
        found = mapped
    for q in found:
        if not (f.contains(q) and h.contains(q)):
            raise GeometryError("internal error: intersection point fails verification")
    return tuple(sorted(found))


def section_points(
    X: PlaneCurve, H: PlaneCurve, require_transverse: bool = True, seed: int = 0
) -> PointGroup:
    """The rational points of X cut out by the hypersurface H.

    With ``require_transverse`` the section must consist of exactly
    deg(X)*deg(H) simple rational points; anything less (tangency, a
    singular point, irrational intersection points) raises GeometryError
    and the caller should re-randomize H.
    """
    if X.p != H.p:
        raise DomainError("section curve lives over a different field")
    p = X.p
    if H.degree == 1:
        coeff = H.coeff_dict()
        row = [coeff.get((1, 0, 0), 0), coeff.get((0, 1, 0), 0), coeff.get((0, 0, 1), 0)]
        basis = modlin.kernel_basis(np.array([row], dtype=np.int64), p)
        a = proj_point(*(int(v) for v in basis[0]), p)
        b = proj_point(*(int(v) for v in basis[1]), p)
        coords = line_span_points(p, a, b)
        vals = evaluate_terms(X.terms, coords, p)
        if not np.any(vals):
            raise GeometryError("improper intersection: the line lies on the curve")
        pts = tuple(
            sorted({proj_point(int(r[0]), int(r[1]), int(r[2]), p) for r in coords[vals == 0]})
        )
    else:
        pts = intersect_curves(X, H, seed=seed)
    if require_transverse:
        expected = X.degree * H.degree
        if len(pts) != expected:
            raise GeometryError(
                f"non-transverse or irrational intersection: found {len(pts)} rational "
                f"points, expected {expected}"
            )
        for q in pts:
            gf = gradient_at(X, q)
            gh = gradient_at(H, q)
            cross = (
                (gf[1] * gh[2] - gf[2] * gh[1]) % p,
                (gf[2] * gh[0] - gf[0] * gh[2]) % p,
                (gf[0] * gh[1] - gf[1] * gh[0]) % p,
            )
            if cross == (0, 0, 0):
                raise GeometryError("non-transverse or irrational intersection: tangency")
    return point_group(p, pts, X)


# --- measurement ---


def _check_on_curve(X: PlaneCurve, Y: PointGroup):
    if Y.p != X.p:
        raise DomainError("group and curve moduli differ")
    for q in Y.points:
        if not X.contains(q):
            raise DomainError(f"point {q.coords} does not lie on the curve")


def measure_rcs(X: PlaneCurve, Y: PointGroup, max_scan: int | None = None) -> RelCharSeq:
    """Measure the relative characteristic sequence of Y on the plane curve X.

    The deficiency psi(l) = phi_X(l) - phi_Y(l) is scanned until its second
    difference stabilizes; the widths of (n_i) are exactly those second
    differences.  A scan that does not stabilize inside the window signals a
    non-reduced input or a bug.
    """
    _check_on_curve(X, Y)
    d = X.degree
    cap = max_scan if max_scan is not None else d + Y.size + 2
    psi_prev2 = psi_prev = 0
    widths: list[int] = []
    total = 0
    for l in range(cap + 1):
        psi = phi_plane_curve(d, l) - phi_points(Y, l)
        w = psi - 2 * psi_prev + psi_prev2
        if w < 0:
            raise GeometryError(f"negative width at degree {l}: input is not a reduced group on X")
        widths.append(w)
        total = psi - psi_prev  # running count of entries <= l
        psi_prev2, psi_prev = psi_prev, psi
        if total == d and w == 0:
            break
    else:
        raise GeometryError(
            f"non-stabilizing scan up to degree {cap}; raise max_scan or check the input"
        )
    entries = entries_from_widths(widths)
    if sum(n - i for i, n in enumerate(entries)) != Y.size:
        raise GeometryError("measured sequence does not account for the group degree")
    return RelCharSeq(entries, plane_curve_charseq(d))


def measure_abs(Y: PointGroup, codim: int | None = None, max_scan: int | None = None) -> CharSeq:
    """Measure the absolute characteristic sequence of a reduced point group.

    Widths are the first differences of the Hilbert function.  ``codim``
    defaults to the codimension of the group inside its linear span, so
    aligned groups come out with codim 1 and validate cleanly.
    """
    if Y.size == 0:
        return CharSeq((), 1, codim if codim is not None else 1)
    cap = max_scan if max_scan is not None else Y.size + 2
    values = []
    for l in range(cap + 1):
        values.append(phi_points(Y, l))
        if values[-1] == Y.size:
            break
    else:
        raise GeometryError("Hilbert function did not reach the group degree; input not reduced?")
    widths = [values[0]] + [values[i] - values[i - 1] for i in range(1, len(values))]
    if codim is None:
        codim = max(span_rank(Y) - 1, 1)
    return CharSeq(entries_from_widths(widths), 1, codim)


def dim_linear_system(X: PlaneCurve, Y: PointGroup) -> int:
    """Dimension of the complete linear system through Y on the plane curve X:
    deg(Y) - phi_Y(d - 3), with phi taken as 0 in negative degrees.

    Y must avoid the singular locus of X so its divisor class is defined.
    """
    _check_on_curve(X, Y)
    for q in Y.points:
        if is_singular_point(X, q):
            raise GeometryError(f"singular-point collision at {q.coords}")
    return Y.size - phi_points(Y, X.degree - 3)


# --- file formats ---


def save_points(path, group: PointGroup) -> None:
    lines = [f"p={group.p}"]
    lines += [" ".join(str(c) for c in q.coords) for q in group.points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_points(path, curve: PlaneCurve | None = None) -> PointGroup:
    text = Path(path).read_text(encoding="utf-8").strip().splitlines()
    if not text or not text[0].startswith("p="):
        raise DomainError("point file must start with a 'p=<modulus>' header")
    p = check_modulus(int(text[0][2:]))
    pts = []
    for line in text[1:]:
        line = line.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise DomainError(f"point rows carry three coordinates, got {line!r}")
        x, y, z = (int(v) for v in fields)
        pts.append(proj_point(x, y, z, p))
    return point_group(p, pts, curve)


def save_curve(path, curve: PlaneCurve) -> None:
    lines = [f"p={curve.p}"]
    lines += [f"{e1} {e2} {e3} {c}" for e1, e2, e3, c in curve.terms]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_curve(path, irreducible: bool = False) -> PlaneCurve:
    text = Path(path).read_text(encoding="utf-8").strip().splitlines()
    if not text or not text[0].startswith("p="):
        raise DomainError("curve file must start with a 'p=<modulus>' header")
    p = check_modulus(int(text[0][2:]))
    terms = []
    for line in text[1:]:
        line = line.strip()
        if not line:
            continue
        e1, e2, e3, c = (int(v) for v in line.split())
        terms.append((e1, e2, e3, c))
    return plane_curve(p, terms, irreducible)
