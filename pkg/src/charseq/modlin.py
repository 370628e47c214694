"""Exact dense linear algebra and univariate arithmetic over a prime field.

Everything here works on numpy int64 arrays reduced mod p and is fully
deterministic: pivots are always the first nonzero entry in column order, so
identical inputs give identical echelon forms on any machine.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def as_matrix(rows, p: int) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return np.mod(a, p)


def rref(matrix, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns, first-nonzero pivoting."""
    a = as_matrix(matrix, p).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix, p: int) -> int:
    if np.asarray(matrix).size == 0:
        return 0
    _, pivots = rref(matrix, p)
    return len(pivots)


def kernel_basis(matrix, p: int) -> np.ndarray:
    """Rows spanning the right kernel {x : A x = 0 mod p}."""
    a = as_matrix(matrix, p)
    ncols = a.shape[1]
    red, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, fc]) % p
    return basis


def det(matrix, p: int) -> int:
    """Determinant mod p by elimination with row swaps."""
    a = as_matrix(matrix, p).copy()
    n, m = a.shape
    if n != m:
        raise DomainError("determinant needs a square matrix")
    result = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            result = (-result) % p
        piv = int(a[c, c])
        result = (result * piv) % p
        inv = pow(piv, -1, p)
        below = np.nonzero(a[c + 1 :, c])[0] + c + 1
        if below.size:
            factors = (a[below, c] * inv) % p
            a[below] = (a[below] - np.outer(factors, a[c])) % p
    return result


# --- univariate polynomials, coefficient lists in increasing degree ---


def poly_trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_eval(coeffs, x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def poly_eval_all(coeffs, p: int) -> np.ndarray:
    """Values at every field element 0..p-1, Horner over a vector."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = (acc * xs + int(c) % p) % p
    return acc


def poly_roots(coeffs, p: int) -> list[int]:
    """All roots in the prime field, by a full scan (exact, p passes)."""
    coeffs = poly_trim([int(c) % p for c in coeffs])
    if not coeffs:
        raise DomainError("the zero polynomial has every element as a root")
    vals = poly_eval_all(coeffs, p)
    return [int(x) for x in np.nonzero(vals == 0)[0]]


def poly_gcd(a, b, p: int) -> list[int]:
    """Monic gcd of two coefficient lists mod p."""
    fa = poly_trim([int(c) % p for c in a])
    fb = poly_trim([int(c) % p for c in b])
    while fb:
        fa, fb = fb, _poly_mod(fa, fb, p)
    if fa:
        inv = pow(fa[-1], -1, p)
        fa = [(c * inv) % p for c in fa]
    return fa


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        factor = (a[-1] * inv) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = poly_trim(a)
    return a


def interpolate(xs, ys, p: int) -> list[int]:
    """Coefficients of the unique poly of degree < len(xs) through the nodes."""
    xs = [int(x) % p for x in xs]
    ys = [int(y) % p for y in ys]
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation nodes must be distinct")
    n = len(xs)
    # Newton's divided differences, exact mod p.
    coeffs = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            denom = (xs[i] - xs[i - j]) % p
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) * pow(denom, -1, p) % p
    # Expand the Newton form into the monomial basis, Horner style.
    out = [coeffs[n - 1]]
    for i in range(n - 2, -1, -1):
        shifted = [0] + out  # out * x
        scaled = [(-xs[i] * c) % p for c in out] + [0]  # out * (-x_i)
        out = [(a + b) % p for a, b in zip(shifted, scaled)]
        out[0] = (out[0] + coeffs[i]) % p
    return poly_trim(out)
