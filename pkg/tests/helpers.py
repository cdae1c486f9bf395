"""Independent oracles shared by the test modules.

Everything here deliberately avoids the package's own computation paths:
determinants are expanded by cofactors, derivatives come from exact
rational finite differences, and points come from a jittered grid with a
guaranteed separation.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt

import numpy as np


def det_cofactor(rows) -> float:
    """Cofactor-expansion determinant for small matrices."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0.0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def jittered_points(count: int, rng: np.random.Generator) -> list[float]:
    """Distinct points in (0, 1), ascending, separation at least 0.2 slots."""
    jitter = rng.uniform(-0.4, 0.4, size=count)
    return [(q + 1 + jitter[q]) / (count + 1.0) for q in range(count)]


_SQRT_SCALE = 10**60


def sqrt_fraction(x: Fraction) -> Fraction:
    """Rational square root accurate to about 60 digits."""
    num = x.numerator * _SQRT_SCALE**2
    return Fraction(isqrt(num * x.denominator), _SQRT_SCALE * x.denominator)


def fd_weights_exact(n: int, npts: int) -> tuple[list[int], list[Fraction]]:
    """Central finite-difference weights for the n-th derivative, exact.

    Solves the moment system over integer offsets with Fraction arithmetic,
    so the only error left in a finite-difference derivative is truncation.
    """
    p = npts // 2
    offs = list(range(-p, p + 1))
    mat = [[Fraction(o) ** i for o in offs] for i in range(npts)]
    rhs = [Fraction(0)] * npts
    rhs[n] = Fraction(factorial(n))
    for col in range(npts):
        piv = next(r for r in range(col, npts) if mat[r][col] != 0)
        mat[col], mat[piv] = mat[piv], mat[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        rhs[col] *= inv
        for r in range(npts):
            if r != col and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[col])]
                rhs[r] -= factor * rhs[col]
    return offs, rhs


def halfpower_derivative_poly_value(r: int, s: int, k: int, t0: Fraction) -> float:
    """Oracle for the reduced polynomial h_k via high-order finite differences.

    Differentiates f(t) = t**(k + 1/2) (1 - t)**(r - s) a total of r + 1
    times with an exact-rational central stencil, multiplies by
    t**(r + 1/2), and rescales by the constant

        (-1)**(r - k) 2**(r + 1)
            / (prod_{i<k} (2i + 1) * prod_{i=1..s-k-1} (2i - 1)),

    which turns the derivative into h_k(t) = sum_j a[k][j] t**(j + k).
    Step 1/1024 keeps truncation below 1e-13 relative through r = 8.
    """
    n = r + 1
    npts = n + 7 if (n + 7) % 2 == 1 else n + 8
    offs, weights = fd_weights_exact(n, npts)
    h = Fraction(1, 1024)

    def f(t: Fraction) -> Fraction:
        return sqrt_fraction(t) * t**k * (1 - t) ** (r - s)

    deriv = sum(w * f(t0 + o * h) for o, w in zip(offs, weights)) / h**n
    const = Fraction((-1) ** (r - k) * 2 ** (r + 1))
    for i in range(k):
        const /= 2 * i + 1
    for i in range(1, s - k):
        const /= 2 * i - 1
    return float(const * sqrt_fraction(t0) * t0**r * deriv)
