"""Dense univariate polynomial arithmetic.

Coefficients are stored low to high: ``coeffs[j]`` multiplies ``t**j``. The
stored length is structural, so the reported degree is ``len(coeffs) - 1``
even when the leading coefficient happens to be zero. Trailing exact zeros
are only removed by an explicit ``normalized()`` call, never implicitly by
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DivisibilityError, InputError


def _trimmed(coeffs: Sequence[float]) -> tuple[float, ...]:
    end = len(coeffs)
    while end > 1 and coeffs[end - 1] == 0.0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class UnivariatePoly:
    """Real polynomial in one variable, dense low-to-high coefficients."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise InputError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        """Horner evaluation; accepts floats or numpy arrays."""
        acc = 0.0 * t
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return UnivariatePoly(tuple(out))

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return self + (-other)

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, c in enumerate(self.coeffs):
                if c == 0.0:
                    continue
                for j, d in enumerate(other.coeffs):
                    out[i + j] += c * d
            return UnivariatePoly(tuple(out))
        return UnivariatePoly(tuple(float(other) * c for c in self.coeffs))

    __rmul__ = __mul__

    def normalized(self) -> "UnivariatePoly":
        """Drop trailing exact zeros (the only place trimming happens)."""
        return UnivariatePoly(_trimmed(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coeffs)

    def coeff_scale(self) -> float:
        """Max absolute coefficient; 0 for the zero polynomial."""
        return max(abs(c) for c in self.coeffs)

    def even_odd_split(self) -> tuple["UnivariatePoly", "UnivariatePoly"]:
        """Split into even-index and odd-index parts, p = even + odd.

        The parts are returned normalized (their natural structural length),
        so ``t**3 + t**2 + t + 1`` splits into ``t**2 + 1`` and ``t**3 + t``.
        """
        even = [c if j % 2 == 0 else 0.0 for j, c in enumerate(self.coeffs)]
        odd = [c if j % 2 == 1 else 0.0 for j, c in enumerate(self.coeffs)]
        return UnivariatePoly(_trimmed(even)), UnivariatePoly(_trimmed(odd))

    def compress_parity(self, parity: str) -> "UnivariatePoly":
        """Halve the exponents of a single-parity polynomial.

        For ``parity="even"`` returns p* with p(t) = p*(t**2); for
        ``parity="odd"`` returns p* with p(t) = t * p*(t**2). Rejects input
        carrying any nonzero coefficient of the other parity.
        """
        if parity not in ("even", "odd"):
            raise InputError(f"parity must be 'even' or 'odd', got {parity!r}")
        keep = 0 if parity == "even" else 1
        for j, c in enumerate(self.coeffs):
            if j % 2 != keep and c != 0.0:
                raise InputError(
                    f"coefficient of t**{j} is {c!r}, not of {parity} parity"
                )
        out = self.coeffs[keep::2]
        return UnivariatePoly(out if out else (0.0,))


def poly(coeffs: Iterable[float]) -> UnivariatePoly:
    return UnivariatePoly(tuple(coeffs))


def zero() -> UnivariatePoly:
    return UnivariatePoly((0.0,))


def one() -> UnivariatePoly:
    return UnivariatePoly((1.0,))


def monomial(j: int, c: float = 1.0) -> UnivariatePoly:
    if j < 0:
        raise InputError("monomial exponent must be nonnegative")
    return UnivariatePoly((0.0,) * j + (float(c),))


def from_roots(roots: Iterable[float]) -> UnivariatePoly:
    """Monic product of (t - r) over the given roots."""
    out = one()
    for r in roots:
        out = out * UnivariatePoly((-float(r), 1.0))
    return out


def expand_parity(pstar: UnivariatePoly, parity: str) -> UnivariatePoly:
    """Inverse of ``compress_parity``: substitute t**2 back in."""
    if parity not in ("even", "odd"):
        raise InputError(f"parity must be 'even' or 'odd', got {parity!r}")
    out = [0.0] * (2 * len(pstar.coeffs) - 1 + (1 if parity == "odd" else 0))
    shift = 0 if parity == "even" else 1
    for j, c in enumerate(pstar.coeffs):
        out[2 * j + shift] = c
    return UnivariatePoly(tuple(out))


def lagrange_basis(points: Sequence[float], i: int) -> UnivariatePoly:
    """Cardinal polynomial: 1 at points[i], 0 at the other points."""
    if len(set(points)) != len(points):
        raise InputError("interpolation points must be pairwise distinct")
    if not 0 <= i < len(points):
        raise InputError(f"index {i} out of range for {len(points)} points")
    out = one()
    xi = points[i]
    for j, xj in enumerate(points):
        if j == i:
            continue
        out = out * UnivariatePoly((-xj / (xi - xj), 1.0 / (xi - xj)))
    return out


def integrate_unit_interval(p: UnivariatePoly) -> float:
    """Exact integral over [-1, 1] via term-wise antiderivatives.

    Odd-degree terms cancel; even terms contribute 2 c_j / (j + 1).
    """
    return sum(2.0 * c / (j + 1) for j, c in enumerate(p.coeffs) if j % 2 == 0)


def divide_by_linear_factors(
    p: UnivariatePoly, roots: Sequence[float], tol: float
) -> UnivariatePoly:
    """Divide p by the product of (t - r), root by root, checking remainders.

    Each synthetic-division remainder must satisfy |rem| <= tol * scale(p)
    where scale(p) is the max absolute coefficient of the original p;
    otherwise a DivisibilityError carrying the offending root is raised.
    """
    scale = p.coeff_scale()
    bound = tol * scale
    work = list(p.coeffs)
    for r in roots:
        r = float(r)
        if len(work) == 1:
            # constant dividend: quotient is the zero polynomial
            rem, quot = work[0], [0.0]
        else:
            quot, rem = _synthetic_division(work, r)
        if abs(rem) > bound:
            raise DivisibilityError(root=r, residual=abs(rem), tol=bound)
        work = quot
    return UnivariatePoly(tuple(work))


def _synthetic_division(coeffs: Sequence[float], r: float) -> tuple[list[float], float]:
    """Quotient and remainder of coeffs / (t - r); the remainder is p(r)."""
    n = len(coeffs) - 1
    quot = [0.0] * n
    acc = coeffs[n]
    for j in range(n - 1, -1, -1):
        quot[j] = acc
        acc = coeffs[j] + r * acc
    return quot, acc
