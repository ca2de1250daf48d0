"""Finite beta-mixture algebra for the lp-symmetric mixing law.

The [0,1]-valued mixing variable behind an lp-norm symmetric survival
function has, at truncation level ``k``, the law

    F_d^k = sum_i  a_i^(k) * Beta(k+1-i, d-k-1+i),      i = 1..k,

where ``Beta(m, 0)`` denotes the unit point mass at 1 and the weights
``a_i^(k)`` follow a two-term recursion in ``k`` driven by theta = 1/p.
This module computes the weight table, assembles the mixtures, and provides
the closed-form beta CDF (a finite sum, evaluated in log space) together
with its quantile inversion and two exact difference identities used as
numerical cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from .common import ParameterError, validate_dimension, validate_power

__all__ = [
    "CoefficientTable",
    "BetaComponent",
    "BetaMixture",
    "coefficient_table",
    "coefficient_table_exact",
    "mixture_for_level",
    "beta_cdf",
    "beta_pdf",
    "beta_identity_residuals",
]


def _recursion_rows(d: int, theta, one):
    """Run the weight recursion with generic arithmetic (float or Fraction).

    Row ``k`` entry ``i`` (both 1-based) is

        a_i^(k) = a_i^(k-1) * theta*(k-i)/(k-1)
                + a_{i-1}^(k-1) * (1 - theta*(k-i+1)/(k-1))

    with a_1^(1) = 1 and out-of-range entries read as 0.  Every factor is
    non-negative wherever it multiplies a non-zero entry, so no cancellation
    occurs and float rows stay non-negative.
    """
    rows = [[one]]
    for k in range(2, d + 1):
        prev = rows[-1]
        row = []
        for i in range(1, k + 1):
            stay = prev[i - 1] * (theta * (k - i) / (k - 1)) if i <= k - 1 else one * 0
            shift = prev[i - 2] * (one - theta * (k - i + 1) / (k - 1)) if i >= 2 else one * 0
            row.append(stay + shift)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class CoefficientTable:
    """Triangular array ``a[k][i]`` of mixture weights, 1 <= i <= k <= d."""

    d: int
    p: float
    rows: tuple[tuple[float, ...], ...]

    def row(self, k: int) -> tuple[float, ...]:
        """Weights ``(a_1^(k), ..., a_k^(k))`` for level ``k`` (1-based)."""
        if not 1 <= k <= self.d:
            raise ParameterError(f"level k must be in [1, {self.d}], got {k}")
        return self.rows[k - 1]

    def a(self, k: int, i: int) -> float:
        row = self.row(k)
        if not 1 <= i <= k:
            raise ParameterError(f"index i must be in [1, {k}], got {i}")
        return row[i - 1]

    def to_json_dict(self) -> dict:
        return {"d": self.d, "p": self.p, "rows": [list(r) for r in self.rows]}


def coefficient_table(d: int, p: float) -> CoefficientTable:
    """Compute the full weight table for dimension ``d`` and exponent ``p``.

    Raises :class:`ParameterError` for d < 2 or p < 1.  The returned rows
    each sum to 1 and satisfy ``a[d][1] == p**-(d-1)`` up to roundoff.
    """
    d = validate_dimension(d)
    theta = validate_power(p)
    rows = _recursion_rows(d, theta, 1.0)
    # non-negativity holds exactly; the clamp only guards against future edits
    clamped = tuple(
        tuple(0.0 if -1e-15 <= v < 0.0 else float(v) for v in row) for row in rows
    )
    return CoefficientTable(d=d, p=float(p), rows=clamped)


def coefficient_table_exact(d: int, p) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational weight rows, for use as a roundoff-free oracle.

    ``p`` may be an int, Fraction, or float (floats are taken at their exact
    binary value, matching what :func:`coefficient_table` computes with).
    """
    d = validate_dimension(d)
    pf = Fraction(p)
    if pf < 1:
        raise ParameterError(f"norm exponent must be >= 1, got {p}")
    rows = _recursion_rows(d, 1 / pf, Fraction(1))
    return tuple(tuple(row) for row in rows)


def beta_cdf(m: int, n: int, x):
    """CDF of Beta(m, n) with integer shapes, n = 0 meaning a point mass at 1.

    For n >= 1 uses the exact finite sum

        (m+n-1)! * sum_{j=0}^{n-1} x^(m+j) (1-x)^(n-1-j) / ((m+j)! (n-1-j)!)

    with every term computed in log space, so the evaluation stays finite for
    shapes far beyond where raw factorials overflow.  Accepts scalar or array
    ``x``; values are clamped to [0, 1].
    """
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ParameterError(f"first beta shape must be an integer >= 1, got {m!r}")
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ParameterError(f"second beta shape must be an integer >= 0, got {n!r}")
    m, n = int(m), int(n)
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    out = np.zeros_like(xs)
    if n == 0:
        out[xs >= 1.0] = 1.0
    else:
        out[xs >= 1.0] = 1.0
        inside = (xs > 0.0) & (xs < 1.0)
        if inside.any():
            xi = xs[inside]
            j = np.arange(n, dtype=float)
            logc = gammaln(m + n) - gammaln(m + j + 1.0) - gammaln(n - j)
            logx = np.log(xi)
            log1mx = np.log1p(-xi)
            # terms: (n, npts); all positive, no cancellation
            logt = logc[:, None] + (m + j)[:, None] * logx[None, :] + (n - 1 - j)[:, None] * log1mx[None, :]
            out[inside] = np.exp(logt).sum(axis=0)
    np.clip(out, 0.0, 1.0, out=out)
    return float(out[0]) if scalar else out


def beta_pdf(m: int, n: int, x):
    """Density of Beta(m, n) for n >= 1, zero outside the open interval (0, 1)."""
    if m < 1 or n < 1:
        raise ParameterError(f"beta density needs shapes m,n >= 1, got ({m}, {n})")
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    out = np.zeros_like(xs)
    inside = (xs > 0.0) & (xs < 1.0)
    if inside.any():
        xi = xs[inside]
        logb = gammaln(m + n) - gammaln(m) - gammaln(n)
        out[inside] = np.exp(logb + (m - 1) * np.log(xi) + (n - 1) * np.log1p(-xi))
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class BetaComponent:
    """One mixture component: shapes (m, n) and weight; n = 0 is the atom at 1."""

    m: int
    n: int
    weight: float


@dataclass(frozen=True)
class BetaMixture:
    """The level-``k`` mixing law in dimension ``d`` as a finite beta mixture."""

    components: tuple[BetaComponent, ...]
    d: int
    k: int

    @property
    def atom_weight(self) -> float:
        """Mass of the point at 1 (the n = 0 component), known analytically."""
        return sum(c.weight for c in self.components if c.n == 0)

    @cached_property
    def _continuous(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        comps = [c for c in self.components if c.n >= 1]
        m = np.array([c.m for c in comps], dtype=float)
        n = np.array([c.n for c in comps], dtype=float)
        w = np.array([c.weight for c in comps], dtype=float)
        logb = gammaln(m + n) - gammaln(m) - gammaln(n)
        return m, n, w, logb

    def cdf(self, x):
        """Mixture CDF: 0 at x <= 0, 1 at x >= 1, non-decreasing between."""
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        xs = np.atleast_1d(xs)
        out = np.zeros_like(xs)
        for c in self.components:
            if c.weight != 0.0:
                out += c.weight * beta_cdf(c.m, c.n, xs)
        np.clip(out, 0.0, 1.0, out=out)
        return float(out[0]) if scalar else out

    def pdf(self, x):
        """Density of the continuous part (excludes any atom at 1)."""
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        if scalar:
            # fast path for quadrature callbacks
            xf = float(xs)
            if not 0.0 < xf < 1.0:
                return 0.0
            m, n, w, logb = self._continuous
            lx, l1x = math.log(xf), math.log1p(-xf)
            return float(np.sum(w * np.exp(logb + (m - 1) * lx + (n - 1) * l1x)))
        xs = np.atleast_1d(xs)
        out = np.zeros_like(xs)
        inside = (xs > 0.0) & (xs < 1.0)
        if inside.any():
            m, n, w, logb = self._continuous
            lx = np.log(xs[inside])
            l1x = np.log1p(-xs[inside])
            out[inside] = (
                w[:, None] * np.exp(logb[:, None] + (m - 1)[:, None] * lx + (n - 1)[:, None] * l1x)
            ).sum(axis=0)
        return out

    def continuous_cdf(self, x):
        """CDF of the continuous part renormalized to total mass 1."""
        cont = 1.0 - self.atom_weight
        if cont <= 0.0:
            raise ParameterError("mixture has no continuous part (pure atom at 1)")
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        xs = np.atleast_1d(xs)
        out = np.zeros_like(xs)
        for c in self.components:
            if c.n >= 1 and c.weight != 0.0:
                out += c.weight * beta_cdf(c.m, c.n, xs)
        out /= cont
        np.clip(out, 0.0, 1.0, out=out)
        return float(out[0]) if scalar else out

    def quantile(self, u: float, tol: float = 1e-12) -> float:
        """Generalized inverse inf{x : cdf(x) >= u} by bracketing bisection.

        The atom at 1 is handled analytically: whenever ``u`` exceeds the
        continuous mass the answer is exactly 1.0.  Bisection (rather than a
        derivative method) is used because the CDF has kinks across mixture
        components and possibly a jump at 1.
        """
        u = float(u)
        if not 0.0 < u < 1.0:
            raise ParameterError(f"quantile level must lie in (0, 1), got {u}")
        aw = self.atom_weight
        if aw > 0.0 and u >= 1.0 - aw:
            return 1.0
        lo, hi = 0.0, 1.0
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) >= u:
                hi = mid
            else:
                lo = mid
        return hi


def mixture_for_level(table: CoefficientTable, k: int) -> BetaMixture:
    """Assemble the beta mixture for level ``k`` from a weight table.

    Component ``i`` has shapes (k+1-i, d-k-1+i) and weight ``a[k][i]``; the
    n = 0 shape (possible only for k = d, i = 1) encodes the atom at 1.
    """
    row = table.row(k)
    comps = tuple(
        BetaComponent(m=k + 1 - i, n=table.d - k - 1 + i, weight=row[i - 1])
        for i in range(1, k + 1)
    )
    return BetaMixture(components=comps, d=table.d, k=k)


def beta_identity_residuals(m: int, n: int, x: float) -> tuple[float, float]:
    """Residuals of two exact beta-CDF difference identities.

    For integer shapes m, n >= 1 and x in (0, 1):

        Beta(m+1, n-1)(x) - Beta(m, n)(x) = -C(m+n-1, m)   x^m (1-x)^(n-1)
        Beta(m,   n-1)(x) - Beta(m, n)(x) = -C(m+n-2, m-1) x^m (1-x)^(n-1)

    Returns the absolute defects of both; each should be at machine-noise
    level (<= 1e-10 over the intended shape range).
    """
    if m < 1 or n < 1:
        raise ParameterError(f"identities need shapes m,n >= 1, got ({m}, {n})")
    x = float(x)
    if not 0.0 < x < 1.0:
        raise ParameterError(f"x must lie in (0, 1), got {x}")
    base = beta_cdf(m, n, x)
    poly = x**m * (1.0 - x) ** (n - 1)
    r1 = abs(beta_cdf(m + 1, n - 1, x) - base + math.comb(m + n - 1, m) * poly)
    r2 = abs(beta_cdf(m, n - 1, x) - base + math.comb(m + n - 2, m - 1) * poly)
    return r1, r2
