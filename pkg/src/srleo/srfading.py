"""Shadowed-Rician (SR) and squared Shadowed-Rician (SSR) distributions.

``|h| ~ SR(b, m, omega)`` where ``2b`` is the average scattered power, ``omega``
the average line-of-sight power and ``m`` the Nakagami order of the LOS
shadowing.  ``|h|^2`` then follows ``SSR(b, m, omega)``.

All density functions accept scalars or numpy arrays and are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ParameterError",
    "ConvergenceError",
    "SRParams",
    "IntegerSRParams",
    "PRESETS",
    "preset",
    "kummer_1f1",
    "log_kummer_1f1",
    "sr_pdf",
    "ssr_pdf",
    "ssr_pdf_int",
    "ssr_cdf_int",
    "ssr_cdf_quad",
    "ssr_mean_int",
    "lower_gamma_int",
    "scale",
    "linear_relation_check",
    "round_fading_order",
    "sample_sr",
    "sample_ssr",
]

SERIES_RTOL = 1e-12
SERIES_MAX_TERMS = 500
# above this argument the large-z expansion replaces the power series
ASYMPTOTIC_SWITCH = 300.0


class ParameterError(ValueError):
    """Distribution parameters or arguments outside their domain."""


class ConvergenceError(ArithmeticError):
    """A series failed to converge within its term budget."""


@dataclass(frozen=True)
class SRParams:
    """Parameter triple ``(b, m, omega)`` of an SR / SSR law."""

    b: float
    m: float
    omega: float

    def __post_init__(self):
        if not (np.isfinite(self.b) and self.b > 0):
            raise ParameterError(f"b must be > 0, got {self.b!r}")
        if not (np.isfinite(self.m) and self.m > 0):
            raise ParameterError(f"m must be > 0, got {self.m!r}")
        if not (np.isfinite(self.omega) and self.omega >= 0):
            raise ParameterError(f"omega must be >= 0, got {self.omega!r}")

    @property
    def mean_power(self) -> float:
        """E[|h|^2] = 2b + omega (holds for any m > 0)."""
        return 2.0 * self.b + self.omega


@dataclass(frozen=True)
class IntegerSRParams:
    """SSR parameters with an integer fading order, enabling the closed forms."""

    b: float
    m_int: int
    omega: float

    def __post_init__(self):
        if not (np.isfinite(self.b) and self.b > 0):
            raise ParameterError(f"b must be > 0, got {self.b!r}")
        if int(self.m_int) != self.m_int or self.m_int < 1:
            raise ParameterError(f"m_int must be an integer >= 1, got {self.m_int!r}")
        if not (np.isfinite(self.omega) and self.omega >= 0):
            raise ParameterError(f"omega must be >= 0, got {self.omega!r}")

    @property
    def m(self) -> int:
        return int(self.m_int)

    def as_params(self) -> SRParams:
        return SRParams(self.b, float(self.m_int), self.omega)


PRESETS = {
    "light": SRParams(0.158, 19.4, 1.29),
    "average": SRParams(0.126, 10.1, 0.835),
    "heavy": SRParams(0.063, 0.739, 8.97e-4),
}


def preset(name: str) -> SRParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(
            f"unknown shadowing preset {name!r}; expected one of {sorted(PRESETS)}"
        ) from None


# ---------------------------------------------------------------------------
# 1F1(m; 1; z)
# ---------------------------------------------------------------------------

def _is_integer(m: float) -> bool:
    return float(m).is_integer()


def _log_kummer_poly(m: int, z: np.ndarray) -> np.ndarray:
    # 1F1(m;1;z) = e^z * sum_{i<m} (m-1)! z^i / ((m-1-i)! (i!)^2)
    acc = np.zeros_like(z)
    term = np.ones_like(z)
    for i in range(m):
        acc = acc + term
        # ratio of consecutive coefficients: (m-1-i) / (i+1)^2
        term = term * z * (m - 1 - i) / (i + 1) ** 2
    return z + np.log(acc)


def _log_series(m: float, z: np.ndarray, rtol: float, max_terms: int) -> np.ndarray:
    # terms pre-scaled by e^{-z} so partial sums stay O(z^(m-1))
    term = np.exp(-z)
    total = term.copy()
    active = np.ones(z.shape, dtype=bool)
    for k in range(max_terms):
        term = np.where(active, term * (m + k) * z / (k + 1) ** 2, 0.0)
        total = total + term
        # converged once terms are both tiny and shrinking
        shrinking = (m + k + 1) * z < (k + 2) ** 2
        active &= ~(shrinking & (term <= rtol * total))
        if not active.any():
            return z + np.log(total)
    bad = z[active]
    raise ConvergenceError(
        f"1F1({m}; 1; z) series did not converge in {max_terms} terms "
        f"for {bad.size} argument(s), max z = {bad.max():.6g}"
    )


def _log_asymptotic(m: float, z: np.ndarray, rtol: float, max_terms: int) -> np.ndarray:
    # 1F1(a;1;z) ~ e^z z^(a-1) / Gamma(a) * sum_s ((1-a)_s)^2 / (s! z^s)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for s in range(max_terms):
        factor = (s + 1 - m) ** 2 / ((s + 1) * z)
        term = term * factor
        total = total + term
        if np.all(np.abs(term) <= rtol * np.abs(total)):
            return z + (m - 1.0) * np.log(z) - math.lgamma(m) + np.log(total)
        if np.any(factor >= 1.0) and s + 1 > m:
            break
    raise ConvergenceError(
        f"large-argument expansion of 1F1({m}; 1; z) diverged before reaching "
        f"rtol={rtol:g}; min z = {z.min():.6g}"
    )


def log_kummer_1f1(m: float, z, rtol: float = SERIES_RTOL, max_terms: int = SERIES_MAX_TERMS):
    """Natural log of 1F1(m; 1; z) for m > 0 and z >= 0.

    Integer ``m`` uses the terminating Kummer polynomial.  Otherwise the power
    series is summed (term-ratio recursion) up to ``ASYMPTOTIC_SWITCH`` and the
    large-argument expansion is used beyond it.
    """
    if not m > 0:
        raise ParameterError(f"m must be > 0, got {m!r}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0) or np.any(~np.isfinite(z_arr)):
        raise ParameterError("z must be finite and >= 0")
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    if _is_integer(m):
        out = _log_kummer_poly(int(m), z_arr)
    else:
        out = np.empty_like(z_arr)
        small = z_arr <= ASYMPTOTIC_SWITCH
        if small.any():
            out[small] = _log_series(m, z_arr[small], rtol, max_terms)
        if (~small).any():
            out[~small] = _log_asymptotic(m, z_arr[~small], rtol, max_terms)
    return float(out[0]) if scalar else out


def kummer_1f1(m: float, z, rtol: float = SERIES_RTOL, max_terms: int = SERIES_MAX_TERMS):
    """Confluent hypergeometric function 1F1(m; 1; z)."""
    return np.exp(log_kummer_1f1(m, z, rtol, max_terms))


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

def _check_support(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ParameterError(f"{name} must be >= 0")
    return arr


def _log_shape_factor(b: float, m: float, omega: float) -> float:
    # log (2bm / (2bm + omega))^m, kept in log form so large m cannot underflow
    two_bm = 2.0 * b * m
    return -m * math.log1p(omega / two_bm)


def _ssr_logpdf(y: np.ndarray, b: float, m: float, omega: float) -> np.ndarray:
    z = omega * y / (2.0 * b * (2.0 * b * m + omega))
    with np.errstate(over="ignore"):
        finite = np.isfinite(y)
        out = np.full(y.shape, -np.inf)
        yf = y[finite]
        out[finite] = (
            -math.log(2.0 * b)
            + _log_shape_factor(b, m, omega)
            - yf / (2.0 * b)
            + log_kummer_1f1(m, z[finite])
        )
    return out


def ssr_pdf(y, p: SRParams):
    """Density of ``|h|^2`` for ``|h| ~ SR(p)``."""
    y_arr = _check_support(y, "y")
    out = np.exp(_ssr_logpdf(np.atleast_1d(y_arr), p.b, p.m, p.omega))
    return float(out[0]) if y_arr.ndim == 0 else out


def sr_pdf(x, p: SRParams):
    """Density of the SR envelope ``|h|``."""
    x_arr = _check_support(x, "x")
    xa = np.atleast_1d(x_arr)
    with np.errstate(divide="ignore"):
        logx = np.log(xa)
    # f_|h|(x) = 2x f_|h|^2(x^2)
    out = np.exp(math.log(2.0) + logx + _ssr_logpdf(xa * xa, p.b, p.m, p.omega))
    out[xa == 0] = 0.0
    return float(out[0]) if x_arr.ndim == 0 else out


def _integer_coefficients(m: int) -> np.ndarray:
    # (m-1)! / ((m-1-i)! (i!)^2), i = 0..m-1
    return np.array(
        [math.comb(m - 1, i) / math.factorial(i) for i in range(m)], dtype=float
    )


def ssr_pdf_int(y, p: IntegerSRParams):
    """Finite-sum SSR density for integer fading order."""
    y_arr = _check_support(y, "y")
    ya = np.atleast_1d(y_arr)
    b, m, omega = p.b, p.m, p.omega
    denom = 2.0 * b * m + omega
    z = omega * ya / (2.0 * b * denom)
    poly = np.zeros_like(ya)
    # Horner over the (m-1)-degree polynomial
    for c in _integer_coefficients(m)[::-1]:
        poly = poly * z + c
    with np.errstate(divide="ignore"):
        log_out = (
            -math.log(2.0 * b)
            + _log_shape_factor(b, m, omega)
            - m * ya / denom
            + np.log(poly)
        )
    out = np.exp(log_out)
    return float(out[0]) if y_arr.ndim == 0 else out


def lower_gamma_int(n: int, x):
    """Unnormalized lower incomplete gamma for integer order ``n >= 1``.

    gamma(n, x) = (n-1)! (1 - e^{-x} sum_{k<n} x^k / k!)
    """
    if n < 1:
        raise ParameterError("order must be >= 1")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    reg = np.empty_like(xa)

    # finite sum, complemented; accurate once x is past the bulk
    big = xa >= n
    if big.any():
        xb = xa[big]
        term = np.exp(-xb)
        head = term.copy()
        for k in range(1, n):
            term = term * xb / k
            head = head + term
        reg[big] = 1.0 - head

    # below the bulk 1 - head cancels; sum the positive tail series instead
    small = ~big
    if small.any():
        xs = xa[small]
        with np.errstate(divide="ignore"):
            log_t = -xs + n * np.log(xs) - math.lgamma(n + 1)
        term = np.exp(log_t)
        tail = term.copy()
        j = 1
        while True:
            term = term * xs / (n + j)
            tail = tail + term
            if np.all(term <= 1e-17 * tail) or j > 1000:
                break
            j += 1
        reg[small] = tail

    out = math.factorial(n - 1) * np.clip(reg, 0.0, 1.0)
    return float(out[0]) if scalar else out


def ssr_cdf_int(y, p: IntegerSRParams):
    """Closed-form SSR CDF for integer fading order.

    F(y) = A^(m-1) sum_i c_i (omega / 2bm)^i gamma(i+1, m y / (2bm + omega))
    with ``A = 2bm / (2bm + omega)``, ``c_i = (m-1)! / ((m-1-i)! (i!)^2)`` and
    ``gamma`` the lower incomplete gamma function.
    """
    y_arr = _check_support(y, "y")
    ya = np.atleast_1d(y_arr)
    b, m, omega = p.b, p.m, p.omega
    two_bm = 2.0 * b * m
    arg = m * ya / (two_bm + omega)
    ratio = omega / two_bm
    log_lead = -(m - 1) * math.log1p(ratio)
    coeffs = _integer_coefficients(m)
    n_terms = m if ratio > 0 else 1
    total = np.zeros_like(ya)
    for i in range(n_terms):
        w = coeffs[i] * math.exp(log_lead + (i * math.log(ratio) if i else 0.0))
        total = total + w * lower_gamma_int(i + 1, arg)
    out = np.clip(total, 0.0, 1.0)
    return float(out[0]) if y_arr.ndim == 0 else out


def ssr_cdf_quad(y, p: SRParams, panels: int = 400, order: int = 16):
    """SSR CDF by composite Gauss-Legendre quadrature of :func:`ssr_pdf`.

    Valid for any m > 0.  Array input is integrated cumulatively over one
    mesh that contains every requested point.
    """
    y_arr = _check_support(y, "y")
    ya = np.atleast_1d(y_arr)
    top = float(ya.max()) if ya.size else 0.0
    if top == 0.0:
        out = np.zeros_like(ya)
        return float(out[0]) if y_arr.ndim == 0 else out
    # quadratic spacing puts more panels near 0, where m < 1 densities peak
    mesh = np.union1d(top * np.linspace(0.0, 1.0, panels + 1) ** 2, ya)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    lo, hi = mesh[:-1], mesh[1:]
    half = 0.5 * (hi - lo)
    pts = (0.5 * (hi + lo))[:, None] + half[:, None] * nodes[None, :]
    vals = ssr_pdf(pts.ravel(), p).reshape(pts.shape)
    cum = np.concatenate([[0.0], np.cumsum((half[:, None] * weights * vals).sum(axis=1))])
    out = np.clip(cum[np.searchsorted(mesh, ya)], 0.0, 1.0)
    return float(out[0]) if y_arr.ndim == 0 else out


def ssr_mean_int(p: IntegerSRParams) -> float:
    """Mean of an integer-order SSR variable: 2b + omega."""
    return 2.0 * p.b + p.omega


# ---------------------------------------------------------------------------
# parameter algebra
# ---------------------------------------------------------------------------

def scale(p: SRParams, k: float) -> SRParams:
    """Law of ``k * X^2`` when ``|X| ~ SR(p)``: SSR(k b, m, k omega)."""
    if not (np.isfinite(k) and k > 0):
        raise ParameterError(f"scale factor must be > 0, got {k!r}")
    return SRParams(k * p.b, p.m, k * p.omega)


def linear_relation_check(p1: SRParams, p2: SRParams, tol: float = 1e-9) -> float | None:
    """Return ``k`` such that SSR(p1) is the law of ``k * Y``, Y ~ SSR(p2), else None."""
    if not math.isclose(p1.m, p2.m, rel_tol=tol, abs_tol=0.0):
        return None
    k = p1.b / p2.b
    if p1.omega == 0 and p2.omega == 0:
        return k
    if p2.omega == 0 or p1.omega == 0:
        return None
    if not math.isclose(p1.omega / p2.omega, k, rel_tol=tol, abs_tol=0.0):
        return None
    return k


def round_fading_order(p: SRParams) -> IntegerSRParams:
    """Round m half away from zero, clamped below at 1."""
    m_int = max(1, int(math.floor(p.m + 0.5)))
    return IntegerSRParams(p.b, m_int, p.omega)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample_sr(p: SRParams | IntegerSRParams, rng: np.random.Generator, size=None):
    """Draw SR envelopes ``|A e^{j phi} + Z|``.

    ``A^2 ~ Gamma(m, omega/m)`` is the shadowed LOS power, ``phi`` is uniform
    and ``Z`` is circular complex Gaussian with total variance ``2b``.
    """
    m = float(p.m)
    los_power = rng.gamma(shape=m, scale=p.omega / m, size=size)
    phase = rng.uniform(0.0, 2.0 * np.pi, size=size)
    sigma = math.sqrt(p.b)
    re = np.sqrt(los_power) * np.cos(phase) + sigma * rng.standard_normal(size)
    im = np.sqrt(los_power) * np.sin(phase) + sigma * rng.standard_normal(size)
    return np.hypot(re, im)


def sample_ssr(p: SRParams | IntegerSRParams, rng: np.random.Generator, size=None):
    """Draw channel power gains ``|h|^2``."""
    return sample_sr(p, rng, size) ** 2
