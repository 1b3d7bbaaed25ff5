"""L-function data and direct evaluators.

Holds the invariants of a self-dual Selberg-class datum (gamma factors,
Dirichlet coefficients, root number, pole order), the Dirichlet-convolution
algebra on coefficient tables, and evaluators for the completed function

    xi(s) = s^m (s-1)^m Q^s prod_j Gamma(lambda_j s + mu_j) * L(s),

log-scaled so gamma-factor ratios never overflow.  zeta(s) and Hurwitz
zeta(s, a) are computed by Euler-Maclaurin summation with Bernoulli
corrections and an |Im s|-adaptive truncation; Gamma by a fixed Lanczos
rational approximation with reflection.  Everything is pure and vectorized
over numpy arrays, safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "SelbergDatum",
    "CompletedValue",
    "zeta_datum",
    "dirichlet_datum",
    "datum_from_json",
    "dirichlet_convolve",
    "dirichlet_inverse",
    "dirichlet_power",
    "q_coeffs",
    "q_coeffs_float",
    "mobius_sieve",
    "complex_gamma",
    "lanczos_loggamma",
    "zeta_em",
    "hurwitz_em",
    "xi_eval",
    "log_xi",
]


# ----------------------------------------------------------------------------
# datum
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class SelbergDatum:
    """Invariants of one self-dual L-function.

    coeff_source(N) returns the coefficient table a_L(0..N) as a numpy array
    with slot 0 zeroed and a_L(1) = 1.  inverse_source, when present, returns
    the Dirichlet-inverse table the same way (used on large-N fast paths;
    omitted, the generic recursion is used).
    """

    label: str
    Q: float
    gamma_factors: tuple[tuple[float, complex], ...]   # (lambda_j, mu_j)
    epsilon: int
    m_L: int
    coeff_source: Callable[[int], np.ndarray] = field(compare=False)
    l_series: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    inverse_source: Callable[[int], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.Q <= 0:
            raise ValueError("Q must be positive")
        if self.epsilon not in (-1, 1):
            raise ValueError("epsilon must be +1 or -1")
        if self.m_L < 0:
            raise ValueError("m_L must be nonnegative")
        for lam, mu in self.gamma_factors:
            if lam <= 0:
                raise ValueError("gamma factor lambda must be positive")
            if complex(mu).real < 0:
                raise ValueError("gamma factor mu must have Re(mu) >= 0")
        if self.coeffs(1)[1] != 1:
            raise ValueError("a_L(1) must equal 1")

    @property
    def degree(self) -> float:
        return 2.0 * sum(lam for lam, _ in self.gamma_factors)

    def coeffs(self, N: int) -> np.ndarray:
        return self.coeff_source(N)


@dataclass(frozen=True)
class CompletedValue:
    """xi(s) split as xi * exp(log_scale) to dodge Gamma overflow."""

    s: complex
    xi: complex
    log_scale: float

    @property
    def value(self) -> complex:
        return self.xi * np.exp(self.log_scale)


# ----------------------------------------------------------------------------
# Dirichlet-convolution algebra (exact when handed exact integer tables)
# ----------------------------------------------------------------------------

def dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a * b)(n) = sum_{d|n} a(d) b(n/d) on tables indexed 1..N."""
    N = min(len(a), len(b)) - 1
    out = np.zeros(N + 1, dtype=np.result_type(a, b))
    for d in range(1, N + 1):
        if a[d] != 0:
            out[d::d] += a[d] * b[1:N // d + 1]
    out[0] = 0
    return out


def dirichlet_inverse(a: np.ndarray, N: int | None = None) -> np.ndarray:
    """Dirichlet inverse via b(n) = -sum_{d|n, d<n} a(n/d) b(d), b(1) = 1."""
    if N is None:
        N = len(a) - 1
    if a[1] != 1:
        raise ValueError("Dirichlet inverse requires a(1) = 1")
    b = np.zeros(N + 1, dtype=a.dtype)
    b[1] = 1
    for n in range(2, N + 1):
        acc = 0
        for d in range(1, int(math.isqrt(n)) + 1):
            if n % d == 0:
                q = n // d
                if d < n:
                    acc += a[q] * b[d]
                if q != d and q < n:
                    acc += a[d] * b[q]
        b[n] = -acc
    b[0] = 0
    return b


def dirichlet_power(a: np.ndarray, k: int, N: int | None = None) -> np.ndarray:
    """k-fold Dirichlet power a^{*k}; negative k works on the inverse."""
    if N is None:
        N = len(a) - 1
    if k == 0:
        raise ValueError("k = 0 not accepted; use the identity table explicitly")
    if a[1] != 1:
        raise ValueError("dirichlet_power requires a(1) = 1")
    base = a[: N + 1].copy() if k > 0 else dirichlet_inverse(a, N)
    out = base.copy()
    for _ in range(abs(k) - 1):
        out = dirichlet_convolve(out, base)
    return out


def q_coeffs(datum: SelbergDatum, omega: float, nu: int, N: int) -> np.ndarray:
    """q(n) = n^omega sum_{d|n} a^nu(n/d) a^{-nu}(d) d^{-2 omega}, n <= N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if nu < 1:
        raise ValueError("nu must be a positive integer")
    a = datum.coeffs(N).astype(float)
    anu = dirichlet_power(a, nu, N)
    aneg = dirichlet_power(a, -nu, N)
    n = np.arange(N + 1, dtype=float)
    n[0] = 1.0
    q = dirichlet_convolve(anu, aneg * n ** (-2.0 * omega))
    q *= n ** omega
    q[0] = 0.0
    return q


def _convolve_big(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Float Dirichlet convolution with a sqrt-split loop, for large N."""
    N = len(a) - 1
    out = np.zeros(N + 1)
    r = int(math.isqrt(N))
    for d in range(1, r + 1):
        if a[d] != 0:
            out[d::d] += a[d] * b[1:N // d + 1]
        if b[d] != 0:
            lo = d * (r + 1)
            if lo <= N:
                out[lo::d] += b[d] * a[r + 1:N // d + 1]
    out[0] = 0.0
    return out


def mobius_sieve(N: int) -> np.ndarray:
    """Mobius function table 0..N by the classical sieve."""
    mu = np.ones(N + 1)
    mu[0] = 0.0
    is_comp = np.zeros(N + 1, dtype=bool)
    for p in range(2, N + 1):
        if not is_comp[p]:
            if p <= N // p:
                is_comp[p * p::p] = True
            mu[p::p] *= -1.0
            p2 = p * p
            if p2 <= N:
                mu[p2::p2] = 0.0
    return mu


def q_coeffs_float(datum: SelbergDatum, omega: float, nu: int, N: int) -> np.ndarray:
    """q_coeffs on floats with sqrt-split convolutions; fine to N ~ 1e7."""
    a = datum.coeffs(N).astype(float)
    if datum.inverse_source is not None:
        ainv = datum.inverse_source(N).astype(float)
    else:
        ainv = dirichlet_inverse(a, N)
    anu = a.copy()
    aneg = ainv.copy()
    for _ in range(nu - 1):
        anu = _convolve_big(anu, a)
        aneg = _convolve_big(aneg, ainv)
    n = np.arange(N + 1, dtype=float)
    n[0] = 1.0
    q = _convolve_big(anu, aneg * n ** (-2.0 * omega))
    q *= n ** omega
    q[0] = 0.0
    return q


# ----------------------------------------------------------------------------
# Gamma: Lanczos approximation (Godfrey g = 607/128, 15 terms), log-scaled
# ----------------------------------------------------------------------------

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_LOG_SQRT_2PI = 0.91893853320467274178


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log sin(pi z), stable for large |Im z|; branch unspecified mod 2 pi i.

    sin(pi z) = e^{+i pi z}(1 - e^{-2 i pi z})/(2i)    (stable for Im z <= 0)
              = -e^{-i pi z}(1 - e^{+2 i pi z})/(2i)   (stable for Im z > 0)
    """
    iz = 1j * np.pi * z
    up = z.imag > 0
    lead = np.where(up, -iz, iz)
    rest = -np.expm1(np.where(up, 2.0 * iz, -2.0 * iz))
    const = np.where(up, np.log(-2j), np.log(2j))
    return lead + np.log(rest) - const


def lanczos_loggamma(z: np.ndarray | complex) -> np.ndarray:
    """log Gamma(z) with exact real part; imaginary part may drop 2 pi i.

    Reflection handles Re(z) < 1/2.  Exponentiating the result is always
    legitimate, which is all the log-scaled xi machinery needs.  Pole inputs
    (nonpositive integers) raise a domain error.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    refl = z.real < 0.5
    if np.any(refl):
        zr = z[refl]
        bad = (np.abs(zr.imag) < 1e-14) & (np.abs(zr.real - np.round(zr.real)) < 1e-14)
        if np.any(bad):
            raise ZeroDivisionError("Gamma pole at nonpositive integer")
    zz = np.where(refl, 1.0 - z, z)
    w = zz - 1.0
    ser = np.full_like(zz, _LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        ser = ser + _LANCZOS_C[k] / (w + k)
    tmp = w + _LANCZOS_G + 0.5
    lg = _LOG_SQRT_2PI + (w + 0.5) * np.log(tmp) - tmp + np.log(ser)
    if np.any(refl):
        lg = np.where(refl, np.log(np.pi) - _log_sin_pi(np.where(refl, z, 0.5)) - lg, lg)
    return lg


def complex_gamma(z: np.ndarray | complex):
    """Gamma(z) as (mantissa, log_scale): Gamma = mantissa * exp(log_scale)."""
    lg = lanczos_loggamma(z)
    scale = np.real(lg)
    return np.exp(1j * np.imag(lg)), scale


# ----------------------------------------------------------------------------
# zeta and Hurwitz zeta by Euler-Maclaurin
# ----------------------------------------------------------------------------

_B2K = np.array([
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
    -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730,
])
# Stieltjes constants gamma_0, gamma_1, gamma_2 for the s = 1 expansion
_STIELTJES = (0.5772156649015329, -0.0728158454836767, -0.00969036319287232)


def _em_sum(s: np.ndarray, a: float, N: int, K: int = 12) -> np.ndarray:
    """Euler-Maclaurin for sum_{n>=0} (n+a)^{-s} truncated after N terms."""
    n = np.arange(N, dtype=float) + a
    acc = (n[:, None] ** (-s[None, :])).sum(axis=0)
    Na = float(N) + a
    acc += 0.5 * Na ** (-s)
    acc += Na ** (1.0 - s) / (s - 1.0)
    rising = s.copy()
    fact = 1.0
    for k in range(1, K + 1):
        fact *= (2 * k - 1) * (2 * k)
        if k > 1:
            rising = rising * (s + 2 * k - 3) * (s + 2 * k - 2)
        acc += _B2K[k - 1] / fact * rising * Na ** (-s - 2 * k + 1.0)
    return acc


def _em_bucketed(s: np.ndarray, a: float) -> np.ndarray:
    out = np.empty_like(s)
    t = np.abs(s.imag)
    edges = [0.0, 40.0, 120.0, 400.0, 1200.0, 4000.0, 12000.0, 40000.0, math.inf]
    for lo, hi in zip(edges[:-1], edges[1:]):
        m = (t >= lo) & (t < hi)
        if np.any(m):
            N = int(max(56, math.ceil(0.62 * float(t[m].max()) + 16)))
            out[m] = _em_sum(s[m], a, N)
    return out


def zeta_em(s: np.ndarray | complex) -> np.ndarray:
    """Riemann zeta, reliable for Re(s) > -25 at any height used here."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    near_one = np.abs(s - 1.0) < 1e-6
    out = _em_bucketed(np.where(near_one, 2.0, s), 1.0)
    if np.any(near_one):
        e = s[near_one] - 1.0
        g0, g1, g2 = _STIELTJES
        out[near_one] = 1.0 / e + g0 - g1 * e + 0.5 * g2 * e * e
    return out


def hurwitz_em(s: np.ndarray | complex, a: float) -> np.ndarray:
    """Hurwitz zeta(s, a) for 0 < a <= 1, same validity range as zeta_em."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    return _em_bucketed(s, a)


# ----------------------------------------------------------------------------
# completed xi
# ----------------------------------------------------------------------------

def _log_l_pole_part(datum: SelbergDatum, s: np.ndarray) -> np.ndarray:
    """log[(s-1)^{m} L(s)], regular across s = 1 for the zeta family."""
    m = datum.m_L
    if m == 0:
        return np.log(datum.l_series(s))
    if datum.label != "zeta":
        return m * np.log(s - 1.0) + np.log(datum.l_series(s))
    near = np.abs(s - 1.0) < 1e-6
    safe = np.where(near, 2.0, s)
    out = np.log(zeta_em(safe)) + np.log(safe - 1.0)
    if np.any(near):
        g0, g1, g2 = _STIELTJES
        e = np.where(near, s - 1.0, 0.0)
        out = np.where(near, np.log(1.0 + g0 * e - g1 * e * e + 0.5 * g2 * e ** 3), out)
    if m > 1:
        out = out + (m - 1) * np.log(s - 1.0)
    return out


def log_xi(datum: SelbergDatum, s: np.ndarray | complex) -> np.ndarray:
    """log xi_L(s); real part exact, imaginary part defined mod 2 pi.

    s = 0 is regularized by pairing pole-order factors with mu = 0 gamma
    factors through s Gamma(lambda s) = Gamma(lambda s + 1)/lambda, and
    s = 1 through the Laurent expansion of (s-1) L(s).
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    m = datum.m_L
    out = s * math.log(datum.Q)
    consumed = 0
    for lam, mu in datum.gamma_factors:
        if consumed < m and mu == 0:
            out = out + lanczos_loggamma(lam * s + 1.0) - math.log(lam)
            consumed += 1
        else:
            out = out + lanczos_loggamma(lam * s + mu)
    if m > consumed:
        out = out + (m - consumed) * np.log(s)
    return out + _log_l_pole_part(datum, s)


def xi_eval(datum: SelbergDatum, s):
    """Completed xi_L(s) as CompletedValue (list of them for array input)."""
    scalar = np.ndim(s) == 0
    sa = np.atleast_1d(np.asarray(s, dtype=complex))
    lg = log_xi(datum, sa)
    scale = np.real(lg)
    vals = np.exp(1j * np.imag(lg))
    res = [CompletedValue(complex(si), complex(vi), float(sc))
           for si, vi, sc in zip(sa, vals, scale)]
    return res[0] if scalar else res


# ----------------------------------------------------------------------------
# built-in data
# ----------------------------------------------------------------------------

def _zeta_coeffs(N: int) -> np.ndarray:
    a = np.ones(N + 1)
    a[0] = 0.0
    return a


def zeta_datum() -> SelbergDatum:
    """Riemann zeta: Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s)."""
    return SelbergDatum(
        label="zeta",
        Q=math.pi ** -0.5,
        gamma_factors=((0.5, 0.0 + 0.0j),),
        epsilon=1,
        m_L=1,
        coeff_source=_zeta_coeffs,
        l_series=zeta_em,
        inverse_source=mobius_sieve,
    )


def dirichlet_datum(modulus: int, table: Sequence[float], label: str | None = None,
                    epsilon: int = 1) -> SelbergDatum:
    """Real primitive Dirichlet character datum from its period table.

    table[r-1] = chi(r) for r = 1..modulus.  Even characters get
    (lambda, mu) = (1/2, 0), odd ones (1/2, 1/2); Q = sqrt(modulus/pi).
    """
    chi = np.asarray(table, dtype=float)
    if len(chi) != modulus:
        raise ValueError("character table must have one entry per residue")
    if chi[0] != 1:
        raise ValueError("chi(1) must be 1")
    odd = chi[(modulus - 2) % modulus] == -1  # chi(-1)

    def coeffs(N: int) -> np.ndarray:
        n = np.arange(N + 1)
        out = chi[(n - 1) % modulus].copy()
        out[0] = 0.0
        return out

    def inv(N: int) -> np.ndarray:
        return mobius_sieve(N) * coeffs(N)

    def l_series(s: np.ndarray) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=complex))
        acc = np.zeros_like(s)
        for r in range(1, modulus + 1):
            c = chi[r - 1]
            if c != 0:
                acc = acc + c * hurwitz_em(s, r / modulus)
        return acc * np.asarray(float(modulus), dtype=complex) ** (-s)

    return SelbergDatum(
        label=label or f"dirichlet-{modulus}",
        Q=math.sqrt(modulus / math.pi),
        gamma_factors=((0.5, (0.5 if odd else 0.0) + 0.0j),),
        epsilon=epsilon,
        m_L=0,
        coeff_source=coeffs,
        l_series=l_series,
        inverse_source=inv,
    )


def datum_from_json(obj: dict | str) -> SelbergDatum:
    """Datum from the JSON schema:

    {"label", "Q", "gamma": [[lambda, re_mu, im_mu], ...], "epsilon", "m_L",
     "coeffs": {"kind": "zeta" | "dirichlet", "modulus"?, "table"?}}
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    coeffs = obj["coeffs"]
    if coeffs["kind"] == "zeta":
        base = zeta_datum()
    elif coeffs["kind"] == "dirichlet":
        base = dirichlet_datum(int(coeffs["modulus"]), coeffs["table"])
    else:
        raise ValueError(f"unknown coeffs kind {coeffs['kind']!r}")
    return SelbergDatum(
        label=obj["label"],
        Q=float(obj["Q"]),
        gamma_factors=tuple((float(g[0]), complex(g[1], g[2] if len(g) > 2 else 0.0))
                            for g in obj["gamma"]),
        epsilon=int(obj["epsilon"]),
        m_L=int(obj["m_L"]),
        coeff_source=base.coeff_source,
        l_series=base.l_series,
        inverse_source=base.inverse_source,
    )
