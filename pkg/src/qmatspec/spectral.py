"""Closed-form side: spectral values, multiplicities, power sums and generating functions.

Everything is exact over the scalar field of ``q``.  A spectrum is the list of
characters ``chi(mu_i)`` of the spectral values on an irreducible module;
series are truncated formal power series stored as coefficient lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .scalar import PoleError, RatFunc, eval_at, q_int, ratfunc_reduce, render_scalar

__all__ = [
    "SpectrumAssignment",
    "SeriesTruncation",
    "CharacterTable",
    "spectrum",
    "multiplicities",
    "spectral_power_sums",
    "elementary",
    "series_identities",
    "lemma42_check",
    "closed_characters",
    "classical_limit",
    "character_table",
]

SIDES = ("V", "V*")


def _default_q(q):
    return RatFunc.q() if q is None else q


def _pad(lam, m: int) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam if x)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not a partition")
    if len(lam) > m:
        raise ValueError(f"partition {lam} has more than {m} rows")
    return lam + (0,) * (m - len(lam))


@dataclass(frozen=True)
class SpectrumAssignment:
    m: int
    lam: tuple[int, ...]
    side: str
    mu: tuple


def spectrum(lam, m: int, side: str = "V", q=None) -> SpectrumAssignment:
    """``mu_i = q^{-2(lam_i - i + m)}`` on ``V``, ``q^{2(lam_i - i + 1)}`` on ``V*``."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    q = _default_q(q)
    lam = _pad(lam, m)
    if side == "V":
        mu = tuple(q ** (-2 * (lam[i] - (i + 1) + m)) for i in range(m))
    else:
        mu = tuple(q ** (2 * (lam[i] - (i + 1) + 1)) for i in range(m))
    return SpectrumAssignment(m, lam, side, mu)


def multiplicities(mu, kind: str = "d", q=None) -> list:
    """``d_i = q^{-1} prod (mu_i - q^{-2} mu_j)/(mu_i - mu_j)``; ``d_tilde`` uses ``q`` and ``q^2``."""
    q = _default_q(q)
    if kind == "d":
        pre, f = 1 / q, q ** -2
    elif kind == "d_tilde":
        pre, f = q, q**2
    else:
        raise ValueError("kind must be 'd' or 'd_tilde'")
    mu = list(mu)
    out = []
    for i, mi in enumerate(mu):
        val = pre
        for j, mj in enumerate(mu):
            if j == i:
                continue
            den = mi - mj
            if not den:
                raise PoleError(f"coincident spectral values mu_{i + 1} = mu_{j + 1}")
            val = val * (mi - f * mj) / den
        out.append(val)
    return out


def spectral_power_sums(mu, n: int, kind: str = "p", q=None):
    """``p_n = sum mu_i^n d_i`` or ``t_n = sum (q^{-2} mu_i)^n d_tilde_i``."""
    q = _default_q(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "p":
        d = multiplicities(mu, "d", q)
        terms = [x**n * w for x, w in zip(mu, d)]
    elif kind == "t":
        d = multiplicities(mu, "d_tilde", q)
        terms = [(x / q**2) ** n * w for x, w in zip(mu, d)]
    else:
        raise ValueError("kind must be 'p' or 't'")
    total = q - q
    for t in terms:
        total = total + t
    return total


def elementary(mu, n: int, zero=0):
    """``e_n(mu)``; ``e_0 = 1`` and ``e_n = 0`` for ``n > len(mu)``."""
    if n == 0:
        return zero + 1
    total = zero
    for idx in combinations(range(len(mu)), n):
        t = zero + 1
        for i in idx:
            t = t * mu[i]
        total = total + t
    return total


# -- truncated series -----------------------------------------------------------------

@dataclass
class SeriesTruncation:
    """Coefficients of ``A(x)``, ``P(x)``, ``T(x)`` up to ``x^order``."""

    order: int
    A: list = field(default_factory=list)
    P: list = field(default_factory=list)
    T: list = field(default_factory=list)

    @classmethod
    def from_spectrum(cls, mu, order: int, q=None) -> SeriesTruncation:
        q = _default_q(q)
        zero = q - q
        A = [elementary(mu, n, zero) / q**n for n in range(order + 1)]
        P = [zero] + [spectral_power_sums(mu, n, "p", q) for n in range(1, order + 1)]
        T = [zero] + [spectral_power_sums(mu, n, "t", q) for n in range(1, order + 1)]
        return cls(order, A, P, T)


def _mul(a: list, b: list) -> list:
    n = min(len(a), len(b))
    out = []
    for k in range(n):
        s = a[0] * b[k]
        for i in range(1, k + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return out


def _inv(a: list) -> list:
    if not a[0]:
        raise PoleError("series with zero constant term is not invertible")
    out = [1 / a[0]]
    for k in range(1, len(a)):
        s = a[1] * out[k - 1]
        for i in range(2, k + 1):
            s = s + a[i] * out[k - i]
        out.append(-s / a[0])
    return out


def _subst(a: list, c) -> list:
    """``f(x) -> f(c x)``."""
    return [v * c**n for n, v in enumerate(a)]


def _add(a: list, b: list) -> list:
    return [x + y for x, y in zip(a, b)]


def _scale(a: list, s) -> list:
    return [s * x for x in a]


def _one(order: int, zero) -> list:
    return [zero + 1] + [zero] * order


def _linear_factor(c, order: int, zero) -> list:
    """``1 - c x``."""
    out = [zero] * (order + 1)
    out[0] = zero + 1
    if order >= 1:
        out[1] = -c
    return out


def _product_formula(mu, order: int, q, num_f, den_f) -> list:
    zero = q - q
    num, den = _one(order, zero), _one(order, zero)
    for x in mu:
        num = _mul(num, _linear_factor(num_f * x, order, zero))
        den = _mul(den, _linear_factor(den_f * x, order, zero))
    return _mul(num, _inv(den))


def _s_series(c, order: int, zero) -> list:
    """``S(c x)`` with ``S(z) = z / (1 - z)^2 = sum n z^n``."""
    return [zero] + [n * c**n for n in range(1, order + 1)]


def _cmp(name: str, lhs: list, rhs: list, params: dict) -> dict:
    for n, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            return {
                "check": name,
                "params": params,
                "pass": False,
                "witness": f"x^{n}: {render_scalar(x)} != {render_scalar(y)}",
            }
    return {"check": name, "params": params, "pass": True, "witness": None}


def series_identities(mu, order: int, q=None) -> list[dict]:
    """Coefficientwise checks of the relations among ``A``, ``P``, ``T``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    q = _default_q(q)
    zero = q - q
    omega = q - 1 / q
    S = SeriesTruncation.from_spectrum(mu, order, q)
    params = {"order": order, "m": len(mu)}
    out = []
    diff = _add(_subst(S.A, 1 / q), _scale(_subst(S.A, q), -1))
    out.append(_cmp("series_AP", _scale(_mul(_subst(S.A, q), _subst(S.P, -1)), omega), diff, params))
    out.append(_cmp("series_AT", _scale(_mul(_subst(S.A, 1 / q), _subst(S.T, -1)), omega), diff, params))
    out.append(_cmp("series_PT", S.P, _add(S.T, _scale(_mul(S.P, S.T), omega)), params))
    one = _one(order, zero)
    ratio = _product_formula(mu, order, q, q**-2, 1)
    out.append(_cmp("series_product_P", _add(one, _scale(S.P, omega)), ratio, params))
    ratio_t = _product_formula(mu, order, q, 1, q**-2)
    out.append(_cmp("series_product_T", _add(one, _scale(S.T, -omega)), ratio_t, params))
    # Hall-Littlewood form: x^n coefficient of the product is omega p_n, and A(qx) = prod (1 + mu x)
    out.append(_cmp("series_hall_littlewood", ratio[1:], _scale(S.P[1:], omega), params))
    prod_a = one
    for x in mu:
        prod_a = _mul(prod_a, _linear_factor(-x, order, zero))
    out.append(_cmp("series_A_product", _subst(S.A, q), prod_a, params))
    return out


def lemma42_check(mu, k0: int, order: int, q=None, parts=("P", "T")) -> list[dict]:
    """Effect of shifting one spectral value on ``P`` and ``T``.

    The ``P`` relation lowers ``mu_k0`` by ``q^-2``, the ``T`` relation raises it
    by ``q^2``; a requested part whose shifted spectrum has coincident values
    raises :class:`PoleError`.
    """
    q = _default_q(q)
    mu = list(mu)
    if not 1 <= k0 <= len(mu):
        raise ValueError("k0 out of range")
    zero = q - q
    omega = q - 1 / q
    om2 = omega * omega
    x0 = mu[k0 - 1]
    base = SeriesTruncation.from_spectrum(mu, order, q)
    params = {"order": order, "m": len(mu), "k0": k0}

    out = []
    one = _one(order, zero)
    if "P" in parts:
        down = list(mu)
        down[k0 - 1] = x0 / q**2
        if len(set(down)) < len(down):
            raise PoleError(f"mu_{k0} q^-2 coincides with another spectral value")
        Pd = SeriesTruncation.from_spectrum(down, order, q).P
        Sd = _s_series(x0 / q**2, order, zero)
        out.append(
            _cmp(
                "shift_relation_P",
                _add(Pd, _scale(Sd, omega)),
                _mul(base.P, _add(one, _scale(Sd, -om2))),
                params,
            )
        )
    Su = _s_series(x0, order, zero)
    if "T" in parts:
        up = list(mu)
        up[k0 - 1] = x0 * q**2
        if len(set(up)) < len(up):
            raise PoleError(f"mu_{k0} q^2 coincides with another spectral value")
        Tu = SeriesTruncation.from_spectrum(up, order, q).T
        out.append(
            _cmp(
                "shift_relation_T",
                _add(Tu, _scale(Su, -omega)),
                _mul(base.T, _add(one, _scale(Su, -om2))),
                params,
            )
        )
    # 1 - omega^2 S(z) = (1 - q^{-2} z)(1 - q^2 z)/(1 - z)^2
    rhs = _mul(
        _mul(_linear_factor(x0 / q**2, order, zero), _linear_factor(x0 * q**2, order, zero)),
        _inv(_mul(_linear_factor(x0, order, zero), _linear_factor(x0, order, zero))),
    )
    out.append(_cmp("shift_S_factor", _add(one, _scale(Su, -om2)), rhs, params))
    return out


# -- closed formulas ---------------------------------------------------------------------

def closed_characters(lam, m: int, n: int, side: str = "V", q=None):
    """``chi(p_n)`` from the q-number product formula in ``l_i = lam_i - i``."""
    q = _default_q(q)
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    lam = _pad(lam, m)
    ell = [lam[i] - (i + 1) for i in range(m)]
    shift = -1 if side == "V" else 1
    total = q - q
    for i in range(m):
        term = q ** (-2 * n * ell[i]) if side == "V" else q ** (2 * n * ell[i])
        for j in range(m):
            if j != i:
                term = term * q_int(ell[i] - ell[j] + shift, q) / q_int(ell[i] - ell[j], q)
        total = total + term
    pre = q ** (-m * (2 * n + 1)) if side == "V" else q ** (2 * n - m)
    return pre * total


def _limit(x) -> Fraction:
    x = RatFunc._as(x)
    x = ratfunc_reduce(x.num, x.den)
    try:
        return eval_at(x, 1)
    except PoleError as exc:
        raise PoleError(f"q -> 1 limit does not exist: {exc}") from None


def _plain(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def classical_limit(lam, N: int, n_max: int = 3) -> dict:
    """q-exact shifted spectral characters and their q -> 1 limits.

    ``mu_hat_i = q^{-a_i} (a_i)_q`` with ``a_i = lam_i - i + N``; the limits of
    ``mu_hat_i`` and of the multiplicities ``d_i`` give the classical values and
    ``sum_i a_i^n d_i`` the traces of powers of the generating matrix.
    """
    q = RatFunc.q()
    lam = _pad(lam, N)
    a = [lam[i] - (i + 1) + N for i in range(N)]
    mu_hat = [q ** (-x) * q_int(x, q) for x in a]
    mu = spectrum(lam, N, "V", q).mu
    d = multiplicities(mu, "d", q)
    mu_lim = [_limit(x) for x in mu_hat]
    d_lim = [_limit(x) for x in d]
    pp = []
    for n in range(1, n_max + 1):
        pp.append(sum((x**n * w for x, w in zip(mu_lim, d_lim)), Fraction(0)))
    return {
        "lambda": list(lam),
        "N": N,
        "mu_hat": [render_scalar(x) for x in mu_hat],
        "mu_hat_limits": [_plain(x) for x in mu_lim],
        "d_hat": [_plain(x) for x in d_lim],
        "pp_power_sums": [_plain(x) for x in pp],
    }


# -- character tables -------------------------------------------------------------------

@dataclass
class CharacterTable:
    m: int
    lam: tuple[int, ...]
    side: str
    mu: list
    p: dict
    t: dict
    a: dict
    classical: dict

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "lambda": list(self.lam),
            "side": self.side,
            "mu": [render_scalar(x) for x in self.mu],
            "p": {str(n): render_scalar(v) for n, v in self.p.items()},
            "t": {str(n): render_scalar(v) for n, v in self.t.items()},
            "a": {str(n): render_scalar(v) for n, v in self.a.items()},
            "classical": self.classical,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def character_table(lam, m: int, n_max: int, side: str = "V", q=None) -> CharacterTable:
    """Spectrum and ``p``/``t``/``a`` characters up to ``n_max`` on one side."""
    q = _default_q(q)
    sp = spectrum(lam, m, side, q)
    zero = q - q
    p = {n: spectral_power_sums(sp.mu, n, "p", q) for n in range(1, n_max + 1)}
    t = {n: spectral_power_sums(sp.mu, n, "t", q) for n in range(1, n_max + 1)}
    a = {n: elementary(sp.mu, n, zero) / q**n for n in range(1, n_max + 1)}
    classical = {}
    if side == "V" and isinstance(q, RatFunc):
        lim = classical_limit(lam, m, n_max)
        classical = {k: lim[k] for k in ("mu_hat_limits", "d_hat", "pp_power_sums")}
        classical = {k: [str(v) for v in vals] for k, vals in classical.items()}
    return CharacterTable(m, sp.lam, side, list(sp.mu), p, t, a, classical)
