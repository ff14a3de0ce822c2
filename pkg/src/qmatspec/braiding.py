"""Hecke symmetries: construction, skew-inverse, B/C matrices, bi-rank.

Index convention: ``R[(a, b), (i, j)]`` is the coefficient of
``x_a (x) x_b`` in ``R(x_i (x) x_j)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalar import LaurentPoly, RatFunc, ScalarBackend, q_int, render_scalar
from .tensor import TensorOp, embed, flip, identity, inverse, op_witness, rank, rtrace

__all__ = [
    "HeckeSymmetry",
    "NotSkewInvertibleError",
    "NotHeckeError",
    "BirankError",
    "drinfeld_jimbo",
    "hecke_symmetry",
    "skew_inverse",
    "bc_matrices",
    "birank",
    "validate",
    "recover_q",
    "load_r_matrix",
    "r_matrix_json",
]


class NotSkewInvertibleError(ValueError):
    pass


class NotHeckeError(ValueError):
    pass


class BirankError(ValueError):
    pass


@dataclass(eq=False)
class HeckeSymmetry:
    """A Hecke symmetry together with its derived data.

    ``Psi``, ``B``, ``C`` and ``m`` may be ``None`` for an unchecked bundle
    (built with ``check=False``); ``validate`` then reports what is missing.
    """

    N: int
    R: TensorOp
    q: object
    backend: ScalarBackend
    Psi: TensorOp | None = None
    B: TensorOp | None = None
    C: TensorOp | None = None
    m: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def omega(self):
        return self.q - 1 / self.q

    @property
    def one(self):
        return self.backend.one

    @property
    def R_inv(self) -> TensorOp:
        if "R_inv" not in self._cache:
            self._cache["R_inv"] = inverse(self.R, self.one)
        return self._cache["R_inv"]

    def R_at(self, i: int, p: int, power: int = 1) -> TensorOp:
        """``R_i`` (or its inverse for ``power=-1``) embedded on ``p`` legs."""
        key = ("R_at", i, p, power)
        if key not in self._cache:
            base = self.R if power == 1 else self.R_inv
            self._cache[key] = embed(base, i, p)
        return self._cache[key]

    def identity(self, p: int) -> TensorOp:
        return identity(p, self.N, self.one)

    def rtrace(self, op: TensorOp, legs) -> TensorOp:
        return rtrace(op, legs, self.C)


def _dj_matrix(N: int, q) -> TensorOp:
    omega = q - 1 / q
    rows: dict = {}
    for i in range(N):
        for j in range(N):
            col = i * N + j
            if i == j:
                rows.setdefault(col, {})[col] = q
            else:
                rows.setdefault(j * N + i, {})[col] = 1
                if i < j:
                    rows.setdefault(col, {})[col] = omega
    return TensorOp(2, N, rows)


def drinfeld_jimbo(N: int, backend: ScalarBackend | None = None, check: bool = True) -> HeckeSymmetry:
    """The standard GL(N) Hecke symmetry (bi-rank ``(N|0)``)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    backend = backend or ScalarBackend.symbolic()
    R = _dj_matrix(N, backend.q).map(backend.convert)
    return hecke_symmetry(R, backend, q=backend.q, check=check)


def hecke_symmetry(
    R: TensorOp,
    backend: ScalarBackend,
    q=None,
    check: bool = True,
    k_max: int = 6,
) -> HeckeSymmetry:
    """Bundle ``R`` with ``q``, ``Psi``, ``B``, ``C`` and the bi-rank.

    Without ``q`` it is recovered from the spectrum of ``R``.  With
    ``check`` any failure raises; otherwise the derived fields that cannot be
    computed are left as ``None``.
    """
    if R.leg_count != 2:
        raise ValueError("R must act on two legs")
    N = R.leg_dim
    if q is None:
        try:
            q = recover_q(R, backend)
        except NotHeckeError:
            if check:
                raise
            q = backend.q
    H = HeckeSymmetry(N=N, R=R, q=backend.convert(q), backend=backend)
    try:
        H.Psi = skew_inverse(R, N, backend)
        H.B, H.C = bc_matrices(H.Psi)
    except NotSkewInvertibleError:
        if check:
            raise
        return H
    report = validate(H, with_birank=False)
    bad = [e["check"] for e in report if not e["pass"]]
    if bad:
        if check:
            raise NotHeckeError(f"R fails: {', '.join(bad)}")
        return H  # the bi-rank of a non-Hecke R is meaningless
    try:
        H.m = birank(H, k_max)
    except (BirankError, ZeroDivisionError):
        if check:
            raise
    return H


def skew_inverse(R: TensorOp, N: int, backend: ScalarBackend | None = None) -> TensorOp:
    """``Psi`` with ``Tr_2(R_12 Psi_23) = P_13 = Tr_2(Psi_12 R_23)``.

    The first equation is linear in ``Psi``: with
    ``X[(a1,b1),(a2,c)] = R[(a1,a2),(b1,c)]`` and
    ``Y[(a2,c),(a3,b3)] = Psi[(c,a3),(a2,b3)]`` it reads ``X Y = Z`` where
    ``Z`` is the reshuffled flip.  The second equation is checked after.
    """
    one = backend.one if backend else 1
    n2 = N * N
    xrows: dict = {}
    for r, c, v in R.entries():
        a1, a2 = divmod(r, N)
        b1, cc = divmod(c, N)
        xrows.setdefault(a1 * N + b1, {})[a2 * N + cc] = v
    X = TensorOp(2, N, xrows)
    try:
        Xinv = inverse(X, one)
    except ZeroDivisionError:
        raise NotSkewInvertibleError("reshuffled R is singular: not skew-invertible") from None
    Z = {a1 * N + b1: {b1 * N + a1: one} for a1 in range(N) for b1 in range(N)}
    Y = Xinv @ TensorOp(2, N, Z)
    prows: dict = {}
    for r, c, v in Y.entries():
        a2, cc = divmod(r, N)
        a3, b3 = divmod(c, N)
        prows.setdefault(cc * N + a3, {})[a2 * N + b3] = v
    Psi = TensorOp(2, N, prows)
    assert Psi.dim == n2
    return Psi


def skew_identities(R: TensorOp, Psi: TensorOp, one=1) -> tuple[bool, bool]:
    N = R.leg_dim
    plain = identity(1, N, one)
    P = flip(N, one)
    left = rtrace(embed(R, 1, 3) @ embed(Psi, 2, 3), [2], plain)
    right = rtrace(embed(Psi, 1, 3) @ embed(R, 2, 3), [2], plain)
    return left == P, right == P


def bc_matrices(Psi: TensorOp) -> tuple[TensorOp, TensorOp]:
    """``B[i,j] = sum_a Psi[(a,i),(a,j)]`` and ``C[i,j] = sum_a Psi[(i,a),(j,a)]``."""
    N = Psi.leg_dim
    plain = identity(1, N)
    B = rtrace(Psi, [1], plain)
    C = rtrace(Psi, [2], plain)
    return B, C


def recover_q(R: TensorOp, backend: ScalarBackend):
    """The Hecke parameter read off the spectrum of ``R``.

    ``R^2 = omega R + I`` fixes ``omega``; the eigenvalues are the roots of
    ``t^2 - omega t - 1``, and the one with the larger eigenspace is ``q``.
    """
    one = backend.one
    sq = R @ R
    diff = sq - identity(2, R.leg_dim, one)
    omega = None
    for r, c, v in R.entries():
        omega = diff[r, c] / v
        break
    if omega is None or diff != R.scale(omega):
        raise NotHeckeError("R^2 is not a combination of R and I")
    root = _sqrt(omega * omega + 4)
    if root is None:
        raise NotHeckeError("eigenvalues of R are not in the base field")
    a = (omega + root) / 2
    b = (omega - root) / 2
    if a == b:
        raise NotHeckeError("R has a single eigenvalue")
    Id = identity(2, R.leg_dim, one)
    rank_a = rank((R - Id.scale(b)).scale(1 / (a - b)))
    rank_b = rank((R - Id.scale(a)).scale(1 / (b - a)))
    return a if rank_a >= rank_b else b


def _sqrt(x):
    if isinstance(x, Fraction):
        if x < 0:
            return None
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
        return None
    if isinstance(x, RatFunc):
        n, d = _laurent_sqrt(x.num), _laurent_sqrt(x.den)
        if n is None or d is None:
            return None
        return RatFunc(n, d)
    return _sqrt(Fraction(x))


def _laurent_sqrt(p: LaurentPoly) -> LaurentPoly | None:
    if not p:
        return LaurentPoly()
    lo, hi = p.low, p.high
    if lo % 2 or hi % 2:
        return None
    lead = _sqrt(Fraction(p.leading()))
    if lead is None:
        return None
    # top-down long square root
    c = p.coeffs
    s: dict = {hi // 2: lead}
    for e in range(hi // 2 - 1, lo // 2 - 1, -1):
        # coefficient of q^(hi//2 + e) in s^2 determines s_e
        target = hi // 2 + e
        acc = c.get(target, 0)
        for a, va in s.items():
            b = target - a
            if b in s and b != e and a != e:
                acc -= va * s[b]
        s[e] = Fraction(acc) / (2 * lead)
    root = LaurentPoly(s)
    return root if root * root == p else None


def birank(H: HeckeSymmetry, k_max: int = 6) -> int:
    """Smallest ``m`` with the one-column idempotent on ``m+1`` legs zero."""
    from .heckerep import column_idempotent

    for k in range(2, k_max + 2):
        if column_idempotent(H, k).is_zero():
            return k - 1
    raise BirankError(f"bi-rank undetermined (possibly not (m|0)): no vanishing up to degree {k_max + 1}")


def _result(check: str, residual: TensorOp) -> dict:
    ok = residual.is_zero()
    entry = {"check": check, "pass": ok}
    if not ok:
        entry["witness"] = op_witness(residual)
    return entry


def validate(H: HeckeSymmetry, with_birank: bool = True) -> list[dict]:
    """Pass/fail entries for braid, Hecke, skew-inverse and the trace of C."""
    one = H.one
    R, q = H.R, H.q
    report = []
    r1, r2 = embed(R, 1, 3), embed(R, 2, 3)
    braid = r1 @ r2 @ r1 - r2 @ r1 @ r2
    report.append(_result("braid", braid))
    Id = identity(2, H.N, one)
    hecke = (Id.scale(q) - R) @ (Id.scale(1 / q) + R)
    report.append(_result("hecke", hecke))
    if H.Psi is None:
        report.append({"check": "skew_inverse_left", "pass": False, "witness": "not skew-invertible"})
        report.append({"check": "skew_inverse_right", "pass": False, "witness": "not skew-invertible"})
    else:
        left, right = skew_identities(R, H.Psi, one)
        report.append({"check": "skew_inverse_left", "pass": left})
        report.append({"check": "skew_inverse_right", "pass": right})
    if with_birank:
        m = H.m
        if m is None and not all(e["pass"] for e in report):
            report.append({"check": "birank", "pass": False, "witness": "not computed: R is not a Hecke symmetry"})
        elif m is None:
            try:
                m = birank(H)
            except (BirankError, ZeroDivisionError) as exc:
                report.append({"check": "birank", "pass": False, "witness": str(exc)})
        if m is not None:
            report.append({"check": "birank", "pass": True, "m": m})
        if m is not None and H.C is not None:
            tr = sum((H.C[i, i] for i in range(H.N)), 0 * one)
            want = q ** (-m) * q_int(m, q)
            entry = {"check": "trace_C", "pass": tr == want, "value": render_scalar(tr), "m": m}
            report.append(entry)
    return report


# -- file format ---------------------------------------------------------------

def load_r_matrix(text: str, backend: ScalarBackend, check: bool = True) -> HeckeSymmetry:
    """Read ``{"N": n, "R": [[...]]}`` with entries in the scalar grammar."""
    data = json.loads(text)
    N = int(data["N"])
    rows = data["R"]
    if len(rows) != N * N or any(len(r) != N * N for r in rows):
        raise ValueError(f"R must be a {N * N}x{N * N} array")
    dense = [[backend.parse(str(s)) for s in row] for row in rows]
    R = TensorOp.from_dense(dense, N)
    return hecke_symmetry(R, backend, check=check)


def r_matrix_json(H: HeckeSymmetry) -> str:
    return json.dumps(
        {"N": H.N, "R": [[render_scalar(v) for v in row] for row in H.R.to_dense(0)]},
        indent=1,
    )
