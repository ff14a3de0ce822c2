"""Characteristic-subalgebra machinery inside the tensor representations.

Power matrices ``P_k^n``, ``T_k^n``; the represented generating matrix of the
reflection equation algebra on ``V^{(x)k}`` (module side) and on
``V^{*(x)k}`` (dual side); character extraction, Newton conversions,
Cayley-Hamilton residuals and the recursions relating weights ``k-1`` and ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braiding import HeckeSymmetry
from .heckerep import StandardTableau, YoungIdempotent, jm_matrix, jm_shifted, young_idempotent
from .scalar import NonGenericError, q_int, render_scalar
from .tensor import TensorOp, embed, inverse, kron, op_witness

__all__ = [
    "PowerMatrices",
    "RepresentedGenerators",
    "GeneratorConventionError",
    "NotScalarError",
    "NewtonError",
    "power_matrices",
    "represented_generators",
    "monomial_action_t",
    "extract_character",
    "newton_convert",
    "cayley_hamilton_residual",
    "lemma44_check",
]

SIDES = ("V", "V*")


class GeneratorConventionError(RuntimeError):
    """The represented generators violate the reflection equation."""


class NotScalarError(ValueError):
    """An operator is not a scalar on the image of an idempotent."""


class NewtonError(ValueError):
    """Newton recursion produced a nonzero ``a_n`` beyond the bi-rank."""


def _entry(check: str, params: dict, ok: bool, witness=None) -> dict:
    return {"check": check, "params": params, "pass": bool(ok), "witness": None if ok else witness}


# -- power matrices ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PowerMatrices:
    k: int
    n: int
    P: TensorOp
    T: TensorOp


def _require_m(H: HeckeSymmetry) -> int:
    if H.m is None or H.C is None:
        raise ValueError("Hecke symmetry has no bi-rank / C matrix; build it with check=True")
    return H.m


def power_matrices(H: HeckeSymmetry, k: int, n: int) -> PowerMatrices:
    """``P_k^n = <J_{k+1}^n>_{k+1}`` and ``T_k^n = q^{-2m(n-1)} <J_{k+1}^{-n}>_{k+1}``."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    m = _require_m(H)
    key = ("power", k, n)
    if key not in H._cache:
        p = k + 1
        P = H.rtrace(jm_matrix(H, p, p, n), [p])
        T = H.rtrace(jm_matrix(H, p, p, -n), [p]).scale(H.q ** (-2 * m * (n - 1)))
        H._cache[key] = PowerMatrices(k, n, P, T)
    return H._cache[key]


def monomial_action_t(H: HeckeSymmetry, k: int, n: int) -> TensorOp:
    """Matrix of ``t_n`` on ``V^{(x)k}`` computed through the monomial route.

    ``< J_{k+1}^{-1} prod_{a=2..n} (J_{k+a}^{-1} J_a^{up k}) R_{k+n-1}^{-1} ... R_{k+1}^{-1} >``
    traced over legs ``k+1 .. k+n``.  Independent of :func:`power_matrices`.
    """
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    p = k + n
    M = jm_matrix(H, k + 1, p, -1)
    for a in range(2, n + 1):
        M = M @ jm_matrix(H, k + a, p, -1) @ jm_shifted(H, a, k, p)
    for i in range(k + n - 1, k, -1):
        M = M @ H.R_at(i, p, -1)
    return H.rtrace(M, range(k + 1, p + 1))


# -- represented generators ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RepresentedGenerators:
    """``rho[i][j]`` is the operator of ``l_i^j`` on ``k`` tensor legs."""

    k: int
    side: str
    rho: tuple[tuple[TensorOp, ...], ...]

    @property
    def N(self) -> int:
        return len(self.rho)

    def assembled(self) -> TensorOp:
        """``L_1 = sum E_i^j (x) rho(l_i^j)``: matrix leg first, then the ``k`` module legs."""
        N = self.N
        total = None
        for i in range(N):
            for j in range(N):
                unit = TensorOp(1, N, {i: {j: 1}})
                term = kron(unit, self.rho[i][j])
                total = term if total is None else total + term
        return total

    def re_residual(self, R: TensorOp) -> TensorOp:
        """``R L_1 R L_1 - L_1 R L_1 R`` with ``R`` on the two matrix legs."""
        k = self.k
        # legs: (matrix 1, matrix 2, module...), L acting on matrix leg 1
        order = [1, k + 2] + list(range(2, k + 2))
        L1 = embed(self.assembled(), 1, k + 2).permute_legs(order)
        Rm = embed(R, 1, k + 2)
        return Rm @ L1 @ Rm @ L1 - L1 @ Rm @ L1 @ Rm

    def r_trace(self, C: TensorOp) -> TensorOp:
        """``sum_{i,j} C_j^i rho(l_i^j)``."""
        N = self.N
        total = TensorOp(self.k, N)
        for i in range(N):
            for j in range(N):
                w = C[j, i]
                if w:
                    total = total + self.rho[i][j].scale(w)
        return total


def _module_generators(H: HeckeSymmetry, k: int) -> list[list[TensorOp]]:
    """Solve ``L_1 W |> x = W' x`` with ``W = R_1...R_k`` and ``W' = R_1^{-1}...R_k^{-1}``.

    Writing ``l_i^a |> x_J = sum_C X_{ia}[C, J] x_C`` the relation is linear in
    ``X``: for fixed ``(i, C)`` the unknowns ``Y[(a, J)] = X_{ia}[C, J]`` satisfy
    ``sum W[(a, I), (J, j)] Y[(a, J)] = W'[(i, I), (C, j)]``.  The coefficient
    matrix is a reshuffle of ``W`` and is invertible for a skew-invertible ``R``.
    """
    N, p = H.N, k + 1
    nk = N**k
    W, Wp = H.identity(p), H.identity(p)
    for i in range(1, k + 1):
        W = W @ H.R_at(i, p)
        Wp = Wp @ H.R_at(i, p, -1)
    krows: dict = {}
    for r, c, v in W.entries():
        a, I = divmod(r, nk)
        J, j = divmod(c, N)
        krows.setdefault(I * N + j, {})[a * nk + J] = v
    try:
        Kinv = inverse(TensorOp(p, N, krows), H.one)
    except ZeroDivisionError:
        raise GeneratorConventionError("reshuffled R-chain is singular") from None
    blocks: list[list[dict]] = [[{} for _ in range(N)] for _ in range(N)]
    # rhs for fixed i: column C holds W'[(i, I), (C, j)] at row (I, j)
    for i in range(N):
        rhs: dict = {}
        for I in range(nk):
            for c, v in Wp.rows().get(i * nk + I, {}).items():
                C, j = divmod(c, N)
                rhs.setdefault(I * N + j, {})[C] = v
        for row, krow in Kinv.rows().items():
            acc: dict = {}
            for mid, kv in krow.items():
                for C, v in rhs.get(mid, {}).items():
                    t = kv * v
                    acc[C] = acc[C] + t if C in acc else t
            a, J = divmod(row, nk)
            for C, v in acc.items():
                if v:
                    blocks[i][a].setdefault(C, {})[J] = v
    return [[TensorOp(k, N, blocks[i][j]) for j in range(N)] for i in range(N)]


def _dual_generators(H: HeckeSymmetry, k: int) -> list[list[TensorOp]]:
    """Blocks of ``J_{k+1}`` at the matrix leg ``k+1``."""
    J = jm_matrix(H, k + 1, k + 1)
    return [[J.block(k + 1, i, j) for j in range(H.N)] for i in range(H.N)]


def represented_generators(
    H: HeckeSymmetry, k: int, side: str = "V", check: bool = True
) -> RepresentedGenerators:
    """The generating matrix ``L`` represented on ``k`` tensor legs.

    ``side="V"`` gives the module ``V^{(x)k}``, ``side="V*"`` the dual module.
    Their R-traces ``sum C_j^i rho(l_i^j)`` are ``(T_k^1)^t`` and ``P_k^1``.
    With ``check`` the reflection equation is verified and a
    :class:`GeneratorConventionError` raised if it fails.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    key = ("gens", k, side)
    if key not in H._cache:
        blocks = _module_generators(H, k) if side == "V" else _dual_generators(H, k)
        gens = RepresentedGenerators(k, side, tuple(tuple(r) for r in blocks))
        if check:
            res = gens.re_residual(H.R)
            if not res.is_zero():
                raise GeneratorConventionError(
                    f"reflection equation fails on side {side}, k={k}: {op_witness(res)}"
                )
        H._cache[key] = gens
    return H._cache[key]


# -- characters ---------------------------------------------------------------------

def extract_character(M: TensorOp, E):
    """The scalar ``chi`` with ``M E = chi E``."""
    if isinstance(E, YoungIdempotent):
        E = E.E
    if E.is_zero():
        raise ValueError("idempotent is zero")
    ME = M @ E
    r, c, v = next(iter(E.entries()))
    chi = ME[r, c] / v
    if ME != E.scale(chi):
        raise NotScalarError("operator is not scalar on this module")
    return chi


def newton_convert(kind: str, values: Sequence, q, m: int | None = None) -> list:
    """Triangular solves of the quantum Newton relations.

    ``a_from_p``/``a_from_t`` return ``[a_1, ..., a_n]`` from ``p``/``t``;
    ``t_from_p``/``p_from_t`` convert between the two kinds of power sums.
    With ``m`` given, ``a_n`` for ``n > m`` must come out zero.
    """
    vals = list(values)
    if not vals:
        raise ValueError("need at least one value")
    zero = q - q
    omega = q - 1 / q
    if kind in ("a_from_p", "a_from_t"):
        a = [zero + 1]
        for n in range(1, len(vals) + 1):
            nq = q_int(n, q)
            if not nq:
                raise NonGenericError(f"{n}_q vanishes at this q")
            s = zero
            for k in range(1, n + 1):
                w = q ** (n - k) if kind == "a_from_p" else q ** (k - n)
                term = w * a[n - k] * vals[k - 1]
                s = s + term if k % 2 == 0 else s - term
            an = -s / nq
            if m is not None and n > m:
                if an:
                    raise NewtonError(f"a_{n} = {render_scalar(an)} but bi-rank is {m}")
                an = zero
            a.append(an)
        return a[1:]
    if kind == "t_from_p":
        p, t = vals, []
        for n in range(1, len(p) + 1):
            s = zero
            for k in range(1, n):
                s = s + p[n - k - 1] * t[k - 1]
            t.append(p[n - 1] - omega * s)
        return t
    if kind == "p_from_t":
        t, p = vals, []
        for n in range(1, len(t) + 1):
            s = zero
            for k in range(1, n):
                s = s + p[n - k - 1] * t[k - 1]
            p.append(t[n - 1] + omega * s)
        return p
    raise ValueError(f"unknown conversion {kind!r}")


def cayley_hamilton_residual(
    H: HeckeSymmetry, k: int, lam, T: StandardTableau | None = None, side: str = "V"
) -> TensorOp:
    """``prod_j (L - chi(mu_j)) . E_T`` as an operator on the matrix leg and ``k`` module legs.

    In the ``[output, input]`` convention the module-side generators commute
    with the transposed braidings ``R_i^t``, so their isotypic projectors are
    ``E_T^t``; the dual-side generators commute with ``R_i`` and use ``E_T``.
    For a symmetric ``R`` (e.g. Drinfeld-Jimbo) the two coincide.
    """
    from .heckerep import standard_tableaux
    from .spectral import spectrum

    m = _require_m(H)
    if T is None:
        T = standard_tableaux(lam)[0]
    if tuple(T.shape) != tuple(x for x in lam if x):
        raise ValueError(f"tableau of shape {T.shape} does not match {lam}")
    E = young_idempotent(H, T)
    if E.is_zero():
        raise ValueError(f"E_T vanishes for {T}")
    if side == "V":
        E = E.transpose()
    L = represented_generators(H, k, side).assembled()
    mus = spectrum(lam, m, side, H.q).mu
    out = embed(E, 2, k + 1)
    for mu in mus:
        out = L.plus_scalar(-mu) @ out
    return out


# -- recursions in k -------------------------------------------------------------------

def _lift(op: TensorOp, k: int) -> TensorOp:
    """An operator on ``k-1`` legs extended by an identity at leg ``k``."""
    return embed(op, 1, k)


def lemma44_check(H: HeckeSymmetry, k: int, n: int, T: StandardTableau | None = None) -> list[dict]:
    """Recursions of ``P_k^n``, ``T_k^n`` in ``k`` and the exchange identity for ``R_k J_{k+1}^n``.

    Matrix forms are always checked; with a tableau ``T`` of weight ``k`` the
    recursions projected on ``E_T`` (``J_k -> q^{2c}``) are checked too.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    m = _require_m(H)
    q, omega, om2 = H.q, H.omega, H.omega * H.omega
    params = {"k": k, "n": n}
    out = []

    # R_k J_{k+1}^n = J_k^n R_k + omega sum_{s=1}^n J_{k+1}^s J_k^{n-s}
    p = k + 1
    Rk = H.R_at(k, p)
    lhs = Rk @ jm_matrix(H, k + 1, p, n)
    rhs = jm_matrix(H, k, p, n) @ Rk
    for s in range(1, n + 1):
        rhs = rhs + (jm_matrix(H, k + 1, p, s) @ jm_matrix(H, k, p, n - s)).scale(omega)
    d = lhs - rhs
    out.append(_entry("rj_exchange", params, d.is_zero(), op_witness(d)))

    Pk = {s: power_matrices(H, k, s) for s in range(1, n + 1)}
    prev = power_matrices(H, k - 1, n)
    Jk = {s: jm_matrix(H, k, k, s) for s in range(1, n + 1)}
    Jki = {s: jm_matrix(H, k, k, -s) for s in range(1, n + 1)}
    c2m = q ** (-2 * m)

    rhsP = _lift(prev.P, k) + Jk[n].scale(omega * n)
    rhsT = _lift(prev.T, k) - Jki[n].scale(omega * n * c2m**n)
    for s in range(1, n):
        rhsP = rhsP + (Pk[n - s].P @ Jk[s]).scale(om2 * s)
        rhsT = rhsT + (Pk[n - s].T @ Jki[s]).scale(om2 * s * c2m**s)
    d = Pk[n].P - rhsP
    out.append(_entry("p_recursion_matrix", params, d.is_zero(), op_witness(d)))
    d = Pk[n].T - rhsT
    out.append(_entry("t_recursion_matrix", params, d.is_zero(), op_witness(d)))

    if T is not None:
        if T.size != k:
            raise ValueError("tableau weight must equal k")
        E = young_idempotent(H, T)
        tp = dict(params, tableau=str(T))
        if E.is_zero():
            out.append(_entry("p_recursion_projected", tp, True))
            out.append(_entry("t_recursion_projected", tp, True))
            return out
        c = T.contents[-1]
        z = q ** (2 * c)
        zt = q ** (-2 * (c + m))
        rP = _lift(prev.P, k) @ E + E.scale(omega * n * z**n)
        rT = _lift(prev.T, k) @ E - E.scale(omega * n * zt**n)
        for s in range(1, n):
            rP = rP + (Pk[n - s].P @ E).scale(om2 * s * z**s)
            rT = rT + (Pk[n - s].T @ E).scale(om2 * s * zt**s)
        d = Pk[n].P @ E - rP
        out.append(_entry("p_recursion_projected", tp, d.is_zero(), op_witness(d)))
        d = Pk[n].T @ E - rT
        out.append(_entry("t_recursion_projected", tp, d.is_zero(), op_witness(d)))
    return out
