"""Partitions, standard tableaux, Jucys-Murphy matrices and Young idempotents.

The idempotents are the R-matrix images of the primitive diagonal idempotents
of the Hecke algebra, built by spectral interpolation in the commuting
Jucys-Murphy matrices: extending a tableau by a box of content ``c`` multiplies
the parent idempotent by ``prod (J_k - q^{2c'}) / (q^{2c} - q^{2c'})`` over the
other addable contents ``c'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .tensor import TensorOp, embed

__all__ = [
    "Partition",
    "StandardTableau",
    "YoungIdempotent",
    "partitions",
    "standard_tableaux",
    "jucys_murphy",
    "jm_matrix",
    "jm_shifted",
    "young_idempotents",
    "young_idempotent",
    "column_idempotent",
]


Partition = tuple  # weakly decreasing tuple of positive ints


def _check_partition(lam) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    if any(x <= 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    return lam


def partitions(k: int, max_height: int | None = None) -> list[tuple[int, ...]]:
    """All partitions of ``k`` in lexicographically descending order."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def gen(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    out = list(gen(k, k))
    if max_height is not None:
        out = [p for p in out if len(p) <= max_height]
    return out


def addable_rows(shape: tuple[int, ...]) -> list[int]:
    """Row indices (0-based) where a box can be appended."""
    rows = [i for i in range(len(shape)) if i == 0 or shape[i] < shape[i - 1]]
    rows.append(len(shape))
    return rows


def addable_contents(shape: tuple[int, ...]) -> list[int]:
    return [(shape[i] if i < len(shape) else 0) - i for i in addable_rows(shape)]


@dataclass(frozen=True)
class StandardTableau:
    """A standard filling of ``shape`` by ``1..k``.

    ``rows[i]`` lists the entries of row ``i``; ``contents[j]`` is
    ``column - row`` of the box holding ``j + 1``.
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def contents(self) -> tuple[int, ...]:
        out = [0] * self.size
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                out[v - 1] = j - i
        return tuple(out)

    def row_of(self, entry: int) -> int:
        for i, row in enumerate(self.rows):
            if entry in row:
                return i
        raise KeyError(entry)

    def parent(self) -> StandardTableau:
        """The tableau with the box holding the largest entry removed."""
        k = self.size
        rows = [tuple(v for v in r if v != k) for r in self.rows]
        return StandardTableau(tuple(r for r in rows if r))

    def extend(self, row: int) -> StandardTableau:
        k = self.size + 1
        rows = list(self.rows)
        if row == len(rows):
            rows.append((k,))
        else:
            rows[row] = rows[row] + (k,)
        return StandardTableau(tuple(rows))

    def __str__(self) -> str:
        return "/".join(",".join(map(str, r)) for r in self.rows) or "()"


EMPTY_TABLEAU = StandardTableau(())


@lru_cache(maxsize=None)
def _tableaux_of_size(k: int) -> tuple[StandardTableau, ...]:
    if k == 0:
        return (EMPTY_TABLEAU,)
    out = []
    for t in _tableaux_of_size(k - 1):
        for row in addable_rows(t.shape):
            out.append(t.extend(row))
    return tuple(out)


def standard_tableaux(shape) -> list[StandardTableau]:
    """All standard tableaux of ``shape``, ordered by content sequence."""
    shape = _check_partition(shape)
    ts = [t for t in _tableaux_of_size(sum(shape)) if t.shape == shape]
    return sorted(ts, key=lambda t: t.contents)


# -- Jucys-Murphy matrices ---------------------------------------------------------

def _jm_local(H, k: int, inv: bool) -> TensorOp:
    """``J_k`` (or its inverse) on exactly ``k`` legs."""
    key = ("jm_local", k, inv)
    if key not in H._cache:
        if k == 1:
            J = H.identity(1)
        else:
            prev = embed(_jm_local(H, k - 1, inv), 1, k)
            Rk = H.R_at(k - 1, k, -1 if inv else 1)
            J = Rk @ prev @ Rk
        H._cache[key] = J
    return H._cache[key]


def jm_matrix(H, k: int, p: int, power: int = 1) -> TensorOp:
    """``J_k^power`` on ``p`` legs."""
    key = ("jm", k, p, power)
    if key not in H._cache:
        if power == 0:
            H._cache[key] = H.identity(p)
        elif abs(power) == 1:
            H._cache[key] = embed(_jm_local(H, k, power < 0), 1, p)
        else:
            step = 1 if power > 0 else -1
            H._cache[key] = jm_matrix(H, k, p, power - step) @ jm_matrix(H, k, p, step)
    return H._cache[key]


def jm_shifted(H, a: int, shift: int, p: int, power: int = 1) -> TensorOp:
    """``J_a`` acting on legs ``shift+1 .. shift+a`` of ``p`` legs."""
    base = jm_matrix(H, a, a, power)
    return embed(base, shift + 1, p)


def jucys_murphy(H, p: int) -> list[TensorOp]:
    """``[J_1, ..., J_p]`` on ``p`` legs."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return [jm_matrix(H, k, p) for k in range(1, p + 1)]


# -- Young idempotents ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class YoungIdempotent:
    shape: tuple[int, ...]
    tableau: StandardTableau
    E: TensorOp


def young_idempotent(H, t: StandardTableau) -> TensorOp:
    """``E_T`` on ``|T|`` legs."""
    key = ("E", t)
    if key in H._cache:
        return H._cache[key]
    k = t.size
    if k <= 1:
        E = H.identity(k)
    else:
        par = t.parent()
        lifted = embed(young_idempotent(H, par), 1, k)
        if lifted.is_zero():
            E = lifted
        else:
            q2 = H.q * H.q
            c = t.contents[-1]
            E = lifted
            J = jm_matrix(H, k, k)
            target = q2 ** c
            for cp in addable_contents(par.shape):
                if cp == c:
                    continue
                other = q2 ** cp
                denom = target - other
                if not denom:
                    raise ZeroDivisionError(
                        f"interpolation denominator q^{2 * c} - q^{2 * cp} vanishes (non-generic q)"
                    )
                E = (E @ J.plus_scalar(-other)).scale(1 / denom)
                if E.is_zero():
                    break
    H._cache[key] = E
    return E


def young_idempotents(H, k: int, shape=None) -> list[YoungIdempotent]:
    """Idempotents of all standard tableaux of weight ``k`` (or of one shape)."""
    shapes = [_check_partition(shape)] if shape is not None else partitions(k)
    out = []
    for lam in shapes:
        for t in standard_tableaux(lam):
            out.append(YoungIdempotent(lam, t, young_idempotent(H, t)))
    return out


def column_idempotent(H, k: int) -> TensorOp:
    """The idempotent of the one-column tableau on ``k`` legs."""
    t = StandardTableau(tuple((i,) for i in range(1, k + 1)))
    return young_idempotent(H, t)
