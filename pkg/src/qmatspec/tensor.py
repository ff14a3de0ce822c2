"""Exact sparse operators on tensor powers of an N-dimensional space.

A ``TensorOp`` on ``p`` legs of dimension ``N`` is an ``N^p x N^p`` matrix
stored as ``{row: {col: value}}`` with only nonzero values kept.  Basis
multi-indices ``(i_1, ..., i_p)`` (0-based here) are flattened big-endian:
``sum i_j * N^(p-j)``, so leg 1 is the most significant digit.  Matrix
entries are indexed ``[output, input]`` and ``a @ b`` is the composite
"first b, then a".

Entries may be any exact field elements (``RatFunc`` or ``Fraction``);
plain ``int`` values are allowed and mix freely with both.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence

from .scalar import render_scalar

__all__ = [
    "TensorOp",
    "ShapeError",
    "identity",
    "flip",
    "kron",
    "embed",
    "rtrace",
    "inverse",
    "rank",
    "dump_dense",
    "load_dense",
]


class ShapeError(ValueError):
    """Operands do not share the same leg structure."""


class TensorOp:
    __slots__ = ("leg_count", "leg_dim", "_rows")

    def __init__(self, leg_count: int, leg_dim: int, rows: dict | None = None):
        if leg_count < 0 or leg_dim < 1:
            raise ValueError("need leg_count >= 0 and leg_dim >= 1")
        self.leg_count = leg_count
        self.leg_dim = leg_dim
        clean = {}
        for r, row in (rows or {}).items():
            kept = {c: v for c, v in row.items() if v}
            if kept:
                clean[r] = kept
        self._rows = clean

    @classmethod
    def _raw(cls, p: int, n: int, rows: dict) -> TensorOp:
        op = object.__new__(cls)
        op.leg_count = p
        op.leg_dim = n
        op._rows = rows
        return op

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence], leg_dim: int) -> TensorOp:
        dim = len(matrix)
        p, size = 0, 1
        while size < dim:
            size *= leg_dim
            p += 1
        if size != dim or any(len(row) != dim for row in matrix):
            raise ShapeError(f"{dim}x? matrix is not square of size {leg_dim}^p")
        rows = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(matrix)}
        return cls(p, leg_dim, rows)

    # -- inspection ------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.leg_dim ** self.leg_count

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self._rows.get(r, {}).get(c, 0)

    def entries(self) -> Iterable[tuple[int, int, object]]:
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def rows(self) -> dict:
        return {r: dict(row) for r, row in self._rows.items()}

    def column(self, c: int) -> dict:
        return {r: row[c] for r, row in self._rows.items() if c in row}

    def to_dense(self, zero=0) -> list[list]:
        d = self.dim
        out = [[zero] * d for _ in range(d)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __bool__(self) -> bool:
        return bool(self._rows)

    def same_shape(self, other: TensorOp) -> bool:
        return self.leg_count == other.leg_count and self.leg_dim == other.leg_dim

    def _check(self, other: TensorOp) -> None:
        if not isinstance(other, TensorOp):
            raise TypeError(f"expected TensorOp, got {type(other).__name__}")
        if not self.same_shape(other):
            raise ShapeError(
                f"legs ({self.leg_count}, N={self.leg_dim}) vs "
                f"({other.leg_count}, N={other.leg_dim})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOp):
            return NotImplemented
        return self.same_shape(other) and self._rows == other._rows

    __hash__ = None

    def __repr__(self) -> str:
        return f"TensorOp(legs={self.leg_count}, N={self.leg_dim}, nnz={self.nnz})"

    # -- linear structure -------------------------------------------------
    def __add__(self, other: TensorOp) -> TensorOp:
        self._check(other)
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, orow in other._rows.items():
            row = rows.get(r)
            if row is None:
                rows[r] = dict(orow)
                continue
            for c, v in orow.items():
                if c in row:
                    s = row[c] + v
                    if s:
                        row[c] = s
                    else:
                        del row[c]
                else:
                    row[c] = v
            if not row:
                del rows[r]
        return TensorOp._raw(self.leg_count, self.leg_dim, rows)

    def __neg__(self) -> TensorOp:
        return TensorOp._raw(
            self.leg_count, self.leg_dim,
            {r: {c: -v for c, v in row.items()} for r, row in self._rows.items()},
        )

    def __sub__(self, other: TensorOp) -> TensorOp:
        return self + (-other)

    def scale(self, s) -> TensorOp:
        if not s:
            return TensorOp._raw(self.leg_count, self.leg_dim, {})
        if s == 1:
            return self
        return TensorOp._raw(
            self.leg_count, self.leg_dim,
            {r: {c: v * s for c, v in row.items()} for r, row in self._rows.items()},
        )

    def __mul__(self, s) -> TensorOp:
        if isinstance(s, TensorOp):
            raise TypeError("use @ for operator composition")
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other: TensorOp) -> TensorOp:
        self._check(other)
        orows = other._rows
        out = {}
        for r, row in self._rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    t = a * b
                    if c in acc:
                        acc[c] = acc[c] + t
                    else:
                        acc[c] = t
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return TensorOp._raw(self.leg_count, self.leg_dim, out)

    def compose(self, other: TensorOp) -> TensorOp:
        return self @ other

    def plus_scalar(self, s) -> TensorOp:
        """``self + s * I``."""
        return self + identity(self.leg_count, self.leg_dim).scale(s)

    def __pow__(self, n: int) -> TensorOp:
        if n < 0:
            return inverse(self) ** (-n)
        result = identity(self.leg_count, self.leg_dim)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def transpose(self) -> TensorOp:
        rows: dict = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return TensorOp._raw(self.leg_count, self.leg_dim, rows)

    def map(self, f) -> TensorOp:
        """Apply ``f`` entrywise (e.g. a backend conversion)."""
        return TensorOp(
            self.leg_count, self.leg_dim,
            {r: {c: f(v) for c, v in row.items()} for r, row in self._rows.items()},
        )

    def commutator(self, other: TensorOp) -> TensorOp:
        return self @ other - other @ self

    # -- leg manipulation --------------------------------------------------
    def digits(self, index: int) -> tuple[int, ...]:
        n, p = self.leg_dim, self.leg_count
        out = []
        for _ in range(p):
            index, d = divmod(index, n)
            out.append(d)
        return tuple(reversed(out))

    def flat(self, digits: Sequence[int]) -> int:
        idx = 0
        for d in digits:
            idx = idx * self.leg_dim + d
        return idx

    def permute_legs(self, order: Sequence[int]) -> TensorOp:
        """Reorder legs: new leg ``j`` (1-based) is old leg ``order[j-1]``."""
        p = self.leg_count
        if sorted(order) != list(range(1, p + 1)):
            raise ValueError(f"{order} is not a permutation of 1..{p}")
        def move(i):
            d = self.digits(i)
            return self.flat([d[o - 1] for o in order])
        rows: dict = {}
        for r, row in self._rows.items():
            nr = move(r)
            rows[nr] = {move(c): v for c, v in row.items()}
        return TensorOp._raw(p, self.leg_dim, rows)

    def block(self, leg: int, i: int, j: int) -> TensorOp:
        """Operator on the remaining legs obtained by fixing leg ``leg``
        to output index ``i`` and input index ``j`` (0-based)."""
        p, n = self.leg_count, self.leg_dim
        if not 1 <= leg <= p:
            raise ValueError(f"leg {leg} out of range 1..{p}")
        s = n ** (p - leg)
        rows: dict = {}
        for r, row in self._rows.items():
            if (r // s) % n != i:
                continue
            nr = (r // (s * n)) * s + r % s
            for c, v in row.items():
                if (c // s) % n == j:
                    nc = (c // (s * n)) * s + c % s
                    rows.setdefault(nr, {})[nc] = v
        return TensorOp._raw(p - 1, n, rows)


# -- constructors --------------------------------------------------------------

def identity(p: int, n: int, one=1) -> TensorOp:
    return TensorOp._raw(p, n, {i: {i: one} for i in range(n ** p)})


def zero_op(p: int, n: int) -> TensorOp:
    return TensorOp._raw(p, n, {})


def flip(n: int, one=1) -> TensorOp:
    """The swap ``x (x) y -> y (x) x`` on two legs."""
    rows = {}
    for a in range(n):
        for b in range(n):
            rows[a * n + b] = {b * n + a: one}
    return TensorOp._raw(2, n, rows)


def kron(a: TensorOp, b: TensorOp) -> TensorOp:
    if a.leg_dim != b.leg_dim:
        raise ShapeError("leg dimensions differ")
    db = b.dim
    rows: dict = {}
    for ra, arow in a._rows.items():
        for rb, brow in b._rows.items():
            row = {}
            for ca, va in arow.items():
                base = ca * db
                for cb, vb in brow.items():
                    row[base + cb] = va * vb if va != 1 else vb
            rows[ra * db + rb] = row
    return TensorOp._raw(a.leg_count + b.leg_count, a.leg_dim, rows)


def embed(op: TensorOp, i: int, p: int) -> TensorOp:
    """``I^(i-1) (x) op (x) I^(p-i-legs+1)`` on ``p`` legs (``i`` is 1-based)."""
    k = op.leg_count
    if not 1 <= i <= p - k + 1:
        raise ValueError(f"position {i} out of range for a {k}-leg operator on {p} legs")
    n = op.leg_dim
    left = n ** (i - 1)
    right = n ** (p - i - k + 1)
    width = op.dim * right
    rows: dict = {}
    for l in range(left):
        lbase = l * width
        for r, row in op._rows.items():
            for t in range(right):
                rows[lbase + r * right + t] = {
                    lbase + c * right + t: v for c, v in row.items()
                }
    return TensorOp._raw(p, n, rows)


def rtrace(op: TensorOp, legs: Iterable[int], c: TensorOp) -> TensorOp:
    """Weighted partial trace ``Tr_legs(prod_{l in legs} C_l . op)``.

    Surviving legs keep their relative order.
    """
    legs = sorted(set(legs), reverse=True)
    p, n = op.leg_count, op.leg_dim
    if not op.leg_count:
        raise ValueError("cannot trace a 0-leg operator")
    if c.leg_count != 1 or c.leg_dim != n:
        raise ShapeError("weight must be a 1-leg operator of matching dimension")
    if any(not 1 <= l <= p for l in legs):
        raise ValueError(f"legs {legs} not within 1..{p}")
    crows = c._rows
    cur = op
    for leg in legs:
        pp = cur.leg_count
        s = n ** (pp - leg)
        rows: dict = {}
        for r, row in cur._rows.items():
            rb = (r // s) % n
            nr = (r // (s * n)) * s + r % s
            for col, v in row.items():
                ca = (col // s) % n
                w = crows.get(ca, {}).get(rb)
                if not w:
                    continue
                nc = (col // (s * n)) * s + col % s
                acc = rows.setdefault(nr, {})
                t = w * v
                acc[nc] = acc[nc] + t if nc in acc else t
        rows = {r: {k: v for k, v in row.items() if v} for r, row in rows.items()}
        cur = TensorOp._raw(pp - 1, n, {r: row for r, row in rows.items() if row})
    return cur


# -- exact linear algebra (fraction-free elimination) --------------------------

def _bareiss(m: list[list], ncols_pivot: int, full: bool) -> tuple[list[list], list[int]]:
    """In-place fraction-free elimination on the first ``ncols_pivot`` columns.

    With ``full`` the elimination is Gauss-Jordan (rows above the pivot are
    cleared too).  Returns the matrix and the pivot columns.
    """
    rows = len(m)
    ncols = len(m[0]) if rows else 0
    prev = 1
    pivots = []
    r = 0
    for col in range(ncols_pivot):
        piv = next((i for i in range(r, rows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][col]
        targets = range(rows) if full else range(r + 1, rows)
        mr = m[r]
        for i in targets:
            if i == r:
                continue
            f = m[i][col]
            mi = m[i]
            m[i] = [(pv * mi[j] - f * mr[j]) / prev for j in range(ncols)]
        prev = pv
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return m, pivots


def inverse(op: TensorOp, one=1) -> TensorOp:
    """Exact inverse by fraction-free Gauss-Jordan elimination."""
    d = op.dim
    dense = op.to_dense(0)
    aug = [dense[i] + [one if j == i else 0 for j in range(d)] for i in range(d)]
    aug, pivots = _bareiss(aug, d, full=True)
    if len(pivots) < d:
        raise ZeroDivisionError("operator is singular")
    rows = {}
    for i in range(d):
        piv = aug[i][i]
        row = {j: aug[i][d + j] / piv for j in range(d) if aug[i][d + j]}
        if row:
            rows[i] = row
    return TensorOp._raw(op.leg_count, op.leg_dim, rows)


def rank(op: TensorOp) -> int:
    """Exact rank, block by block over connected index sets."""
    # operators here are usually block diagonal (weight spaces); split first
    comps = _components(op)
    total = 0
    for idx in comps:
        pos = {v: k for k, v in enumerate(idx)}
        dense = [[0] * len(idx) for _ in idx]
        for r in idx:
            for c, v in op._rows.get(r, {}).items():
                dense[pos[r]][pos[c]] = v
        _, piv = _bareiss(dense, len(idx), full=False)
        total += len(piv)
    return total


def _components(op: TensorOp) -> list[list[int]]:
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, row in op._rows.items():
        for c in row:
            ra, rc = find(r), find(c)
            if ra != rc:
                parent[ra] = rc
    groups: dict = {}
    for x in list(parent):
        groups.setdefault(find(x), []).append(x)
    return [sorted(g) for g in groups.values()]


# -- dense JSON dump -----------------------------------------------------------

def dump_dense(op: TensorOp) -> str:
    rendered = [[render_scalar(v) for v in row] for row in op.to_dense(0)]
    return json.dumps(
        {"leg_count": op.leg_count, "leg_dim": op.leg_dim, "entries": rendered},
        indent=1,
    )


def load_dense(text: str, convert=None) -> TensorOp:
    from .scalar import parse_scalar

    data = json.loads(text)
    conv = convert or (lambda x: x)
    rows = [[conv(parse_scalar(s)) for s in row] for row in data["entries"]]
    op = TensorOp.from_dense(rows, data["leg_dim"])
    if op.leg_count != data["leg_count"]:
        raise ShapeError("leg_count does not match entry array")
    return op


def op_witness(diff: TensorOp, limit: int = 3) -> str:
    """Short rendering of the first nonzero entries of a residual."""
    parts = []
    for r, c, v in diff.entries():
        parts.append(f"[{r},{c}]={render_scalar(v)}")
        if len(parts) == limit:
            break
    more = diff.nnz - len(parts)
    return ", ".join(parts) + (f" (+{more} more)" if more > 0 else "")
