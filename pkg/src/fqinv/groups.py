"""Finite matrix groups acting on P_n (x) E_n.

A GroupMatrix stores its entries (raw field values, row tuples) plus the
lazily computed inverse, which is what the contragredient action needs.
Generator registries cover the standard special/general linear families
and the named reflection-group cases; breadth-first closure provides an
independent order count for everything of modest size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import (
    CapExceeded,
    CaseFieldMismatch,
    FieldMismatch,
    SingularMatrix,
    UnknownCase,
)
from .field import FieldSpec, make_field


class GroupMatrix:
    """Invertible n x n matrix over a FieldSpec; immutable."""

    __slots__ = ("field", "n", "rows", "_inv_rows")

    def __init__(self, field: FieldSpec, rows):
        self.field = field
        rows = tuple(
            tuple(_raw(field, c) for c in row) for row in rows
        )
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = rows
        self._inv_rows = None

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_raw_rows(cls, field, rows):
        """Build from entries that are already raw field values."""
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(row) for row in rows)
        m.n = len(m.rows)
        m._inv_rows = None
        return m

    def __mul__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        f = self.field
        b_cols = list(zip(*other.rows))
        rows = tuple(
            tuple(
                _dot(f, row, col) for col in b_cols
            )
            for row in self.rows
        )
        return GroupMatrix.from_raw_rows(f, rows)

    def inverse_rows(self):
        """Rows of the inverse matrix as raw tuples (cached)."""
        if self._inv_rows is None:
            self._inv_rows = _invert(self.field, self.rows)
        return self._inv_rows

    def inverse(self) -> "GroupMatrix":
        return GroupMatrix.from_raw_rows(self.field, self.inverse_rows())

    def __eq__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"GroupMatrix({self.field}, {[list(r) for r in self.rows]})"


def _raw(field, c):
    if isinstance(c, int):
        return c % field.p
    return algebra._coerce_raw(field, c)


def _dot(field, row, col):
    acc = 0
    for a, b in zip(row, col):
        if a and b:
            acc = field.add(acc, field.mul(a, b))
    return acc


def _invert(field, rows):
    n = len(rows)
    work = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if work[r][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
        inv = field.inv(work[c][c])
        work[c] = [field.mul(v, inv) for v in work[c]]
        for r in range(n):
            if r != c and work[r][c]:
                f = work[r][c]
                work[r] = [
                    field.sub(v, field.mul(f, w)) for v, w in zip(work[r], work[c])
                ]
    return tuple(tuple(row[n:]) for row in work)


@dataclass(frozen=True)
class GroupPresentation:
    label: str
    n: int
    field: FieldSpec
    generators: tuple
    order: int


def transvection(field, n, i, j, c=1) -> GroupMatrix:
    """Identity plus c in position (i, j), i != j, 1-based."""
    if i == j:
        raise ValueError("transvection needs i != j")
    rows = [[int(a == b) for b in range(1, n + 1)] for a in range(1, n + 1)]
    rows[i - 1][j - 1] = c
    return GroupMatrix(field, rows)


def diagonal(field, entries) -> GroupMatrix:
    n = len(entries)
    return GroupMatrix(
        field, [[entries[a] if a == b else 0 for b in range(n)] for a in range(n)]
    )


def gl_order(n: int, q: int) -> int:
    total = 1
    for i in range(n):
        total *= q ** n - q ** i
    return total


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def _omega_powers(field):
    """The power-basis scalars 1, t, t^2, ... spanning F_q over F_p."""
    return [field.from_raw(field.p ** k) for k in range(field.e)]


def _primitive_element(field):
    q = field.q
    for a in range(2, q):
        x = a
        order = 1
        while x != 1:
            x = field.mul(x, a)
            order += 1
        if order == q - 1:
            return field.from_raw(a)
    raise ValueError("no primitive element found")  # unreachable for a field


def gens_standard(kind: str, n: int, field: FieldSpec) -> GroupPresentation:
    """Standard generator lists: every elementary transvection with each
    power-basis scalar for sl; the same plus one primitive diagonal for gl."""
    if kind not in ("sl", "gl"):
        raise UnknownCase(f"kind must be 'sl' or 'gl', got {kind!r}")
    if n < 1:
        raise ValueError("need n >= 1")
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                for w in _omega_powers(field):
                    gens.append(transvection(field, n, i, j, w))
    order = sl_order(n, field.q)
    if kind == "sl" and n == 1:
        gens = [GroupMatrix.identity(field, 1)]  # trivial group
    if kind == "gl":
        w0 = _primitive_element(field)
        gens.append(diagonal(field, [w0] + [1] * (n - 1)))
        order = gl_order(n, field.q)
    return GroupPresentation(kind, n, field, tuple(gens), order)


def _embed(field, n, offset, block: GroupMatrix) -> GroupMatrix:
    rows = [[int(a == b) for b in range(n)] for a in range(n)]
    m = block.n
    for a in range(m):
        for b in range(m):
            rows[offset + a][offset + b] = block.rows[a][b]
    return GroupMatrix.from_raw_rows(field, rows)


def _sl3_pair(field):
    """A two-element generating pair for SL_3: one transvection plus the
    cyclic permutation (an even permutation, so determinant 1)."""
    t = transvection(field, 3, 1, 2, 1)
    c = GroupMatrix(field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return t, c


_F3 = make_field(3)
_F5 = make_field(5)

_CASE_FIELDS = {
    "e8_p5_3": _F5,
    "f4_3": _F3,
    "e6_4": _F3,
    "e7_4": _F3,
    "e8_5a": _F3,
}

_CASE_N = {"e8_p5_3": 3, "f4_3": 3, "e6_4": 4, "e7_4": 4, "e8_5a": 5}


def gens_case(label: str, field: FieldSpec = None, n: int = None) -> GroupPresentation:
    """Named presentations.

    g0 and parabolic are parameterized by n (upper-row translations, and
    translations extended by a special linear block); the five reflection
    group cases come with their field and size built in.
    """
    if label in ("g0", "parabolic"):
        if field is None or n is None:
            raise ValueError(f"case {label!r} needs both field and n")
        if n < 2:
            raise ValueError("need n >= 2")
        q = field.q
        gens = []
        for j in range(2, n + 1):
            for w in _omega_powers(field):
                gens.append(transvection(field, n, 1, j, w))
        if label == "g0":
            return GroupPresentation("g0", n, field, tuple(gens), q ** (n - 1))
        block = gens_standard("sl", n - 1, field)
        for g in block.generators:
            gens.append(_embed(field, n, 1, g))
        order = q ** (n - 1) * sl_order(n - 1, q)
        return GroupPresentation("parabolic", n, field, tuple(gens), order)

    if label not in _CASE_FIELDS:
        raise UnknownCase(f"unknown case {label!r}")
    want = _CASE_FIELDS[label]
    if field is not None and field != want:
        raise CaseFieldMismatch(f"case {label} lives over {want}, got {field}")
    if n is not None and n != _CASE_N[label]:
        raise CaseFieldMismatch(f"case {label} has n = {_CASE_N[label]}")
    field = want
    if label == "e8_p5_3":
        base = gens_standard("sl", 3, field)
        return GroupPresentation(label, 3, field, base.generators, base.order)
    if label == "f4_3":
        base = gens_standard("sl", 3, field)
        return GroupPresentation(label, 3, field, base.generators, base.order)
    if label == "e6_4":
        gens = [transvection(field, 4, 1, j, 1) for j in (2, 3, 4)]
        gens += [_embed(field, 4, 1, g) for g in _sl3_pair(field)]
        return GroupPresentation(label, 4, field, tuple(gens), 27 * sl_order(3, 3))
    if label == "e7_4":
        base = gens_case("e6_4")
        gens = base.generators + (diagonal(field, [2, 1, 1, 1]),)
        return GroupPresentation(label, 4, field, gens, 2 * base.order)
    # e8_5a: upper row over the middle SL_3 block, a separate last line,
    # and the two diagonal reflections
    gens = [transvection(field, 5, 1, j, 1) for j in (2, 3, 4, 5)]
    gens += [_embed(field, 5, 1, g) for g in _sl3_pair(field)]
    gens.append(diagonal(field, [2, 1, 1, 1, 1]))
    gens.append(diagonal(field, [1, 1, 1, 1, 2]))
    return GroupPresentation(label, 5, field, tuple(gens), 4 * 81 * sl_order(3, 3))


def act(g: GroupMatrix, u):
    return algebra.tensor_act(g, u)


def is_invariant(u, group) -> bool:
    """True when every listed generator fixes u."""
    gens = group.generators if isinstance(group, GroupPresentation) else group
    return all(algebra.tensor_act(g, u) == u for g in gens)


def group_order_bfs(group, cap: int = 10 ** 6) -> int:
    """Count the closure of the generators by breadth-first products.

    Raises CapExceeded as soon as the closure grows past cap.  Prime
    fields run on batched integer matrix products; extension fields fall
    back to plain Python (they only appear at small orders here).
    """
    gens = group.generators if isinstance(group, GroupPresentation) else list(group)
    if not gens:
        return 1
    field = gens[0].field
    n = gens[0].n
    if field.e == 1:
        return _bfs_numpy(field, n, gens, cap)
    return _bfs_python(field, n, gens, cap)


def _bfs_numpy(field, n, gens, cap):
    p = field.p
    G = np.array([g.rows for g in gens], dtype=np.int64)
    ident = np.eye(n, dtype=np.int64)
    powers = p ** np.arange(n * n, dtype=np.int64)
    if p ** (n * n) > 2 ** 62:
        return _bfs_python(field, n, gens, cap)

    def keys_of(mats):
        return mats.reshape(len(mats), n * n) @ powers

    visited = {int(keys_of(ident[None])[0])}
    frontier = ident[None]
    while len(frontier):
        prod = np.einsum("fij,gjk->fgik", frontier, G) % p
        prod = prod.reshape(-1, n, n)
        keys = keys_of(prod)
        uniq, idx = np.unique(keys, return_index=True)
        fresh = [i for k, i in zip(uniq.tolist(), idx.tolist()) if k not in visited]
        visited.update(int(keys[i]) for i in fresh)
        if len(visited) > cap:
            raise CapExceeded(f"closure exceeded cap {cap}")
        frontier = prod[fresh]
    return len(visited)


def _bfs_python(field, n, gens, cap):
    from collections import deque

    ident = GroupMatrix.identity(field, n)
    visited = {ident.rows}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            w = m * g
            if w.rows not in visited:
                visited.add(w.rows)
                if len(visited) > cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                queue.append(w)
    return len(visited)
