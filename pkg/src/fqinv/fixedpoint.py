"""Degreewise invariant subspaces, Hilbert series, and case verification.

The solver computes the fixed subspace of a finite matrix group degree by
degree: each cohomological degree splits into blocks (polynomial degree,
exterior word length) preserved by every linear substitution, and on each
block the fixed vectors form the kernel of the stacked operators
(action of g) - 1.  Kernels are intersected one generator at a time,
with combinatorial shortcuts for diagonal and monomial matrices and an
exact dense elimination over F_q for the rest.

A registry of named cases ties a group presentation to the free-module
shape of its invariant ring (polynomial generator degrees plus module
basis degrees), to explicitly constructed generator and basis elements,
and to a degree-product criterion on the polynomial part.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import algebra
from .algebra import Polynomial, TensorElement, tensor_act
from .dickson import dickson_c, dickson_e, index_subsets, o_poly
from .errors import FeasibilityCapExceeded, NotApplicable, UnknownCase
from .field import FieldSpec, make_field
from .groups import GroupPresentation, gens_case, gens_standard, is_invariant
from .milnor import milnor_composite

BASIS_CAP = 2 * 10 ** 5


# -- degree-d monomial basis of P_n (x) E_n ---------------------------------

def _monomials(n, k):
    """Exponent tuples summing to k, descending lexicographic order."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _monomials(n - 1, k - first):
            yield (first,) + rest


def _block_shapes(n, d):
    """(polynomial degree, exterior length) pairs making up degree d."""
    return [((d - r) // 2, r) for r in range(d % 2, min(n, d) + 1, 2)]


def _block_size(n, k, r):
    return math.comb(k + n - 1, n - 1) * math.comb(n, r)


def monomial_basis(field: FieldSpec, n: int, d: int):
    """Ordered basis of the degree-d component: (exponent tuple, dx index
    tuple) pairs with 2*sum(exp) + len(ext) = d, sorted by exterior length,
    then exterior indices, then exponents (descending lexicographic)."""
    if d < 0:
        raise ValueError("need d >= 0")
    out = []
    for k, r in _block_shapes(n, d):
        for ext in combinations(range(1, n + 1), r):
            for exp in _monomials(n, k):
                out.append((exp, ext))
    return out


# -- exact linear algebra over F_q ------------------------------------------

_TABLE_CACHE = {}


def _tables(field):
    """Numpy lookup tables for field arithmetic on raw values."""
    key = (field.p, field.e, field.modulus)
    tabs = _TABLE_CACHE.get(key)
    if tabs is None:
        q = field.q
        add = np.array([[field.add(a, b) for b in range(q)] for a in range(q)],
                       dtype=np.int64)
        sub = np.array([[field.sub(a, b) for b in range(q)] for a in range(q)],
                       dtype=np.int64)
        mul = np.array([[field.mul(a, b) for b in range(q)] for a in range(q)],
                       dtype=np.int64)
        inv = np.array([0] + [field.inv(a) for a in range(1, q)],
                       dtype=np.int64)
        tabs = (add, sub, mul, inv)
        _TABLE_CACHE[key] = tabs
    return tabs


def _nullspace(mat, field):
    """Kernel basis of mat over F_q; columns of the result, int64."""
    a = np.array(mat, dtype=np.int64)
    m, k = a.shape
    if m == 0 or k == 0:
        return np.eye(k, dtype=np.int64)
    prime = field.e == 1
    p = field.p
    if not prime:
        add, sub, mul, inv_t = _tables(field)
    pivots = []
    row = 0
    for col in range(k):
        if row == m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        r0 = row + nz[0]
        if r0 != row:
            a[[row, r0]] = a[[r0, row]]
        if prime:
            a[row] = (a[row] * pow(int(a[row, col]), p - 2, p)) % p
            factors = a[:, col].copy()
            factors[row] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                a[hit] = (a[hit] - np.outer(factors[hit], a[row])) % p
        else:
            a[row] = mul[inv_t[a[row, col]], a[row]]
            factors = a[:, col].copy()
            factors[row] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                a[hit] = sub[a[hit], mul[factors[hit][:, None], a[row][None, :]]]
        pivots.append(col)
        row += 1
    pivot_set = set(pivots)
    free = [c for c in range(k) if c not in pivot_set]
    out = np.zeros((k, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        out[f, j] = 1
        for r, c in enumerate(pivots):
            v = int(a[r, f])
            if v:
                out[c, j] = (p - v) % p if prime else field.neg(v)
    return out


def _matmul_mod(x, y, field):
    """Exact x @ y over F_q; float64 BLAS for prime fields."""
    if field.e == 1:
        prod = np.rint(x.astype(np.float64) @ y.astype(np.float64))
        return prod.astype(np.int64) % field.p
    add, _, mul, _ = _tables(field)
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    for i in range(x.shape[1]):
        col = x[:, i]
        live = np.nonzero(col)[0]
        if live.size == 0:
            continue
        contrib = np.zeros_like(out)
        contrib[live] = mul[col[live][:, None], y[i][None, :]]
        out = add[out, contrib]
    return out


def _rref_rows(rows, field):
    """Reduced row echelon form; rows sorted by pivot position."""
    a = np.array(rows, dtype=np.int64)
    if a.size == 0:
        return a
    m, width = a.shape
    prime = field.e == 1
    p = field.p
    if not prime:
        add, sub, mul, inv_t = _tables(field)
    row = 0
    for col in range(width):
        if row == m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        r0 = row + nz[0]
        if r0 != row:
            a[[row, r0]] = a[[r0, row]]
        if prime:
            a[row] = (a[row] * pow(int(a[row, col]), p - 2, p)) % p
            factors = a[:, col].copy()
            factors[row] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                a[hit] = (a[hit] - np.outer(factors[hit], a[row])) % p
        else:
            a[row] = mul[inv_t[a[row, col]], a[row]]
            factors = a[:, col].copy()
            factors[row] = 0
            hit = np.nonzero(factors)[0]
            if hit.size:
                a[hit] = sub[a[hit], mul[factors[hit][:, None], a[row][None, :]]]
        row += 1
    return a[:row]


# -- per-block solver --------------------------------------------------------

def _classify(g):
    """('monomial', targets, scalars) when each variable maps to a scalar
    multiple of a single variable, else ('general', off-diagonal count)."""
    rows = g.inverse_rows()
    targets = []
    scalars = []
    nnz_off = 0
    monomial = True
    for i, r in enumerate(rows):
        live = [j for j, v in enumerate(r) if v]
        nnz_off += sum(1 for j in live if j != i)
        if len(live) != 1:
            monomial = False
        elif monomial:
            targets.append(live[0] + 1)
            scalars.append(r[live[0]])
    if monomial:
        return ("monomial", tuple(targets), tuple(scalars))
    return ("general", nnz_off)


def _sort_generators(gens):
    """Diagonal, then monomial, then general matrices by sparsity."""
    keyed = []
    for pos, g in enumerate(gens):
        info = _classify(g)
        if info[0] == "monomial":
            diag = all(t == i + 1 for i, t in enumerate(info[1]))
            rank = (0 if diag else 1, 0)
        else:
            rank = (2, info[1])
        keyed.append((rank, pos, g, info))
    keyed.sort(key=lambda item: (item[0], item[1]))
    return [(g, info) for _, _, g, info in keyed]


def _monomial_permutation(field, basis, index, targets, scalars):
    """Index permutation and scalar twist of a monomial substitution."""
    n = len(targets)
    perm = np.empty(len(basis), dtype=np.int64)
    scale = np.empty(len(basis), dtype=np.int64)
    for pos, (exp, ext) in enumerate(basis):
        new_exp = [0] * n
        s = field.one
        for i, e in enumerate(exp):
            if e:
                new_exp[targets[i] - 1] += e
                s = field.mul(s, field.pow_(scalars[i], e))
        images = [targets[i - 1] for i in ext]
        for i in ext:
            s = field.mul(s, scalars[i - 1])
        if algebra._sort_sign(images) < 0:
            s = field.neg(s)
        perm[pos] = index[(tuple(new_exp), tuple(sorted(images)))]
        scale[pos] = s
    return perm, scale


def _cycle_kernel(field, perm, scale):
    """Fixed vectors of a scaled index permutation, one per cycle whose
    scalar product is 1."""
    size = len(perm)
    seen = np.zeros(size, dtype=bool)
    cols = []
    for start in range(size):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = int(perm[i])
        prod = field.one
        for j in cycle:
            prod = field.mul(prod, int(scale[j]))
        if prod != field.one:
            continue
        col = np.zeros(size, dtype=np.int64)
        c = field.one
        for j in cycle:
            col[j] = c
            c = field.mul(c, int(scale[j]))
        cols.append(col)
    if not cols:
        return np.zeros((size, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def _general_columns(field, n, g, basis, index, needed):
    """Expanded action columns for the requested basis positions."""
    cols = {}
    for pos in needed:
        exp, ext = basis[pos]
        el = TensorElement(field, n, {ext: Polynomial(field, n, {exp: 1})})
        image = tensor_act(g, el)
        entries = {}
        for ext2, poly in image.parts.items():
            for exp2, raw in poly.terms.items():
                entries[index[(exp2, ext2)]] = raw
        cols[pos] = entries
    return cols


def _apply_generator(field, basis, index, kernel, g, info):
    """(action of g - 1) applied to the kernel columns."""
    size = len(basis)
    if info[0] == "monomial":
        perm, scale = _monomial_permutation(field, basis, index, info[1], info[2])
        if kernel is None:
            return None, _cycle_kernel(field, perm, scale)
        moved = np.zeros_like(kernel)
        if field.e == 1:
            moved[perm] = (scale[:, None] * kernel) % field.p
        else:
            _, _, mul, _ = _tables(field)
            moved[perm] = mul[scale[:, None], kernel]
    else:
        if kernel is None:
            needed = range(size)
        else:
            needed = np.nonzero(kernel.any(axis=1))[0].tolist()
        cols = _general_columns(field, len(basis[0][0]), g, basis, index, needed)
        mat = np.zeros((size, len(cols)), dtype=np.int64)
        sub_rows = []
        for j, pos in enumerate(cols):
            sub_rows.append(pos)
            for row, raw in cols[pos].items():
                mat[row, j] = raw
        if kernel is None:
            moved = mat
            kernel = np.eye(size, dtype=np.int64)[:, sub_rows]
            diff = _subtract(moved, kernel, field)
            return None, _nullspace(diff, field)
        moved = _matmul_mod(mat, kernel[sub_rows], field)
    diff = _subtract(moved, kernel, field)
    reduction = _nullspace(diff, field)
    return kernel, reduction


def _subtract(x, y, field):
    if field.e == 1:
        return (x - y) % field.p
    return _tables(field)[1][x, y]


def _block_kernel(field, n, gens, k, r):
    """Basis and fixed-vector matrix of the (poly degree, ext length) block."""
    basis = []
    for ext in combinations(range(1, n + 1), r):
        for exp in _monomials(n, k):
            basis.append((exp, ext))
    index = {pair: i for i, pair in enumerate(basis)}
    kernel = None
    for g, info in _sort_generators(gens):
        if kernel is not None and kernel.shape[1] == 0:
            break
        prev, reduction = _apply_generator(field, basis, index, kernel, g, info)
        if prev is None:
            kernel = reduction
        else:
            kernel = _matmul_mod(prev, reduction, field)
    if kernel is None:
        kernel = np.eye(len(basis), dtype=np.int64)
    return basis, kernel


def _resolve_group(group):
    if isinstance(group, GroupPresentation):
        return group.field, group.n, list(group.generators)
    gens = list(group)
    if not gens:
        raise ValueError("need a GroupPresentation or a nonempty matrix list")
    return gens[0].field, gens[0].n, gens


def _check_cap(n, d):
    total = sum(_block_size(n, k, r) for k, r in _block_shapes(n, d))
    if total > BASIS_CAP:
        raise FeasibilityCapExceeded(
            f"degree {d} basis has {total} elements, cap is {BASIS_CAP}")
    return total


def fixed_dim(group, d: int, exterior_degree=None) -> int:
    """Dimension of the degree-d fixed subspace; optionally one exterior
    word length only."""
    field, n, gens = _resolve_group(group)
    if d < 0:
        raise ValueError("need d >= 0")
    _check_cap(n, d)
    total = 0
    for k, r in _block_shapes(n, d):
        if exterior_degree is not None and r != exterior_degree:
            continue
        _, kernel = _block_kernel(field, n, gens, k, r)
        total += kernel.shape[1]
    return total


def fixed_basis(group, d: int):
    """Canonical basis of the degree-d fixed subspace as TensorElements.

    Vectors are the reduced row echelon form of the kernel with pivots in
    monomial_basis order; every element is checked against the generators
    before it is returned."""
    field, n, gens = _resolve_group(group)
    if d < 0:
        raise ValueError("need d >= 0")
    _check_cap(n, d)
    blocks = []
    offset = 0
    full_basis = []
    stacked = []
    dims = 0
    for k, r in _block_shapes(n, d):
        basis, kernel = _block_kernel(field, n, gens, k, r)
        blocks.append((offset, basis, kernel))
        offset += len(basis)
        full_basis.extend(basis)
        dims += kernel.shape[1]
    if dims == 0:
        return []
    rows = np.zeros((dims, offset), dtype=np.int64)
    at = 0
    for start, basis, kernel in blocks:
        for j in range(kernel.shape[1]):
            rows[at, start:start + len(basis)] = kernel[:, j]
            at += 1
    rows = _rref_rows(rows, field)
    out = []
    for vec in rows:
        parts = {}
        for pos in np.nonzero(vec)[0]:
            exp, ext = full_basis[pos]
            parts.setdefault(ext, {})[exp] = int(vec[pos])
        el = TensorElement(field, n,
                           {ext: Polynomial(field, n, terms)
                            for ext, terms in parts.items()})
        if not is_invariant(el, gens):
            raise RuntimeError("kernel vector failed the invariance check")
        out.append(el)
    return out


# -- Hilbert series ----------------------------------------------------------

@dataclass(frozen=True)
class FreeModuleDescription:
    """Degrees of a free module over a graded polynomial ring: generator
    degrees of the ring, degrees of the module basis."""

    algebra_gen_degrees: tuple
    basis_degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "algebra_gen_degrees",
                           tuple(self.algebra_gen_degrees))
        object.__setattr__(self, "basis_degrees", tuple(self.basis_degrees))
        if any(a <= 0 for a in self.algebra_gen_degrees):
            raise ValueError("algebra generator degrees must be positive")
        if not self.basis_degrees:
            raise ValueError("basis degree list must be nonempty")
        if any(b < 0 for b in self.basis_degrees):
            raise ValueError("basis degrees must be nonnegative")
        if sum(1 for b in self.basis_degrees if b == 0) > 1:
            raise ValueError("basis degree 0 may appear at most once")


def hilbert_coeff(desc: FreeModuleDescription, d: int) -> int:
    """Coefficient of t^d in (sum of t^basis) / prod(1 - t^generator)."""
    if d < 0:
        raise ValueError("need d >= 0")
    ring = [0] * (d + 1)
    ring[0] = 1
    for a in desc.algebra_gen_degrees:
        for i in range(a, d + 1):
            ring[i] += ring[i - a]
    return sum(ring[d - b] for b in desc.basis_degrees if b <= d)


# -- case registry -----------------------------------------------------------

_NAMED_CASES = ("e8_p5_3", "f4_3", "e6_4", "e7_4", "e8_5a")
_CASE_RE = re.compile(r"^(sl|gl|g0|parabolic)\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class Case:
    """A registered verification target: group plus module bookkeeping."""

    label: str
    kind: str
    field: FieldSpec
    n: int


def parse_case(text: str) -> Case:
    """Parse a case label: sl(n,q), gl(n,q), g0(n,q), parabolic(n,q) with
    prime q, or one of the named reflection-group cases."""
    label = text.strip().replace(" ", "")
    if label in _NAMED_CASES:
        pres = gens_case(label)
        return Case(label, label, pres.field, pres.n)
    m = _CASE_RE.match(label)
    if not m:
        raise UnknownCase(f"unknown case {text!r}")
    kind, n, q = m.group(1), int(m.group(2)), int(m.group(3))
    try:
        field = make_field(q)
    except Exception as exc:
        raise UnknownCase(
            f"case labels take a prime q, got {q}; build extension-field "
            f"presentations with gens_standard") from exc
    if n < 1 or (kind in ("g0", "parabolic") and n < 2):
        raise UnknownCase(f"case {text!r}: size out of range")
    return Case(label, kind, field, n)


def _as_case(case) -> Case:
    return case if isinstance(case, Case) else parse_case(case)


def case_group(case) -> GroupPresentation:
    c = _as_case(case)
    if c.kind in ("sl", "gl"):
        return gens_standard(c.kind, c.n, c.field)
    if c.kind in ("g0", "parabolic"):
        return gens_case(c.kind, c.field, c.n)
    return gens_case(c.kind)


def _deg_e(n, q):
    return 2 * (q ** n - 1) // (q - 1)


def _deg_c(n, i, q):
    return 2 * (q ** n - q ** i)


def _q_jump(I, q):
    return sum(2 * q ** i - 1 for i in I)


def _subset_name(I):
    return ",".join(str(i) for i in I)


def module_description(case) -> FreeModuleDescription:
    """Free-module shape of the invariant ring of a registered case."""
    c = _as_case(case)
    q = c.field.q
    n = c.n
    if c.kind == "sl":
        alg = [_deg_e(n, q)] + [_deg_c(n, i, q) for i in range(1, n)]
        bas = [0] + [n + _q_jump(I, q) for I in index_subsets(n, n - 1)]
        return FreeModuleDescription(alg, bas)
    if c.kind == "gl":
        alg = [_deg_c(n, i, q) for i in range(n)]
        shift = (q - 2) * _deg_e(n, q)
        bas = [0] + [shift + n + _q_jump(I, q) for I in index_subsets(n, n - 1)]
        return FreeModuleDescription(alg, bas)
    if c.kind == "g0":
        alg = [2 * q ** (n - 1)] + [2] * (n - 1)
        bas = ([n + _q_jump(I, q) for I in index_subsets(n - 1)]
               + [len(J) for J in index_subsets(n - 1)])
        return FreeModuleDescription(alg, bas)
    if c.kind == "parabolic":
        alg = ([2 * q ** (n - 1), _deg_e(n - 1, q)]
               + [_deg_c(n - 1, i, q) for i in range(1, n - 1)])
        bas = ([0] + [(n - 1) + _q_jump(I, q)
                      for I in index_subsets(n - 1, n - 2)]
               + [n + _q_jump(J, q) for J in index_subsets(n - 1)])
        return FreeModuleDescription(alg, bas)
    if c.kind in ("e8_p5_3", "f4_3"):
        alg = [_deg_e(3, q), _deg_c(3, 2, q), _deg_c(3, 1, q)]
        bas = [0] + [3 + _q_jump(I, q) for I in index_subsets(3, 2)]
        return FreeModuleDescription(alg, bas)
    if c.kind == "e6_4":
        alg = [_deg_e(3, 3), _deg_c(3, 2, 3), _deg_c(3, 1, 3), 54]
        bas = ([0] + [3 + _q_jump(I, 3) for I in index_subsets(3, 2)]
               + [4 + _q_jump(J, 3) for J in index_subsets(3)])
        return FreeModuleDescription(alg, bas)
    if c.kind == "e7_4":
        alg = [_deg_e(3, 3), _deg_c(3, 2, 3), _deg_c(3, 1, 3), 108]
        bas = ([0] + [3 + _q_jump(I, 3) for I in index_subsets(3, 2)]
               + [58 + _q_jump(J, 3) for J in index_subsets(3)])
        return FreeModuleDescription(alg, bas)
    if c.kind == "e8_5a":
        alg = [4, _deg_e(3, 3), _deg_c(3, 2, 3), _deg_c(3, 1, 3), 324]
        bas = ([0] + [3 + _q_jump(I, 3) for I in index_subsets(3, 2)]
               + [3] + [6 + _q_jump(I, 3) for I in index_subsets(3, 2)]
               + [169 + _q_jump(J, 3) for J in index_subsets(4)])
        return FreeModuleDescription(alg, bas)
    raise UnknownCase(f"unknown case kind {c.kind!r}")


def _poly_el(poly):
    return TensorElement.from_polynomial(poly)


def _shift(poly, n, offset):
    mapping = {i: i + offset for i in range(1, poly.n + 1)}
    return poly.map_variables(n, mapping)


def _sub_dickson(field, size, which, i, n):
    """Dickson invariant of the block variables x_2..x_{size+1}."""
    base = dickson_e(field, size) if which == "e" else dickson_c(field, size, i)
    return _shift(base, n, 1)


def _q_basis(field, n, indices, subsets):
    """Named Q-composites of the wedge of the listed dx indices."""
    word = TensorElement.dx(field, n, indices)
    out = []
    tag = "".join(f"dx{i}" for i in indices)
    for I in subsets:
        el = milnor_composite(I, word)
        name = f"Q[{_subset_name(I)}]({tag})" if I else tag
        out.append((name, el))
    return out


@lru_cache(maxsize=None)
def _case_elements_cached(label):
    c = parse_case(label)
    field, n, q = c.field, c.n, c.field.q
    if c.kind == "sl":
        ring = [(f"e{n}", _poly_el(dickson_e(field, n)))]
        ring += [(f"c{n},{i}", _poly_el(dickson_c(field, n, i)))
                 for i in range(1, n)]
        basis = [("1", TensorElement.one(field, n))]
        basis += _q_basis(field, n, tuple(range(1, n + 1)),
                          index_subsets(n, n - 1))
        return ring, basis
    if c.kind == "gl":
        ring = [(f"c{n},{i}", _poly_el(dickson_c(field, n, i)))
                for i in range(n)]
        extra = dickson_e(field, n) ** (q - 2)
        basis = [("1", TensorElement.one(field, n))]
        for name, el in _q_basis(field, n, tuple(range(1, n + 1)),
                                 index_subsets(n, n - 1)):
            basis.append((f"e{n}^{q - 2}*{name}", extra * el))
        return ring, basis
    if c.kind == "g0":
        ring = [("O(x1)", _poly_el(o_poly(field, n, 1)))]
        ring += [(f"x{i}", _poly_el(Polynomial.variable(field, n, i)))
                 for i in range(2, n + 1)]
        basis = _q_basis(field, n, tuple(range(1, n + 1)),
                         index_subsets(n - 1))
        for J in index_subsets(n - 1):
            indices = tuple(j + 2 for j in J)
            name = "".join(f"dx{i}" for i in indices) if indices else "1"
            basis.append((name, TensorElement.dx(field, n, indices)))
        return ring, basis
    if c.kind == "parabolic":
        ring = [("O(x1)", _poly_el(o_poly(field, n, 1))),
                (f"e{n - 1}(x2..x{n})",
                 _poly_el(_sub_dickson(field, n - 1, "e", 0, n)))]
        ring += [(f"c{n - 1},{i}(x2..x{n})",
                  _poly_el(_sub_dickson(field, n - 1, "c", i, n)))
                 for i in range(1, n - 1)]
        basis = [("1", TensorElement.one(field, n))]
        basis += _q_basis(field, n, tuple(range(2, n + 1)),
                          index_subsets(n - 1, n - 2))
        basis += _q_basis(field, n, tuple(range(1, n + 1)),
                          index_subsets(n - 1))
        return ring, basis
    if c.kind in ("e8_p5_3", "f4_3"):
        ring = [("e3", _poly_el(dickson_e(field, 3))),
                ("c3,2", _poly_el(dickson_c(field, 3, 2))),
                ("c3,1", _poly_el(dickson_c(field, 3, 1)))]
        basis = [("1", TensorElement.one(field, 3))]
        basis += _q_basis(field, 3, (1, 2, 3), index_subsets(3, 2))
        return ring, basis
    if c.kind == "e6_4":
        ring = [("e3(x2..x4)", _poly_el(_sub_dickson(field, 3, "e", 0, 4))),
                ("c3,2(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 2, 4))),
                ("c3,1(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 1, 4))),
                ("O(x1)", _poly_el(o_poly(field, 4, 1)))]
        basis = [("1", TensorElement.one(field, 4))]
        basis += _q_basis(field, 4, (2, 3, 4), index_subsets(3, 2))
        basis += _q_basis(field, 4, (1, 2, 3, 4), index_subsets(3))
        return ring, basis
    if c.kind == "e7_4":
        orb = o_poly(field, 4, 1)
        ring = [("e3(x2..x4)", _poly_el(_sub_dickson(field, 3, "e", 0, 4))),
                ("c3,2(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 2, 4))),
                ("c3,1(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 1, 4))),
                ("O(x1)^2", _poly_el(orb * orb))]
        basis = [("1", TensorElement.one(field, 4))]
        basis += _q_basis(field, 4, (2, 3, 4), index_subsets(3, 2))
        for name, el in _q_basis(field, 4, (1, 2, 3, 4), index_subsets(3)):
            basis.append((f"O(x1)*{name}", orb * el))
        return ring, basis
    if c.kind == "e8_5a":
        orb = o_poly(field, 5, 1)
        x5 = Polynomial.variable(field, 5, 5)
        ring = [("x5^2", _poly_el(x5 * x5)),
                ("e3(x2..x4)", _poly_el(_sub_dickson(field, 3, "e", 0, 5))),
                ("c3,2(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 2, 5))),
                ("c3,1(x2..x4)", _poly_el(_sub_dickson(field, 3, "c", 1, 5))),
                ("O(x1)^2", _poly_el(orb * orb))]
        w5 = x5 * TensorElement.dx(field, 5, (5,))
        basis = [("1", TensorElement.one(field, 5))]
        inner = _q_basis(field, 5, (2, 3, 4), index_subsets(3, 2))
        basis += inner
        basis.append(("x5*dx5", w5))
        basis += [(f"{name}*x5*dx5", el * w5) for name, el in inner]
        for name, el in _q_basis(field, 5, (1, 2, 3, 4, 5), index_subsets(4)):
            basis.append((f"x5*O(x1)*{name}", (x5 * orb) * el))
        return ring, basis
    raise UnknownCase(f"unknown case kind {c.kind!r}")


def case_elements(case):
    """Named ring generators and module basis elements of a case."""
    c = _as_case(case)
    return _case_elements_cached(c.label)


def degree_cap(case) -> int:
    """Largest degree verify_module will attempt for the case."""
    c = _as_case(case)
    if c.kind in ("sl", "gl"):
        return 40 if c.n <= 2 else (30 if c.n == 3 else 12)
    if c.kind in ("g0", "parabolic"):
        return 20 if c.n <= 3 else 12
    if c.kind in ("e8_p5_3", "f4_3"):
        return 30
    if c.kind in ("e6_4", "e7_4"):
        return 24
    return 12


# -- degree-product criterion ------------------------------------------------

@dataclass(frozen=True)
class PhiWitness:
    """Integrality witness for the first variable over the orbit product:
    the orbit product of an indeterminate is monic with coefficients given
    by the Dickson invariants of the remaining variables, and it reproduces
    the orbit product of x_1 on substitution."""

    n: int
    q: int
    monic: bool
    coefficients_match: bool
    vanishes: bool

    @property
    def ok(self):
        return self.monic and self.coefficients_match and self.vanishes

    def to_json_dict(self):
        return {"n": self.n, "q": self.q, "monic": self.monic,
                "coefficients_match": self.coefficients_match,
                "vanishes": self.vanishes, "ok": self.ok}


def wilkerson_phi(field: FieldSpec, n: int) -> PhiWitness:
    """Check the integrality witness at size n over the given field."""
    q = field.q
    prod_form = o_poly(field, n, 1, "product")
    by_x1 = {}
    for exp, raw in prod_form.terms.items():
        rest = (0,) + exp[1:]
        by_x1.setdefault(exp[0], {})[rest] = raw
    expected_exps = {q ** j for j in range(n)}
    monic = (set(by_x1) == expected_exps
             and by_x1[q ** (n - 1)] == {(0,) * n: field.one})
    coeffs_ok = True
    for j in range(n - 1):
        want = _shift(dickson_c(field, n - 1, j), n, 1)
        if (n - 1 - j) % 2:
            want = -want
        got = Polynomial(field, n, by_x1.get(q ** j, {}))
        if got != want:
            coeffs_ok = False
    vanishes = prod_form == o_poly(field, n, 1, "dickson_sum")
    return PhiWitness(n, q, monic, coeffs_ok, vanishes)


@dataclass(frozen=True)
class WilkersonReport:
    """Degree-product check on the polynomial part of a case's invariants."""

    case: str
    half_degrees: tuple
    degree_product: int
    group_order: int
    phi: PhiWitness | None

    @property
    def product_matches(self):
        return self.degree_product == self.group_order

    @property
    def ok(self):
        return self.product_matches and (self.phi is None or self.phi.ok)

    def to_json_dict(self):
        data = {"case": self.case,
                "half_degrees": list(self.half_degrees),
                "degree_product": self.degree_product,
                "group_order": self.group_order,
                "product_matches": self.product_matches,
                "ok": self.ok}
        if self.phi is not None:
            data["phi"] = self.phi.to_json_dict()
        return data


_PHI_KINDS = ("g0", "parabolic", "e6_4")


def wilkerson_check(case) -> WilkersonReport:
    """Product of polynomial generator degrees against the group order,
    plus the integrality witness for cases generated by an orbit product."""
    c = _as_case(case)
    if c.kind == "e8_5a":
        raise NotApplicable(
            "case e8_5a is outside the degree-product criterion; "
            "module_description carries its polynomial subring data")
    desc = module_description(c)
    half = []
    for deg in desc.algebra_gen_degrees:
        if deg % 2:
            raise NotApplicable(
                f"case {c.label}: generator degree {deg} is not even")
        half.append(deg // 2)
    product = math.prod(half)
    group = case_group(c)
    phi = wilkerson_phi(c.field, c.n) if c.kind in _PHI_KINDS else None
    return WilkersonReport(c.label, tuple(half), product, group.order, phi)


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class DegreeRow:
    degree: int
    computed: int
    predicted: int

    @property
    def match(self):
        return self.computed == self.predicted


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a degreewise module verification for one case."""

    case: str
    rows: tuple
    invariance: tuple
    wilkerson: WilkersonReport | None

    @property
    def ok(self):
        return (all(r.match for r in self.rows)
                and all(flag for _, flag in self.invariance)
                and (self.wilkerson is None or self.wilkerson.ok))

    def to_json_dict(self):
        return {
            "case": self.case,
            "rows": [{"d": r.degree, "computed": r.computed,
                      "predicted": r.predicted, "match": r.match}
                     for r in self.rows],
            "invariance": [{"name": name, "invariant": flag}
                           for name, flag in self.invariance],
            "wilkerson": (self.wilkerson.to_json_dict()
                          if self.wilkerson is not None
                          else {"applicable": False}),
            "ok": self.ok,
        }


def verify_module(case, d_max=None) -> VerificationReport:
    """Compare computed fixed-space dimensions with the free-module series
    degree by degree, and check every listed element for invariance."""
    c = _as_case(case)
    cap = degree_cap(c)
    if d_max is None:
        d_max = cap
    if d_max < 0:
        raise ValueError("need d_max >= 0")
    if d_max > cap:
        raise FeasibilityCapExceeded(
            f"case {c.label}: d_max {d_max} exceeds the schedule cap {cap}")
    group = case_group(c)
    desc = module_description(c)
    rows = tuple(DegreeRow(d, fixed_dim(group, d), hilbert_coeff(desc, d))
                 for d in range(d_max + 1))
    ring, basis = case_elements(c)
    invariance = tuple((name, is_invariant(el, group))
                       for name, el in ring + basis)
    try:
        wilk = wilkerson_check(c)
    except NotApplicable:
        wilk = None
    return VerificationReport(c.label, rows, invariance, wilk)
