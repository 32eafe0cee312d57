"""Dickson-type invariants and determinant bases built from the Q_j.

Everything here is derived from composites of the Milnor derivations on
the top exterior class dx_1...dx_n:

  * dickson_e(n): the product of one linear form per line through the
    origin, obtained as Q_0...Q_{n-1}(dx_1...dx_n); the fundamental
    degree-(q^n - 1)/(q - 1) invariant.
  * dickson_c(n, i): coefficient invariants, extracted by exact division
    of the composite that skips Q_i.
  * f_poly(n): the monic additive polynomial whose roots are exactly the
    F_q-span of x_1..x_n, with X encoded as an extra last variable.
  * o_poly(n, i): the orbit product of x_i over the span of x_2..x_n.
  * mui_det / mui_bracket: determinant and shuffle-sum forms of the same
    classes, used to cross-check the operator route sign by sign.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .algebra import Polynomial, TensorElement, exact_divide
from .errors import IndexOutOfRange, ProductTooLarge
from .field import FieldSpec
from .milnor import milnor_composite

_PRODUCT_CAP = 243


def top_form(field: FieldSpec, n: int) -> TensorElement:
    """dx_1 ^ ... ^ dx_n."""
    return TensorElement.dx(field, n, range(1, n + 1))


def index_subsets(n: int, max_size=None):
    """Subsets of {0..n-1} ordered by (size, lex); max_size trims large ones."""
    if max_size is None:
        max_size = n
    out = []
    for r in range(max_size + 1):
        out.extend(combinations(range(n), r))
    return out


@lru_cache(maxsize=None)
def dickson_e(field: FieldSpec, n: int) -> Polynomial:
    if n < 1:
        raise ValueError("need n >= 1")
    full = milnor_composite(tuple(range(n)), top_form(field, n))
    poly = full.polynomial_part()
    assert not poly.is_zero()
    return poly


@lru_cache(maxsize=None)
def dickson_c(field: FieldSpec, n: int, i: int) -> Polynomial:
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"coefficient index {i} not in 0..{n}")
    indices = tuple(j for j in range(n + 1) if j != i)
    numer = milnor_composite(indices, top_form(field, n)).polynomial_part()
    return exact_divide(numer, dickson_e(field, n))


def _with_x(field, n):
    """Index of the adjoined variable X in the n+1 variable algebra."""
    return n + 1


def f_poly(field: FieldSpec, n: int, method: str = "recursive") -> Polynomial:
    """Product of (X + v) over the q^n span vectors v, as a polynomial in
    n + 1 variables with X last.

    The recursive method iterates span(x_1..x_k) = span(x_1..x_{k-1})
    extended by x_k, one Frobenius and one scaled product per step.  The
    brute product is kept as an independent oracle and refuses to run
    past q^n = 243 factors.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    q = field.q
    N = n + 1
    X = _with_x(field, n)
    if method == "product":
        if q ** n > _PRODUCT_CAP:
            raise ProductTooLarge(f"q^n = {q ** n} exceeds {_PRODUCT_CAP}")
        acc = Polynomial.one(field, N)
        for vec in product(range(q), repeat=n):
            form = Polynomial.variable(field, N, X)
            for i, a in enumerate(vec):
                if a:
                    form = form + Polynomial.variable(field, N, i + 1).scale_raw(a)
            acc = acc * form
        return acc
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    f = Polynomial.one(field, N)
    for a in range(q):
        form = Polynomial.variable(field, N, X)
        if a:
            form = form + Polynomial.variable(field, N, 1).scale_raw(a)
        f = f * form
    ident = {i: i for i in range(1, N + 1)}
    for k in range(2, n + 1):
        at_xk = f.map_variables(N, {**ident, X: k})
        f = f.q_power() - f * (at_xk ** (q - 1))
    return f


def delta_poly(field: FieldSpec, n: int) -> Polynomial:
    """(-1)^n Q_0...Q_n (dx_1...dx_n dX) in n + 1 variables; this equals
    dickson_e(n) * f_poly(n)."""
    if n < 1:
        raise ValueError("need n >= 1")
    N = n + 1
    w = TensorElement.dx(field, N, range(1, N + 1))
    out = milnor_composite(tuple(range(N)), w).polynomial_part()
    return -out if n & 1 else out


def o_poly(field: FieldSpec, n: int, i: int, method: str = "product") -> Polynomial:
    """Orbit product of x_i over the span of x_2..x_n, in n variables.

    For i >= 2 the product hits the factor x_i - x_i and collapses to 0.
    dickson_sum evaluates the additive expansion with Dickson coefficient
    weights instead of multiplying q^{n-1} factors.
    """
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"variable index {i} not in 1..{n}")
    q = field.q
    if method == "product":
        if q ** (n - 1) > _PRODUCT_CAP:
            raise ProductTooLarge(f"q^(n-1) = {q ** (n - 1)} exceeds {_PRODUCT_CAP}")
        acc = Polynomial.one(field, n)
        for vec in product(range(q), repeat=n - 1):
            form = Polynomial.variable(field, n, i)
            for t, a in enumerate(vec):
                if a:
                    form = form + Polynomial.variable(field, n, t + 2).scale_raw(a)
            acc = acc * form
        return acc
    if method != "dickson_sum":
        raise ValueError(f"unknown method {method!r}")
    if n == 1:
        return Polynomial.variable(field, n, i)
    shift = {t: t + 1 for t in range(1, n)}
    total = Polynomial.zero(field, n)
    for j in range(n):
        c = dickson_c(field, n - 1, j).map_variables(n, shift)
        term = c * Polynomial.variable(field, n, i, q ** j)
        if (n - 1 - j) & 1:
            term = -term
        total = total + term
    return total


def o_prev(field: FieldSpec, n: int, i: int) -> Polynomial:
    """Orbit product of x_i over the span of x_2..x_{n-1} only, still in
    n variables; for n = 2 the span is zero and this is x_i."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"variable index {i} not in 1..{n}")
    q = field.q
    if q ** max(n - 2, 0) > _PRODUCT_CAP:
        raise ProductTooLarge(f"q^(n-2) = {q ** (n - 2)} exceeds {_PRODUCT_CAP}")
    acc = Polynomial.one(field, n)
    for vec in product(range(q), repeat=max(n - 2, 0)):
        form = Polynomial.variable(field, n, i)
        for t, a in enumerate(vec):
            if a:
                form = form + Polynomial.variable(field, n, t + 2).scale_raw(a)
        acc = acc * form
    return acc


def mui_det(field: FieldSpec, i_list, k: int = None) -> Polynomial:
    """det of the k x k matrix with (l, j) entry x_j^(q^(i_l)), in k vars."""
    i_list = tuple(int(i) for i in i_list)
    if k is None:
        k = len(i_list)
    if k != len(i_list):
        raise ValueError("k must equal the number of row exponents")
    if any(i < 0 for i in i_list):
        raise IndexOutOfRange(f"negative exponent index in {i_list}")
    q = field.q
    total = Polynomial.zero(field, k)
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k)
                  if perm[a] > perm[b])
        term = Polynomial.one(field, k)
        for row, col in enumerate(perm):
            term = term * Polynomial.variable(field, k, col + 1, q ** i_list[row])
        total = total + (-term if inv & 1 else term)
    return total


def _det_on_columns(field, n, i_list, cols) -> Polynomial:
    q = field.q
    k = len(cols)
    total = Polynomial.zero(field, n)
    for perm in permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k)
                  if perm[a] > perm[b])
        term = Polynomial.one(field, n)
        for row in range(k):
            term = term * Polynomial.variable(field, n, cols[perm[row]],
                                              q ** i_list[row])
        total = total + (-term if inv & 1 else term)
    return total


def mui_bracket(field: FieldSpec, r: int, i_list, n: int) -> TensorElement:
    """Shuffle sum of dx_{j_1}...dx_{j_r} times the determinant class on
    the complementary variables, signed by the shuffle parity."""
    i_list = tuple(int(i) for i in i_list)
    if not 0 <= r <= n:
        raise IndexOutOfRange(f"exterior degree {r} not in 0..{n}")
    if len(i_list) != n - r:
        raise ValueError(f"need {n - r} row exponents, got {len(i_list)}")
    total = TensorElement.zero(field, n)
    for J1 in combinations(range(1, n + 1), r):
        J2 = tuple(j for j in range(1, n + 1) if j not in J1)
        # parity of the shuffle (1..n) -> (J1, J2), both halves ascending
        inv = sum(j - (t + 1) for t, j in enumerate(J1))
        det = _det_on_columns(field, n, i_list, J2)
        term = det * TensorElement.dx(field, n, J1)
        total = total + (-term if inv & 1 else term)
    return total


def mui_q(field: FieldSpec, I, n: int) -> TensorElement:
    """Q_I applied to the top exterior class dx_1...dx_n."""
    I = tuple(int(i) for i in I)
    if any(not 0 <= i < n for i in I):
        raise IndexOutOfRange(f"index tuple {I} not inside 0..{n - 1}")
    return milnor_composite(I, top_form(field, n))


def theorem_basis(field: FieldSpec, case: str, n: int):
    """Module basis over the invariant polynomial ring.

    case "sl": 1 together with Q_I(dx_1...dx_n) for every proper subset I
    of {0..n-1}.  case "gl": the same classes multiplied by e_n^(q-2).
    Ordered by (|I|, lex), with the constant 1 first.
    """
    if case not in ("sl", "gl"):
        raise ValueError(f"case must be 'sl' or 'gl', got {case!r}")
    out = [TensorElement.one(field, n)]
    extra = None
    if case == "gl":
        extra = dickson_e(field, n) ** (field.q - 2)
    for I in index_subsets(n, n - 1):
        v = mui_q(field, I, n)
        if extra is not None:
            v = extra * v
        out.append(v)
    return out
