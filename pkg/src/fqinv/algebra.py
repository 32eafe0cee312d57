"""Sparse arithmetic in P_n (x) E_n over a finite field.

P_n is the polynomial algebra on x_1..x_n with every x_i of cohomological
degree 2; E_n is the exterior algebra on dx_1..dx_n with every dx_i of
degree 1.  A Polynomial stores a dict mapping exponent tuples (length n)
to nonzero raw field values; a TensorElement stores a dict mapping
strictly increasing tuples of 1-based exterior indices to nonzero
Polynomials.  Products of exterior generators are kept in ascending
normal form, with the Koszul sign paid at multiplication time.

The monomial order used throughout (leading terms, division, canonical
output) is graded lex with x_1 > x_2 > ... > x_n.
"""

from __future__ import annotations

import json
from bisect import bisect_left

from .errors import (
    ArityMismatch,
    FieldMismatch,
    IndexOutOfRange,
    NotDivisible,
    SerializationError,
)
from .field import FieldElement, FieldSpec, make_field


def _grlex_key(exp):
    return (sum(exp), exp)


def _check_same(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.n != b.n:
        raise ArityMismatch(f"{a.n} variables vs {b.n}")


class Polynomial:
    """Element of F_q[x_1..x_n], sparse, coefficients as raw ints."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: FieldSpec, n: int, terms=None):
        self.field = field
        self.n = n
        clean = {}
        if terms:
            for exp, c in terms.items():
                raw = _coerce_raw(field, c)
                if raw:
                    exp = tuple(int(e) for e in exp)
                    if len(exp) != n or any(e < 0 for e in exp):
                        raise ValueError(f"bad exponent tuple {exp}")
                    clean[exp] = raw
        self.terms = clean

    @classmethod
    def _make(cls, field, n, terms):
        # internal: terms already normalized, takes ownership
        self = object.__new__(cls)
        self.field = field
        self.n = n
        self.terms = terms
        return self

    @classmethod
    def zero(cls, field, n):
        return cls._make(field, n, {})

    @classmethod
    def one(cls, field, n):
        return cls._make(field, n, {(0,) * n: field.one})

    @classmethod
    def constant(cls, field, n, c):
        raw = _coerce_raw(field, c)
        return cls._make(field, n, {(0,) * n: raw} if raw else {})

    @classmethod
    def variable(cls, field, n, i, power=1):
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"variable index {i} not in 1..{n}")
        exp = tuple(power if j == i - 1 else 0 for j in range(n))
        return cls._make(field, n, {exp: field.one})

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Polynomial.constant(self.field, self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same(self, other)
        fadd = self.field.add
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = fadd(out.get(exp, 0), c)
            if s:
                out[exp] = s
            elif exp in out:
                del out[exp]
        return Polynomial._make(self.field, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        fneg = self.field.neg
        return Polynomial._make(
            self.field, self.n, {exp: fneg(c) for exp, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -(
            Polynomial.constant(self.field, self.n, other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        _check_same(self, other)
        field = self.field
        fadd, fmul = field.add, field.mul
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = fadd(out.get(exp, 0), fmul(ca, cb))
                if s:
                    out[exp] = s
                elif exp in out:
                    del out[exp]
        return Polynomial._make(self.field, self.n, out)

    __rmul__ = __mul__

    def scale(self, c):
        raw = _coerce_raw(self.field, c)
        return self.scale_raw(raw)

    def scale_raw(self, raw: int):
        if raw == 0:
            return Polynomial.zero(self.field, self.n)
        if raw == self.field.one:
            return self
        fmul = self.field.mul
        return Polynomial._make(
            self.field, self.n, {e: fmul(c, raw) for e, c in self.terms.items()}
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.one(self.field, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            if k > 1:
                base = base * base
            k >>= 1
        return out

    def q_power(self):
        """Frobenius: f -> f^q, exponents scale by q, coefficients fixed."""
        q = self.field.q
        return Polynomial._make(
            self.field, self.n,
            {tuple(e * q for e in exp): c for exp, c in self.terms.items()},
        )

    # -- structure -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total polynomial degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(exponent, coefficient) largest in graded lex; None if zero."""
        if not self.terms:
            return None
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def coefficient(self, exp):
        return self.field.from_raw(self.terms.get(tuple(exp), 0))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.field == other.field and self.n == other.n
                    and self.terms == other.terms)
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial.constant(self.field, self.n, other)
        return NotImplemented

    __hash__ = None

    # -- substitution and friends -------------------------------------

    def substitute_linear(self, rows):
        """Replace x_i by sum_j rows[i-1][j-1] * x_j.  rows need not be
        invertible (projections are fine)."""
        field, n = self.field, self.n
        raw_rows = _coerce_rows(field, n, rows)
        sparse = [[(j, c) for j, c in enumerate(row) if c] for row in raw_rows]
        fadd, fmul = field.add, field.mul
        out = {}
        pow_cache = {}
        for exp, coeff in self.terms.items():
            # product over variables of (linear form)^e_i, built as a dict
            acc = None
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                key = (i, e)
                part = pow_cache.get(key)
                if part is None:
                    part = _linear_form_power(field, n, sparse[i], e)
                    pow_cache[key] = part
                if acc is None:
                    acc = part
                else:
                    nxt = {}
                    for e1, c1 in acc.items():
                        for e2, c2 in part.items():
                            ee = tuple(a + b for a, b in zip(e1, e2))
                            s = fadd(nxt.get(ee, 0), fmul(c1, c2))
                            if s:
                                nxt[ee] = s
                            elif ee in nxt:
                                del nxt[ee]
                    acc = nxt
            if acc is None:
                acc = {(0,) * n: field.one}
            for ee, c in acc.items():
                s = fadd(out.get(ee, 0), fmul(c, coeff))
                if s:
                    out[ee] = s
                elif ee in out:
                    del out[ee]
        return Polynomial._make(field, n, out)

    def project(self, i: int):
        """Set x_i = 0, keeping the variable count."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"variable index {i} not in 1..{self.n}")
        return Polynomial._make(
            self.field, self.n,
            {e: c for e, c in self.terms.items() if e[i - 1] == 0},
        )

    def map_variables(self, new_n: int, mapping: dict):
        """Push x_i to x_{mapping[i]} inside an algebra on new_n variables.

        Exponents landing on the same target variable add up, so the map
        need not be injective (this is substitution x_i -> x_{mapping[i]}).
        """
        out = {}
        fadd = self.field.add
        for exp, c in self.terms.items():
            ee = [0] * new_n
            for i, e in enumerate(exp):
                if e:
                    j = mapping.get(i + 1)
                    if j is None or not 1 <= j <= new_n:
                        raise IndexOutOfRange(f"variable {i + 1} has no target")
                    ee[j - 1] += e
            ee = tuple(ee)
            s = fadd(out.get(ee, 0), c)
            if s:
                out[ee] = s
            elif ee in out:
                del out[ee]
        return Polynomial._make(self.field, new_n, out)

    def __repr__(self):
        return pretty_polynomial(self)


def _coerce_raw(field, c) -> int:
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldMismatch(f"{field} vs {c.field}")
        return c.raw
    if isinstance(c, int):
        return c % field.p
    raise TypeError(f"cannot use {type(c).__name__} as a field value")


def _coerce_rows(field, n, rows):
    rows = list(rows)
    if len(rows) != n:
        raise ArityMismatch(f"need {n} rows, got {len(rows)}")
    out = []
    for row in rows:
        row = list(row)
        if len(row) != n:
            raise ArityMismatch(f"need {n} entries per row, got {len(row)}")
        out.append(tuple(_coerce_raw(field, c) for c in row))
    return out


def _linear_form_power(field, n, entries, k):
    """(sum of c_j x_j)^k as a term dict; entries is [(j0, coeff)...]."""
    if len(entries) == 0:
        return {} if k > 0 else {(0,) * n: field.one}
    if len(entries) == 1:
        j, c = entries[0]
        exp = tuple(k if t == j else 0 for t in range(n))
        return {exp: field.pow_(c, k)}
    fadd, fmul = field.add, field.mul
    base = {}
    for j, c in entries:
        base[tuple(1 if t == j else 0 for t in range(n))] = c
    acc = base
    for _ in range(k - 1):
        nxt = {}
        for e1, c1 in acc.items():
            for j, c in entries:
                ee = list(e1)
                ee[j] += 1
                ee = tuple(ee)
                s = fadd(nxt.get(ee, 0), fmul(c1, c))
                if s:
                    nxt[ee] = s
                elif ee in nxt:
                    del nxt[ee]
        acc = nxt
    return acc


def exact_divide(f: Polynomial, g: Polynomial):
    """Quotient f/g when it exists; raises NotDivisible otherwise.

    Single-divisor graded-lex division; the heap keeps the candidate
    leading exponents so each step is logarithmic.
    """
    import heapq

    _check_same(f, g)
    if g.is_zero():
        raise NotDivisible("division by the zero polynomial")
    field = f.field
    fadd, fmul, fneg = field.add, field.mul, field.neg
    lead = g.leading()
    ge, gc = lead
    gc_inv = field.inv(gc)
    grest = [(e, c) for e, c in g.terms.items() if e != ge]
    rem = dict(f.terms)
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        negd, nege = heapq.heappop(heap)
        exp = tuple(-x for x in nege)
        c = rem.get(exp)
        if not c:
            continue
        te = tuple(a - b for a, b in zip(exp, ge))
        if any(x < 0 for x in te):
            raise NotDivisible("leading term not divisible")
        tc = fmul(c, gc_inv)
        quot[te] = tc
        del rem[exp]
        ntc = fneg(tc)
        for e2, c2 in grest:
            ee = tuple(a + b for a, b in zip(te, e2))
            old = rem.get(ee, 0)
            s = fadd(old, fmul(ntc, c2))
            if s:
                if not old:
                    heapq.heappush(heap, (-sum(ee), tuple(-x for x in ee)))
                rem[ee] = s
            elif ee in rem:
                del rem[ee]
    if rem:
        raise NotDivisible("nonzero remainder")
    return Polynomial._make(field, f.n, quot)


class TensorElement:
    """Element of P_n (x) E_n: exterior-word -> Polynomial coefficient."""

    __slots__ = ("field", "n", "parts")

    def __init__(self, field: FieldSpec, n: int, parts=None):
        self.field = field
        self.n = n
        clean = {}
        if parts:
            for ext, poly in parts.items():
                ext = tuple(int(j) for j in ext)
                if any(not 1 <= j <= n for j in ext) or list(ext) != sorted(set(ext)):
                    raise ValueError(f"bad exterior index tuple {ext}")
                if not isinstance(poly, Polynomial):
                    raise TypeError("parts must map to Polynomial")
                _check_same_tp(self, poly)
                if not poly.is_zero():
                    clean[ext] = poly
        self.parts = clean

    @classmethod
    def _make(cls, field, n, parts):
        self = object.__new__(cls)
        self.field = field
        self.n = n
        self.parts = parts
        return self

    @classmethod
    def zero(cls, field, n):
        return cls._make(field, n, {})

    @classmethod
    def one(cls, field, n):
        return cls._make(field, n, {(): Polynomial.one(field, n)})

    @classmethod
    def from_polynomial(cls, poly: Polynomial):
        if poly.is_zero():
            return cls.zero(poly.field, poly.n)
        return cls._make(poly.field, poly.n, {(): poly})

    @classmethod
    def dx(cls, field, n, indices):
        """dx_{j_1} ^ ... ^ dx_{j_r} for strictly increasing indices."""
        ext = tuple(int(j) for j in indices)
        if list(ext) != sorted(set(ext)) or any(not 1 <= j <= n for j in ext):
            raise ValueError(f"indices must be strictly increasing in 1..{n}")
        return cls._make(field, n, {ext: Polynomial.one(field, n)})

    # -- additive structure -------------------------------------------

    def __add__(self, other):
        other = _as_tensor(self, other)
        if other is NotImplemented:
            return NotImplemented
        _check_same(self, other)
        out = dict(self.parts)
        for ext, poly in other.parts.items():
            s = out.get(ext)
            s = poly if s is None else s + poly
            if s.is_zero():
                out.pop(ext, None)
            else:
                out[ext] = s
        return TensorElement._make(self.field, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement._make(
            self.field, self.n, {e: -p for e, p in self.parts.items()}
        )

    def __sub__(self, other):
        other = _as_tensor(self, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    # -- multiplicative structure -------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = _as_tensor(self, other)
        if other is NotImplemented:
            return NotImplemented
        _check_same(self, other)
        field = self.field
        out = {}
        for e1, p1 in self.parts.items():
            for e2, p2 in other.parts.items():
                merged = _merge_ext(e1, e2)
                if merged is None:
                    continue
                sign, ext = merged
                prod = p1 * p2
                if sign < 0:
                    prod = -prod
                s = out.get(ext)
                s = prod if s is None else s + prod
                if s.is_zero():
                    out.pop(ext, None)
                else:
                    out[ext] = s
        return TensorElement._make(field, self.n, out)

    def __rmul__(self, other):
        # scalars and polynomials are even, so this commutes
        if isinstance(other, (int, FieldElement, Polynomial)):
            return self.__mul__(other)
        return NotImplemented

    def scale(self, c):
        raw = _coerce_raw(self.field, c)
        if raw == 0:
            return TensorElement.zero(self.field, self.n)
        return TensorElement._make(
            self.field, self.n,
            {e: p.scale_raw(raw) for e, p in self.parts.items()},
        )

    # -- structure -----------------------------------------------------

    def is_zero(self):
        return not self.parts

    def exterior_degrees(self):
        return sorted({len(e) for e in self.parts})

    def polynomial_part(self):
        """Coefficient of the empty exterior word."""
        return self.parts.get((), Polynomial.zero(self.field, self.n))

    def coh_components(self):
        """Split into cohomologically homogeneous pieces, degree -> element."""
        buckets = {}
        for ext, poly in self.parts.items():
            r = len(ext)
            for exp, c in poly.terms.items():
                d = 2 * sum(exp) + r
                part = buckets.setdefault(d, {})
                part.setdefault(ext, {})[exp] = c
        return {
            d: TensorElement._make(
                self.field, self.n,
                {ext: Polynomial._make(self.field, self.n, terms)
                 for ext, terms in parts.items()},
            )
            for d, parts in sorted(buckets.items())
        }

    def is_homogeneous(self):
        return len(self.coh_components()) <= 1

    def coh_degree(self):
        """Cohomological degree if homogeneous; 0 for zero."""
        comps = self.coh_components()
        if len(comps) > 1:
            from .errors import DegreeMismatch
            raise DegreeMismatch("element is not homogeneous")
        return next(iter(comps), 0)

    def __eq__(self, other):
        other = _as_tensor(self, other)
        if other is NotImplemented:
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.parts == other.parts)

    __hash__ = None

    def map_variables(self, new_n: int, mapping: dict):
        """Relabel both x_i and dx_i by the index mapping, which must be
        injective on the exterior indices in use.  Reordering a word to
        ascending form pays the usual sign."""
        out = {}
        for ext, poly in self.parts.items():
            images = [mapping[j] for j in ext]
            if len(set(images)) != len(images):
                raise ValueError("mapping must be injective on exterior indices")
            sign = _sort_sign(images)
            new_ext = tuple(sorted(images))
            p = poly.map_variables(new_n, mapping)
            if sign < 0:
                p = -p
            prev = out.get(new_ext)
            p = p if prev is None else prev + p
            if p.is_zero():
                out.pop(new_ext, None)
            else:
                out[new_ext] = p
        return TensorElement._make(self.field, new_n, out)

    def __repr__(self):
        return pretty(self)


def _check_same_tp(t, poly):
    if t.field != poly.field:
        raise FieldMismatch(f"{t.field} vs {poly.field}")
    if t.n != poly.n:
        raise ArityMismatch(f"{t.n} variables vs {poly.n}")


def _as_tensor(like, other):
    if isinstance(other, TensorElement):
        return other
    if isinstance(other, Polynomial):
        return TensorElement.from_polynomial(other)
    if isinstance(other, (int, FieldElement)):
        return TensorElement.from_polynomial(
            Polynomial.constant(like.field, like.n, other))
    return NotImplemented


def _merge_ext(I, J):
    """Koszul sign and merged word for dx_I ^ dx_J; None if they clash."""
    if I and J and set(I) & set(J):
        return None
    inv = 0
    for i in I:
        for j in J:
            if i > j:
                inv += 1
    return (-1 if inv & 1 else 1, tuple(sorted(I + J)))


def _sort_sign(seq):
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv & 1 else 1


def wedge(u: TensorElement, v: TensorElement):
    return u * v


def tensor_act(g, u: TensorElement) -> TensorElement:
    """Left action of a group matrix on an algebra element.

    The variables transform contragrediently: the polynomial part is
    substituted through g^{-1}, and each dx_j maps to the corresponding
    combination of dx_k with coefficients from g^{-1}, so the top
    exterior class picks up det(g^{-1}).
    """
    if g.field != u.field:
        raise FieldMismatch(f"{g.field} vs {u.field}")
    if g.n != u.n:
        raise ArityMismatch(f"{g.n} vs {u.n}")
    field, n = u.field, u.n
    rows = g.inverse_rows()
    fadd, fmul, fneg = field.add, field.mul, field.neg
    out = {}
    for J, poly in u.parts.items():
        psub = poly.substitute_linear(rows)
        ext_terms = {(): field.one}
        for j in J:
            row = rows[j - 1]
            nxt = {}
            for K, s in ext_terms.items():
                for k0, c in enumerate(row):
                    if not c:
                        continue
                    k = k0 + 1
                    if k in K:
                        continue
                    pos = bisect_left(K, k)
                    cc = fmul(s, c)
                    if (len(K) - pos) & 1:
                        cc = fneg(cc)
                    KK = K[:pos] + (k,) + K[pos:]
                    t = fadd(nxt.get(KK, 0), cc)
                    if t:
                        nxt[KK] = t
                    elif KK in nxt:
                        del nxt[KK]
            ext_terms = nxt
        for K, s in ext_terms.items():
            contrib = psub.scale_raw(s)
            if contrib.is_zero():
                continue
            prev = out.get(K)
            total = contrib if prev is None else prev + contrib
            if total.is_zero():
                out.pop(K, None)
            else:
                out[K] = total
    return TensorElement._make(field, n, out)


# -- canonical JSON -----------------------------------------------------

def to_json_dict(u: TensorElement) -> dict:
    field = u.field
    flat = []
    for ext, poly in u.parts.items():
        for exp, c in poly.terms.items():
            flat.append((ext, exp, c))
    flat.sort(key=lambda t: (t[0], -sum(t[1]), tuple(-e for e in t[1])))
    return {
        "field": {
            "p": field.p,
            "e": field.e,
            "modulus": list(field.modulus) if field.modulus else None,
        },
        "n": u.n,
        "terms": [
            {"c": list(field.coeffs(c)), "exp": list(exp), "ext": list(ext)}
            for ext, exp, c in flat
        ],
    }


def to_json(u: TensorElement) -> str:
    return json.dumps(to_json_dict(u), separators=(",", ":"))


def from_json_dict(data) -> TensorElement:
    try:
        fd = data["field"]
        field = make_field(fd["p"], fd["e"], fd.get("modulus"))
        n = data["n"]
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"bad variable count {n!r}")
        parts = {}
        for term in data["terms"]:
            coeffs = term["c"]
            if len(coeffs) != field.e:
                raise ValueError(f"coefficient needs {field.e} coordinates")
            exp = term["exp"]
            if len(exp) != n:
                raise ValueError(f"exponent tuple needs length {n}")
            ext = tuple(int(j) for j in term["ext"])
            if any(not 1 <= j <= n for j in ext) or list(ext) != sorted(set(ext)):
                raise ValueError(f"bad exterior index tuple {ext}")
            raw = field.element(coeffs).raw
            if raw == 0:
                continue
            poly_terms = parts.setdefault(ext, {})
            key = tuple(int(e) for e in exp)
            if any(e < 0 for e in key):
                raise ValueError(f"bad exponent tuple {key}")
            if key in poly_terms:
                raise ValueError(f"duplicate term {key} in {ext}")
            poly_terms[key] = raw
        # values are already canonical raws, so bypass the coercing
        # constructor (it would fold them into the prime subfield)
        return TensorElement._make(
            field, n,
            {ext: Polynomial._make(field, n, terms)
             for ext, terms in parts.items()},
        )
    except SerializationError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed element: {exc}") from exc


def from_json(text: str) -> TensorElement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    return from_json_dict(data)


# -- rendering ----------------------------------------------------------

def _coeff_str(field, raw):
    if field.e == 1:
        return str(raw)
    parts = []
    for i, c in enumerate(field.coeffs(raw)):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            base = "t" if i == 1 else f"t^{i}"
            parts.append(base if c == 1 else f"{c}{base}")
    return "(" + "+".join(parts) + ")" if len(parts) > 1 else (parts[0] if parts else "0")


def pretty_polynomial(poly: Polynomial, var: str = "x") -> str:
    if poly.is_zero():
        return "0"
    field = poly.field
    items = sorted(poly.terms.items(),
                   key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
    rendered = []
    for exp, c in items:
        factors = []
        for i, e in enumerate(exp):
            if e == 1:
                factors.append(f"{var}{i + 1}")
            elif e > 1:
                factors.append(f"{var}{i + 1}^{e}")
        cs = _coeff_str(field, c)
        if not factors:
            rendered.append(cs)
        elif cs == "1":
            rendered.append("*".join(factors))
        else:
            rendered.append(cs + "*" + "*".join(factors))
    return " + ".join(rendered)


def pretty(u: TensorElement, var: str = "x") -> str:
    if u.is_zero():
        return "0"
    chunks = []
    for ext in sorted(u.parts):
        poly = u.parts[ext]
        ps = pretty_polynomial(poly, var)
        if not ext:
            chunks.append(ps)
            continue
        dxs = "*".join(f"d{var}{j}" for j in ext)
        if ps == "1":
            chunks.append(dxs)
        elif " + " in ps:
            chunks.append(f"({ps})*{dxs}")
        else:
            chunks.append(f"{ps}*{dxs}")
    return " + ".join(chunks)
