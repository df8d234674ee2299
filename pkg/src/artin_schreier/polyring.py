"""Univariate polynomials over a constructed field, linearized polynomials,
and evaluation of the symmetric functions used in circulant rank arguments.

Polynomials are immutable; coefficients are stored constant term first with
no trailing zeros, so the zero polynomial has no coefficients at all.
"""

import json

from .gf import Fe, FieldMismatch, frobenius, element_to_json, parse_element
from .gf import _pstrip, _padd, _psub, _pmul, _pdivmod, _pmonic, _pgcd

__all__ = ['Poly', 'LinearizedPoly', 'RepeatedPointError',
           'poly_gcd', 'reciprocal', 'is_self_reciprocal', 'associated_polynomial',
           'x_pow_minus_one', 'hk_eval', 'vandermonde_products', 'format_poly', 'parse_poly']


class RepeatedPointError(ValueError):
    """The rational-function formula needs pairwise distinct points."""


class Poly:
    """Polynomial over ``field``; ``raw`` holds raw coefficients, constant first."""

    __slots__ = ('field', 'raw')

    def __init__(self, field, coeffs=()):
        self.field = field
        raw = []
        for c in coeffs:
            if isinstance(c, Fe):
                if c.field != field:
                    raise FieldMismatch(f'coefficient {c} is not in {field!r}')
                raw.append(c.raw)
            else:
                raw.append(field(c).raw)
        self.raw = tuple(_pstrip(field, raw))

    @classmethod
    def from_raw(cls, field, raw):
        f = cls.__new__(cls)
        f.field = field
        f.raw = tuple(_pstrip(field, list(raw)))
        return f

    @classmethod
    def monomial(cls, field, n, c=1):
        z = field.zero_raw()
        return cls.from_raw(field, [z] * n + [field(c).raw])

    @property
    def coeffs(self):
        return tuple(Fe(self.field, c) for c in self.raw)

    @property
    def degree(self):
        return len(self.raw) - 1

    def coeff(self, k):
        if 0 <= k < len(self.raw):
            return Fe(self.field, self.raw[k])
        return self.field.zero()

    def leading(self):
        return Fe(self.field, self.raw[-1]) if self.raw else self.field.zero()

    def monic(self):
        return Poly.from_raw(self.field, _pmonic(self.field, list(self.raw)))

    def is_monic(self):
        return bool(self.raw) and self.raw[-1] == self.field.one_raw()

    def _check(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch('polynomials over different fields')
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._check(other)
        return Poly.from_raw(self.field, _padd(self.field, self.raw, other.raw))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Poly.from_raw(self.field, _psub(self.field, self.raw, other.raw))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Poly.from_raw(self.field, [self.field.neg(c) for c in self.raw])

    def __mul__(self, other):
        other = self._check(other)
        return Poly.from_raw(self.field, _pmul(self.field, self.raw, other.raw))

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        q, r = _pdivmod(self.field, self.raw, other.raw)
        return Poly.from_raw(self.field, q), Poly.from_raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        result = Poly.from_raw(self.field, [self.field.one_raw()])
        a = self
        while n:
            if n & 1:
                result = result * a
            n >>= 1
            if n:
                a = a * a
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __bool__(self):
        return bool(self.raw)

    def __call__(self, x):
        """Horner evaluation; x may live in the coefficient field or an extension of it."""
        acc = x.field.zero() if isinstance(x, Fe) else self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f'Poly({format_poly(self)})'


def x_pow_minus_one(field, r):
    """The polynomial x^r - 1."""
    return Poly.monomial(field, r) - 1


def poly_gcd(f, g):
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if f.field != g.field:
        raise FieldMismatch('polynomials over different fields')
    return Poly.from_raw(f.field, _pgcd(f.field, f.raw, g.raw))


def reciprocal(f):
    """f*(x) = x^deg(f) f(1/x) / f(0)."""
    if not f or f.raw[0] == f.field.zero_raw():
        raise ValueError('reciprocal needs f(0) != 0')
    F = f.field
    c = F.inv(f.raw[0])
    return Poly.from_raw(F, [F.mul(c, a) for a in reversed(f.raw)])


def is_self_reciprocal(f):
    if not f or f.raw[0] == f.field.zero_raw():
        return False
    return reciprocal(f) == f


class LinearizedPoly:
    """P(x) = sum a_j x^(q^j) with coefficients (a_0, ..., a_l) in F_q."""

    __slots__ = ('field', 'raw')

    def __init__(self, field, coeffs):
        p = Poly(field, coeffs)
        # keep a single zero coefficient for the zero map
        self.field = field
        self.raw = p.raw if p.raw else (field.zero_raw(),)

    @classmethod
    def x_qi_minus_x(cls, field, i):
        """The polynomial x^(q^i) - x."""
        if i < 1:
            raise ValueError('need i >= 1')
        return cls(field, [-1] + [0] * (i - 1) + [1])

    @property
    def coeffs(self):
        return tuple(Fe(self.field, c) for c in self.raw)

    @property
    def q_degree(self):
        return len(self.raw) - 1

    def __call__(self, x):
        if x.field.base != self.field:
            raise FieldMismatch('linearized polynomial must act on an extension of its field')
        acc = x.field.zero()
        y = x
        for j, c in enumerate(self.coeffs):
            if j:
                y = frobenius(y, 1)
            if c:
                acc = acc + c * y
        return acc

    def shortcut_index(self):
        """i if this is x^(q^i) - x, else None."""
        F = self.field
        l = self.q_degree
        if l < 1:
            return None
        if self.raw[0] != F.neg(F.one_raw()) or self.raw[-1] != F.one_raw():
            return None
        if any(c != F.zero_raw() for c in self.raw[1:-1]):
            return None
        return l

    def __eq__(self, other):
        if isinstance(other, LinearizedPoly):
            return self.field == other.field and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __repr__(self):
        return f'LinearizedPoly({json.dumps([element_to_json(c) for c in self.coeffs], separators=(",", ":"))})'


def associated_polynomial(P):
    """sum a_j x^(q^j)  ->  sum a_j x^j."""
    return Poly.from_raw(P.field, P.raw)


def hk_eval(k, points, method='recurrence'):
    """Complete homogeneous symmetric polynomial h_k at the given points.

    ``method='recurrence'`` uses h_k(x_1..x_n) = h_k(x_1..x_{n-1}) + x_n h_{k-1}(x_1..x_n)
    and has no preconditions.  ``method='rational'`` uses
    sum_l x_l^(n+k-1) / prod_{m != l} (x_l - x_m) and needs distinct points.
    """
    points = list(points)
    if not points:
        raise ValueError('need at least one point')
    F = points[0].field
    if method == 'recurrence':
        # row[j] = h_j of the points seen so far
        row = [F.one()] + [F.zero()] * k
        for x in points:
            for j in range(1, k + 1):
                row[j] = row[j] + x * row[j - 1]
        return row[k]
    if method == 'rational':
        n = len(points)
        total = F.zero()
        for l, xl in enumerate(points):
            den = F.one()
            for m, xm in enumerate(points):
                if m != l:
                    diff = xl - xm
                    if not diff:
                        raise RepeatedPointError('points must be pairwise distinct')
                    den = den * diff
            total = total + xl**(n + k - 1) / den
        return total
    raise ValueError(f'unknown method {method!r}')


def vandermonde_products(points, j=None):
    """A_k = prod_{t<s} (x_s - x_t), or with 1-based j given,
    A_{k,j} = (-1)^(j+1) prod_{t<s, t,s != j} (x_s - x_t)."""
    points = list(points)
    k = len(points)
    F = points[0].field
    if j is None:
        if k < 2:
            raise ValueError('A_k needs k >= 2')
        skip = None
        sign = 1
    else:
        if k < 3:
            raise ValueError('A_{k,j} needs k >= 3')
        if not 1 <= j <= k:
            raise ValueError(f'index j={j} out of range 1..{k}')
        skip = j - 1
        sign = -1 if j % 2 == 0 else 1
    prod = F.one()
    for s in range(k):
        if s == skip:
            continue
        for t in range(s):
            if t != skip:
                prod = prod * (points[s] - points[t])
    return prod if sign == 1 else -prod


def format_poly(f):
    return json.dumps([element_to_json(c) for c in f.coeffs], separators=(',', ':'))


def parse_poly(field, text):
    """Parse a constant-first coefficient list of elements in the gf text format."""
    value = json.loads(text) if isinstance(text, str) else text
    if not isinstance(value, list):
        raise ValueError('polynomial must be a list of coefficients')
    return Poly(field, [parse_element(field, c) for c in value])
