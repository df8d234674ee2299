"""Exact arithmetic in F_p, F_q = F_{p^e} and the tower F_{q^r}.

A field is described by a :class:`FieldDesc`.  Prime fields hold residues
as plain ints; an extension of degree d over its immediate base holds
tuples of d base values (constant term first).  These "raw" values are what
the field methods operate on; :class:`Fe` wraps a raw value together with
its field and overloads the arithmetic operators.

Every element has a canonical integer index, sum c_j N^j where N is the base
cardinality and c_j the index of coefficient j.  The same encoding orders the
candidate moduli searched by :func:`find_irreducible` and the element stream
of :func:`enumerate_field`.

Towers are at most two levels deep (prime -> F_q -> F_{q^r}), so that the
Frobenius x -> x^q and the trace to F_q are native operations.
"""

import functools
import json

from .numtheory import is_prime

__all__ = ['FieldDesc', 'Fe', 'FieldMismatch', 'EnumerationCapError',
           'prime_field', 'extension', 'field_tower', 'find_irreducible', 'is_irreducible',
           'frobenius', 'trace', 'quadratic_character', 'upsilon', 'enumerate_field',
           'format_element', 'parse_element', 'element_to_json', 'DEFAULT_ENUMERATION_CAP']

DEFAULT_ENUMERATION_CAP = 10**8


class FieldMismatch(ValueError):
    """Operands belong to different fields."""


class EnumerationCapError(ValueError):
    """A field is too large to enumerate under the configured cap."""


class FieldDesc:
    """Description of a finite field of odd characteristic.

    Use :func:`prime_field` and :func:`extension` rather than calling this
    directly; they validate the modulus and share instances.
    """

    __slots__ = ('p', 'base', 'modulus', 'degree', 'cardinality', 'depth', '_key', '_zero', '_one', '_mcache')

    # products in small F_q are memoized; everything above F_q reuses them
    MEMO_LIMIT = 4096

    def __init__(self, p, base=None, modulus=None):
        if p < 3 or not is_prime(p):
            raise ValueError(f'characteristic must be an odd prime, got {p}')
        self.p = p
        self.base = base
        if base is None:
            if modulus is not None:
                raise ValueError('prime fields take no modulus')
            self.modulus = None
            self.degree = 1
            self.cardinality = p
            self.depth = 0
            self._key = (p,)
            self._zero = 0
            self._one = 1
            self._mcache = None
        else:
            if base.p != p:
                raise ValueError('base field has a different characteristic')
            if base.depth >= 2:
                raise ValueError('tower depth is limited to two extensions')
            modulus = tuple(modulus)
            d = len(modulus) - 1
            if d < 1 or modulus[-1] != base.one_raw():
                raise ValueError('modulus must be monic of degree at least 1')
            self.modulus = modulus
            self.degree = d
            self.cardinality = base.cardinality**d
            self.depth = base.depth + 1
            self._key = (p, base._key, modulus)
            self._zero = (base.zero_raw(),) * d
            self._one = (base.one_raw(),) + (base.zero_raw(),) * (d - 1)
            self._mcache = {} if self.depth == 1 and self.cardinality <= self.MEMO_LIMIT else None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldDesc) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.base is None:
            return f'GF({self.p})'
        return f'GF({self.cardinality}) over {self.base!r}'

    @property
    def is_prime(self):
        return self.base is None

    @property
    def prime_field(self):
        F = self
        while F.base is not None:
            F = F.base
        return F

    # -- raw arithmetic ----------------------------------------------------

    def zero_raw(self):
        return self._zero

    def one_raw(self):
        return self._one

    def is_zero_raw(self, a):
        return a == self._zero

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        if self.base.base is None:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        if self.base.base is None:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return -a % self.p
        if self.base.base is None:
            p = self.p
            return tuple(-x % p for x in a)
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def scale(self, c, a):
        """Multiply the raw element a by the raw base-field scalar c."""
        if self.base is None:
            return c * a % self.p
        B = self.base
        if B.base is None:
            p = self.p
            return tuple(c * x % p for x in a)
        return tuple(B.mul(c, x) for x in a)

    def mul(self, a, b):
        if self.base is None:
            return a * b % self.p
        d = self.degree
        m = self.modulus
        B = self.base
        if B.base is None:
            cache = self._mcache
            if cache is not None:
                r = cache.get((a, b))
                if r is None:
                    r = cache[a, b] = self._mul_prime_base(a, b)
                return r
            return self._mul_prime_base(a, b)
        zero = B.zero_raw()
        badd, bmul, bsub = B.add, B.mul, B.sub
        c = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x != zero:
                for j, y in enumerate(b):
                    if y != zero:
                        c[i + j] = badd(c[i + j], bmul(x, y))
        for k in range(2 * d - 2, d - 1, -1):
            t = c[k]
            if t != zero:
                off = k - d
                for j in range(d):
                    c[off + j] = bsub(c[off + j], bmul(t, m[j]))
        return tuple(c[:d])

    def _mul_prime_base(self, a, b):
        d = self.degree
        m = self.modulus
        p = self.p
        c = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            t = c[k] % p
            if t:
                off = k - d
                for j in range(d):
                    c[off + j] -= t * m[j]
        return tuple(x % p for x in c[:d])

    def pow(self, a, n):
        if self.base is None:
            return pow(a, n, self.p)
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self._one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def inv(self, a):
        if self.is_zero_raw(a):
            raise ZeroDivisionError('inverse of zero')
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.cardinality - 2)

    def from_int(self, n):
        """Image of the integer n under Z -> F."""
        n %= self.p
        if self.base is None:
            return n
        return (self.base.from_int(n),) + (self.base.zero_raw(),) * (self.degree - 1)

    def embed(self, b):
        """Raw value of a raw base-field element, as a constant of this field."""
        return (b,) + (self.base.zero_raw(),) * (self.degree - 1)

    def index(self, a):
        if self.base is None:
            return a
        N = self.base.cardinality
        idx = 0
        for c in reversed(a):
            idx = idx * N + self.base.index(c)
        return idx

    def from_index(self, idx):
        if not 0 <= idx < self.cardinality:
            raise ValueError('index out of range')
        if self.base is None:
            return idx
        N = self.base.cardinality
        out = []
        for _ in range(self.degree):
            idx, c = divmod(idx, N)
            out.append(self.base.from_index(c))
        return tuple(out)

    def coerce(self, a):
        """Validate and canonicalize a raw value (accepts lists for tuples)."""
        if self.base is None:
            if isinstance(a, bool) or not isinstance(a, int):
                raise TypeError(f'residue expected for {self!r}, got {a!r}')
            return a % self.p
        a = tuple(a)
        if len(a) != self.degree:
            raise ValueError(f'expected {self.degree} coefficients, got {len(a)}')
        return tuple(self.base.coerce(c) for c in a)

    # -- element constructors ----------------------------------------------

    def __call__(self, value):
        if isinstance(value, Fe):
            if value.field == self:
                return value
            if self.base is not None and value.field == self.base:
                return Fe(self, self.embed(value.raw))
            raise FieldMismatch(f'{value!r} is not in {self!r}')
        if isinstance(value, int) and not isinstance(value, bool):
            return Fe(self, self.from_int(value))
        if self.base is not None and isinstance(value, (list, tuple)):
            return Fe(self, tuple(self.base(c).raw for c in value))
        if self.base is None and isinstance(value, (list, tuple)) and len(value) == 1:
            return self(value[0])
        raise TypeError(f'cannot build an element of {self!r} from {value!r}')

    def zero(self):
        return Fe(self, self._zero)

    def one(self):
        return Fe(self, self._one)

    def gen(self):
        """The class of x modulo the defining polynomial."""
        if self.base is None:
            raise ValueError('prime fields have no generator over a base')
        if self.degree == 1:
            return Fe(self, (self.base.neg(self.modulus[0]),))
        z = self.base.zero_raw()
        return Fe(self, (z, self.base.one_raw()) + (z,) * (self.degree - 2))

    def element(self, idx):
        return Fe(self, self.from_index(idx))

    def random_element(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return Fe(self, self.from_index(rng.randrange(lo, self.cardinality)))


@functools.total_ordering
class Fe:
    """Immutable element of a :class:`FieldDesc`."""

    __slots__ = ('field', 'raw')

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _pair(self, other):
        """Common field and raw operands; base-field elements are embedded."""
        F = self.field
        if isinstance(other, Fe):
            G = other.field
            if G is F or G == F:
                return F, self.raw, other.raw
            if F.base is not None and G == F.base:
                return F, self.raw, F.embed(other.raw)
            if G.base is not None and G.base == F:
                return G, G.embed(self.raw), other.raw
            raise FieldMismatch(f'{F!r} vs {G!r}')
        if isinstance(other, int) and not isinstance(other, bool):
            return F, self.raw, F.from_int(other)
        return None

    def __add__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.sub(a, b))

    def __rsub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.sub(b, a))

    def __mul__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.mul(a, F.inv(b)))

    def __rtruediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return Fe(F, F.mul(b, F.inv(a)))

    def __neg__(self):
        return Fe(self.field, self.field.neg(self.raw))

    def __pow__(self, n):
        return Fe(self.field, self.field.pow(self.raw, n))

    def inverse(self):
        return Fe(self.field, self.field.inv(self.raw))

    def __bool__(self):
        return not self.field.is_zero_raw(self.raw)

    def __eq__(self, other):
        if isinstance(other, Fe):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, int) and not isinstance(other, bool):
            return self.raw == self.field.from_int(other)
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, Fe):
            return NotImplemented
        return self.index < other.index

    def __hash__(self):
        return hash((self.field, self.raw))

    @property
    def coeffs(self):
        """Coordinates over the immediate base field, constant term first."""
        if self.field.base is None:
            return (self.raw,)
        return tuple(Fe(self.field.base, c) for c in self.raw)

    @property
    def index(self):
        return self.field.index(self.raw)

    def in_base(self):
        """This element as an element of the immediate base field, if it lies there."""
        F = self.field
        z = F.base.zero_raw()
        if any(c != z for c in self.raw[1:]):
            raise ValueError(f'{self} does not lie in the base field')
        return Fe(F.base, self.raw[0])

    def __repr__(self):
        return f'Fe({format_element(self)})'

    def __str__(self):
        return format_element(self)


# -- polynomials over raw field values (shared with polyring) ---------------

def _pstrip(F, a):
    z = F.zero_raw()
    while a and a[-1] == z:
        a.pop()
    return a


def _padd(F, a, b):
    z = F.zero_raw()
    n = max(len(a), len(b))
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return _pstrip(F, [F.add(x, y) for x, y in zip(a, b)])


def _psub(F, a, b):
    z = F.zero_raw()
    n = max(len(a), len(b))
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return _pstrip(F, [F.sub(x, y) for x, y in zip(a, b)])


def _pmul(F, a, b):
    if not a or not b:
        return []
    z = F.zero_raw()
    c = [z] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x != z:
            for j, y in enumerate(b):
                if y != z:
                    c[i + j] = add(c[i + j], mul(x, y))
    return _pstrip(F, c)


def _pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError('polynomial division by zero')
    a = list(a)
    z = F.zero_raw()
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    q = [z] * max(len(a) - db, 0)
    sub, mul = F.sub, F.mul
    for k in range(len(a) - 1, db - 1, -1):
        t = a[k]
        if t != z:
            t = mul(t, inv_lead)
            q[k - db] = t
            off = k - db
            for j in range(db + 1):
                a[off + j] = sub(a[off + j], mul(t, b[j]))
    return _pstrip(F, q), _pstrip(F, a[:db])


def _pmonic(F, a):
    if not a:
        return a
    c = F.inv(a[-1])
    return [F.mul(c, x) for x in a]


def _pgcd(F, a, b):
    a = _pmonic(F, _pstrip(F, list(a)))
    b = _pmonic(F, _pstrip(F, list(b)))
    while b:
        a, b = b, _pmonic(F, _pdivmod(F, a, b)[1])
    return a


def _ppowmod(F, a, n, m):
    result = [F.one_raw()]
    a = _pdivmod(F, a, m)[1]
    while n:
        if n & 1:
            result = _pdivmod(F, _pmul(F, result, a), m)[1]
        n >>= 1
        if n:
            a = _pdivmod(F, _pmul(F, a, a), m)[1]
    return result


def is_irreducible(base, f):
    """Ben-Or's test for a monic raw polynomial f (constant term first) over base.

    f of degree d is irreducible iff gcd(x^(N^k) - x, f) = 1 for k <= d/2;
    reducible candidates usually fail at small k.
    """
    f = _pstrip(base, list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == base.zero_raw():
        return False
    N = base.cardinality
    x = [base.zero_raw(), base.one_raw()]
    h = x
    for _ in range(d // 2):
        h = _ppowmod(base, h, N, f)
        if len(_pgcd(base, _psub(base, h, x), f)) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def find_irreducible(base, d):
    """Smallest monic irreducible polynomial of degree d over base.

    Candidates are ordered by the integer encoding of their lower coefficients
    (constant term least significant).  Returns a tuple of raw coefficients,
    constant term first, ending in 1.
    """
    if d < 1:
        raise ValueError('degree must be positive')
    N = base.cardinality
    one = base.one_raw()
    for idx in range(N**d):
        low = []
        k = idx
        for _ in range(d):
            k, c = divmod(k, N)
            low.append(base.from_index(c))
        f = low + [one]
        if is_irreducible(base, f):
            return tuple(f)
    raise AssertionError('no irreducible polynomial found')  # pragma: no cover


# -- constructors -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def prime_field(p):
    return FieldDesc(p)


@functools.lru_cache(maxsize=None)
def _extension(base, modulus):
    return FieldDesc(base.p, base, modulus)


def extension(base, d=None, modulus=None, check=True):
    """Extension of base by a monic irreducible modulus (found canonically if omitted).

    ``modulus`` may be given as raw values or as a list in the text format.
    """
    if modulus is None:
        if d is None:
            raise ValueError('need a degree or a modulus')
        modulus = find_irreducible(base, d)
    else:
        modulus = tuple(base.coerce(c) if not isinstance(c, Fe) else c.raw for c in modulus)
        if d is not None and len(modulus) - 1 != d:
            raise ValueError(f'modulus has degree {len(modulus) - 1}, expected {d}')
        if check and not is_irreducible(base, modulus):
            raise ValueError('modulus is not irreducible over the base field')
    return _extension(base, modulus)


def field_tower(p, e, r, base_modulus=None, ext_modulus=None):
    """Return (F_q, F_{q^r}) with q = p^e, F_{q^r} built directly over F_q."""
    Fp = prime_field(p)
    Fq = Fp if e == 1 and base_modulus is None else extension(Fp, e, base_modulus)
    Fqr = extension(Fq, r, ext_modulus)
    return Fq, Fqr


# -- field maps ---------------------------------------------------------------

def frobenius(x, j=1):
    """x^(q^j) where q is the cardinality of the immediate base; j is taken mod the degree."""
    F = x.field
    if F.base is None:
        raise ValueError('frobenius needs an extension field with a declared base')
    q = F.base.cardinality
    a = x.raw
    for _ in range(j % F.degree):
        a = F.pow(a, q)
    return Fe(F, a)


def trace(x):
    """Trace from x's field down to its immediate base field."""
    F = x.field
    if F.base is None:
        raise ValueError('trace needs an extension field with a declared base')
    q = F.base.cardinality
    a = x.raw
    total = a
    for _ in range(F.degree - 1):
        a = F.pow(a, q)
        total = F.add(total, a)
    z = F.base.zero_raw()
    if any(c != z for c in total[1:]):
        raise ArithmeticError('trace left the base field')
    return Fe(F.base, total[0])


def quadratic_character(x):
    """Quadratic character of x in its own field: 0, 1 or -1."""
    F = x.field
    if not x:
        return 0
    s = F.pow(x.raw, (F.cardinality - 1) // 2)
    return 1 if s == F.one_raw() else -1


def upsilon(x):
    """Zero indicator weight: N - 1 at zero, -1 elsewhere (N the field size)."""
    return x.field.cardinality - 1 if not x else -1


def enumerate_field(F, cap=DEFAULT_ENUMERATION_CAP, start=0, stop=None):
    """Yield the elements of F in index order (0 first, then 1).

    ``start``/``stop`` select an index range so independent workers can
    each take a disjoint slice.
    """
    if F.cardinality > cap:
        raise EnumerationCapError(f'{F!r} has {F.cardinality} elements, cap is {cap}')
    stop = F.cardinality if stop is None else min(stop, F.cardinality)
    for idx in range(start, stop):
        yield Fe(F, F.from_index(idx))


# -- text format ----------------------------------------------------------------

def element_to_json(x):
    """Nested-list form of an element: ints for prime fields, lists otherwise."""
    if x.field.base is None:
        return x.raw
    return [element_to_json(c) for c in x.coeffs]


def format_element(x):
    return json.dumps(element_to_json(x), separators=(',', ':'))


def parse_element(F, text):
    """Parse the bracketed coefficient format (constant term first).

    A prime-field element may be a bare integer or a one-entry list.
    """
    value = json.loads(text) if isinstance(text, str) else text
    return _build(F, value)


def _build(F, value):
    if F.base is None:
        if isinstance(value, list):
            if len(value) != 1:
                raise ValueError(f'prime-field element needs one residue, got {value!r}')
            value = value[0]
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f'residue expected, got {value!r}')
        return Fe(F, value % F.p)
    if not isinstance(value, list) or len(value) != F.degree:
        raise ValueError(f'expected a list of {F.degree} coefficients, got {value!r}')
    return Fe(F, tuple(_build(F.base, c).raw for c in value))
