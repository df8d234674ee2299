"""Seeded random checks of the symmetric-function identities behind the
circulant rank argument.

Each batch draws its instances from ``random.Random(seed)`` and returns a
:class:`BatchResult`; a failure records the instance that broke.
"""

import random
from dataclasses import dataclass, field

from .gf import prime_field, extension
from .polyring import Poly, hk_eval, vandermonde_products, poly_gcd, x_pow_minus_one
from .numtheory import factor

__all__ = ['BatchResult', 'check_chsp', 'check_relation', 'check_relation_ak', 'check_rem1',
           'check_innerproduct', 'run_all', 'BATCHES', 'multiplicative_order']

# fields the batches draw from: (p, e); q runs up to 343
FIELDS = ((3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2), (3, 3), (7, 2), (7, 3))


@dataclass
class BatchResult:
    name: str
    instances: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {'name': self.name, 'instances': self.instances, 'failures': len(self.failures),
                'first_failure': self.failures[0] if self.failures else None}


def _field(p, e):
    F = prime_field(p)
    return F if e == 1 else extension(F, e)


def _distinct(F, rng, k, nonzero=False):
    if F.cardinality - (1 if nonzero else 0) < k:
        raise ValueError('field too small for that many distinct points')
    seen = set()
    out = []
    while len(out) < k:
        x = F.random_element(rng, nonzero=nonzero)
        if x.raw not in seen:
            seen.add(x.raw)
            out.append(x)
    return out


def _pick_field(rng, min_size):
    while True:
        F = _field(*rng.choice(FIELDS))
        if F.cardinality > min_size:
            return F


def _describe(F, xs, **extra):
    return dict(field=repr(F), points=[str(x) for x in xs], **extra)


def check_chsp(n=1000, seed=0):
    """h_k by the recurrence equals the sum of x_l^(m+k-1) / prod (x_l - x_m)."""
    rng = random.Random(seed)
    res = BatchResult('chsp', n)
    for _ in range(n):
        m = rng.randint(1, 6)
        k = rng.randint(0, 8)
        F = _pick_field(rng, m)
        xs = _distinct(F, rng, m)
        if hk_eval(k, xs) != hk_eval(k, xs, method='rational'):
            res.failures.append(_describe(F, xs, k=k))
    return res


def check_relation(n=1000, seed=0):
    """sum_j x_j^(r-1) A_{k,j} h_{r-k+1}(x without x_j) = 0 for k >= 3."""
    rng = random.Random(seed)
    res = BatchResult('relation', n)
    for _ in range(n):
        k = rng.randint(3, 6)
        r = rng.randint(k, 12)
        F = _pick_field(rng, k)
        xs = _distinct(F, rng, k)
        total = F.zero()
        for j in range(1, k + 1):
            rest = xs[:j - 1] + xs[j:]
            total = total + xs[j - 1]**(r - 1) * vandermonde_products(xs, j) * hk_eval(r - k + 1, rest)
        if total:
            res.failures.append(_describe(F, xs, r=r))
    return res


def _product(F, xs):
    acc = F.one()
    for x in xs:
        acc = acc * x
    return acc


def check_relation_ak(n=1000, seed=0):
    """sum_j (x_1 ... x_{k+1} / x_j) A_{k+1,j} = A_{k+1}."""
    rng = random.Random(seed)
    res = BatchResult('relationAk', n)
    for _ in range(n):
        k = rng.randint(2, 6)
        F = _pick_field(rng, k + 2)
        xs = _distinct(F, rng, k + 1, nonzero=True)
        e = _product(F, xs)
        total = F.zero()
        for j in range(1, k + 2):
            total = total + e / xs[j - 1] * vandermonde_products(xs, j)
        if total != vandermonde_products(xs):
            res.failures.append(_describe(F, xs))
    return res


def check_rem1(n=1000, seed=0):
    """sum_j (x_1 ... x_k / x_j) / prod_{i != j} (x_i - x_j) = 1."""
    rng = random.Random(seed)
    res = BatchResult('rem1', n)
    for _ in range(n):
        k = rng.randint(2, 7)
        F = _pick_field(rng, k + 1)
        xs = _distinct(F, rng, k, nonzero=True)
        e = _product(F, xs)
        total = F.zero()
        for j, xj in enumerate(xs):
            den = _product(F, [xi - xj for i, xi in enumerate(xs) if i != j])
            total = total + e / xj / den
        if total != F.one():
            res.failures.append(_describe(F, xs))
    return res


def multiplicative_order(q, r):
    if r == 1:
        return 1
    k, acc = 1, q % r
    while acc != 1:
        acc = acc * q % r
        k += 1
    return k


def _cosets(q, r):
    """Cyclotomic cosets {t q^j mod r} partitioning Z/r."""
    seen, out = set(), []
    for t in range(r):
        if t in seen:
            continue
        orbit = []
        u = t
        while u not in orbit:
            orbit.append(u)
            u = u * q % r
        seen.update(orbit)
        out.append(orbit)
    return out


def _root_of_unity(K, r, rng):
    """An element of exact order r in K (r divides |K| - 1)."""
    Q = K.cardinality
    primes = [t for t, _ in factor(r)]
    while True:
        z = K.random_element(rng, nonzero=True)**((Q - 1) // r)
        if all(z**(r // t) != K.one() for t in primes):
            return z


def check_innerproduct(n=1000, seed=0, max_roots=3):
    """For j roots a_1..a_j of g = gcd(f, x^r - 1):
    sum_{l=0}^{r-j} f_l h_l(a_1, ..., a_j) = 0.

    Instances plant a union of cyclotomic cosets of total size m <= 3 as a
    factor of f, so the roots live in F_{q^k} with k the order of q mod r.
    """
    rng = random.Random(seed)
    res = BatchResult('innerproduct', n)
    done = 0
    while done < n:
        p, e = rng.choice(FIELDS)
        F = _field(p, e)
        q = F.cardinality
        r = rng.randint(2, 12)
        if r % p == 0:
            continue
        cosets = [c for c in _cosets(q, r) if len(c) <= max_roots]
        rng.shuffle(cosets)
        if rng.random() < 0.5:
            chosen = list(cosets[0])
        else:
            chosen = []
            for c in cosets:
                if len(chosen) + len(c) <= max_roots:
                    chosen.extend(c)
        if len(chosen) >= r:
            continue
        k = multiplicative_order(q, r)
        K = F if k == 1 else extension(F, k)
        z = _root_of_unity(K, r, rng)
        roots = [z**t for t in chosen]
        # planted factor prod (x - a) has coefficients in F_q since the roots form Frobenius orbits
        planted = [K.one()]
        for a in roots:
            nxt = [K.zero()] * (len(planted) + 1)
            for d, c in enumerate(planted):
                nxt[d + 1] = nxt[d + 1] + c
                nxt[d] = nxt[d] - a * c
            planted = nxt
        g_low = Poly(F, [c.in_base() if K is not F else c for c in planted])
        cofactor_deg = rng.randint(0, r - 1 - g_low.degree)
        u = Poly(F, [F.random_element(rng) for _ in range(cofactor_deg)] + [F.random_element(rng, nonzero=True)])
        f = g_low * u
        g = poly_gcd(f, x_pow_minus_one(F, r))
        if (g % g_low) or len(f.raw) > r:
            res.failures.append({'field': repr(F), 'r': r, 'reason': 'planted factor lost'})
            done += 1
            continue
        coeffs = list(f.coeffs) + [F.zero()] * (r - len(f.raw))
        for j in range(1, len(roots) + 1):
            pts = roots[:j]
            total = K.zero()
            for l in range(r - j + 1):
                if coeffs[l]:
                    total = total + coeffs[l] * hk_eval(l, pts)
            if total:
                res.failures.append({'field': repr(F), 'r': r, 'j': j, 'roots': [str(a) for a in pts]})
                break
        done += 1
    return res


BATCHES = {
    'chsp': check_chsp,
    'relation': check_relation,
    'relationAk': check_relation_ak,
    'rem1': check_rem1,
    'innerproduct': check_innerproduct,
}


def run_all(n=1000, seed=0, names=None):
    return [BATCHES[name](n=n, seed=seed) for name in (names or BATCHES)]
