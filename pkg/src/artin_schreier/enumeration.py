"""Vectorized exhaustive evaluation of Tr(x P(x)) over F_{q^r}.

Elements of F_q are handled by index through addition and multiplication
tables built from the scalar arithmetic in :mod:`gf`.  An element of
F_{q^r} is its coefficient vector over F_q, and a chunk of consecutive
element indices becomes an (r, B) array of base-q digits.  With t the
generator of F_{q^r} over F_q,

    Tr(x P(x)) = sum_{j,k} x_j P(x)_k Tr(t^(j+k)),

so one pass needs the matrix of the F_q-linear map P and the traces of
t^0 .. t^(2r-2), all computed once with exact scalar arithmetic.
"""

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .gf import Fe, trace, EnumerationCapError

__all__ = ['FieldTables', 'trace_histogram', 'pair_count', 'CHUNK']

# elements per vectorized block; fixed so results never depend on workers
CHUNK = 1 << 16


class FieldTables:
    """Index-level data for evaluating Tr(x P(x)) on F_{q^r} = E."""

    def __init__(self, P, E):
        F = P.field
        if E.base != F:
            raise ValueError('E must extend the coefficient field of P')
        q, r = F.cardinality, E.degree
        self.q, self.r = q, r
        elems = [F.element(k) for k in range(q)]
        self.add = np.array([[F.index(F.add(a.raw, b.raw)) for b in elems] for a in elems], dtype=np.int64)
        self.mul = np.array([[F.index(F.mul(a.raw, b.raw)) for b in elems] for a in elems], dtype=np.int64)
        self.neg = np.array([F.index(F.neg(a.raw)) for a in elems], dtype=np.int64)
        basis = [_basis(E, j) for j in range(r)]
        # column k holds the coordinates of P(t^k)
        images = [P(b) for b in basis]
        self.P = np.array([[F.index(images[k].raw[j]) for k in range(r)] for j in range(r)], dtype=np.int64)
        t = _basis(E, 1) if r > 1 else E.one()
        power = E.one()
        traces = []
        for _ in range(2 * r - 1):
            traces.append(F.index(trace(power).raw))
            power = power * t
        self.traces = np.array(traces, dtype=np.int64)
        # x^r = -sum m_j x^j, used when a full product is needed
        self.reduce = np.array([F.index(F.neg(c)) for c in E.modulus[:-1]], dtype=np.int64)
        ash = [b**q - b for b in basis]
        self.ash = np.array([[F.index(ash[k].raw[j]) for k in range(r)] for j in range(r)], dtype=np.int64)

    def digits(self, start, stop):
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((self.r, idx.size), dtype=np.int64)
        for j in range(self.r):
            idx, out[j] = np.divmod(idx, self.q)
        return out

    def linear(self, M, z):
        """Apply an F_q matrix (indices) to the columns of z."""
        add, mul = self.add, self.mul
        out = np.zeros_like(z)
        for j in range(self.r):
            acc = np.zeros(z.shape[1], dtype=np.int64)
            for k in range(self.r):
                if M[j, k]:
                    acc = add[acc, mul[M[j, k], z[k]]]
            out[j] = acc
        return out

    def trace_values(self, z):
        add, mul = self.add, self.mul
        w = self.linear(self.P, z)
        acc = np.zeros(z.shape[1], dtype=np.int64)
        for j in range(self.r):
            for k in range(self.r):
                t = self.traces[j + k]
                if t:
                    acc = add[acc, mul[t, mul[z[j], w[k]]]]
        return acc

    def products(self, z):
        """Coordinates of x P(x) for every column x of z."""
        add, mul, r = self.add, self.mul, self.r
        w = self.linear(self.P, z)
        conv = np.zeros((2 * r - 1, z.shape[1]), dtype=np.int64)
        for j in range(r):
            for k in range(r):
                conv[j + k] = add[conv[j + k], mul[z[j], w[k]]]
        for top in range(2 * r - 2, r - 1, -1):
            c = conv[top]
            for j in range(r):
                if self.reduce[j]:
                    conv[top - r + j] = add[conv[top - r + j], mul[self.reduce[j], c]]
        return conv[:r]

    def encode(self, z):
        idx = np.zeros(z.shape[1], dtype=np.int64)
        for j in range(self.r - 1, -1, -1):
            idx = idx * self.q + z[j]
        return idx


def _basis(E, j):
    F = E.base
    raw = [F.zero_raw()] * E.degree
    raw[j] = F.one_raw()
    return Fe(E, tuple(raw))


def _histogram_chunk(args):
    tables, start, stop = args
    values = tables.trace_values(tables.digits(start, stop))
    return np.bincount(values, minlength=tables.q)


def _chunks(total):
    return [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]


def trace_histogram(P, E, cap, workers=1):
    """counts[c] = |{x in E : Tr(x P(x)) = c}| indexed by the F_q index of c."""
    total = E.cardinality
    if total > cap:
        raise EnumerationCapError(f'{E!r} has {total} elements, cap is {cap}')
    tables = FieldTables(P, E)
    jobs = [(tables, s, e) for s, e in _chunks(total)]
    counts = np.zeros(tables.q, dtype=np.int64)
    if workers and workers > 1 and len(jobs) > 1:
        workers = min(workers, os.cpu_count() or 1, len(jobs))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_histogram_chunk, jobs):
                counts += part
    else:
        for job in jobs:
            counts += _histogram_chunk(job)
    return [int(c) for c in counts]


def pair_count(P, E, lam):
    """|{(x, y) in E^2 : y^q - y = x P(x) - lam}|, joining the two sides by value."""
    tables = FieldTables(P, E)
    total = E.cardinality
    z = tables.digits(0, total)
    lhs = np.bincount(tables.encode(tables.linear(tables.ash, z)), minlength=total)
    rhs = tables.products(z)
    lam_idx = lam.field.index(lam.raw)
    rhs[0] = tables.add[rhs[0], tables.neg[lam_idx]]
    return int(lhs[tables.encode(rhs)].sum())
