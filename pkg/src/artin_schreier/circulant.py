"""Dense and circulant matrices over a finite field.

Ranks come from Gaussian elimination, or for circulants from the degree of
gcd(f, x^r - 1) where f is the associated polynomial of the generator.
"""

import json

from .gf import Fe, FieldMismatch, element_to_json
from .polyring import Poly, poly_gcd, is_self_reciprocal, x_pow_minus_one, format_poly

__all__ = ['DenseMatrix', 'CirculantMatrix', 'HypothesisError',
           'rank_gaussian', 'rank_via_gcd', 'reduced_block', 'det', 'kernel_basis', 'rank_report']


class HypothesisError(ValueError):
    """A conditional rank formula was asked to run outside its hypotheses."""

    def __init__(self, condition, message):
        super().__init__(message)
        self.condition = condition


class DenseMatrix:
    """rows x cols matrix with raw entries in row-major order."""

    __slots__ = ('field', 'rows', 'cols', 'entries')

    def __init__(self, field, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f'{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}')
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(row) for row in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != m:
                raise ValueError('ragged rows')
            for c in row:
                if isinstance(c, Fe):
                    if c.field != field:
                        raise FieldMismatch(f'entry {c} is not in {field!r}')
                    flat.append(c.raw)
                else:
                    flat.append(field(c).raw)
        return cls(field, n, m, flat)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero_raw(), field.one_raw()
        return cls(field, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero_raw()] * (rows * cols))

    def raw_rows(self):
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return Fe(self.field, self.entries[i * self.cols + j])

    def tolist(self):
        return [[Fe(self.field, a) for a in row] for row in self.raw_rows()]

    @property
    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        r, c = self.rows, self.cols
        e = self.entries
        return DenseMatrix(self.field, c, r, [e[i * c + j] for j in range(c) for i in range(r)])

    def is_symmetric(self):
        return self.is_square and self.transpose().entries == self.entries

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        c = self.cols
        return DenseMatrix(self.field, len(rows), len(cols),
                           [self.entries[i * c + j] for i in rows for j in cols])

    def __matmul__(self, other):
        if self.field != other.field:
            raise FieldMismatch('matrices over different fields')
        if self.cols != other.rows:
            raise ValueError('shape mismatch')
        F = self.field
        A = self.raw_rows()
        Bt = other.transpose().raw_rows()
        out = []
        for row in A:
            for col in Bt:
                acc = F.zero_raw()
                for a, b in zip(row, col):
                    acc = F.add(acc, F.mul(a, b))
                out.append(acc)
        return DenseMatrix(F, self.rows, other.cols, out)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError('shape mismatch')
        F = self.field
        return DenseMatrix(F, self.rows, self.cols, [F.add(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c):
        F = self.field
        c = F(c).raw
        return DenseMatrix(F, self.rows, self.cols, [F.mul(c, a) for a in self.entries])

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def to_json(self):
        return [[element_to_json(x) for x in row] for row in self.tolist()]

    def __repr__(self):
        return f'DenseMatrix({json.dumps(self.to_json(), separators=(",", ":"))})'


class CirculantMatrix:
    """Circulant with entry (i, j) = a_k for k = j - i mod r."""

    __slots__ = ('field', 'generator')

    def __init__(self, field, generator):
        gen = []
        for c in generator:
            if isinstance(c, Fe):
                if c.field != field:
                    raise FieldMismatch(f'entry {c} is not in {field!r}')
                gen.append(c.raw)
            else:
                gen.append(field(c).raw)
        if not gen:
            raise ValueError('a circulant needs r >= 1')
        self.field = field
        self.generator = tuple(gen)

    @property
    def r(self):
        return len(self.generator)

    def entry(self, i, j):
        return Fe(self.field, self.generator[(j - i) % self.r])

    def dense(self):
        r, g = self.r, self.generator
        return DenseMatrix(self.field, r, r, [g[(j - i) % r] for i in range(r) for j in range(r)])

    def associated_polynomial(self):
        return Poly.from_raw(self.field, self.generator)

    def __repr__(self):
        return f'CirculantMatrix({json.dumps([element_to_json(Fe(self.field, a)) for a in self.generator], separators=(",", ":"))})'


def _echelon(F, rows, ncols):
    """Row-reduce a private copy in place; returns (rank, pivots, det factor)."""
    rank = 0
    pivots = []
    sign_det = F.one_raw()
    nrows = len(rows)
    zero = F.zero_raw()
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][col] != zero:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign_det = F.neg(sign_det)
        prow = rows[rank]
        pv = prow[col]
        sign_det = F.mul(sign_det, pv)
        inv = F.inv(pv)
        prow = [F.mul(inv, a) for a in prow]
        rows[rank] = prow
        for i in range(nrows):
            if i != rank and rows[i][col] != zero:
                c = rows[i][col]
                rows[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots, sign_det


def rank_gaussian(M):
    """Row rank by Gaussian elimination with first-nonzero pivoting."""
    if isinstance(M, CirculantMatrix):
        M = M.dense()
    rank, _, _ = _echelon(M.field, M.raw_rows(), M.cols)
    return rank


def det(M):
    """Determinant by elimination over the field."""
    if isinstance(M, CirculantMatrix):
        M = M.dense()
    if not M.is_square:
        raise ValueError(f'determinant of a non-square {M.rows}x{M.cols} matrix')
    F = M.field
    if M.rows == 0:
        return F.one()
    rank, _, d = _echelon(F, M.raw_rows(), M.cols)
    return Fe(F, d) if rank == M.rows else F.zero()


def kernel_basis(M):
    """Basis (as raw row vectors) of {z : M z = 0}."""
    F = M.field
    rows = M.raw_rows()
    rank, pivots, _ = _echelon(F, rows, M.cols)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for fcol in free:
        z = [F.zero_raw()] * M.cols
        z[fcol] = F.one_raw()
        for k, pcol in enumerate(pivots):
            z[pcol] = F.neg(rows[k][fcol])
        basis.append(z)
    return basis


def rank_via_gcd(C):
    """Rank r - deg g with g = gcd(f, x^r - 1), f the associated polynomial.

    Refuses to answer unless g is self-reciprocal and p does not divide r;
    raises :class:`HypothesisError` naming the failed condition.
    """
    F = C.field
    r = C.r
    if r % F.p == 0:
        raise HypothesisError('gcd(r,p)=1', f'p = {F.p} divides r = {r}')
    g = poly_gcd(C.associated_polynomial(), x_pow_minus_one(F, r))
    if not is_self_reciprocal(g):
        raise HypothesisError('self-reciprocal', f'gcd {format_poly(g)} is not self-reciprocal')
    m = g.degree
    return r - m, m, g


def reduced_block(C, l):
    """Top-left l x l block of the circulant."""
    if not 1 <= l <= C.r:
        raise ValueError(f'block size {l} outside 1..{C.r}')
    r, g = C.r, C.generator
    return DenseMatrix(C.field, l, l, [g[(j - i) % r] for i in range(l) for j in range(l)])


def rank_report(C):
    """Rank data for the command line: both methods, g and det of the reduced block."""
    F = C.field
    r = C.r
    f = C.associated_polynomial()
    g = poly_gcd(f, x_pow_minus_one(F, r))
    rank = rank_gaussian(C)
    report = {
        'r': r,
        'generator': [element_to_json(Fe(F, a)) for a in C.generator],
        'f': json.loads(format_poly(f)),
        'g': json.loads(format_poly(g)),
        'self_reciprocal': is_self_reciprocal(g),
        'm': g.degree,
        'rank': rank,
    }
    try:
        report['rank_gcd'], _, _ = rank_via_gcd(C)
    except HypothesisError as exc:
        report['rank_gcd'] = None
        report['hypothesis_failure'] = exc.condition
    report['det_reduced'] = element_to_json(det(reduced_block(C, rank))) if rank else None
    return report
