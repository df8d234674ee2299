"""Symmetric quadratic forms over F_q and the form x -> Tr(x P(x)).

The circulant Gram matrix A = 1/2 sum a_j (S^j + S^-j), S the cyclic shift,
describes Tr(x P(x)) only after extending scalars to F_{q^r}: in coordinates
x, x^q, ..., x^(q^(r-1)) the form is z^T A z, and Frobenius permutes those
coordinates cyclically.  Over F_q the two forms are twists of each other by
that shift.  They share rank, and their discriminant classes differ by the
sign of det(S) on the quotient by the radical.  :func:`gram_matrix` records
that sign as ``twist`` and :func:`count_quadric_solutions` applies it, so
counts on a gram form are counts of the trace form.  For odd r the sign is
always +1 (the circulant is then the Gram matrix in a self-dual normal
basis).  For even r it is -1 when the radical dimension is 0, and it can go
either way otherwise.
"""

import warnings
from math import gcd

from .gf import Fe, trace, quadratic_character
from .polyring import Poly, poly_gcd, x_pow_minus_one
from .circulant import DenseMatrix, det, kernel_basis, _echelon
from .numtheory import valuation

__all__ = ['SymQuadForm', 'Diagonalization', 'RadicalHypothesisWarning',
           'gram_matrix', 'trace_form_matrix', 'diagonalize', 'count_quadric_solutions', 'quadric_count',
           'shift_twist', 'shift_twist_poly', 'symmetrized_polynomial',
           'radical_dim_poly', 'radical_dim_closed', 'form_report']


class RadicalHypothesisWarning(UserWarning):
    """The polynomial radical formula was used with a_0 = 0."""


class Diagonalization:
    """T A T^T = diag(entries); v zero entries; disc_class the class of their nonzero product."""

    __slots__ = ('entries', 'transform', 'v', 'disc_class')

    def __init__(self, entries, transform, v, disc_class):
        self.entries = tuple(entries)
        self.transform = transform
        self.v = v
        self.disc_class = disc_class


class SymQuadForm:
    """z -> z^T A z on F_q^n.

    ``twist`` is +1 for a form taken at face value, or the descent sign
    described in the module docstring for a circulant Gram matrix.
    """

    __slots__ = ('field', 'matrix', 'twist', 'diag')

    def __init__(self, field, matrix, twist=1, diag=None):
        if matrix.field != field:
            raise ValueError('matrix is over a different field')
        if not matrix.is_symmetric():
            raise ValueError('quadratic form matrix must be symmetric')
        if twist not in (1, -1):
            raise ValueError('twist must be +1 or -1')
        self.field = field
        self.matrix = matrix
        self.twist = twist
        self.diag = diag

    @property
    def n(self):
        return self.matrix.rows

    @property
    def v(self):
        return None if self.diag is None else self.diag.v

    @property
    def disc_class(self):
        return None if self.diag is None else self.diag.disc_class

    def __call__(self, z):
        """Evaluate z^T A z at a vector of field elements or ints."""
        F = self.field
        z = [F(c).raw for c in z]
        rows = self.matrix.raw_rows()
        acc = F.zero_raw()
        for i, row in enumerate(rows):
            s = F.zero_raw()
            for j, a in enumerate(row):
                s = F.add(s, F.mul(a, z[j]))
            acc = F.add(acc, F.mul(z[i], s))
        return Fe(F, acc)


def symmetrized_polynomial(P, r):
    """sum_j a_j (x^j + x^(r-j)) reduced mod x^r - 1; twice the circulant polynomial of A."""
    F = P.field
    if P.q_degree >= r:
        raise ValueError(f'q-degree {P.q_degree} must be below r = {r}')
    coeffs = [F.zero_raw()] * r
    for j, a in enumerate(P.raw):
        coeffs[j % r] = F.add(coeffs[j % r], a)
        coeffs[(r - j) % r] = F.add(coeffs[(r - j) % r], a)
    return Poly.from_raw(F, coeffs)


def shift_twist(A):
    """det of the cyclic shift acting on F_q^r modulo ker A, as +1 or -1.

    A must commute with the shift (any circulant does).  Computed by
    elimination: the kernel is shift-stable, so the shift restricted to it
    has a matrix in the kernel basis.
    """
    F = A.field
    r = A.rows
    det_full = 1 if r % 2 else -1
    K = kernel_basis(A)
    if not K:
        return det_full
    v = len(K)
    # shift image of each kernel vector, expressed in the kernel basis
    # by solving [K^T | images] with elimination
    images = [[k[(j + 1) % r] for j in range(r)] for k in K]
    aug = [[K[b][j] for b in range(v)] + [images[c][j] for c in range(v)] for j in range(r)]
    rank, pivots, _ = _echelon(F, aug, 2 * v)
    if rank != v or pivots[:v] != list(range(v)):
        raise ArithmeticError('kernel is not stable under the shift')
    M = DenseMatrix(F, v, v, [aug[b][v + c] for b in range(v) for c in range(v)])
    d = det(M)
    if d == F.one():
        d_ker = 1
    elif d == -F.one():
        d_ker = -1
    else:
        raise ArithmeticError('shift on the radical has determinant other than +-1')
    return det_full * d_ker


def shift_twist_poly(P, r):
    """Closed form of :func:`shift_twist` for the gram matrix of P.

    The radical is F_q[x]/(g) with g = gcd(symmetrized polynomial, x^r - 1),
    the shift acting as x, so det on it is (-1)^deg(g) g(0).
    """
    F = P.field
    g = poly_gcd(symmetrized_polynomial(P, r), x_pow_minus_one(F, r))
    det_full = 1 if r % 2 else -1
    if not g:
        raise ValueError('zero form: the radical is everything')
    g0 = g.coeff(0)
    sign = (-1) ** g.degree
    if g0 == F.one():
        return det_full * sign
    if g0 == -F.one():
        return -det_full * sign
    raise ArithmeticError('gcd has constant term other than +-1')


def gram_matrix(P, r):
    """Circulant form 1/2 sum a_j (S^j + S^-j) for Tr(x P(x)) on F_{q^r}, with its descent twist."""
    F = P.field
    l = P.q_degree
    if l >= r:
        raise ValueError(f'q-degree {l} must be below r = {r}')
    half = F.inv(F.from_int(2))
    gen = [F.zero_raw()] * r
    for j, a in enumerate(P.raw):
        ha = F.mul(half, a)
        gen[j % r] = F.add(gen[j % r], ha)
        gen[(-j) % r] = F.add(gen[(-j) % r], ha)
    A = DenseMatrix(F, r, r, [gen[(j - i) % r] for i in range(r) for j in range(r)])
    return SymQuadForm(F, A, twist=shift_twist(A))


def trace_form_matrix(P, E):
    """Gram matrix of Tr(x P(x)) in the power basis 1, t, ..., t^(r-1) of E over F_q.

    Entry (j, k) is 1/2 Tr(b_j P(b_k) + b_k P(b_j)); the form is taken at face value.
    """
    F = P.field
    if E.base != F:
        raise ValueError('E must be a degree-r extension of the coefficient field')
    r = E.degree
    basis = []
    for j in range(r):
        raw = [F.zero_raw()] * r
        raw[j] = F.one_raw()
        basis.append(Fe(E, tuple(raw)))
    images = [P(b) for b in basis]
    half = F.inv(F.from_int(2))
    entries = []
    for j in range(r):
        for k in range(r):
            t = trace(basis[j] * images[k] + basis[k] * images[j])
            entries.append(F.mul(half, t.raw))
    return SymQuadForm(F, DenseMatrix(F, r, r, entries))


def diagonalize(form):
    """Congruence diagonalization T A T^T = D over F_q (q odd).

    Pivot policy: the first nonzero diagonal entry of the active block;
    failing that, the first nonzero off-diagonal entry (i, j), after
    x_i <- x_i + x_j makes the (i, i) entry 2 a_ij != 0.
    """
    F = form.field
    n = form.n
    A = form.matrix.raw_rows()
    T = DenseMatrix.identity(F, n).raw_rows()
    zero = F.zero_raw()

    def swap(i, k):
        A[i], A[k] = A[k], A[i]
        for row in A:
            row[i], row[k] = row[k], row[i]
        T[i], T[k] = T[k], T[i]

    def add_to(i, j, c):
        # x_i <- x_i + c x_j on rows and columns
        A[i] = [F.add(a, F.mul(c, b)) for a, b in zip(A[i], A[j])]
        for row in A:
            row[i] = F.add(row[i], F.mul(c, row[j]))
        T[i] = [F.add(a, F.mul(c, b)) for a, b in zip(T[i], T[j])]

    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][i] != zero), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j] != zero), None)
            if pair is None:
                break
            i, j = pair
            add_to(i, j, F.one_raw())
            piv = i
        if piv != k:
            swap(piv, k)
        inv = F.inv(A[k][k])
        for j in range(k + 1, n):
            if A[j][k] != zero:
                add_to(j, k, F.neg(F.mul(A[j][k], inv)))

    entries = [A[i][i] for i in range(n)]
    nonzero = [d for d in entries if d != zero]
    v = n - len(nonzero)
    if nonzero:
        prod = F.one_raw()
        for d in nonzero:
            prod = F.mul(prod, d)
        disc = quadratic_character(Fe(F, prod))
    else:
        disc = 0
    rec = Diagonalization(entries, DenseMatrix(F, n, n, [a for row in T for a in row]), v, disc)
    return SymQuadForm(F, form.matrix, form.twist, rec)


def count_quadric_solutions(form, c):
    """|{z in F_q^n : Q(z) = c}| from n, the radical dimension v and the discriminant class."""
    if form.diag is None:
        raise ValueError('diagonalize the form first')
    disc = form.disc_class * form.twist if form.v < form.n else 0
    return quadric_count(form.field, form.n, form.v, disc, c)


def quadric_count(F, n, v, disc, c):
    """Solutions of Q(z) = c for a form on F_q^n with radical dimension v whose
    nondegenerate part has discriminant class disc (ignored when v = n)."""
    c = F(c)
    q = F.cardinality
    if v == n:
        return q**n if not c else 0
    k = n - v
    if k % 2 == 0:
        D = disc * quadratic_character(F((-1) ** (k // 2)))
        nu = q - 1 if not c else -1
        return q**(n - 1) + nu * D * q**((n + v - 2) // 2)
    if not c:
        return q**(n - 1)
    D = disc * quadratic_character(F((-1) ** ((k - 1) // 2)) * c)
    return q**(n - 1) + D * q**((n + v - 1) // 2)


def radical_dim_poly(P, r):
    """deg gcd(sum_j a_j (x^j + x^(r-j)), x^r - 1).

    The formula is stated for a_0 != 0; otherwise a warning is issued and
    the elimination value is returned (the formula's value is ignored).
    """
    F = P.field
    if P.raw[0] == F.zero_raw():
        warnings.warn('a_0 = 0: radical dimension taken from elimination', RadicalHypothesisWarning)
        return diagonalize(gram_matrix(P, r)).v
    g = poly_gcd(symmetrized_polynomial(P, r), x_pow_minus_one(F, r))
    return g.degree


def radical_dim_closed(i, r, p):
    """Radical dimension for P = x^(q^i) - x: gcd(r', i') min(p^u, 2 p^s),
    where r = p^u r' and i = p^s i' with p prime to r' and i'."""
    if not 0 < i < r:
        raise ValueError(f'need 0 < i < r, got i={i}, r={r}')
    u = valuation(p, r)
    s = valuation(p, i)
    return gcd(r // p**u, i // p**s) * min(p**u, 2 * p**s)


def form_report(form):
    """JSON-ready summary: n, v, disc_class, twist, matrix."""
    if form.diag is None:
        form = diagonalize(form)
    return {
        'n': form.n,
        'v': form.v,
        'disc_class': form.disc_class,
        'twist': form.twist,
        'matrix': form.matrix.to_json(),
    }
