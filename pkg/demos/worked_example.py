"""The degree-7 circulant over F_27 and the curve built from it.

F_27 is F_3[a]/(a^3 + 2a + 1).  The circulant comes from

    f = (x^2 + 2a^2 x + 1)(x^2 + (2a^2 + a + 2)x + 1)(x - a),

whose gcd with x^7 - 1 is the product of the two quadratics.  Typeset
expansions of f are easy to get wrong in one coefficient; the script
shows what that does to the rank.  It then counts the points of
y^27 - y = x P(x) - lambda over F_{27^7} through the quadratic form,
since 27^7 elements are too many to enumerate.

    python3 demos/worked_example.py
"""

from artin_schreier.gf import prime_field, extension, parse_element, quadratic_character
from artin_schreier.polyring import Poly, LinearizedPoly, format_poly
from artin_schreier.circulant import CirculantMatrix, rank_report
from artin_schreier.curves import CurveSpec, pipeline_points, formula_points_general

F = extension(prime_field(3), 3)
a = F.gen()
x = Poly(F, [0, 1])
f = (x**2 + a**2 * 2 * x + 1) * (x**2 + (a**2 * 2 + a + 2) * x + 1) * (x - a)
print('f =', format_poly(f))

variants = {
    'expanded product': list(f.coeffs),
    'x-coefficient a^2 + 2a': [parse_element(F, c) for c in
                               ([0, 2, 0], [0, 2, 1], [1, 2, 0], [1, 1, 1], [2, 0, 1], [1, 0, 0])],
}
for name, coeffs in variants.items():
    rep = rank_report(CirculantMatrix(F, coeffs + [F.zero()]))
    print(f'{name}: rank {rep["rank"]}, g = {rep["g"]}, det of reduced block = {rep["det_reduced"]}')

P = LinearizedPoly(F, list(f.coeffs))
q = 27
print('points on y^27 - y = x P(x) - lambda over F_27^7, as q^7 + k q^6:')
for lam in (F.zero(), F.one(), a):
    spec = CurveSpec(F, 7, P, lam)
    n = pipeline_points(spec).points
    assert n == formula_points_general(spec).points
    print(f'  lambda = {lam}, chi = {quadratic_character(lam):2d}: k = {(n - q**7) // q**6}')
