"""Count points of y^q - y = x P(x) - lambda three ways.

Builds F_3 and the curve with P = x^(q^2) - x over F_{3^5}, then prints
the brute-force count next to the quadratic-form pipeline and the closed
formulas, together with the intermediate constants each method used.

    python3 demos/count_points.py
"""

from artin_schreier.gf import prime_field
from artin_schreier.curves import CurveSpec, verify

F = prime_field(3)

for lam in range(3):
    spec = CurveSpec.xqi(F, 5, 2, lam)
    rep = verify(spec)
    print(f'lambda = {lam}')
    for m in rep.methods:
        print(f'  {m.name:16s} #C = {m.points:4d}  {m.intermediates}')
    print('  agree:', rep.agreement)

# a curve with a P outside the x^(q^i) - x family
from artin_schreier.polyring import LinearizedPoly

P = LinearizedPoly(F, [1, 2, 1])
spec = CurveSpec(F, 6, P, F(1))
rep = verify(spec, ('brute', 'pipeline', 'formula_general'))
print('P = x + 2x^3 + x^9 over F_3^6, lambda = 1:', {m.name: m.points for m in rep.methods})
