"""Implicit equations of the curves bounding the beta-plane strata.

The outer hypocycloid beta(theta) = -3(2 e^{2 i theta} + e^{-4 i theta}) is
implicitised by eliminating w = e^{i theta} with a resultant, and the result is
compared with the discriminant of phi for the spacelike normal form. The
polynomial printed last is the one stored in include/umbilic/strata.hpp.
"""
import sympy as sp

s, t, w, p = sp.symbols("s t w p")

# beta = s + i t and its conjugate as Laurent polynomials in w (|w| = 1).
beta = -3 * (2 * w**2 + w**-4)
beta_bar = -3 * (2 * w**-2 + w**4)
eq1 = sp.expand((beta - (s + sp.I * t)) * w**4)
eq2 = sp.expand((beta_bar - (s - sp.I * t)) * w**4)
res = sp.factor(sp.resultant(eq1, eq2, w))
print("resultant:", res)

# phi for the 1-jet (t x + (3 - s) y, -2((s + 3) x + t y), -(t x + (3 - s) y)).
phi = (3 - s) * p**3 - t * p**2 - (9 + s) * p - t
disc = sp.factor(sp.discriminant(phi, p))
print("disc phi:", disc)

curve = s**4 + 24 * s**3 + 2 * s**2 * t**2 + 162 * s**2 - 72 * s * t**2 + t**4 + 162 * t**2 - 2187
for r in (sp.expand(res), sp.expand(disc)):
    q, rem = sp.div(sp.Poly(r, s, t), sp.Poly(curve, s, t))
    assert rem.is_zero, "curve does not divide"
print("outer hypocycloid:", curve, "= 0")

# Spot check: points of the parametrisation lie on the curve.
for th in (sp.Rational(1, 3), sp.Rational(7, 5)):
    b = sp.N(-3 * (2 * sp.exp(2 * sp.I * th) + sp.exp(-4 * sp.I * th)), 40)
    val = curve.subs({s: sp.re(b), t: sp.im(b)})
    assert abs(sp.N(val, 30)) < 1e-20
