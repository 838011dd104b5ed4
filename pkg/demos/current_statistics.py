"""Current generating function E(mu) from the large-m limit, checked against
the top eigenvalue of the deformed Markov matrix, then its Legendre transform."""

from fractions import Fraction as F

import mpmath

from koornasep import asep, limits
from koornasep.params import PHYSICAL

mpmath.mp.prec = 256
n = 2
mus = [mpmath.mpf(k) / 10 for k in range(-5, 6)]
E = []
for mu in mus:
    est = limits.E_mu_estimate(PHYSICAL, n, mu, m_list=(8, 16, 32))
    ref = asep.lambda0(PHYSICAL, n, mpmath.exp(mu))[0] if mu else mpmath.mpf(0)
    E.append(est.extrapolated)
    print(f"mu={mpmath.nstr(mu, 2):>5}  E={mpmath.nstr(est.extrapolated, 12):>16}  "
          f"+/- {mpmath.nstr(est.error_estimate, 2):>8}  Lambda0={mpmath.nstr(ref, 12)}")

# E'(mu) spans roughly [-0.35, -0.24] on this grid; pick currents inside it
currents = [F(k, 100) for k in range(-33, -25, 2)]
for j, G in zip(currents, limits.legendre_G(mus, E, currents)):
    print(f"j={float(j):+.2f}  G(j)={mpmath.nstr(G, 8)}")
