"""Compare the truncated matrix-product state with the exact polynomial state."""

from fractions import Fraction as F

import mpmath

from koornasep import mpa
from koornasep.hecke import HeckeContext
from koornasep.params import ALTERNATE

mpmath.mp.prec = 256
pp, n, m = ALTERNATE, 2, 2
x = [F(6, 5), F(7, 4)]
exact = mpa.evaluator(mpa.oracle_state(HeckeContext(pp.with_(xi=pp.s ** m), n), m))(x)

for K in (8, 16, 32, 64):
    res = mpa.psi_m(pp, m, n, x, K=K, backend="fock")
    err = max(abs(a - b) for a, b in zip(res.components, exact))
    print(f"K={K:>2}  max |MP - exact| = {mpmath.nstr(err, 3):>10}   "
          f"tail estimate = {mpmath.nstr(res.tail_estimate, 3)}")

print("exact components:", [str(c) for c in exact])
