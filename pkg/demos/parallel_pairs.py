"""When is v(x + lam*y) = v(x) + v(y) for some unimodular lam?"""

import numpy as np

from numrad import (AlgebraElement, check_central_invariance, check_cor212, norm_parallel,
                    pure_state_witness, state_eval, vradius_parallel)

N = AlgebraElement([[0, 1], [0, 0]])

cert = vradius_parallel(N, N.H)
print("N and N*:", cert.decision, "lam =", np.round(cert.lam, 12), "gap =", cert.gap)
w = pure_state_witness(N, N.H, certificate=cert)
print("  witness state: |f(N) f(N*)| =", abs(state_eval(N, w) * state_eval(N.H, w)))

P, Q = AlgebraElement(np.diag([1.0, 0])), AlgebraElement(np.diag([0, 1.0]))
print("orthogonal projections:", vradius_parallel(P, Q).decision,
      "(norm version:", norm_parallel(P, Q).decision, ")")

# Two diagonal matrices that are parallel. The norm-product bound is attained,
# but the supremum of |f(Re x)| |f(Re y)| over single states is not: one state
# cannot see both diagonal entries at full weight.
x, y = AlgebraElement(np.diag([1, 1j])), AlgebraElement(np.diag([1j, 0.5]))
rep = check_cor212(x, y)
q = rep.quantities
print("diag(1,i), diag(i,1/2): v(x)v(y) =", q["v(x)v(y)"],
      " sup over states =", round(q["scalar_sup_re"], 12),
      " sup ||Re x|| ||Re y|| =", q["sup||Re x|| ||Re y||"])

# Multiplying by a central unitary changes nothing
rng = np.random.default_rng(3)
x = AlgebraElement([rng.standard_normal((2, 2)), rng.standard_normal((2, 2))])
y = AlgebraElement([rng.standard_normal((2, 2)) * 1j, rng.standard_normal((2, 2))])
c = AlgebraElement.scalar_blocks([np.exp(0.7j), np.exp(-2.1j)], [2, 2])
rep = check_central_invariance(x, y, c)
print("central unitary:", rep.flags, "passed =", rep.passed)
