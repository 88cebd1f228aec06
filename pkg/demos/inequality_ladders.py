"""Bounds on the numerical radius, checked on a handful of elements.

Each report lists the chain it verified as named slacks; a slack of zero
means that link is an equality for this input.
"""

import numpy as np

from numrad import AlgebraElement, check_thm23, check_thm28, check_thm29, check_thm211

N = AlgebraElement([[0, 1], [0, 0]])
I2 = AlgebraElement.identity(2)
rng = np.random.default_rng(1)
G = AlgebraElement(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))


def show(rep):
    print(f"{rep.name}: passed={rep.passed} (tol {rep.tol:.1e})")
    for k, s in rep.slacks.items():
        print(f"    {s:+.3e}  {k}")


for label, x in [("shift", N), ("identity", I2), ("random 4x4", G)]:
    print(f"== {label}")
    show(check_thm23(x))
    show(check_thm29(x))

# v(x) = ||x||/2 exactly when ||x|| splits as ||Re|| + ||Im|| at every rotation
for label, x in [("shift", N), ("identity", I2)]:
    rep = check_thm28(x)
    print(label, {k: v for k, v in rep.flags.items()})

# a refined triangle inequality for pairs
show(check_thm211(G, AlgebraElement(np.diag([1, 1j, -1, -1j]))))
