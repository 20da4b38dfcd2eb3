"""Scattering phases and a side-by-side run of the interacting and free
truncated dynamics started from the same lattice delta."""

import cmath
import math
from fractions import Fraction

import numpy as np

from rsmorse.latticeop import LatticeFunction
from rsmorse.qcore import params_from_hat
from rsmorse.scattering import S_hat, apply_H0, s_one, s_pair, sorting_permutation
from rsmorse.spectral import evolve

params = params_from_hat(
    Fraction(1, 4), Fraction(1, 3), (Fraction(1, 2), Fraction(-1, 3), Fraction(1, 5))
)

print("two-particle and one-particle phases (all unimodular):")
for x in (0.4, 1.1, 2.3):
    sp = s_pair(x, params)
    so = s_one(x, params)
    print(
        f"  x={x:.1f}  arg s = {cmath.phase(sp):+.4f}  arg s0 = {cmath.phase(so):+.4f}"
        f"  |s|-1 = {abs(sp) - 1:+.1e}"
    )
print()

xi = (2.5, 0.5)
point = sorting_permutation(xi)
print(f"sorting at xi = {xi}: regular={point.regular}, w sends gradient to")
grad = [-2 * math.sin(v) for v in xi]
print(f"  {point.w.apply(grad)}  (positive and decreasing)")
print(f"  S at the sorted point: {S_hat(point.w.apply(list(xi)), params):.6f}")
print()

# now run the cutoff dynamics: interacting on the left, free Laplacian on
# the right; both start at delta_(0,) and stay normalized
cutoff = 12
labels = [(k,) for k in range(cutoff + 1)]
index = {lam: i for i, lam in enumerate(labels)}
free = np.zeros((len(labels), len(labels)))
for lam in labels:
    image = apply_H0(LatticeFunction.delta(lam))
    for mu, val in image.values.items():
        if mu in index:
            free[index[mu], index[lam]] = float(val)
vals, vecs = np.linalg.eigh(free)

start = np.zeros(len(labels))
start[0] = 1.0
print(f"|psi_t(k)|^2 on the cutoff-{cutoff} chain, interacting vs free:")
for tv in (0.0, 1.0, 2.5):
    inter = evolve({(0,): 1.0}, tv, cutoff, params, n=1)
    free_t = vecs @ (np.exp(-1j * tv * vals) * (vecs.T @ start))
    row_i = "  ".join(f"{abs(inter.get((k,), 0)) ** 2:.3f}" for k in range(7))
    row_f = "  ".join(f"{abs(free_t[k]) ** 2:.3f}" for k in range(7))
    print(f"  t={tv:3.1f}  interacting  {row_i}")
    print(f"         free         {row_f}")
    ni = math.sqrt(sum(abs(v) ** 2 for v in inter.values()))
    print(f"         norms        {ni:.12f} / {np.linalg.norm(free_t):.12f}")
