#!/usr/bin/env python3
"""Reference values for the network / optimizer arithmetic tests.

Each value is computed directly from the defining formula with exact
rationals or 30-digit floats, independently of the C++ code.
"""
from fractions import Fraction as Fr
from mpmath import mp, mpf, exp

mp.dps = 30


def sig(u):
    return 1 / (1 + exp(-u))


# 2-2-1 network, every weight 0.5, zero biases, logistic everywhere, x = (1, 1).
h = sig(mpf("0.5") * 1 + mpf("0.5") * 1 - 0)
y = sig(mpf("0.5") * h + mpf("0.5") * h - 0)
print("forward 2-2-1 =", y)

# ABC neighbour move x_ij + phi (x_ij - x_kj)
print("abc move      =", Fr("0.3") + Fr("0.4") * (Fr("0.3") - Fr("-0.5")))

# PSO velocity c0 v + c1 r1 (b - x) + c2 r2 (g - x)
v, x, b, g = Fr("0.1"), Fr("0.2"), Fr("0.5"), Fr("-0.3")
c0, c1, c2, r1, r2 = Fr("0.7"), Fr(2), Fr(2), Fr("0.25"), Fr("0.6")
print("pso velocity  =", float(c0 * v + c1 * r1 * (b - x) + c2 * r2 * (g - x)))

# DE mutants with F = 0.7
a, bb, c, best, F = [Fr(1), Fr(2)], [Fr("0.5"), Fr(-1)], [Fr("0.25"), Fr(1)], [Fr(2), Fr(0)], Fr("0.7")
rtb = [a[i] + F * (best[i] - a[i]) + F * (bb[i] - c[i]) for i in range(2)]
r1m = [a[i] + F * (bb[i] - c[i]) for i in range(2)]
print("de rand-to-best/1 =", [float(t) for t in rtb])
print("de rand/1         =", [float(t) for t in r1m])
