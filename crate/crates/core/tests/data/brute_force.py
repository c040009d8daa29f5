# Independent brute force: sympy cyclotomic polynomials, every subset
# multiplied out with numpy object-dtype convolution.
# python3 brute_force.py > brute_force_1_100.txt
import numpy as np
from sympy import cyclotomic_poly, divisors, Poly, symbols
x = symbols('x')
cache = {}
def cyc(d):
    if d not in cache:
        cache[d] = np.array([int(c) for c in reversed(Poly(cyclotomic_poly(d, x), x).all_coeffs())], dtype=object)
    return cache[d]
B, C = [], []
for n in range(1, 101):
    ds = divisors(n)
    polys = [cyc(d) for d in ds]
    bh = bl = 0
    for mask in range(1 << len(ds)):
        p = np.array([1], dtype=object)
        for i in range(len(ds)):
            if mask >> i & 1:
                p = np.convolve(p, polys[i])
        h = max(abs(c) for c in p); l = sum(abs(c) for c in p)
        bh = max(bh, h); bl = max(bl, l)
    B.append(bh); C.append(bl)
print("B", B)
print("C", C)
