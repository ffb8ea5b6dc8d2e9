"""Write the first N nontrivial zeta zeros (imaginary parts) using mpmath.zetazero.

Usage: python3 scripts/zeros_mpmath.py N OUT
"""
import sys

import mpmath

mpmath.mp.dps = 25
n = int(sys.argv[1])
with open(sys.argv[2], "w") as out:
    for k in range(1, n + 1):
        out.write(mpmath.nstr(mpmath.zetazero(k).imag, 18, strip_zeros=False) + "\n")
