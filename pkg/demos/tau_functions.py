"""Build a few points, print their tau-functions and a Baker function.

Run with ``python3 demos/tau_functions.py``.
"""

from satogr.grasspoint import V_minus, close, dual, index
from satogr.laurent import CoverShape, parse_element
from satogr.tau import baker, tau_abel, tau_abel_oracle, tau_t

e1 = CoverShape((1,))

V = V_minus(e1, 10, 10)
print("tau of V_-          :", tau_t(V, 4))

# a rank-one perturbation: span{1/z + 3} + z^-2 C[1/z]
U = close(e1, [parse_element("z1^-1 + 3", e1)], tail=[parse_element("z1^-2", e1)], P=10, M=10)
print("tau of U            :", tau_t(U, 4))
print("tau of its dual     :", tau_t(dual(U), 4))

# the same tau in the Abel variables, computed twice
print("Abel form           :", tau_abel(U, 3))
print("determinant oracle  :", tau_abel_oracle(U, 3))

# a two-component point with a coupled generator
e11 = CoverShape((1, 1))
W = close(e11, [parse_element("z1^-1 + 2*z1; z2^-1 - z2", e11)], tail=[parse_element("z1^-2; 0", e11),
                                                                   parse_element("0; z2^-2", e11)], P=10, M=10)
print("index of W          :", index(W).index)
print("tau of W            :", tau_t(W, 3))

bf = baker(U, 0, 3, 4)
print("Baker numerator of U, coefficient of z^-2:", bf.numer[0].get(-2))
