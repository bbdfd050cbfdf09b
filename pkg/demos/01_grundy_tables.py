"""
Grundy values of a subtraction-division heap
============================================

A heap of n tokens. A move takes away s tokens (s in S) or divides the
heap by d (d in D, only when d divides n). Here S = {1}, D = {2}.
"""

import numpy as np

from imark import build_table, options, validate_spec

spec = validate_spec([1], [2])
print("options of 12:", options(spec, 12))

# the oracle fills g[0..N] by mex over the options
table = build_table(spec, 63)
print(table.values.reshape(4, 16))

# past 3, odd heaps are 0 and even heaps take 1 or 2
g = table.values
print("odd heaps from 5 on all zero:", bool(np.all(g[5::2] == 0)))
print("even heaps with g = 2:", np.flatnonzero(g == 2).tolist())
