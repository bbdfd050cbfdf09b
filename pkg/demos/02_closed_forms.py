"""
Closed forms at 64-bit scale
============================

For the solved families the g-value is read off the digits of n, so
huge heaps cost about a microsecond.
"""

import time

from imark import family_for, validate_spec
from imark.digits import profile

for S, D in [([1], [2]), ([1, 2, 3], [4]), ([1, 2, 3, 4], [2]), ([2, 4], [2])]:
    ev = family_for(validate_spec(S, D))
    n = 10**18 + 6
    t0 = time.perf_counter()
    g = ev.grundy(n)
    us = 1e6 * (time.perf_counter() - t0)
    print(f"{ev.describe():28s} g({n}) = {g}   ({us:.1f} us)")

# the rule for i-Mark({1},{2}) looks at the binary form of n
for n in (6, 12, 22, 40, 88):
    p = profile(n, 2)
    print(n, bin(n), "zeros:", p.trailing_zeros, "stripped:", bin(p.stripped), "g:", family_for(validate_spec([1], [2])).grundy(n))
