"""
Almost periodicity and why full periodicity fails
=================================================

With a division move the g-sequence is never periodic: if g had period p
after q, pick n = kp >= q and compare n with 2n. Still, it can repeat on
all but a few residues. A certificate records (q, p, E).
"""

from imark import build_table, validate_spec
from imark.periodicity import PeriodicityCertificate, detect, refute_grundy_period, validate

spec = validate_spec([2, 4], [2])
g = build_table(spec, 599).values
cert = detect(g, max_p=150, ell_max=1)
print(cert.to_json())

# exact periodicity is out of reach; here is the witness for one claim
print(refute_grundy_period(spec, 11, 6))

big = build_table(validate_spec([4, 8], [2]), 9999).values
print("(17, 12, {0}) holds on 10^4 terms:", validate(big, PeriodicityCertificate(17, 12, (0,))))
