"""
Misere play and period detection
================================

Under misere play the player who cannot move wins. For S = {a, 2a},
D = {2} and odd a the outcome sequence is purely periodic with period 3a;
for even a it becomes periodic only after a stretch of exceptions.
"""

from imark import engine, validate_spec
from imark.closedform import MiMarkA2A
from imark.periodicity import census, detect

for a in (1, 3, 5, 7):
    outs = engine.misere_table(validate_spec([a, 2 * a], [2]), 300 * a)
    cert = detect(outs, max_p=6 * a)
    print(f"a={a:2d}  q={cert.preperiod} p={cert.period}  {MiMarkA2A(a).period_string()}")

for a in (4, 8, 10):
    outs = engine.misere_table(validate_spec([a, 2 * a], [2]), 9999)
    c = census(outs, 3 * a)
    print(f"a={a:2d}  preperiod length {c.preperiod_length}, {c.exception_count} exceptions")
