"""
The classic game Mark
=====================

In Mark a move goes from n to n - 1 or to floor(n / 2). Its P-positions
are b_0, b_1, ... where b_n = 2 a_n and the a's fill the gaps.
"""

from imark.closedform import Mark, gen_mark_sequences

seq = gen_mark_sequences(12)
print("a:", seq.a_values)
print("b:", seq.b_values)

mark = Mark()
print("g(0..20):", [mark.grundy(n) for n in range(21)])
print("P-positions below 50:", [n for n in range(50) if mark.grundy(n) == 0])
