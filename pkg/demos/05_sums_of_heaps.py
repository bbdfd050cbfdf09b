"""
Playing a sum of heaps
======================

Several heaps side by side: a move picks one heap. The position is lost
for the player to move exactly when the nim-sum of the g-values is 0.
"""

from imark import validate_spec
from imark.multiheap import SumPosition, optimal_move, sum_grundy

spec = validate_spec([1], [2])
for sizes in ([4, 6], [5, 8, 12], [10**18, 3]):
    pos = SumPosition.of(spec, sizes)
    print(sizes, "nim-sum", sum_grundy(pos), "advice", optimal_move(pos))

mixed = [(validate_spec([1], [2]), 20), (validate_spec([2, 4], [2]), 10), (validate_spec([3, 5], [2, 7]), 40)]
print("mixed games:", sum_grundy(mixed), optimal_move(mixed))
