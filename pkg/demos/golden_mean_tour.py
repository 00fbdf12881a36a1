"""A tour of the golden-mean shift: language, entropy, extenders, measure.

The golden-mean shift forbids the word 11, so its points are exactly the
binary sequences whose 1s are isolated.  Everything quantitative about it
involves the golden ratio.
"""

import math

from symshift import (
    BINARY,
    SftShift,
    count_words,
    entropy,
    enumerate_words,
    extender_compare,
    mu_parry,
    parry,
)

golden = SftShift(BINARY, ("11",))

print("== language ==")
for n in range(1, 9):
    print(f"|L_{n}| = {count_words(golden, n)}")
print("The counts are Fibonacci numbers:", enumerate_words(golden, 3))

phi = (1 + math.sqrt(5)) / 2
print("\n== entropy ==")
print(f"h = {entropy(golden):.12f}")
print(f"log(phi) = {math.log(phi):.12f}")

print("\n== extender sets ==")
print("The chain E(1) < E(01) < E(000) = E(0):")
for v, w in [("1", "01"), ("01", "000"), ("000", "0")]:
    print(f"  E({v}) vs E({w}): {extender_compare(golden, v, w)}")

print("\n== measure of maximal entropy ==")
model = parry(golden)
for w in ["0", "1", "00", "01", "000", "11"]:
    print(f"  mu({w}) = {mu_parry(model, w):.10f}")
print("Containment orders the measures: mu(1) < mu(01) < mu(0), and the")
print("equality E(000) = E(0) forces mu(000) = mu(0) / phi^2:")
print(f"  mu(000) * phi^2 = {mu_parry(model, '000') * phi**2:.10f}")
print(f"  mu(0)           = {mu_parry(model, '0'):.10f}")
