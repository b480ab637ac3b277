"""A knot whose mod-2 Jones polynomial is the monomial t^12.

Connected sums with that knot translate every mod-2 polynomial by
twelve degrees, so the census of one window slides to infinitely many
others.  This script shows the monomial, its unit-order arithmetic,
and a few translated windows re-checked against direct enumeration.
"""

from jonesmod.classify import F
from jonesmod.knot import mirror
from jonesmod.knotdb import load_db
from jonesmod.laurent import divide_by, LaurentPoly, reduce_mod_p
from jonesmod.verify import verify_shift

db = load_db()
v = db["12n237"].jones_z
print(f"V(12n237)       = {v}")
print(f"V(12n237) mod 2 = {reduce_mod_p(v, 2)}")

product = reduce_mod_p(v * mirror(v), 2)
print(f"summed with its mirror the class is {product} (the unknot's)\n")

# t is a unit mod (f, p); its order caps how far distinct shifts reach
for p, order in ((2, 12), (3, 36), (5, 60)):
    fbar = reduce_mod_p(F, p)
    power = LaurentPoly.term(1, order, modulus=p)
    _, _, divisible = divide_by(power - LaurentPoly.one(modulus=p), fbar)
    print(f"t^{order} = 1 mod (f, {p}): {divisible}")

print("\nsliding the realized window [0, 8] by multiples of 12:")
for k in (-2, -1, 1, 2, 3):
    print(f"  {verify_shift(db, k).to_text()}")
