"""Admissible residues are rare: the 4/p^7 density bound in action.

Counts admissible polynomials exactly in growing windows and compares
against the bound 4p * p^(w-7), whose ratio to the p^(w+1) polynomials
supported there is exactly 4/p^7 regardless of width.
"""

from fractions import Fraction

from jonesmod.modp import admissible_bound, enumerate_admissible

for p in (2, 3):
    print(f"p = {p}")
    print(f"  {'window':<10} {'count':>8} {'bound':>8} {'all polys':>12} "
          f"{'density':>10}")
    for width in range(7, 12):
        window = enumerate_admissible(p, 0, width)
        bound, density = admissible_bound(p, 0, width)
        total = p ** (width + 1)
        print(f"  [0,{width:<2}]    {window.count:>8} {bound:>8} "
              f"{total:>12} {str(Fraction(window.count, total)):>10}")
    print(f"  bound/total is {density} = 4/{p}^7 at every width\n")

print("p = 2 meets its bound exactly; p = 3 stays below it because two")
print("pairs of reference polynomials collide modulo 3 (10 classes, not 12)")
