"""From a braid word to a classified Jones polynomial, step by step.

Takes the closure of sigma_1^3 (a trefoil), computes its Jones
polynomial exactly, checks the five realizability conditions, names its
family, and reduces it modulo 2 to find its reference representative.
"""

from jonesmod.classify import check_conditions, classify
from jonesmod.knot import braid_to_pd, jones, parse_braid
from jonesmod.laurent import reduce_mod_p
from jonesmod.modp import canonical_residue, is_admissible, reference_set

word = parse_braid("[1,1,1]")
pd = braid_to_pd(word)
print(f"braid [1,1,1] closes to a {pd.n}-crossing diagram:")
print(f"  {pd}")

v = jones(pd)
print(f"\nJones polynomial: {v}")

report = check_conditions(v)
print("\nthe five conditions:")
print(f"  V(1) = 1:                 {report.c1}")
print(f"  V(i) in {{1,-1}}:           {report.c2}")
print(f"  V(zeta3) = 1:             {report.c3}")
print(f"  Arf sign at i:            {report.c4}")
print(f"  V(zeta6) = +-sqrt(-3)^m:  {report.c5}  (m = {report.m})")

c = classify(v)
print(f"\nclassification: family {c.family}, n = {c.n}")
print(f"base polynomial: {c.base}")

vbar = reduce_mod_p(v, 2)
g = canonical_residue(vbar)
index = is_admissible(g)
entry = reference_set(2).entries[index]
print(f"\nmod 2 this is {vbar}")
print(f"canonical residue {g} matches reference ({entry.family}, {entry.n})")
