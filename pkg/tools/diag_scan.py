#!/usr/bin/env python3
"""One-off diagnostics for the witness search."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from build_knot_table import (
    ALTERNATING, DETS, TABLE1, build_phase_a, det, expression_value,
    iter_three_braids, leftover_classes, mod2, paper_chirality,
    resolve_targets, span,
)
from jonesmod.knot import BraidWord, MultiComponent, braid_to_pd, jones, mirror
from jonesmod.laurent import parse_poly, reduce_mod_p

table = build_phase_a()
print(f"phase A: {len(table)} knots")

leftovers = leftover_classes(table)
targets, inter_12 = resolve_targets(leftovers)
t12 = reduce_mod_p(parse_poly("t^12"), 2)
class_8_10 = mod2(paper_chirality(table["8_10"][1]))

labels = {}
for name, poly in targets.items():
    labels[poly] = name
labels[inter_12[0]] = "shared-A (10_165/11n118)"
labels[inter_12[1]] = "shared-B (10_165/11n118)"
labels[t12] = "12n237"
labels[class_8_10] = "8_16"

print("\ntarget classes:")
for poly, name in labels.items():
    print(f"  {name:<28} {poly}")

# All 8-crossing 3-braid closures: what lands in 8_10's class?
known = set()
for pd, v, _ in table.values():
    known.add(v)
    known.add(mirror(v))

print("\n8-crossing 3-braid closures in 8_10's mod-2 class:")
seen_vs = set()
for w in iter_three_braids(8):
    try:
        pd = braid_to_pd(BraidWord(w, 3))
    except MultiComponent:
        continue
    v = jones(pd)
    if v in seen_vs:
        continue
    seen_vs.add(v)
    vbar = mod2(v)
    hit = vbar == class_8_10 or mirror(vbar) == class_8_10
    if hit:
        tag = "KNOWN" if v in known else "new"
        print(f"  {list(w)}  det={det(v)} span={span(v)} {tag}  V={v}")
print(f"({len(seen_vs)} distinct polynomials at length 8)")
