"""
Graph reachability with nothing but division
============================================

Division alone already encodes s-t reachability in a dag. Each node becomes
a gate holding a one-element marker set: {1} while unreached, {0} once some
path from s arrives, and the division x/x maps {0} to {0} but {1} to {1},
so markers propagate along edges. The price of the encoding is a flipped
verdict: the query succeeds exactly when there is NO path.
"""

from setcircuits import decide, serialize_circuit
from setcircuits.reductions import GapInstance, from_gap, gap_has_path

#       0 --> 1 --> 3
#        \         ^
#         \--> 2 --/     4 (isolated)
inst = GapInstance(edges=((0, 1), (0, 2), (1, 3), (2, 3)), s=0, t=3, nodes=(0, 1, 2, 3, 4))

red = from_gap(inst)
print(serialize_circuit(red.circuit))
print(f"query {red.query}, verdict negated: {red.negate}")
print()

raw = decide(red.circuit, red.query).member
print("raw membership:", raw)
print("path 0 -> 3?  ", red.answer(raw))
assert red.answer(raw) == gap_has_path(inst) is True

# The isolated node is a different story.
far = GapInstance(edges=inst.edges, s=0, t=4, nodes=inst.nodes)
r2 = from_gap(far)
print("path 0 -> 4?  ", r2.answer(decide(r2.circuit, r2.query).member))
assert not r2.answer(decide(r2.circuit, r2.query).member)
print()

# Edge direction matters: reverse every edge and node 0 reaches nothing,
# while 3 now reaches 0.
rev = GapInstance(edges=tuple((b, a) for a, b in inst.edges), s=3, t=0, nodes=inst.nodes)
r3 = from_gap(rev)
print("path 3 -> 0 in the reversed dag?",
      r3.answer(decide(r3.circuit, r3.query).member))
assert r3.answer(decide(r3.circuit, r3.query).member)
