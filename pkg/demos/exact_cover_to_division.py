"""
Exact cover compiled to union and division
==========================================

Assign each universe element a distinct prime and each candidate set the
product of its primes. A subfamily partitions the universe exactly when some
product of candidate values hits the full product, and a chain of division
gates searches those products. Membership of 1 at the output gate is then
the same question as solvability.
"""

from setcircuits import decide, serialize_circuit
from setcircuits.reductions import (
    ExactCoverInstance,
    exact_cover_solvable,
    from_exact_cover,
)

inst = ExactCoverInstance(
    universe=(1, 2, 3, 4),
    sets=(
        frozenset({1, 2}),
        frozenset({3, 4}),
        frozenset({2, 3}),
        frozenset({1}),
    ),
)

red = from_exact_cover(inst)
print(serialize_circuit(red.circuit))
print(f"query: is {red.query} in the output set?")
print()

verdict = decide(red.circuit, red.query)
print("circuit says solvable:", red.answer(verdict.member))
print("brute force says:     ", exact_cover_solvable(inst))
assert red.answer(verdict.member) == exact_cover_solvable(inst)
print()

# Drop the singleton {1} and the two remaining disjoint sets still cover
# everything, so the answer stays yes. Drop {3,4} instead and element 4 can
# no longer be covered at all.
for sets in (inst.sets[:3], (inst.sets[0], inst.sets[2], inst.sets[3])):
    sub = ExactCoverInstance(universe=inst.universe, sets=sets)
    r = from_exact_cover(sub)
    got = r.answer(decide(r.circuit, r.query).member)
    assert got == exact_cover_solvable(sub)
    names = sorted(sorted(s) for s in sets)
    print(f"family {names}: {'solvable' if got else 'unsolvable'}")
