"""
Trading multiplication for vector addition
==========================================

Over a fixed prime basis, a natural number is its exponent vector and a
product is a componentwise sum. That turns circuits mixing complement with
multiplication, where no scalar cutoff applies, into additive vector
circuits that clamp fine.
"""

from setcircuits import (
    INF,
    decide,
    parse_circuit,
    serialize_circuit,
    to_vector_gcdfree,
    to_vector_primefact,
)

scalar = parse_circuit(
    """\
circuit v1
gate 1 input 6
gate 2 input 10
gate 3 union 1 2
gate 4 mul 3 3
output 4
"""
)

# The gcd-free route factors only the labels that occur, not every prime.
vc, query, emap = to_vector_gcdfree(scalar, 36)
print("gcd-free basis:", emap.base)
print("36 becomes:", query)
print(serialize_circuit(vc))

for b in (36, 60, 100, 90):
    vcb, qb, _ = to_vector_gcdfree(scalar, b)
    print(f"{b} in output: {decide(vcb, qb).member}")
print()

# Zero has no factorization; it rides along as the absorbing point inf.
zero_circ = parse_circuit("circuit v1\ngate 1 input 0\ngate 2 mul 1 1\noutput 2\n")
vc0, q0, _ = to_vector_gcdfree(zero_circ, 0)
print("query 0 maps to:", "inf" if q0 is INF else q0)
assert decide(vc0, q0).member

# The prime-factor route keys one slot per query prime and pools the rest,
# which is what lets complement gates come along.
primes = parse_circuit(
    """\
circuit v1
gate 1 input 0
gate 2 input 1
gate 3 union 1 2
gate 4 comp 3
gate 5 mul 4 4
gate 6 comp 5
gate 7 inter 6 4
output 7
"""
)
vp, qp, pmap = to_vector_primefact(primes, 9)
print()
print(f"prime-factor basis for query 9: {pmap.base}, dimension {vp.dim}")
print("9 becomes:", qp)
print("9 prime?", decide(vp, qp).member)
