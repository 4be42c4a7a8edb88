"""
The prime numbers as a seven-gate circuit
=========================================

A circuit over sets of naturals can name an infinite set with a handful of
gates. Composites are exactly the products of two numbers at least 2, so the
complement of a product set carves out the primes.
"""

from setcircuits import decide, parse_circuit

# Build up from {0} and {1}. comp(A) is N minus A, mul(A, B) multiplies
# elementwise, so gate 5 holds every product x*y with x, y >= 2.
text = """\
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

circuit = parse_circuit(text)
print("gate 4 holds {2, 3, 4, ...}")
print("gate 5 holds the composites plus nothing below 4")
print("gate 7 intersects the non-products with {2, 3, 4, ...}")
print()

# The fragment mixes comp with mul, which no scalar cutoff handles directly.
# decide() notices and reroutes through exponent vectors on its own.
verdict = decide(circuit, 2)
print(f"engine: {verdict.engine} (transform: {verdict.stats['transform']})")
print()

members = [b for b in range(31) if decide(circuit, b).member]
print("members up to 30:", members)
assert members == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

# Membership stays cheap well past the small labels in the circuit.
for b in (97, 91, 101):
    tag = "prime" if decide(circuit, b).member else "not prime"
    print(f"{b}: {tag}")
