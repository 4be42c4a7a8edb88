"""
Exact division between sets
===========================

A / B collects every c for which some nonzero b in B makes c*b land in A.
Division is the odd operation out: it can produce infinite sets from finite
ones and it quietly ignores 0 as a divisor.
"""

from setcircuits import eval_exact, parse_circuit
from setcircuits.cli import main

# {6} / {2, 3} keeps both witnesses: 3*2 and 2*3 both reach 6.
c = parse_circuit(
    """\
circuit v1
gate 1 input 6
gate 2 input 2
gate 3 input 3
gate 4 union 2 3
gate 5 div 1 4
output 5
"""
)
print("{6} / {2,3} =", sorted(eval_exact(c)[c.output]))

# Division by zero contributes nothing, so {6} / {0} is empty.
c = parse_circuit("circuit v1\ngate 1 input 6\ngate 2 input 0\ngate 3 div 1 2\noutput 3\n")
print("{6} / {0}  =", sorted(eval_exact(c)[c.output]))

# 0 / anything nonzero succeeds with c = 0, since 0 * b = 0.
c = parse_circuit("circuit v1\ngate 1 input 0\ngate 2 input 5\ngate 3 div 1 2\noutput 3\n")
print("{0} / {5}  =", sorted(eval_exact(c)[c.output]))
print()

# Dividing {0} by itself is genuinely empty, though: the only candidate
# divisor is 0 and divisors skip it.
c = parse_circuit("circuit v1\ngate 1 input 0\ngate 2 div 1 1\noutput 2\n")
print("{0} / {0}  =", sorted(eval_exact(c)[c.output]), "(the empty set)")
print()

# Infinite results need the clamped engine; the CLI picks it up when a
# complement enters the circuit.
import tempfile, os

text = """\
circuit v1
gate 1 input 0
gate 2 comp 1
gate 3 input 6
gate 4 div 3 2
output 4
"""
with tempfile.NamedTemporaryFile("w", suffix=".circ", delete=False) as f:
    f.write(text)
    path = f.name
print("{6} / {1,2,3,...} via the eval subcommand:")
main(["eval", path])
os.unlink(path)
