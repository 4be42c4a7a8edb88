"""
Why a finite window decides infinite sets
=========================================

Circuits without multiplication have a cutoff: above a per-gate threshold,
membership never changes again. The engine therefore stores each gate as a
bitmask below its cutoff plus a single tail bit, and one window lookup
answers any query, however large.
"""

from setcircuits import (
    certified_cutoff,
    eval_clamped_scalar,
    parse_circuit,
    structural_cutoff,
)

# comp(A) flips an infinite tail on; add then smears it around.
circuit = parse_circuit(
    """\
circuit v1
gate 1 input 3
gate 2 comp 1
gate 3 input 5
gate 4 add 2 3
gate 5 union 4 1
output 5
"""
)

structural = structural_cutoff(circuit)
print("structural cutoffs:", {g.gid: structural[g.gid] for g in circuit.gates})

# The certified profile trades tightness for a uniform guarantee. It grows
# with subcircuit encoding size, which gets out of hand fast.
certified = certified_cutoff(circuit)
print("certified cutoffs: ", {g.gid: certified[g.gid] for g in circuit.gates})
print()

reps, out = eval_clamped_scalar(circuit)
for g in circuit.gates:
    rep = reps[g.gid]
    window = sorted(v for v in range(rep.cutoff) if rep.member(v))
    tail = "then everything" if rep.tail else "then nothing"
    print(f"gate {g.gid} {g.kind.value}: {window} {tail} (cutoff {rep.cutoff})")
print()

# The tail bit is a real claim about the infinite part of the set.
probes = [out.cutoff + k for k in (0, 1, 10, 1000, 10**9)]
answers = {p: out.member(p) for p in probes}
print("far probes all agree with the tail:", answers)
assert len(set(answers.values())) == 1
