"""Circuit-to-circuit rewrites.

Two families:

* multiplicative-to-additive transforms: replace numbers by exponent vectors
  over a fixed base, turning mul into componentwise add and exact div into
  componentwise sub, with 0 mapped to the absorbing point inf. Membership of
  b in the original equals membership of the mapped query in the image.
* gate eliminations: inter removal for singleton-valued circuits via a
  division gadget, inter removal via De Morgan for comp-bearing circuits,
  and expansion of shared subcircuits into a formula (every gate fans out at
  most once).
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import INF, Circuit, Gate, GateKind, fragment_of
from .errors import BudgetExceeded, FragmentError
from .numtheory import exponents_over_basis, factorize, gcd_free_basis


@dataclass(frozen=True)
class ExponentMap:
    """The number-to-vector map sigma used by the vector transforms.

    kind "gcd-free": coordinates are exponents over a pairwise coprime base;
    only products of base powers are representable. kind "prime-factors":
    coordinates are exponents over the listed primes plus one trailing
    coordinate counting the multiplicity of all other primes; total. Zero
    maps to inf under both.
    """

    kind: str
    base: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.base) + (1 if self.kind == "prime-factors" else 0)

    def apply(self, a: int):
        if a == 0:
            return INF
        if self.kind == "gcd-free":
            return exponents_over_basis(a, self.base)
        fac = factorize(a)
        head = tuple(fac.get(p, 0) for p in self.base)
        rest = sum(e for p, e in fac.items() if p not in self.base)
        return head + (rest,)


def _require_scalar_fragment(c: Circuit, allowed: frozenset, what: str):
    if c.vector:
        raise FragmentError(f"{what} applies to scalar circuits")
    extra = fragment_of(c) - allowed
    if extra:
        names = ", ".join(sorted(str(k) for k in extra))
        raise FragmentError(f"{what} does not support gates of kind: {names}")


def _map_gates(c: Circuit, emap: ExponentMap) -> Circuit:
    swap = {GateKind.MUL: GateKind.ADD, GateKind.DIV: GateKind.SUB}
    gates = []
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            gates.append(Gate(gid=g.gid, kind=g.kind, value=emap.apply(g.value)))
        else:
            gates.append(Gate(gid=g.gid, kind=swap.get(g.kind, g.kind), preds=g.preds))
    return Circuit(gates=tuple(gates), output=c.output, dim=emap.dim, vector=True)


def to_vector_gcdfree(c: Circuit, b: int):
    """Exponent-vector form over a gcd-free basis of the labels and b.

    For comp-free circuits over {union, inter, mul, div} only: complements
    would introduce vectors with no preimage. Returns (vector circuit, query
    vector for b, the map).
    """
    allowed = frozenset({GateKind.UNION, GateKind.INTER, GateKind.MUL, GateKind.DIV})
    _require_scalar_fragment(c, allowed, "gcd-free vectorization")
    labels = [g.value for g in c.gates if g.kind is GateKind.INPUT]
    basis = gcd_free_basis(labels + [b])
    emap = ExponentMap(kind="gcd-free", base=basis.base)
    return _map_gates(c, emap), emap.apply(b), emap


def to_vector_primefact(c: Circuit, b: int):
    """Exponent-vector form over the primes of the labels and b.

    Supports comp: the extra trailing coordinate (multiplicity of all other
    primes) makes the map's image membership track number membership even
    through complements. Returns (vector circuit, query vector, the map).
    """
    allowed = frozenset(
        {GateKind.UNION, GateKind.INTER, GateKind.COMP, GateKind.MUL, GateKind.DIV}
    )
    _require_scalar_fragment(c, allowed, "prime-factor vectorization")
    primes = set()
    for g in c.gates:
        if g.kind is GateKind.INPUT and g.value >= 1:
            primes.update(factorize(g.value))
    if b >= 1:
        primes.update(factorize(b))
    emap = ExponentMap(kind="prime-factors", base=tuple(sorted(primes)))
    return _map_gates(c, emap), emap.apply(b), emap


def eliminate_cap(c: Circuit) -> Circuit:
    """Replace every inter gate by a division gadget; value-preserving on
    singleton-valued circuits (fragment within {inter, add, mul, div}).

    Gadget for g = inter(p1, p2), sharing one constant-1 input across the
    circuit: a1 = p1 + 1, a2 = p2 + 1, d1 = a1 div a2, d2 = 1 div d1,
    g' = p1 mul d2. On singletons {x1}, {x2}: d1 holds the exact quotient
    (x1+1)/(x2+1) when it exists (never 0, thanks to the +1 shift), and d2 =
    1 div d1 keeps exactly the quotient 1, so I(d2) is {1} iff x1 == x2 and
    empty otherwise; multiplying p1 by it reproduces the intersection.
    """
    allowed = frozenset({GateKind.INTER, GateKind.ADD, GateKind.MUL, GateKind.DIV})
    _require_scalar_fragment(c, allowed, "inter elimination")
    if GateKind.INTER not in fragment_of(c):
        return c
    next_id = max(g.gid for g in c.gates) + 1
    one_id = next_id
    next_id += 1
    gates = [Gate(gid=one_id, kind=GateKind.INPUT, value=1)]
    for g in c.gates:
        if g.kind is not GateKind.INTER:
            gates.append(g)
            continue
        p1, p2 = g.preds
        a1, a2, d1, d2 = next_id, next_id + 1, next_id + 2, next_id + 3
        next_id += 4
        gates.append(Gate(gid=a1, kind=GateKind.ADD, preds=(p1, one_id)))
        gates.append(Gate(gid=a2, kind=GateKind.ADD, preds=(p2, one_id)))
        gates.append(Gate(gid=d1, kind=GateKind.DIV, preds=(a1, a2)))
        gates.append(Gate(gid=d2, kind=GateKind.DIV, preds=(one_id, d1)))
        gates.append(Gate(gid=g.gid, kind=GateKind.MUL, preds=(p1, d2)))
    return Circuit(gates=tuple(gates), output=c.output, dim=c.dim, vector=c.vector)


def demorgan_rewrite(c: Circuit) -> Circuit:
    """Replace every inter by comp(comp(p1) union comp(p2)).

    Meant for circuits that already contain comp (otherwise the rewrite
    enlarges the fragment and changes which engines apply; use
    eliminate_cap there).
    """
    frag = fragment_of(c)
    if GateKind.COMP not in frag:
        raise FragmentError("De Morgan rewrite is for circuits that already use comp")
    if GateKind.INTER not in frag:
        return c
    next_id = max(g.gid for g in c.gates) + 1
    gates = []
    for g in c.gates:
        if g.kind is not GateKind.INTER:
            gates.append(g)
            continue
        p1, p2 = g.preds
        c1, c2, u = next_id, next_id + 1, next_id + 2
        next_id += 3
        gates.append(Gate(gid=c1, kind=GateKind.COMP, preds=(p1,)))
        gates.append(Gate(gid=c2, kind=GateKind.COMP, preds=(p2,)))
        gates.append(Gate(gid=u, kind=GateKind.UNION, preds=(c1, c2)))
        gates.append(Gate(gid=g.gid, kind=GateKind.COMP, preds=(u,)))
    return Circuit(gates=tuple(gates), output=c.output, dim=c.dim, vector=c.vector)


def expand_formula(c: Circuit, max_gates: int = 10**5) -> Circuit:
    """Duplicate shared subcircuits until every gate feeds at most one other.

    Output values are unchanged; size can blow up exponentially, so the gate
    budget aborts with BudgetExceeded rather than exhausting memory.
    """
    gates: list[Gate] = []

    def clone(gid: int) -> int:
        g = c.gate(gid)
        preds = tuple(clone(p) for p in g.preds)
        if len(gates) >= max_gates:
            raise BudgetExceeded("expansion", f"formula exceeds {max_gates} gates")
        new_id = len(gates) + 1
        gates.append(Gate(gid=new_id, kind=g.kind, preds=preds, value=g.value))
        return new_id

    out = clone(c.output)
    return Circuit(gates=tuple(gates), output=out, dim=c.dim, vector=c.vector)
