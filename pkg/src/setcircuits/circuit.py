"""Circuit data model and text format.

A circuit is a labeled DAG whose gates compute sets. Input gates carry a
label (a natural number, or for vector circuits a vector over naturals or
the special point ``inf``); interior gates apply one of the set operations

    union  inter  comp  add  mul  div        (scalar circuits)
    union  inter  comp  add  sub             (vector circuits)

to the sets of their predecessors. ``add``/``mul`` act elementwise on pairs,
``div`` is exact division (c is in A div B iff a = c*b for some a in A and
nonzero b in B), ``sub`` is componentwise subtraction defined only where no
coordinate goes negative. Evaluation semantics live in the engine modules;
this module only carries structure.

Text format (one circuit per document, LF line endings, ``#`` comments)::

    circuit v1                     | vcircuit v1 dim <m>
    gate <id> input <nat>          | gate <id> input <c1>,...,<cm> | ... input inf
    gate <id> <binop> <p1> <p2>      binop: union inter add mul div sub
    gate <id> comp <p>
    output <id>

Gates must be declared before use (reverse topological order) and the
``output`` line comes last. Parsing and serialization round-trip to
structural equality.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field


class GateKind(enum.Enum):
    INPUT = "input"
    UNION = "union"
    INTER = "inter"
    COMP = "comp"
    ADD = "add"
    MUL = "mul"
    DIV = "div"
    SUB = "sub"

    def __str__(self):
        return self.value


ARITY = {
    GateKind.INPUT: 0,
    GateKind.COMP: 1,
    GateKind.UNION: 2,
    GateKind.INTER: 2,
    GateKind.ADD: 2,
    GateKind.MUL: 2,
    GateKind.DIV: 2,
    GateKind.SUB: 2,
}

SCALAR_KINDS = frozenset(ARITY) - {GateKind.SUB}
VECTOR_KINDS = frozenset(ARITY) - {GateKind.MUL, GateKind.DIV}


class _Infinity:
    """The absorbing point adjoined to vector domains."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class CircuitError(ValueError):
    """Base class for structural and textual circuit problems."""


class CircuitParseError(CircuitError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            where = f" ({where})"
        super().__init__(f"{msg}{where}")


class CircuitValidationError(CircuitError):
    pass


@dataclass(frozen=True)
class Gate:
    gid: int
    kind: GateKind
    preds: tuple[int, ...] = ()
    value: object = None  # int | tuple[int, ...] | INF for inputs, else None


@dataclass(frozen=True)
class Circuit:
    """Immutable circuit; gates are stored in declaration (reverse topological) order."""

    gates: tuple[Gate, ...]
    output: int
    dim: int = 1
    vector: bool = False
    _by_id: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {g.gid: g for g in self.gates})
        _validate(self)

    def gate(self, gid: int) -> Gate:
        return self._by_id[gid]

    def __contains__(self, gid: int) -> bool:
        return gid in self._by_id

    @property
    def output_gate(self) -> Gate:
        return self._by_id[self.output]

    def __len__(self):
        return len(self.gates)


def _validate(c: Circuit):
    if c.dim < 1:
        raise CircuitValidationError(f"dim must be >= 1, got {c.dim}")
    if not c.vector and c.dim != 1:
        raise CircuitValidationError("scalar circuits have dim 1")
    if not c.gates:
        raise CircuitValidationError("circuit has no gates")
    allowed = VECTOR_KINDS if c.vector else SCALAR_KINDS
    seen = set()
    for g in c.gates:
        if g.gid < 0:
            raise CircuitValidationError(f"gate id must be a natural number, got {g.gid}")
        if g.gid in seen:
            raise CircuitValidationError(f"duplicate gate id {g.gid}")
        if g.kind not in allowed:
            dom = "vector" if c.vector else "scalar"
            raise CircuitValidationError(f"gate {g.gid}: {g.kind} not allowed in {dom} circuits")
        if len(g.preds) != ARITY[g.kind]:
            raise CircuitValidationError(
                f"gate {g.gid}: {g.kind} takes {ARITY[g.kind]} predecessors, got {len(g.preds)}"
            )
        for p in g.preds:
            if p not in seen:
                if any(h.gid == p for h in c.gates):
                    raise CircuitValidationError(
                        f"gate {g.gid}: forward reference to gate {p}"
                    )
                raise CircuitValidationError(f"gate {g.gid}: unknown gate reference {p}")
        if g.kind is GateKind.INPUT:
            _check_label(c, g)
        elif g.value is not None:
            raise CircuitValidationError(f"gate {g.gid}: only input gates carry a value")
        seen.add(g.gid)
    if c.output not in seen:
        raise CircuitValidationError(f"output gate {c.output} is not declared")


def _check_label(c: Circuit, g: Gate):
    v = g.value
    if not c.vector:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise CircuitValidationError(f"gate {g.gid}: scalar input label must be a natural number")
        return
    if v is INF:
        return
    if (
        not isinstance(v, tuple)
        or len(v) != c.dim
        or any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in v)
    ):
        raise CircuitValidationError(
            f"gate {g.gid}: vector input label must be a {c.dim}-tuple of naturals or inf"
        )


# ---------------------------------------------------------------------------
# text format

def parse_circuit(text: str) -> Circuit:
    """Parse the text format into a Circuit, with line/col-bearing errors."""
    lines = text.split("\n")
    header = None
    header_line = 0
    gates = []
    output = None
    declared = set()
    # pre-scan every declared id so reference errors can say whether the
    # target exists later in the file or not at all
    all_ids = set()
    for raw in lines:
        toks = raw.split("#", 1)[0].split()
        if len(toks) >= 2 and toks[0] == "gate" and toks[1].isdigit():
            all_ids.add(int(toks[1]))
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            header = _parse_header(toks, lineno)
            header_line = lineno
            continue
        if output is not None:
            raise CircuitParseError("content after output line", lineno)
        if toks[0] == "output":
            if len(toks) != 2:
                raise CircuitParseError("output line takes exactly one gate id", lineno)
            output = _parse_nat(toks[1], lineno, "output id")
            continue
        if toks[0] != "gate":
            raise CircuitParseError(f"expected 'gate' or 'output', got {toks[0]!r}", lineno, 1)
        gates.append(_parse_gate(toks, lineno, header, declared, all_ids))
        declared.add(gates[-1].gid)
    if header is None:
        raise CircuitParseError("missing header line")
    if output is None:
        raise CircuitParseError("missing output line", len(lines))
    vector, dim = header
    try:
        return Circuit(gates=tuple(gates), output=output, dim=dim, vector=vector)
    except CircuitValidationError as e:
        raise CircuitParseError(str(e), header_line) from e


def _parse_header(toks, lineno):
    if toks[:2] == ["circuit", "v1"] and len(toks) == 2:
        return (False, 1)
    if toks[:2] == ["vcircuit", "v1"] and len(toks) == 4 and toks[2] == "dim":
        dim = _parse_nat(toks[3], lineno, "dim")
        if dim < 1:
            raise CircuitParseError("dim must be >= 1", lineno)
        return (True, dim)
    raise CircuitParseError("expected 'circuit v1' or 'vcircuit v1 dim <m>'", lineno, 1)


def _parse_gate(toks, lineno, header, declared, all_ids):
    vector, dim = header
    if len(toks) < 3:
        raise CircuitParseError("gate line too short", lineno)
    gid = _parse_nat(toks[1], lineno, "gate id")
    try:
        kind = GateKind(toks[2])
    except ValueError:
        raise CircuitParseError(f"unknown gate kind {toks[2]!r}", lineno) from None
    if kind is GateKind.INPUT:
        if len(toks) != 4:
            raise CircuitParseError("input gate takes exactly one label", lineno)
        return Gate(gid=gid, kind=kind, value=_parse_label(toks[3], lineno, vector, dim))
    arity = ARITY[kind]
    if len(toks) != 3 + arity:
        raise CircuitParseError(f"{kind} takes {arity} predecessor ids", lineno)
    preds = tuple(_parse_nat(t, lineno, "predecessor id") for t in toks[3:])
    for p in preds:
        if p not in declared:
            if p in all_ids:
                raise CircuitParseError(
                    f"gate {gid}: gate {p} is not declared yet"
                    " (gates may only reference earlier gates)",
                    lineno,
                )
            raise CircuitParseError(f"gate {gid}: reference to undeclared gate {p}", lineno)
    return Gate(gid=gid, kind=kind, preds=preds)


def _parse_label(tok, lineno, vector, dim):
    if not vector:
        return _parse_nat(tok, lineno, "input label")
    if tok == "inf":
        return INF
    parts = tok.split(",")
    if len(parts) != dim:
        raise CircuitParseError(f"input label needs {dim} comma-separated coordinates", lineno)
    return tuple(_parse_nat(p, lineno, "input coordinate") for p in parts)


def _parse_nat(tok, lineno, what):
    if not tok.isdigit():
        raise CircuitParseError(f"{what} must be a natural number, got {tok!r}", lineno)
    return int(tok)


def serialize_circuit(c: Circuit) -> str:
    """Canonical text form; parse(serialize(c)) == c."""
    out = []
    if c.vector:
        out.append(f"vcircuit v1 dim {c.dim}")
    else:
        out.append("circuit v1")
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            out.append(f"gate {g.gid} input {_format_label(g.value)}")
        else:
            preds = " ".join(str(p) for p in g.preds)
            out.append(f"gate {g.gid} {g.kind} {preds}")
    out.append(f"output {c.output}")
    return "\n".join(out) + "\n"


def _format_label(v):
    if v is INF:
        return "inf"
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


# ---------------------------------------------------------------------------
# structure queries

def fragment_of(c: Circuit) -> frozenset[GateKind]:
    """The set of non-input gate kinds occurring in c. Computed fresh each call."""
    return frozenset(g.kind for g in c.gates if g.kind is not GateKind.INPUT)


def bits(k: int) -> int:
    """Length of the binary representation; bits(0) == 1."""
    return k.bit_length() if k > 0 else 1


def encoding_length(c: Circuit) -> int:
    """Size |C| in bits under the canonical encoding.

    Each gate contributes bits(id) + 3 for the kind tag + bits of each
    predecessor id; input gates add the label payload (scalar: bits(max(v,1));
    vector: that, summed over coordinates; inf: 1). The output id is counted
    once at the end.
    """
    total = 0
    for g in c.gates:
        total += bits(g.gid) + 3 + sum(bits(p) for p in g.preds)
        if g.kind is GateKind.INPUT:
            total += _label_bits(g.value)
    return total + bits(c.output)


def _label_bits(v):
    if v is INF:
        return 1
    if isinstance(v, tuple):
        return sum(bits(max(x, 1)) for x in v)
    return bits(max(v, 1))


def subcircuit_at(c: Circuit, gid: int) -> Circuit:
    """The circuit induced by all gates that feed gid, with gid as output."""
    if gid not in c:
        raise CircuitValidationError(f"no gate {gid} in circuit")
    needed = set()
    stack = [gid]
    while stack:
        h = stack.pop()
        if h in needed:
            continue
        needed.add(h)
        stack.extend(c.gate(h).preds)
    kept = tuple(g for g in c.gates if g.gid in needed)
    return Circuit(gates=kept, output=gid, dim=c.dim, vector=c.vector)
