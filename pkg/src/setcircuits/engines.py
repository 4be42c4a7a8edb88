"""Membership engines.

Each engine decides "is b in I(C)?" for a class of circuits:

* eval_singleton / eval_singleton_vector: fragments where every gate's set
  has at most one element ({inter, add, mul, div} scalar, {inter, add, sub}
  vector); values are propagated directly.
* eval_exact: comp-free fragments; every gate's finite set is materialized,
  guarded by an element budget.
* eval_clamped_scalar / eval_clamped_vector: comp-capable, mul-free
  fragments; per-gate clamped representations at a certified or structural
  cutoff profile.
* search_member: the same fragments as the clamped engines, but top-down: a
  memoized recursion over (gate, clamped query value) that unfolds the set
  definitions, guessing decompositions at add/div/sub. Serves as the in-repo
  independent check of the clamped evaluators.
* certificate_search / verify_certificate: comp-free fragments via formula
  expansion and depth-first search over per-gate value assignments; produces
  a checkable witness.
* eval_grid_reference: numpy-based reference for vector circuits at one
  uniform grid width; used by xcheck as an independent implementation.

decide() picks a route from the circuit's fragment; transforms reroute
mul-heavy fragments through the vector domain. Fragments mixing comp with
both add and mul are refused (OpenFragmentError): no decision procedure is
known for them.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    CLAMPABLE_SCALAR,
    CLAMPABLE_VECTOR,
    CutoffMode,
    CutoffProfile,
    cutoff_profile,
    structural_cutoff,
)
from .circuit import INF, Circuit, GateKind, fragment_of
from .errors import BudgetExceeded, FragmentError, OpenFragmentError
from .setrep import (
    NatSetRep,
    VecSetRep,
    exact_apply,
    natrep_apply,
    vecrep_apply,
    vecrep_from_label,
)
from .transforms import to_vector_gcdfree, to_vector_primefact

SINGLETON_SCALAR = frozenset({GateKind.INTER, GateKind.ADD, GateKind.MUL, GateKind.DIV})
SINGLETON_VECTOR = frozenset({GateKind.INTER, GateKind.ADD, GateKind.SUB})
EXACT_SCALAR = frozenset(
    {GateKind.UNION, GateKind.INTER, GateKind.ADD, GateKind.MUL, GateKind.DIV}
)
EXACT_VECTOR = frozenset({GateKind.UNION, GateKind.INTER, GateKind.ADD, GateKind.SUB})
GCDFREE_SCALAR = frozenset({GateKind.UNION, GateKind.INTER, GateKind.MUL, GateKind.DIV})
PRIMEFACT_SCALAR = GCDFREE_SCALAR | {GateKind.COMP}


@dataclass(frozen=True)
class EngineBudget:
    max_set_elems: int = 10**6
    max_grid_cells: int = 10**7
    max_memo_entries: int = 10**7
    max_formula_gates: int = 10**5


DEFAULT_BUDGET = EngineBudget()


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    engine: str
    cutoff_mode: str  # "certified" | "structural" | "none"
    stats: dict = field(default_factory=dict)
    witness: dict | None = None


def _require(c: Circuit, allowed: frozenset, engine: str, vector: bool):
    if c.vector != vector:
        dom = "vector" if vector else "scalar"
        raise FragmentError(f"{engine} runs on {dom} circuits")
    extra = fragment_of(c) - allowed
    if extra:
        names = ", ".join(sorted(str(k) for k in extra))
        raise FragmentError(f"{engine} does not support gates of kind: {names}")


# ---------------------------------------------------------------------------
# singleton propagation

def eval_singleton(c: Circuit) -> dict:
    """Per-gate value for {inter, add, mul, div} scalar circuits.

    Each gate's set has at most one element by construction; the dict maps
    gate id to that element or to None for the empty set.
    """
    _require(c, SINGLETON_SCALAR, "singleton evaluation", vector=False)
    val: dict = {}
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            val[g.gid] = g.value
            continue
        a, b = (val[p] for p in g.preds)
        if a is None or b is None:
            val[g.gid] = None
        elif g.kind is GateKind.INTER:
            val[g.gid] = a if a == b else None
        elif g.kind is GateKind.ADD:
            val[g.gid] = a + b
        elif g.kind is GateKind.MUL:
            val[g.gid] = a * b
        else:  # DIV
            val[g.gid] = a // b if b != 0 and a % b == 0 else None
    return val


def eval_singleton_vector(c: Circuit) -> dict:
    """Per-gate value for {inter, add, sub} vector circuits (tuple, INF, or None)."""
    _require(c, SINGLETON_VECTOR, "singleton vector evaluation", vector=True)
    val: dict = {}
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            val[g.gid] = g.value
            continue
        a, b = (val[p] for p in g.preds)
        if a is None or b is None:
            val[g.gid] = None
        elif g.kind is GateKind.INTER:
            val[g.gid] = a if a == b else None
        elif g.kind is GateKind.ADD:
            if a is INF or b is INF:
                val[g.gid] = INF
            else:
                val[g.gid] = tuple(x + y for x, y in zip(a, b))
        else:  # SUB
            if b is INF:
                val[g.gid] = None
            elif a is INF:
                val[g.gid] = INF
            else:
                d = tuple(x - y for x, y in zip(a, b))
                val[g.gid] = d if all(x >= 0 for x in d) else None
    return val


# ---------------------------------------------------------------------------
# exact finite evaluation

def eval_exact(c: Circuit, budget: EngineBudget = DEFAULT_BUDGET) -> dict:
    """Materialize every gate's finite set for comp-free circuits."""
    allowed = EXACT_VECTOR if c.vector else EXACT_SCALAR
    _require(c, allowed, "exact evaluation", vector=c.vector)
    sets: dict = {}
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            sets[g.gid] = frozenset({g.value})
            continue
        a, b = (sets[p] for p in g.preds)
        out = exact_apply(g.kind, a, b)
        if len(out) > budget.max_set_elems:
            raise BudgetExceeded("set-size", f"gate {g.gid} holds {len(out)} elements")
        sets[g.gid] = out
    return sets


# ---------------------------------------------------------------------------
# clamped evaluation

def _resolve_profile(c, mode) -> CutoffProfile:
    if isinstance(mode, CutoffProfile):
        return mode
    return cutoff_profile(c, mode)


def eval_clamped_scalar(
    c: Circuit,
    mode: CutoffMode | str | CutoffProfile = CutoffMode.STRUCTURAL,
    budget: EngineBudget = DEFAULT_BUDGET,
):
    """Per-gate NatSetRep for {union, inter, comp, add, div} circuits.

    Returns (reps, output rep). Exact under the clamped reading at the
    profile's cutoffs.
    """
    _require(c, CLAMPABLE_SCALAR, "clamped scalar evaluation", vector=False)
    prof = _resolve_profile(c, mode)
    reps: dict = {}
    for g in c.gates:
        n = prof[g.gid]
        if n + 1 > budget.max_grid_cells:
            raise BudgetExceeded("grid", f"gate {g.gid} needs a {n + 1}-cell bitmap")
        if g.kind is GateKind.INPUT:
            reps[g.gid] = NatSetRep.from_elements([g.value], cutoff=n)
        elif g.kind is GateKind.COMP:
            reps[g.gid] = natrep_apply(g.kind, reps[g.preds[0]], None, n, budget.max_grid_cells)
        else:
            a, b = (reps[p] for p in g.preds)
            reps[g.gid] = natrep_apply(g.kind, a, b, n, budget.max_grid_cells)
    return reps, reps[c.output]


def eval_clamped_vector(
    c: Circuit,
    mode: CutoffMode | str | CutoffProfile = CutoffMode.STRUCTURAL,
    budget: EngineBudget = DEFAULT_BUDGET,
):
    """Per-gate VecSetRep for {union, inter, comp, add, sub} vector circuits."""
    _require(c, CLAMPABLE_VECTOR, "clamped vector evaluation", vector=True)
    prof = _resolve_profile(c, mode)
    reps: dict = {}
    for g in c.gates:
        n = prof[g.gid]
        if (n + 1) ** c.dim > budget.max_grid_cells:
            raise BudgetExceeded("grid", f"gate {g.gid} needs ({n + 1})^{c.dim} cells")
        if g.kind is GateKind.INPUT:
            reps[g.gid] = vecrep_from_label(g.value, c.dim, n)
        elif g.kind is GateKind.COMP:
            reps[g.gid] = vecrep_apply(g.kind, reps[g.preds[0]], None, n, budget.max_grid_cells)
        else:
            a, b = (reps[p] for p in g.preds)
            reps[g.gid] = vecrep_apply(g.kind, a, b, n, budget.max_grid_cells)
    return reps, reps[c.output]


# ---------------------------------------------------------------------------
# top-down membership search

class _SearchState:
    __slots__ = ("c", "prof", "budget", "memo", "nonempty_memo")

    def __init__(self, c, prof, budget):
        self.c = c
        self.prof = prof
        self.budget = budget
        self.memo: dict = {}
        self.nonempty_memo: dict = {}


def search_member(
    c: Circuit,
    x,
    mode: CutoffMode | str | CutoffProfile = CutoffMode.STRUCTURAL,
    budget: EngineBudget = DEFAULT_BUDGET,
    _stats: dict | None = None,
) -> bool:
    """Decide x in I(C) by memoized recursion over (gate, clamped value).

    Queries are clamped at each gate's cutoff before dispatch, so the state
    space is finite; decompositions at add (a + b = x), div (w and w*x) and
    sub (x + y) are enumerated inside exact bounds mirroring the clamped
    representations. comp is plain logical negation of the predecessor query.
    """
    allowed = CLAMPABLE_VECTOR if c.vector else CLAMPABLE_SCALAR
    _require(c, allowed, "membership search", vector=c.vector)
    st = _SearchState(c, _resolve_profile(c, mode), budget)
    if c.vector:
        res = _search_vec(st, c.output, x)
    else:
        res = _search_nat(st, c.output, x)
    if _stats is not None:
        _stats["memo_entries"] = len(st.memo) + len(st.nonempty_memo)
    return res


def _search_nat(st: _SearchState, gid: int, v: int) -> bool:
    n = st.prof[gid]
    v = min(v, n)
    key = (gid, v)
    if key in st.memo:
        return st.memo[key]
    if len(st.memo) >= st.budget.max_memo_entries:
        raise BudgetExceeded("memo", "membership search state space")
    g = st.c.gate(gid)
    if g.kind is GateKind.INPUT:
        res = v == g.value
    elif g.kind is GateKind.UNION:
        res = _search_nat(st, g.preds[0], v) or _search_nat(st, g.preds[1], v)
    elif g.kind is GateKind.INTER:
        res = _search_nat(st, g.preds[0], v) and _search_nat(st, g.preds[1], v)
    elif g.kind is GateKind.COMP:
        res = not _search_nat(st, g.preds[0], v)
    elif g.kind is GateKind.ADD:
        p1, p2 = g.preds
        res = any(
            _search_nat(st, p2, a) and _search_nat(st, p1, v - a) for a in range(v + 1)
        )
    elif g.kind is GateKind.DIV:
        p1, p2 = g.preds
        wmax = max(st.prof[p1], st.prof[p2]) + 1
        res = any(
            _search_nat(st, p2, w) and _search_nat(st, p1, v * w)
            for w in range(1, wmax + 1)
        )
    else:
        raise FragmentError(f"membership search cannot handle {g.kind}")
    st.memo[key] = res
    return res


def _search_vec(st: _SearchState, gid: int, v) -> bool:
    n = st.prof[gid]
    if v is not INF:
        v = tuple(min(x, n) for x in v)
    key = (gid, v)
    if key in st.memo:
        return st.memo[key]
    if len(st.memo) >= st.budget.max_memo_entries:
        raise BudgetExceeded("memo", "membership search state space")
    g = st.c.gate(gid)
    if g.kind is GateKind.INPUT:
        res = v == g.value or (v is INF and g.value is INF)
    elif g.kind is GateKind.UNION:
        res = _search_vec(st, g.preds[0], v) or _search_vec(st, g.preds[1], v)
    elif g.kind is GateKind.INTER:
        res = _search_vec(st, g.preds[0], v) and _search_vec(st, g.preds[1], v)
    elif g.kind is GateKind.COMP:
        res = not _search_vec(st, g.preds[0], v)
    elif g.kind is GateKind.ADD:
        res = _search_vec_add(st, g, v)
    elif g.kind is GateKind.SUB:
        res = _search_vec_sub(st, g, v)
    else:
        raise FragmentError(f"membership search cannot handle {g.kind}")
    st.memo[key] = res
    return res


def _search_vec_add(st, g, v) -> bool:
    p1, p2 = g.preds
    if v is INF:
        return (_search_vec(st, p1, INF) and _vec_nonempty(st, p2, with_inf=True)) or (
            _search_vec(st, p2, INF) and _vec_nonempty(st, p1, with_inf=True)
        )
    for y in itertools.product(*(range(x + 1) for x in v)):
        if _search_vec(st, p2, y) and _search_vec(st, p1, tuple(a - b for a, b in zip(v, y))):
            return True
    return False


def _search_vec_sub(st, g, v) -> bool:
    p1, p2 = g.preds
    if v is INF:
        return _search_vec(st, p1, INF) and _vec_nonempty(st, p2, with_inf=False)
    w = max(st.prof[p1], st.prof[p2])
    dims = st.c.dim
    for y in itertools.product(range(w + 1), repeat=dims):
        if _search_vec(st, p2, y) and _search_vec(st, p1, tuple(a + b for a, b in zip(v, y))):
            return True
    return False


def _vec_nonempty(st: _SearchState, gid: int, with_inf: bool) -> bool:
    """Whether I(gid) has any finite element (optionally counting inf too)."""
    key = (gid, with_inf)
    if key in st.nonempty_memo:
        return st.nonempty_memo[key]
    n = st.prof[gid]
    res = with_inf and _search_vec(st, gid, INF)
    if not res:
        for p in itertools.product(range(n + 1), repeat=st.c.dim):
            if _search_vec(st, gid, p):
                res = True
                break
    st.nonempty_memo[key] = res
    return res


# ---------------------------------------------------------------------------
# certificates for comp-free circuits

class _CertState:
    __slots__ = ("c", "ub", "budget", "memo", "any_memo", "steps")

    def __init__(self, c, ub, budget):
        self.c = c
        self.ub = ub  # gate id -> sound upper bound on the gate's values
        self.budget = budget
        self.memo: dict = {}
        self.any_memo: dict = {}
        self.steps = 0


def certificate_search(c: Circuit, b: int, budget: EngineBudget = DEFAULT_BUDGET):
    """Search a per-gate value assignment witnessing b in I(C).

    The circuit is expanded to a formula first; interval arithmetic over the
    gates (union is max, inter is min, quotients never exceed the dividend)
    yields per-gate value bounds that cap every guess, so the search is
    complete. Returns (member, witness, stats); the witness maps gate ids of
    the expanded formula to values along the active branches.
    """
    from .transforms import expand_formula

    _require(c, EXACT_SCALAR, "certificate search", vector=False)
    f = expand_formula(c, max_gates=budget.max_formula_gates)
    st = _CertState(f, _formula_value_bounds(f), budget)
    ok = _cert_can(st, f.output, b)
    witness = None
    if ok:
        witness = {}
        _cert_collect(st, f.output, b, witness)
    stats = {"memo_entries": len(st.memo), "formula_gates": len(f), "steps": st.steps}
    return ok, witness, stats


def _formula_value_bounds(f: Circuit) -> dict:
    """Sound per-gate upper bounds by interval arithmetic (comp-free scalar)."""
    ub: dict = {}
    for g in f.gates:
        if g.kind is GateKind.INPUT:
            ub[g.gid] = g.value
        elif g.kind is GateKind.UNION:
            ub[g.gid] = max(ub[g.preds[0]], ub[g.preds[1]])
        elif g.kind is GateKind.INTER:
            ub[g.gid] = min(ub[g.preds[0]], ub[g.preds[1]])
        elif g.kind is GateKind.ADD:
            ub[g.gid] = ub[g.preds[0]] + ub[g.preds[1]]
        elif g.kind is GateKind.MUL:
            ub[g.gid] = ub[g.preds[0]] * ub[g.preds[1]]
        else:  # DIV: a quotient never exceeds its dividend
            ub[g.gid] = ub[g.preds[0]]
    return ub


def _cert_step(st: _CertState):
    st.steps += 1
    if st.steps > st.budget.max_memo_entries:
        raise BudgetExceeded("memo", "certificate search steps")


def _cert_can(st: _CertState, gid: int, v: int) -> bool:
    if v < 0 or v > st.ub[gid]:
        return False
    key = (gid, v)
    if key in st.memo:
        return st.memo[key]
    _cert_step(st)
    g = st.c.gate(gid)
    if g.kind is GateKind.INPUT:
        res = v == g.value
    elif g.kind is GateKind.UNION:
        res = _cert_can(st, g.preds[0], v) or _cert_can(st, g.preds[1], v)
    elif g.kind is GateKind.INTER:
        res = _cert_can(st, g.preds[0], v) and _cert_can(st, g.preds[1], v)
    elif g.kind is GateKind.ADD:
        p1, p2 = g.preds
        res = any(_cert_can(st, p2, a) and _cert_can(st, p1, v - a) for a in range(v + 1))
    elif g.kind is GateKind.MUL:
        res = _cert_can_mul(st, g, v)
    else:  # DIV
        res = _cert_can_div(st, g, v)
    st.memo[key] = res
    return res


def _cert_can_mul(st, g, v) -> bool:
    p1, p2 = g.preds
    if v == 0:
        return (_cert_can(st, p1, 0) and _cert_any(st, p2) is not None) or (
            _cert_can(st, p2, 0) and _cert_any(st, p1) is not None
        )
    d = 1
    while d * d <= v:
        if v % d == 0:
            _cert_step(st)
            if _cert_can(st, p1, d) and _cert_can(st, p2, v // d):
                return True
            if d != v // d and _cert_can(st, p1, v // d) and _cert_can(st, p2, d):
                return True
        d += 1
    return False


def _cert_can_div(st, g, v) -> bool:
    p1, p2 = g.preds
    if v == 0:
        # 0 = a/w exactly when a = 0 and some nonzero w is available
        if not _cert_can(st, p1, 0):
            return False
        return _cert_any(st, p2, nonzero=True) is not None
    wmax = min(st.ub[p2], st.ub[p1] // v)
    for w in range(1, wmax + 1):
        _cert_step(st)
        if _cert_can(st, p2, w) and _cert_can(st, p1, v * w):
            return True
    return False


def _cert_any(st: _CertState, gid: int, nonzero: bool = False):
    """Some value v with v in I(gid) (nonzero if asked), or None."""
    key = (gid, nonzero)
    if key in st.any_memo:
        return st.any_memo[key]
    found = None
    for v in range(1 if nonzero else 0, st.ub[gid] + 1):
        _cert_step(st)
        if _cert_can(st, gid, v):
            found = v
            break
    st.any_memo[key] = found
    return found


def _cert_collect(st: _CertState, gid: int, v: int, out: dict):
    """Rebuild the successful assignment; only called where _cert_can holds."""
    out[gid] = v
    g = st.c.gate(gid)
    if g.kind is GateKind.INPUT:
        return
    p1, p2 = g.preds[0], g.preds[-1]
    if g.kind is GateKind.UNION:
        side = p1 if _cert_can(st, p1, v) else p2
        _cert_collect(st, side, v, out)
    elif g.kind is GateKind.INTER:
        _cert_collect(st, p1, v, out)
        _cert_collect(st, p2, v, out)
    elif g.kind is GateKind.ADD:
        for a in range(v + 1):
            if _cert_can(st, p2, a) and _cert_can(st, p1, v - a):
                _cert_collect(st, p1, v - a, out)
                _cert_collect(st, p2, a, out)
                return
    elif g.kind is GateKind.MUL:
        if v == 0:
            if _cert_can(st, p1, 0) and (w := _cert_any(st, p2)) is not None:
                _cert_collect(st, p1, 0, out)
                _cert_collect(st, p2, w, out)
            else:
                a = _cert_any(st, p1)
                _cert_collect(st, p1, a, out)
                _cert_collect(st, p2, 0, out)
            return
        d = 1
        while d * d <= v:
            if v % d == 0:
                for x, y in ((d, v // d), (v // d, d)):
                    if _cert_can(st, p1, x) and _cert_can(st, p2, y):
                        _cert_collect(st, p1, x, out)
                        _cert_collect(st, p2, y, out)
                        return
            d += 1
    else:  # DIV
        if v == 0:
            w = _cert_any(st, p2, nonzero=True)
            _cert_collect(st, p1, 0, out)
            _cert_collect(st, p2, w, out)
            return
        wmax = min(st.ub[p2], st.ub[p1] // v)
        for w in range(1, wmax + 1):
            if _cert_can(st, p2, w) and _cert_can(st, p1, v * w):
                _cert_collect(st, p1, v * w, out)
                _cert_collect(st, p2, w, out)
                return


def verify_certificate(c: Circuit, b: int, witness: dict) -> bool:
    """Check a witness from certificate_search against the expanded formula.

    Local rules per active gate: inputs match their label; union follows a
    predecessor present in the witness with the same value; inter needs both
    equal; add/mul are the exact arithmetic; div v = a/w needs w >= 1 and
    a == v * w. The output must carry b.
    """
    from .transforms import expand_formula

    _require(c, EXACT_SCALAR, "certificate verification", vector=False)
    f = expand_formula(c)
    if witness.get(f.output) != b:
        return False

    def check(gid) -> bool:
        if gid not in witness:
            return False
        v = witness[gid]
        if not isinstance(v, int) or v < 0:
            return False
        g = f.gate(gid)
        if g.kind is GateKind.INPUT:
            return v == g.value
        if g.kind is GateKind.UNION:
            return any(witness.get(p) == v and check(p) for p in g.preds)
        p1, p2 = g.preds
        if g.kind is GateKind.INTER:
            return witness.get(p1) == v == witness.get(p2) and check(p1) and check(p2)
        if not (check(p1) and check(p2)):
            return False
        a, w = witness[p1], witness[p2]
        if g.kind is GateKind.ADD:
            return v == a + w
        if g.kind is GateKind.MUL:
            return v == a * w
        return w >= 1 and a == v * w  # DIV

    return check(f.output)


# ---------------------------------------------------------------------------
# numpy grid reference for vector circuits

def eval_grid_reference(c: Circuit, margin: int = 2, budget: EngineBudget = DEFAULT_BUDGET):
    """Evaluate a vector circuit on one uniform clamped grid (numpy bool arrays).

    The width is the maximum structural cutoff plus margin, so every
    per-gate cutoff argument applies a fortiori. Returns (grids, inf_flags,
    width) where grids[gid][p] is membership of the literal point p and
    index width in a coordinate stands for "that coordinate >= width".
    """
    _require(c, CLAMPABLE_VECTOR, "grid reference evaluation", vector=True)
    prof = structural_cutoff(c)
    width = max(prof.cutoffs.values()) + margin
    m = c.dim
    if (width + 1) ** m > budget.max_grid_cells:
        raise BudgetExceeded("grid", f"reference grid ({width + 1})^{m}")
    shape = (width + 1,) * m
    grids: dict = {}
    infs: dict = {}
    for g in c.gates:
        if g.kind is GateKind.INPUT:
            arr = np.zeros(shape, dtype=bool)
            if g.value is INF:
                infs[g.gid] = True
            else:
                arr[tuple(g.value)] = True
                infs[g.gid] = False
            grids[g.gid] = arr
            continue
        if g.kind is GateKind.COMP:
            grids[g.gid] = ~grids[g.preds[0]]
            infs[g.gid] = not infs[g.preds[0]]
            continue
        a, b = (grids[p] for p in g.preds)
        ia, ib = (infs[p] for p in g.preds)
        if g.kind is GateKind.UNION:
            grids[g.gid] = a | b
            infs[g.gid] = ia or ib
        elif g.kind is GateKind.INTER:
            grids[g.gid] = a & b
            infs[g.gid] = ia and ib
        elif g.kind is GateKind.ADD:
            out = np.zeros(shape, dtype=bool)
            for y in np.argwhere(b):
                src = tuple(slice(0, width + 1 - int(v)) for v in y)
                dst = tuple(slice(int(v), width + 1) for v in y)
                out[dst] |= a[src]
            grids[g.gid] = out
            infs[g.gid] = (ia and (b.any() or ib)) or (ib and (a.any() or ia))
        else:  # SUB
            ext = np.pad(a, [(0, width + 1)] * m, mode="edge")
            out = np.zeros(shape, dtype=bool)
            for y in np.argwhere(b):
                window = tuple(slice(int(v), int(v) + width + 1) for v in y)
                out |= ext[window]
            grids[g.gid] = out
            infs[g.gid] = ia and bool(b.any())
    return grids, infs, width


def grid_reference_member(grids, infs, width, gid, x) -> bool:
    if x is INF:
        return bool(infs[gid])
    idx = tuple(min(v, width) for v in x)
    return bool(grids[gid][idx])


# ---------------------------------------------------------------------------
# dispatch

def decide(
    c: Circuit,
    b,
    engine: str = "auto",
    cutoff_mode: CutoffMode | str = CutoffMode.STRUCTURAL,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> MembershipVerdict:
    """Decide b in I(C), routing by fragment unless an engine is forced.

    Scalar routes (most specific first): mul without add and without comp
    goes through the exponent-vector transforms; otherwise singleton, exact
    (certificate fallback on budget), or the clamped engines. comp together
    with add and mul is refused as an open problem. Vector circuits accept
    tuple or INF queries and use the vector engines directly.
    """
    t0 = time.perf_counter()
    v = _dispatch(c, b, engine, cutoff_mode, budget)
    elapsed = int((time.perf_counter() - t0) * 1e6)
    stats = dict(v.stats)
    stats.setdefault("gates", len(c))
    stats["micros"] = elapsed
    return MembershipVerdict(
        member=v.member,
        engine=v.engine,
        cutoff_mode=v.cutoff_mode,
        stats=stats,
        witness=v.witness,
    )


def _dispatch(c, b, engine, cutoff_mode, budget) -> MembershipVerdict:
    if engine == "auto":
        engine = _pick_engine(c)
    if c.vector:
        return _run_vector_engine(c, b, engine, cutoff_mode, budget)
    return _run_scalar_engine(c, b, engine, cutoff_mode, budget)


def _pick_engine(c: Circuit) -> str:
    frag = fragment_of(c)
    if c.vector:
        if frag <= SINGLETON_VECTOR:
            return "singleton-vector"
        if frag <= EXACT_VECTOR:
            return "exact"
        return "clamped-vector"
    has_comp = GateKind.COMP in frag
    has_add = GateKind.ADD in frag
    has_mul = GateKind.MUL in frag
    if has_comp and has_add and has_mul:
        raise OpenFragmentError(
            "unsupported fragment: comp with both add and mul; decidability open"
        )
    if not has_comp:
        if has_mul and not has_add:
            return "singleton-vector" if GateKind.UNION not in frag else "exact-vector"
        if frag <= SINGLETON_SCALAR:
            return "singleton"
        return "exact"
    if not has_mul:
        return "clamped-scalar"
    return "clamped-vector"


def _run_scalar_engine(c, b, engine, cutoff_mode, budget) -> MembershipVerdict:
    if not isinstance(b, int) or b < 0:
        raise ValueError(f"query must be a natural number, got {b!r}")
    if engine == "singleton":
        val = eval_singleton(c)
        return MembershipVerdict(val[c.output] == b, "singleton", "none")
    if engine == "exact":
        try:
            sets = eval_exact(c, budget)
        except BudgetExceeded:
            engine = "certificate"  # same fragment, guess values instead of sets
        else:
            return MembershipVerdict(b in sets[c.output], "exact", "none")
    if engine == "certificate":
        ok, witness, stats = certificate_search(c, b, budget)
        return MembershipVerdict(ok, "certificate", "none", stats=stats, witness=witness)
    if engine == "clamped-scalar":
        reps, out = eval_clamped_scalar(c, cutoff_mode, budget)
        return MembershipVerdict(out.member(b), "clamped-scalar", _mode_name(cutoff_mode))
    if engine == "search":
        stats: dict = {}
        res = search_member(c, b, cutoff_mode, budget, _stats=stats)
        return MembershipVerdict(res, "search", _mode_name(cutoff_mode), stats=stats)
    if engine == "singleton-vector":
        vc, q, emap = to_vector_gcdfree(c, b)
        val = eval_singleton_vector(vc)
        out = val[vc.output]
        member = out == q or (out is INF and q is INF)
        return MembershipVerdict(
            member, "singleton-vector", "none", stats={"transform": "gcd-free", "dim": vc.dim}
        )
    if engine == "exact-vector":
        vc, q, emap = to_vector_gcdfree(c, b)
        sets = eval_exact(vc, budget)
        return MembershipVerdict(
            q in sets[vc.output], "exact", "none", stats={"transform": "gcd-free", "dim": vc.dim}
        )
    if engine == "clamped-vector":
        vc, q, emap = to_vector_primefact(c, b)
        reps, out = eval_clamped_vector(vc, cutoff_mode, budget)
        return MembershipVerdict(
            out.member(q),
            "clamped-vector",
            _mode_name(cutoff_mode),
            stats={"transform": "prime-factors", "dim": vc.dim},
        )
    raise ValueError(f"unknown engine {engine!r}")


def _run_vector_engine(c, x, engine, cutoff_mode, budget) -> MembershipVerdict:
    if x is not INF:
        x = tuple(x)
        if len(x) != c.dim or any(not isinstance(v, int) or v < 0 for v in x):
            raise ValueError(f"query must be a {c.dim}-tuple of naturals or inf")
    if engine == "singleton-vector":
        val = eval_singleton_vector(c)
        out = val[c.output]
        return MembershipVerdict(out == x or (out is INF and x is INF), "singleton-vector", "none")
    if engine == "exact":
        sets = eval_exact(c, budget)
        return MembershipVerdict(x in sets[c.output], "exact", "none")
    if engine == "clamped-vector":
        reps, out = eval_clamped_vector(c, cutoff_mode, budget)
        return MembershipVerdict(out.member(x), "clamped-vector", _mode_name(cutoff_mode))
    if engine == "search":
        stats: dict = {}
        res = search_member(c, x, cutoff_mode, budget, _stats=stats)
        return MembershipVerdict(res, "search", _mode_name(cutoff_mode), stats=stats)
    if engine == "grid-reference":
        grids, infs, width = eval_grid_reference(c, budget=budget)
        res = grid_reference_member(grids, infs, width, c.output, x)
        return MembershipVerdict(res, "grid-reference", "structural")
    raise ValueError(f"engine {engine!r} does not run on vector circuits")


def _mode_name(mode) -> str:
    if isinstance(mode, CutoffProfile):
        return mode.mode.value
    return str(CutoffMode(mode) if not isinstance(mode, CutoffMode) else mode)


# ---------------------------------------------------------------------------
# engine cross-checking

def applicable_engines(c: Circuit) -> list[str]:
    """Engine ids whose preconditions the circuit meets."""
    frag = fragment_of(c)
    out = []
    if c.vector:
        if frag <= SINGLETON_VECTOR:
            out.append("singleton-vector")
        if frag <= EXACT_VECTOR:
            out.append("exact")
        if frag <= CLAMPABLE_VECTOR:
            out.extend(["clamped-vector", "search", "grid-reference"])
        return out
    if frag <= SINGLETON_SCALAR:
        out.append("singleton")
    if frag <= EXACT_SCALAR:
        out.extend(["exact", "certificate"])
    if frag <= CLAMPABLE_SCALAR:
        out.extend(["clamped-scalar", "search"])
    if frag <= GCDFREE_SCALAR:
        out.append("exact-vector")
        if GateKind.UNION not in frag:
            out.append("singleton-vector")
    if frag <= PRIMEFACT_SCALAR:
        out.append("clamped-vector")
    return out


def xcheck_circuit(
    c: Circuit,
    max_b: int = 24,
    cutoff_mode: CutoffMode | str = CutoffMode.STRUCTURAL,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> list[str]:
    """Run every applicable engine on a shared query range; report disagreements.

    Scalar circuits probe b in [0, max_b]; vector circuits probe the grid up
    to min(max_b, output cutoff + 2) per coordinate, plus inf. Engines whose
    representation is query-independent are evaluated once and probed many
    times; an engine whose budget runs out abstains. Returns human-readable
    disagreement lines (empty means every engine that ran agrees).
    """
    engines = applicable_engines(c)
    if len(engines) < 2:
        return []
    problems = []
    if c.vector:
        top = min(max_b, structural_cutoff(c)[c.output] + 2)
        queries = list(itertools.product(range(top + 1), repeat=c.dim)) + [INF]
    else:
        queries = list(range(max_b + 1))
    callables = []
    for eng in engines:
        try:
            callables.append((eng, _engine_callable(c, eng, cutoff_mode, budget)))
        except BudgetExceeded:
            continue
    for q in queries:
        got = {}
        for eng, fn in callables:
            try:
                got[eng] = fn(q)
            except BudgetExceeded:
                continue
        if len(set(got.values())) > 1:
            desc = ", ".join(f"{e}={v}" for e, v in sorted(got.items()))
            problems.append(f"query {q}: {desc}")
    return problems


def _engine_callable(c: Circuit, eng: str, cutoff_mode, budget):
    """A membership closure for one engine, sharing state across queries."""
    out = c.output
    if eng == "singleton":
        val = eval_singleton(c)[out]
        return lambda b: val == b
    if eng == "singleton-vector" and c.vector:
        val = eval_singleton_vector(c)[out]
        return lambda x: val == x or (val is INF and x is INF)
    if eng == "exact":
        sets = eval_exact(c, budget)[out]
        return lambda b: b in sets
    if eng == "certificate":
        from .transforms import expand_formula

        f = expand_formula(c, max_gates=budget.max_formula_gates)
        st = _CertState(f, _formula_value_bounds(f), budget)
        return lambda b: _cert_can(st, f.output, b)
    if eng == "clamped-scalar":
        rep = eval_clamped_scalar(c, cutoff_mode, budget)[1]
        return rep.member
    if eng == "clamped-vector" and c.vector:
        rep = eval_clamped_vector(c, cutoff_mode, budget)[1]
        return rep.member
    if eng == "search":
        st = _SearchState(c, _resolve_profile(c, cutoff_mode), budget)
        if c.vector:
            return lambda x: _search_vec(st, out, x)
        return lambda b: _search_nat(st, out, b)
    if eng == "grid-reference":
        grids, infs, width = eval_grid_reference(c, budget=budget)
        return lambda x: grid_reference_member(grids, infs, width, out, x)
    if eng in ("singleton-vector", "exact-vector", "clamped-vector"):
        # scalar circuit through a vectorizing transform; the exponent basis
        # depends on the query, so cache evaluations per distinct basis
        cache: dict = {}

        def fn(b, _eng=eng):
            tf = to_vector_primefact if _eng == "clamped-vector" else to_vector_gcdfree
            vc, q, emap = tf(c, b)
            key = emap.base
            if key not in cache:
                if _eng == "singleton-vector":
                    cache[key] = ("val", eval_singleton_vector(vc)[vc.output])
                elif _eng == "exact-vector":
                    cache[key] = ("set", eval_exact(vc, budget)[vc.output])
                else:
                    cache[key] = ("rep", eval_clamped_vector(vc, cutoff_mode, budget)[1])
            tag, payload = cache[key]
            if tag == "val":
                return payload == q or (payload is INF and q is INF)
            if tag == "set":
                return q in payload
            return payload.member(q)

        return fn
    raise ValueError(f"engine {eng!r} is not applicable here")
