"""Set representations and the operations on them.

Three layers:

* exact finite sets (plain frozensets of naturals, or of vectors/INF for the
  vector domain) with exact_apply;
* NatSetRep, a clamped bitmap over [0, n]: bit z for z < n is literal
  membership, bit n stands for every z >= n. Valid whenever membership is
  constant from n on (a cutoff for the set);
* VecSetRep, the per-coordinate generalization: a table over the closed grid
  [0, n]^m where index n in a coordinate means "that coordinate >= n", plus a
  separate flag for the adjoined point inf. Membership of x reads the cell at
  componentwise min(x, n).

The clamped operations are exact under the clamped reading provided the
caller certifies the result cutoff (see the bounds module). Division and
subtraction need finite witness searches; the enumeration bounds below are
exact by a clamping argument: any witness outside the searched box can be
clamped into it without changing either membership test.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .circuit import INF, GateKind
from .errors import BudgetExceeded


# ---------------------------------------------------------------------------
# exact finite sets

def exact_apply(kind: GateKind, a: frozenset, b: frozenset | None = None) -> frozenset:
    """Apply one set operation to exact finite operands.

    Scalar elements are naturals; vector elements are tuples (plus INF).
    comp is refused: complements of finite sets are not finite.
    """
    if kind is GateKind.UNION:
        return a | b
    if kind is GateKind.INTER:
        return a & b
    if kind is GateKind.ADD:
        return _exact_add(a, b)
    if kind is GateKind.MUL:
        return frozenset(x * y for x in a for y in b)
    if kind is GateKind.DIV:
        return frozenset(x // y for x in a for y in b if y != 0 and x % y == 0)
    if kind is GateKind.SUB:
        return _exact_sub(a, b)
    raise ValueError(f"exact_apply cannot apply {kind}")


def _exact_add(a, b):
    out = set()
    for x in a:
        for y in b:
            if x is INF or y is INF:
                out.add(INF)
            elif isinstance(x, tuple):
                out.add(tuple(p + q for p, q in zip(x, y)))
            else:
                out.add(x + y)
    return frozenset(out)


def _exact_sub(a, b):
    # x - y over N^m extended by inf: inf - v = inf for finite v;
    # v - inf and inf - inf are undefined and contribute nothing.
    out = set()
    for x in a:
        for y in b:
            if y is INF:
                continue
            if x is INF:
                out.add(INF)
                continue
            d = tuple(p - q for p, q in zip(x, y))
            if all(v >= 0 for v in d):
                out.add(d)
    return frozenset(out)


# ---------------------------------------------------------------------------
# scalar clamped bitmaps

@dataclass(frozen=True)
class NatSetRep:
    """Bitmap over [0, cutoff]; bit cutoff folds the constant tail."""

    cutoff: int
    mask: int  # bit z set <=> min(z, cutoff) in the set

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.mask >> (self.cutoff + 1):
            raise ValueError("mask has bits beyond the cutoff")

    @property
    def tail(self) -> bool:
        """Whether every z >= cutoff is in the set."""
        return bool(self.mask >> self.cutoff & 1)

    def member(self, z: int) -> bool:
        return bool(self.mask >> min(z, self.cutoff) & 1)

    def elements_upto(self, n: int) -> list[int]:
        return [z for z in range(n + 1) if self.member(z)]

    @classmethod
    def from_elements(cls, elems, cutoff: int, tail: bool = False):
        mask = (1 << cutoff) if tail else 0
        for z in elems:
            if z >= cutoff:
                raise ValueError(f"element {z} not below cutoff {cutoff}")
            mask |= 1 << z
        return cls(cutoff=cutoff, mask=mask)


def natrep_member(rep: NatSetRep, z: int) -> bool:
    return rep.member(z)


def natrep_apply(
    kind: GateKind,
    a: NatSetRep,
    b: NatSetRep | None,
    result_cutoff: int,
    max_grid_cells: int = 10**7,
) -> NatSetRep:
    """Apply one scalar operation, producing a rep at result_cutoff.

    The caller certifies that result_cutoff is a valid cutoff for the result
    set; every cell is then computed exactly from clamped operand lookups.
    mul is never applied to clamped scalar reps (value growth defeats any
    cutoff argument); use the vector transforms for fragments with mul.
    """
    n = result_cutoff
    if n < 1:
        raise ValueError(f"result_cutoff must be >= 1, got {n}")
    if n + 1 > max_grid_cells:
        raise BudgetExceeded("grid", f"scalar bitmap of {n + 1} cells")
    if kind is GateKind.COMP:
        full = (1 << (n + 1)) - 1
        return NatSetRep(cutoff=n, mask=full ^ _extend(a, n))
    if kind is GateKind.UNION or kind is GateKind.INTER:
        ea, eb = _extend(a, n), _extend(b, n)
        mask = (ea | eb) if kind is GateKind.UNION else (ea & eb)
        return NatSetRep(cutoff=n, mask=mask)
    if kind is GateKind.ADD:
        ea, eb = _extend(a, n), _extend(b, n)
        acc = 0
        full = (1 << (n + 1)) - 1
        while ea:
            low = ea & -ea
            acc |= eb << (low.bit_length() - 1)
            ea ^= low
        return NatSetRep(cutoff=n, mask=acc & full)
    if kind is GateKind.DIV:
        return _natrep_div(a, b, n)
    raise ValueError(f"natrep_apply cannot apply {kind}")


def _extend(rep: NatSetRep, n: int) -> int:
    """Literal membership bits of rep over [0, n] (unfolding the tail)."""
    if n <= rep.cutoff:
        # keep literal bits below n; bit n becomes membership of the number n
        mask = rep.mask & ((1 << n) - 1)
        if rep.member(n):
            mask |= 1 << n
        return mask
    mask = rep.mask
    if rep.tail:
        mask |= ((1 << (n - rep.cutoff)) - 1) << (rep.cutoff + 1)
    return mask


def _natrep_div(a: NatSetRep, b: NatSetRep, n: int) -> NatSetRep:
    # c in A div B  <=>  exists w >= 1: w in B and c*w in A.
    # For w > max(n_A, n_B) both tests are constant in w, so searching
    # w <= max(n_A, n_B) + 1 is exact.
    wmax = max(a.cutoff, b.cutoff) + 1
    mask = 0
    full = (1 << (n + 1)) - 1
    for w in range(1, wmax + 1):
        if not b.member(w):
            continue
        lit = a.cutoff // w  # beyond this, c*w clamps to a's tail
        for c in range(0, min(n, lit) + 1):
            if a.member(c * w):
                mask |= 1 << c
        if a.tail and lit < n:
            mask |= ((1 << (n - lit)) - 1) << (lit + 1)
        if (mask & full) == full:
            break
    return NatSetRep(cutoff=n, mask=mask & full)


# ---------------------------------------------------------------------------
# vector clamped grids

@dataclass(frozen=True)
class VecSetRep:
    """Clamped table over the closed grid [0, cutoff]^dim plus an inf flag.

    A cell with some coordinates equal to cutoff stands for the whole class
    of vectors with those coordinates >= cutoff (and the others as given);
    the representation is valid when true membership is constant on each
    such class.
    """

    dim: int
    cutoff: int
    cells: frozenset  # tuples in [0, cutoff]^dim
    inf: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        for p in self.cells:
            if len(p) != self.dim or any(x < 0 or x > self.cutoff for x in p):
                raise ValueError(f"cell {p} outside grid [0,{self.cutoff}]^{self.dim}")

    def member(self, x) -> bool:
        if x is INF:
            return self.inf
        return tuple(min(v, self.cutoff) for v in x) in self.cells

    @property
    def sat(self) -> bool:
        """Membership of the all-coordinates-large class."""
        return (self.cutoff,) * self.dim in self.cells

    @property
    def below(self) -> frozenset:
        """Cells strictly below the cutoff in every coordinate (literal points)."""
        return frozenset(p for p in self.cells if all(v < self.cutoff for v in p))

    def finite_nonempty(self) -> bool:
        return bool(self.cells)


def vecrep_member(rep: VecSetRep, x) -> bool:
    return rep.member(x)


def _grid(n: int, dim: int):
    return itertools.product(range(n + 1), repeat=dim)


def _check_grid_budget(n: int, dim: int, max_grid_cells: int):
    if (n + 1) ** dim > max_grid_cells:
        raise BudgetExceeded("grid", f"({n + 1})^{dim} cells")


def vecrep_apply(
    kind: GateKind,
    a: VecSetRep,
    b: VecSetRep | None,
    result_cutoff: int,
    max_grid_cells: int = 10**7,
) -> VecSetRep:
    """Apply one vector operation, producing a rep at result_cutoff.

    As with natrep_apply, the caller certifies the result cutoff. Every cell
    of the result is the true membership of that cell taken as a literal
    point, which equals the class membership under the certification.
    """
    n = result_cutoff
    if n < 1:
        raise ValueError(f"result_cutoff must be >= 1, got {n}")
    dim = a.dim
    if b is not None and b.dim != dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    _check_grid_budget(n, dim, max_grid_cells)

    if kind is GateKind.COMP:
        cells = frozenset(p for p in _grid(n, dim) if not a.member(p))
        return VecSetRep(dim=dim, cutoff=n, cells=cells, inf=not a.inf)
    if kind is GateKind.UNION:
        cells = frozenset(p for p in _grid(n, dim) if a.member(p) or b.member(p))
        return VecSetRep(dim=dim, cutoff=n, cells=cells, inf=a.inf or b.inf)
    if kind is GateKind.INTER:
        cells = frozenset(p for p in _grid(n, dim) if a.member(p) and b.member(p))
        return VecSetRep(dim=dim, cutoff=n, cells=cells, inf=a.inf and b.inf)
    if kind is GateKind.ADD:
        # total decompositions over the whole grid: prod over axes of 1+2+...+(n+1)
        work = (((n + 1) * (n + 2)) // 2) ** dim
        if work > max_grid_cells:
            raise BudgetExceeded("grid", f"add decomposition, ~{work} pairs")
        cells = frozenset(p for p in _grid(n, dim) if _point_in_add(a, b, p))
        inf = (a.inf and (b.finite_nonempty() or b.inf)) or (
            b.inf and (a.finite_nonempty() or a.inf)
        )
        return VecSetRep(dim=dim, cutoff=n, cells=cells, inf=inf)
    if kind is GateKind.SUB:
        w = max(a.cutoff, b.cutoff)
        if (n + 1) ** dim * (w + 1) ** dim > max_grid_cells:
            raise BudgetExceeded("grid", f"sub search ({n + 1})^{dim} x ({w + 1})^{dim}")
        cells = frozenset(p for p in _grid(n, dim) if _point_in_sub(a, b, p, w))
        inf = a.inf and b.finite_nonempty()
        return VecSetRep(dim=dim, cutoff=n, cells=cells, inf=inf)
    raise ValueError(f"vecrep_apply cannot apply {kind}")


def _point_in_add(a: VecSetRep, b: VecSetRep, p) -> bool:
    # finite p = x + y forces x, y <= p componentwise; each lookup of a
    # specific vector through .member is exact, so this decomposition is.
    for y in itertools.product(*(range(v + 1) for v in p)):
        if b.member(y) and a.member(tuple(u - w for u, w in zip(p, y))):
            return True
    return False


def _point_in_sub(a: VecSetRep, b: VecSetRep, p, w: int) -> bool:
    # p in A - B <=> exists finite y in B with p + y in A. Clamping any
    # coordinate of y at w = max(n_A, n_B) preserves y's class in B and
    # (p+y)'s class in A, so the box [0, w]^dim is enough.
    for y in _grid(w, a.dim):
        if b.member(y) and a.member(tuple(u + v for u, v in zip(p, y))):
            return True
    return False


def vecrep_from_label(value, dim: int, cutoff: int) -> VecSetRep:
    """Rep of a singleton input label ({v} or {inf}) at the given cutoff."""
    if value is INF:
        return VecSetRep(dim=dim, cutoff=cutoff, cells=frozenset(), inf=True)
    if any(v >= cutoff for v in value):
        raise ValueError(f"label {value} not strictly below cutoff {cutoff}")
    return VecSetRep(dim=dim, cutoff=cutoff, cells=frozenset({tuple(value)}), inf=False)
