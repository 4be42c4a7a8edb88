import itertools
import random

import pytest

from setcircuits import INF, GateKind, NatSetRep, VecSetRep, exact_apply, natrep_apply, vecrep_apply
from setcircuits.errors import BudgetExceeded
from setcircuits.setrep import vecrep_from_label

# ---------------------------------------------------------------------------
# exact frozenset algebra


def test_exact_apply_scalar_table():
    a, b = frozenset({2, 6}), frozenset({0, 3})
    assert exact_apply(GateKind.UNION, a, b) == {0, 2, 3, 6}
    assert exact_apply(GateKind.INTER, a, b) == set()
    assert exact_apply(GateKind.ADD, a, b) == {2, 5, 6, 9}
    assert exact_apply(GateKind.MUL, a, b) == {0, 6, 18}
    assert exact_apply(GateKind.DIV, a, b) == {2}  # 6/3; division by 0 skipped


def test_exact_div_examples():
    assert exact_apply(GateKind.DIV, frozenset({6}), frozenset({2, 3})) == {2, 3}
    assert exact_apply(GateKind.DIV, frozenset({5}), frozenset({0})) == set()
    assert exact_apply(GateKind.DIV, frozenset({0}), frozenset({4})) == {0}


def test_exact_apply_vector():
    a = frozenset({(1, 2), INF})
    b = frozenset({(0, 1)})
    assert exact_apply(GateKind.ADD, a, b) == {(1, 3), INF}
    assert exact_apply(GateKind.SUB, a, b) == {(1, 1), INF}
    assert exact_apply(GateKind.SUB, b, a) == set()  # (0,1)-(1,2) negative; y=inf skipped


def test_exact_apply_refuses_comp():
    with pytest.raises(ValueError):
        exact_apply(GateKind.COMP, frozenset({1}), None)


# ---------------------------------------------------------------------------
# scalar clamped tables


def literal(rep: NatSetRep, n: int) -> set:
    return {z for z in range(n + 1) if rep.member(z)}


def test_natrep_basics():
    r = NatSetRep.from_elements([0, 2], cutoff=4)
    assert r.member(0) and r.member(2)
    assert not r.member(1) and not r.member(4) and not r.member(100)
    assert not r.tail
    assert r.elements_upto(10) == [0, 2]


def test_natrep_from_elements_requires_room():
    with pytest.raises(ValueError):
        NatSetRep.from_elements([5], cutoff=5)  # 5 is the tail class, not literal


def test_natrep_comp_has_tail():
    a = NatSetRep.from_elements([1], cutoff=3)
    c = natrep_apply(GateKind.COMP, a, None, 3)
    assert literal(c, 10) == {0, 2, 3, 4, 5, 6, 7, 8, 9, 10}
    assert c.tail


def test_natrep_div_two_witness_example():
    a = NatSetRep.from_elements([6], cutoff=8)
    b = NatSetRep.from_elements([2, 3], cutoff=8)
    q = natrep_apply(GateKind.DIV, a, b, 8)
    assert literal(q, 8) == {2, 3}


def test_natrep_div_with_infinite_dividend():
    naturals = NatSetRep(cutoff=1, mask=0b11)  # {0} plus the whole tail
    two = NatSetRep.from_elements([2], cutoff=4)
    q = natrep_apply(GateKind.DIV, naturals, two, 6)
    assert literal(q, 30) == set(range(31))
    assert q.tail


def _random_rep(rng, cutoff):
    elems = [z for z in range(cutoff) if rng.random() < 0.4]
    return NatSetRep.from_elements(elems, cutoff, tail=rng.random() < 0.4)


def _lit_set(rep, n):
    return {z for z in range(n + 1) if rep.member(z)}


@pytest.mark.parametrize("kind", [GateKind.UNION, GateKind.INTER, GateKind.ADD, GateKind.DIV])
def test_natrep_ops_match_literal_sets(kind):
    rng = random.Random(hash(kind.value) & 0xFFFF)
    for _ in range(80):
        na, nb = rng.randint(1, 7), rng.randint(1, 7)
        a, b = _random_rep(rng, na), _random_rep(rng, nb)
        if kind is GateKind.ADD:
            n = na + nb + rng.randint(0, 3)
        else:
            n = max(na, nb) + rng.randint(0, 3)
        got = natrep_apply(kind, a, b, n)
        # wide literal window: beyond every cutoff, so tails are exercised
        w = 3 * (n + na + nb) + 7
        la, lb = _lit_set(a, w * (n + 2)), _lit_set(b, w * (n + 2))
        if kind is GateKind.UNION:
            want = {z for z in range(w + 1) if z in la or z in lb}
        elif kind is GateKind.INTER:
            want = {z for z in range(w + 1) if z in la and z in lb}
        elif kind is GateKind.ADD:
            want = {z for z in range(w + 1) if any(a_ in la and (z - a_) in lb for a_ in range(z + 1))}
        else:
            want = {
                z
                for z in range(w + 1)
                if any(bb != 0 and z * bb in la for bb in lb)
            }
        got_lit = _lit_set(got, w)
        assert got_lit == want, (kind, a, b, n)


def test_natrep_mul_refused():
    a = NatSetRep.from_elements([1], cutoff=3)
    with pytest.raises(ValueError):
        natrep_apply(GateKind.MUL, a, a, 3)


def test_natrep_budget():
    a = NatSetRep.from_elements([1], cutoff=3)
    with pytest.raises(BudgetExceeded):
        natrep_apply(GateKind.COMP, a, None, 10**8, max_grid_cells=10**6)


# ---------------------------------------------------------------------------
# vector clamped grids


def test_vecrep_from_label():
    r = vecrep_from_label((1, 2), dim=2, cutoff=4)
    assert r.member((1, 2)) and not r.member((2, 1)) and not r.member(INF)
    ri = vecrep_from_label(INF, dim=2, cutoff=1)
    assert ri.member(INF) and not ri.member((0, 0))
    with pytest.raises(ValueError):
        vecrep_from_label((4, 0), dim=2, cutoff=4)


def test_vecrep_member_clamps_per_coordinate():
    cells = frozenset({(0, 3), (3, 3)})
    r = VecSetRep(dim=2, cutoff=3, cells=cells)
    assert r.member((0, 50)) and r.member((70, 80))
    assert not r.member((50, 0))


def test_vecrep_comp_flips_everything():
    a = vecrep_from_label((1, 1), dim=2, cutoff=3)
    c = vecrep_apply(GateKind.COMP, a, None, 3)
    assert not c.member((1, 1))
    assert c.member((0, 0)) and c.member((9, 9)) and c.member(INF)


def test_vecrep_add_mixed_infinities():
    inf = vecrep_from_label(INF, dim=2, cutoff=1)
    pt = vecrep_from_label((1, 1), dim=2, cutoff=3)
    s = vecrep_apply(GateKind.ADD, inf, pt, 4)
    assert s.member(INF) and not s.member((1, 1))
    # inf plus the empty set is empty
    empty = VecSetRep(dim=2, cutoff=1, cells=frozenset())
    s2 = vecrep_apply(GateKind.ADD, inf, empty, 2)
    assert not s2.member(INF) and not s2.finite_nonempty()


def test_vecrep_add_classes():
    # the two-coordinate trap: comp({inf}) + {(1,1)} keeps (0, big) out but
    # includes (big, big)
    notinf = vecrep_apply(GateKind.COMP, vecrep_from_label(INF, dim=2, cutoff=1), None, 1)
    pt = vecrep_from_label((1, 1), dim=2, cutoff=3)
    s = vecrep_apply(GateKind.ADD, notinf, pt, 4)
    assert not s.member((0, 99))
    assert s.member((99, 99)) and s.member((1, 1)) and s.member((1, 99))
    assert not s.member((0, 0))


def test_vecrep_sub_witnesses_beyond_result_cutoff():
    # {3} - comp({inf}) needs witness y with 3+y against a finite-set table
    three = vecrep_from_label((3,), dim=1, cutoff=5)
    everything = vecrep_apply(GateKind.COMP, vecrep_from_label(INF, dim=1, cutoff=1), None, 1)
    d = vecrep_apply(GateKind.SUB, three, everything, 5)
    assert {p for p in itertools.product(range(6)) if d.member(p)} == {(0,), (1,), (2,), (3,)}
    assert not d.member(INF)


def test_vecrep_sub_inf_rules():
    inf = vecrep_from_label(INF, dim=1, cutoff=1)
    pt = vecrep_from_label((2,), dim=1, cutoff=4)
    assert vecrep_apply(GateKind.SUB, inf, pt, 2).member(INF)
    # x - inf contributes nothing
    assert not vecrep_apply(GateKind.SUB, pt, inf, 2).finite_nonempty()
    assert not vecrep_apply(GateKind.SUB, pt, inf, 2).member(INF)


def test_vecrep_budget():
    a = vecrep_from_label((0, 0, 0), dim=3, cutoff=2)
    with pytest.raises(BudgetExceeded):
        vecrep_apply(GateKind.UNION, a, a, 500, max_grid_cells=10**6)


def test_vecrep_dim_mismatch():
    a = vecrep_from_label((0, 0), dim=2, cutoff=2)
    b = vecrep_from_label((0,), dim=1, cutoff=2)
    with pytest.raises(ValueError):
        vecrep_apply(GateKind.UNION, a, b, 2)
