import random

import pytest

from setcircuits import (
    INF,
    BudgetExceeded,
    FragmentError,
    GateKind,
    decide,
    demorgan_rewrite,
    eliminate_cap,
    eval_exact,
    eval_singleton,
    expand_formula,
    fragment_of,
    parse_circuit,
    to_vector_gcdfree,
    to_vector_primefact,
)
from setcircuits.reductions import primes_circuit

from circgen import bounded_scalar, random_scalar
from refeval import exact_sets_bruteforce


def _mul_circuit():
    return parse_circuit(
        "circuit v1\n"
        "gate 1 input 6\n"
        "gate 2 input 10\n"
        "gate 3 mul 1 2\n"
        "output 3\n"
    )


class TestGcdFreeVectorization:
    def test_labels_become_exponent_vectors(self):
        vc, q, emap = to_vector_gcdfree(_mul_circuit(), 60)
        assert emap.base == (2, 3, 5)
        assert vc.dim == 3
        assert q == (2, 1, 1)
        labels = {g.gid: g.value for g in vc.gates if g.kind is GateKind.INPUT}
        assert labels == {1: (1, 1, 0), 2: (1, 0, 1)}
        kinds = {g.gid: g.kind for g in vc.gates}
        assert kinds[3] is GateKind.ADD

    def test_query_primes_extend_the_basis(self):
        vc, q, emap = to_vector_gcdfree(_mul_circuit(), 7)
        assert 7 in emap.base
        assert q == (0, 0, 0, 1)

    def test_zero_maps_to_inf(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 0\ngate 2 input 1\ngate 3 mul 1 2\noutput 3\n"
        )
        vc, q, emap = to_vector_gcdfree(c, 0)
        assert q is INF
        labels = {g.gid: g.value for g in vc.gates if g.kind is GateKind.INPUT}
        assert labels[1] is INF
        assert labels[2] == tuple([0] * vc.dim)

    def test_agreement_with_scalar_semantics(self):
        rng = random.Random(11)
        ops = (GateKind.UNION, GateKind.INTER, GateKind.MUL, GateKind.DIV)
        for _ in range(60):
            c = random_scalar(rng, ops, max_gates=5, max_label=12)
            out = exact_sets_bruteforce(c)[c.output]
            for b in (0, 1, rng.randrange(1, 40), rng.randrange(1, 40)):
                vc, q, emap = to_vector_gcdfree(c, b)
                got = decide(vc, q).member
                assert got == (b in out), f"b={b}\n{c}"


class TestPrimeFactorVectorization:
    def test_primes_circuit_shape(self):
        vc, q, emap = to_vector_primefact(primes_circuit(), 9)
        # one slot for the only query prime plus the shared spill slot
        assert emap.base == (3,)
        assert vc.dim == 2
        assert q == (2, 0)
        kinds = {g.gid: g.kind for g in vc.gates}
        assert kinds[5] is GateKind.ADD  # mul turned into vector addition

    def test_membership_transfers(self):
        pc = primes_circuit()
        for b in range(25):
            vc, q, emap = to_vector_primefact(pc, b)
            got = decide(vc, q).member
            assert got == (b in (2, 3, 5, 7, 11, 13, 17, 19, 23)), f"b={b}"

    def test_spill_slot_separates_foreign_primes(self):
        # {6} over base (3,): 6 = 3^1 * 2, so the spill coordinate is busy
        c = parse_circuit("circuit v1\ngate 1 input 6\noutput 1\n")
        vc, q, emap = to_vector_primefact(c, 3)
        assert decide(vc, q).member is False
        vc, q, emap = to_vector_primefact(c, 6)
        assert decide(vc, q).member is True


class TestEliminateCap:
    def test_disjoint_singletons_give_empty(self):
        for a, b in ((6, 7), (3, 7)):
            c = parse_circuit(
                f"circuit v1\ngate 1 input {a}\ngate 2 input {b}\n"
                "gate 3 inter 1 2\noutput 3\n"
            )
            e = eliminate_cap(c)
            assert GateKind.INTER not in fragment_of(e)
            assert eval_exact(e)[e.output] == frozenset()

    def test_equal_singletons_survive(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 6\ngate 2 input 6\ngate 3 inter 1 2\noutput 3\n"
        )
        e = eliminate_cap(c)
        assert eval_exact(e)[e.output] == frozenset({6})

    def test_random_singleton_circuits_preserved(self):
        rng = random.Random(23)
        ops = (GateKind.INTER, GateKind.ADD, GateKind.MUL, GateKind.DIV)
        for _ in range(120):
            c = random_scalar(rng, ops, max_gates=5, max_label=9)
            e = eliminate_cap(c)
            assert GateKind.INTER not in fragment_of(e)
            assert eval_singleton(c)[c.output] == eval_singleton(e)[e.output], str(c)

    def test_refuses_union_and_comp(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 1\ngate 2 comp 1\ngate 3 inter 1 2\noutput 3\n"
        )
        with pytest.raises(FragmentError):
            eliminate_cap(c)


class TestDeMorgan:
    def test_inter_gates_disappear(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 2\ngate 2 input 3\n"
            "gate 3 inter 1 2\ngate 4 comp 3\noutput 4\n"
        )
        d = demorgan_rewrite(c)
        assert GateKind.INTER not in fragment_of(d)
        assert GateKind.COMP in fragment_of(d)

    def test_membership_preserved(self):
        rng = random.Random(37)
        ops = (
            GateKind.UNION,
            GateKind.INTER,
            GateKind.COMP,
            GateKind.ADD,
            GateKind.DIV,
        )
        checked = 0
        for _ in range(80):
            c = bounded_scalar(rng, ops, max_gates=5, max_label=5, max_cutoff=24)
            if GateKind.COMP not in fragment_of(c):
                continue
            d = demorgan_rewrite(c)
            for b in range(0, 12):
                assert decide(d, b).member == decide(c, b).member, f"b={b}\n{c}"
            checked += 1
        assert checked >= 30

    def test_refuses_comp_free_circuits(self):
        c = parse_circuit("circuit v1\ngate 1 input 2\noutput 1\n")
        with pytest.raises(FragmentError):
            demorgan_rewrite(c)


class TestExpandFormula:
    def test_shared_gates_are_duplicated(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 2\ngate 2 add 1 1\ngate 3 add 2 2\noutput 3\n"
        )
        f = expand_formula(c)
        assert len(f.gates) == 7
        for g in f.gates:
            if g.gid != f.output:
                users = [h for h in f.gates if g.gid in h.preds]
                assert len(users) == 1

    def test_budget(self):
        c = parse_circuit(
            "circuit v1\ngate 1 input 2\ngate 2 add 1 1\ngate 3 add 2 2\noutput 3\n"
        )
        with pytest.raises(BudgetExceeded):
            expand_formula(c, max_gates=3)

    def test_membership_preserved(self):
        rng = random.Random(41)
        ops = (GateKind.UNION, GateKind.INTER, GateKind.ADD, GateKind.MUL)
        for _ in range(40):
            c = random_scalar(rng, ops, max_gates=5, max_label=6)
            f = expand_formula(c)
            want = exact_sets_bruteforce(c)[c.output]
            got = exact_sets_bruteforce(f)[f.output]
            assert want == got, str(c)
