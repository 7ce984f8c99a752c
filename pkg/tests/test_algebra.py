import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hullkit.algebra import (
    ClosureResult,
    FiniteAlgebra,
    NamedOp,
    algebra_from_dict,
    algebra_to_dict,
    compose,
    check_congruence,
    identity_map,
    is_congruence,
    is_endomorphism,
    make_cyclic_group,
    make_semilattice_of_groups,
    make_set,
    make_sym_group,
    make_vector_space,
    normalize_partition,
    partition_classes,
    partition_from_blocks,
    partition_from_signature,
    partition_meet,
    quotient_algebra,
    replay_witnesses,
    subalgebra_closure,
    sym_group_gens,
    sym_group_perms,
)
from hullkit.errors import (
    ConstructionError,
    DimensionError,
    NotACongruenceError,
    ParseError,
    SizeRefusalError,
)


# --- oracles -----------------------------------------------------------

def closure_oracle(alg, seed):
    """Fixpoint saturation with full rescans; no witnesses, no ordering."""
    cur = set(seed)
    for op in alg.ops:
        if op.arity == 0:
            cur.add(op.table[0])
    changed = True
    while changed:
        changed = False
        for op in alg.ops:
            for args in itertools.product(sorted(cur), repeat=op.arity):
                v = op.value(alg.size, args)
                if v not in cur:
                    cur.add(v)
                    changed = True
    return cur


def endos_oracle(alg):
    """All of A^A filtered by the definition, checked per op table entry."""
    out = []
    for f in itertools.product(range(alg.size), repeat=alg.size):
        ok = True
        for op in alg.ops:
            for args in itertools.product(range(alg.size), repeat=op.arity):
                if f[op.value(alg.size, args)] != op.value(
                    alg.size, tuple(f[a] for a in args)
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


def random_algebra(rng, n, n_ops=2):
    ops = []
    for i in range(n_ops):
        arity = rng.choice([0, 1, 1, 2])
        table = tuple(rng.randrange(n) for _ in range(n**arity))
        ops.append(NamedOp("op%d" % i, arity, table))
    return FiniteAlgebra(n, tuple(ops))


# --- closure -----------------------------------------------------------

def test_closure_c4_even():
    c4 = make_cyclic_group(4)
    clo = subalgebra_closure(c4, {2})
    assert set(clo.elements) == closure_oracle(c4, {2}) == {0, 2}


def test_closure_span_diagonal():
    v = make_vector_space(2, 2)
    # vectors indexed lexicographically: 0=(0,0), 3=(1,1)
    clo = subalgebra_closure(v, {3})
    assert set(clo.elements) == closure_oracle(v, {3}) == {0, 3}


def test_closure_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(1, 7)
        alg = random_algebra(rng, n)
        seed = {rng.randrange(n) for _ in range(rng.randrange(1, 3))}
        clo = subalgebra_closure(alg, seed)
        assert set(clo.elements) == closure_oracle(alg, seed)


def test_closure_idempotent_and_deterministic():
    rng = random.Random(3)
    for _ in range(20):
        alg = random_algebra(rng, rng.randrange(2, 6))
        seed = {rng.randrange(alg.size)}
        clo1 = subalgebra_closure(alg, seed)
        clo2 = subalgebra_closure(alg, set(clo1.elements))
        assert sorted(clo2.elements) == sorted(clo1.elements)
        assert clo2.elements == sorted(clo2.elements)  # everything is a generator
        again = subalgebra_closure(alg, seed)
        assert again.elements == clo1.elements
        assert again.witness == clo1.witness


def test_witnesses_replay_and_precede():
    rng = random.Random(11)
    for _ in range(30):
        alg = random_algebra(rng, rng.randrange(2, 7))
        seed = {rng.randrange(alg.size)}
        clo = subalgebra_closure(alg, seed)
        seen = set()
        for x in clo.elements:
            w = clo.witness[x]
            if w[0] != "gen":
                op_idx, args = w
                assert all(a in seen for a in args)
                assert alg.ops[op_idx].value(alg.size, args) == x
            seen.add(x)
        # identity replay reproduces every element
        images = replay_witnesses(alg, clo, {a: a for a in seed})
        assert all(images[x] == x for x in clo.elements)


# --- endomorphisms -----------------------------------------------------

def test_endomorphism_c3():
    c3 = make_cyclic_group(3)
    assert is_endomorphism(c3, (0, 2, 1))  # negation
    assert not is_endomorphism(c3, (1, 2, 0))  # shift: does not fix 0


def test_cyclic_endos_are_multiplications():
    for n in (2, 3, 4, 5):
        cn = make_cyclic_group(n)
        expect = {tuple((k * x) % n for x in range(n)) for k in range(n)}
        assert set(endos_oracle(cn)) == expect
        for f in expect:
            assert is_endomorphism(cn, f)


def test_vector_space_endos_count():
    v = make_vector_space(2, 2)
    endos = endos_oracle(v)
    assert len(endos) == 16  # all of M_2(GF(2))
    assert all(is_endomorphism(v, f) for f in endos)


def test_set_every_map_is_endo():
    s = make_set(3)
    assert len(endos_oracle(s)) == 27


@given(st.integers(2, 5), st.data())
def test_is_endomorphism_agrees_with_oracle(n, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    alg = random_algebra(rng, n)
    f = tuple(data.draw(st.integers(0, n - 1)) for _ in range(n))
    naive = all(
        f[op.value(n, args)] == op.value(n, tuple(f[a] for a in args))
        for op in alg.ops
        for args in itertools.product(range(n), repeat=op.arity)
    )
    assert is_endomorphism(alg, f) == naive


# --- partitions and quotients ------------------------------------------

def test_normalize_partition():
    assert normalize_partition((1, 1, 2)) == (0, 0, 2)
    assert normalize_partition((2, 1, 2, 1)) == (0, 1, 0, 1)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_normalize_partition_props(labels):
    labels = [l % len(labels) for l in labels]
    rep = normalize_partition(labels)
    assert normalize_partition(rep) == rep
    for x, r in enumerate(rep):
        assert rep[r] == r and r <= x


def test_partition_helpers():
    rep = partition_from_blocks(4, [[0, 2], [1, 3]])
    assert rep == (0, 1, 0, 1)
    assert partition_classes(rep) == [[0, 2], [1, 3]]
    assert partition_from_signature("abab") == (0, 1, 0, 1)
    assert partition_meet((0, 0, 0, 3), (0, 1, 0, 1)) == (0, 1, 0, 3)


def test_quotient_gf22_by_diagonal():
    v = make_vector_space(2, 2)
    theta = partition_from_blocks(4, [[0, 3], [1, 2]])
    assert is_congruence(v, theta)
    q, proj = quotient_algebra(v, theta)
    assert q.size == 2
    assert proj == (0, 1, 1, 0)
    add = q.op_named("add").table
    assert add == (0, 1, 1, 0)  # the quotient is GF(2)


def test_quotient_c4_mod_two():
    c4 = make_cyclic_group(4)
    theta = partition_from_blocks(4, [[0, 2], [1, 3]])
    q, proj = quotient_algebra(c4, theta)
    assert q.size == 2 and proj == (0, 1, 0, 1)


def test_not_a_congruence_names_witness():
    c4 = make_cyclic_group(4)
    theta = partition_from_blocks(4, [[0, 1]])
    with pytest.raises(NotACongruenceError) as ei:
        check_congruence(c4, theta)
    assert ei.value.op_name == "add"
    args = ei.value.witness_args
    a = c4.op_named("add")
    rep = (0, 0, 2, 3)
    assert rep[a.value(4, args)] != rep[a.value(4, tuple(rep[x] for x in args))]


def test_congruences_of_c4_oracle():
    # brute force: partitions of 0..3 compatible with the group ops
    c4 = make_cyclic_group(4)
    good = []
    for labels in itertools.product(range(4), repeat=4):
        rep = normalize_partition(labels)
        if rep in good:
            continue
        if is_congruence(c4, rep):
            good.append(rep)
    # subgroup lattice of C4: {0}, {0,2}, C4
    assert sorted(set(good)) == [(0, 0, 0, 0), (0, 1, 0, 1), (0, 1, 2, 3)]


# --- constructors ------------------------------------------------------

def check_group_axioms(alg, sample=None, seed=0):
    n = alg.size
    mul = alg.op_named("mul" if any(o.name == "mul" for o in alg.ops) else "add")
    inv = alg.op_named("inv" if any(o.name == "inv" for o in alg.ops) else "neg")
    e = alg.constants()[0]
    triples = (
        itertools.product(range(n), repeat=3)
        if sample is None
        else (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for rng in [random.Random(seed)]
            for _ in range(sample)
        )
    )
    for a, b, c in triples:
        assert mul.value(n, (mul.value(n, (a, b)), c)) == mul.value(
            n, (a, mul.value(n, (b, c)))
        )
    for a in range(n):
        assert mul.value(n, (a, e)) == a == mul.value(n, (e, a))
        assert mul.value(n, (a, inv.table[a])) == e


def test_cyclic_group_axioms():
    for n in (1, 2, 3, 6):
        check_group_axioms(make_cyclic_group(n))


def test_sym_group():
    s3 = make_sym_group(3)
    assert s3.size == 6
    check_group_axioms(s3)
    check_group_axioms(make_sym_group(4))
    check_group_axioms(make_sym_group(5), sample=100000)
    t, c = sym_group_gens(3)
    clo = subalgebra_closure(s3, {t, c})
    assert len(clo.elements) == 6
    with pytest.raises(SizeRefusalError):
        make_sym_group(7)


def test_sym_group_composition_convention():
    # left-to-right: a(st) = (as)t on points
    perms = sym_group_perms(3)
    s3 = make_sym_group(3)
    mul = s3.op_named("mul")
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            st_ = perms[mul.value(6, (i, j))]
            assert st_ == tuple(t[s[a]] for a in range(3))


def test_vector_space_bad_p():
    with pytest.raises(ConstructionError):
        make_vector_space(4, 1)


def test_vector_space_gf3_scalars():
    v = make_vector_space(3, 1)
    assert v.size == 3
    names = [op.name for op in v.ops]
    assert names == ["add", "zero", "scalar2"]
    assert v.op_named("scalar2").table == (0, 2, 1)


def test_semilattice_of_groups_chain():
    c2 = make_cyclic_group(2)
    # rename "add" ops to mul signature expected by the constructor
    grp = FiniteAlgebra(
        2,
        (
            NamedOp("mul", 2, c2.op_named("add").table),
            NamedOp("inv", 1, c2.op_named("neg").table),
            NamedOp("e", 0, (0,)),
        ),
        kind="group",
    )
    alg = make_semilattice_of_groups([grp, grp], [identity_map(2)])
    assert alg.size == 4
    t = alg.op_named("mul")
    # level 0 = {0,1} (top), level 1 = {2,3}; mixed products land at level 1
    assert t.value(4, (0, 0)) == 0 and t.value(4, (1, 1)) == 0
    assert t.value(4, (1, 3)) == t.value(4, (3, 1)) == 0 + 2  # a1*a0 = e at bottom
    assert t.value(4, (0, 2)) == 2
    idem = [x for x in range(4) if t.value(4, (x, x)) == x]
    assert idem == [0, 2]


def test_semilattice_bad_link_raises():
    c2 = make_cyclic_group(2)
    grp = FiniteAlgebra(
        2,
        (
            NamedOp("mul", 2, c2.op_named("add").table),
            NamedOp("inv", 1, c2.op_named("neg").table),
            NamedOp("e", 0, (0,)),
        ),
        kind="group",
    )
    with pytest.raises(ConstructionError):
        make_semilattice_of_groups([grp, grp], [(1, 0)])


# --- json --------------------------------------------------------------

def test_json_roundtrip():
    for alg in (make_set(3), make_cyclic_group(4), make_vector_space(2, 2)):
        d = algebra_to_dict(alg)
        back = algebra_from_dict(d)
        assert back == alg


def test_json_errors():
    with pytest.raises(ParseError):
        algebra_from_dict([1, 2])
    with pytest.raises(ParseError):
        algebra_from_dict({"size": 2})
    with pytest.raises(ParseError):
        algebra_from_dict({"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0]}]})
    with pytest.raises(ParseError):
        algebra_from_dict({"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0, 5]}]})


def test_compose_convention():
    f = (1, 2, 0)
    g = (0, 0, 1)
    assert compose(f, g) == (0, 1, 0)
    assert compose(identity_map(3), f) == f
