"""One battery, many instances: every structural claim the engine relies on,
re-verified on a corpus of (algebra, family-of-endomorphisms) pairs.

Each instance is a finite algebra with a composition-closed family of its
endomorphisms.  The battery cross-checks the translation enumerators against
a naive filtration oracle on small families, re-verifies every enumerated
object against its defining predicate, ties realization by carrier maps and
by endomorphisms to the (strong) balance criteria, links representability,
separability and reductivity to injectivity/surjectivity of the natural
morphisms, replays the quotient pipeline, and pushes bi-translations down to
the quotient family.  Any violation raises, either here or inside the
library's own TheoremViolationError checks.
"""

import functools
import itertools
import random

import pytest

from hullkit.algebra import (
    compose,
    is_endomorphism,
    is_morphism_on,
    is_trivial_partition,
    make_cyclic_group,
    make_semilattice_of_groups,
    make_set,
    make_sym_group,
    make_vector_space,
    partition_from_signature,
    quotient_algebra,
    subalgebra_closure,
    sym_group_gens,
)
from hullkit.casestudies import build_sn_model
from hullkit.config import default_config
from hullkit.errors import PreconditionError, SizeRefusalError
from hullkit.hull import (
    BiTranslation,
    enumerate_bitranslations,
    enumerate_left_translations,
    enumerate_right_translations,
    equiv_congruences,
    hull_mul,
    hull_report,
    hull_semigroup,
    image_union,
    induced_translation,
    is_bitranslation,
    is_left_balanced,
    is_left_translation,
    is_linked,
    is_right_balanced,
    is_right_translation,
    is_strongly_left_balanced,
    is_strongly_right_balanced,
    maps_idealiser,
)
from hullkit.quotients import (
    FULL_REDUCTIVITY_BOUND,
    approx_via_powers,
    build_quotient_pipeline,
    f_rho,
    f_star,
    full_map_reductivity,
    is_representable,
    is_separable,
    is_weakly_separable,
    lifts,
    map_reductivity,
    power_chain,
    reductivity,
    sigma_reduction,
    sim_chain,
)
from hullkit.semigroups import (
    endo_rank_ideal,
    enumerate_endomorphisms,
    non_units_ideal,
    semigroup_from_maps,
)

CFG = default_config()
ORACLE_BOUND = 5  # |I| up to which the n^n filtration oracle runs
SAMPLES = 2000


# --- the corpus ---------------------------------------------------------------

LABELS = [
    "set2-constants",
    "set2-all",
    "set3-constants",
    "set3-rank2",
    "set3-all",
    "set3-point",
    "set3-right-zero-pair",
    "set4-constants",
    "set5-constants",
    "gf2-1-zero",
    "gf2-1-all",
    "gf2-2-zero",
    "gf2-2-singular",
    "gf2-2-all",
    "gf3-1-zero",
    "gf3-1-all",
    "gf3-2-singular",
    "gf5-1-zero",
    "gf5-1-all",
    "c2-all",
    "c3-all",
    "c4-non-units",
    "c4-all",
    "c5-all",
    "c6-non-units",
    "c6-all",
    "s3-collapse-ideal",
    "s3-zero",
    "s3-all",
    "clifford-ideal",
    "clifford-all",
    "chain3-non-units",
    "chain3-all",
    "s4-even-null",
]


@functools.lru_cache(maxsize=1)
def corpus():
    """label -> (algebra, family, end-generators or None, algebra generators)."""
    out = {}

    def add(label, alg, maps, gens=None, genset=None):
        maps = sorted(set(tuple(m) for m in maps))
        mset = set(maps)
        assert maps and all(is_endomorphism(alg, m) for m in maps), label
        assert all(compose(a, b) in mset for a in maps for b in maps), label
        genset = tuple(genset) if genset is not None else tuple(range(alg.size))
        assert subalgebra_closure(alg, genset).subset == set(range(alg.size))
        out[label] = (alg, maps, gens, genset)

    for n in (2, 3, 4, 5):
        alg = make_set(n)
        end = enumerate_endomorphisms(alg, config=CFG)
        add("set%d-constants" % n, alg, endo_rank_ideal(alg, end.elems, 2, cap=n))
    set2 = make_set(2)
    add("set2-all", set2, enumerate_endomorphisms(set2, config=CFG).elems)
    set3 = make_set(3)
    t3 = enumerate_endomorphisms(set3, config=CFG)
    add("set3-rank2", set3, endo_rank_ideal(set3, t3.elems, 3, cap=3))
    add("set3-all", set3, t3.elems)
    add("set3-point", set3, [(0, 0, 0)])
    add("set3-right-zero-pair", set3, [(0, 0, 0), (1, 1, 1)])

    for p, d, tags in (
        (2, 1, ("zero", "all")),
        (2, 2, ("zero", "singular", "all")),
        (3, 1, ("zero", "all")),
        (3, 2, ("singular",)),
        (5, 1, ("zero", "all")),
    ):
        alg = make_vector_space(p, d)
        basis = [p**i for i in range(d)]
        gens = basis if alg.size > CFG.exhaustive_map_bound else None
        end = enumerate_endomorphisms(alg, gens=gens, config=CFG)
        families = {
            "zero": endo_rank_ideal(alg, end.elems, 1, cap=alg.size),
            "singular": endo_rank_ideal(alg, end.elems, 2, cap=alg.size),
            "all": end.elems,
        }
        for tag in tags:
            add("gf%d-%d-%s" % (p, d, tag), alg, families[tag], gens=gens, genset=basis)

    for n in (2, 3, 4, 5, 6):
        alg = make_cyclic_group(n)
        end = enumerate_endomorphisms(alg, gens=[1], config=CFG)
        add("c%d-all" % n, alg, end.elems, gens=[1], genset=[1])
        if n in (4, 6):
            nu = [end.elems[i] for i in non_units_ideal(end)]
            add("c%d-non-units" % n, alg, nu, gens=[1], genset=[1])

    s3 = make_sym_group(3)
    s3_gens = list(sym_group_gens(3))
    end = enumerate_endomorphisms(s3, gens=s3_gens, config=CFG)
    add("s3-all", s3, end.elems, gens=s3_gens, genset=s3_gens)
    nu = [end.elems[i] for i in non_units_ideal(end)]
    add("s3-collapse-ideal", s3, nu, gens=s3_gens, genset=s3_gens)
    add("s3-zero", s3, [(0,) * 6], gens=s3_gens, genset=s3_gens)

    c2 = make_sym_group(2)
    cliff = make_semilattice_of_groups([c2, c2], [(0, 0)])
    end = enumerate_endomorphisms(cliff, config=CFG)
    add("clifford-all", cliff, end.elems, genset=[1, 3])
    add(
        "clifford-ideal",
        cliff,
        [f for f in end.elems if set(f) <= {0, 2}],
        genset=[1, 3],
    )

    chain3 = make_semilattice_of_groups([c2, c2, c2], [(0, 0), (0, 0)])
    end = enumerate_endomorphisms(chain3, gens=[1, 3, 5], config=CFG)
    add("chain3-all", chain3, end.elems, gens=[1, 3, 5], genset=[1, 3, 5])
    nu = [end.elems[i] for i in non_units_ideal(end)]
    add("chain3-non-units", chain3, nu, gens=[1, 3, 5], genset=[1, 3, 5])

    model = build_sn_model(4, allow_irregular=True)
    null = [
        model.end.elems[model.phi[t]]
        for t in model.involutions
        if model.parity[t] == 0
    ]
    s4_gens = list(sym_group_gens(4))
    add("s4-even-null", model.group, null, gens=s4_gens, genset=s4_gens)

    assert sorted(out) == sorted(LABELS) and len(out) >= 30
    return out


# --- the oracle ---------------------------------------------------------------

def naive_translations(i_sg):
    """Filter all |I|^|I| tables by the defining identities."""
    pool = list(itertools.product(range(i_sg.order), repeat=i_sg.order))
    lams = sorted(t for t in pool if is_left_translation(i_sg, t))
    rhos = sorted(t for t in pool if is_right_translation(i_sg, t))
    pairs = sorted(
        BiTranslation(lam, rho)
        for lam in lams
        for rho in rhos
        if is_linked(i_sg, lam, rho)
    )
    return lams, rhos, pairs


# --- the battery ----------------------------------------------------------------

def run_battery(label, alg, maps, gens, genset):
    rng = random.Random(label)
    n = alg.size
    iset = set(maps)
    i_sg = semigroup_from_maps(maps)
    canon = list(i_sg.elems)
    assert canon == maps
    end_sg = enumerate_endomorphisms(alg, gens=gens, config=CFG)
    endset = set(end_sg.elems)
    assert iset <= endset
    idempotent_family = {compose(a, b) for a in canon for b in canon} == iset

    # enumeration, the naive oracle, and the defining predicates
    lams = enumerate_left_translations(i_sg, CFG)
    rhos = enumerate_right_translations(i_sg, CFG)
    omega = enumerate_bitranslations(i_sg, CFG)
    oset = set(omega)
    if i_sg.order <= ORACLE_BOUND:
        naive = naive_translations(i_sg)
        assert (lams, rhos, omega) == naive
    for t in lams:
        assert is_left_translation(i_sg, t)
    for t in rhos:
        assert is_right_translation(i_sg, t)
    for p in omega:
        assert is_bitranslation(i_sg, p)
    assert {p.left for p in omega} <= set(lams)
    assert {p.right for p in omega} <= set(rhos)

    # the hull is closed and both projections are morphisms
    if len(omega) <= 512:
        hull_semigroup(omega)  # raises on any product outside the set
        pool = itertools.product(omega, omega)
    else:
        pool = (
            (omega[rng.randrange(len(omega))], omega[rng.randrange(len(omega))])
            for _ in range(SAMPLES)
        )
    for p, q in pool:
        pq = hull_mul(p, q)
        assert pq in oset
        assert pq.right == compose(p.right, q.right)
        assert pq.left == compose(q.left, p.left)

    # reductivity of the family pins the opposite component
    red = reductivity(i_sg)
    if red["left"]:
        assert len({p.right for p in omega}) == len(omega)
    if red["right"]:
        assert len({p.left for p in omega}) == len(omega)

    # the full report re-derives the same hull and cross-checks realization
    # against the balance criterion internally
    report = hull_report(alg, maps, CFG, gens=gens)
    assert report.ideal_order == i_sg.order
    assert report.counts["hull"] == len(omega)

    # realization by carrier maps against plain balance
    t_maps = None
    if n <= CFG.exhaustive_map_bound:
        t_maps = maps_idealiser(n, canon)
        t_pairs = []
        for f in t_maps:
            pr = induced_translation(canon, f)
            assert is_bitranslation(i_sg, pr)
            t_pairs.append(pr)
        assert set(t_pairs) <= oset
        lam_ok = all(is_left_balanced(n, canon, p.left)[0] for p in omega)
        rho_ok = all(is_right_balanced(n, canon, p.right) for p in omega)
        assert (set(t_pairs) == oset) == (lam_ok and rho_ok)
        tset = set(t_maps)
        outside = (f for f in itertools.product(range(n), repeat=n) if f not in tset)
        for f in itertools.islice(outside, 5):
            with pytest.raises(PreconditionError):
                induced_translation(canon, f)

    # for a right ideal of End(A) with I.I = I: a map composes into the
    # family exactly when it composes into End(A), i.e. when it restricts
    # to a morphism on every member's image
    right_ideal = all(compose(a, f) in iset for a in canon for f in end_sg.elems)
    if right_ideal and idempotent_family and iset != endset and n <= 6:
        for f in itertools.product(range(n), repeat=n):
            if all(compose(a, f) in endset for a in canon):
                assert all(compose(a, f) in iset for a in canon)
    for a in canon[:4]:
        im = sorted(set(a))
        for _ in range(60):
            f = tuple(rng.randrange(n) for _ in range(n))
            assert (compose(a, f) in endset) == is_morphism_on(alg, f, im)

    # realization by endomorphisms against strong balance with the
    # prescribed witness values
    s_maps = maps_idealiser(n, canon, universe=end_sg.elems)
    s_pairs = [induced_translation(canon, f) for f in s_maps]
    assert set(s_pairs) <= oset
    endos_realize_all = set(s_pairs) == oset
    assert endos_realize_all == report.realized["endos"]["surjective_onto_hull"]
    if n <= CFG.exhaustive_map_bound:
        strong = True
        for p in omega:
            ok_r, forced = is_strongly_right_balanced(alg, canon, p.right)
            if not ok_r:
                strong = False
                break
            ok_l, g = is_strongly_left_balanced(
                alg, canon, p.left, pinned=forced, config=CFG
            )
            if not ok_l:
                strong = False
                break
            for i, m in enumerate(canon):
                assert compose(m, g) == canon[p.right[i]]
                assert compose(g, m) == canon[p.left[i]]
            assert g in set(s_maps)
        assert strong == endos_realize_all

    # an idempotent family with enough constants only has balanced rights
    if idempotent_family:
        have_gamma = all(
            any(all(g[x] == c for x in genset) for g in canon)
            for c in image_union(canon)
        )
        if have_gamma:
            assert all(is_right_balanced(n, canon, r) for r in rhos)

    # representability, separability, reductivity inside End(A) and T_A
    rep = is_representable(alg, maps)
    sep = is_separable(alg, maps)
    red_end = map_reductivity(maps, end_sg.elems)
    if rep:
        assert red_end["left"]
        assert report.realized["endos"]["injective"]
    if is_weakly_separable(alg, maps, end_sg.elems):
        assert red_end["right"]
    if n <= FULL_REDUCTIVITY_BOUND:
        assert full_map_reductivity(n, maps, CFG)["right"] == sep
    if sep:
        assert report.realized["endos"]["injective"]
        if "maps" in report.realized:
            assert report.realized["maps"]["injective"]
    if rep and sep:
        assert report.realized["endos"]["iso"]

    # the congruences identifying idealising maps with equal translations
    for pool_maps, pairs in ((t_maps, t_pairs if t_maps else None), (s_maps, s_pairs)):
        if pool_maps is None or not 0 < len(pool_maps) <= 800:
            continue
        v = semigroup_from_maps(pool_maps)
        eqs = equiv_congruences(n, canon, v)
        by_pair = partition_from_signature(pairs)
        assert by_pair == eqs["both"]
        for _ in range(200):
            i, j = rng.randrange(v.order), rng.randrange(v.order)
            assert hull_mul(pairs[i], pairs[j]) == pairs[v.mul[i][j]]
        red_v = map_reductivity(canon, v.elems)
        assert red_v["left"] == is_trivial_partition(eqs["im"])
        assert red_v["right"] == is_trivial_partition(eqs["ker"])
        if red["left"]:
            assert eqs["both"] == eqs["im"]
        if red["right"]:
            assert eqs["both"] == eqs["ker"]
        if rep and pool_maps is t_maps:
            assert set(pairs) == oset

    # the ascending kernel chain and the quotient action
    chain = sim_chain(alg, maps)
    assert chain.stabilized and chain.k_of_i is not None
    assert len(set(chain.levels)) == len(chain.levels)
    assert sep == is_trivial_partition(chain.sim)
    if idempotent_family:
        assert chain.k_of_i == 1
    for k in range(1, len(chain.levels) + 1):
        part = chain.levels[k - 1]
        q, proj = quotient_algebra(alg, part)
        for m in canon:
            table = [None] * q.size
            for a in range(n):
                c, v = proj[a], proj[m[a]]
                assert table[c] in (None, v)  # the action respects classes
                table[c] = v
            assert is_endomorphism(q, tuple(table))
        nxt = chain.levels[k] if k < len(chain.levels) else part
        seen = {}
        separated = True
        for a in range(n):
            key = tuple(part[m[a]] for m in canon)
            if seen.setdefault(key, part[a]) != part[a]:
                separated = False
                break
        assert separated == (part == nxt)

    # the family congruence from the quotient equals its power description
    pipe = build_quotient_pipeline(alg, maps)
    k = chain.k_of_i
    assert pipe.chain.k_of_i == k
    assert pipe.approx == approx_via_powers(canon, k)
    prev = approx_via_powers(canon, 1)
    kk = 1
    while True:
        nxt = approx_via_powers(canon, kk + 1)
        if nxt == prev:
            break
        prev = nxt
        kk += 1
        assert kk <= i_sg.order + 1
    assert prev == pipe.approx

    # reduction of the hull onto the quotient family, lifts and composites
    sigma = sigma_reduction(
        pipe,
        canon,
        omega,
        t_maps=t_maps if t_maps and len(t_maps) <= 4000 else None,
    )
    assert len(sigma) == len(omega)
    alpha = power_chain(canon, k)[k - 1][0]
    for f_mod in list(pipe.i_mod_maps)[:3]:
        out = f_star(alg, canon, f_mod, alpha, pipe)
        try:
            all_lifts = lifts(pipe, f_mod, CFG)
        except SizeRefusalError:
            continue
        picks = (
            all_lifts
            if len(all_lifts) <= 50
            else [all_lifts[rng.randrange(len(all_lifts))] for _ in range(50)]
        )
        for f in picks:
            assert compose(f, alpha) == out
    if rep:
        picks = (
            omega
            if len(omega) <= 60
            else [omega[rng.randrange(len(omega))] for _ in range(60)]
        )
        for p in picks:
            f_rho(alg, canon, p.right, pipe, lam=p.left, config=CFG)


# --- tests ----------------------------------------------------------------------

def test_corpus_shape():
    inst = corpus()
    assert sorted(inst) == sorted(LABELS)
    assert len(inst) >= 30


@pytest.mark.parametrize("label", LABELS)
def test_battery(label):
    alg, maps, gens, genset = corpus()[label]
    run_battery(label, alg, maps, gens, genset)
