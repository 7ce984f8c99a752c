"""Structural conditions on a semigroup of endomorphisms and the quotient
construction they feed.

Throughout, `maps` is a family of endomorphisms of a finite algebra acting on
the right, composition `ab` meaning "a then b".  The central objects:

* representability: the union of images generates the carrier;
* separability: the joint kernel of the family is trivial;
* the chain x ~_k y  iff  x.a = y.a for all a in the k-th power of the
  family, its stabilization level, and the limit congruence ~;
* the induced congruence on the family itself (equal actions on the
  quotient), giving a faithful family of quotient endomorphisms;
* the reduction of bi-translations onto the quotient family, lifts of
  quotient maps, and the composites they induce.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    FiniteAlgebra,
    check_congruence,
    compose,
    is_endomorphism,
    is_trivial_partition,
    partition_classes,
    partition_from_signature,
    quotient_algebra,
    replay_witnesses,
    subalgebra_closure,
)
from .config import RunConfig, default_config
from .errors import (
    PreconditionError,
    SizeRefusalError,
    TheoremViolationError,
)
from .hull import BiTranslation, hull_mul, image_union, induced_translation, is_bitranslation
from .semigroups import FinSemigroup, semigroup_from_maps


def _assert_endos(algebra, maps):
    assert maps, "need a nonempty family of maps"
    for m in maps:
        assert is_endomorphism(algebra, m), "not an endomorphism: %r" % (m,)


def joint_kernel(n: int, maps) -> tuple:
    """The partition of 0..n-1 by joint action: x ~ y iff xa = ya for all a."""
    sigs = [tuple(m[x] for m in maps) for x in range(n)]
    return partition_from_signature(sigs)


def is_representable(algebra: FiniteAlgebra, maps) -> bool:
    _assert_endos(algebra, maps)
    pts = image_union(maps)
    return len(subalgebra_closure(algebra, pts).elements) == algebra.size


def is_separable_on(algebra: FiniteAlgebra, subset, maps) -> bool:
    """Joint-kernel triviality restricted to a subuniverse."""
    sub = sorted(set(subset))
    assert list(subalgebra_closure(algebra, sub).elements) == sub, "not a subuniverse"
    seen = {}
    for x in sub:
        s = tuple(m[x] for m in maps)
        if s in seen:
            return False
        seen[s] = x
    return True


def is_separable(algebra: FiniteAlgebra, maps) -> bool:
    _assert_endos(algebra, maps)
    return is_trivial_partition(joint_kernel(algebra.size, maps))


def is_weakly_separable(algebra: FiniteAlgebra, maps, endos) -> bool:
    """Can the joint kernel identify two distinct points that one source
    reaches through endomorphisms?  No such pair makes the family weakly
    separating, which already forces right reductivity inside End(A)."""
    _assert_endos(algebra, maps)
    n = algebra.size
    ker = joint_kernel(n, maps)
    if is_trivial_partition(ker):
        return True
    for a in range(n):
        seen = {}
        for f in endos:
            x = f[a]
            if seen.setdefault(ker[x], x) != x:
                return False
    return True


# --- reductivity -----------------------------------------------------------

def map_reductivity(maps_i, maps_u) -> dict:
    """Left/right/weak verdicts for a family of maps inside a larger one.

    Left here means: equal products g.u for all g in the inner family force
    u to be unique, and dually on the right; weak uses both signatures at
    once.
    """
    inner = sorted(set(maps_i))
    outer = sorted(set(maps_u))
    assert set(inner) <= set(outer), "inner family must sit inside the outer one"
    left = right = weak = True
    seen_l, seen_r, seen_w = {}, {}, {}
    for u in outer:
        ls = tuple(compose(g, u) for g in inner)
        rs = tuple(compose(u, g) for g in inner)
        if seen_l.setdefault(ls, u) != u:
            left = False
        if seen_r.setdefault(rs, u) != u:
            right = False
        if seen_w.setdefault((ls, rs), u) != u:
            weak = False
    assert weak or (not left and not right)
    return {"left": left, "right": right, "weak": weak}


def reductivity(s: FinSemigroup, inner=None) -> dict:
    """Verdicts for a subsemigroup of an abstract semigroup (table form).

    With inner omitted the semigroup is tested against itself (plain
    left/right/weak reductivity).
    """
    idxs = sorted(set(range(s.order) if inner is None else inner))
    for i in idxs:
        for j in idxs:
            assert s.mul[i][j] in set(idxs), "inner set is not a subsemigroup"
    left = right = weak = True
    seen_l, seen_r, seen_w = {}, {}, {}
    for u in range(s.order):
        ls = tuple(s.mul[g][u] for g in idxs)
        rs = tuple(s.mul[u][g] for g in idxs)
        if seen_l.setdefault(ls, u) != u:
            left = False
        if seen_r.setdefault(rs, u) != u:
            right = False
        if seen_w.setdefault((ls, rs), u) != u:
            weak = False
    return {"left": left, "right": right, "weak": weak}


FULL_REDUCTIVITY_BOUND = 5


def full_map_reductivity(n: int, maps_i, config: Optional[RunConfig] = None) -> dict:
    """Reductivity of a map family inside *all* maps on n points.

    Builds the n^n maps outright, so it refuses beyond 5 points.  The right
    verdict is cross-checked against joint-kernel triviality, which it must
    match.
    """
    if n > FULL_REDUCTIVITY_BOUND:
        raise SizeRefusalError(
            "full-map reductivity needs %d^%d maps; bound is %d points"
            % (n, n, FULL_REDUCTIVITY_BOUND)
        )
    universe = list(itertools.product(range(n), repeat=n))
    out = map_reductivity(maps_i, universe)
    if out["right"] != is_trivial_partition(joint_kernel(n, maps_i)):
        raise TheoremViolationError(
            "right reductivity over all maps disagrees with kernel triviality"
        )
    return out


# --- the ~ chain -----------------------------------------------------------

def power_chain(maps, k: int) -> list:
    """[F, F^2, ..., F^k] as sorted tuples of maps."""
    assert k >= 1
    base = tuple(sorted(set(maps)))
    out = [base]
    while len(out) < k:
        out.append(tuple(sorted({compose(a, b) for a in out[-1] for b in base})))
    return out


@dataclass
class SimChain:
    levels: list  # levels[i] is the level-(i+1) partition
    stabilized: bool
    k_of_i: Optional[int]

    @property
    def sim(self):
        assert self.stabilized
        return self.levels[-1]

    def to_dict(self):
        return {
            "levels": [list(p) for p in self.levels],
            "stabilized": self.stabilized,
            "k_of_i": self.k_of_i,
        }


def _coarsens(fine, coarse):
    # every class of `fine` sits inside a class of `coarse`
    return all(coarse[a] == coarse[fine[a]] for a in range(len(fine)))


def sim_chain(algebra: FiniteAlgebra, maps, step_bound: Optional[int] = None) -> SimChain:
    """The ascending chain of joint kernels of the powers of the family.

    Stops at the first repeat (the chain of partitions of a finite carrier
    always stabilizes); a too-small step bound yields an unstabilized report
    instead.
    """
    _assert_endos(algebra, maps)
    n = algebra.size
    bound = step_bound if step_bound is not None else n + 1
    base = tuple(sorted(set(maps)))
    power = base
    levels = []
    prev = None
    k_of_i = None
    for k in range(1, bound + 1):
        part = joint_kernel(n, power)
        if prev is not None and part == prev:
            k_of_i = k - 1
            break
        check_congruence(algebra, part)
        if prev is not None:
            assert _coarsens(prev, part), "chain must ascend"
        levels.append(part)
        prev = part
        power = tuple(sorted({compose(a, b) for a in power for b in base}))
    else:
        return SimChain(levels, False, None)
    if set(power_chain(base, 2)[1]) == set(base):
        # an idempotent family stabilizes at the first level
        assert k_of_i == 1
    return SimChain(levels, True, k_of_i)


def approx_via_powers(maps, k: int) -> tuple:
    """Partition of the family by equal composites with the k-th power."""
    pk = power_chain(maps, k)[k - 1]
    sigs = [tuple(compose(m, g) for g in pk) for m in maps]
    return partition_from_signature(sigs)


# --- the quotient pipeline --------------------------------------------------

@dataclass
class QuotientPipeline:
    a_mod: FiniteAlgebra
    proj: tuple  # carrier -> quotient carrier
    reps: tuple  # quotient carrier -> least representative
    i_mod: FinSemigroup  # the induced maps acting faithfully on a_mod
    approx: tuple  # partition of the family indices
    class_map: tuple  # family index -> i_mod element index
    chain: SimChain

    @property
    def i_mod_maps(self):
        return self.i_mod.elems

    def to_dict(self):
        return {
            "quotient": {
                "size": self.a_mod.size,
                "proj": list(self.proj),
                "reps": list(self.reps),
            },
            "induced_maps": [list(m) for m in self.i_mod.elems],
            "approx": list(self.approx),
            "class_map": list(self.class_map),
            "chain": self.chain.to_dict(),
        }


def build_quotient_pipeline(algebra: FiniteAlgebra, maps, step_bound=None) -> QuotientPipeline:
    maps = [tuple(m) for m in maps]
    assert len(set(maps)) == len(maps), "family must be duplicate-free"
    chain = sim_chain(algebra, maps, step_bound)
    assert chain.stabilized
    sim = chain.sim
    a_mod, proj = quotient_algebra(algebra, sim)
    reps = tuple(sorted(set(sim)))
    bars = []
    for m in maps:
        bar = tuple(proj[m[r]] for r in reps)
        assert all(proj[m[a]] == bar[proj[a]] for a in range(algebra.size))
        bars.append(bar)
    approx = partition_from_signature(bars)
    distinct = sorted(set(bars))
    for b in distinct:
        if not is_endomorphism(a_mod, b):
            raise TheoremViolationError(
                "induced map %r is not an endomorphism of the quotient" % (b,)
            )
    i_mod = semigroup_from_maps(distinct)
    pos = {m: i for i, m in enumerate(i_mod.elems)}
    class_map = tuple(pos[b] for b in bars)
    if not is_trivial_partition(joint_kernel(a_mod.size, distinct)):
        raise TheoremViolationError("quotient failed to become separable")
    if is_representable(algebra, maps) and not is_representable(a_mod, distinct):
        raise TheoremViolationError("representability was lost in the quotient")
    return QuotientPipeline(a_mod, proj, reps, i_mod, approx, class_map, chain)


# --- the reduction of bi-translations ---------------------------------------

SIGMA_PAIR_CHECK_CAP = 100


def _sigma_one(pipeline, pair) -> BiTranslation:
    cmap = pipeline.class_map
    k = pipeline.i_mod.order
    lam_bar = [None] * k
    rho_bar = [None] * k
    for i, c in enumerate(cmap):
        lv = cmap[pair.left[i]]
        rv = cmap[pair.right[i]]
        if lam_bar[c] is None:
            lam_bar[c] = lv
        elif lam_bar[c] != lv:
            raise TheoremViolationError("reduction ill-defined on the left at class %d" % c)
        if rho_bar[c] is None:
            rho_bar[c] = rv
        elif rho_bar[c] != rv:
            raise TheoremViolationError("reduction ill-defined on the right at class %d" % c)
    return BiTranslation(tuple(lam_bar), tuple(rho_bar))


def sigma_reduction(pipeline: QuotientPipeline, maps, omega, t_maps=None) -> list:
    """Push bi-translations of the family down to the induced quotient family.

    Verifies the images are bi-translations, that the map respects products,
    and (for any supplied idealising maps) that reducing a map-induced pair
    matches the pair induced by the projected map.
    """
    maps = [tuple(m) for m in maps]
    out = [_sigma_one(pipeline, p) for p in omega]
    for p in out:
        if not is_bitranslation(pipeline.i_mod, p):
            raise TheoremViolationError("reduced pair %r is not a bi-translation" % (p,))
    pool = list(zip(omega, out))
    if len(pool) <= SIGMA_PAIR_CHECK_CAP:
        pairs = itertools.product(pool, pool)
    else:
        import random

        rng = random.Random(0)
        pairs = (
            (pool[rng.randrange(len(pool))], pool[rng.randrange(len(pool))])
            for _ in range(2000)
        )
    for (p, sp), (q, sq) in pairs:
        if _sigma_one(pipeline, hull_mul(p, q)) != hull_mul(sp, sq):
            raise TheoremViolationError("reduction is not multiplicative")
    if t_maps:
        for phi in t_maps:
            phi = tuple(phi)
            bar = tuple(pipeline.proj[phi[r]] for r in pipeline.reps)
            src = induced_translation(maps, phi)
            try:
                tgt = induced_translation(list(pipeline.i_mod.elems), bar)
            except PreconditionError as e:
                raise TheoremViolationError(
                    "projected map fails to idealise the quotient family: %s" % e
                )
            if _sigma_one(pipeline, src) != tgt:
                raise TheoremViolationError(
                    "reduction of a map-induced pair missed the projected map"
                )
    return out


# --- lifts and the composites they induce -----------------------------------

def lifts(pipeline: QuotientPipeline, f_mod, config: Optional[RunConfig] = None) -> list:
    """All maps on the carrier projecting to the given quotient map."""
    cfg = config or default_config()
    members = partition_classes(pipeline.chain.sim)
    n = len(pipeline.proj)
    choices = [members[f_mod[pipeline.proj[a]]] for a in range(n)]
    total = math.prod(len(c) for c in choices)
    if total > cfg.lift_product_bound:
        raise SizeRefusalError("lift count %d exceeds bound %d" % (total, cfg.lift_product_bound))
    out = [tuple(pick) for pick in itertools.product(*choices)]
    assert out and all(
        pipeline.proj[f[a]] == f_mod[pipeline.proj[a]] for f in out[:50] for a in range(n)
    )
    return out


def _min_lift(pipeline, f_mod):
    members = partition_classes(pipeline.chain.sim)
    return tuple(
        members[f_mod[pipeline.proj[a]]][0] for a in range(len(pipeline.proj))
    )


def f_star(algebra: FiniteAlgebra, maps, f_mod, alpha, pipeline: QuotientPipeline):
    """The composite "any lift of f_mod, then alpha", for alpha in the k-th power.

    The choice of lift cannot matter (spot-checked against the extreme
    lifts); an endomorphic f_mod yields an endomorphism.
    """
    k = pipeline.chain.k_of_i
    assert k is not None
    alpha = tuple(alpha)
    assert alpha in set(power_chain(maps, k)[k - 1]), "alpha must lie in the k-th power"
    members = partition_classes(pipeline.chain.sim)
    n = len(pipeline.proj)
    lo = tuple(members[f_mod[pipeline.proj[a]]][0] for a in range(n))
    hi = tuple(members[f_mod[pipeline.proj[a]]][-1] for a in range(n))
    out = compose(lo, alpha)
    assert out == compose(hi, alpha), "composite depends on the lift"
    if is_endomorphism(pipeline.a_mod, f_mod):
        assert is_endomorphism(algebra, out)
    return out


def _check_right_translation_on(maps, rho):
    pos = {m: i for i, m in enumerate(maps)}
    assert len(pos) == len(maps)
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            ab = pos[compose(a, b)]
            assert rho[ab] == pos[compose(a, maps[rho[j]])], "not a right translation"


def f_rho(
    algebra: FiniteAlgebra,
    maps,
    rho,
    pipeline: QuotientPipeline,
    lam=None,
    config: Optional[RunConfig] = None,
):
    """The quotient endomorphism a right translation induces.

    Each generator xa of the carrier is sent to x(a.rho) and the rest of the
    carrier follows the closure witnesses; the result must be constant on
    classes and a morphism of the quotient.  When the chain stabilizes at the
    first level and the linked left translation is supplied, the left action
    is checked to be composition with the constructed lift.
    """
    maps = [tuple(m) for m in maps]
    if not is_representable(algebra, maps):
        raise PreconditionError("the family's images must generate the carrier")
    _check_right_translation_on(maps, rho)
    n = algebra.size
    gens = image_union(maps)
    clo = subalgebra_closure(algebra, gens)
    assert len(clo.elements) == n
    gen_images = {}
    for g in sorted(gens):
        i, x = next(
            (i, x) for i, m in enumerate(maps) for x in range(n) if m[x] == g
        )
        gen_images[g] = maps[rho[i]][x]
    fhat_d = replay_witnesses(algebra, clo, gen_images)
    fhat = tuple(fhat_d[a] for a in range(n))
    proj = pipeline.proj
    table = [None] * pipeline.a_mod.size
    for a in range(n):
        c, v = proj[a], proj[fhat[a]]
        if table[c] is None:
            table[c] = v
        elif table[c] != v:
            raise TheoremViolationError("induced quotient map is not constant on class %d" % c)
    table = tuple(table)
    if not is_endomorphism(pipeline.a_mod, table):
        raise TheoremViolationError("induced quotient map is not a morphism")
    if lam is not None and pipeline.chain.k_of_i == 1:
        for i, m in enumerate(maps):
            if maps[lam[i]] != compose(fhat, m):
                raise TheoremViolationError(
                    "linked left translation is not composition with the lift"
                )
    return table
