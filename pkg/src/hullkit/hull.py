"""Translational hulls of finite semigroups.

Conventions: a right translation is a map rho on a semigroup I written on
the right, with (a*b)rho = a*(b rho); a left translation lam satisfies
lam(a*b) = lam(a)*b; the pair is linked when a*lam(b) = (a rho)*b for all
a, b. Tables are tuples indexed by I's element indices.

The hull Omega(I) multiplies componentwise: the right components compose
left-to-right, the left components right-to-left, so for maps f, g on a
carrier the pair of an element acts like the element itself:
(lam_f, rho_f)(lam_g, rho_g) = (lam_{fg}, rho_{fg}).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import (
    FiniteAlgebra,
    compose,
    is_endomorphism,
    is_morphism_on,
    partition_from_signature,
    subalgebra_closure,
)
from .config import RunConfig, default_config
from .errors import (
    PreconditionError,
    SizeRefusalError,
    TheoremViolationError,
)
from .semigroups import FinSemigroup, semigroup_from_maps, subsemigroup
import itertools


class BiTranslation(NamedTuple):
    left: tuple
    right: tuple


class Translation(NamedTuple):
    side: str  # "left" or "right"
    table: tuple


def is_right_translation(s: FinSemigroup, rho) -> bool:
    n, mul = s.order, s.mul
    return all(
        rho[mul[a][b]] == mul[a][rho[b]] for a in range(n) for b in range(n)
    )


def is_left_translation(s: FinSemigroup, lam) -> bool:
    n, mul = s.order, s.mul
    return all(
        lam[mul[a][b]] == mul[lam[a]][b] for a in range(n) for b in range(n)
    )


def is_linked(s: FinSemigroup, lam, rho) -> bool:
    n, mul = s.order, s.mul
    return all(
        mul[a][lam[b]] == mul[rho[a]][b] for a in range(n) for b in range(n)
    )


def is_bitranslation(s: FinSemigroup, pair: BiTranslation) -> bool:
    return (
        is_left_translation(s, pair.left)
        and is_right_translation(s, pair.right)
        and is_linked(s, pair.left, pair.right)
    )


def hull_mul(p: BiTranslation, q: BiTranslation) -> BiTranslation:
    # right components left-to-right, left components right-to-left
    return BiTranslation(compose(q.left, p.left), compose(p.right, q.right))


def hull_semigroup(pairs) -> FinSemigroup:
    """The hull as an abstract semigroup (pairs must be closed)."""
    pairs = sorted(pairs)
    idx = {p: i for i, p in enumerate(pairs)}
    mul = []
    for p in pairs:
        row = []
        for q in pairs:
            pq = hull_mul(p, q)
            if pq not in idx:
                raise PreconditionError("bi-translations not closed: %r" % (pq,))
            row.append(idx[pq])
        mul.append(tuple(row))
    return FinSemigroup(mul, check=False)


def _product_occurrences(s: FinSemigroup):
    occ = [0] * s.order
    for row in s.mul:
        for v in row:
            occ[v] += 1
    return occ


def enumerate_right_translations(s: FinSemigroup, config: RunConfig | None = None):
    """All right translations by backtracking with propagation.

    Assigning b|->v forces (a*b)|->a*v for every a; variables are processed
    in descending order of how often they occur as a product, so heavily
    constrained elements are pinned first.
    """
    cfg = config or default_config()
    if s.order > cfg.enumeration_bound:
        raise SizeRefusalError(
            "|I| = %d exceeds enumeration bound %d" % (s.order, cfg.enumeration_bound)
        )
    n, mul = s.order, s.mul
    occ = _product_occurrences(s)
    order = sorted(range(n), key=lambda x: (-occ[x], x))
    val = [-1] * n
    out = []

    def propagate(b, v, trail):
        queue = [(b, v)]
        while queue:
            b, v = queue.pop()
            w = val[b]
            if w != -1:
                if w != v:
                    return False
                continue
            val[b] = v
            trail.append(b)
            for a in range(n):
                queue.append((mul[a][b], mul[a][v]))
        return True

    def backtrack(pos):
        while pos < n and val[order[pos]] != -1:
            pos += 1
        if pos == n:
            if len(out) >= cfg.max_results:
                raise SizeRefusalError(
                    "more than %d right translations" % cfg.max_results
                )
            out.append(tuple(val))
            return
        b = order[pos]
        for v in range(n):
            trail = []
            if propagate(b, v, trail):
                backtrack(pos + 1)
            for x in trail:
                val[x] = -1

    backtrack(0)
    out.sort()
    return out


def enumerate_left_translations(
    s: FinSemigroup, config: RunConfig | None = None, domains=None
):
    """All left translations; `domains`, if given, restricts lam(b) to
    domains[b] (used for the linked enumeration)."""
    cfg = config or default_config()
    if s.order > cfg.enumeration_bound:
        raise SizeRefusalError(
            "|I| = %d exceeds enumeration bound %d" % (s.order, cfg.enumeration_bound)
        )
    n, mul = s.order, s.mul
    if domains is not None:
        domains = [frozenset(d) for d in domains]
        if any(not d for d in domains):
            return []
    occ = _product_occurrences(s)
    order = sorted(range(n), key=lambda x: (-occ[x], x))
    val = [-1] * n
    out = []

    def propagate(b, v, trail):
        queue = [(b, v)]
        while queue:
            b, v = queue.pop()
            w = val[b]
            if w != -1:
                if w != v:
                    return False
                continue
            if domains is not None and v not in domains[b]:
                return False
            val[b] = v
            trail.append(b)
            for c in range(n):
                queue.append((mul[b][c], mul[v][c]))
        return True

    def backtrack(pos):
        while pos < n and val[order[pos]] != -1:
            pos += 1
        if pos == n:
            if len(out) >= cfg.max_results:
                raise SizeRefusalError(
                    "more than %d left translations" % cfg.max_results
                )
            out.append(tuple(val))
            return
        b = order[pos]
        cands = range(n) if domains is None else sorted(domains[b])
        for v in cands:
            trail = []
            if propagate(b, v, trail):
                backtrack(pos + 1)
            for x in trail:
                val[x] = -1

    backtrack(0)
    out.sort()
    return out


def linked_left_domains(s: FinSemigroup, rho):
    """For each b the candidate set {x : a*x == (a rho)*b for all a}."""
    n, mul = s.order, s.mul
    doms = []
    for b in range(n):
        want = [mul[rho[a]][b] for a in range(n)]
        doms.append(
            frozenset(
                x for x in range(n) if all(mul[a][x] == want[a] for a in range(n))
            )
        )
    return doms


def enumerate_bitranslations(s: FinSemigroup, config: RunConfig | None = None):
    """The translational hull: for each right translation, left translations
    are enumerated inside the linked candidate sets."""
    cfg = config or default_config()
    out = []
    for rho in enumerate_right_translations(s, cfg):
        doms = linked_left_domains(s, rho)
        for lam in enumerate_left_translations(s, cfg, domains=doms):
            if len(out) >= cfg.max_results:
                raise SizeRefusalError(
                    "more than %d bi-translations" % cfg.max_results
                )
            out.append(BiTranslation(lam, rho))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# translations induced by maps on the carrier


def _map_index(maps):
    return {m: i for i, m in enumerate(maps)}


def image_union(maps):
    pts = set()
    for m in maps:
        pts.update(m)
    return sorted(pts)


def induced_translation(maps, f) -> BiTranslation:
    """(lam_f, rho_f) for a map f on the carrier: lam_f(a) = f then a,
    rho_f(a) = a then f. Raises if some product leaves the set."""
    idx = _map_index(maps)
    lam, rho = [], []
    for m in maps:
        fm = compose(f, m)
        mf = compose(m, f)
        if fm not in idx:
            raise PreconditionError(
                "f does not idealise: f*%r leaves the set" % (m,)
            )
        if mf not in idx:
            raise PreconditionError(
                "f does not idealise: %r*f leaves the set" % (m,)
            )
        lam.append(idx[fm])
        rho.append(idx[mf])
    return BiTranslation(tuple(lam), tuple(rho))


def maps_idealiser(n: int, maps, universe=None):
    """All maps on 0..n-1 (or in `universe`) taking the set into itself on
    both sides."""
    mset = set(maps)
    pool = (
        itertools.product(range(n), repeat=n) if universe is None else universe
    )
    out = []
    for f in pool:
        f = tuple(f)
        ok = True
        for m in maps:
            if compose(m, f) not in mset or compose(f, m) not in mset:
                ok = False
                break
        if ok:
            out.append(f)
    return out


def realizers_in_maps(
    n: int, maps, pair: BiTranslation, config: RunConfig | None = None, algebra=None
):
    """Maps f on the carrier with (lam_f, rho_f) == pair.

    Exhaustive over all n^n maps when n is under the exhaustive bound
    (restricted to End(algebra) if an algebra is given); otherwise a single
    constructive candidate is tried: forced values on the image points from
    the right component, smallest balance witness elsewhere.
    """
    cfg = config or default_config()
    maps = [tuple(m) for m in maps]
    lam, rho = pair.left, pair.right
    if n <= cfg.exhaustive_map_bound:
        if algebra is not None:
            pool = (
                f
                for f in itertools.product(range(n), repeat=n)
                if is_endomorphism(algebra, f)
            )
        else:
            pool = itertools.product(range(n), repeat=n)
        out = []
        for f in pool:
            if all(
                compose(m, f) == maps[rho[i]] and compose(f, m) == maps[lam[i]]
                for i, m in enumerate(maps)
            ):
                out.append(tuple(f))
        return out
    # constructive: rho forces f on every image point
    f = {}
    for i, m in enumerate(maps):
        target = maps[rho[i]]
        for a in range(n):
            b = m[a]
            v = target[a]
            if f.setdefault(b, v) != v:
                return []
    for a in range(n):
        lam_col = [maps[lam[i]][a] for i in range(len(maps))]
        xs = [
            x
            for x in range(n)
            if all(m[x] == lam_col[i] for i, m in enumerate(maps))
        ]
        if a in f:
            if f[a] not in xs:
                return []
        else:
            if not xs:
                return []
            f[a] = xs[0]
    cand = tuple(f[a] for a in range(n))
    if algebra is not None and not is_endomorphism(algebra, cand):
        return []
    ok = all(
        compose(m, cand) == maps[rho[i]] and compose(cand, m) == maps[lam[i]]
        for i, m in enumerate(maps)
    )
    return [cand] if ok else []


# ---------------------------------------------------------------------------
# balancedness


def is_right_balanced(n: int, maps, rho) -> bool:
    """a.alpha == b.beta implies a.(alpha rho) == b.(beta rho)."""
    seen = {}
    for i, m in enumerate(maps):
        tgt = maps[rho[i]]
        for a in range(n):
            v = m[a]
            w = tgt[a]
            if seen.setdefault(v, w) != w:
                return False
    return True


def left_balance_witnesses(n: int, maps, lam):
    """For each a, the set of x with a.lam(alpha) == x.alpha for all alpha."""
    cols = []
    for a in range(n):
        want = [maps[lam[i]][a] for i in range(len(maps))]
        cols.append(
            [x for x in range(n) if all(m[x] == want[i] for i, m in enumerate(maps))]
        )
    return cols


def is_left_balanced(n: int, maps, lam):
    """Returns (ok, witnesses): witnesses[a] is the least valid x_a, or the
    pair (False, None) if some point has no witness."""
    cols = left_balance_witnesses(n, maps, lam)
    if any(not c for c in cols):
        return False, None
    return True, [c[0] for c in cols]


def is_strongly_right_balanced(algebra: FiniteAlgebra, maps, rho):
    """Does some endomorphism of <im I> realize rho?

    Seeds the unique candidate f with (x.alpha)f = x.(alpha rho), extends it
    along the closure witnesses of <im I>, then re-verifies the morphism
    property. Returns (True, f_dict_on_closure) or (False, reason)."""
    n = algebra.size
    clo = subalgebra_closure(algebra, image_union(maps))
    f = {}
    for i, m in enumerate(maps):
        tgt = maps[rho[i]]
        for a in range(n):
            b, v = m[a], tgt[a]
            if f.setdefault(b, v) != v:
                return False, "forced values clash at %d: %d vs %d" % (b, f[b], v)
    for x in clo.elements:
        if x in f:
            continue
        w = clo.witness[x]
        assert w[0] != "gen"  # seeds are exactly the image points
        op = algebra.ops[w[0]]
        f[x] = op.value(n, tuple(f[a] for a in w[1])) if op.arity else op.table[0]
    if any(f[x] not in clo.subset for x in clo.elements):
        return False, "candidate leaves the generated subalgebra"
    if not is_morphism_on(algebra, f, clo.subset):
        return False, "forced candidate is not a morphism on <im I>"
    return True, f


def is_strongly_left_balanced(algebra: FiniteAlgebra, maps, lam, pinned=None,
                              config: RunConfig | None = None):
    """Is there an endomorphism g of A with a.lam(alpha) = (a)g.alpha
    everywhere? `pinned` (dict) fixes g on given points, which is how the
    witness choice prescribed on <im I> by a right component is imposed.
    Returns (True, g) or (False, None)."""
    cfg = config or default_config()
    n = algebra.size
    cols = left_balance_witnesses(n, maps, lam)
    if pinned:
        for a, v in pinned.items():
            if v not in cols[a]:
                return False, None
            cols[a] = [v]
    if any(not c for c in cols):
        return False, None
    if n > cfg.exhaustive_map_bound:
        raise SizeRefusalError(
            "witness search on carrier of size %d refused" % n
        )
    order = sorted(range(n), key=lambda a: (len(cols[a]), a))
    g = [-1] * n

    def consistent(just_set):
        # check every op tuple that involves just_set and is fully assigned
        for op in algebra.ops:
            if op.arity == 0:
                c = op.table[0]
                if g[c] != -1 and g[c] != c:
                    return False
                continue
            assigned = [a for a in range(n) if g[a] != -1]
            for args in itertools.product(assigned, repeat=op.arity):
                if just_set not in args:
                    continue
                v = op.value(n, args)
                if g[v] == -1:
                    forced = op.value(n, tuple(g[a] for a in args))
                    if forced not in cols[v]:
                        return False
                    g[v] = forced
                    if not consistent(v):
                        return False
                elif g[v] != op.value(n, tuple(g[a] for a in args)):
                    return False
        return True

    def backtrack(pos):
        while pos < n and g[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        a = order[pos]
        for v in cols[a]:
            snapshot = list(g)
            g[a] = v
            if consistent(a) and backtrack(pos + 1):
                return True
            g[:] = snapshot
        return False

    if backtrack(0):
        gt = tuple(g)
        assert is_endomorphism(algebra, gt)
        return True, gt
    return False, None


# ---------------------------------------------------------------------------
# the congruences identifying maps with equal translations


def kernel_signatures(n: int, maps):
    return [tuple(m[a] for m in maps) for a in range(n)]


def equiv_congruences(n: int, maps, v: FinSemigroup):
    """On a semigroup v of carrier maps: the partitions "equal on im I",
    "equal into ker I" and their meet, each verified to be a congruence.

    maps is the ideal I; v.elems must idealise it.
    """
    if v.elems is None:
        raise PreconditionError("v needs a representation by maps")
    iset = set(tuple(m) for m in maps)
    for f in v.elems:
        for m in maps:
            if compose(m, f) not in iset or compose(f, m) not in iset:
                raise PreconditionError("v does not idealise I at f=%r" % (f,))
    img = image_union(maps)
    ker = kernel_signatures(n, maps)
    p_im = partition_from_signature(
        tuple(f[b] for b in img) for f in v.elems
    )
    p_ker = partition_from_signature(
        tuple(ker[f[a]] for a in range(n)) for f in v.elems
    )
    from .algebra import partition_meet

    p_both = partition_meet(p_im, p_ker)
    for name, p in (("im", p_im), ("ker", p_ker), ("both", p_both)):
        _check_semigroup_congruence(v, p, name)
    return {"im": p_im, "ker": p_ker, "both": p_both}


def _check_semigroup_congruence(s: FinSemigroup, p, name):
    classes = {}
    for x, r in enumerate(p):
        classes.setdefault(r, []).append(x)
    mul = s.mul
    for cls in classes.values():
        rep = cls[0]
        for k in range(s.order):
            if any(p[mul[x][k]] != p[mul[rep][k]] for x in cls[1:]):
                raise TheoremViolationError(
                    "relation %r is not right compatible" % name
                )
            if any(p[mul[k][x]] != p[mul[k][rep]] for x in cls[1:]):
                raise TheoremViolationError(
                    "relation %r is not left compatible" % name
                )


# ---------------------------------------------------------------------------
# the natural map chi: V -> Omega(I) for an ideal I of V


def natural_chi(v: FinSemigroup, ideal_indices, omega=None):
    """chi(u) = (left multiplication, right multiplication) on the ideal.

    Returns (pairs, verdicts): pairs[k] is the BiTranslation of v's k-th
    element; verdicts report morphism/injective/surjective/iso. Surjectivity
    is only decided when `omega` (the enumerated hull of the ideal) is given.
    """
    ideal_indices = sorted(set(ideal_indices))
    pos = {x: i for i, x in enumerate(ideal_indices)}
    mul = v.mul
    for a in ideal_indices:
        for u in range(v.order):
            if mul[a][u] not in pos or mul[u][a] not in pos:
                raise PreconditionError("subset is not an ideal of v")
    pairs = []
    for u in range(v.order):
        lam = tuple(pos[mul[u][a]] for a in ideal_indices)
        rho = tuple(pos[mul[a][u]] for a in ideal_indices)
        pairs.append(BiTranslation(lam, rho))
    sub = subsemigroup(v, ideal_indices)
    for p in pairs:
        if not is_bitranslation(sub, p):
            raise TheoremViolationError("chi image is not a bi-translation")
    for x in range(v.order):
        for y in range(v.order):
            if hull_mul(pairs[x], pairs[y]) != pairs[mul[x][y]]:
                raise TheoremViolationError("chi is not a morphism")
    verdicts = {
        "morphism": True,
        "injective": len(set(pairs)) == v.order,
        "surjective": None,
        "iso": None,
    }
    if omega is not None:
        image = set(pairs)
        omega = set(omega)
        assert image <= omega
        verdicts["surjective"] = image == omega
        verdicts["iso"] = verdicts["injective"] and verdicts["surjective"]
    return pairs, verdicts


# ---------------------------------------------------------------------------
# the full report


@dataclass
class HullReport:
    ideal_order: int
    counts: dict = field(default_factory=dict)
    realized: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    balance: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)

    def to_dict(self):
        return {
            "ideal_order": self.ideal_order,
            "counts": self.counts,
            "realized": self.realized,
            "morphisms": self.morphisms,
            "balance": self.balance,
            "skipped": sorted(self.skipped),
        }


def hull_report(
    algebra: FiniteAlgebra, maps, config: RunConfig | None = None, gens=None
) -> HullReport:
    """Everything the engine can say about Omega(I) for I a set of carrier
    maps, with explicit skip markers where a bound was hit.

    gens, if given, is a generating set of the algebra used to enumerate
    End(A) when the carrier is too large for the map scan.
    """
    cfg = config or default_config()
    n = algebra.size
    maps = [tuple(m) for m in maps]
    i_sg = semigroup_from_maps(maps)
    rep = HullReport(ideal_order=i_sg.order)
    omega = None
    try:
        lams = enumerate_left_translations(i_sg, cfg)
        rhos = enumerate_right_translations(i_sg, cfg)
        omega = enumerate_bitranslations(i_sg, cfg)
        rep.counts = {
            "left": len(lams),
            "right": len(rhos),
            "hull": len(omega),
            "left_linked": len({p.left for p in omega}),
            "right_linked": len({p.right for p in omega}),
        }
    except SizeRefusalError as exc:
        rep.skipped.append("enumeration: %s" % exc)
    canon = i_sg.elems  # semigroup_from_maps sorts; translate indices
    order_map = {m: i for i, m in enumerate(canon)}

    def chi_image(fs):
        return {induced_translation(canon, f) for f in fs}

    t_maps = s_maps = None
    if n <= cfg.exhaustive_map_bound:
        t_maps = maps_idealiser(n, canon)
    else:
        rep.skipped.append("T(A,I): carrier size %d over bound" % n)
    try:
        from .semigroups import enumerate_endomorphisms, idealiser_in

        end_sg = enumerate_endomorphisms(algebra, gens=gens, config=cfg)
        if not all(m in set(end_sg.elems) for m in canon):
            rep.skipped.append("S(A,I): ideal is not inside End(A)")
        else:
            s_maps = maps_idealiser(n, canon, universe=end_sg.elems)
    except SizeRefusalError as exc:
        rep.skipped.append("S(A,I): %s" % exc)
    for label, pool in (("maps", t_maps), ("endos", s_maps)):
        if pool is None:
            continue
        img = chi_image(pool)
        entry = {"idealiser_order": len(pool), "image_order": len(img)}
        if omega is not None:
            realized = img & set(omega)
            assert len(realized) == len(img), "chi image must land in the hull"
            entry["realized"] = len(realized)
            entry["injective"] = len(img) == len(pool)
            entry["surjective_onto_hull"] = img == set(omega)
            entry["iso"] = entry["injective"] and entry["surjective_onto_hull"]
        rep.realized[label] = entry
    if omega is not None:
        rep.morphisms["pi_left_injective"] = len({p.left for p in omega}) == len(omega)
        rep.morphisms["pi_right_injective"] = len({p.right for p in omega}) == len(
            omega
        )
        lam_ok = all(
            is_left_balanced(n, canon, p.left)[0] for p in omega
        )
        rho_ok = all(is_right_balanced(n, canon, p.right) for p in omega)
        rep.balance = {
            "all_linked_left_balanced": lam_ok,
            "all_linked_right_balanced": rho_ok,
        }
        if t_maps is not None:
            # realized-by-maps iff both balance conditions hold
            realized_all = rep.realized["maps"]["surjective_onto_hull"]
            if realized_all != (lam_ok and rho_ok):
                raise TheoremViolationError(
                    "map realization does not match the balance criterion"
                )
    return rep
