"""Finite semigroups as dense multiplication tables.

mul[i][j] is the product (element i) * (element j). When the semigroup
carries a faithful representation by maps, `elems[i]` is the map of element
i and the table matches left-to-right composition: elems[mul[i][j]] ==
compose(elems[i], elems[j]).
"""
from __future__ import annotations

import itertools
import json
import random

from .algebra import FiniteAlgebra, compose, is_endomorphism, replay_witnesses, subalgebra_closure
from .config import RunConfig, default_config
from .errors import (
    ConstructionError,
    DimensionError,
    ParseError,
    PreconditionError,
    SizeRefusalError,
)

ASSOC_EXHAUSTIVE = 60
ASSOC_SAMPLES = 1_000_000


class FinSemigroup:
    """order, mul (tuple of row tuples), optional elems (maps) and names."""

    __slots__ = ("order", "mul", "elems", "names")

    def __init__(self, mul, elems=None, names=None, check=True):
        mul = tuple(tuple(row) for row in mul)
        n = len(mul)
        if n == 0:
            raise DimensionError("empty semigroup")
        for row in mul:
            if len(row) != n:
                raise DimensionError("table is not square")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise DimensionError("table value %r out of range" % (v,))
        self.order = n
        self.mul = mul
        if elems is not None:
            elems = tuple(tuple(e) for e in elems)
            if len(elems) != n:
                raise DimensionError("need one map per element")
            if len(set(elems)) != n:
                raise ConstructionError("representation maps are not distinct")
        self.elems = elems
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise DimensionError("need one name per element")
        if check:
            self._check_associative()
        if check and elems is not None:
            for i in range(n):
                for j in range(n):
                    if compose(elems[i], elems[j]) != elems[mul[i][j]]:
                        raise ConstructionError(
                            "representation does not match table at (%d,%d)" % (i, j)
                        )

    def _check_associative(self):
        n, mul = self.order, self.mul
        if n <= ASSOC_EXHAUSTIVE:
            triples = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            rng = random.Random(0)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(ASSOC_SAMPLES)
            )
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ConstructionError(
                    "not associative at (%d,%d,%d)" % (a, b, c)
                )

    def identity(self):
        """Index of the two-sided identity, or None."""
        n, mul = self.order, self.mul
        for e in range(n):
            if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
                return e
        return None

    def idempotents(self):
        return [x for x in range(self.order) if self.mul[x][x] == x]

    def units(self):
        """Indices of invertible elements (empty if there is no identity)."""
        e = self.identity()
        if e is None:
            return []
        n, mul = self.order, self.mul
        return [
            x
            for x in range(n)
            if any(mul[x][y] == e and mul[y][x] == e for y in range(n))
        ]

    def element_name(self, i):
        if self.names is not None:
            return self.names[i]
        if self.elems is not None:
            return "".join(str(v) for v in self.elems[i]) if len(
                self.elems[i]
            ) <= 10 else str(self.elems[i])
        return str(i)


def semigroup_from_maps(maps, names=None) -> FinSemigroup:
    """Semigroup of maps under left-to-right composition.

    Canonical element order: sorted by value array. Raises if the set is not
    closed under composition. names, if given, is a dict map -> label.
    """
    maps = sorted(set(tuple(m) for m in maps))
    if not maps:
        raise DimensionError("empty semigroup")
    size = len(maps[0])
    for m in maps:
        if len(m) != size:
            raise DimensionError("maps act on different carriers")
    idx = {m: i for i, m in enumerate(maps)}
    mul = []
    for f in maps:
        row = []
        for g in maps:
            fg = compose(f, g)
            if fg not in idx:
                raise PreconditionError(
                    "maps not closed under composition: missing %r" % (fg,)
                )
            row.append(idx[fg])
        mul.append(tuple(row))
    if names is not None:
        names = [names[m] for m in maps]
    return FinSemigroup(mul, elems=maps, names=names, check=False)


def close_maps(maps, limit) -> list:
    """Composition closure of a set of maps (left-to-right), sorted."""
    todo = sorted(set(tuple(m) for m in maps))
    seen = set(todo)
    out = list(todo)
    while todo:
        nxt = []
        for f in out:
            for g in todo:
                for h in (compose(f, g), compose(g, f)):
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
                        if len(seen) > limit:
                            raise SizeRefusalError(
                                "map closure exceeds %d elements" % limit
                            )
        out.extend(sorted(set(nxt)))
        todo = sorted(set(nxt))
    return sorted(seen)


def full_transformation_monoid(n: int, config: RunConfig | None = None) -> FinSemigroup:
    """T_n with its natural representation; refuses n > 8 outright and any n
    whose table would blow the configured result cap."""
    cfg = config or default_config()
    if n > 8:
        raise SizeRefusalError("T_%d refused (bound is 8)" % n)
    if n < 1:
        raise DimensionError("carrier must be nonempty")
    if n**n > cfg.max_results or (n**n) ** 2 > 100 * cfg.max_results:
        raise SizeRefusalError(
            "T_%d has %d elements; table too large under current config" % (n, n**n)
        )
    maps = list(itertools.product(range(n), repeat=n))
    return semigroup_from_maps(maps)


def enumerate_endomorphisms(
    alg: FiniteAlgebra, gens=None, config: RunConfig | None = None
) -> FinSemigroup:
    """End(A) as a monoid of maps.

    Without gens: filters all |A|^|A| maps (|A| <= exhaustive_map_bound).
    With gens: gens must generate A; candidate generator images are extended
    along the closure witnesses and verified with is_endomorphism.
    """
    cfg = config or default_config()
    n = alg.size
    if gens is None:
        if n > cfg.exhaustive_map_bound:
            raise SizeRefusalError(
                "|A| = %d: pass generators or raise exhaustive_map_bound" % n
            )
        found = [
            f
            for f in itertools.product(range(n), repeat=n)
            if is_endomorphism(alg, f)
        ]
    else:
        gens = sorted(set(gens))
        clo = subalgebra_closure(alg, gens)
        if len(clo.elements) != n:
            raise PreconditionError(
                "generators give a subalgebra of size %d, not %d"
                % (len(clo.elements), n)
            )
        found = set()
        for images in itertools.product(range(n), repeat=len(gens)):
            ext = replay_witnesses(alg, clo, dict(zip(gens, images)))
            f = tuple(ext[x] for x in range(n))
            if f not in found and is_endomorphism(alg, f):
                found.add(f)
        found = sorted(found)
    if len(found) ** 2 > 100 * cfg.max_results:
        raise SizeRefusalError("End(A) has %d elements; table too large" % len(found))
    return semigroup_from_maps(found)


def is_subsemigroup(s: FinSemigroup, subset) -> bool:
    sub = set(subset)
    return all(s.mul[a][b] in sub for a in sub for b in sub)


def is_ideal(s: FinSemigroup, subset, side="two") -> bool:
    sub = set(subset)
    mul = s.mul
    every = range(s.order)
    right = all(mul[a][x] in sub for a in sub for x in every)
    left = all(mul[x][a] in sub for a in sub for x in every)
    if side == "right":
        return right
    if side == "left":
        return left
    return left and right


def ideal_generated(s: FinSemigroup, gens, side="two") -> list:
    """Smallest (left/right/two-sided) ideal containing gens; sorted indices."""
    if side not in ("left", "right", "two"):
        raise PreconditionError("side must be left, right or two")
    cur = set(gens)
    todo = list(cur)
    mul = s.mul
    while todo:
        a = todo.pop()
        if side in ("right", "two"):
            for x in range(s.order):
                v = mul[a][x]
                if v not in cur:
                    cur.add(v)
                    todo.append(v)
        if side in ("left", "two"):
            for x in range(s.order):
                v = mul[x][a]
                if v not in cur:
                    cur.add(v)
                    todo.append(v)
    return sorted(cur)


def subsemigroup(s: FinSemigroup, indices) -> FinSemigroup:
    """The semigroup on a closed subset, canonical order = ascending index."""
    indices = sorted(set(indices))
    if not is_subsemigroup(s, indices):
        raise PreconditionError("subset is not closed under the product")
    pos = {x: i for i, x in enumerate(indices)}
    mul = tuple(
        tuple(pos[s.mul[a][b]] for b in indices) for a in indices
    )
    elems = tuple(s.elems[i] for i in indices) if s.elems is not None else None
    names = tuple(s.names[i] for i in indices) if s.names is not None else None
    return FinSemigroup(mul, elems=elems, names=names, check=False)


def idealiser_in(s: FinSemigroup, ideal, side="two") -> list:
    """Elements u of s with u*I (and/or I*u) inside I; sorted indices."""
    sub = set(ideal)
    mul = s.mul
    out = []
    for u in range(s.order):
        ok = True
        if side in ("left", "two"):
            ok = all(mul[u][a] in sub for a in sub)
        if ok and side in ("right", "two"):
            ok = all(mul[a][u] in sub for a in sub)
        if ok:
            out.append(u)
    return out


def non_units_ideal(s: FinSemigroup) -> list:
    """Complement of the group of units, validated to be an ideal."""
    e = s.identity()
    if e is None:
        raise PreconditionError("semigroup has no identity; non-units undefined")
    units = set(s.units())
    rest = [x for x in range(s.order) if x not in units]
    if not rest:
        raise PreconditionError("every element is a unit; the ideal is empty")
    if not is_ideal(s, rest):
        raise PreconditionError("non-units do not form an ideal here")
    return rest


# ---------------------------------------------------------------------------
# Green's relations


class EggBox:
    """Green structure: partitions (rep arrays) and the D-class grid.

    grid[d] is a list of rows, one per R-class, each row a list of H-cells
    (lists of element indices) in a fixed L-class order. d_below holds the
    transitive reduction of the strict order on D-classes (lower, upper).
    """

    def __init__(self, r, l, h, d, d_classes, grid, d_below, group_h):
        self.r = r
        self.l = l
        self.h = h
        self.d = d
        self.d_classes = d_classes
        self.grid = grid
        self.d_below = d_below
        self.group_h = group_h  # frozenset of (d, row, col) cells containing an idempotent


def _principal_sets(s: FinSemigroup):
    n, mul = s.order, s.mul
    rights, lefts, twos = [], [], []
    for x in range(n):
        r = {x}
        r.update(mul[x])
        c = {x}
        c.update(mul[y][x] for y in range(n))
        t = set(r)
        t.update(c)
        t.update(mul[z][y] for z in c for y in range(n))
        rights.append(frozenset(r))
        lefts.append(frozenset(c))
        twos.append(frozenset(t))
    return rights, lefts, twos


def green_relations(s: FinSemigroup) -> EggBox:
    from .algebra import partition_from_signature, partition_meet

    rights, lefts, twos = _principal_sets(s)
    r = partition_from_signature(rights)
    l = partition_from_signature(lefts)
    h = partition_meet(r, l)
    d = partition_from_signature(twos)  # D = J in a finite semigroup
    d_reps = sorted(set(d))
    d_classes = [[x for x in range(s.order) if d[x] == rep] for rep in d_reps]
    idem = set(s.idempotents())
    grid = []
    group_h = set()
    for di, cls in enumerate(d_classes):
        r_reps = sorted({r[x] for x in cls})
        l_reps = sorted({l[x] for x in cls})
        rows = []
        for ri, rr in enumerate(r_reps):
            row = []
            for ci, lr in enumerate(l_reps):
                cell = [x for x in cls if r[x] == rr and l[x] == lr]
                assert cell, "R and L classes of a D-class must intersect"
                row.append(cell)
                if any(x in idem for x in cell):
                    group_h.add((di, ri, ci))
            rows.append(row)
        grid.append(rows)
    # strict containment order on the principal two-sided ideals
    below = set()
    for i, ci in enumerate(d_classes):
        for j, cj in enumerate(d_classes):
            if i != j and twos[ci[0]] < twos[cj[0]]:
                below.add((i, j))
    reduced = {
        (i, j)
        for (i, j) in below
        if not any((i, k) in below and (k, j) in below for k in range(len(d_classes)))
    }
    return EggBox(r, l, h, d, d_classes, grid, sorted(reduced), frozenset(group_h))


def green_classes(eggbox: EggBox):
    from .algebra import partition_classes

    return {
        "R": partition_classes(eggbox.r),
        "L": partition_classes(eggbox.l),
        "H": partition_classes(eggbox.h),
        "D": partition_classes(eggbox.d),
    }


def _gvquote(s):
    return '"%s"' % s.replace('"', '\\"')


def eggbox_dot(s: FinSemigroup, box: EggBox | None = None) -> str:
    """DOT egg-box diagram: one node per D-class holding an HTML grid of
    H-cells; cells whose H-class is a group get a doubled border; edges are
    the transitive reduction of the D-order, lower class below."""
    if box is None:
        box = green_relations(s)
    lines = ["digraph eggbox {", "  rankdir=BT;", '  node [shape=plaintext];']
    for di, rows in enumerate(box.grid):
        parts = ['<TABLE BORDER="1" CELLBORDER="1" CELLSPACING="0">']
        for ri, row in enumerate(rows):
            parts.append("<TR>")
            for ci, cell in enumerate(row):
                label = ", ".join(s.element_name(x) for x in cell)
                if (di, ri, ci) in box.group_h:
                    parts.append(
                        '<TD><TABLE BORDER="1" CELLBORDER="0" CELLSPACING="0">'
                        "<TR><TD>%s</TD></TR></TABLE></TD>" % label
                    )
                else:
                    parts.append("<TD>%s</TD>" % label)
            parts.append("</TR>")
        parts.append("</TABLE>")
        lines.append("  d%d [label=<%s>];" % (di, "".join(parts)))
    for lo, hi in box.d_below:
        lines.append("  d%d -> d%d;" % (lo, hi))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ranks


def generic_rank(alg: FiniteAlgebra, f, cap=4) -> int:
    """Least |Y| with im f inside the subalgebra generated by Y.

    Equals |im f| on sets and the image dimension on vector spaces. Searches
    subsets by size, so keep cap small; raises if no Y of size <= cap works.
    """
    img = set(f)
    for size in range(cap + 1):
        for y in itertools.combinations(range(alg.size), size):
            if img <= subalgebra_closure(alg, y).subset:
                return size
    raise SizeRefusalError("rank exceeds cap %d" % cap)


def rank_ideal(n: int, k: int, config: RunConfig | None = None) -> FinSemigroup:
    """Maps on an n-set of image size < k, as a subsemigroup of T_n."""
    if k < 1 or k > n + 1:
        raise PreconditionError("need 1 <= k <= n+1")
    if k == 1:
        raise PreconditionError("rank ideal with k = 1 is empty on a set")
    cfg = config or default_config()
    if n**n > 100 * cfg.max_results:
        raise SizeRefusalError("T_%d too large to filter" % n)
    maps = [
        f
        for f in itertools.product(range(n), repeat=n)
        if len(set(f)) < k
    ]
    return semigroup_from_maps(maps)


def endo_rank_ideal(alg: FiniteAlgebra, endos, k: int, cap=4) -> list:
    """Endomorphisms whose image generates a subalgebra of rank < k.

    endos: list of maps; returns the sublist (the vector-space analogue of
    rank_ideal filters End(A) by image-subspace dimension).
    """
    return [f for f in endos if generic_rank(alg, f, cap=cap) < k]


# ---------------------------------------------------------------------------
# isomorphism


def _wl_colors(s: FinSemigroup):
    n, mul = s.order, s.mul
    rights, lefts, twos = _principal_sets(s)
    idem = set(s.idempotents())

    def cyc_profile(x):
        seen = {}
        cur = x
        i = 0
        while cur not in seen:
            seen[cur] = i
            cur = mul[cur][x]
            i += 1
        return (seen[cur], i - seen[cur])  # (index, period)

    colors = [
        (x in idem, cyc_profile(x), len(rights[x]), len(lefts[x]), len(twos[x]))
        for x in range(n)
    ]
    # refine by the multiset of (color(y), color(xy), color(yx)) until stable
    while True:
        palette = {c: i for i, c in enumerate(sorted(set(colors)))}
        cur = [palette[c] for c in colors]
        sig = [
            (cur[x], tuple(sorted((cur[y], cur[mul[x][y]], cur[mul[y][x]]) for y in range(n))))
            for x in range(n)
        ]
        if len(set(sig)) == len(set(cur)):
            return cur
        colors = sig


def iso_check(s1: FinSemigroup, s2: FinSemigroup, bound=64):
    """An isomorphism s1 -> s2 as a tuple, or None.

    Invariant pruning (idempotents, cyclic index/period, principal ideal
    sizes, table refinement) then backtracking with forced-product
    propagation.
    """
    if s1.order != s2.order:
        return None
    n = s1.order
    if n > bound:
        raise SizeRefusalError("iso_check bound is %d, got order %d" % (bound, n))
    c1, c2 = _wl_colors(s1), _wl_colors(s2)
    if sorted(c1) != sorted(c2):
        return None
    buckets = {}
    for y, c in enumerate(c2):
        buckets.setdefault(c, []).append(y)
    order = sorted(range(n), key=lambda x: (len(buckets[c1[x]]), x))
    m1, m2 = s1.mul, s2.mul
    img = [-1] * n
    used = [False] * n

    def assign(x, y, trail):
        # returns False on conflict; records assignments for undo
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if img[a] != -1:
                if img[a] != b:
                    return False
                continue
            if used[b] or c1[a] != c2[b]:
                return False
            img[a] = b
            used[b] = True
            trail.append((a, b))
            for u in range(n):
                if img[u] != -1:
                    stack.append((m1[a][u], m2[b][img[u]]))
                    stack.append((m1[u][a], m2[img[u]][b]))
        return True

    def backtrack(pos):
        while pos < n and img[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        x = order[pos]
        for y in buckets[c1[x]]:
            if used[y]:
                continue
            trail = []
            if assign(x, y, trail) and backtrack(pos + 1):
                return True
            for a, b in trail:
                img[a] = -1
                used[b] = False
        return False

    if backtrack(0):
        return tuple(img)
    return None


# ---------------------------------------------------------------------------
# JSON: {"table": [[...]]} or {"carrier": n, "elements": [[...], ...]}


def semigroup_to_dict(s: FinSemigroup) -> dict:
    if s.elems is not None:
        return {"carrier": len(s.elems[0]), "elements": [list(e) for e in s.elems]}
    return {"table": [list(row) for row in s.mul]}


def semigroup_from_dict(d) -> FinSemigroup:
    if not isinstance(d, dict):
        raise ParseError("semigroup payload must be an object")
    if "table" in d:
        t = d["table"]
        if not isinstance(t, list) or not all(isinstance(r, list) for r in t):
            raise ParseError("'table' must be a list of rows")
        try:
            return FinSemigroup(t)
        except (DimensionError, ConstructionError) as exc:
            raise ParseError("invalid table: %s" % exc)
    if "elements" in d:
        n = d.get("carrier")
        elems = d["elements"]
        if not isinstance(n, int) or not isinstance(elems, list):
            raise ParseError("need integer 'carrier' and list 'elements'")
        for e in elems:
            if not isinstance(e, list) or len(e) != n or not all(
                isinstance(v, int) and 0 <= v < n for v in e
            ):
                raise ParseError("element %r is not a map on 0..%d" % (e, n - 1))
        try:
            return semigroup_from_maps(elems)
        except (DimensionError, PreconditionError, ConstructionError) as exc:
            raise ParseError("invalid map semigroup: %s" % exc)
    raise ParseError("semigroup needs 'table' or 'carrier'+'elements'")


def load_semigroup(path: str) -> FinSemigroup:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ParseError("%s: bad JSON at line %d" % (path, exc.lineno))
    return semigroup_from_dict(d)
