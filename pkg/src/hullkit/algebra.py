"""Finite algebras with named finitary operations.

Carriers are 0..n-1. Maps on a carrier ("Transf") are plain tuples of ints:
t[a] is the image of a, and maps act on the RIGHT, so `compose(f, g)` is
"f then g" and satisfies a(fg) = (af)g. Operation tables are flat, row-major.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import (
    ConstructionError,
    DimensionError,
    NotACongruenceError,
    ParseError,
    PreconditionError,
)

Transf = tuple  # tuple[int, ...], one value per carrier point


def compose(f: Transf, g: Transf) -> Transf:
    """f then g: a |-> g[f[a]]."""
    return tuple(map(g.__getitem__, f))


def identity_map(n: int) -> Transf:
    return tuple(range(n))


def validate_map(f, n: int, m: int | None = None) -> Transf:
    """Check f is a map 0..n-1 -> 0..m-1 (m defaults to n)."""
    if m is None:
        m = n
    f = tuple(f)
    if len(f) != n:
        raise DimensionError("map has %d entries, carrier has %d" % (len(f), n))
    for v in f:
        if not isinstance(v, int) or not 0 <= v < m:
            raise DimensionError("map value %r out of range 0..%d" % (v, m - 1))
    return f


@dataclass(frozen=True)
class NamedOp:
    name: str
    arity: int
    table: tuple  # flat, row-major, length size**arity

    def value(self, size: int, args) -> int:
        idx = 0
        for a in args:
            idx = idx * size + a
        return self.table[idx]


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    ops: tuple  # tuple[NamedOp, ...]
    kind: str | None = None

    def __post_init__(self):
        if self.size < 1:
            raise DimensionError("carrier must be nonempty")
        names = set()
        for op in self.ops:
            if op.arity < 0:
                raise DimensionError("op %r has negative arity" % op.name)
            if len(op.table) != self.size**op.arity:
                raise DimensionError(
                    "op %r: table has %d entries, expected %d"
                    % (op.name, len(op.table), self.size**op.arity)
                )
            for v in op.table:
                if not isinstance(v, int) or not 0 <= v < self.size:
                    raise DimensionError("op %r: value %r out of range" % (op.name, v))
            if op.name in names:
                raise ConstructionError("duplicate op name %r" % op.name)
            names.add(op.name)

    def op_named(self, name: str) -> NamedOp:
        for op in self.ops:
            if op.name == name:
                return op
        raise PreconditionError("no op named %r" % name)

    def constants(self):
        return tuple(op.table[0] for op in self.ops if op.arity == 0)


def is_endomorphism(alg: FiniteAlgebra, f) -> bool:
    """f preserves every operation; O(sum of size^arity)."""
    n = alg.size
    f = tuple(f)
    if len(f) != n:
        raise DimensionError("map has %d entries, carrier has %d" % (len(f), n))
    for op in alg.ops:
        t = op.table
        if op.arity == 0:
            if f[t[0]] != t[0]:
                return False
        elif op.arity == 1:
            for a in range(n):
                if f[t[a]] != t[f[a]]:
                    return False
        elif op.arity == 2:
            for a in range(n):
                row = a * n
                fa = f[a] * n
                for b in range(n):
                    if f[t[row + b]] != t[fa + f[b]]:
                        return False
        else:
            for args in itertools.product(range(n), repeat=op.arity):
                if f[op.value(n, args)] != op.value(n, tuple(f[a] for a in args)):
                    return False
    return True


def is_morphism_on(alg: FiniteAlgebra, f, subset) -> bool:
    """f preserves ops on argument tuples drawn from `subset`.

    f may be a dict defined (at least) on subset; values need not stay in
    subset. Nullary ops whose value lies in subset must be fixed.
    """
    get = f.__getitem__
    subset = set(subset)
    sub = sorted(subset)
    n = alg.size
    for op in alg.ops:
        if op.arity == 0:
            c = op.table[0]
            if c in subset and get(c) != c:
                return False
            continue
        for args in itertools.product(sub, repeat=op.arity):
            try:
                fv = get(op.value(n, args))
            except KeyError:
                return False  # op leaves f's domain: not a morphism on subset
            if fv != op.value(n, tuple(get(a) for a in args)):
                return False
    return True


GEN = "gen"


@dataclass
class ClosureResult:
    """Subalgebra closure with a replayable witness for every element.

    elements: closure in discovery order (seed first, ascending; then BFS
    rounds, ties broken by op index then lexicographic argument tuple).
    witness[x] is ("gen",) for seed elements and (op_index, args) otherwise;
    every arg of a witness appears earlier in `elements`.
    """

    elements: list
    witness: dict
    subset: frozenset = field(init=False)

    def __post_init__(self):
        self.subset = frozenset(self.elements)


def subalgebra_closure(alg: FiniteAlgebra, seed) -> ClosureResult:
    seed = sorted(set(seed))
    for a in seed:
        if not 0 <= a < alg.size:
            raise DimensionError("seed element %r out of range" % (a,))
    order = list(seed)
    witness = {a: (GEN,) for a in seed}
    known = set(seed)
    n = alg.size
    frontier = True
    while frontier:
        frontier = False
        base = sorted(known)
        new = []
        for op_idx, op in enumerate(alg.ops):
            if op.arity == 0:
                v = op.table[0]
                if v not in known and all(v != x for x in new):
                    witness[v] = (op_idx, ())
                    new.append(v)
                continue
            for args in itertools.product(base, repeat=op.arity):
                v = op.value(n, args)
                if v not in known and v not in witness:
                    witness[v] = (op_idx, args)
                    new.append(v)
        if new:
            frontier = True
            order.extend(new)
            known.update(new)
    return ClosureResult(order, witness)


def replay_witnesses(alg: FiniteAlgebra, clo: ClosureResult, gen_images: dict) -> dict:
    """Extend gen_images (defined on the closure's seed) along the witnesses.

    Returns {element: image}. This is the unique op-respecting extension if
    one exists; the caller still has to verify the result is a morphism.
    """
    images = {}
    for x in clo.elements:
        w = clo.witness[x]
        if w[0] == GEN:
            images[x] = gen_images[x]
        else:
            op = alg.ops[w[0]]
            if op.arity == 0:
                images[x] = op.table[0]
            else:
                images[x] = op.value(alg.size, tuple(images[a] for a in w[1]))
    return images


# ---------------------------------------------------------------------------
# partitions: a partition of 0..n-1 is a tuple rep with rep[x] = min of the
# class of x (so rep[rep[x]] == rep[x] and rep[x] <= x)


def normalize_partition(rep) -> tuple:
    rep = list(rep)
    n = len(rep)
    smallest = {}
    for x in range(n):
        r = rep[x]
        if not 0 <= r < n:
            raise DimensionError("class label %r out of range" % (r,))
        if r not in smallest:
            smallest[r] = x
    # second pass: classes must be label-consistent (rep is any labeling)
    return tuple(smallest[rep[x]] for x in range(n))


def partition_from_blocks(n: int, blocks) -> tuple:
    """Blocks need not cover 0..n-1; uncovered elements stay singletons."""
    rep = list(range(n))
    seen = set()
    for blk in blocks:
        blk = sorted(set(blk))
        for x in blk:
            if not 0 <= x < n:
                raise DimensionError("block element %r out of range" % (x,))
            if x in seen:
                raise PreconditionError("blocks overlap at %d" % x)
            seen.add(x)
            rep[x] = blk[0]
    return normalize_partition(rep)


def partition_from_signature(sigs) -> tuple:
    """Group indices by equal signature values."""
    first = {}
    rep = []
    for x, s in enumerate(sigs):
        rep.append(first.setdefault(s, x))
    return tuple(rep)


def partition_classes(rep) -> list:
    classes = {}
    for x, r in enumerate(rep):
        classes.setdefault(r, []).append(x)
    return [classes[r] for r in sorted(classes)]


def partition_meet(p, q) -> tuple:
    assert len(p) == len(q)
    return partition_from_signature(list(zip(p, q)))


def is_trivial_partition(rep) -> bool:
    return all(r == x for x, r in enumerate(rep))


def is_congruence(alg: FiniteAlgebra, rep) -> bool:
    try:
        check_congruence(alg, rep)
    except NotACongruenceError:
        return False
    return True


def check_congruence(alg: FiniteAlgebra, rep):
    """Raise NotACongruenceError naming the first violating op and tuple.

    Compatibility is checked as: every argument tuple gives a result
    equivalent to the result on the tuple of class representatives.
    """
    n = alg.size
    rep = normalize_partition(rep)
    if len(rep) != n:
        raise DimensionError("partition has %d entries, carrier has %d" % (len(rep), n))
    for op in alg.ops:
        if op.arity == 0:
            continue
        for args in itertools.product(range(n), repeat=op.arity):
            rargs = tuple(rep[a] for a in args)
            if rep[op.value(n, args)] != rep[op.value(n, rargs)]:
                raise NotACongruenceError(op.name, args)
    return rep


def quotient_algebra(alg: FiniteAlgebra, rep):
    """Quotient by a congruence. Returns (quotient algebra, projection map).

    Quotient classes are indexed in increasing order of their smallest
    member, so the projection of element 0 is class 0.
    """
    rep = check_congruence(alg, rep)
    reps = sorted(set(rep))
    new_index = {r: i for i, r in enumerate(reps)}
    proj = tuple(new_index[rep[x]] for x in range(alg.size))
    m = len(reps)
    new_ops = []
    for op in alg.ops:
        if op.arity == 0:
            table = (proj[op.table[0]],)
        else:
            table = tuple(
                proj[op.value(alg.size, args)]
                for args in itertools.product(reps, repeat=op.arity)
            )
        new_ops.append(NamedOp(op.name, op.arity, table))
    return FiniteAlgebra(m, tuple(new_ops), kind=alg.kind), proj


# ---------------------------------------------------------------------------
# constructors


def make_set(n: int) -> FiniteAlgebra:
    return FiniteAlgebra(n, (), kind="set")


def make_cyclic_group(n: int) -> FiniteAlgebra:
    if n < 1:
        raise ConstructionError("order must be positive")
    add = tuple((a + b) % n for a in range(n) for b in range(n))
    neg = tuple((-a) % n for a in range(n))
    ops = (NamedOp("add", 2, add), NamedOp("neg", 1, neg), NamedOp("zero", 0, (0,)))
    return FiniteAlgebra(n, ops, kind="group")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def make_vector_space(p: int, d: int) -> FiniteAlgebra:
    """GF(p)^d: binary +, constant 0, one unary op per scalar 2..p-1.

    The identity scalar is omitted (it forces nothing); endomorphisms are
    exactly the linear maps. Vectors are indexed lexicographically, leftmost
    coordinate most significant, so index 0 is the zero vector.
    """
    if not _is_prime(p):
        raise ConstructionError("p = %r is not prime" % (p,))
    if d < 1:
        raise ConstructionError("dimension must be positive")
    vecs = list(itertools.product(range(p), repeat=d))
    idx = {v: i for i, v in enumerate(vecs)}
    n = len(vecs)
    add = tuple(
        idx[tuple((x + y) % p for x, y in zip(u, v))] for u in vecs for v in vecs
    )
    ops = [NamedOp("add", 2, add), NamedOp("zero", 0, (0,))]
    for c in range(2, p):
        tab = tuple(idx[tuple((c * x) % p for x in u)] for u in vecs)
        ops.append(NamedOp("scalar%d" % c, 1, tab))
    return FiniteAlgebra(n, tuple(ops), kind="vector_space")


def make_sym_group(n: int) -> FiniteAlgebra:
    """Symmetric group on 0..n-1, carrier = permutations in lex order,
    signature (mul, inv, e). Permutations compose left to right."""
    if n < 1:
        raise ConstructionError("n must be positive")
    if n > 6:
        from .errors import SizeRefusalError

        raise SizeRefusalError("S_%d table would have %d entries" % (n, _fact(n) ** 2))
    perms = sorted(itertools.permutations(range(n)))
    idx = {s: i for i, s in enumerate(perms)}
    m = len(perms)
    mul = tuple(idx[compose(s, t)] for s in perms for t in perms)
    inv = []
    for s in perms:
        v = [0] * n
        for i, si in enumerate(s):
            v[si] = i
        inv.append(idx[tuple(v)])
    e = idx[tuple(range(n))]
    assert e == 0  # identity is lex-smallest
    ops = (NamedOp("mul", 2, mul), NamedOp("inv", 1, tuple(inv)), NamedOp("e", 0, (0,)))
    return FiniteAlgebra(m, ops, kind="group")


def _fact(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return r


def sym_group_perms(n: int) -> list:
    return sorted(itertools.permutations(range(n)))


def sym_group_gens(n: int) -> tuple:
    """Carrier indices of the transposition (0 1) and the n-cycle (0 1 .. n-1)."""
    perms = sym_group_perms(n)
    idx = {s: i for i, s in enumerate(perms)}
    swap = tuple([1, 0] + list(range(2, n)))
    cyc = tuple(list(range(1, n)) + [0])
    return idx[swap], idx[cyc]


def make_semilattice_of_groups(groups, links) -> FiniteAlgebra:
    """Strong semilattice of groups over a finite chain.

    groups: list of group algebras (signature mul/inv/e), top of the chain
    first. links[i]: map (tuple) from groups[i] down into groups[i+1]; must
    be a homomorphism. The product pushes both factors to the lower level.
    Signature of the result: binary mul only.
    """
    if len(groups) < 1:
        raise ConstructionError("need at least one group")
    if len(links) != len(groups) - 1:
        raise ConstructionError("need one link per adjacent pair")
    muls = []
    for g in groups:
        muls.append(g.op_named("mul"))
    for i, lk in enumerate(links):
        lo, hi = groups[i + 1], groups[i]
        lk = validate_map(lk, hi.size, lo.size)
        for a in range(hi.size):
            for b in range(hi.size):
                if lk[muls[i].value(hi.size, (a, b))] != muls[i + 1].value(
                    lo.size, (lk[a], lk[b])
                ):
                    raise ConstructionError("link %d is not a homomorphism" % i)
    offsets = []
    total = 0
    for g in groups:
        offsets.append(total)
        total += g.size

    def push(level, a, target):
        # move a from `level` down to `target` through the chained links
        while level < target:
            a = links[level][a]
            level += 1
        return a

    table = []
    for i, g in enumerate(groups):
        for a in range(g.size):
            for j, h in enumerate(groups):
                for b in range(h.size):
                    lvl = max(i, j)
                    x = push(i, a, lvl)
                    y = push(j, b, lvl)
                    table.append(offsets[lvl] + muls[lvl].value(groups[lvl].size, (x, y)))
    alg = FiniteAlgebra(total, (NamedOp("mul", 2, tuple(table)),), kind="semilattice_of_groups")
    t = alg.ops[0].table
    n = total
    for a in range(n):
        for b in range(n):
            ab = t[a * n + b]
            for c in range(n):
                if t[ab * n + c] != t[a * n + t[b * n + c]]:
                    raise ConstructionError("semilattice product not associative")
    return alg


# ---------------------------------------------------------------------------
# JSON form: {"size": n, "ops": [{"name","arity","table"}], "kind": optional}
# tables are flat row-major lists


def algebra_to_dict(alg: FiniteAlgebra) -> dict:
    d = {
        "size": alg.size,
        "ops": [
            {"name": op.name, "arity": op.arity, "table": list(op.table)}
            for op in alg.ops
        ],
    }
    if alg.kind is not None:
        d["kind"] = alg.kind
    return d


def algebra_from_dict(d) -> FiniteAlgebra:
    if not isinstance(d, dict):
        raise ParseError("algebra payload must be an object")
    try:
        size = d["size"]
        ops_raw = d["ops"]
    except (KeyError, TypeError) as exc:
        raise ParseError("algebra needs 'size' and 'ops': %s" % exc)
    if not isinstance(size, int) or not isinstance(ops_raw, list):
        raise ParseError("'size' must be an int and 'ops' a list")
    ops = []
    for i, o in enumerate(ops_raw):
        if not isinstance(o, dict):
            raise ParseError("ops[%d] must be an object" % i)
        try:
            name, arity, table = o["name"], o["arity"], o["table"]
        except KeyError as exc:
            raise ParseError("ops[%d] missing field %s" % (i, exc))
        if not isinstance(name, str) or not isinstance(arity, int):
            raise ParseError("ops[%d]: bad name or arity" % i)
        if not isinstance(table, list):
            raise ParseError("ops[%d]: table must be a list" % i)
        ops.append(NamedOp(name, arity, tuple(table)))
    kind = d.get("kind")
    if kind is not None and not isinstance(kind, str):
        raise ParseError("'kind' must be a string")
    try:
        return FiniteAlgebra(size, tuple(ops), kind=kind)
    except (DimensionError, ConstructionError) as exc:
        raise ParseError("invalid algebra: %s" % exc)


def load_algebra(path: str) -> FiniteAlgebra:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ParseError("%s: bad JSON at line %d" % (path, exc.lineno))
    return algebra_from_dict(d)
