"""Finite semirings, matrix semirings over them, and the hull checks that
exploit additive structure.

Tables are tuples of tuples; `add` must be commutative and associative,
`mul` associative and distributive over `add` from both sides, `zero` an
additive identity that multiplicatively absorbs.
"""

import itertools
import random
from typing import Optional

from .config import RunConfig, default_config
from .errors import ConstructionError, ParseError, PreconditionError, SizeRefusalError, TheoremViolationError
from .hull import BiTranslation, enumerate_bitranslations
from .semigroups import FinSemigroup

EXHAUSTIVE_AXIOM_BOUND = 64
AXIOM_SAMPLES = 200_000
MATRIX_ORDER_BOUND = 512


class FiniteSemiring:
    __slots__ = ("order", "add", "mul", "zero", "one")

    def __init__(self, add, mul, zero, one=None, check=True):
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.order = len(self.add)
        self.zero = zero
        self.one = one
        if check:
            self._check()

    def _check(self):
        m = self.order
        assert len(self.mul) == m
        assert all(len(r) == m for r in self.add) and all(len(r) == m for r in self.mul)
        add, mul, z = self.add, self.mul, self.zero
        for a in range(m):
            for b in range(m):
                if add[a][b] != add[b][a]:
                    raise ConstructionError("addition is not commutative at (%d,%d)" % (a, b))
        if m <= EXHAUSTIVE_AXIOM_BOUND:
            triples = itertools.product(range(m), repeat=3)
        else:
            rng = random.Random(0)
            triples = (
                (rng.randrange(m), rng.randrange(m), rng.randrange(m))
                for _ in range(AXIOM_SAMPLES)
            )
        for a, b, c in triples:
            if add[add[a][b]][c] != add[a][add[b][c]]:
                raise ConstructionError("addition is not associative at (%d,%d,%d)" % (a, b, c))
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ConstructionError("multiplication is not associative at (%d,%d,%d)" % (a, b, c))
            if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                raise ConstructionError("left distributivity fails at (%d,%d,%d)" % (a, b, c))
            if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                raise ConstructionError("right distributivity fails at (%d,%d,%d)" % (a, b, c))
        for r in range(m):
            if add[z][r] != r or mul[z][r] != z or mul[r][z] != z:
                raise ConstructionError("zero axioms fail at %d" % r)
            if self.one is not None and (mul[self.one][r] != r or mul[r][self.one] != r):
                raise ConstructionError("one axioms fail at %d" % r)

    def mul_semigroup(self) -> FinSemigroup:
        return FinSemigroup([list(r) for r in self.mul])


def boolean_semiring() -> FiniteSemiring:
    # or / and on {0, 1}
    return FiniteSemiring([(0, 1), (1, 1)], [(0, 0), (0, 1)], zero=0, one=1)


def build_matrix_semiring(r: FiniteSemiring, n: int) -> FiniteSemiring:
    """n x n matrices over r, entries flattened row-major into base-|r| indices."""
    if r.one is None:
        raise PreconditionError("matrix semiring needs a multiplicative identity")
    m = r.order ** (n * n)
    if m > MATRIX_ORDER_BOUND:
        raise SizeRefusalError("matrix semiring would have order %d" % m)
    mats = list(itertools.product(range(r.order), repeat=n * n))
    idx = {a: i for i, a in enumerate(mats)}

    def addm(a, b):
        return tuple(r.add[x][y] for x, y in zip(a, b))

    def mulm(a, b):
        out = []
        for i in range(n):
            for k in range(n):
                s = r.zero
                for j in range(n):
                    s = r.add[s][r.mul[a[i * n + j]][b[j * n + k]]]
                out.append(s)
        return tuple(out)

    add = [[idx[addm(a, b)] for b in mats] for a in mats]
    mul = [[idx[mulm(a, b)] for b in mats] for a in mats]
    zero = idx[tuple([r.zero] * (n * n))]
    one = idx[tuple(r.one if i == k else r.zero for i in range(n) for k in range(n))]
    return FiniteSemiring(add, mul, zero, one)


def matrix_unit(r: FiniteSemiring, n: int, i: int, k: int) -> int:
    """The index of E_ik inside build_matrix_semiring(r, n)."""
    flat = tuple(r.one if (a, b) == (i, k) else r.zero for a in range(n) for b in range(n))
    return sum(flat[j] * r.order ** (n * n - 1 - j) for j in range(n * n))


def mul_ideal_closure(r: FiniteSemiring, gens) -> tuple:
    """Closure under two-sided multiplication by the whole semiring."""
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for a in range(r.order):
            for y in (r.mul[a][x], r.mul[x][a]):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return tuple(sorted(seen))


def semiring_ideal_closure(r: FiniteSemiring, gens) -> tuple:
    """Closure under addition and two-sided multiplication by the semiring."""
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        new = [r.mul[a][x] for a in range(r.order)]
        new += [r.mul[x][a] for a in range(r.order)]
        new += [r.add[x][y] for y in seen]
        for y in new:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return tuple(sorted(seen))


def one_decomposition(r: FiniteSemiring, ideal) -> Optional[list]:
    """Ideal elements summing to the identity, or None.

    Breadth-first over reachable partial sums, so the witness is as short as
    possible.
    """
    assert r.one is not None
    back = {}
    frontier = []
    for a in sorted(ideal):
        if a not in back:
            back[a] = (None, a)
            frontier.append(a)
    while frontier:
        nxt = []
        for s in frontier:
            if s == r.one:
                out = []
                while s is not None:
                    s, a = back[s]
                    out.append(a)
                return out[::-1]
            for a in sorted(ideal):
                t = r.add[s][a]
                if t not in back:
                    back[t] = (s, a)
                    nxt.append(t)
        frontier = nxt
    return None


def _is_mul_ideal(r, ideal):
    iset = set(ideal)
    return all(r.mul[a][x] in iset and r.mul[x][a] in iset for x in iset for a in range(r.order))


def _ideal_subsemigroup(r, ideal):
    ideal = sorted(ideal)
    pos = {x: i for i, x in enumerate(ideal)}
    return FinSemigroup([[pos[r.mul[a][b]] for b in ideal] for a in ideal]), ideal, pos


def _chi_pairs(r, ideal, pos):
    out = []
    for f in range(r.order):
        lam = tuple(pos[r.mul[f][x]] for x in ideal)
        rho = tuple(pos[r.mul[x][f]] for x in ideal)
        out.append(BiTranslation(lam, rho))
    return out


def check_prop_semiring(r: FiniteSemiring, ideal, config: Optional[RunConfig] = None) -> dict:
    """Hull of a multiplicative ideal that generates the whole semiring.

    Returns the decomposition of 1 found, the hull size, and whether the
    pair map from the semiring is a bijection onto the hull (it must be when
    the hypothesis holds).
    """
    if r.one is None:
        raise PreconditionError("needs a semiring with 1")
    if not _is_mul_ideal(r, ideal):
        raise PreconditionError("not a multiplicative ideal")
    decomp = one_decomposition(r, ideal)
    if decomp is None:
        return {"hypothesis": False, "decomposition": None}
    assert semiring_ideal_closure(r, ideal) == tuple(range(r.order))
    sub, ideal, pos = _ideal_subsemigroup(r, ideal)
    omega = enumerate_bitranslations(sub, config)
    chi = _chi_pairs(r, ideal, pos)
    bijective = len(set(chi)) == r.order and set(chi) == set(omega)
    if not bijective:
        raise TheoremViolationError(
            "hull of a generating ideal must biject with the semiring: |hull|=%d |R|=%d"
            % (len(omega), r.order)
        )
    return {
        "hypothesis": True,
        "decomposition": decomp,
        "omega_order": len(omega),
        "bijective": True,
    }


CHOICE_TUPLE_BOUND = 1_000_000


def check_prop_semiring_plus(r: FiniteSemiring, ideal, idems, config: Optional[RunConfig] = None) -> dict:
    """Hull via a family of idempotents covering the ideal.

    Conditions: (1) some subset of the idempotents acts as a right identity
    on every ideal element at once; (2) every choice tuple over the
    idempotents is realised by one element; (3) the idempotents are jointly
    faithful.  When all three hold the pair map must again be a bijection.
    """
    ideal = sorted(set(ideal))
    idems = list(idems)
    iset = set(ideal)
    if not set(idems) <= iset:
        raise PreconditionError("idempotents must lie in the ideal")
    for e in idems:
        if r.mul[e][e] != e:
            raise PreconditionError("%d is not idempotent" % e)
    if not _is_mul_ideal(r, ideal):
        raise PreconditionError("not a multiplicative ideal")

    cond1, subset_found = False, None
    for size in range(1, len(idems) + 1):
        for ks in itertools.combinations(range(len(idems)), size):
            s = idems[ks[0]]
            for k in ks[1:]:
                s = r.add[s][idems[k]]
            if all(r.mul[p][s] == p for p in ideal):
                cond1, subset_found = True, [idems[k] for k in ks]
                break
        if cond1:
            break

    total = len(ideal) ** len(idems)
    if total <= CHOICE_TUPLE_BOUND:
        tuples = itertools.product(ideal, repeat=len(idems))
    else:
        rng = random.Random(0)
        tuples = (
            tuple(ideal[rng.randrange(len(ideal))] for _ in idems) for _ in range(10_000)
        )
    cond2 = True
    for choice in tuples:
        if not any(
            all(r.mul[e][c] == r.mul[e][q] for e, c in zip(idems, choice))
            for q in range(r.order)
        ):
            cond2 = False
            break

    sigs = {tuple(r.mul[e][a] for e in idems) for a in range(r.order)}
    cond3 = len(sigs) == r.order

    out = {"cond1": cond1, "cond1_subset": subset_found, "cond2": cond2, "cond3": cond3}
    if not (cond1 and cond2 and cond3):
        out["hypothesis"] = False
        return out
    sub, ideal, pos = _ideal_subsemigroup(r, ideal)
    omega = enumerate_bitranslations(sub, config)
    chi = _chi_pairs(r, ideal, pos)
    if not (len(set(chi)) == r.order and set(chi) == set(omega)):
        raise TheoremViolationError("hull must biject with the semiring under (1)-(3)")
    out.update({"hypothesis": True, "omega_order": len(omega), "bijective": True})
    return out


# --- serialization ----------------------------------------------------------

def semiring_to_dict(r: FiniteSemiring) -> dict:
    out = {
        "order": r.order,
        "add": [list(row) for row in r.add],
        "mul": [list(row) for row in r.mul],
        "zero": r.zero,
    }
    if r.one is not None:
        out["one"] = r.one
    return out


def semiring_from_dict(d: dict) -> FiniteSemiring:
    try:
        order = d["order"]
        add, mul, zero = d["add"], d["mul"], d["zero"]
    except (KeyError, TypeError) as e:
        raise ParseError("semiring json needs order/add/mul/zero: %s" % e)
    if not isinstance(order, int) or len(add) != order or len(mul) != order:
        raise ParseError("table sizes disagree with the declared order")
    try:
        return FiniteSemiring(add, mul, zero, d.get("one"))
    except (ConstructionError, AssertionError, IndexError, TypeError) as e:
        raise ParseError("invalid semiring: %s" % e)
