"""Finite left braces and holomorphs of finite abelian groups.

A left brace is a set with an abelian group (B,+) and a group (B,.) sharing
one identity and satisfying a.(b+c)+a = a.b+a.c.  Braces with additive group
A correspond bijectively to regular subgroups of Hol(A) = A x| Aut(A); this
module implements both directions of that correspondence, the embedding
g -> (g, lambda_g) of the multiplicative group into the holomorph, the block
embedding of Hol((Z/p)^m) into GL_{m+1}(F_p), and order-equality reports.

Abelian groups are coordinate tuples over fixed cyclic orders.  Automorphisms
are integer matrices (row i reduced mod d_i) acting by matrix-vector product,
so no element enumeration is needed for large groups like (Z/p)^10.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd, prod

from .exactalg import Matrix, PrimeField, is_prime

ENUM_HOL_BOUND = 100_000
MATERIALIZE_BOUND = 1 << 20


class BoundExceededError(RuntimeError):
    """A configured search or materialization budget was exceeded."""


class BraceAxiomError(ValueError):
    """A pair of tables fails a brace axiom; .kind names it, .witness locates it."""

    def __init__(self, kind, witness=None):
        msg = kind if witness is None else f"{kind} at {witness}"
        super().__init__(msg)
        self.kind = kind
        self.witness = witness


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class AbelianGroup:
    """Direct product of cyclic groups Z/d_1 x ... x Z/d_m, elements as tuples."""

    def __init__(self, cyclic_orders):
        orders = tuple(int(d) for d in cyclic_orders)
        if not orders or any(d < 2 for d in orders):
            raise ValueError("cyclic orders must all be >= 2")
        self.orders = orders
        self.rank = len(orders)
        self.order = prod(orders)
        self._elements = None
        self._index = None

    def zero(self):
        return (0,) * self.rank

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a):
        return tuple(-x % d for x, d in zip(a, self.orders))

    def sub(self, a, b):
        return tuple((x - y) % d for x, y, d in zip(a, b, self.orders))

    def scale(self, k, a):
        return tuple(k * x % d for x, d in zip(a, self.orders))

    def element_order(self, a):
        n = 1
        for x, d in zip(a, self.orders):
            n = n * (d // gcd(d, x)) // gcd(n, d // gcd(d, x))
        return n

    def generator(self, j):
        return tuple(1 if i == j else 0 for i in range(self.rank))

    def elements(self):
        """Materialized element list in lexicographic order; guarded by size."""
        if self._elements is None:
            if self.order > MATERIALIZE_BOUND:
                raise BoundExceededError(
                    f"refusing to materialize {self.order} elements")
            self._elements = list(itertools.product(*[range(d) for d in self.orders]))
            self._index = {e: i for i, e in enumerate(self._elements)}
        return self._elements

    def index(self, a):
        self.elements()
        return self._index[a]

    def prime(self):
        """p when the group is a p-group, else None."""
        factors = _factorize(self.order)
        if len(factors) == 1:
            return next(iter(factors))
        return None

    def is_elementary_abelian(self):
        p = self.orders[0]
        return is_prime(p) and all(d == p for d in self.orders)

    def primary_exponents(self):
        """{p: ascending exponent list} describing the primary decomposition."""
        out = {}
        for d in self.orders:
            for p, e in _factorize(d).items():
                out.setdefault(p, []).append(e)
        return {p: tuple(sorted(es)) for p, es in out.items()}

    def in_p_multiples(self, a, p):
        """Membership of a in pA (coordinates of a p-group)."""
        return all(x % gcd(p, d) == 0 for x, d in zip(a, self.orders))

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return "Z/" + " x Z/".join(str(d) for d in self.orders)


class Automorphism:
    """Additive automorphism as an integer matrix; rows[i][j] sends coord j to coord i."""

    __slots__ = ("group", "rows")

    def __init__(self, group, rows, validate=True):
        self.group = group
        self.rows = tuple(tuple(x % d for x in row) for row, d in zip(rows, group.orders))
        if validate:
            self._validate()

    def _validate(self):
        orders = self.group.orders
        m = self.group.rank
        if len(self.rows) != m or any(len(r) != m for r in self.rows):
            raise ValueError("matrix shape does not match the group rank")
        for i, di in enumerate(orders):
            for j, dj in enumerate(orders):
                step = di // gcd(di, dj)
                if self.rows[i][j] % step:
                    raise ValueError(f"entry ({i},{j}) does not define a homomorphism")
        if not _is_bijective_endo(self.group, self.rows):
            raise ValueError("matrix is not invertible on the group")

    @classmethod
    def identity(cls, group):
        m = group.rank
        return cls(group, [[1 if i == j else 0 for j in range(m)] for i in range(m)],
                   validate=False)

    @classmethod
    def from_images(cls, group, images):
        """Build from the images of the standard generators (columns)."""
        m = group.rank
        rows = [[images[j][i] for j in range(m)] for i in range(m)]
        return cls(group, rows)

    def apply(self, v):
        orders = self.group.orders
        return tuple(sum(r[j] * v[j] for j in range(len(v))) % d
                     for r, d in zip(self.rows, orders))

    def compose(self, other):
        """self after other, as matrices: self @ other."""
        m = self.group.rank
        orders = self.group.orders
        rows = [[sum(self.rows[i][k] * other.rows[k][j] for k in range(m)) % orders[i]
                 for j in range(m)] for i in range(m)]
        return Automorphism(self.group, rows, validate=False)

    def __mul__(self, other):
        return self.compose(other)

    def is_identity(self):
        m = self.group.rank
        return all(self.rows[i][j] == (1 if i == j else 0)
                   for i in range(m) for j in range(m))

    def inverse(self):
        A = self.group
        if A.is_elementary_abelian():
            p = A.orders[0]
            inv = Matrix(PrimeField(p), [list(r) for r in self.rows]).inverse()
            return Automorphism(A, [list(r) for r in inv.entries], validate=False)
        # small groups: invert the permutation and read off generator preimages
        elems = A.elements()
        preimage = {self.apply(e): e for e in elems}
        images = [preimage[A.generator(j)] for j in range(A.rank)]
        return Automorphism.from_images(A, images)

    def order(self):
        acc = self
        n = 1
        while not acc.is_identity():
            acc = acc.compose(self)
            n += 1
            if n > self.group.order ** self.group.rank:
                raise RuntimeError("automorphism order runaway")
        return n

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and self.group == other.group
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.group.orders, self.rows))

    def __repr__(self):
        return f"Automorphism({self.rows})"


def _exponent_classes(group, p):
    """Indices of coordinates grouped by p-exponent of their cyclic order."""
    classes = {}
    for i, d in enumerate(group.orders):
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            classes.setdefault(e, []).append(i)
    return classes


def _is_bijective_endo(group, rows):
    """Hillar-Rhea criterion: every diagonal exponent-class block is invertible mod p."""
    for p in _factorize(group.order):
        for _, idxs in _exponent_classes(group, p).items():
            block = [[rows[i][j] % p for j in idxs] for i in idxs]
            if Matrix(PrimeField(p), block).rank() != len(idxs):
                return False
    return True


def automorphism_count(group):
    """|Aut(A)| in closed form (product over primary components)."""
    total = 1
    for p, exps in group.primary_exponents().items():
        t = sum(min(a, b) for a in exps for b in exps)
        count = p ** t
        mult = {}
        for e in exps:
            mult[e] = mult.get(e, 0) + 1
        for m in mult.values():
            gl = prod(p ** m - p ** k for k in range(m))
            count = count * gl // p ** (m * m)
        total *= count
    return total


def automorphisms(group, budget=2_000_000):
    """Every automorphism, by brute force over generator images.

    Candidate images of generator j are the elements killed by d_j; candidates
    are filtered by the exact invertibility criterion.  Raises
    BoundExceededError when the candidate product exceeds the budget.
    """
    orders = group.orders
    m = group.rank
    column_choices = []
    total = 1
    for j, dj in enumerate(orders):
        per_coord = []
        for i, di in enumerate(orders):
            step = di // gcd(di, dj)
            per_coord.append(list(range(0, di, step)))
        cols = list(itertools.product(*per_coord))
        column_choices.append(cols)
        total *= len(cols)
        if total > budget:
            raise BoundExceededError(
                f"automorphism search space {total}+ exceeds budget {budget}")
    out = []
    for cols in itertools.product(*column_choices):
        rows = tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
        if _is_bijective_endo(group, rows):
            out.append(Automorphism(group, rows, validate=False))
    return out


def sylow_p_automorphisms(group):
    """The full Sylow p-subgroup of Aut(A) for a p-group A.

    Realized as the preimage of the upper-unitriangular subgroups under the
    reduction onto the diagonal exponent-class blocks mod p; every p-power
    order automorphism is conjugate into this subgroup.
    """
    p = group.prime()
    if p is None:
        raise ValueError("Sylow construction needs a p-group")
    orders = group.orders
    m = group.rank
    classes = _exponent_classes(group, p)
    position = {}
    for e, idxs in classes.items():
        for pos, i in enumerate(idxs):
            position[i] = (e, pos)
    choices = []
    for i in range(m):
        di = orders[i]
        ei, pi = position[i]
        for j in range(m):
            dj = orders[j]
            ej, pj = position[j]
            if ei == ej:
                if pi == pj:
                    vals = list(range(1, di, p))  # 1 mod p on the diagonal
                elif pi < pj:
                    vals = list(range(di))  # free above the in-class diagonal
                else:
                    vals = list(range(0, di, p))  # 0 mod p below
            else:
                step = di // gcd(di, dj)
                vals = list(range(0, di, step))
            choices.append(vals)
    out = []
    for flat in itertools.product(*choices):
        rows = tuple(tuple(flat[i * m + j] for j in range(m)) for i in range(m))
        out.append(Automorphism(group, rows, validate=False))
    return out


class HolElement:
    """An element (v, M) of Hol(A), acting on A by w -> v + M(w)."""

    __slots__ = ("group", "v", "m")

    def __init__(self, group, v, m):
        self.group = group
        self.v = tuple(x % d for x, d in zip(v, group.orders))
        self.m = m

    @classmethod
    def identity(cls, group):
        return cls(group, group.zero(), Automorphism.identity(group))

    def __mul__(self, other):
        return HolElement(self.group, self.group.add(self.v, self.m.apply(other.v)),
                          self.m.compose(other.m))

    def inverse(self):
        minv = self.m.inverse()
        return HolElement(self.group, minv.apply(self.group.neg(self.v)), minv)

    def act(self, w):
        return self.group.add(self.v, self.m.apply(w))

    def key(self):
        return (self.v, self.m.rows)

    def __eq__(self, other):
        return isinstance(other, HolElement) and self.v == other.v and self.m == other.m

    def __hash__(self):
        return hash((self.v, self.m.rows))

    def __repr__(self):
        return f"({self.v}, {self.m.rows})"


def holomorph(group, bound=64):
    """Full element list of Hol(A) = A x| Aut(A), sorted canonically."""
    if group.order > bound:
        raise BoundExceededError(f"|A| = {group.order} exceeds bound {bound}")
    total = group.order * automorphism_count(group)
    if total > MATERIALIZE_BOUND:
        raise BoundExceededError(f"|Hol(A)| = {total} is too large to materialize")
    auts = automorphisms(group)
    out = [HolElement(group, v, m) for v in group.elements() for m in auts]
    out.sort(key=HolElement.key)
    return out


def is_regular(group, elements):
    """True iff the subgroup acts simply transitively (unique killer per point).

    The input must be closed under composition; a non-closed input is an error.
    """
    elems = set(elements)
    for a in elements:
        for b in elements:
            if a * b not in elems:
                raise ValueError("input is not closed under composition")
    if len(elems) != group.order:
        return False
    first = {h.v for h in elems}
    return len(first) == group.order


@dataclass(frozen=True)
class RegularSubgroup:
    """A regular subgroup of Hol(A), stored as a canonically sorted tuple."""

    group: AbelianGroup
    elements: tuple

    @classmethod
    def from_elements(cls, group, elements):
        elems = tuple(sorted(set(elements), key=HolElement.key))
        sub = cls(group, elems)
        if not is_regular(group, elems):
            raise ValueError("subgroup is not regular")
        return sub

    def key(self):
        return tuple(h.key() for h in self.elements)

    def translation_map(self):
        """v -> element of the subgroup with first coordinate v."""
        return {h.v: h for h in self.elements}

    def __len__(self):
        return len(self.elements)


# -- braces ---------------------------------------------------------------


class Brace:
    """A finite left brace as a pair of Cayley tables on indices 0..n-1."""

    __slots__ = ("n", "add", "mul", "identity", "group", "_neg", "_inv")

    def __init__(self, n, add, mul, identity, group=None):
        self.n = n
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.identity = identity
        self.group = group  # coordinate realization of (B,+) when known
        self._neg = None
        self._inv = None

    def add_op(self, a, b):
        return self.add[a][b]

    def mul_op(self, a, b):
        return self.mul[a][b]

    def neg(self, a):
        if self._neg is None:
            e = self.identity
            self._neg = tuple(self.add[x].index(e) for x in range(self.n))
        return self._neg[a]

    def inv(self, a):
        if self._inv is None:
            e = self.identity
            self._inv = tuple(self.mul[x].index(e) for x in range(self.n))
        return self._inv[a]

    def additive_order(self, x):
        acc, n = x, 1
        while acc != self.identity:
            acc = self.add[acc][x]
            n += 1
        return n

    def multiplicative_order(self, x):
        acc, n = x, 1
        while acc != self.identity:
            acc = self.mul[acc][x]
            n += 1
        return n

    def lambda_perm(self, g):
        """lambda_g(h) = g.h - g as an index permutation; always an additive automorphism."""
        ng = self.neg(g)
        return tuple(self.add[self.mul[g][h]][ng] for h in range(self.n))

    def is_multiplicative_abelian(self):
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in range(self.n) for b in range(a + 1, self.n))

    def __eq__(self, other):
        return (isinstance(other, Brace) and self.add == other.add and self.mul == other.mul
                and self.identity == other.identity)

    def __repr__(self):
        return f"Brace(order={self.n})"


def _group_table_violation(table, n):
    """None when table is a group table; otherwise (reason, witness)."""
    for a in range(n):
        row = table[a]
        if len(row) != n or any(not 0 <= x < n for x in row):
            return ("malformed row", (a,))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    return ("not associative", (a, b, c))
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        return ("no identity", None)
    for a in range(n):
        if identity not in table[a]:
            return ("no inverse", (a,))
    return None


def validate_brace(add, mul):
    """Check all brace axioms on a pair of n x n tables; return the Brace.

    Raises BraceAxiomError naming the failed axiom with a witness triple.
    """
    n = len(add)
    if len(mul) != n:
        raise BraceAxiomError("table size mismatch")
    bad = _group_table_violation(add, n)
    if bad is not None:
        raise BraceAxiomError(f"additive table: {bad[0]}", bad[1])
    for a in range(n):
        for b in range(a + 1, n):
            if add[a][b] != add[b][a]:
                raise BraceAxiomError("additive table: not abelian", (a, b))
    bad = _group_table_violation(mul, n)
    if bad is not None:
        raise BraceAxiomError(f"multiplicative table: {bad[0]}", bad[1])
    add_id = next(e for e in range(n) if all(add[e][x] == x for x in range(n)))
    mul_id = next(e for e in range(n) if
                  all(mul[e][x] == x and mul[x][e] == x for x in range(n)))
    if add_id != mul_id:
        raise BraceAxiomError("identity mismatch", (add_id, mul_id))
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                # a.(b+c) + a = a.b + a.c
                if add[mul[a][add[b][c]]][a] != add[ab][mul[a][c]]:
                    raise BraceAxiomError("compatibility failure", (a, b, c))
    return Brace(n, add, mul, add_id)


def trivial_brace(n):
    """The trivial brace on Z/n: both operations are addition mod n."""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return Brace(n, table, table, 0)


def lambda_map(brace, g):
    """The permutation h -> g.h - g; verified additive automorphism."""
    perm = brace.lambda_perm(g)
    for a in range(brace.n):
        for b in range(brace.n):
            if perm[brace.add[a][b]] != brace.add[perm[a]][perm[b]]:
                raise BraceAxiomError("lambda map is not additive", (g, a, b))
    return perm


# -- coordinates for a brace's additive group ------------------------------


def abelian_type_from_orders(order_multiset):
    """Primary decomposition {p: ascending exponents} from an order statistic.

    order_multiset maps k -> number of elements of order k in an abelian group.
    """
    total = sum(order_multiset.values())
    out = {}
    for p in _factorize(total):
        # c_i = #elements of p-power order dividing p^i (the i-th layer of the
        # p-primary component)
        counts = [1]
        i = 1
        while True:
            c = sum(cnt for k, cnt in order_multiset.items() if p ** i % k == 0)
            counts.append(c)
            if c == counts[-2]:
                counts.pop()
                break
            i += 1
        logs = []
        for c in counts:
            e = 0
            while p ** e < c:
                e += 1
            if p ** e != c:
                raise ValueError("order statistic is not that of an abelian group")
            logs.append(e)
        diffs = [logs[i + 1] - logs[i] for i in range(len(logs) - 1)]
        # diffs[i] = #{j : alpha_j >= i+1}; conjugate back to the exponents
        exponents = []
        for i, d in enumerate(diffs):
            nxt = diffs[i + 1] if i + 1 < len(diffs) else 0
            exponents.extend([i + 1] * (d - nxt))
        if exponents:
            out[p] = tuple(sorted(exponents))
    return out


def brace_order_statistic(brace, table):
    stats = {}
    for x in range(brace.n):
        acc, n = x, 1
        while acc != brace.identity:
            acc = table[acc][x]
            n += 1
        stats[n] = stats.get(n, 0) + 1
    return stats


def additive_decomposition(brace):
    """(AbelianGroup, coord) for (B,+): coord maps carrier index -> tuple.

    The cyclic orders are the primary decomposition, primes ascending and
    exponents ascending within each prime; a generating basis realizing the
    type is found by backtracking search.
    """
    stats = brace_order_statistic(brace, brace.add)
    ptype = abelian_type_from_orders(stats)
    orders = []
    for p in sorted(ptype):
        orders.extend(p ** e for e in ptype[p])
    group = AbelianGroup(orders)

    by_order = {}
    for x in range(brace.n):
        by_order.setdefault(brace.additive_order(x), []).append(x)

    def extend(span, chosen, slot):
        if slot == len(orders):
            return chosen
        d = orders[slot]
        for g in by_order.get(d, []):
            new = dict(span)
            ok = True
            for s, coords in span.items():
                acc = s
                for t in range(1, d):
                    acc = brace.add[acc][g]
                    if acc in new:
                        ok = False
                        break
                    new[acc] = coords[:slot] + (t,) + coords[slot + 1:]
                if not ok:
                    break
            if ok and len(new) == len(span) * d:
                result = extend(new, chosen + [g], slot + 1)
                if result is not None:
                    return result
        return None

    zero_coords = (0,) * len(orders)
    span0 = {brace.identity: zero_coords}
    basis = extend(span0, [], 0)
    if basis is None:
        raise ValueError("no generating basis found; additive table is not abelian?")
    # rebuild the full coordinate map from the found basis
    coord = {}
    for tup in itertools.product(*[range(d) for d in orders]):
        x = brace.identity
        for g, t, d in zip(basis, tup, orders):
            acc = g
            if t == 0:
                continue
            for _ in range(t - 1):
                acc = brace.add[acc][g]
            x = brace.add[x][acc]
        coord[x] = tup
    index_of = {tup: x for x, tup in coord.items()}
    return group, coord, index_of


# -- the brace <-> regular subgroup correspondence --------------------------


def regular_from_brace(brace):
    """{(a, lambda_a) : a in B} as a verified regular subgroup of Hol(B,+)."""
    if brace.group is not None:
        group = brace.group
        coord = {x: group.elements()[x] for x in range(brace.n)}
        index_of = {v: x for x, v in coord.items()}
    else:
        group, coord, index_of = additive_decomposition(brace)
    elements = []
    for g in range(brace.n):
        perm = brace.lambda_perm(g)
        images = [coord[perm[index_of[group.generator(j)]]] for j in range(group.rank)]
        m = Automorphism.from_images(group, images)
        elements.append(HolElement(group, coord[g], m))
    return RegularSubgroup.from_elements(group, elements)


def brace_from_regular(sub):
    """Brace on A with a.b := a + pi2((pi1|H)^{-1}(a))(b); carrier = A's element order.

    pi1(H) = A is verified; the brace axioms then hold by the correspondence
    (validate_brace remains available as an independent check on the tables).
    """
    group = sub.group
    elems = group.elements()
    phi = sub.translation_map()
    if set(phi) != set(elems):
        raise ValueError("subgroup is not regular: first coordinates do not cover A")
    n = group.order
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[group.add(a, b)] for b in elems] for a in elems]
    mul = [[index[group.add(a, phi[a].m.apply(b))] for b in elems] for a in elems]
    return Brace(n, add, mul, index[group.zero()], group=group)


@dataclass(frozen=True)
class GammaEmbedding:
    """The verified monomorphism g -> (g, lambda_g) from (B,.) into Hol(B,+)."""

    brace: Brace
    group: AbelianGroup
    images: tuple  # HolElement per carrier index

    def as_regular_subgroup(self):
        return RegularSubgroup.from_elements(self.group, self.images)


def gamma_embed(brace):
    """Build gamma and verify injectivity and multiplicativity on all pairs."""
    sub = regular_from_brace(brace)
    if brace.group is not None:
        group = brace.group
        coord = {x: group.elements()[x] for x in range(brace.n)}
    else:
        group, coord, _ = additive_decomposition(brace)
    by_v = {h.v: h for h in sub.elements}
    images = tuple(by_v[coord[g]] for g in range(brace.n))
    if len(set(images)) != brace.n:
        raise BraceAxiomError("gamma is not injective")
    for g in range(brace.n):
        for h in range(brace.n):
            if images[g] * images[h] != images[brace.mul[g][h]]:
                raise BraceAxiomError("gamma is not multiplicative", (g, h))
    return GammaEmbedding(brace, group, images)


# -- enumeration of regular subgroups ---------------------------------------


class HolTables:
    """Integer composition tables for Hol(A); elements are (v_idx, aut_idx) pairs."""

    def __init__(self, group, auts=None, bound=ENUM_HOL_BOUND):
        hol_order = group.order * automorphism_count(group)
        if hol_order > bound:
            raise BoundExceededError(
                f"|Hol(A)| = {hol_order} exceeds the table bound {bound}")
        self.group = group
        self.auts = automorphisms(group) if auts is None else auts
        auts = self.auts
        elems = group.elements()
        self.n = len(elems)
        self.naut = len(auts)
        index = {e: i for i, e in enumerate(elems)}
        self.add_idx = [[index[group.add(a, b)] for b in elems] for a in elems]
        self.act = [[index[m.apply(e)] for e in elems] for m in auts]
        aut_index = {m.rows: i for i, m in enumerate(auts)}
        self.comp = [[aut_index[(a.compose(b)).rows] for b in auts] for a in auts]
        self.inv_aut = [aut_index[a.inverse().rows] for a in auts]
        self.id_aut = aut_index[Automorphism.identity(group).rows]

    def mul(self, h1, h2):
        v1, a1 = h1
        v2, a2 = h2
        return (self.add_idx[v1][self.act[a1][v2]], self.comp[a1][a2])


def enumerate_regular_subgroups(group, hol_bound=ENUM_HOL_BOUND, tables=None):
    """All regular subgroups of Hol(A), by DFS over partial subgroups.

    A regular subgroup meets {0} x Aut(A) trivially, so its elements are
    determined by their first coordinates; the search keeps a partial
    subgroup functional in the first coordinate, branches over the
    automorphism paired with the least uncovered element, and prunes on
    conflicts during closure.  Output is canonically sorted.
    """
    hol_order = group.order * automorphism_count(group)
    if hol_order > hol_bound:
        raise BoundExceededError(
            f"|Hol(A)| = {hol_order} exceeds the enumeration bound {hol_bound}")
    if tables is None:
        tables = HolTables(group)
    auts = tables.auts
    n = tables.n
    hol_mul = tables.mul

    def close(partial, new_v, new_a):
        d = dict(partial)
        stack = [(new_v, new_a)]
        while stack:
            h = stack.pop()
            v, a = h
            cur = d.get(v)
            if cur is not None:
                if cur != a:
                    return None
                continue
            d[v] = a
            for other in list(d.items()):
                for w, b in (hol_mul(h, other), hol_mul(other, h)):
                    if d.get(w, b) != b:
                        return None
                    if w not in d:
                        stack.append((w, b))
        return d

    results = set()
    seen = set()
    zero_idx = group.index(group.zero())
    stack = [{zero_idx: tables.id_aut}]
    while stack:
        partial = stack.pop()
        if len(partial) == n:
            results.add(tuple(sorted(partial.items())))
            continue
        state_key = tuple(sorted(partial.items()))
        if state_key in seen:
            continue
        seen.add(state_key)
        a = next(v for v in range(n) if v not in partial)
        for m in range(tables.naut):
            closed = close(partial, a, m)
            if closed is not None:
                stack.append(closed)

    elems = group.elements()
    out = []
    for key in sorted(results):
        members = tuple(sorted((HolElement(group, elems[v], auts[a]) for v, a in key),
                               key=HolElement.key))
        out.append(RegularSubgroup(group, members))
    out.sort(key=RegularSubgroup.key)
    return out


def classify_up_to_aut(group, subgroups, tables=None):
    """Orbits of regular subgroups under conjugation by (0, psi), psi in Aut(A).

    Returns a list of orbits; each orbit is a list of subgroups and carries the
    lexicographically least member first.  Orbits are sorted by that key.
    """
    if tables is None:
        tables = HolTables(group)
    elems = group.elements()
    index = {e: i for i, e in enumerate(elems)}
    aut_index = {m.rows: i for i, m in enumerate(tables.auts)}

    def as_idx(sub):
        return tuple(sorted((index[h.v], aut_index[h.m.rows]) for h in sub.elements))

    idx_subs = {as_idx(s): s for s in subgroups}
    remaining = set(idx_subs)
    orbits = []
    for key in sorted(idx_subs):
        if key not in remaining:
            continue
        orbit_keys = set()
        for psi in range(tables.naut):
            inv = tables.inv_aut[psi]
            conj = tuple(sorted(
                (tables.act[psi][v], tables.comp[tables.comp[psi][a]][inv])
                for v, a in key))
            orbit_keys.add(conj)
        members = sorted(orbit_keys)
        found = [idx_subs[k] for k in members if k in idx_subs]
        missing = [k for k in members if k not in idx_subs]
        if missing:
            raise ValueError("conjugate of a regular subgroup is missing from the input")
        orbits.append(found)
        remaining -= orbit_keys
    orbits.sort(key=lambda orb: as_idx(orb[0]))
    return orbits


# -- the block embedding into GL_{m+1}(F_p) ---------------------------------


def hol_to_gl(h):
    """(v, M) -> [[M, v], [0, 1]] over F_p for elementary abelian groups."""
    group = h.group
    if not group.is_elementary_abelian():
        raise ValueError("the block embedding needs an elementary abelian group")
    p = group.orders[0]
    m = group.rank
    fp = PrimeField(p)
    rows = [list(h.m.rows[i]) + [h.v[i]] for i in range(m)]
    rows.append([0] * m + [1])
    return Matrix(fp, rows)


# -- order equality -----------------------------------------------------------


@dataclass(frozen=True)
class OrderEqualityReport:
    p: int
    exponent: int          # |B| = p^exponent
    rank: int              # number of cyclic factors of (B,+)
    hypothesis_holds: bool  # rank + 2 <= p
    orders: tuple          # per element: (additive order, multiplicative order)
    all_equal: bool
    multiplicative_abelian: bool
    additive_type: tuple   # ascending exponent list of (B,+)
    multiplicative_type: tuple | None
    types_match: bool | None


def check_order_equality(brace):
    """Per-element additive vs multiplicative orders, with the rank+2 <= p note.

    When (B,.) is abelian, the primary types of both structures are compared;
    matching types mean (B,.) and (B,+) are isomorphic groups.
    """
    factors = _factorize(brace.n)
    if len(factors) != 1:
        raise ValueError(f"order {brace.n} is not a prime power")
    p, exponent = next(iter(factors.items()))
    add_type = abelian_type_from_orders(brace_order_statistic(brace, brace.add))[p]
    rank = len(add_type)
    orders = tuple((brace.additive_order(x), brace.multiplicative_order(x))
                   for x in range(brace.n))
    mult_abelian = brace.is_multiplicative_abelian()
    mult_type = None
    types_match = None
    if mult_abelian:
        mult_type = abelian_type_from_orders(
            brace_order_statistic(brace, brace.mul)).get(p, ())
        types_match = mult_type == add_type
    return OrderEqualityReport(
        p=p,
        exponent=exponent,
        rank=rank,
        hypothesis_holds=rank + 2 <= p,
        orders=orders,
        all_equal=all(a == b for a, b in orders),
        multiplicative_abelian=mult_abelian,
        additive_type=add_type,
        multiplicative_type=mult_type,
        types_match=types_match,
    )


# -- file formats -------------------------------------------------------------


def brace_to_json(brace):
    return {"order": brace.n, "add": [list(r) for r in brace.add],
            "mul": [list(r) for r in brace.mul]}


def brace_from_json(doc):
    return validate_brace(doc["add"], doc["mul"])


def load_brace(path):
    with open(path, "r", encoding="utf-8") as fh:
        return brace_from_json(json.load(fh))


def dump_brace(brace, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(brace_to_json(brace), fh, sort_keys=True)
        fh.write("\n")


def subgroup_to_json(sub):
    return [[list(h.v), [list(r) for r in h.m.rows]] for h in sub.elements]


def enumeration_report(group, subgroups, orbits):
    """JSON-ready report rows, one per regular subgroup."""
    orbit_of = {}
    for k, orbit in enumerate(orbits):
        for s in orbit:
            orbit_of[s.key()] = k
    rows = []
    for sub in subgroups:
        brace = brace_from_regular(sub)
        try:
            eq = check_order_equality(brace)
            order_eq = eq.all_equal
        except ValueError:
            order_eq = None
        rows.append({
            "subgroup": subgroup_to_json(sub),
            "orbit_id": orbit_of[sub.key()],
            "additive_type": list(group.orders),
            "multiplicative_abelian": brace.is_multiplicative_abelian(),
            "order_equality": order_eq,
        })
    return rows
