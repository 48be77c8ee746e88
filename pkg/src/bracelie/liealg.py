"""Structure-constant Lie algebras over Z and F_p.

A LieAlgebra stores brackets [e_i, e_j] only for i < j; antisymmetry is
synthesized and every unlisted pair is zero.  The module also builds the
13-parameter Burde family of 10-dimensional nilpotent algebras and the fixed
member used throughout this project (two generators e_0, e_1, rules
e_{i+1} = [e_0, e_i]).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .exactalg import Matrix, PrimeField, QQ, ZZ, is_prime, ring_from_json, ring_to_json


class LambdaConstraintError(ValueError):
    """A Burde-family parameter constraint is violated; .constraint names it."""

    def __init__(self, constraint):
        super().__init__(f"violated constraint: {constraint}")
        self.constraint = constraint


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants."""

    def __init__(self, ring, dim, brackets):
        """brackets: {(i, j): {k: coeff}} with 0 <= i < j < dim."""
        self.ring = ring
        self.dim = dim
        table = {}
        for (i, j), out in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            row = {k: ring.coerce(c) for k, c in out.items() if ring.coerce(c) != ring.zero}
            for k in row:
                if not 0 <= k < dim:
                    raise ValueError(f"output index {k} out of range")
            if row:
                table[(i, j)] = row
        self.brackets = table
        self._class_cache = None

    # -- vector helpers -------------------------------------------------

    def zero_vector(self):
        return (self.ring.zero,) * self.dim

    def basis_vector(self, i):
        v = [self.ring.zero] * self.dim
        v[i] = self.ring.one
        return tuple(v)

    def coerce_vector(self, v):
        if len(v) != self.dim:
            raise ValueError(f"vector length {len(v)} != dim {self.dim}")
        return tuple(self.ring.coerce(x) for x in v)

    def bracket(self, x, y):
        """Bilinear antisymmetric extension of the structure-constant table."""
        x = self.coerce_vector(x)
        y = self.coerce_vector(y)
        ring = self.ring
        out = [ring.zero] * self.dim
        for i in range(self.dim):
            xi = x[i]
            if xi == ring.zero:
                continue
            for j in range(self.dim):
                yj = y[j]
                if yj == ring.zero or i == j:
                    continue
                if i < j:
                    row, sign = self.brackets.get((i, j)), False
                else:
                    row, sign = self.brackets.get((j, i)), True
                if not row:
                    continue
                c = ring.mul(xi, yj)
                for k, coeff in row.items():
                    term = ring.mul(c, coeff)
                    out[k] = ring.sub(out[k], term) if sign else ring.add(out[k], term)
        return tuple(out)

    def validate(self):
        """Jacobi audit over all basis triples; returns the list of failures.

        Each failure is (i, j, k, residual vector); an empty list means the
        table defines a Lie algebra.
        """
        failures = []
        ring = self.ring
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(i + 1, self.dim):
                ej = self.basis_vector(j)
                bij = self.bracket(ei, ej)
                for k in range(j + 1, self.dim):
                    ek = self.basis_vector(k)
                    s = self.bracket(bij, ek)
                    t = self.bracket(self.bracket(ej, ek), ei)
                    u = self.bracket(self.bracket(ek, ei), ej)
                    total = tuple(ring.add(ring.add(a, b), c) for a, b, c in zip(s, t, u))
                    if any(v != ring.zero for v in total):
                        failures.append((i, j, k, total))
        return failures

    def adjoint_matrix(self, x):
        """Matrix of ad(x): column j holds [x, e_j]."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(self.ring, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def _field_view(self):
        """(ring, algebra) pair usable for linear algebra; Z lifts to Q."""
        if self.ring.is_field:
            return self
        lifted = LieAlgebra(QQ, self.dim, {ij: dict(row) for ij, row in self.brackets.items()})
        return lifted

    def lower_central_series(self):
        """Dimensions of L >= [L,L] >= [L,[L,L]] >= ...; stops at 0 or stabilization."""
        L = self._field_view()
        ring = L.ring
        dims = [L.dim]
        current = [L.basis_vector(i) for i in range(L.dim)]
        while True:
            products = []
            for i in range(L.dim):
                ei = L.basis_vector(i)
                for v in current:
                    w = L.bracket(ei, v)
                    if any(c != ring.zero for c in w):
                        products.append(w)
            if not products:
                dims.append(0)
                return dims
            reduced, pivots = Matrix(ring, products).rref()
            basis = [reduced.entries[r] for r in range(len(pivots))]
            dims.append(len(basis))
            if dims[-1] == dims[-2]:
                return dims
            current = basis

    def nilpotency_class(self):
        """Length of the lower central series; math.inf when it stabilizes above 0."""
        if self._class_cache is None:
            dims = self.lower_central_series()
            self._class_cache = len(dims) - 1 if dims[-1] == 0 else math.inf
        return self._class_cache

    def center(self):
        """Basis of {x : [x, e_j] = 0 for all j}, by exact kernel computation."""
        if not self.ring.is_field:
            raise TypeError("center needs a field; reduce mod p or lift to Q first")
        rows = []
        for j in range(self.dim):
            ad_ej = self.adjoint_matrix(self.basis_vector(j))
            rows.extend(ad_ej.entries)
        return Matrix(self.ring, rows).kernel_basis()

    def reduce_mod(self, p):
        """Coefficient-wise reduction L -> L/pL over F_p."""
        if self.ring != ZZ:
            raise TypeError("reduce_mod applies to algebras over Z")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        fp = PrimeField(p)
        return LieAlgebra(fp, self.dim, {ij: dict(row) for ij, row in self.brackets.items()})

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.ring == other.ring
                and self.dim == other.dim and self.brackets == other.brackets)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, ring={self.ring}, {len(self.brackets)} brackets)"


@dataclass(frozen=True)
class LambdaParams:
    """The 13 parameters of the Burde family, validated in cleared-denominator form.

    Constraints: l1 != 0, l7 = -l1, l11 = 3*l1, 3*l2 + l8 != 0, and
    l1*l12 = -l1*(9*l2 + 16*l8) + l13*(2*l3 + l9).
    """

    values: tuple

    def __post_init__(self):
        if len(self.values) != 13:
            raise ValueError("exactly 13 parameters expected")

    def check(self, ring):
        v = [None] + [ring.coerce(x) for x in self.values]  # 1-indexed
        if v[1] == ring.zero:
            raise LambdaConstraintError("l1 != 0")
        if v[7] != ring.neg(v[1]):
            raise LambdaConstraintError("l7 = -l1")
        if v[11] != ring.mul(ring.coerce(3), v[1]):
            raise LambdaConstraintError("l11 = 3*l1")
        if ring.add(ring.mul(ring.coerce(3), v[2]), v[8]) == ring.zero:
            raise LambdaConstraintError("3*l2 + l8 != 0")
        lhs = ring.mul(v[1], v[12])
        nine_two = ring.add(ring.mul(ring.coerce(9), v[2]), ring.mul(ring.coerce(16), v[8]))
        two_three = ring.add(ring.mul(ring.coerce(2), v[3]), v[9])
        rhs = ring.add(ring.neg(ring.mul(v[1], nine_two)), ring.mul(v[13], two_three))
        if lhs != rhs:
            raise LambdaConstraintError("l1*l12 = -l1*(9*l2+16*l8) + l13*(2*l3+l9)")
        return v


def burde_family(lam, ring):
    """The 10-dimensional algebra with the 17-relation parametrized bracket table.

    lam is a LambdaParams or a 13-sequence; all constraints are enforced and a
    violation raises LambdaConstraintError naming the constraint.
    """
    if not isinstance(lam, LambdaParams):
        lam = LambdaParams(tuple(lam))
    l = lam.check(ring)
    sub = ring.sub
    mul = ring.mul
    add = ring.add
    two = ring.coerce(2)
    three = ring.coerce(3)
    four = ring.coerce(4)
    brackets = {}
    for i in range(1, 9):
        brackets[(0, i)] = {i + 1: ring.one}
    brackets[(1, 2)] = {4: l[1], 5: l[2], 6: l[3], 7: l[4], 8: l[5], 9: l[6]}
    brackets[(1, 3)] = {5: l[1], 6: l[2], 7: l[3], 8: l[4], 9: l[5]}
    brackets[(1, 4)] = {6: sub(l[1], l[7]), 7: sub(l[2], l[8]), 8: sub(l[3], l[9]), 9: sub(l[4], l[10])}
    brackets[(1, 5)] = {7: sub(l[1], mul(two, l[7])), 8: sub(l[2], mul(two, l[8])), 9: sub(l[3], mul(two, l[9]))}
    brackets[(1, 6)] = {8: add(sub(l[1], mul(three, l[7])), l[11]), 9: add(sub(l[2], mul(three, l[8])), l[12])}
    brackets[(1, 7)] = {9: add(sub(l[1], mul(four, l[7])), mul(three, l[11]))}
    brackets[(1, 8)] = {9: ring.neg(l[13])}
    brackets[(2, 3)] = {6: l[7], 7: l[8], 8: l[9], 9: l[10]}
    brackets[(2, 4)] = {7: l[7], 8: l[8], 9: l[9]}
    brackets[(2, 5)] = {8: sub(l[7], l[11]), 9: sub(l[8], l[12])}
    brackets[(2, 6)] = {9: sub(l[7], mul(two, l[11]))}
    brackets[(2, 7)] = {9: l[13]}
    brackets[(3, 4)] = {8: l[11], 9: l[12]}
    brackets[(3, 5)] = {9: l[11]}
    brackets[(3, 6)] = {9: ring.neg(l[13])}
    brackets[(4, 5)] = {9: l[13]}
    return LieAlgebra(ring, 10, brackets)


# The fixed member: l1 = l2 = 1, l3..l6 = 0, l7 = -1, l8 = -2, l9 = -25,
# l10 = 0, l11 = 3, l12 = -2, l13 = 1.
L10_LAMBDAS = (1, 1, 0, 0, 0, 0, -1, -2, -25, 0, 3, -2, 1)


class PresentedLieAlgebra:
    """A LieAlgebra together with generators and derivation rules.

    Every non-generator basis vector is defined by exactly one rule
    e_target = [e_left, e_right] using previously available vectors, so any
    morphism is determined by the images of the generators.
    """

    def __init__(self, base, generators, rules):
        self.base = base
        self.generators = tuple(generators)
        self.rules = tuple(tuple(r) for r in rules)
        available = set(self.generators)
        targets = set()
        for target, left, right in self.rules:
            if target in available or target in targets:
                raise ValueError(f"basis vector {target} defined twice")
            if left not in available or right not in available:
                raise ValueError(f"rule for {target} uses unavailable vectors")
            targets.add(target)
            available.add(target)
        if available != set(range(base.dim)):
            missing = sorted(set(range(base.dim)) - available)
            raise ValueError(f"basis vectors {missing} are neither generators nor derived")

    @property
    def ring(self):
        return self.base.ring

    @property
    def dim(self):
        return self.base.dim

    def rule_pairs(self):
        """The (min, max) index pairs consumed as derivation rules."""
        return {(min(l, r), max(l, r)) for _, l, r in self.rules}

    def relation_pairs(self):
        """All bracket pairs (i, j), i < j, that remain to be checked as relations."""
        rules = self.rule_pairs()
        return [(i, j) for i in range(self.dim) for j in range(i + 1, self.dim)
                if (i, j) not in rules]

    def __repr__(self):
        return (f"PresentedLieAlgebra(dim={self.dim}, generators={self.generators}, "
                f"{len(self.rules)} rules)")


def burde_l10(ring):
    """The fixed 10-dimensional algebra, presented on generators (e_0, e_1)."""
    base = burde_family(L10_LAMBDAS, ring)
    rules = [(i + 1, 0, i) for i in range(1, 9)]
    return PresentedLieAlgebra(base, (0, 1), rules)


def heisenberg(ring):
    """dim 3, [e_0, e_1] = e_2, presented on generators (e_0, e_1)."""
    base = LieAlgebra(ring, 3, {(0, 1): {2: 1}})
    return PresentedLieAlgebra(base, (0, 1), [(2, 0, 1)])


BUILTIN_ALGEBRAS = {
    "burde-l10": burde_l10,
    "heisenberg": heisenberg,
}


def builtin_algebra(name, ring):
    try:
        factory = BUILTIN_ALGEBRAS[name]
    except KeyError:
        raise ValueError(f"unknown builtin algebra {name!r}; "
                         f"choices: {', '.join(sorted(BUILTIN_ALGEBRAS))}") from None
    return factory(ring)


# -- file format ---------------------------------------------------------


def algebra_to_json(obj):
    """Serialize a LieAlgebra or PresentedLieAlgebra."""
    presented = isinstance(obj, PresentedLieAlgebra)
    base = obj.base if presented else obj
    brackets = []
    for (i, j), row in sorted(base.brackets.items()):
        brackets.append({"i": i, "j": j, "out": [[k, str(row[k])] for k in sorted(row)]})
    doc = {"dim": base.dim, "ring": ring_to_json(base.ring), "brackets": brackets}
    if presented:
        doc["generators"] = list(obj.generators)
        doc["rules"] = [{"target": t, "left": l, "right": r} for t, l, r in obj.rules]
    else:
        doc["generators"] = []
        doc["rules"] = []
    return doc


def algebra_from_json(doc):
    """Inverse of algebra_to_json; returns PresentedLieAlgebra when rules are given."""
    ring = ring_from_json(doc["ring"])
    brackets = {}
    for item in doc["brackets"]:
        brackets[(item["i"], item["j"])] = {k: c for k, c in item["out"]}
    base = LieAlgebra(ring, doc["dim"], brackets)
    generators = doc.get("generators") or []
    rules = doc.get("rules") or []
    if generators or rules:
        return PresentedLieAlgebra(base, generators,
                                   [(r["target"], r["left"], r["right"]) for r in rules])
    return base


def load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))


def dump_algebra(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_json(obj), fh, indent=1, sort_keys=True)
        fh.write("\n")
