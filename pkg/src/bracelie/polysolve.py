"""Sparse multivariate polynomials over Z and F_p, and the machinery built on
them: generation of faithful-representation systems from a presented Lie
algebra, witness substitution, Buchberger Groebner bases over F_p, certificate
verification for unsolvability mod p, and a brute-force solution oracle.

Monomials are sparse tuples ((var_index, exponent), ...) sorted by variable;
term maps never store zero coefficients.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

from .braces import BoundExceededError
from .exactalg import (
    Matrix,
    PrimeField,
    ZZ,
    is_strictly_upper,
    ring_from_json,
    ring_to_json,
)
from .liealg import PresentedLieAlgebra

ONE = ()  # the empty monomial


def mono_mul(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))

def mono_divides(a, b):
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)

def mono_div(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) - e
        if out[v] == 0:
            del out[v]
    return tuple(sorted(out.items()))

def mono_lcm(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = max(out.get(v, 0), e)
    return tuple(sorted(out.items()))

def mono_degree(a):
    return sum(e for _, e in a)

def mono_coprime(a, b):
    vb = {v for v, _ in b}
    return all(v not in vb for v, _ in a)


class MonomialOrder:
    """A monomial order as a sort-key factory over a fixed variable count."""

    def __init__(self, name, nvars):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.nvars = nvars
        self._memo = {}

    def key(self, mono):
        cached = self._memo.get(mono)
        if cached is not None:
            return cached
        dense = [0] * self.nvars
        for v, e in mono:
            dense[v] = e
        if self.name == "lex":
            out = tuple(dense)
        else:
            # grevlex: compare total degree, then the reversed exponents negated
            out = (mono_degree(mono), tuple(-e for e in reversed(dense)))
        self._memo[mono] = out
        return out


class Polynomial:
    """Sparse polynomial over Z or F_p."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        for mono, coeff in (terms or {}).items():
            merged = {}
            for v, e in mono:
                if e < 0:
                    raise ValueError("negative exponents are not polynomials")
                merged[v] = merged.get(v, 0) + e
            mono = tuple(sorted((v, e) for v, e in merged.items() if e))
            c = ring.coerce(coeff)
            c = ring.add(c, clean.get(mono, ring.zero)) if mono in clean else c
            if c == ring.zero:
                clean.pop(mono, None)
            else:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {ONE: c})

    @classmethod
    def variable(cls, ring, v):
        return cls(ring, {((v, 1),): ring.one})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {ONE}

    def constant_value(self):
        return self.terms.get(ONE, self.ring.zero)

    def __add__(self, other):
        ring = self.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = ring.add(out.get(m, ring.zero), c)
            if s == ring.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial._raw(ring, out)

    def __sub__(self, other):
        ring = self.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = ring.sub(out.get(m, ring.zero), c)
            if s == ring.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial._raw(ring, out)

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: self.ring.neg(c) for m, c in self.terms.items()})

    def __mul__(self, other):
        ring = self.ring
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = ring.add(out.get(m, ring.zero), ring.mul(c1, c2))
                if s == ring.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial._raw(ring, out)

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        if c == ring.zero:
            return Polynomial.zero(ring)
        return Polynomial._raw(ring, {m: ring.mul(c, x) for m, x in self.terms.items()})

    def term_mul(self, coeff, mono):
        """self * coeff * mono, used by division and S-polynomials."""
        ring = self.ring
        return Polynomial._raw(ring, {mono_mul(m, mono): ring.mul(coeff, c)
                                      for m, c in self.terms.items()})

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    def evaluate(self, values):
        """Value at a point; values is indexable by variable index."""
        ring = self.ring
        total = ring.zero
        for mono, coeff in self.terms.items():
            v = coeff
            for var, e in mono:
                for _ in range(e):
                    v = ring.mul(v, values[var])
            total = ring.add(total, v)
        return total

    def reduce_mod(self, p):
        if self.ring != ZZ:
            raise TypeError("reduce_mod applies to polynomials over Z")
        fp = PrimeField(p)
        return Polynomial(fp, dict(self.terms))

    def leading(self, order):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order):
        if self.is_zero():
            return self
        _, c = self.leading(order)
        return self.scale(self.ring.inv(c))

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def pretty(self, names):
        if self.is_zero():
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-mono_degree(m), m)):
            c = self.terms[mono]
            body = "*".join(f"{names[v]}^{e}" if e > 1 else names[v] for v, e in mono)
            parts.append(f"{c}" if not body else (f"{body}" if c == self.ring.one else f"{c}*{body}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({len(self.terms)} terms over {self.ring})"


@dataclass
class PolySystem:
    """A list of polynomial generators over a shared variable roster.

    Variables split into matrix unknowns (y-names) and auxiliary z-names used
    by the f'_1 z_1 + ... + f'_r z_r - 1 encoding of a nonvanishing condition.
    """

    ring: object
    variables: list
    generators: list
    n_matrix_unknowns: int = None  # y's come first; z's follow
    labels: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.n_matrix_unknowns is None:
            self.n_matrix_unknowns = len(self.variables)

    @property
    def nvars(self):
        return len(self.variables)

    def order(self, name="grevlex"):
        return MonomialOrder(name, self.nvars)

    def reduce_mod(self, p):
        fp = PrimeField(p)
        return PolySystem(fp, list(self.variables),
                          [Polynomial(fp, g.terms) for g in self.generators],
                          self.n_matrix_unknowns, self.labels)

    def with_field_equations(self):
        """Append x_i^p - x_i for every variable (forces F_p-rational points)."""
        if not isinstance(self.ring, PrimeField):
            raise TypeError("field equations need a prime field")
        p = self.ring.p
        extra = [Polynomial(self.ring, {((v, p),): 1, ((v, 1),): -1})
                 for v in range(self.nvars)]
        return PolySystem(self.ring, list(self.variables),
                          list(self.generators) + extra, self.n_matrix_unknowns)


# -- system generation -------------------------------------------------------


def _poly_matrix_commutator(a, b, ring):
    n = len(a)
    zero = Polynomial.zero(ring)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + a[i][k] * b[k][j] - b[i][k] * a[k][j]
            out[i][j] = acc
    return out


def generate_system(presented, target_dim, rabinowitsch=False, central_index=None):
    """Polynomial system expressing 'the generator images extend to a Lie morphism
    into strictly upper target_dim x target_dim matrices'.

    Unknowns are the strictly upper entries of one matrix per generator
    (row-major, generators in order); derived basis images are built from the
    presentation rules, and one polynomial is emitted per strictly-upper entry
    of every non-rule bracket relation, dropping identical zeros.  With
    rabinowitsch=True, variables z_t and the generator
    sum_t f'_t z_t - 1 are appended, where f'_t ranges over the entries of the
    image of the designated central basis vector (default: the last one).
    """
    if target_dim < 2:
        raise ValueError("target dimension must be at least 2")
    ring = presented.ring
    base = presented.base
    n = target_dim
    slots = [(r, c) for r in range(n) for c in range(r + 1, n)]
    variables = []
    images = {}
    zero = Polynomial.zero(ring)
    for g_pos, g in enumerate(presented.generators):
        mat = [[zero for _ in range(n)] for _ in range(n)]
        for (r, c) in slots:
            var = len(variables)
            variables.append(f"y{g_pos}_{r}_{c}")
            mat[r][c] = Polynomial.variable(ring, var)
        images[g] = mat
    for target, left, right in presented.rules:
        images[target] = _poly_matrix_commutator(images[left], images[right], ring)
    n_matrix_unknowns = len(variables)

    generators = []
    labels = []
    for (i, j) in presented.relation_pairs():
        residual = _poly_matrix_commutator(images[i], images[j], ring)
        for k, coeff in base.brackets.get((i, j), {}).items():
            ek = images[k]
            for (r, c) in slots:
                residual[r][c] = residual[r][c] - ek[r][c].scale(coeff)
        for (r, c) in slots:
            poly = residual[r][c]
            if not poly.is_zero():
                generators.append(poly)
                labels.append((i, j, r, c))

    if rabinowitsch:
        if central_index is None:
            central_index = base.dim - 1
        central = images[central_index]
        acc = Polynomial.constant(ring, ring.neg(ring.one))
        for t, (r, c) in enumerate(slots):
            zvar = len(variables)
            variables.append(f"z_{t}")
            acc = acc + central[r][c] * Polynomial.variable(ring, zvar)
        generators.append(acc)
        labels.append("rabinowitsch")

    return PolySystem(ring, variables, generators, n_matrix_unknowns, labels)


# -- witness substitution -----------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Candidate images of the two generators: strictly upper n x n over F_p."""

    p: int
    n: int
    e0: Matrix
    e1: Matrix

    def __post_init__(self):
        for m in (self.e0, self.e1):
            if m.rows != self.n or m.cols != self.n:
                raise ValueError("witness matrices must be n x n")
            if not isinstance(m.ring, PrimeField) or m.ring.p != self.p:
                raise ValueError("witness matrices must live over F_p")
            if not is_strictly_upper(m):
                raise ValueError("witness matrices must be strictly upper triangular")


@dataclass(frozen=True)
class SubstitutionReport:
    p: int
    n: int
    relations: tuple          # ((i, j), residual_is_zero) per non-rule pair
    is_morphism: bool
    central_image_nonzero: bool
    injective: bool           # morphism with nonzero central image

    @property
    def failing(self):
        return [pair for pair, ok in self.relations if not ok]


def substitute_witness(presented, witness, central_index=None):
    """Build all basis images from the witness by the presentation rules and
    evaluate every non-rule bracket relation exactly.

    Injectivity of a morphism is decided by the image of the designated
    central basis vector: the kernel is an ideal, and a nonzero ideal of a
    nilpotent algebra meets the center nontrivially.
    """
    if len(presented.generators) != 2:
        raise ValueError("witness substitution expects a 2-generator presentation")
    ring = PrimeField(witness.p)
    if presented.ring != ring:
        if presented.ring == ZZ:
            base = presented.base.reduce_mod(witness.p)
            presented = PresentedLieAlgebra(base, presented.generators, presented.rules)
        else:
            raise ValueError("presentation ring does not match the witness prime")
    base = presented.base
    if central_index is None:
        central_index = base.dim - 1
    images = {presented.generators[0]: witness.e0, presented.generators[1]: witness.e1}
    for target, left, right in presented.rules:
        images[target] = images[left] * images[right] - images[right] * images[left]
    relations = []
    for (i, j) in presented.relation_pairs():
        residual = images[i] * images[j] - images[j] * images[i]
        for k, coeff in base.brackets.get((i, j), {}).items():
            residual = residual - images[k].scale(coeff)
        relations.append(((i, j), residual.is_zero()))
    is_morphism = all(ok for _, ok in relations)
    central_nonzero = not images[central_index].is_zero()
    return SubstitutionReport(
        p=witness.p,
        n=witness.n,
        relations=tuple(relations),
        is_morphism=is_morphism,
        central_image_nonzero=central_nonzero,
        injective=is_morphism and central_nonzero,
    ), images


# -- Buchberger ---------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerResult:
    basis: tuple              # reduced Groebner basis, sorted by leading monomial
    inconsistent: bool        # 1 in the ideal
    reductions: int


def _divide(poly, basis, lead, order, counter, budget):
    """Full remainder of poly modulo basis (leads precomputed).

    The budget is charged per elementary term operation, so oversized systems
    fail fast instead of grinding."""
    remainder = {}
    ring = poly.ring
    work = poly
    while not work.is_zero():
        m, c = work.leading(order)
        for g, (gm, gc) in zip(basis, lead):
            if mono_divides(gm, m):
                counter[0] += len(g.terms)
                if counter[0] > budget:
                    raise BoundExceededError(
                        f"Groebner budget of {budget} term operations exceeded")
                factor = ring.mul(c, ring.inv(gc))
                work = work - g.term_mul(factor, mono_div(m, gm))
                break
        else:
            counter[0] += 1
            if counter[0] > budget:
                raise BoundExceededError(
                    f"Groebner budget of {budget} term operations exceeded")
            remainder[m] = c
            work = Polynomial._raw(ring, {mm: cc for mm, cc in work.terms.items() if mm != m})
    return Polynomial._raw(ring, remainder)


def buchberger(system, order_name="grevlex", budget=200_000):
    """Reduced Groebner basis over F_p with the normal selection strategy and
    both Buchberger elimination criteria.  Deterministic for a fixed order;
    raises BoundExceededError when the reduction budget is exhausted.
    """
    if not isinstance(system.ring, PrimeField):
        raise TypeError("Groebner bases are computed over prime fields only")
    ring = system.ring
    order = system.order(order_name)
    key = order.key
    counter = [0]

    basis = []
    lead = []
    for g in sorted((g for g in system.generators if not g.is_zero()),
                    key=lambda g: key(g.leading(order)[0])):
        gm = g.monic(order)
        if gm not in basis:
            basis.append(gm)
            lead.append(gm.leading(order))

    if len(basis) * (len(basis) - 1) // 2 > budget:
        raise BoundExceededError(
            f"{len(basis)} generators yield more S-pairs than the budget {budget}")

    heap = []

    def push_pair(i, j):
        counter[0] += 1
        if counter[0] > budget or len(heap) > budget:
            raise BoundExceededError(
                f"Groebner budget of {budget} term operations exceeded")
        heapq.heappush(heap, (key(mono_lcm(lead[i][0], lead[j][0])), i, j))

    for j in range(len(basis)):
        for i in range(j):
            push_pair(i, j)
    processed = set()
    while heap:
        # normal strategy: smallest lcm in the order
        _, i, j = heapq.heappop(heap)
        processed.add((i, j))
        mi, mj = lead[i][0], lead[j][0]
        if mono_coprime(mi, mj):
            continue  # first criterion
        lcm = mono_lcm(mi, mj)
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(lead[k][0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in processed and b in processed:
                    skip = True  # chain criterion
                    break
        if skip:
            continue
        fi, fj = basis[i], basis[j]
        counter[0] += len(fi.terms) + len(fj.terms)
        if counter[0] > budget:
            raise BoundExceededError(
                f"Groebner budget of {budget} term operations exceeded")
        ci, cj = lead[i][1], lead[j][1]
        s = (fi.term_mul(ring.inv(ci), mono_div(lcm, mi))
             - fj.term_mul(ring.inv(cj), mono_div(lcm, mj)))
        r = _divide(s, basis, lead, order, counter, budget)
        if r.is_zero():
            continue
        r = r.monic(order)
        basis.append(r)
        lead.append(r.leading(order))
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)

    # minimalize: drop any element whose lead is divisible by another lead
    keep = []
    for i, (m, _) in enumerate(lead):
        if not any(j != i and mono_divides(lead[j][0], m) for j in range(len(basis))
                   if (j in keep or j > i)):
            keep.append(i)
    minimal = [basis[i] for i in keep]
    # inter-reduce tails
    reduced = []
    for idx, g in enumerate(minimal):
        others = [h for k, h in enumerate(minimal) if k != idx]
        if not others:
            reduced.append(g.monic(order))
            continue
        other_lead = [h.leading(order) for h in others]
        r = _divide(g, others, other_lead, order, counter, budget)
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: key(g.leading(order)[0]))
    one = Polynomial.constant(ring, 1)
    inconsistent = reduced == [one]
    return GroebnerResult(tuple(reduced), inconsistent, counter[0])


def is_groebner_basis(result, system, order_name="grevlex", budget=500_000):
    """Independent audit: every S-polynomial of the output and every input
    generator reduces to zero modulo the output basis."""
    order = system.order(order_name)
    basis = list(result.basis)
    lead = [g.leading(order) for g in basis]
    counter = [0]
    for j in range(len(basis)):
        for i in range(j):
            mi, mj = lead[i][0], lead[j][0]
            lcm = mono_lcm(mi, mj)
            ring = system.ring
            s = (basis[i].term_mul(ring.inv(lead[i][1]), mono_div(lcm, mi))
                 - basis[j].term_mul(ring.inv(lead[j][1]), mono_div(lcm, mj)))
            if not _divide(s, basis, lead, order, counter, budget).is_zero():
                return False
    for g in system.generators:
        if not _divide(g, basis, lead, order, counter, budget).is_zero():
            return False
    return True


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Cofactors g'_i over Z and a nonzero integer k claimed to satisfy
    sum f_i g'_i = k identically."""

    cofactors: tuple
    k: int

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("certificate constant k must be nonzero")


@dataclass(frozen=True)
class CertificateReport:
    identity_holds: bool
    k: int
    coprime_to_p: bool
    certified: bool


def verify_certificate(system, certificate, p):
    """Check sum f_i g'_i = k exactly in Z[...]; certify unsolvability over F_p
    when the identity holds and gcd(k, p) = 1."""
    if system.ring != ZZ:
        raise TypeError("certificates are verified against systems over Z")
    if len(certificate.cofactors) != len(system.generators):
        raise ValueError(
            f"{len(certificate.cofactors)} cofactors for {len(system.generators)} generators")
    total = Polynomial.zero(ZZ)
    for f, g in zip(system.generators, certificate.cofactors):
        total = total + f * g
    identity = total == Polynomial.constant(ZZ, certificate.k)
    from math import gcd
    coprime = gcd(certificate.k, p) == 1
    return CertificateReport(
        identity_holds=identity,
        k=certificate.k,
        coprime_to_p=coprime,
        certified=identity and coprime,
    )


# -- brute-force oracle ---------------------------------------------------------


def solve_small(system, space_bound=10_000_000):
    """Exhaustive enumeration of F_p-rational solutions; the search space
    p^{#variables} must stay within the bound."""
    if not isinstance(system.ring, PrimeField):
        raise TypeError("solve_small enumerates over prime fields")
    p = system.ring.p
    k = system.nvars
    if p ** k > space_bound:
        raise BoundExceededError(f"search space {p}^{k} exceeds {space_bound}")
    import itertools
    solutions = []
    gens = system.generators
    for point in itertools.product(range(p), repeat=k):
        if all(g.evaluate(point) == 0 for g in gens):
            solutions.append(point)
    return solutions


# -- file formats ----------------------------------------------------------------


def poly_to_json(poly):
    out = []
    for mono in sorted(poly.terms):
        out.append({"coeff": str(poly.terms[mono]), "exps": [[v, e] for v, e in mono]})
    return out


def poly_from_json(ring, doc):
    terms = {}
    for item in doc:
        mono = tuple(sorted((int(v), int(e)) for v, e in item["exps"]))
        terms[mono] = item["coeff"]
    return Polynomial(ring, terms)


def system_to_json(system):
    return {
        "ring": ring_to_json(system.ring),
        "vars": list(system.variables),
        "polys": [poly_to_json(g) for g in system.generators],
    }


def system_from_json(doc):
    ring = ring_from_json(doc["ring"])
    variables = list(doc["vars"])
    gens = [poly_from_json(ring, p) for p in doc["polys"]]
    n_matrix = sum(1 for v in variables if not v.startswith("z_"))
    return PolySystem(ring, variables, gens, n_matrix)


def witness_to_json(w):
    return {"p": w.p, "n": w.n,
            "E0": [list(r) for r in w.e0.entries],
            "E1": [list(r) for r in w.e1.entries]}


def witness_from_json(doc):
    p = int(doc["p"])
    n = int(doc["n"])
    fp = PrimeField(p)
    return Witness(p, n, Matrix(fp, doc["E0"]), Matrix(fp, doc["E1"]))


def certificate_to_json(cert):
    return {"k": str(cert.k), "cofactors": [poly_to_json(g) for g in cert.cofactors]}


def certificate_from_json(doc):
    cofactors = tuple(poly_from_json(ZZ, p) for p in doc["cofactors"])
    return Certificate(cofactors, int(doc["k"]))


def load_system(path):
    with open(path, "r", encoding="utf-8") as fh:
        return system_from_json(json.load(fh))


def dump_system(system, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(system_to_json(system), fh, sort_keys=True)
        fh.write("\n")


def load_witness(path):
    with open(path, "r", encoding="utf-8") as fh:
        return witness_from_json(json.load(fh))


def dump_witness(w, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(witness_to_json(w), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_certificate(path):
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_json(json.load(fh))
