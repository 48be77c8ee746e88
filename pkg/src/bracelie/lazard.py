"""Truncated Baker-Campbell-Hausdorff products and unipotent matrix exp/log.

The BCH series log(e^x e^y) is computed once per truncation degree by the
Dynkin expansion (a sum over compositions into blocks x^r y^s), rewritten into
left-normed bracket words [[..[w1,w2],..],wk], and cached.  Evaluating it on a
nilpotent Lie algebra of class c < p over F_p turns the algebra's underlying
set into a p-group; element orders then agree with additive orders.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exactalg import (
    DimensionError,
    Matrix,
    PrimeField,
    is_strictly_upper,
    is_unipotent_upper,
    mat_mul,
)

MAX_DEGREE = 12


class LazardHypothesisError(ValueError):
    """Nilpotency class >= p: the truncated BCH product is refused."""


class BchSeries:
    """log(e^x e^y) truncated at max_degree, as left-normed bracket words.

    terms maps a word tuple over {'x','y'} to an exact rational coefficient;
    the word (w1,...,wk) denotes [[..[w1,w2],..],wk].  Denominators only
    involve primes <= max_degree (validated), so the series evaluates in any
    F_p with p > max_degree.
    """

    def __init__(self, max_degree, terms):
        self.max_degree = max_degree
        self.terms = dict(terms)
        for word, coeff in self.terms.items():
            if not 1 <= len(word) <= max_degree:
                raise ValueError(f"word {word} exceeds degree {max_degree}")
            if coeff == 0:
                raise ValueError("zero coefficients must be dropped")
            d = coeff.denominator
            for q in range(2, max_degree + 1):
                while d % q == 0:
                    d //= q
            if d != 1:
                raise ValueError(
                    f"denominator of {word} has a prime factor above {max_degree}")

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def pretty(self):
        parts = []
        for word, coeff in self.sorted_terms():
            expr = word[0]
            for letter in word[1:]:
                expr = f"[{expr},{letter}]"
            parts.append(f"({coeff}) {expr}")
        return "\n".join(parts)

    def __len__(self):
        return len(self.terms)


def _block_sequences(budget):
    """All sequences of blocks (r, s), r + s >= 1, with total degree <= budget."""
    out = []

    def rec(remaining, seq):
        if seq:
            out.append(seq)
        if remaining == 0:
            return
        for r in range(remaining + 1):
            for s in range(remaining - r + 1):
                if r + s:
                    rec(remaining - r - s, seq + ((r, s),))

    rec(budget, ())
    return out


_SERIES_CACHE = {}


def bch_symbolic(max_degree):
    """The Dynkin expansion of log(e^x e^y) through the given degree, cached.

    Each composition x^{r_1} y^{s_1} ... x^{r_n} y^{s_n} contributes the
    right-nested bracket of its letter word with coefficient
    (-1)^{n-1} / (n * deg * prod r_i! s_i!); the right-nested word of length k
    equals (-1)^{k-1} times the left-normed word with letters reversed, and
    left-normed words are normalized so the first two letters are (x, y).
    """
    if not 1 <= max_degree <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}")
    if max_degree in _SERIES_CACHE:
        return _SERIES_CACHE[max_degree]
    terms = {}

    def add(word, coeff):
        if len(word) >= 2:
            if word[0] == word[1]:
                return  # [a, a] = 0
            if word[0] > word[1]:
                word = (word[1], word[0]) + word[2:]
                coeff = -coeff
        total = terms.get(word, Fraction(0)) + coeff
        if total:
            terms[word] = total
        else:
            terms.pop(word, None)

    for seq in _block_sequences(max_degree):
        r_last, s_last = seq[-1]
        # the innermost bracket is [y,y] or [x,x] unless the tail is a single letter
        if s_last >= 2 or (s_last == 0 and r_last >= 2):
            continue
        n = len(seq)
        degree = sum(r + s for r, s in seq)
        denom = n * degree
        for r, s in seq:
            denom *= factorial(r) * factorial(s)
        coeff = Fraction((-1) ** (n - 1), denom)
        word = []
        for r, s in seq:
            word.extend("x" * r)
            word.extend("y" * s)
        if len(word) == 1:
            add((word[0],), coeff)
        else:
            add(tuple(reversed(word)), coeff * (-1) ** (len(word) - 1))

    series = BchSeries(max_degree, terms)
    _SERIES_CACHE[max_degree] = series
    return series


class _SeriesProgram:
    """Straight-line evaluation plan for a BchSeries with shared word prefixes."""

    def __init__(self, series):
        steps = []          # (parent, letter); parent -1 = x, -2 = y
        outputs = []        # (node, coefficient)
        index = {("x",): -1, ("y",): -2}
        for word, coeff in series.sorted_terms():
            if word in index:
                outputs.append((index[word], coeff))
                continue
            node = index[word[:1]]
            for i in range(1, len(word)):
                prefix = word[: i + 1]
                if prefix in index:
                    node = index[prefix]
                else:
                    steps.append((node, word[i]))
                    node = len(steps) - 1
                    index[prefix] = node
            outputs.append((node, coeff))
        self.steps = steps
        self.outputs = outputs


_PROGRAM_CACHE = {}


def _series_program(degree):
    if degree not in _PROGRAM_CACHE:
        _PROGRAM_CACHE[degree] = _SeriesProgram(bch_symbolic(degree))
    return _PROGRAM_CACHE[degree]


def _checked_class(algebra, p):
    cls = algebra.nilpotency_class()
    if cls >= p:
        raise LazardHypothesisError(
            f"nilpotency class {cls} is not smaller than p = {p}")
    return cls


def _neg_ad_rows(algebra, a):
    """Sparse rows of v -> [v, a], i.e. -ad(a), over F_p."""
    p = algebra.ring.p
    dim = algebra.dim
    cols = [algebra.bracket(algebra.basis_vector(j), a) for j in range(dim)]
    return [[(j, cols[j][i]) for j in range(dim) if cols[j][i] % p] for i in range(dim)]


def exp_product(algebra, x, y):
    """The BCH product of x and y in exp(L) for L over F_p of class < p."""
    ring = algebra.ring
    if not isinstance(ring, PrimeField):
        raise TypeError("exp_product needs a Lie algebra over a prime field")
    p = ring.p
    cls = _checked_class(algebra, p)
    x = algebra.coerce_vector(x)
    y = algebra.coerce_vector(y)
    if cls <= 1:
        return tuple((a + b) % p for a, b in zip(x, y))
    program = _series_program(cls)
    rows_x = _neg_ad_rows(algebra, x)
    rows_y = _neg_ad_rows(algebra, y)
    dim = algebra.dim
    values = []
    for parent, letter in program.steps:
        v = x if parent == -1 else y if parent == -2 else values[parent]
        rows = rows_x if letter == "x" else rows_y
        values.append(tuple(sum(c * v[j] for j, c in row) % p for row in rows))
    out = [0] * dim
    for node, coeff in program.outputs:
        c = coeff.numerator * pow(coeff.denominator, -1, p) % p
        v = x if node == -1 else y if node == -2 else values[node]
        for i in range(dim):
            out[i] += c * v[i]
    return tuple(o % p for o in out)


def group_element_order(algebra, x):
    """Multiplicative order of x in exp(L), by iterated BCH products."""
    x = algebra.coerce_vector(x)
    zero = algebra.zero_vector()
    if x == zero:
        return 1
    acc = x
    n = 1
    p = algebra.ring.p
    while acc != zero:
        acc = exp_product(algebra, acc, x)
        n += 1
        if n > p ** algebra.dim:
            raise RuntimeError("order iteration runaway")
    return n


def mat_exp(n_mat):
    """exp(N) = sum_{k<m} N^k / k! for strictly upper N over F_p with p > m - 1."""
    if not is_strictly_upper(n_mat):
        raise ValueError("mat_exp needs a strictly upper triangular matrix")
    ring = n_mat.ring
    if not isinstance(ring, PrimeField):
        raise TypeError("mat_exp is defined over prime fields")
    m = n_mat.rows
    if ring.p <= m - 1:
        raise LazardHypothesisError(f"p = {ring.p} must exceed m - 1 = {m - 1}")
    out = Matrix.identity(ring, m)
    power = Matrix.identity(ring, m)
    for k in range(1, m):
        power = mat_mul(power, n_mat)
        out = out + power.scale(ring.inv(factorial(k) % ring.p))
    return out


def mat_log(u_mat):
    """log(I + N) = sum_{k<m} (-1)^{k+1} N^k / k for unipotent upper U."""
    if not is_unipotent_upper(u_mat):
        raise ValueError("mat_log needs a unipotent upper triangular matrix")
    ring = u_mat.ring
    if not isinstance(ring, PrimeField):
        raise TypeError("mat_log is defined over prime fields")
    m = u_mat.rows
    if ring.p <= m - 1:
        raise LazardHypothesisError(f"p = {ring.p} must exceed m - 1 = {m - 1}")
    n_mat = u_mat - Matrix.identity(ring, m)
    out = Matrix.zeros(ring, m)
    power = Matrix.identity(ring, m)
    for k in range(1, m):
        power = mat_mul(power, n_mat)
        sign = 1 if k % 2 == 1 else -1
        out = out + power.scale(sign * ring.inv(k))
    return out
