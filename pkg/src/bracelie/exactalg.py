"""Exact scalar and dense-matrix arithmetic over Z, Q, and prime fields.

Scalars are plain Python ints (Z and F_p residues) or fractions.Fraction (Q),
tagged with a ring object that supplies the operations.  Everything is
immutable after construction and safe to share.
"""

from __future__ import annotations

import json
from fractions import Fraction


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin; exact for all n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class IntegerRing:
    """The ring Z with arbitrary-precision integers."""

    name = "Z"
    is_field = False

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring scalar")
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return int(x, 10)
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise TypeError(f"cannot coerce {x!r} into Z")

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    zero = 0
    one = 1

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Z"


class RationalRing:
    """The field Q; elements are fractions.Fraction, always reduced."""

    name = "Q"
    is_field = True

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring scalar")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    zero = Fraction(0)
    one = Fraction(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """F_p for a prime p; elements are ints in [0, p)."""

    is_field = True

    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a ring scalar")
        if isinstance(x, str):
            x = int(x, 10)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    zero = 0
    one = 1

    def element(self, x):
        return FieldElement(self.coerce(x), self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


ZZ = IntegerRing()
QQ = RationalRing()


class FieldElement:
    """A residue in a fixed prime field, with operator sugar."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        self.value = value % field.p
        self.field = field

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise RingMismatchError("elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._lift(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __truediv__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * self.field.inv(v), self.field)

    def inverse(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __pow__(self, n):
        return FieldElement(pow(self.value, n, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


class Matrix:
    """Immutable dense matrix with exact entries over a tagged ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries):
        rows = len(entries)
        if rows == 0:
            raise DimensionError("matrix needs at least one row")
        cols = len(entries[0])
        if cols == 0:
            raise DimensionError("matrix needs at least one column")
        coerced = []
        for row in entries:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            coerced.append(tuple(ring.coerce(x) for x in row))
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = tuple(coerced)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(ring, [[ring.zero] * cols for _ in range(rows)])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def _check_same_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(r1, r2)]
                                  for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in subtraction")
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(r1, r2)]
                                  for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(a) for a in row] for row in self.entries])

    def scale(self, c):
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n):
        return mat_pow(self, n)

    def transpose(self):
        return Matrix(self.ring, [list(col) for col in zip(*self.entries)])

    def is_zero(self):
        z = self.ring.zero
        return all(a == z for row in self.entries for a in row)

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in row) for row in self.entries)
        return f"Matrix({self.ring}, [{body}])"

    def rref(self):
        """Reduced row-echelon form over a field.  Returns (Matrix, pivot column list)."""
        if not self.ring.is_field:
            raise TypeError("rref needs a field; lift Z matrices to Q first")
        ring = self.ring
        rows = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c] != ring.zero), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = ring.inv(rows[r][c])
            rows[r] = [ring.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != ring.zero:
                    f = rows[i][c]
                    rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(ring, rows), pivots

    def rank(self):
        if self.ring == ZZ:
            return self.lift_to(QQ).rank()
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right kernel over a field, as a list of coefficient tuples."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        ring = self.ring
        basis = []
        for f in free:
            v = [ring.zero] * self.cols
            v[f] = ring.one
            for row, c in zip(reduced.entries, pivots):
                v[c] = ring.neg(row[f])
            basis.append(tuple(v))
        return basis

    def inverse(self):
        """Inverse over a prime field via Gauss-Jordan on [A | I]."""
        if not isinstance(self.ring, PrimeField):
            raise TypeError("inversion is only offered over prime fields")
        if not self.is_square():
            raise DimensionError("only square matrices invert")
        n = self.rows
        aug = Matrix(self.ring, [list(row) + [self.ring.one if i == j else self.ring.zero
                                              for j in range(n)]
                                 for i, row in enumerate(self.entries)])
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.ring, [row[n:] for row in reduced.entries])

    def lift_to(self, ring):
        return Matrix(ring, [[x for x in row] for row in self.entries])


def mat_mul(a, b):
    """Exact matrix product."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if a.cols != b.rows:
        raise DimensionError(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    ring = a.ring
    bt = list(zip(*b.entries))
    out = []
    for row in a.entries:
        out_row = []
        for col in bt:
            s = ring.zero
            for x, y in zip(row, col):
                s = ring.add(s, ring.mul(x, y))
            out_row.append(s)
        out.append(out_row)
    return Matrix(ring, out)


def commutator(a, b):
    """ab - ba for square matrices of equal size."""
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise DimensionError("commutator needs equal square matrices")
    return mat_mul(a, b) - mat_mul(b, a)


def mat_pow(a, n):
    """a**n by binary exponentiation; n = 0 gives the identity."""
    if not a.is_square():
        raise DimensionError("powers need a square matrix")
    if n < 0:
        raise ValueError("negative powers are not offered")
    result = Matrix.identity(a.ring, a.rows)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return result


def is_strictly_upper(a):
    """True iff every entry on or below the diagonal is zero."""
    if not a.is_square():
        raise DimensionError("triangularity applies to square matrices")
    z = a.ring.zero
    return all(a.entries[i][j] == z for i in range(a.rows) for j in range(i + 1))


def is_unipotent_upper(a):
    """True iff a = I + N with N strictly upper triangular."""
    if not a.is_square():
        raise DimensionError("triangularity applies to square matrices")
    z, one = a.ring.zero, a.ring.one
    for i in range(a.rows):
        if a.entries[i][i] != one:
            return False
        if any(a.entries[i][j] != z for j in range(i)):
            return False
    return True


def ring_to_json(ring):
    if ring == ZZ:
        return "Z"
    if isinstance(ring, PrimeField):
        return {"Fp": ring.p}
    raise ValueError(f"{ring} has no file representation")


def ring_from_json(obj):
    if obj == "Z":
        return ZZ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return PrimeField(obj["Fp"])
    raise ValueError(f"unrecognized ring tag {obj!r}")


def matrix_to_json(m):
    """Matrix literal object: Z entries as decimal strings, F_p entries as ints."""
    if m.ring == ZZ:
        entries = [[str(x) for x in row] for row in m.entries]
    elif isinstance(m.ring, PrimeField):
        entries = [list(row) for row in m.entries]
    else:
        raise ValueError("only Z and F_p matrices have a file format")
    return {"ring": ring_to_json(m.ring), "rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_json(obj):
    ring = ring_from_json(obj["ring"])
    entries = obj["entries"]
    if len(entries) != obj["rows"] or any(len(r) != obj["cols"] for r in entries):
        raise ValueError("entry grid does not match the declared shape")
    return Matrix(ring, entries)


def load_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def dump_matrix(m, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(m), fh, indent=1, sort_keys=True)
        fh.write("\n")
