"""Exact arithmetic substrate: prime fields, rationals, dense matrices,
univariate polynomials and rational functions.

Everything downstream (group elements, character values, Euler factors)
is built on these types.  All values are immutable after construction and
all operations are pure, so concurrent reads are safe.

Conventions:
  * rationals are ``fractions.Fraction`` (lowest terms, positive denominator);
  * elements of F_p are canonical ints in 0..p-1, carried by a ``PrimeField``
    ring object rather than wrapped per element (keeps inner loops cheap);
  * matrices are row-major tuples of tuples; mod-p products go through a
    cached numpy int64 mirror, which is exact for p < 2**16.
"""

import itertools
from fractions import Fraction

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Rationals:
    """The field of rational numbers; elements are Fractions."""

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The field F_p for a prime p < 2**16; elements are ints in 0..p-1."""

    __slots__ = ("p",)

    zero = 0
    one = 1

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= MAX_PRIME:
            raise ValueError(f"prime fields restricted to p < 2**16, got {p}")
        self.p = p

    def coerce(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def __repr__(self):
        return f"FF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("FF", self.p))


QQ = Rationals()


def FF(p):
    return PrimeField(p)


class Mat:
    """Immutable dense matrix over QQ or a PrimeField.

    Entries are stored as a tuple of row tuples; for prime fields a numpy
    int64 mirror is cached lazily and used for products.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows", "_np", "_hash")

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_np", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)])

    @classmethod
    def diag(cls, ring, entries):
        entries = list(entries)
        n = len(entries)
        return cls(ring, [[entries[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_np(cls, ring, arr):
        return cls(ring, [[int(x) for x in row] for row in arr])

    @classmethod
    def block_diag(cls, ring, blocks):
        blocks = list(blocks)
        n = sum(b.nrows for b in blocks)
        rows = [[ring.zero] * n for _ in range(n)]
        off = 0
        for b in blocks:
            if b.nrows != b.ncols:
                raise ValueError("block_diag needs square blocks")
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.nrows
        return cls(ring, rows)

    # -- basics ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Mat({self.ring}, [{body}])"

    def as_np(self):
        """numpy int64 mirror (prime fields only)."""
        if not isinstance(self.ring, PrimeField):
            raise TypeError("numpy mirror only for prime-field matrices")
        a = self._np
        if a is None:
            a = np.array(self.rows, dtype=np.int64)
            object.__setattr__(self, "_np", a)
        return a

    def is_square(self):
        return self.nrows == self.ncols

    def is_identity(self):
        if not self.is_square():
            return False
        ring = self.ring
        return all(
            self.rows[i][j] == (ring.one if i == j else ring.zero)
            for i in range(self.nrows)
            for j in range(self.ncols)
        )

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in addition")
        if isinstance(self.ring, PrimeField):
            return Mat.from_np(self.ring, (self.as_np() + other.as_np()) % self.ring.p)
        return Mat(self.ring, [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if isinstance(self.ring, PrimeField):
            return Mat.from_np(self.ring, (-self.as_np()) % self.ring.p)
        return Mat(self.ring, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Mat):
            c = self.ring.coerce(other)
            if isinstance(self.ring, PrimeField):
                return Mat.from_np(self.ring, self.as_np() * c % self.ring.p)
            return Mat(self.ring, [[a * c for a in row] for row in self.rows])
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ValueError(
                f"inner dimensions disagree: {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}"
            )
        if isinstance(self.ring, PrimeField):
            return Mat.from_np(self.ring, self.as_np() @ other.as_np() % self.ring.p)
        cols = list(zip(*other.rows))
        return Mat(self.ring, [
            [sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows
        ])

    __rmul__ = __mul__

    def transpose(self):
        return Mat(self.ring, list(zip(*self.rows)))

    # -- elimination-based operations ---------------------------------------

    def _echelon(self):
        """Row echelon form; returns (pivot column list, working rows)."""
        ring = self.ring
        work = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            piv = next((r for r in range(row, self.nrows) if work[r][col] != ring.zero), None)
            if piv is None:
                continue
            work[row], work[piv] = work[piv], work[row]
            inv = ring.inv(work[row][col])
            work[row] = [_mul(ring, x, inv) for x in work[row]]
            for r in range(self.nrows):
                if r != row and work[r][col] != ring.zero:
                    f = work[r][col]
                    work[r] = [
                        _sub(ring, a, _mul(ring, f, b)) for a, b in zip(work[r], work[row])
                    ]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return pivots, work

    def rank(self):
        return len(self._echelon()[0])

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        ring = self.ring
        work = [list(r) for r in self.rows]
        det = ring.one
        for col in range(self.ncols):
            piv = next((r for r in range(col, self.nrows) if work[r][col] != ring.zero), None)
            if piv is None:
                return ring.zero
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                det = _neg(ring, det)
            det = _mul(ring, det, work[col][col])
            inv = ring.inv(work[col][col])
            for r in range(col + 1, self.nrows):
                if work[r][col] != ring.zero:
                    f = _mul(ring, work[r][col], inv)
                    work[r] = [
                        _sub(ring, a, _mul(ring, f, b)) for a, b in zip(work[r], work[col])
                    ]
        return det

    def inv(self):
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        ring = self.ring
        n = self.nrows
        work = [list(r) + [ring.one if i == j else ring.zero for j in range(n)]
                for i, r in enumerate(self.rows)]
        aug = Mat(ring, work)
        pivots, rows = aug._echelon()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Mat(ring, [row[n:] for row in rows])

    def is_invertible(self):
        return self.is_square() and self.rank() == self.nrows

    def reduce_mod(self, p):
        """Rational matrix reduced entrywise mod p (denominators must be units)."""
        if not isinstance(self.ring, Rationals):
            raise TypeError("reduce_mod expects a rational matrix")
        fld = FF(p)
        return Mat(fld, self.rows)


def _mul(ring, a, b):
    if isinstance(ring, PrimeField):
        return a * b % ring.p
    return a * b


def _sub(ring, a, b):
    if isinstance(ring, PrimeField):
        return (a - b) % ring.p
    return a - b


def _neg(ring, a):
    if isinstance(ring, PrimeField):
        return -a % ring.p
    return -a


class UniPoly:
    """Dense univariate polynomial in t over the rationals.

    Coefficients are Fractions in ascending degree with no trailing zeros;
    the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def monomial(cls, c, e):
        return cls([0] * e + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, e):
        return self.coeffs[e] if 0 <= e <= self.degree else Fraction(0)

    def constant_term(self):
        return self.coeff(0)

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative polynomial power")
        out = UniPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, t0):
        t0 = Fraction(t0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        return acc

    def substitute(self, a, c):
        """See :func:`substitute_argument`."""
        return substitute_argument(self, a, c)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return UniPoly([x / lead for x in self.coeffs])

    def to_text(self):
        """Render as e.g. ``1 - 3*t + 5/2*t^2`` (ascending degree)."""
        if self.is_zero():
            return "0"
        pieces = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"UniPoly({self.to_text()})"


def _as_poly(x):
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x])


POLY_T = UniPoly([0, 1])


def substitute_argument(f, a, c):
    """Replace t by c*t^a in f; the degree multiplies by a.

    Requires a >= 1 and c != 0 so the substitution is degree-faithful.
    """
    if a < 1:
        raise ValueError("substitution exponent must be >= 1")
    c = Fraction(c)
    if c == 0:
        raise ValueError("substitution scale must be nonzero")
    if f.is_zero():
        return f
    out = [Fraction(0)] * (a * f.degree + 1)
    scale = Fraction(1)
    for e, coef in enumerate(f.coeffs):
        if coef != 0:
            out[a * e] = coef * scale
        scale *= c
    return UniPoly(out)


def poly_divmod(f, g):
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f.coeffs)
    gdeg = g.degree
    glead = g.leading()
    if len(rem) - 1 < gdeg:
        return UniPoly(), f
    quo = [Fraction(0)] * (len(rem) - gdeg)
    for i in range(len(rem) - 1, gdeg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = c / glead
        quo[i - gdeg] = q
        for j, b in enumerate(g.coeffs):
            rem[i - gdeg + j] -= q * b
    return UniPoly(quo), UniPoly(rem)


def _integer_primitive(f):
    """Scale f to a primitive integer-coefficient list (content stripped)."""
    from math import gcd as igcd

    den = 1
    for c in f.coeffs:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for v in ints:
        g = igcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def poly_gcd(f, g):
    """Monic gcd over the rationals, via a primitive remainder sequence."""
    if f.is_zero():
        return g.monic() if not g.is_zero() else UniPoly()
    if g.is_zero():
        return f.monic()
    a = _integer_primitive(f)
    b = _integer_primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b, then strip content
        a = [Fraction(x) for x in a]
        lead = Fraction(b[-1])
        db = len(b) - 1
        while len(a) - 1 >= db and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            q = a[-1] / lead
            for j in range(db + 1):
                a[len(a) - 1 - db + j] -= q * b[j]
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        a, b = b, _integer_primitive(UniPoly(a)) if a else []
    return UniPoly(a).monic()


class RationalFunc:
    """Ratio of two univariate polynomials; not normalized on construction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = _as_poly(num)
        den = _as_poly(den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunc is immutable")

    def __eq__(self, other):
        return isinstance(other, RationalFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other):
        if isinstance(other, RationalFunc):
            return RationalFunc(self.num * other.num, self.den * other.den)
        return RationalFunc(self.num * other, self.den)

    def __truediv__(self, other):
        if isinstance(other, RationalFunc):
            return RationalFunc(self.num * other.den, self.den * other.num)
        return RationalFunc(self.num, self.den * other)

    def evaluate(self, t0):
        d = self.den.evaluate(t0)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t0}")
        return self.num.evaluate(t0) / d

    def normalize(self):
        return normalize_ratfunc(self)

    def to_text(self):
        return f"{self.num.to_text()} / {self.den.to_text()}"

    def __repr__(self):
        return f"RationalFunc({self.to_text()})"


def normalize_ratfunc(r):
    """Cancel common factors and scale the denominator constant term to 1.

    Idempotent; raises on an identically zero denominator.
    """
    if r.den.is_zero():
        raise ZeroDivisionError("degenerate rational function")
    num, den = r.num, r.den
    if num.is_zero():
        return RationalFunc(UniPoly(), UniPoly([1]))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, _ = poly_divmod(num, g)
        den, _ = poly_divmod(den, g)
    c0 = den.constant_term()
    if c0 == 0:
        # denominator vanishes at t=0 after cancellation: scale by leading
        # coefficient instead so the representative is still canonical
        c0 = den.leading()
    num = UniPoly([x / c0 for x in num.coeffs])
    den = UniPoly([x / c0 for x in den.coeffs])
    return RationalFunc(num, den)


def mat_from_blocks(ring, grid):
    """Assemble a matrix from a 2D grid of Mat blocks (None = zero block).

    Row heights / column widths are inferred from the first non-None block
    in each grid row / column.
    """
    nbr = len(grid)
    nbc = len(grid[0])
    heights = [None] * nbr
    widths = [None] * nbc
    for i in range(nbr):
        for j in range(nbc):
            b = grid[i][j]
            if b is not None:
                if heights[i] is None:
                    heights[i] = b.nrows
                if widths[j] is None:
                    widths[j] = b.ncols
    if any(h is None for h in heights) or any(w is None for w in widths):
        raise ValueError("cannot infer block sizes from all-None row/column")
    rows = [[ring.zero] * sum(widths) for _ in range(sum(heights))]
    roff = 0
    for i in range(nbr):
        coff = 0
        for j in range(nbc):
            b = grid[i][j]
            if b is not None:
                if b.nrows != heights[i] or b.ncols != widths[j]:
                    raise ValueError("block size mismatch")
                for r in range(b.nrows):
                    for c in range(b.ncols):
                        rows[roff + r][coff + c] = b.rows[r][c]
            coff += widths[j]
        roff += heights[i]
    return Mat(ring, rows)


def random_rational(rng, max_abs=9, max_den=9):
    num = rng.randint(-max_abs, max_abs)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def random_poly(rng, max_degree=6, max_abs=9, max_den=6):
    deg = rng.randint(0, max_degree)
    return UniPoly([random_rational(rng, max_abs, max_den) for _ in range(deg + 1)])


def parse_fraction_list(text):
    """Parse a comma-separated list of rationals like ``1/2,-3,5/7``."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ValueError("empty rational list")
    return tuple(Fraction(s) for s in items)
