"""Partitions, nilpotent-orbit bookkeeping, and residue points.

A partition is the Jordan type of a nilpotent/unipotent conjugacy class.
The GL orbit dimension uses the transpose-partition closed form; the
centralizer linear-solve lives in the test suite as an independent oracle.
"""

from dataclasses import dataclass
from fractions import Fraction

# Families of the small group G; c_of_n and orbit_for_H are keyed on these.
G_FAMILIES = ("GL", "Sp", "SOodd", "SOeven")


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def total(self):
        return sum(self.parts)

    def multiplicity(self, part):
        return sum(1 for p in self.parts if p == part)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def to_text(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    @classmethod
    def from_text(cls, text):
        body = text.strip().strip("()")
        return cls(tuple(int(s) for s in body.split(",") if s.strip()))

    def to_json(self):
        return list(self.parts)


def rectangle(part, mult, ones=0):
    """The partition (part^mult 1^ones)."""
    if part < 1:
        raise ValueError("part must be positive")
    return Partition((part,) * mult + (1,) * ones)


def transpose(lam):
    """Conjugate partition (Young-diagram flip); involutive."""
    if not lam.parts:
        return lam
    width = lam.parts[0]
    cols = [0] * width
    for p in lam.parts:
        for i in range(p):
            cols[i] += 1
    return Partition(tuple(cols))


def gl_orbit_dim(lam):
    """Dimension of the GL_N nilpotent orbit of Jordan type lam.

    N^2 minus the centralizer dimension sum((lam^t_i)^2).
    """
    n = lam.total
    return n * n - sum(c * c for c in transpose(lam).parts)


def orbit_validity(lam, family):
    """Whether lam labels a unipotent orbit of the given classical family.

    GL: always.  Sp: every odd part has even multiplicity.  SO (either
    parity): every even part has even multiplicity.  The total must have
    the parity of the family's matrix size.
    """
    if family not in G_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "GL":
        return True
    n = lam.total
    if family == "Sp" or family == "SOeven":
        if n % 2 != 0:
            raise ValueError(f"partition of {n} cannot label a {family} orbit (odd size)")
    if family == "SOodd" and n % 2 == 0:
        raise ValueError(f"partition of {n} cannot label an SOodd orbit (even size)")
    bad_parity = 1 if family == "Sp" else 0
    for part in set(lam.parts):
        if part % 2 == bad_parity and lam.multiplicity(part) % 2 != 0:
            return False
    return True


def c_of_n(family, n):
    """Block size c(n): n for GL, 2n for Sp/SOeven, 2n+1 for SOodd."""
    if family == "GL":
        return n
    if family in ("Sp", "SOeven"):
        return 2 * n
    if family == "SOodd":
        return 2 * n + 1
    raise ValueError(f"unknown family {family!r}")


def orbit_for_H(family, n, m, k):
    """The orbit ((2km-1)^{c(n)} 1^{c(n)}) attached to the doubling group H.

    Its total is 2km*c(n), the matrix size of H; when km = 1 the two runs
    of parts merge into (1^{2c(n)}).
    """
    if min(n, m, k) < 1:
        raise ValueError("n, m, k must be >= 1")
    c = c_of_n(family, n)
    big = 2 * k * m - 1
    lam = rectangle(big, c, ones=c) if big > 1 else Partition((1,) * (2 * c))
    assert lam.total == 2 * k * m * c
    return lam


@dataclass(frozen=True)
class ResiduePoint:
    """Exact multi-residue point: sum zero, consecutive gaps of 1/m."""

    s: tuple
    m: int

    def __post_init__(self):
        s = tuple(Fraction(x) for x in self.s)
        object.__setattr__(self, "s", s)
        if sum(s) != 0:
            raise ValueError("residue point coordinates must sum to zero")
        for i in range(len(s) - 1):
            if self.m * (s[i] - s[i + 1]) != 1:
                raise ValueError(f"gap constraint fails at index {i}")


def residue_point(m, b):
    """The unique point with sum 0 and m(s_i - s_{i+1}) = 1 for all i."""
    if m < 1 or b < 1:
        raise ValueError("m, b must be >= 1")
    coords = tuple(Fraction(b + 1 - 2 * i, 2 * m) for i in range(1, b + 1))
    return ResiduePoint(coords, m)


def residue_point_maximal(k):
    """(2k+1)/(4k) in lowest terms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(2 * k + 1, 4 * k)
