"""Split classical matrix groups over exact rings.

Form convention: the bilinear/alternating form is antidiagonal, so the
standard Borel is upper triangular and parabolic subgroups are block upper
triangular.  For Sp_N the form is J[i, N-1-i] = +1 for i < N/2 and -1
otherwise (0-indexed); for SO_N it is the antidiagonal identity.

A parabolic is recorded by its GL block sizes c_1..c_t plus a central
classical block (possibly of size 0); for Sp/SO the GL blocks reappear
mirrored, and the free coordinates of the unipotent radical are the
positions above the block diagonal with each form-mirrored pair counted
once (self-paired antidiagonal positions are free for Sp, absent for SO).
"""

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .exactalg import FF, Mat, PrimeField

GROUP_FAMILIES = ("GL", "SL", "Sp", "SO")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    size: int

    def __post_init__(self):
        if self.family not in GROUP_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.size < 1:
            raise ValueError("size must be >= 1")
        if self.family == "Sp" and self.size % 2 != 0:
            raise ValueError("Sp needs even size")

    @property
    def has_form(self):
        return self.family in ("Sp", "SO")

    def to_json(self):
        return {"family": self.family, "size": self.size}


def group_dim(spec):
    n = spec.size
    if spec.family == "GL":
        return n * n
    if spec.family == "SL":
        return n * n - 1
    if spec.family == "Sp":
        return n * (n + 1) // 2
    return n * (n - 1) // 2


def form_signs(spec):
    """eps with J[i, N-1-i] = eps[i]; None for GL/SL."""
    if not spec.has_form:
        return None
    n = spec.size
    if spec.family == "SO":
        return (1,) * n
    return tuple(1 if i < n // 2 else -1 for i in range(n))


def form_matrix(spec, ring):
    signs = form_signs(spec)
    if signs is None:
        return None
    n = spec.size
    rows = [[ring.zero] * n for _ in range(n)]
    for i, e in enumerate(signs):
        rows[i][n - 1 - i] = ring.coerce(e)
    return Mat(ring, rows)


def is_member(g, spec):
    """Membership in the group: invertibility, det, and form preservation."""
    if g.nrows != g.ncols or g.nrows != spec.size:
        raise ValueError(f"expected a {spec.size}x{spec.size} matrix, got {g.nrows}x{g.ncols}")
    if spec.family == "GL":
        return g.is_invertible()
    if spec.family == "SL":
        return g.det() == g.ring.one
    j = form_matrix(spec, g.ring)
    if g.transpose() * j * g != j:
        return False
    if spec.family == "SO":
        return g.det() == g.ring.one
    return True


def form_inverse(g, spec):
    """Inverse of a form-preserving element: J^{-1} g^T J."""
    j = form_matrix(spec, g.ring)
    jinv = -j if spec.family == "Sp" else j  # J^2 = -I for Sp, +I for SO
    return jinv * g.transpose() * j


def _mirror(n, coord):
    r, c = coord
    return (n - 1 - c, n - 1 - r)


@dataclass(frozen=True)
class ParabolicSpec:
    ambient: GroupSpec
    gl_blocks: tuple
    central: int
    block_sizes: tuple
    radical_coords: tuple
    radical_dim: int

    def to_json(self):
        return {
            "ambient": self.ambient.to_json(),
            "gl_blocks": list(self.gl_blocks),
            "central": self.central,
            "radical_dim": self.radical_dim,
        }

    @property
    def block_starts(self):
        starts = [0]
        for s in self.block_sizes:
            starts.append(starts[-1] + s)
        return tuple(starts)

    def block_of(self, index):
        acc = 0
        for b, s in enumerate(self.block_sizes):
            acc += s
            if index < acc:
                return b
        raise IndexError(index)


def levi_dim(par):
    d = sum(c * c for c in par.gl_blocks)
    if par.ambient.has_form:
        d *= 1  # each GL block appears once in the Levi
        cen = GroupSpec(par.ambient.family, par.central) if par.central else None
        d += group_dim(cen) if cen else 0
    return d


def parabolic(spec, gl_blocks, central=0):
    """Standard parabolic from GL block sizes and a central classical block.

    For Sp/SO the gl_blocks tile the first half and reappear mirrored; for
    GL the composition gl_blocks (+ central as a last block) tiles directly.
    """
    gl_blocks = tuple(int(b) for b in gl_blocks)
    if any(b < 1 for b in gl_blocks):
        raise ValueError("block sizes must be positive")
    if central < 0:
        raise ValueError("central block size must be >= 0")
    n = spec.size
    if spec.family in ("GL",):
        if sum(gl_blocks) + central != n:
            raise ValueError(f"blocks {gl_blocks} + central {central} do not tile GL_{n}")
        sizes = gl_blocks + ((central,) if central else ())
    elif spec.family in ("Sp", "SO"):
        if 2 * sum(gl_blocks) + central != n:
            raise ValueError(
                f"blocks {gl_blocks} (mirrored) + central {central} do not tile {spec.family}_{n}"
            )
        if spec.family == "Sp" and central % 2 != 0:
            raise ValueError("central symplectic block needs even size")
        if spec.family == "SO" and central % 2 != n % 2:
            raise ValueError("central orthogonal block has wrong parity")
        sizes = gl_blocks + ((central,) if central else ()) + tuple(reversed(gl_blocks))
    else:
        raise ValueError(f"no parabolic support for family {spec.family!r}")

    block_of = []
    for b, s in enumerate(sizes):
        block_of.extend([b] * s)
    coords = []
    if spec.has_form:
        signs = form_signs(spec)
        for r in range(n):
            for c in range(n):
                if block_of[r] >= block_of[c]:
                    continue
                mr, mc = _mirror(n, (r, c))
                if (r, c) == (mr, mc):
                    if spec.family == "Sp":
                        coords.append((r, c))  # antidiagonal entries are free only in Sp
                    continue
                if (r, c) < (mr, mc):
                    coords.append((r, c))
        expected = (group_dim(spec) - _levi_dim_raw(spec, gl_blocks, central)) // 2
    else:
        for r in range(n):
            for c in range(n):
                if block_of[r] < block_of[c]:
                    coords.append((r, c))
        expected = sum(
            sizes[i] * sizes[j] for i in range(len(sizes)) for j in range(i + 1, len(sizes))
        )
    if len(coords) != expected:
        raise AssertionError(
            f"radical coordinate count {len(coords)} != expected dimension {expected}"
        )
    return ParabolicSpec(
        ambient=spec,
        gl_blocks=gl_blocks,
        central=central,
        block_sizes=sizes,
        radical_coords=tuple(sorted(coords)),
        radical_dim=len(coords),
    )


def _levi_dim_raw(spec, gl_blocks, central):
    d = sum(c * c for c in gl_blocks)
    if central:
        d += group_dim(GroupSpec(spec.family, central))
    return d


def in_radical_pattern(g, par):
    """Identity diagonal blocks and zeros below the block diagonal."""
    n = par.ambient.size
    if g.nrows != n or g.ncols != n:
        raise ValueError("size mismatch with parabolic ambient")
    ring = g.ring
    sizes = par.block_sizes
    starts = par.block_starts
    for b, s in enumerate(sizes):
        lo = starts[b]
        for i in range(lo, lo + s):
            for j in range(0, lo + s):
                want = ring.one if i == j else ring.zero
                if j >= lo:
                    if g.rows[i][j] != want:
                        return False
                elif g.rows[i][j] != ring.zero:
                    return False
    return True


def abelianization_coords(par):
    """Canonical coordinates in the first block superdiagonal (U/[U,U] layer)."""
    out = []
    for (r, c) in par.radical_coords:
        if par.block_of(c) == par.block_of(r) + 1:
            out.append((r, c))
    return tuple(out)


def abelianization_image(u, par):
    """The U/[U,U] coordinates of a radical element; adds under products."""
    return tuple(u.rows[r][c] for (r, c) in abelianization_coords(par))


# -- root elements and random generation ------------------------------------


def borel(spec):
    n = spec.size
    if spec.family in ("GL", "SL"):
        base = GroupSpec("GL", n) if spec.family == "SL" else spec
        return parabolic(base, (1,) * n, 0)
    half = n // 2
    return parabolic(spec, (1,) * half, n - 2 * half)


def positive_root_coords(spec):
    return borel(spec).radical_coords


def root_element(spec, ring, coord, x):
    """Unipotent one-parameter element exp(x X_coord) for an upper coordinate.

    For Sp/SO the root space pairs (r,c) with its mirror; the middle-column
    coordinates of odd SO need the quadratic correction term, hence p != 2.
    """
    n = spec.size
    r, c = coord
    if not (0 <= r < c < n):
        raise ValueError(f"not an upper coordinate: {coord}")
    x = ring.coerce(x)
    rows = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    rows[r][c] = x
    if spec.has_form:
        mr, mc = _mirror(n, coord)
        signs = form_signs(spec)
        if (mr, mc) != (r, c):
            y = ring.coerce(-signs[r] * signs[c]) * x if isinstance(ring, PrimeField) else -signs[r] * signs[c] * x
            if isinstance(ring, PrimeField):
                y = (-signs[r] * signs[c] * x) % ring.p
            rows[mr][mc] = y
            if c == mc:  # short root through the middle column: X^2 term survives
                two_inv = ring.inv(ring.coerce(2))
                prod = _ring_mul(ring, x, y)
                rows[r][mc] = _ring_mul(ring, prod, two_inv)
    return Mat(ring, rows)


def _ring_mul(ring, a, b):
    if isinstance(ring, PrimeField):
        return a * b % ring.p
    return a * b


def torus_element(spec, ring, values):
    """Diagonal torus element from nonzero coordinates (length = rank)."""
    values = [ring.coerce(v) for v in values]
    if any(v == ring.zero for v in values):
        raise ValueError("torus coordinates must be nonzero")
    n = spec.size
    if spec.family == "GL":
        if len(values) != n:
            raise ValueError("GL torus needs size-many coordinates")
        return Mat.diag(ring, values)
    if spec.family == "SL":
        if len(values) != n - 1:
            raise ValueError("SL torus needs size-1 coordinates")
        prod = ring.one
        for v in values:
            prod = _ring_mul(ring, prod, v)
        return Mat.diag(ring, values + [ring.inv(prod)])
    half = n // 2
    if len(values) != half:
        raise ValueError(f"{spec.family} torus needs {half} coordinates")
    diag = list(values)
    if n % 2 == 1:
        diag.append(ring.one)
    diag.extend(ring.inv(v) for v in reversed(values))
    return Mat.diag(ring, diag)


def random_element(spec, p, seed, steps=12):
    """Reproducible pseudo-random group element over F_p.

    Product of `steps` random root-subgroup elements (positive or negative
    random root, random parameter) interleaved with random torus elements;
    membership holds by construction.  steps=0 gives the identity.
    """
    ring = FF(p)
    rng = random.Random(seed)
    g = Mat.identity(ring, spec.size)
    coords = positive_root_coords(spec)
    rank = len(torus_rank(spec) * [0])
    for step in range(steps):
        r, c = rng.choice(coords)
        if rng.random() < 0.5:
            r, c = c, r  # negative root: transpose coordinate
        lo, hi = min(r, c), max(r, c)
        x = rng.randrange(p)
        elt = root_element(spec, ring, (lo, hi), x)
        if r > c:
            elt = elt.transpose()
        g = g * elt
        if step % 3 == 2 and rank:
            vals = [rng.randrange(1, p) for _ in range(rank)]
            g = g * torus_element(spec, ring, vals)
    return g


def torus_rank(spec):
    if spec.family == "GL":
        return spec.size
    if spec.family == "SL":
        return spec.size - 1
    return spec.size // 2


def random_radical_element(par, p, seed):
    """Reproducible random element of the unipotent radical over F_p.

    Product over the radical's root elements in a shuffled order with
    random parameters; the block pattern is strictly upper by construction.
    """
    ring = FF(p)
    rng = random.Random(seed)
    g = Mat.identity(ring, par.ambient.size)
    coords = list(par.radical_coords)
    rng.shuffle(coords)
    for coord in coords:
        x = rng.randrange(p)
        if x:
            g = g * root_element(par.ambient, ring, coord, x)
    return g


# -- exhaustive enumeration (brute-force substrate) --------------------------


def gl_order(b, q):
    order = 1
    for i in range(b):
        order *= q**b - q**i
    return order


def sl_order(b, q):
    return gl_order(b, q) // (q - 1)


def sp_order(n, q):
    """Order of Sp_n(F_q), n even."""
    if n % 2 != 0:
        raise ValueError("Sp needs even size")
    half = n // 2
    order = q ** (half * half)
    for i in range(1, half + 1):
        order *= q ** (2 * i) - 1
    return order


def enumerate_gl(b, p):
    """All of GL_b(F_p) as an (order, b, b) int64 array, lexicographic order."""
    fld = FF(p)
    out = []
    for flat in itertools.product(range(p), repeat=b * b):
        rows = [flat[i * b:(i + 1) * b] for i in range(b)]
        if Mat(fld, rows).is_invertible():
            out.append(rows)
    arr = np.array(out, dtype=np.int64)
    assert arr.shape[0] == gl_order(b, p)
    return arr


def np_inverses(batch, p):
    """Inverses of a batch of invertible matrices over F_p."""
    fld = FF(p)
    out = np.empty_like(batch)
    for i in range(batch.shape[0]):
        out[i] = Mat.from_np(fld, batch[i]).inv().as_np()
    return out


def enumerate_symplectic(nn, p, limit=10**7):
    """All of Sp_nn(F_p) by breadth-first closure over root elements.

    Returns an (order, nn, nn) int64 array; raises if the group order would
    exceed `limit`.
    """
    order = sp_order(nn, p)
    if order > limit:
        raise ValueError(f"Sp_{nn}(F_{p}) has order {order} > budget {limit}")
    spec = GroupSpec("Sp", nn)
    ring = FF(p)
    gens = []
    for coord in positive_root_coords(spec):
        e = root_element(spec, ring, coord, 1)
        gens.append(e.as_np())
        gens.append(e.transpose().as_np())
    seen = {}
    ident = np.eye(nn, dtype=np.int64)
    seen[ident.tobytes()] = ident
    frontier = ident[np.newaxis, :, :]
    while frontier.size:
        new = []
        for gen in gens:
            prods = frontier @ gen % p
            for mat in prods:
                key = mat.tobytes()
                if key not in seen:
                    seen[key] = mat
                    new.append(mat)
        frontier = np.array(new, dtype=np.int64) if new else np.empty((0, nn, nn), dtype=np.int64)
    elems = np.array(sorted(seen.values(), key=lambda m: m.tobytes()), dtype=np.int64)
    assert elems.shape[0] == order, f"closure found {elems.shape[0]} of {order}"
    return elems
