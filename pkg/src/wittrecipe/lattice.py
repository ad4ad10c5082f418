"""Free abelian groups with named generators, integer matrices between
them, and the mod-2 reasoning that drives all twist parity decisions.

Picard groups of the schemes in a blow-up diagram are modeled as
instances of PicLattice; line-bundle classes are integer coordinate
vectors.  Integers are Python ints throughout, so coordinates such as
lambda(L) are unbounded.  Lattices compare by identity, never by shape,
so a rank-1 Pic(X) and a rank-1 Pic(U) cannot be mixed accidentally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import StructuralError
from .matrices import adjugate, det, eye, mat, mat_mul, mat_vec

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class PicLattice:
    """A finitely generated free abelian group with labeled basis."""

    name: str
    generators: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise StructuralError(
                f"{self.name}: generator labels must be pairwise distinct, "
                f"got {list(self.generators)}"
            )

    @property
    def rank(self) -> int:
        return len(self.generators)

    def element(self, coords) -> "PicElement":
        return PicElement(self, tuple(int(c) for c in coords))

    def zero(self) -> "PicElement":
        return self.element((0,) * self.rank)

    def basis(self, i: int) -> "PicElement":
        return self.element(tuple(1 if j == i else 0 for j in range(self.rank)))

    def __repr__(self):
        return f"PicLattice({self.name!r}, rank {self.rank})"


@dataclass(frozen=True)
class PicElement:
    """An element of a PicLattice, i.e. a line-bundle class."""

    lattice: PicLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.lattice.rank:
            raise StructuralError(
                f"coordinate vector of length {len(self.coords)} does not fit "
                f"{self.lattice!r}"
            )

    def _require_same_lattice(self, other: "PicElement", what: str):
        if self.lattice is not other.lattice:
            raise StructuralError(
                f"{what}: elements live on different lattices "
                f"{self.lattice!r} and {other.lattice!r}"
            )

    def __add__(self, other: "PicElement") -> "PicElement":
        self._require_same_lattice(other, "addition")
        return PicElement(
            self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "PicElement") -> "PicElement":
        self._require_same_lattice(other, "subtraction")
        return PicElement(
            self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "PicElement":
        return PicElement(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "PicElement":
        return PicElement(self.lattice, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def render(self) -> str:
        parts = []
        for c, g in zip(self.coords, self.lattice.generators):
            if c == 0:
                continue
            if c == 1:
                term = g
            elif c == -1:
                term = f"-{g}"
            else:
                term = f"{c}·{g}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += f" - {term[1:]}"
            else:
                out += f" + {term}"
        return out

    def __repr__(self):
        return f"<{self.render()} in {self.lattice.name}>"


@dataclass(frozen=True, eq=False)
class LatticeHom:
    """A homomorphism of free abelian groups as an integer matrix
    (target-rank x source-rank, acting on column vectors)."""

    source: PicLattice
    target: PicLattice
    matrix: IntMatrix

    def __post_init__(self):
        m = mat(tuple(tuple(int(x) for x in row) for row in self.matrix))
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(
            len(row) != self.source.rank for row in m
        ):
            raise StructuralError(
                f"matrix of shape {len(m)}x{len(m[0]) if m else 0} does not "
                f"define a map {self.source!r} -> {self.target!r}"
            )

    @staticmethod
    def identity(lat: PicLattice) -> "LatticeHom":
        return LatticeHom(lat, lat, eye(lat.rank, 1, 0))

    def __repr__(self):
        return f"LatticeHom({self.source.name} -> {self.target.name}, {self.matrix})"


def apply(h: LatticeHom, v: PicElement) -> PicElement:
    """Apply a lattice homomorphism to an element (matrix-vector product)."""
    if v.lattice is not h.source:
        raise StructuralError(
            f"cannot apply {h!r} to an element of {v.lattice!r}"
        )
    return PicElement(h.target, mat_vec(h.matrix, v.coords, 0))


def compose(g: LatticeHom, h: LatticeHom) -> LatticeHom:
    """Composite g∘h, defined when h.target = g.source."""
    if h.target is not g.source:
        raise StructuralError(
            f"cannot compose {g!r} after {h!r}: middle lattices differ"
        )
    return LatticeHom(h.source, g.target, mat_mul(g.matrix, h.matrix, 0))


def equal_mod2(a: PicElement, b: PicElement) -> bool:
    """True iff a and b differ by twice a lattice element."""
    a._require_same_lattice(b, "mod-2 comparison")
    return all((x - y) % 2 == 0 for x, y in zip(a.coords, b.coords))


def mod2_rank(m: IntMatrix) -> int:
    """Rank of an integer matrix over the field with two elements."""
    rows = [[x & 1 for x in row] for row in m]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                rows[r] = [(x ^ y) for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def coker_mod2_order(h: LatticeHom) -> int:
    """Order of coker(h) ⊗ Z/2, i.e. 2^(target rank − mod-2 rank)."""
    return 2 ** (h.target.rank - mod2_rank(h.matrix))


def solve_mod2(m: IntMatrix, b: tuple[int, ...]) -> tuple[int, ...] | None:
    """One solution of m·x ≡ b (mod 2) with free variables set to 0,
    or None if the system is inconsistent."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    aug = [[x & 1 for x in row] + [b[i] & 1] for i, row in enumerate(m)]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        for r in range(nrows):
            if r != rank and aug[r][col]:
                aug[r] = [(x ^ y) for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, nrows):
        if aug[r][ncols]:
            return None
    x = [0] * ncols
    for r, col in enumerate(pivots):
        x[col] = aug[r][ncols]
    return tuple(x)


def is_unimodular(m: IntMatrix) -> bool:
    nrows = len(m)
    if any(len(row) != nrows for row in m):
        return False
    return abs(det(m, 0, 1)) == 1


def inv_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant ±1."""
    d = det(m, 0, 1)
    if abs(d) != 1:
        raise StructuralError(f"matrix {m} is not invertible over the integers")
    return mat_scale_int(d, adjugate(m, 0, 1))


def mat_scale_int(c: int, m: IntMatrix) -> IntMatrix:
    return tuple(tuple(c * x for x in row) for row in m)


def kernel_basis(m: IntMatrix, ncols: int) -> list[tuple[int, ...]]:
    """Integer basis of the rational kernel of m, one primitive vector per
    free column of the reduced row echelon form."""
    rows = [[Fraction(x) for x in row] for row in m]
    nrows = len(rows)
    pivots: dict[int, int] = {}
    rank = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, nrows) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        pivots[col] = rank
        rank += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for col, r in pivots.items():
            vec[col] = -rows[r][free]
        denom = 1
        for x in vec:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ints = [int(x * denom) for x in vec]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        basis.append(tuple(ints))
    return basis
