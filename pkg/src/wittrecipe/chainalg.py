"""Bounded complexes of finite-rank free modules over integer polynomial
rings, with duals, shifts, cones, Koszul-signed tensor products and
twisted ε-symmetric forms.

Conventions (fixed once, reproduced by the rank-1 divisor instance):
  - homological grading, d lowers the degree;
  - dual: (P^∨)_n = (P_{−n})^*, differential the plain transpose of
    d_{1−n}, so the double dual has identical matrices;
  - shift: (P[k])_n = P_{n−k}, differentials scaled by (−1)^k;
  - cone(f: P → Q): C_n = Q_n ⊕ P_{n−1}, d = [[d_Q, f], [0, −d_P]];
  - tensor: Koszul sign (−1)^i on 1 ⊗ d_Q over P_i;
  - a form of shift i on C is a chain map C → C^∨[i] ⊗ twist, and
    symmetry means transpose(φ_{i−m})·(−1)^{m(i−m)}·(−1)^{i(i+1)/2}
    = ε·φ_m for all m.

Twists are formal rank-1 labels: the geometry is affine and trivialized,
so a twist never changes a matrix, only the bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructuralError, ValidationError
from .matrices import (
    adjugate,
    assemble,
    eye,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_neg,
    mat_scale,
    transpose,
    zeros,
)
from .poly import (
    LocalizedElement,
    PolyElement,
    PolyRing,
    loc_one,
    loc_zero,
    localize,
    is_signed_t_power,
)

Matrix = tuple[tuple[PolyElement, ...], ...]


@dataclass(frozen=True)
class Twist:
    """A formal product of named rank-1 twist generators."""

    exponents: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def trivial() -> "Twist":
        return Twist(())

    @staticmethod
    def generator(name: str) -> "Twist":
        return Twist(((name, 1),))

    def __mul__(self, other: "Twist") -> "Twist":
        acc = dict(self.exponents)
        for name, k in other.exponents:
            acc[name] = acc.get(name, 0) + k
        items = tuple(sorted((n, k) for n, k in acc.items() if k != 0))
        return Twist(items)

    def render(self) -> str:
        if not self.exponents:
            return "1"
        parts = []
        for name, k in self.exponents:
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)


def _check_matrix(ring: PolyRing, m, nrows: int, ncols: int, what: str):
    if len(m) != nrows or any(len(row) != ncols for row in m):
        raise StructuralError(
            f"{what}: expected a {nrows}x{ncols} matrix, got "
            f"{len(m)}x{len(m[0]) if m else 0}"
        )
    for row in m:
        for x in row:
            if not isinstance(x, PolyElement) or x.ring != ring:
                raise StructuralError(f"{what}: entry {x!r} not in {ring.render()}")


@dataclass(frozen=True)
class ChainComplex:
    """A bounded complex of free modules; zero ranks are never stored and
    differentials are kept exactly where both adjacent ranks are positive,
    so equal complexes have identical field values."""

    ring: PolyRing
    ranks: tuple[tuple[int, int], ...]
    diffs: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def build(ring: PolyRing, ranks: dict[int, int],
              diffs: dict[int, Matrix] | None = None) -> "ChainComplex":
        diffs = diffs or {}
        clean_ranks = {int(n): int(r) for n, r in ranks.items() if r}
        for n, r in clean_ranks.items():
            if r < 0:
                raise StructuralError(f"negative rank {r} in degree {n}")
        clean_diffs = {}
        for n in sorted(clean_ranks):
            if n - 1 in clean_ranks:
                m = diffs.get(n)
                if m is None:
                    m = zeros(clean_ranks[n - 1], clean_ranks[n], ring.zero())
                else:
                    m = tuple(tuple(row) for row in m)
                _check_matrix(ring, m, clean_ranks[n - 1], clean_ranks[n],
                              f"differential in degree {n}")
                clean_diffs[n] = m
        for n, m in diffs.items():
            if int(n) not in clean_diffs and not is_zero_matrix(
                tuple(tuple(row) for row in m), ring.zero()
            ):
                raise StructuralError(
                    f"differential in degree {n} between zero modules"
                )
        cx = ChainComplex(
            ring,
            tuple(sorted(clean_ranks.items())),
            tuple(sorted(clean_diffs.items())),
        )
        cx._check_dd()
        return cx

    def _check_dd(self):
        for n in self.degrees():
            if self.rank(n - 1) and self.rank(n) and self.rank(n - 2):
                prod = mat_mul(self.diff(n - 1), self.diff(n), self.ring.zero())
                if not is_zero_matrix(prod, self.ring.zero()):
                    raise ValidationError(
                        f"d∘d ≠ 0 between degrees {n} and {n - 2}"
                    )

    def degrees(self) -> list[int]:
        return [n for n, _ in self.ranks]

    def rank(self, n: int) -> int:
        for m, r in self.ranks:
            if m == n:
                return r
        return 0

    def diff(self, n: int) -> Matrix:
        for m, mat_ in self.diffs:
            if m == n:
                return mat_
        return zeros(self.rank(n - 1), self.rank(n), self.ring.zero())

    def is_zero_complex(self) -> bool:
        return not self.ranks

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in self.ranks)

    def total_rank(self) -> int:
        return sum(r for _, r in self.ranks)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.render(),
            "degrees": {str(n): r for n, r in self.ranks},
            "differentials": {
                str(n): [[x.render() for x in row] for row in m]
                for n, m in self.diffs
            },
        }


def dual(P: ChainComplex) -> ChainComplex:
    ranks = {-n: r for n, r in P.ranks}
    diffs = {}
    for n in list(ranks):
        if (n - 1) in ranks:
            diffs[n] = transpose(P.diff(1 - n))
    return ChainComplex.build(P.ring, ranks, diffs)


def shift(P: ChainComplex, k: int) -> ChainComplex:
    sign = -1 if k % 2 else 1
    ranks = {n + k: r for n, r in P.ranks}
    diffs = {}
    for n, m in P.diffs:
        diffs[n + k] = m if sign == 1 else mat_neg(m)
    return ChainComplex.build(P.ring, ranks, diffs)


@dataclass(frozen=True)
class ChainMap:
    """A degreewise map commuting with the differentials."""

    source: ChainComplex
    target: ChainComplex
    components: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def build(source: ChainComplex, target: ChainComplex,
              components: dict[int, Matrix]) -> "ChainMap":
        if source.ring != target.ring:
            raise StructuralError("chain map across different rings")
        ring = source.ring
        clean = {}
        for n in sorted(set(source.degrees()) | set(components)):
            rs, rt = source.rank(n), target.rank(n)
            m = components.get(n)
            if m is None:
                m = zeros(rt, rs, ring.zero())
            else:
                m = tuple(tuple(row) for row in m)
            _check_matrix(ring, m, rt, rs, f"chain map component in degree {n}")
            if rs and rt:
                clean[n] = m
            elif not is_zero_matrix(m, ring.zero()):
                raise StructuralError(
                    f"chain map component in degree {n} between zero modules"
                )
        f = ChainMap(source, target, tuple(sorted(clean.items())))
        f._check_squares()
        return f

    def component(self, n: int) -> Matrix:
        for m, mat_ in self.components:
            if m == n:
                return mat_
        return zeros(self.target.rank(n), self.source.rank(n),
                     self.source.ring.zero())

    def _check_squares(self):
        ring = self.source.ring
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for n in sorted(degs):
            rs, rt1 = self.source.rank(n), self.target.rank(n - 1)
            if not rs or not rt1:
                continue
            if self.source.rank(n - 1):
                left = mat_mul(self.component(n - 1), self.source.diff(n),
                               ring.zero())
            else:
                left = zeros(rt1, rs, ring.zero())
            if self.target.rank(n):
                right = mat_mul(self.target.diff(n), self.component(n),
                                ring.zero())
            else:
                right = zeros(rt1, rs, ring.zero())
            if left != right:
                raise ValidationError(
                    f"not a chain map: the square at degree {n} fails "
                    f"(f∘d = {left}, d∘f = {right})"
                )


def cone(f: ChainMap) -> ChainComplex:
    """Mapping cone with C_n = Q_n ⊕ P_{n−1}."""
    P, Q = f.source, f.target
    ring = P.ring
    ranks = {}
    degs = set(Q.degrees()) | {n + 1 for n in P.degrees()}
    for n in degs:
        r = Q.rank(n) + P.rank(n - 1)
        if r:
            ranks[n] = r
    diffs = {}
    for n in ranks:
        if (n - 1) not in ranks:
            continue
        blocks = {}
        if Q.rank(n - 1) and Q.rank(n):
            blocks[(0, 0)] = Q.diff(n)
        if Q.rank(n - 1) and P.rank(n - 1):
            blocks[(0, 1)] = f.component(n - 1)
        if P.rank(n - 2) and P.rank(n - 1):
            blocks[(1, 1)] = mat_neg(P.diff(n - 1))
        diffs[n] = assemble(
            blocks,
            (Q.rank(n - 1), P.rank(n - 2)),
            (Q.rank(n), P.rank(n - 1)),
            ring.zero(),
        )
    return ChainComplex.build(ring, ranks, diffs)


def cone_contraction(f: ChainMap) -> dict[int, Matrix]:
    """The canonical contracting homotopy [[0, 0], [f⁻¹, 0]] of the cone
    of a degreewise-unimodular chain isomorphism."""
    P, Q = f.source, f.target
    ring = P.ring
    h = {}
    degs = set(Q.degrees()) | {n + 1 for n in P.degrees()}
    for n in degs:
        cn = Q.rank(n) + P.rank(n - 1)
        cn1 = Q.rank(n + 1) + P.rank(n)
        if not cn or not cn1:
            continue
        blocks = {}
        if P.rank(n) and Q.rank(n):
            blocks[(1, 0)] = invert_unimodular(f.component(n), ring)
        h[n] = assemble(
            blocks, (Q.rank(n + 1), P.rank(n)), (Q.rank(n), P.rank(n - 1)),
            ring.zero(),
        )
    return h


def is_contraction(C: ChainComplex, h: dict[int, Matrix]) -> bool:
    """Check dh + hd = id in every degree of C."""
    ring = C.ring
    for n in C.degrees():
        r = C.rank(n)
        acc = zeros(r, r, ring.zero())
        if C.rank(n + 1):
            hn = h.get(n)
            if hn is None:
                return False
            acc = mat_add(acc, mat_mul(C.diff(n + 1), hn, ring.zero()))
        if C.rank(n - 1):
            hn1 = h.get(n - 1)
            if hn1 is None:
                return False
            acc = mat_add(acc, mat_mul(hn1, C.diff(n), ring.zero()))
        if acc != eye(r, ring.one(), ring.zero()):
            return False
    return True


def _kron(a, b, ring: PolyRing):
    """Kronecker product with the left factor's index major."""
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    rows = []
    for i in range(ra):
        for k in range(rb):
            row = []
            for j in range(ca):
                for l in range(cb):
                    row.append(a[i][j] * b[k][l])
            rows.append(tuple(row))
    return tuple(rows)


def tensor(P: ChainComplex, Q: ChainComplex) -> ChainComplex:
    """Tensor product with basis blocks P_i ⊗ Q_{n−i} ordered by i
    ascending and the pair index (p, q) ordered p-major."""
    if P.ring != Q.ring:
        raise StructuralError(
            f"tensor across different rings {P.ring.render()} and "
            f"{Q.ring.render()}"
        )
    ring = P.ring

    def blocks_of(n):
        return [i for i in P.degrees() if Q.rank(n - i)]

    ranks = {}
    lo = min(P.degrees(), default=0) + min(Q.degrees(), default=0)
    hi = max(P.degrees(), default=0) + max(Q.degrees(), default=0)
    for n in range(lo, hi + 1):
        r = sum(P.rank(i) * Q.rank(n - i) for i in blocks_of(n))
        if r:
            ranks[n] = r
    diffs = {}
    for n in ranks:
        if (n - 1) not in ranks:
            continue
        src_blocks = blocks_of(n)
        dst_blocks = blocks_of(n - 1)
        blocks = {}
        for sj, i in enumerate(src_blocks):
            j = n - i
            # d_P ⊗ 1 lands in the (i−1, j) block.
            if (i - 1) in dst_blocks and P.rank(i - 1):
                di = dst_blocks.index(i - 1)
                blocks[(di, sj)] = _kron(
                    P.diff(i), eye(Q.rank(j), ring.one(), ring.zero()), ring
                )
            # (−1)^i 1 ⊗ d_Q lands in the (i, j−1) block.
            if i in dst_blocks and Q.rank(j - 1):
                di = dst_blocks.index(i)
                m = _kron(
                    eye(P.rank(i), ring.one(), ring.zero()), Q.diff(j), ring
                )
                blocks[(di, sj)] = m if i % 2 == 0 else mat_neg(m)
        diffs[n] = assemble(
            blocks,
            tuple(P.rank(i) * Q.rank(n - 1 - i) for i in dst_blocks),
            tuple(P.rank(i) * Q.rank(n - i) for i in src_blocks),
            ring.zero(),
        )
    return ChainComplex.build(ring, ranks, diffs)


def _tau(i: int) -> int:
    # (−1)^{i(i+1)/2}, the global sign of the i-shifted symmetry.
    return -1 if (i * (i + 1) // 2) % 2 else 1


@dataclass(frozen=True)
class SymmetricPair:
    """A possibly degenerate ε-symmetric form of shift i on a complex,
    i.e. a chain map complex → dual(complex)[i] ⊗ twist with the
    symmetry property of the module conventions."""

    complex: ChainComplex
    twist: Twist
    shift: int
    form: tuple[tuple[int, Matrix], ...]
    epsilon: int

    @staticmethod
    def build(complex_: ChainComplex, twist: Twist, shift_: int,
              form: dict[int, Matrix], epsilon: int = 1) -> "SymmetricPair":
        pair = SymmetricPair(
            complex_, twist, shift_,
            _clean_form(complex_, shift_, form), epsilon,
        )
        pair._validate()
        return pair

    def form_at(self, n: int) -> Matrix:
        for m, mat_ in self.form:
            if m == n:
                return mat_
        return zeros(self.complex.rank(self.shift - n), self.complex.rank(n),
                     self.complex.ring.zero())

    def dual_target(self) -> ChainComplex:
        return shift(dual(self.complex), self.shift)

    def as_chain_map(self) -> ChainMap:
        return ChainMap.build(self.complex, self.dual_target(), dict(self.form))

    def _validate(self):
        if self.epsilon not in (1, -1):
            raise ValidationError("epsilon must be ±1")
        self.as_chain_map()  # chain-map condition
        ring = self.complex.ring
        i = self.shift
        for m in self.complex.degrees():
            phi_m = self.form_at(m)
            phi_dual = transpose(self.form_at(i - m))
            sign = _tau(i) * (-1 if (m * (i - m)) % 2 else 1) * self.epsilon
            want = phi_m if sign == 1 else mat_neg(phi_m)
            got = phi_dual if phi_dual else zeros(
                self.complex.rank(i - m), self.complex.rank(m), ring.zero()
            )
            if self.complex.rank(m) and self.complex.rank(i - m) and got != want:
                raise ValidationError(
                    f"form is not {self.epsilon}-symmetric in degree {m}"
                )

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "twist": self.twist.render(),
            "shift": self.shift,
            "epsilon": self.epsilon,
            "form": {
                str(n): [[x.render() for x in row] for row in m]
                for n, m in self.form
            },
        }


def _clean_form(complex_: ChainComplex, shift_: int,
                form: dict[int, Matrix]) -> tuple:
    ring = complex_.ring
    clean = {}
    for n in complex_.degrees():
        rs = complex_.rank(n)
        rt = complex_.rank(shift_ - n)
        m = form.get(n)
        if m is None:
            m = zeros(rt, rs, ring.zero())
        else:
            m = tuple(tuple(row) for row in m)
        _check_matrix(ring, m, rt, rs, f"form component in degree {n}")
        if rs and rt:
            clean[n] = m
    for n, m in form.items():
        if int(n) not in clean and not is_zero_matrix(
            tuple(tuple(row) for row in m), ring.zero()
        ):
            raise StructuralError(f"form component in degree {n} out of range")
    return tuple(sorted(clean.items()))


class SymmetricSpace(SymmetricPair):
    """A SymmetricPair whose form is a chain isomorphism: degreewise
    square with unit determinant (±1 over a polynomial ring)."""

    @staticmethod
    def build(complex_: ChainComplex, twist: Twist, shift_: int,
              form: dict[int, Matrix], epsilon: int = 1) -> "SymmetricSpace":
        space = SymmetricSpace(
            complex_, twist, shift_,
            _clean_form(complex_, shift_, form), epsilon,
        )
        space._validate()
        space._validate_nondegenerate()
        return space

    def _validate_nondegenerate(self):
        from .matrices import det
        ring = self.complex.ring
        for n in self.complex.degrees():
            if self.complex.rank(n) != self.complex.rank(self.shift - n):
                raise ValidationError(
                    f"form cannot be an isomorphism: ranks in degrees {n} and "
                    f"{self.shift - n} differ"
                )
            d = det(self.form_at(n), ring.zero(), ring.one())
            if not d.is_unit():
                raise ValidationError(
                    f"form determinant {d.render()} in degree {n} is not a "
                    f"unit of {ring.render()}"
                )


def invert_unimodular(m: Matrix, ring: PolyRing) -> Matrix:
    """Inverse of a square polynomial matrix with determinant ±1."""
    from .matrices import det
    d = det(m, ring.zero(), ring.one())
    if not d.is_unit():
        raise ValidationError(
            f"matrix determinant {d.render()} is not a unit of {ring.render()}"
        )
    adj = adjugate(m, ring.zero(), ring.one())
    return adj if d == ring.one() else mat_neg(adj)


def symmetric_cone(pair: SymmetricPair) -> SymmetricSpace:
    """The cone of the form of a symmetric pair carrying its metabolic
    form: blocks ∓id against the dual cone's block decomposition, with
    signs fixed by the rank-1 divisor instance (components −1, 1)."""
    i = pair.shift
    C = pair.complex
    ring = C.ring
    psi = pair.as_chain_map()
    Cn = cone(psi)
    target = psi.target  # dual(C)[i]
    form = {}
    for n in Cn.degrees():
        rows = (C.rank(n - 1), C.rank(i - n))
        cols = (target.rank(n), C.rank(n - 1))
        blocks = {}
        if C.rank(n - 1):
            blocks[(0, 1)] = mat_scale(
                ring.constant(-pair.epsilon),
                eye(C.rank(n - 1), ring.one(), ring.zero()),
            )
        if C.rank(i - n):
            blocks[(1, 0)] = eye(C.rank(i - n), ring.one(), ring.zero())
        form[n] = assemble(blocks, rows, cols, ring.zero())
    return SymmetricSpace.build(Cn, pair.twist, i + 1, form, pair.epsilon)


def tensor_forms(a: SymmetricPair, b: SymmetricPair) -> SymmetricPair:
    """Product form ψ_a ⊗ ψ_b on the tensor complex: twists multiply,
    shifts add, epsilons multiply, Koszul signs from the graded swap."""
    if a.complex.ring != b.complex.ring:
        raise StructuralError("tensor of forms across different rings")
    ring = a.complex.ring
    A, B = a.complex, b.complex
    ia, ib = a.shift, b.shift
    T = tensor(A, B)
    i = ia + ib

    def blocks_of(n):
        return [p for p in A.degrees() if B.rank(n - p)]

    form = {}
    for n in T.degrees():
        src_blocks = blocks_of(n)
        dst_blocks = blocks_of(i - n)  # blocks of T_{i−n}, dualized in order
        blocks = {}
        for sj, p in enumerate(src_blocks):
            q = n - p
            pd = ia - p
            if pd not in dst_blocks:
                continue
            if not (A.rank(pd) and B.rank(ib - q)):
                continue
            di = dst_blocks.index(pd)
            m = _kron(a.form_at(p), b.form_at(q), ring)
            if (q * (ia - p)) % 2:
                m = mat_neg(m)
            blocks[(di, sj)] = m
        form[n] = assemble(
            blocks,
            tuple(A.rank(p) * B.rank(i - n - p) for p in dst_blocks),
            tuple(A.rank(p) * B.rank(n - p) for p in src_blocks),
            ring.zero(),
        )
    return SymmetricPair.build(
        T, a.twist * b.twist, i, form, a.epsilon * b.epsilon
    )


# ---------------------------------------------------------------------------
# Localization at t and witnessed isometry checking.


def loc_matrix(m: Matrix, t: PolyElement):
    return tuple(tuple(localize(x, t) for x in row) for row in m)


def _loc_is_unit_det(m, t: PolyElement) -> bool:
    from .matrices import det
    d = det(m, loc_zero(t), loc_one(t))
    return (not d.is_zero()) and is_signed_t_power(d.numerator, t)


def localize_check_isometric(
    a: SymmetricPair,
    b: SymmetricPair,
    t: PolyElement,
    witness_p: dict[int, tuple],
    witness_t: LocalizedElement,
) -> bool:
    """Decide p^T · φ_a · p = witness_t · φ_b over the localization at t,
    where p is the given degreewise witness b → a.

    The witness must be degreewise square with determinant ±t^k (a unit
    of the localization); twist labels are not compared, the scalar
    witness embodies the change of trivialization.
    """
    if a.complex.ring != b.complex.ring:
        raise StructuralError("isometry check across different rings")
    if a.shift != b.shift:
        raise ValidationError(
            f"shifts differ ({a.shift} vs {b.shift}); no isometry possible"
        )
    if not witness_t.is_unit():
        raise ValidationError(
            f"witness scalar {witness_t.render()} is not a unit of the "
            f"localization"
        )
    degrees = sorted(set(a.complex.degrees()) | set(b.complex.degrees()))
    for n in degrees:
        ra, rb = a.complex.rank(n), b.complex.rank(n)
        if ra != rb:
            raise ValidationError(
                f"witness cannot be square in degree {n}: ranks {rb} -> {ra}"
            )
        if ra == 0:
            continue
        p = witness_p.get(n)
        if p is None:
            raise ValidationError(f"missing witness component in degree {n}")
        if len(p) != ra or any(len(row) != rb for row in p):
            raise ValidationError(f"witness in degree {n} is not {ra}x{rb}")
        if not _loc_is_unit_det(p, t):
            raise ValidationError(
                f"witness determinant in degree {n} is not ±t^k"
            )
    z = loc_zero(t)
    # Chain-map condition for the witness.
    for n in degrees:
        if not b.complex.rank(n) or not b.complex.rank(n - 1):
            continue
        left = mat_mul(witness_p[n - 1], loc_matrix(b.complex.diff(n), t), z)
        right = mat_mul(loc_matrix(a.complex.diff(n), t), witness_p[n], z)
        if left != right:
            return False
    # Form comparison p^T φ_a p = w · φ_b degree by degree.
    i = a.shift
    for m in degrees:
        if not b.complex.rank(m) or not b.complex.rank(i - m):
            continue
        lhs = mat_mul(
            transpose(witness_p[i - m]),
            mat_mul(loc_matrix(a.form_at(m), t), witness_p[m], z),
            z,
        )
        rhs = tuple(
            tuple(witness_t * x for x in row)
            for row in loc_matrix(b.form_at(m), t)
        )
        if lhs != rhs:
            return False
    return True
