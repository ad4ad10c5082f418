import random

import pytest

from wittrecipe.errors import StructuralError
from wittrecipe.lattice import (
    LatticeHom,
    PicLattice,
    apply,
    coker_mod2_order,
    compose,
    equal_mod2,
    kernel_basis,
    mod2_rank,
)


def lat(rank, name="L"):
    return PicLattice(name, tuple(f"g{i}" for i in range(rank)))


class TestApply:
    def test_identity(self):
        a = lat(2)
        h = LatticeHom.identity(a)
        assert apply(h, a.element((3, -1))).coords == (3, -1)

    def test_pi_star_shape(self):
        # The blow-up column map Pic(X) -> Pic(X) ⊕ Z, L ↦ (L, 0).
        a, b = lat(2, "PicX"), lat(3, "PicBl")
        h = LatticeHom(a, b, ((1, 0), (0, 1), (0, 0)))
        assert apply(h, a.element((2, 5))).coords == (2, 5, 0)

    def test_linearity_column(self):
        a, b = lat(1), lat(2, "M")
        h = LatticeHom(a, b, ((1,), (3,)))
        assert apply(h, a.element((2,))).coords == (2, 6)

    def test_lattice_mismatch(self):
        a, b = lat(1, "A"), lat(1, "B")
        h = LatticeHom.identity(a)
        with pytest.raises(StructuralError) as err:
            apply(h, b.element((1,)))
        assert "A" in str(err.value) and "B" in str(err.value)

    def test_additivity_randomized(self):
        rng = random.Random(11)
        for _ in range(50):
            ra, rb = rng.randint(0, 3), rng.randint(0, 3)
            a, b = lat(ra, "Ar"), lat(rb, "Br")
            h = LatticeHom(a, b, tuple(
                tuple(rng.randint(-4, 4) for _ in range(ra)) for _ in range(rb)
            ))
            v = a.element(tuple(rng.randint(-9, 9) for _ in range(ra)))
            w = a.element(tuple(rng.randint(-9, 9) for _ in range(ra)))
            assert apply(h, v + w) == apply(h, v) + apply(h, w)


class TestCompose:
    def test_row_times_column_is_one(self):
        # (1 0) ∘ (1; λ) = (1) for any λ.
        x, bl, one = lat(1, "X"), lat(2, "Bl"), lat(1, "O")
        row = LatticeHom(bl, one, ((1, 0),))
        for lam in (-2, 0, 3):
            col = LatticeHom(x, bl, ((1,), (lam,)))
            assert compose(row, col).matrix == ((1,),)

    def test_identity_neutral(self):
        a, b = lat(2, "A2"), lat(2, "B2")
        h = LatticeHom(a, b, ((1, 2), (0, 5)))
        assert compose(LatticeHom.identity(b), h).matrix == h.matrix
        assert compose(h, LatticeHom.identity(a)).matrix == h.matrix

    def test_scalars(self):
        a, b, c = lat(1, "A1"), lat(1, "B1"), lat(1, "C1")
        g = LatticeHom(b, c, ((2,),))
        h = LatticeHom(a, b, ((3,),))
        assert compose(g, h).matrix == ((6,),)

    def test_mismatch(self):
        a, b, c = lat(1, "Am"), lat(2, "Bm"), lat(1, "Cm")
        g = LatticeHom(a, c, ((1,),))
        h = LatticeHom(a, b, ((1,), (0,)))
        with pytest.raises(StructuralError):
            compose(g, h)

    def test_associativity_randomized(self):
        rng = random.Random(12)
        for _ in range(30):
            ranks = [rng.randint(1, 3) for _ in range(4)]
            lats = [lat(r, f"N{i}") for i, r in enumerate(ranks)]
            homs = [
                LatticeHom(lats[i], lats[i + 1], tuple(
                    tuple(rng.randint(-3, 3) for _ in range(ranks[i]))
                    for _ in range(ranks[i + 1])
                ))
                for i in range(3)
            ]
            left = compose(compose(homs[2], homs[1]), homs[0])
            right = compose(homs[2], compose(homs[1], homs[0]))
            assert left.matrix == right.matrix


class TestEqualMod2:
    def test_even_differences(self):
        a = lat(2)
        assert equal_mod2(a.element((1, 3)), a.element((3, 1)))

    def test_odd_difference(self):
        a = lat(2)
        assert not equal_mod2(a.element((1, 2)), a.element((1, 3)))

    def test_consecutive_never_congruent(self):
        # (0, c−1) vs (0, c) differ by 1 in the last coordinate.
        a = lat(2)
        for c in range(2, 9):
            assert not equal_mod2(a.element((0, c - 1)), a.element((0, c)))

    def test_equivalence_and_square_invariance(self):
        rng = random.Random(13)
        a = lat(3)
        for _ in range(50):
            u = a.element(tuple(rng.randint(-9, 9) for _ in range(3)))
            v = a.element(tuple(rng.randint(-9, 9) for _ in range(3)))
            w = a.element(tuple(rng.randint(-9, 9) for _ in range(3)))
            assert equal_mod2(u, u)
            assert equal_mod2(u, v) == equal_mod2(v, u)
            assert equal_mod2(u, u + 2 * w)
            if equal_mod2(u, v) and equal_mod2(v, w):
                assert equal_mod2(u, w)


def brute_force_coker_mod2(matrix, target_rank):
    """Enumerate F2^target modulo the column span of the matrix."""
    cols = [tuple(matrix[i][j] & 1 for i in range(target_rank))
            for j in range(len(matrix[0]) if matrix else 0)]
    span = {(0,) * target_rank}
    for _ in range(target_rank + 1):
        new = set(span)
        for v in span:
            for c in cols:
                new.add(tuple((a + b) & 1 for a, b in zip(v, c)))
        if new == span:
            break
        span = new
    return 2 ** target_rank // len(span)


class TestCokerMod2:
    def test_pi_star_column(self):
        a, b = lat(1, "X"), lat(2, "Bl")
        h = LatticeHom(a, b, ((1,), (0,)))
        assert coker_mod2_order(h) == 2

    def test_identity(self):
        a = lat(3)
        assert coker_mod2_order(LatticeHom.identity(a)) == 1

    def test_zero_map(self):
        a, b = lat(1, "Za"), lat(1, "Zb")
        assert coker_mod2_order(LatticeHom(a, b, ((0,),))) == 2

    def test_against_enumeration(self):
        rng = random.Random(14)
        for _ in range(60):
            ra, rb = rng.randint(0, 3), rng.randint(1, 3)
            a, b = lat(ra, "Ea"), lat(rb, "Eb")
            m = tuple(
                tuple(rng.randint(-2, 2) for _ in range(ra)) for _ in range(rb)
            )
            h = LatticeHom(a, b, m)
            assert coker_mod2_order(h) == brute_force_coker_mod2(m, rb)
            assert coker_mod2_order(h) == 2 ** (rb - mod2_rank(m))


class TestKernel:
    def test_open_restriction_kernel(self):
        # [I 0] has kernel spanned by the last basis vector.
        basis = kernel_basis(((1, 0, 0), (0, 1, 0)), 3)
        assert basis == [(0, 0, 1)]

    def test_full_rank_kernel_empty(self):
        assert kernel_basis(((2, 1), (1, 1)), 2) == []


class TestLatticeIdentity:
    def test_same_shape_distinct_lattices(self):
        a = PicLattice("PicX", ("H",))
        b = PicLattice("PicU", ("H",))
        assert a != b
        with pytest.raises(StructuralError):
            a.element((1,)) + b.element((1,))

    def test_duplicate_generators_rejected(self):
        with pytest.raises(StructuralError):
            PicLattice("bad", ("H", "H"))
