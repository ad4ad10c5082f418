import random
from fractions import Fraction

import pytest

from support import random_complex, random_poly, random_unimodular
from wittrecipe.chainalg import (
    ChainComplex,
    ChainMap,
    SymmetricPair,
    SymmetricSpace,
    Twist,
    cone,
    cone_contraction,
    dual,
    is_contraction,
    localize_check_isometric,
    shift,
    symmetric_cone,
    tensor,
    tensor_forms,
)
from wittrecipe.errors import StructuralError, ValidationError
from wittrecipe.poly import (
    LocalizedElement,
    PolyRing,
    exact_div,
    loc_one,
    loc_zero,
    localize,
    parse_ring,
    t_inverse,
)

ZX = PolyRing(("x",))
ZXY = PolyRing(("x", "y"))
Z = PolyRing(())


class TestPoly:
    def test_parse_examples(self):
        p = ZXY.parse("x*y + 3")
        assert p.render() == "x*y + 3"
        assert Z.parse("-1").render() == "-1"
        assert ZX.parse("x^2").render() == "x^2"
        assert ZX.parse("x**2") == ZX.parse("x^2")
        assert ZX.parse("(x+1)*(x-1)") == ZX.parse("x^2 - 1")

    def test_parse_round_trip_random(self):
        rng = random.Random(31)
        for _ in range(60):
            p = random_poly(rng, ZXY, max_terms=4)
            assert ZXY.parse(p.render()) == p

    def test_ring_specs(self):
        assert parse_ring("Z").nvars == 0
        assert parse_ring("Z[x]").variables == ("x",)
        assert parse_ring("Z[x, y]").variables == ("x", "y")
        with pytest.raises(ValidationError):
            parse_ring("Q[x]")

    def test_exact_division(self):
        assert exact_div(ZX.parse("x^2 - 1"), ZX.parse("x + 1")) == \
            ZX.parse("x - 1")
        assert exact_div(ZXY.parse("x"), ZXY.parse("y")) is None
        assert exact_div(Z.constant(6), Z.constant(2)) == Z.constant(3)
        assert exact_div(Z.constant(3), Z.constant(2)) is None

    def test_units(self):
        assert Z.constant(-1).is_unit()
        assert not Z.constant(2).is_unit()
        assert not ZX.parse("x").is_unit()

    def test_ring_mismatch(self):
        with pytest.raises(StructuralError):
            ZX.parse("x") + ZXY.parse("x")


class TestLocalized:
    def test_normalization(self):
        t = ZX.parse("x")
        e = LocalizedElement.make(t, ZX.parse("x^2"), 1)
        assert e.numerator == ZX.parse("x") and e.t_power == 0

    def test_arithmetic(self):
        t = ZX.parse("x")
        inv = t_inverse(t)
        assert (inv + inv).numerator == ZX.constant(2)
        assert (inv + inv).t_power == 1
        assert inv * localize(t, t) == loc_one(t)

    def test_spec_unit_computation(self):
        # t · (1/t)² = 1/t, cross-checked with plain fractions at t = 2.
        t = Z.constant(2)
        inv = t_inverse(t)
        lhs = localize(t, t) * inv * inv
        assert lhs == inv
        assert Fraction(2) * Fraction(1, 2) ** 2 == Fraction(1, 2)


def two_term(ring, p, base=0):
    return ChainComplex.build(ring, {base: 1, base + 1: 1},
                              {base + 1: ((p,),)})


class TestDual:
    def test_rank_one_example(self):
        # dual of [A --t--> A] in degrees 1→0 sits in degrees 0→−1 with
        # the transposed (unsigned) differential.
        P = two_term(ZX, ZX.parse("x"))
        D = dual(P)
        assert D.rank(0) == 1 and D.rank(-1) == 1
        assert D.diff(0) == ((ZX.parse("x"),),)

    def test_degree_zero_self_shape(self):
        P = ChainComplex.build(ZX, {0: 3})
        assert dual(P).ranks == P.ranks

    def test_involution_random(self):
        rng = random.Random(32)
        for _ in range(40):
            P = random_complex(rng, ZXY)
            assert dual(dual(P)) == P

    def test_dd_zero_preserved(self):
        rng = random.Random(33)
        for _ in range(20):
            dual(random_complex(rng, ZXY))  # constructor re-checks d∘d = 0


class TestShift:
    def test_round_trip(self):
        rng = random.Random(34)
        for _ in range(20):
            P = random_complex(rng, ZX)
            assert shift(shift(P, 1), -1) == P

    def test_sign_rule(self):
        P = two_term(ZX, ZX.parse("x"))
        S = shift(P, 1)
        assert S.rank(2) == 1 and S.rank(1) == 1
        assert S.diff(2) == ((ZX.parse("-x"),),)

    def test_zero_shift(self):
        P = two_term(ZX, ZX.parse("x"))
        assert shift(P, 0) == P


class TestCone:
    def test_cone_of_multiplication(self):
        A = ChainComplex.build(ZX, {0: 1})
        f = ChainMap.build(A, A, {0: ((ZX.parse("x"),),)})
        C = cone(f)
        assert C == two_term(ZX, ZX.parse("x"))

    def test_cone_of_identity_contractible(self):
        A = ChainComplex.build(Z, {0: 2})
        f = ChainMap.build(A, A, {0: ((Z.one(), Z.zero()),
                                      (Z.zero(), Z.one()))})
        C = cone(f)
        h = cone_contraction(f)
        assert is_contraction(C, h)

    def test_cone_of_zero_map_is_shift(self):
        rng = random.Random(35)
        for _ in range(15):
            P = random_complex(rng, ZX)
            zero_cx = ChainComplex.build(ZX, {})
            f = ChainMap.build(P, zero_cx, {})
            assert cone(f) == shift(P, 1)

    def test_cone_of_random_isomorphism_contractible(self):
        rng = random.Random(36)
        for _ in range(25):
            P = random_complex(rng, ZXY)
            comps = {}
            for n in P.degrees():
                m = random_unimodular(rng, P.rank(n))
                comps[n] = tuple(
                    tuple(ZXY.constant(x) for x in row) for row in m
                )
            # Conjugated complex: dQ = V d V⁻¹ is again a complex.
            from wittrecipe.chainalg import invert_unimodular
            from wittrecipe.matrices import mat_mul
            diffs = {}
            for n in P.degrees():
                if not P.rank(n - 1):
                    continue
                diffs[n] = mat_mul(
                    comps[n - 1],
                    mat_mul(P.diff(n), invert_unimodular(comps[n], ZXY),
                            ZXY.zero()),
                    ZXY.zero(),
                )
            Q = ChainComplex.build(ZXY, dict(P.ranks), diffs)
            f = ChainMap.build(P, Q, comps)
            C = cone(f)
            h = cone_contraction(f)
            assert is_contraction(C, h)

    def test_non_chain_map_rejected_with_square(self):
        P = two_term(ZX, ZX.parse("x"))
        Q = two_term(ZX, ZX.parse("x + 1"))
        with pytest.raises(ValidationError) as err:
            ChainMap.build(P, Q, {
                0: ((ZX.one(),),), 1: ((ZX.one(),),),
            })
        assert "degree 1" in str(err.value)

    def test_euler_characteristic_additive(self):
        rng = random.Random(37)
        for _ in range(25):
            P = random_complex(rng, ZX)
            Q = random_complex(rng, ZX)
            f = ChainMap.build(P, Q, {})  # zero map is always a chain map
            C = cone(f)
            assert C.euler_characteristic() == (
                Q.euler_characteristic() - P.euler_characteristic()
            )


class TestTensor:
    def test_koszul_two_variables(self):
        # [A -x-> A] ⊗ [A -y-> A]: ranks 1, 2, 1 and the signed Koszul
        # matrices, blocks ordered by ascending first-factor degree.
        x, y = ZXY.parse("x"), ZXY.parse("y")
        T = tensor(two_term(ZXY, x), two_term(ZXY, y))
        assert [T.rank(n) for n in (2, 1, 0)] == [1, 2, 1]
        # Hand Koszul on (x, y): d₂ hits P₀⊗Q₁ with x and P₁⊗Q₀ with −y.
        assert T.diff(2) == ((x,), (-y,))
        assert T.diff(1) == ((y, x),)

    def test_unit_tensor(self):
        rng = random.Random(38)
        unit = ChainComplex.build(ZX, {0: 1})
        for _ in range(15):
            P = random_complex(rng, ZX)
            assert tensor(P, unit) == P

    def test_zero_tensor(self):
        P = two_term(ZX, ZX.parse("x"))
        zero_cx = ChainComplex.build(ZX, {})
        assert tensor(P, zero_cx).is_zero_complex()

    def test_dd_zero_on_random_tensors(self):
        rng = random.Random(39)
        for _ in range(30):
            tensor(random_complex(rng, ZXY), random_complex(rng, ZXY))

    def test_associativity_after_reindexing(self):
        rng = random.Random(40)
        for _ in range(20):
            P = random_complex(rng, ZX)
            Q = random_complex(rng, ZX)
            R = random_complex(rng, ZX)
            left = tensor(tensor(P, Q), R)
            right = tensor(P, tensor(Q, R))
            assert left.ranks == right.ranks
            perms = _assoc_permutations(P, Q, R)
            for n in left.degrees():
                if not left.rank(n - 1):
                    continue
                from wittrecipe.matrices import mat_mul
                sn = _perm_matrix(perms[n], ZX)
                sn1 = _perm_matrix(perms[n - 1], ZX)
                lhs = mat_mul(sn1, left.diff(n), ZX.zero())
                rhs = mat_mul(right.diff(n), sn, ZX.zero())
                assert lhs == rhs


def _left_order(P, Q, R, n):
    labels = []
    for m in [i + j for i in P.degrees() for j in Q.degrees()]:
        pass
    pq_degrees = sorted({i + j for i in P.degrees() for j in Q.degrees()
                         if P.rank(i) and Q.rank(j)})
    for m in pq_degrees:
        if not R.rank(n - m):
            continue
        inner = []
        for i in P.degrees():
            if Q.rank(m - i):
                for pi in range(P.rank(i)):
                    for qi in range(Q.rank(m - i)):
                        inner.append((i, m - i, pi, qi))
        for (i, j, pi, qi) in inner:
            for ri in range(R.rank(n - m)):
                labels.append((i, j, n - m, pi, qi, ri))
    return labels


def _right_order(P, Q, R, n):
    labels = []
    qr_degrees = sorted({j + k for j in Q.degrees() for k in R.degrees()
                         if Q.rank(j) and R.rank(k)})
    for i in P.degrees():
        l = n - i
        if l not in qr_degrees:
            continue
        inner = []
        for j in Q.degrees():
            if R.rank(l - j):
                for qi in range(Q.rank(j)):
                    for ri in range(R.rank(l - j)):
                        inner.append((j, l - j, qi, ri))
        for pi in range(P.rank(i)):
            for (j, k, qi, ri) in inner:
                labels.append((i, j, k, pi, qi, ri))
    return labels


def _assoc_permutations(P, Q, R):
    degrees = set()
    for i in P.degrees():
        for j in Q.degrees():
            for k in R.degrees():
                degrees.add(i + j + k)
    perms = {}
    for n in sorted(degrees):
        left = _left_order(P, Q, R, n)
        right = _right_order(P, Q, R, n)
        assert sorted(left) == sorted(right)
        pos = {label: idx for idx, label in enumerate(right)}
        perms[n] = [pos[label] for label in left]
    return perms


def _perm_matrix(perm, ring):
    n = len(perm)
    return tuple(
        tuple(ring.one() if perm[j] == i else ring.zero() for j in range(n))
        for i in range(n)
    )


class TestSymmetricCone:
    def test_divisor_instance(self):
        pair = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 1}), Twist.generator("oE-dual"), 0,
            {0: ((ZX.parse("x"),),)}, 1,
        )
        space = symmetric_cone(pair)
        assert space.shift == 1
        assert space.complex == two_term(ZX, ZX.parse("x"))
        assert space.form_at(1) == ((ZX.constant(-1),),)
        assert space.form_at(0) == ((ZX.one(),),)

    def test_invertible_form_gives_contractible_cone(self):
        mat = ((Z.zero(), Z.one()), (Z.one(), Z.zero()))
        pair = SymmetricSpace.build(
            ChainComplex.build(Z, {0: 2}), Twist.trivial(), 0, {0: mat}, 1
        )
        space = symmetric_cone(pair)
        h = cone_contraction(pair.as_chain_map())
        assert is_contraction(space.complex, h)

    def test_output_is_valid_space(self):
        # SymmetricSpace.build re-validates symmetry and unimodularity.
        pair = SymmetricPair.build(
            ChainComplex.build(ZXY, {0: 2}), Twist.generator("oE-dual"), 0,
            {0: ((ZXY.parse("x*y"), ZXY.zero()),
                 (ZXY.zero(), ZXY.parse("x*y")))}, 1,
        )
        space = symmetric_cone(pair)
        assert isinstance(space, SymmetricSpace)
        assert space.epsilon == 1


class TestTensorForms:
    def test_rank_one_product(self):
        a = SymmetricPair.build(
            ChainComplex.build(ZXY, {0: 1}), Twist.generator("u"), 0,
            {0: ((ZXY.parse("x"),),)}, 1,
        )
        b = SymmetricPair.build(
            ChainComplex.build(ZXY, {0: 1}), Twist.generator("v"), 0,
            {0: ((ZXY.parse("y"),),)}, 1,
        )
        prod = tensor_forms(a, b)
        assert prod.form_at(0) == ((ZXY.parse("x*y"),),)
        assert prod.twist.render() == "u*v"

    def test_unit_neutral(self):
        unit = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 1}), Twist.trivial(), 0,
            {0: ((ZX.one(),),)}, 1,
        )
        b = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 2}), Twist.trivial(), 0,
            {0: ((ZX.one(), ZX.zero()), (ZX.zero(), ZX.parse("x")))}, 1,
        )
        prod = tensor_forms(unit, b)
        assert prod.complex == b.complex
        assert prod.form == b.form
        assert prod.epsilon == b.epsilon

    def test_degenerate_times_diagonal(self):
        t_pair = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 1}), Twist.generator("oE-dual"), 0,
            {0: ((ZX.parse("x"),),)}, 1,
        )
        diag13 = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 2}), Twist.trivial(), 0,
            {0: ((ZX.one(), ZX.zero()), (ZX.zero(), ZX.constant(3)))}, 1,
        )
        prod = tensor_forms(t_pair, diag13)
        # Kronecker oracle: (x) ⊗ diag(1, 3) = diag(x, 3x).
        assert prod.form_at(0) == (
            (ZX.parse("x"), ZX.zero()),
            (ZX.zero(), ZX.parse("3*x")),
        )


class TestSymmetryValidation:
    def test_asymmetric_form_rejected(self):
        with pytest.raises(ValidationError):
            SymmetricPair.build(
                ChainComplex.build(Z, {0: 2}), Twist.trivial(), 0,
                {0: ((Z.zero(), Z.one()), (Z.zero(), Z.zero()))}, 1,
            )

    def test_skew_is_minus_symmetric(self):
        mat = ((Z.zero(), Z.one()), (Z.constant(-1), Z.zero()))
        pair = SymmetricPair.build(
            ChainComplex.build(Z, {0: 2}), Twist.trivial(), 0, {0: mat}, -1
        )
        assert pair.epsilon == -1

    def test_non_unimodular_space_rejected(self):
        with pytest.raises(ValidationError):
            SymmetricSpace.build(
                ChainComplex.build(Z, {0: 1}), Twist.trivial(), 0,
                {0: ((Z.constant(3),),)}, 1,
            )


class TestLocalizeCheck:
    def _rank_one(self, ring, p, twist):
        return SymmetricPair.build(
            ChainComplex.build(ring, {0: 1}), twist, 0,
            {0: ((p,),)}, 1,
        )

    def test_basis_change_trivializes(self):
        t = ZX.parse("x")
        a = self._rank_one(ZX, t, Twist.generator("oE-dual"))
        b = self._rank_one(ZX, ZX.one(), Twist.trivial())
        witness = {0: ((t_inverse(t),),)}
        assert localize_check_isometric(a, b, t, witness, t_inverse(t))

    def test_identity_witness_on_equal_pairs(self):
        t = ZX.parse("x")
        a = self._rank_one(ZX, ZX.parse("x + 1"), Twist.trivial())
        witness = {0: ((loc_one(t),),)}
        assert localize_check_isometric(a, a, t, witness, loc_one(t))

    def test_identity_witness_fails_across_twist(self):
        t = ZX.parse("x")
        a = self._rank_one(ZX, t, Twist.generator("oE-dual"))
        b = self._rank_one(ZX, ZX.one(), Twist.trivial())
        witness = {0: ((loc_one(t),),)}
        assert not localize_check_isometric(a, b, t, witness, loc_one(t))

    def test_singular_witness_rejected(self):
        t = ZX.parse("x")
        a = self._rank_one(ZX, t, Twist.generator("oE-dual"))
        b = self._rank_one(ZX, ZX.one(), Twist.trivial())
        with pytest.raises(ValidationError):
            localize_check_isometric(a, b, t, {0: ((loc_zero(t),),)},
                                     t_inverse(t))
        with pytest.raises(ValidationError):
            localize_check_isometric(
                a, b, t, {0: ((localize(ZX.constant(2), t),),)}, t_inverse(t)
            )
