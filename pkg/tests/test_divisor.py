import json

import pytest

from wittrecipe.chainalg import (
    ChainComplex,
    SymmetricPair,
    SymmetricSpace,
    Twist,
    symmetric_cone,
    tensor_forms,
)
from wittrecipe.divisor import (
    DivisorModel,
    divisor_pair,
    koszul_pushforward_unit,
    localized_cone_contractible,
    verify_factorization,
    verify_restriction,
)
from wittrecipe.errors import DomainError, ValidationError
from wittrecipe.poly import PolyRing, loc_one

Z = PolyRing(())
ZX = PolyRing(("x",))
ZXY = PolyRing(("x", "y"))


def diag_space(ring, entries):
    k = len(entries)
    z = ring.zero()
    polys = [ring.parse(e) for e in entries]
    mat = tuple(
        tuple(polys[i] if i == j else z for j in range(k)) for i in range(k)
    )
    return SymmetricSpace.build(
        ChainComplex.build(ring, {0: k}), Twist.trivial(), 0, {0: mat}, 1
    )


def hyperbolic_space(ring, k):
    z, one = ring.zero(), ring.one()
    mat = tuple(
        tuple(one if j == i + k else z for j in range(2 * k))
        for i in range(k)
    ) + tuple(
        tuple(one if j == i - k else z for j in range(2 * k))
        for i in range(k, 2 * k)
    )
    return SymmetricSpace.build(
        ChainComplex.build(ring, {0: 2 * k}), Twist.trivial(), 0, {0: mat}, 1
    )


class TestDivisorModel:
    def test_integer_model(self):
        m = DivisorModel(Z, Z.constant(2))
        pair = divisor_pair(m)
        assert pair.complex.rank(0) == 1
        assert pair.form_at(0) == ((Z.constant(2),),)
        assert pair.twist.render() == "oE-dual"

    def test_variable_model(self):
        m = DivisorModel(ZX, ZX.parse("x"))
        assert divisor_pair(m).form_at(0) == ((ZX.parse("x"),),)

    def test_unit_rejected(self):
        with pytest.raises(DomainError):
            DivisorModel(Z, Z.one())
        with pytest.raises(DomainError):
            DivisorModel(Z, Z.constant(-1))

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            DivisorModel(ZX, ZX.zero())


class TestKoszulPushforward:
    def test_explicit_matrices(self):
        m = DivisorModel(Z, Z.constant(2))
        space = koszul_pushforward_unit(m)
        assert space.complex.diff(1) == ((Z.constant(2),),)
        assert space.form_at(1) == ((Z.constant(-1),),)
        assert space.form_at(0) == ((Z.one(),),)
        assert space.shift == 1 and space.epsilon == 1

    def test_h0_is_order_two_quotient(self):
        # H₀ of [Z --2--> Z] is Z/2: elementary divisor of the 1x1
        # matrix (2) is 2.
        m = DivisorModel(Z, Z.constant(2))
        space = koszul_pushforward_unit(m)
        (d,) = (abs(c) for ((_, c),) in
                (space.complex.diff(1)[0][0].terms,))
        assert d == 2

    def test_agrees_with_symmetric_cone_bit_identically(self):
        for ring, t_text in [(Z, "2"), (ZX, "x"), (ZXY, "x*y"),
                             (ZX, "x+1")]:
            m = DivisorModel(ring, ring.parse(t_text))
            via_cone = symmetric_cone(divisor_pair(m))
            direct = koszul_pushforward_unit(m)
            assert json.dumps(via_cone.to_json()) == \
                json.dumps(direct.to_json())

    def test_dual_side_differential_sign(self):
        # The target complex of the form is the shifted dual, whose
        # differential is −transpose(t).
        m = DivisorModel(ZX, ZX.parse("x"))
        space = koszul_pushforward_unit(m)
        assert space.dual_target().diff(1) == ((ZX.parse("-x"),),)


class TestVerifyFactorization:
    def test_unit_form_blocks(self):
        m = DivisorModel(Z, Z.constant(2))
        rep = verify_factorization(m, diag_space(Z, ["1"]))
        assert rep.passed
        labels = [r.label for r in rep.rows]
        assert any("form[1]" in l for l in labels)
        assert any("form[0]" in l for l in labels)

    def test_sign_diagonals(self):
        for ring, t_text in [(Z, "2"), (ZX, "x"), (ZXY, "x*y"),
                             (ZXY, "x+1")]:
            m = DivisorModel(ring, ring.parse(t_text))
            for entries in (["1"], ["-1"], ["1", "-1"], ["1", "1", "-1"],
                            ["-1", "-1", "-1", "1"]):
                assert verify_factorization(m, diag_space(ring, entries)).passed

    def test_hyperbolic(self):
        m = DivisorModel(ZXY, ZXY.parse("x"))
        assert verify_factorization(m, hyperbolic_space(ZXY, 1)).passed
        assert verify_factorization(m, hyperbolic_space(ZXY, 2)).passed

    def test_general_unimodular(self):
        mat = ((ZX.one(), ZX.one()), (ZX.one(), ZX.constant(2)))
        space = SymmetricSpace.build(
            ChainComplex.build(ZX, {0: 2}), Twist.trivial(), 0, {0: mat}, 1
        )
        assert verify_factorization(DivisorModel(ZX, ZX.parse("x")),
                                    space).passed

    def test_degenerate_form_rejected(self):
        # diag(3) is not a symmetric space over Z.
        pair = SymmetricPair.build(
            ChainComplex.build(Z, {0: 1}), Twist.trivial(), 0,
            {0: ((Z.constant(3),),)}, 1,
        )
        with pytest.raises(ValidationError):
            verify_factorization(DivisorModel(Z, Z.constant(2)), pair)

    def test_mismatch_reported_with_block(self, monkeypatch):
        # Simulate a sign-convention bug in one route: the report must
        # fail and name the first differing block.
        import wittrecipe.divisor as divisor_mod
        m = DivisorModel(Z, Z.constant(2))
        phi = diag_space(Z, ["1"])
        assert verify_factorization(m, phi).first_mismatch() is None

        def flipped(model):
            space = koszul_pushforward_unit(model)
            form = {n: tuple(tuple(-x for x in row) for row in mat)
                    for n, mat in space.form}
            return SymmetricSpace.build(
                space.complex, space.twist, space.shift, form, space.epsilon
            )

        monkeypatch.setattr(divisor_mod, "koszul_pushforward_unit", flipped)
        rep = divisor_mod.verify_factorization(m, phi)
        assert not rep.passed
        mismatch = rep.first_mismatch()
        assert mismatch is not None and "form" in mismatch.label


class TestVerifyRestriction:
    def test_unit_form(self):
        m = DivisorModel(Z, Z.constant(2))
        assert verify_restriction(m, diag_space(Z, ["1"])).passed

    def test_nonunit_diagonal(self):
        # φ = ⟨5⟩ is only a symmetric pair, yet restricts isometrically.
        m = DivisorModel(ZX, ZX.parse("x"))
        pair = SymmetricPair.build(
            ChainComplex.build(ZX, {0: 1}), Twist.trivial(), 0,
            {0: ((ZX.constant(5),),)}, 1,
        )
        assert verify_restriction(m, pair).passed

    def test_tampered_witness_fails(self):
        m = DivisorModel(ZX, ZX.parse("x"))
        phi = diag_space(ZX, ["1"])
        report = verify_restriction(
            m, phi,
            witness_p={0: ((loc_one(m.t),),)},  # wrong: must be 1/t
            witness_t=loc_one(m.t),
        )
        assert not report.passed

    def test_hyperbolic(self):
        m = DivisorModel(ZXY, ZXY.parse("x*y"))
        assert verify_restriction(m, hyperbolic_space(ZXY, 2)).passed


class TestLocalizedCone:
    def test_boundary_dies_on_complement(self):
        for ring, t_text in [(Z, "2"), (ZX, "x"), (ZXY, "x*y")]:
            m = DivisorModel(ring, ring.parse(t_text))
            assert localized_cone_contractible(m, diag_space(ring, ["1", "-1"]))
        m = DivisorModel(ZXY, ZXY.parse("x+1"))
        assert localized_cone_contractible(m, hyperbolic_space(ZXY, 1))


class TestReports:
    def test_json_shape(self):
        m = DivisorModel(ZX, ZX.parse("x"))
        rep = verify_factorization(m, diag_space(ZX, ["1", "-1"]))
        payload = rep.to_json()
        assert payload["check"] == "factorization"
        assert payload["passed"] is True
        assert all(set(b) == {"label", "lhs", "rhs", "equal"}
                   for b in payload["blocks"])
        text = rep.to_text()
        assert text.endswith("PASS")
