"""Desk-scale verification of the codimension-one boundary identity.

The affine model is B = Spec of an integer polynomial ring with the
divisor E cut out by one nonzerodivisor t.  The section t gives the
degenerate rank-1 pair (O(E)^∨, t); its symmetric cone is the two-term
complex [A --t--> A] with form components (−1, 1), which is also the
push-forward of the unit form along the inclusion of E.  The harness
checks, with exact arithmetic, that the boundary of any form restricted
from B factors as that cone tensored with the form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chainalg import (
    ChainComplex,
    SymmetricPair,
    SymmetricSpace,
    Twist,
    invert_unimodular,
    loc_matrix,
    localize_check_isometric,
    symmetric_cone,
    tensor_forms,
)
from .errors import DomainError, ValidationError
from .matrices import assemble, eye, mat_mul, transpose, zeros
from .poly import LocalizedElement, PolyElement, PolyRing, loc_zero, t_inverse

TWIST_LABEL = "oE-dual"


@dataclass(frozen=True)
class DivisorModel:
    """An affine scheme with a principal prime divisor V(t)."""

    ring: PolyRing
    t: PolyElement

    def __post_init__(self):
        if self.t.ring != self.ring:
            raise DomainError("t must be an element of the model ring")
        if self.t.is_zero():
            raise DomainError("t must be a nonzerodivisor, got 0")
        if self.t.is_unit():
            raise DomainError(
                f"t = {self.t.render()} is a unit, so V(t) is empty"
            )


def divisor_pair(m: DivisorModel) -> SymmetricPair:
    """The rank-1 symmetric pair (O(E)^∨, t): degenerate over B,
    nondegenerate after inverting t."""
    cx = ChainComplex.build(m.ring, {0: 1})
    return SymmetricPair.build(
        cx, Twist.generator(TWIST_LABEL), 0, {0: ((m.t,),)}, 1
    )


def koszul_pushforward_unit(m: DivisorModel) -> SymmetricSpace:
    """The push-forward of the unit form along the inclusion of V(t):
    the complex [A --t--> A] in degrees 1 → 0 with form (−1, 1), for the
    1-shifted duality twisted by O(E)^∨.

    Built from explicit matrices, independently of symmetric_cone."""
    one = m.ring.one()
    cx = ChainComplex.build(m.ring, {0: 1, 1: 1}, {1: ((m.t,),)})
    return SymmetricSpace.build(
        cx, Twist.generator(TWIST_LABEL), 1,
        {1: ((-one,),), 0: ((one,),)}, 1,
    )


@dataclass(frozen=True)
class ReportRow:
    label: str
    lhs: str
    rhs: str
    equal: bool


@dataclass(frozen=True)
class VerificationReport:
    check: str
    ring: str
    t: str
    form: str
    passed: bool
    rows: tuple[ReportRow, ...]

    def first_mismatch(self) -> ReportRow | None:
        for row in self.rows:
            if not row.equal:
                return row
        return None

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "ring": self.ring,
            "t": self.t,
            "form": self.form,
            "passed": self.passed,
            "blocks": [
                {
                    "label": r.label,
                    "lhs": r.lhs,
                    "rhs": r.rhs,
                    "equal": r.equal,
                }
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"{self.check}: ring {self.ring}, t = {self.t}, form {self.form}",
        ]
        for r in self.rows:
            mark = "ok  " if r.equal else "FAIL"
            lines.append(f"  {mark} {r.label}: {r.lhs} == {r.rhs}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _render_matrix(mat) -> str:
    return "[" + "; ".join(
        "[" + ", ".join(x.render() for x in row) + "]" for row in mat
    ) + "]"


def _form_label(phi: SymmetricPair) -> str:
    return "{" + ", ".join(
        f"{n}: {_render_matrix(m)}" for n, m in phi.form
    ) + "}"


def verify_factorization(m: DivisorModel, phi: SymmetricSpace
                         ) -> VerificationReport:
    """Compare the two sides of the boundary factorization: the symmetric
    cone of (O(E)^∨, t) ⊗ φ against (cone of t) ⊗ φ.

    The two constructions agree through the canonical identification
    that is the identity on the cone-of-φ part and φ⁻¹ on the dual part;
    every transported block is compared exactly and reported.
    """
    if not isinstance(phi, SymmetricSpace):
        raise ValidationError(
            "the factorization identity needs a nondegenerate form "
            "(a symmetric space over the ring)"
        )
    ring = m.ring
    lhs = symmetric_cone(tensor_forms(divisor_pair(m), phi))
    rhs = tensor_forms(koszul_pushforward_unit(m), phi)
    rows: list[ReportRow] = []
    rows.append(ReportRow("shift", str(lhs.shift), str(rhs.shift),
                          lhs.shift == rhs.shift))
    rows.append(ReportRow("twist", lhs.twist.render(), rhs.twist.render(),
                          lhs.twist.exponents == rhs.twist.exponents))
    rows.append(ReportRow("epsilon", str(lhs.epsilon), str(rhs.epsilon),
                          lhs.epsilon == rhs.epsilon))
    rows.append(ReportRow(
        "ranks",
        str(dict(lhs.complex.ranks)),
        str(dict(rhs.complex.ranks)),
        lhs.complex.ranks == rhs.complex.ranks,
    ))

    # Canonical identification u: LHS → RHS.  In each degree the LHS is
    # (dual part) ⊕ (φ-complex part) and u = diag(φ_n⁻¹, id).
    P = phi.complex
    u = {}
    if all(r.equal for r in rows):
        for n in lhs.complex.degrees():
            dual_rank = P.rank(phi.shift - n)
            part_rank = P.rank(n - 1)
            blocks = {}
            if dual_rank:
                blocks[(0, 0)] = invert_unimodular(phi.form_at(n), ring)
            if part_rank:
                blocks[(1, 1)] = eye(part_rank, ring.one(), ring.zero())
            u[n] = assemble(blocks, (P.rank(n), part_rank),
                            (dual_rank, part_rank), ring.zero())
        for n in lhs.complex.degrees():
            if not lhs.complex.rank(n - 1):
                continue
            left = mat_mul(u[n - 1], lhs.complex.diff(n), ring.zero())
            right = mat_mul(rhs.complex.diff(n), u[n], ring.zero())
            rows.append(ReportRow(
                f"differential[{n}] (transported)",
                _render_matrix(left), _render_matrix(right), left == right,
            ))
        i1 = lhs.shift
        for n in lhs.complex.degrees():
            if not lhs.complex.rank(i1 - n):
                continue
            transported = mat_mul(
                transpose(u[i1 - n]),
                mat_mul(rhs.form_at(n), u[n], ring.zero()),
                ring.zero(),
            )
            rows.append(ReportRow(
                f"form[{n}] (transported)",
                _render_matrix(lhs.form_at(n)),
                _render_matrix(transported),
                lhs.form_at(n) == transported,
            ))
    passed = all(r.equal for r in rows)
    return VerificationReport(
        "factorization", ring.render(), m.t.render(), _form_label(phi),
        passed, tuple(rows),
    )


def verify_restriction(
    m: DivisorModel,
    phi: SymmetricPair,
    witness_p: dict[int, tuple] | None = None,
    witness_t: LocalizedElement | None = None,
) -> VerificationReport:
    """Check that (O(E)^∨, t) ⊗ φ restricted to the complement of V(t)
    is isometric to φ, with the canonical witnesses: 1/t diagonally on
    the twist-bearing factor and the twist rescaling 1/t."""
    ring = m.ring
    pair = tensor_forms(divisor_pair(m), phi)
    if witness_p is None:
        witness_p = {
            n: tuple(
                tuple(
                    t_inverse(m.t) if i == j else loc_zero(m.t)
                    for j in range(pair.complex.rank(n))
                )
                for i in range(pair.complex.rank(n))
            )
            for n in pair.complex.degrees()
        }
    if witness_t is None:
        witness_t = t_inverse(m.t)
    ok = localize_check_isometric(pair, phi, m.t, witness_p, witness_t)
    rows = (
        ReportRow(
            "restriction isometric to φ over B[1/t]",
            "p^T·(t·φ)·p", f"({witness_t.render()})·φ", ok,
        ),
    )
    return VerificationReport(
        "restriction", ring.render(), m.t.render(), _form_label(phi),
        ok, rows,
    )


def localized_cone_contractible(m: DivisorModel, phi: SymmetricSpace) -> bool:
    """Over B[1/t] the symmetric cone of (O(E)^∨, t) ⊗ φ is contractible:
    the explicit homotopy is (tφ)⁻¹ placed degreewise."""
    space = symmetric_cone(tensor_forms(divisor_pair(m), phi))
    C = space.complex
    z = loc_zero(m.t)
    h = {}
    for n in C.degrees():
        if not C.rank(n + 1):
            continue
        d = loc_matrix(C.diff(n + 1), m.t)
        # Differentials here are t·(unimodular); invert as adj·(1/t·unit).
        h[n] = _invert_loc(d, m.t)
    for n in C.degrees():
        r = C.rank(n)
        acc = zeros(r, r, z)
        if C.rank(n + 1):
            acc = tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(acc, mat_mul(loc_matrix(C.diff(n + 1), m.t),
                                               h[n], z))
            )
        if C.rank(n - 1):
            acc = tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(acc, mat_mul(h[n - 1],
                                               loc_matrix(C.diff(n), m.t), z))
            )
        one = LocalizedElement.make(m.t, m.t.ring.one(), 0)
        if acc != eye(r, one, z):
            return False
    return True


def _invert_loc(mat, t: PolyElement):
    from .matrices import adjugate, det
    z = loc_zero(t)
    one = LocalizedElement.make(t, t.ring.one(), 0)
    d = det(mat, z, one)
    if not d.is_unit():
        raise ValidationError("matrix is not invertible over the localization")
    adj = adjugate(mat, z, one)
    dinv = _loc_unit_inverse(d, t)
    return tuple(tuple(dinv * x for x in row) for row in adj)


def _loc_unit_inverse(u: LocalizedElement, t: PolyElement) -> LocalizedElement:
    # u = ±t^a / t^b; inverse = ±t^b / t^a.
    from .poly import exact_div
    num = u.numerator
    a = 0
    while not num.is_unit():
        num = exact_div(num, t)
        if num is None:
            raise ValidationError("not a unit of the localization")
        a += 1
    sign = 1 if num == t.ring.one() else -1
    return LocalizedElement.make(
        t, t.ring.constant(sign) * t ** u.t_power, a
    )


def report_json_text(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2, ensure_ascii=False)
