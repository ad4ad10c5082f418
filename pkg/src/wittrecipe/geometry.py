"""The blow-up diagram on Picard groups and its canonical-class calculus.

A regular closed immersion ι: Z → X of codimension c ≥ 2 produces the
diagram

        Z  --ι-->  X  <--υ--  U
        ↑          ↑          ‖
        π̃          π          υ̃
        E  --ι̃-->  Bl <------ U

with Pic(Bl) = Pic(X) ⊕ Z·O(E) and Pic(E) = Pic(Z) ⊕ Z·O(E)|E.  This
module builds the six morphisms with their pull-back matrices, relative
dimensions and relative canonical classes

    ω_π = (0, c−1),   ω_π̃ = (−ω_ι, c),   ω_ι̃ = (0, 1),

computes shriek transforms of dualizing classes, decides when a twisted
push-forward exists, and attaches the auxiliary A*-bundle data
(Hypothesis 1.2) from which the integer λ(L) of Eq. (2.4) is extracted.

Pic(U) is identified with Pic(X) and υ* with the identity; this is the
regular/normal regime and is recorded as a model assumption in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ConfigError, DomainError, StructuralError, ValidationError
from .lattice import (
    LatticeHom,
    PicElement,
    PicLattice,
    apply,
    compose,
    equal_mod2,
    inv_unimodular,
    is_unimodular,
    kernel_basis,
    solve_mod2,
)

OE_LABEL = "O(E)"
OE_RESTRICTED_LABEL = "O(E)|E"

# Display names of the diagram morphisms; the tilde is a combining mark.
PI = "π"
PI_TILDE = "π̃"
IOTA = "ι"
IOTA_TILDE = "ι̃"
UPSILON = "υ"
UPSILON_TILDE = "υ̃"
ALPHA = "α"
ALPHA_TILDE = "α̃"


class MorphismKind(str, Enum):
    OPEN_IMMERSION = "open-immersion"
    REGULAR_CLOSED_IMMERSION = "regular-closed-immersion"
    BLOW_DOWN = "blow-down"
    PROJECTIVE_BUNDLE = "projective-bundle"
    AFFINE_BUNDLE = "affine-bundle"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True, eq=False)
class SchemeNode:
    """A scheme with its Picard lattice and regularity flags.

    Regular implies Gorenstein; omitting the gorenstein flag derives it
    from the regular flag.
    """

    name: str
    pic: PicLattice
    regular: bool = False
    gorenstein: bool | None = None

    def __post_init__(self):
        if self.gorenstein is None:
            object.__setattr__(self, "gorenstein", self.regular)
        if self.regular and not self.gorenstein:
            raise StructuralError(
                f"scheme {self.name}: regular implies Gorenstein"
            )

    def __repr__(self):
        return f"SchemeNode({self.name!r})"


@dataclass(frozen=True, eq=False)
class MorphismData:
    """A morphism of the diagram together with everything the twist
    calculus needs: pull-back matrix, relative dimension and relative
    canonical class ω_f in Pic(source)."""

    name: str
    source: SchemeNode
    target: SchemeNode
    kind: MorphismKind
    pullback: LatticeHom
    relative_dim: int
    omega: PicElement
    tor_finite: bool = True

    def __post_init__(self):
        if self.pullback.source is not self.target.pic:
            raise StructuralError(
                f"{self.name}: pull-back must consume Pic({self.target.name})"
            )
        if self.pullback.target is not self.source.pic:
            raise StructuralError(
                f"{self.name}: pull-back must land in Pic({self.source.name})"
            )
        if self.omega.lattice is not self.source.pic:
            raise StructuralError(
                f"{self.name}: ω must live in Pic({self.source.name})"
            )
        if self.kind is MorphismKind.OPEN_IMMERSION:
            if not self.omega.is_zero() or self.relative_dim != 0:
                raise StructuralError(
                    f"{self.name}: an open immersion has ω = 0 and dim 0"
                )
        if self.kind is MorphismKind.AFFINE_BUNDLE:
            if not self.omega.is_zero() or self.relative_dim < 0:
                raise StructuralError(
                    f"{self.name}: an affine bundle has ω = 0 and dim ≥ 0"
                )
        if self.kind is MorphismKind.REGULAR_CLOSED_IMMERSION:
            if self.relative_dim >= 0:
                raise StructuralError(
                    f"{self.name}: a regular closed immersion of codimension "
                    f"k has relative dimension −k"
                )

    def __repr__(self):
        return f"MorphismData({self.name}: {self.source.name} -> {self.target.name})"


@dataclass(frozen=True)
class DualizingClass:
    """A dualizing complex presented as (line-bundle class, shift).

    On a Gorenstein scheme every dualizing complex is a shifted line
    bundle, so this pair classifies it completely.
    """

    scheme: SchemeNode
    bundle: PicElement
    shift: int

    def __post_init__(self):
        if self.bundle.lattice is not self.scheme.pic:
            raise StructuralError(
                f"dualizing class on {self.scheme.name} needs a bundle in "
                f"Pic({self.scheme.name})"
            )

    def twisted(self, extra: PicElement) -> "DualizingClass":
        return DualizingClass(self.scheme, self.bundle + extra, self.shift)

    def shifted(self, k: int) -> "DualizingClass":
        return DualizingClass(self.scheme, self.bundle, self.shift + k)

    def render(self) -> str:
        return f"({self.bundle.render()})[{self.shift}]"


@dataclass(frozen=True, eq=False)
class BlowupDiagram:
    """All six morphisms of the blow-up square plus the distinguished
    exceptional classes.  Construct through build_blowup."""

    X: SchemeNode
    Z: SchemeNode
    U: SchemeNode
    Bl: SchemeNode
    E: SchemeNode
    c: int
    iota: MorphismData
    upsilon: MorphismData
    pi: MorphismData
    iota_t: MorphismData
    pi_t: MorphismData
    upsilon_t: MorphismData
    oE: PicElement
    oE_restricted: PicElement
    omega_iota: PicElement

    def validate(self):
        """Re-check every structural identity of the diagram; raises
        ValidationError on the first failure."""
        checks: list[tuple[str, bool]] = []
        checks.append(("c ≥ 2 (Setup 1.1)", self.c >= 2))
        checks.append(
            ("rank Pic(Bl) = rank Pic(X) + 1", self.Bl.pic.rank == self.X.pic.rank + 1)
        )
        checks.append(
            ("rank Pic(E) = rank Pic(Z) + 1", self.E.pic.rank == self.Z.pic.rank + 1)
        )
        checks.append(
            ("ι̃*(O(E)) = O(E)|E", apply(self.iota_t.pullback, self.oE) == self.oE_restricted)
        )
        checks.append(
            ("υ̃*(O(E)) = 0", apply(self.upsilon_t.pullback, self.oE).is_zero())
        )
        rx = self.X.pic.rank
        omega_pi = self.Bl.pic.element((0,) * rx + (self.c - 1,))
        checks.append(("ω_π = (0, c−1)", self.pi.omega == omega_pi))
        omega_pi_t = self.E.pic.element(
            tuple(-a for a in self.omega_iota.coords) + (self.c,)
        )
        checks.append(("ω_π̃ = (−ω_ι, c)", self.pi_t.omega == omega_pi_t))
        omega_iota_t = self.E.pic.element((0,) * self.Z.pic.rank + (1,))
        checks.append(("ω_ι̃ = (0, 1)", self.iota_t.omega == omega_iota_t))
        lhs = self.pi_t.omega + apply(self.pi_t.pullback, self.omega_iota)
        rhs = self.iota_t.omega + apply(self.iota_t.pullback, self.pi.omega)
        checks.append(("ω_π̃ + π̃*(ω_ι) = ω_ι̃ + ι̃*(ω_π)", lhs == rhs))
        checks.append(
            (
                "dimensions (dim π, dim π̃, dim ι, dim ι̃) = (0, c−1, −c, −1)",
                (
                    self.pi.relative_dim,
                    self.pi_t.relative_dim,
                    self.iota.relative_dim,
                    self.iota_t.relative_dim,
                )
                == (0, self.c - 1, -self.c, -1),
            )
        )
        for label, ok in checks:
            if not ok:
                raise ValidationError(f"blow-up diagram invariant fails: {label}")

    def decompose_bl(self, m: PicElement) -> tuple[PicElement, int]:
        """Split an element of Pic(Bl) as (L, ℓ) with L in Pic(X)."""
        if m.lattice is not self.Bl.pic:
            raise StructuralError("element does not live on Pic(Bl)")
        return self.X.pic.element(m.coords[:-1]), m.coords[-1]

    def embed_bl(self, l: PicElement, ell: int) -> PicElement:
        """Inverse of decompose_bl: π*L ⊗ O(E)^ℓ as coordinates."""
        if l.lattice is not self.X.pic:
            raise StructuralError("twist must live on Pic(X)")
        return self.Bl.pic.element(l.coords + (ell,))


@dataclass(frozen=True, eq=False)
class HypothesisData:
    """The auxiliary A*-bundle datum: α: U → Y plus α̃: Bl → Y with
    compatible pull-backs, and the derived row λ: Pic(X) → Z."""

    Y: SchemeNode
    alpha: MorphismData
    alpha_t: MorphismData
    lambda_hom: LatticeHom
    alpha_inv: LatticeHom


def build_blowup(
    X: SchemeNode,
    Z: SchemeNode,
    c: int,
    iota_pullback: LatticeHom,
    omega_iota: PicElement,
) -> BlowupDiagram:
    """Construct the full diagram from X, Z, the codimension, ι* and ω_ι."""
    if c < 2:
        raise DomainError(f"codimension c = {c}: c ≥ 2 required (Setup 1.1)")
    if iota_pullback.source is not X.pic or iota_pullback.target is not Z.pic:
        raise StructuralError(
            f"ι* must be a map Pic({X.name}) -> Pic({Z.name})"
        )
    if omega_iota.lattice is not Z.pic:
        raise StructuralError(f"ω_ι must live in Pic({Z.name})")

    rx, rz = X.pic.rank, Z.pic.rank
    pic_bl = PicLattice(f"Pic(Bl)", X.pic.generators + (OE_LABEL,))
    pic_e = PicLattice(f"Pic(E)", Z.pic.generators + (OE_RESTRICTED_LABEL,))

    U = SchemeNode("U", X.pic, regular=X.regular, gorenstein=X.gorenstein)
    Bl = SchemeNode("Bl", pic_bl, regular=X.regular, gorenstein=X.gorenstein)
    E = SchemeNode("E", pic_e, regular=Z.regular, gorenstein=Z.gorenstein)

    oE = pic_bl.basis(rx)
    oE_restricted = pic_e.basis(rz)

    # Pull-back matrices of the Picard diagram of a blow-up.
    pi_matrix = tuple(
        tuple(1 if i == j else 0 for j in range(rx)) for i in range(rx)
    ) + ((0,) * rx,)
    pi_t_matrix = tuple(
        tuple(1 if i == j else 0 for j in range(rz)) for i in range(rz)
    ) + ((0,) * rz,)
    iota_t_matrix = tuple(
        tuple(iota_pullback.matrix[i][j] if j < rx else 0 for j in range(rx + 1))
        for i in range(rz)
    ) + ((0,) * rx + (1,),)
    upsilon_t_matrix = tuple(
        tuple(1 if i == j else 0 for j in range(rx + 1)) for i in range(rx)
    )

    iota = MorphismData(
        IOTA, Z, X, MorphismKind.REGULAR_CLOSED_IMMERSION,
        iota_pullback, -c, omega_iota,
    )
    upsilon = MorphismData(
        UPSILON, U, X, MorphismKind.OPEN_IMMERSION,
        LatticeHom(X.pic, U.pic, tuple(
            tuple(1 if i == j else 0 for j in range(rx)) for i in range(rx)
        )), 0, U.pic.zero(),
    )
    pi = MorphismData(
        PI, Bl, X, MorphismKind.BLOW_DOWN,
        LatticeHom(X.pic, pic_bl, pi_matrix), 0,
        pic_bl.element((0,) * rx + (c - 1,)),
    )
    iota_t = MorphismData(
        IOTA_TILDE, E, Bl, MorphismKind.REGULAR_CLOSED_IMMERSION,
        LatticeHom(pic_bl, pic_e, iota_t_matrix), -1,
        pic_e.element((0,) * rz + (1,)),
    )
    pi_t = MorphismData(
        PI_TILDE, E, Z, MorphismKind.PROJECTIVE_BUNDLE,
        LatticeHom(Z.pic, pic_e, pi_t_matrix), c - 1,
        pic_e.element(tuple(-a for a in omega_iota.coords) + (c,)),
    )
    upsilon_t = MorphismData(
        UPSILON_TILDE, U, Bl, MorphismKind.OPEN_IMMERSION,
        LatticeHom(pic_bl, U.pic, upsilon_t_matrix), 0, U.pic.zero(),
    )

    diagram = BlowupDiagram(
        X=X, Z=Z, U=U, Bl=Bl, E=E, c=c,
        iota=iota, upsilon=upsilon, pi=pi,
        iota_t=iota_t, pi_t=pi_t, upsilon_t=upsilon_t,
        oE=oE, oE_restricted=oE_restricted, omega_iota=omega_iota,
    )
    diagram.validate()
    return diagram


def attach_hypothesis(
    d: BlowupDiagram,
    Y: SchemeNode,
    alpha_pullback: LatticeHom,
    alpha_t_pullback: LatticeHom,
    fiber_dim: int,
) -> HypothesisData:
    """Attach the auxiliary Y with α*: Pic(Y) ≅ Pic(U) and α̃*: Pic(Y) →
    Pic(Bl), and extract λ as the last row of α̃* ∘ (α*)⁻¹."""
    if alpha_pullback.source is not Y.pic or alpha_pullback.target is not d.U.pic:
        raise StructuralError(f"α* must be a map Pic({Y.name}) -> Pic(U)")
    if alpha_t_pullback.source is not Y.pic or alpha_t_pullback.target is not d.Bl.pic:
        raise StructuralError(f"α̃* must be a map Pic({Y.name}) -> Pic(Bl)")
    if fiber_dim < 0:
        raise DomainError("fiber dimension of an A*-bundle must be ≥ 0")
    if not is_unimodular(alpha_pullback.matrix):
        raise DomainError(
            "α* must be an isomorphism on Picard groups "
            "(homotopy invariance along the A*-bundle α)"
        )
    composed = compose(d.upsilon_t.pullback, alpha_t_pullback)
    if composed.matrix != alpha_pullback.matrix:
        raise ValidationError(
            "υ̃* ∘ α̃* must equal α* on Picard groups (Rem. 2.3, "
            "υ̃* ∘ α̃* = α*); got "
            f"{composed.matrix} versus {alpha_pullback.matrix}"
        )

    alpha = MorphismData(
        ALPHA, d.U, Y, MorphismKind.AFFINE_BUNDLE,
        alpha_pullback, fiber_dim, d.U.pic.zero(),
    )
    alpha_t = MorphismData(
        ALPHA_TILDE, d.Bl, Y, MorphismKind.AUXILIARY,
        alpha_t_pullback, fiber_dim, d.Bl.pic.zero(),
    )
    inv = inv_unimodular(alpha_pullback.matrix)
    alpha_inv = LatticeHom(d.U.pic, Y.pic, inv)
    # α̃* ∘ (α*)⁻¹ : Pic(X) = Pic(U) -> Pic(Bl); its last row is λ.
    through = compose(alpha_t_pullback, alpha_inv)
    lam_lattice = PicLattice("Z·e(E)", ("e(E)",))
    lambda_hom = LatticeHom(d.X.pic, lam_lattice, (through.matrix[-1],))
    return HypothesisData(Y, alpha, alpha_t, lambda_hom, alpha_inv)


def lambda_of(h: HypothesisData, L: PicElement) -> int:
    """The integer λ(L) with α̃*((α*)⁻¹(υ*L)) = (L, λ(L)) in Pic(Bl)."""
    v = apply(h.alpha_t.pullback, apply(h.alpha_inv, L))
    if v.coords[:-1] != L.coords:
        raise ValidationError(
            f"α̃*(α*)⁻¹υ* does not restrict to the identity on Pic(X): "
            f"{L.coords} maps to {v.coords}"
        )
    return v.coords[-1]


def pushforward_twist_target(f: MorphismData, M: PicElement) -> PicElement | None:
    """Some L in Pic(target) with M ≡ ω_f + f*(L) mod 2, or None.

    For pull-backs whose matrix is an identity block over extra rows
    (π and π̃) the exact block of M − ω_f is returned, so the targets of
    the two push-forwards of the dichotomy come out on the nose.
    """
    if M.lattice is not f.source.pic:
        raise StructuralError(
            f"twist must live in Pic({f.source.name}) to push along {f.name}"
        )
    b = M - f.omega
    A = f.pullback.matrix
    nrows, ncols = len(A), f.pullback.source.rank
    identity_top = nrows >= ncols and all(
        A[i][j] == (1 if i == j else 0) for i in range(ncols) for j in range(ncols)
    )
    if identity_top:
        candidate = b.coords[:ncols]
        for i in range(ncols, nrows):
            acc = sum(A[i][j] * candidate[j] for j in range(ncols))
            if (acc - b.coords[i]) % 2 != 0:
                return None
        return f.target.pic.element(candidate)
    sol = solve_mod2(A, b.coords)
    if sol is None:
        return None
    return f.target.pic.element(sol)


def shriek(f: MorphismData, K: DualizingClass) -> DualizingClass:
    """f^! of a dualizing class: twist by ω_f, shift by dim f."""
    if K.scheme is not f.target:
        raise StructuralError(
            f"{f.name}^! needs a dualizing class on {f.target.name}, "
            f"got one on {K.scheme.name}"
        )
    return DualizingClass(
        f.source,
        apply(f.pullback, K.bundle) + f.omega,
        K.shift + f.relative_dim,
    )


def picard_sequence_exact(d: BlowupDiagram) -> bool:
    """Exactness of Z → Pic(Bl) → Pic(U): the integer kernel of υ̃* is
    spanned by the class of O(E)."""
    if not apply(d.upsilon_t.pullback, d.oE).is_zero():
        return False
    basis = kernel_basis(d.upsilon_t.pullback.matrix, d.Bl.pic.rank)
    if len(basis) != 1:
        return False
    v = basis[0]
    return v == d.oE.coords or tuple(-x for x in v) == d.oE.coords


def grassmannian_instance(
    d: int, n: int, lambda_row: int, omega_iota_coeff: int
) -> tuple[BlowupDiagram, HypothesisData]:
    """The Grassmannian family: X = Gr_d(n), Z = Gr_d(n−1) of codimension
    c = d, Y = Gr_{d−1}(n−1) with an A^{n−d}-bundle α: U → Y.

    λ(O(1)) and ω_ι are instance configuration and must be supplied.
    """
    if d < 2:
        raise DomainError(
            f"Gr_{d}({n}): codimension c = d = {d} violates c ≥ 2 (Setup 1.1)"
        )
    if d > n - 2:
        raise DomainError(
            f"Gr_{d}({n}): need d ≤ n−2 so that Z = Gr_{d}({n - 1}) is a "
            f"proper nonempty subvariety"
        )
    pic_x = PicLattice(f"Pic(Gr({d},{n}))", ("O(1)",))
    pic_z = PicLattice(f"Pic(Gr({d},{n - 1}))", ("O(1)",))
    pic_y = PicLattice(f"Pic(Gr({d - 1},{n - 1}))", ("O(1)",))
    X = SchemeNode(f"Gr({d},{n})", pic_x, regular=True)
    Z = SchemeNode(f"Gr({d},{n - 1})", pic_z, regular=True)
    Y = SchemeNode(f"Gr({d - 1},{n - 1})", pic_y, regular=True)
    diagram = build_blowup(
        X, Z, d,
        LatticeHom(pic_x, pic_z, ((1,),)),
        pic_z.element((omega_iota_coeff,)),
    )
    hypothesis = attach_hypothesis(
        diagram, Y,
        LatticeHom(pic_y, diagram.U.pic, ((1,),)),
        LatticeHom(pic_y, diagram.Bl.pic, ((1,), (lambda_row,))),
        n - d,
    )
    return diagram, hypothesis


# ---------------------------------------------------------------------------
# Configuration documents


_SCHEME_FIELDS = {"name", "generators", "regular", "gorenstein"}
_TOP_FIELDS = {"schemes", "c", "iota_pullback", "omega_iota", "hypothesis"}
_HYPOTHESIS_FIELDS = {"Y", "alpha_pullback", "alpha_tilde_pullback", "fiber_dim"}


def _reject_unknown(obj: dict, allowed: set[str], context: str):
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"unknown field {key!r} in {context}")


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise ConfigError(f"missing field {key!r} in {context}")
    return obj[key]


def _scheme_from_config(obj, context: str) -> SchemeNode:
    if not isinstance(obj, dict):
        raise ConfigError(f"{context} must be an object")
    _reject_unknown(obj, _SCHEME_FIELDS, context)
    name = _require(obj, "name", context)
    generators = _require(obj, "generators", context)
    if not isinstance(generators, list) or not all(
        isinstance(g, str) for g in generators
    ):
        raise ConfigError(f"{context}.generators must be a list of labels")
    regular = bool(obj.get("regular", False))
    gorenstein = obj.get("gorenstein")
    lat = PicLattice(f"Pic({name})", tuple(generators))
    return SchemeNode(str(name), lat, regular=regular, gorenstein=gorenstein)


def _int_matrix(obj, context: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ConfigError(f"{context} must be a row-major integer matrix")
    try:
        return tuple(tuple(int(x) for x in row) for row in obj)
    except (TypeError, ValueError):
        raise ConfigError(f"{context} must contain integers only")


def _int_vector(obj, context: str) -> tuple[int, ...]:
    if not isinstance(obj, list):
        raise ConfigError(f"{context} must be an integer vector")
    try:
        return tuple(int(x) for x in obj)
    except (TypeError, ValueError):
        raise ConfigError(f"{context} must contain integers only")


def diagram_from_config(cfg: dict) -> tuple[BlowupDiagram, HypothesisData | None]:
    """Build a diagram (and hypothesis data if present) from a parsed
    JSON configuration document.  Unknown fields are rejected."""
    if not isinstance(cfg, dict):
        raise ConfigError("configuration must be a JSON object")
    _reject_unknown(cfg, _TOP_FIELDS, "configuration")
    schemes = _require(cfg, "schemes", "configuration")
    if not isinstance(schemes, dict):
        raise ConfigError("'schemes' must be an object with entries X and Z")
    _reject_unknown(schemes, {"X", "Z"}, "schemes")
    X = _scheme_from_config(_require(schemes, "X", "schemes"), "schemes.X")
    Z = _scheme_from_config(_require(schemes, "Z", "schemes"), "schemes.Z")
    c = _require(cfg, "c", "configuration")
    if not isinstance(c, int) or isinstance(c, bool):
        raise ConfigError("'c' must be an integer")
    iota_matrix = _int_matrix(_require(cfg, "iota_pullback", "configuration"),
                              "iota_pullback")
    if len(iota_matrix) != Z.pic.rank or any(
        len(r) != X.pic.rank for r in iota_matrix
    ):
        raise StructuralError(
            f"iota_pullback must be a {Z.pic.rank}x{X.pic.rank} matrix "
            f"(Pic(X) -> Pic(Z))"
        )
    omega_vec = _int_vector(_require(cfg, "omega_iota", "configuration"),
                            "omega_iota")
    if len(omega_vec) != Z.pic.rank:
        raise StructuralError(
            f"omega_iota must have {Z.pic.rank} coordinates (Pic(Z))"
        )
    diagram = build_blowup(
        X, Z, c, LatticeHom(X.pic, Z.pic, iota_matrix), Z.pic.element(omega_vec)
    )

    hyp_cfg = cfg.get("hypothesis")
    if hyp_cfg is None:
        return diagram, None
    if not isinstance(hyp_cfg, dict):
        raise ConfigError("'hypothesis' must be an object")
    _reject_unknown(hyp_cfg, _HYPOTHESIS_FIELDS, "hypothesis")
    Y = _scheme_from_config(_require(hyp_cfg, "Y", "hypothesis"), "hypothesis.Y")
    alpha_m = _int_matrix(
        _require(hyp_cfg, "alpha_pullback", "hypothesis"),
        "hypothesis.alpha_pullback",
    )
    alpha_t_m = _int_matrix(
        _require(hyp_cfg, "alpha_tilde_pullback", "hypothesis"),
        "hypothesis.alpha_tilde_pullback",
    )
    fiber_dim = _require(hyp_cfg, "fiber_dim", "hypothesis")
    if not isinstance(fiber_dim, int) or isinstance(fiber_dim, bool):
        raise ConfigError("hypothesis.fiber_dim must be an integer")
    if len(alpha_m) != diagram.U.pic.rank or any(
        len(r) != Y.pic.rank for r in alpha_m
    ):
        raise StructuralError(
            "hypothesis.alpha_pullback must be a "
            f"{diagram.U.pic.rank}x{Y.pic.rank} matrix (Pic(Y) -> Pic(U))"
        )
    if len(alpha_t_m) != diagram.Bl.pic.rank or any(
        len(r) != Y.pic.rank for r in alpha_t_m
    ):
        raise StructuralError(
            "hypothesis.alpha_tilde_pullback must be a "
            f"{diagram.Bl.pic.rank}x{Y.pic.rank} matrix (Pic(Y) -> Pic(Bl))"
        )
    hypothesis = attach_hypothesis(
        diagram, Y,
        LatticeHom(Y.pic, diagram.U.pic, alpha_m),
        LatticeHom(Y.pic, diagram.Bl.pic, alpha_t_m),
        fiber_dim,
    )
    return diagram, hypothesis


def grassmannian_config(
    d: int, n: int, lambda_row: int, omega_iota_coeff: int
) -> dict:
    """Configuration document describing the Grassmannian instance; it
    round-trips through diagram_from_config."""
    if d < 2 or d > n - 2:
        # Same domain constraints as grassmannian_instance.
        grassmannian_instance(d, n, lambda_row, omega_iota_coeff)
    return {
        "schemes": {
            "X": {"name": f"Gr({d},{n})", "generators": ["O(1)"], "regular": True},
            "Z": {"name": f"Gr({d},{n - 1})", "generators": ["O(1)"], "regular": True},
        },
        "c": d,
        "iota_pullback": [[1]],
        "omega_iota": [omega_iota_coeff],
        "hypothesis": {
            "Y": {
                "name": f"Gr({d - 1},{n - 1})",
                "generators": ["O(1)"],
                "regular": True,
            },
            "alpha_pullback": [[1]],
            "alpha_tilde_pullback": [[1], [lambda_row]],
            "fiber_dim": n - d,
        },
    }
