"""The parity dichotomy and the recipe compilers.

For M = (L, ℓ) on the blow-up, exactly one of the two push-forwards is
admissible: along π when ℓ ≡ c−1 (mod 2), along π̃ when ℓ ≡ c (mod 2).
Feeding the twist α̃*(α*)⁻¹υ*(L) = (L, λ(L)) through this dichotomy
compiles either

    section:     π_* ∘ α̃* ∘ (α*)⁻¹                (λ(L) ≡ c−1 mod 2)
    connecting:  ι_* ∘ π̃_* ∘ ι̃* ∘ α̃* ∘ (α*)⁻¹     (λ(L) ≡ c mod 2)

as a validated list of steps between references to twisted shifted Witt
groups.  Recipes are data: the engine certifies twist, shift and parity
bookkeeping, never elements of the groups themselves.

Coherent (dualizing-complex) variants keep the degree fixed and absorb
all shifts into the dualizing class; a reindex step trades a shift of
the dualizing class against a degree change.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    AssumptionError,
    PreconditionError,
    StructuralError,
    ValidationError,
)
from .geometry import (
    BlowupDiagram,
    DualizingClass,
    HypothesisData,
    MorphismData,
    SchemeNode,
    apply,
    lambda_of,
    picard_sequence_exact,
    shriek,
)
from .lattice import PicElement

SCHEMA = "witt-recipe/1"

Twist = PicElement | DualizingClass


class StepOp(str, Enum):
    PULLBACK = "pullback"
    SHRIEK_PULLBACK = "shriek-pullback"
    PUSHFORWARD = "pushforward"
    PERIODICITY = "periodicity"
    DEVISSAGE = "devissage"
    INVERSE_PULLBACK = "inverse-pullback"
    CONNECTING = "connecting"


@dataclass(frozen=True)
class WittRef:
    """A reference W^degree(scheme, twist), optionally with supports."""

    scheme: SchemeNode
    degree: int
    twist: Twist
    support: SchemeNode | None = None

    def __post_init__(self):
        if isinstance(self.twist, DualizingClass):
            if self.twist.scheme is not self.scheme:
                raise StructuralError(
                    f"dualizing twist lives on {self.twist.scheme.name}, "
                    f"reference on {self.scheme.name}"
                )
        elif self.twist.lattice is not self.scheme.pic:
            raise StructuralError(
                f"twist lattice {self.twist.lattice.name} does not match "
                f"Pic({self.scheme.name})"
            )

    @property
    def coherent(self) -> bool:
        return isinstance(self.twist, DualizingClass)

    def render(self, fold_degrees: bool = False) -> str:
        deg = self.degree % 4 if fold_degrees else self.degree
        w = "Ŵ" if self.coherent else "W"
        twist = (
            self.twist.render()
            if isinstance(self.twist, DualizingClass)
            else self.twist.render()
        )
        if self.support is not None:
            return f"{w}^{deg}_{self.support.name}({self.scheme.name}, {twist})"
        return f"{w}^{deg}({self.scheme.name}, {twist})"


@dataclass(frozen=True)
class RecipeStep:
    """One validated arrow of a recipe."""

    op: StepOp
    morphism: MorphismData | None
    from_ref: WittRef
    to_ref: WittRef
    justification: str


@dataclass(frozen=True)
class Recipe:
    """An ordered, composable chain of recipe steps.

    kind 'section' splits the restriction υ*; kind 'connecting'
    assembles the boundary map of the localization sequence.  zero_map
    marks chains asserted to vanish.
    """

    steps: tuple[RecipeStep, ...]
    kind: str
    assumptions: tuple[str, ...] = ()
    zero_map: bool = False

    def __post_init__(self):
        if self.kind not in ("section", "connecting"):
            raise ValidationError(f"unknown recipe kind {self.kind!r}")
        for a, b in zip(self.steps, self.steps[1:]):
            if a.to_ref != b.from_ref:
                raise ValidationError(
                    f"recipe steps do not compose: {a.to_ref.render()} "
                    f"then {b.from_ref.render()}"
                )

    @property
    def start(self) -> WittRef:
        return self.steps[0].from_ref

    @property
    def end(self) -> WittRef:
        return self.steps[-1].to_ref

    def composition_text(self) -> str:
        """Right-to-left composition in the usual notation; periodicity
        isomorphisms are suppressed like the ≅ of the statements."""
        symbols = []
        for step in self.steps:
            if step.op is StepOp.PERIODICITY:
                continue
            m = step.morphism
            if step.op is StepOp.PULLBACK:
                symbols.append(f"{m.name}*")
            elif step.op is StepOp.SHRIEK_PULLBACK:
                symbols.append(f"{m.name}^!")
            elif step.op is StepOp.INVERSE_PULLBACK:
                symbols.append(f"({m.name}*)⁻¹")
            elif step.op in (StepOp.PUSHFORWARD, StepOp.DEVISSAGE):
                symbols.append(f"{m.name}_*")
            elif step.op is StepOp.CONNECTING:
                symbols.append("∂")
        return " ∘ ".join(reversed(symbols))


@dataclass(frozen=True)
class CaseA:
    """Push-forward along π exists; target W^*(X, L)."""

    L: PicElement
    target_scheme: SchemeNode
    target_twist: Twist
    degree_offset: int = 0
    letter: str = field(default="A", init=False)


@dataclass(frozen=True)
class CaseB:
    """Push-forward along π̃ exists; target W^{*+offset}(Z, ω_ι + ι*L)."""

    L: PicElement
    target_scheme: SchemeNode
    target_twist: Twist
    degree_offset: int
    letter: str = field(default="B", init=False)


def classify(d: BlowupDiagram, M: PicElement) -> CaseA | CaseB:
    """Decide the parity case of M = (L, ℓ) on Pic(Bl)."""
    L, ell = d.decompose_bl(M)
    if (ell - (d.c - 1)) % 2 == 0:
        return CaseA(L, d.X, L, 0)
    target = d.omega_iota + apply(d.iota.pullback, L)
    return CaseB(L, d.Z, target, 1 - d.c)


def classify_coherent(
    d: BlowupDiagram, K_X: DualizingClass, K: DualizingClass
) -> CaseA | CaseB:
    """Coherent dichotomy: decompose K = π^!(K_X) + (L, ℓ) on Bl; push
    along π when ℓ is even, along π̃ (with a degree gain of one) when
    ℓ is odd."""
    if K_X.scheme is not d.X or K.scheme is not d.Bl:
        raise StructuralError("classify_coherent needs K_X on X and K on Bl")
    k_bl = shriek(d.pi, K_X)
    if K.shift != k_bl.shift:
        raise ValidationError(
            f"dualizing class on Bl has shift {K.shift}, but π^!(K_X) has "
            f"shift {k_bl.shift}; no decomposition K = π^!(K_X) ⊗ (L, ℓ)"
        )
    L, ell = d.decompose_bl(K.bundle - k_bl.bundle)
    if ell % 2 == 0:
        return CaseA(L, d.X, K_X.twisted(L), 0)
    target = shriek(d.iota, K_X.twisted(L))
    return CaseB(L, d.Z, target, 1)


def _require_regular(*nodes: SchemeNode):
    for node in nodes:
        if not node.regular:
            raise AssumptionError(
                f"scheme {node.name} is not flagged regular; the regular "
                f"recipe compilers (Thm. 2.5 / Thm. 2.6) require X, Y, Z regular"
            )


def _restrict_to_u(d: BlowupDiagram, L: PicElement) -> PicElement:
    # Pic(U) is Pic(X) with υ* the identity, so L restricts to itself.
    return apply(d.upsilon.pullback, L)


def compile_section(
    d: BlowupDiagram, h: HypothesisData, L: PicElement, i: int
) -> Recipe:
    """The split section π_* ∘ α̃* ∘ (α*)⁻¹ of υ*, defined when
    λ(L) ≡ c−1 (mod 2)."""
    lam = lambda_of(h, L)
    if (lam - (d.c - 1)) % 2 != 0:
        raise PreconditionError(
            f"λ(L) = {lam} ≢ c−1 = {d.c - 1} (mod 2): the section "
            f"π_* ∘ α̃* ∘ (α*)⁻¹ requires λ(L) ≡ c−1 mod 2 (Thm. 2.5)"
        )
    _require_regular(d.X, h.Y, d.Z)

    L_u = _restrict_to_u(d, L)
    L_y = apply(h.alpha_inv, L_u)
    M = apply(h.alpha_t.pullback, L_y)
    target_twist = d.pi.omega + apply(d.pi.pullback, L)

    u_ref = WittRef(d.U, i, L_u)
    y_ref = WittRef(h.Y, i, L_y)
    bl_ref = WittRef(d.Bl, i, M)
    bl_ref2 = WittRef(d.Bl, i, target_twist)
    x_ref = WittRef(d.X, i, L)
    steps = (
        RecipeStep(
            StepOp.INVERSE_PULLBACK, h.alpha, u_ref, y_ref,
            "invert α*: homotopy invariance along the A*-bundle α "
            "(Hypothesis 1.2)",
        ),
        RecipeStep(
            StepOp.PULLBACK, h.alpha_t, y_ref, bl_ref,
            "pull-back along α̃; the twist is (L, λ(L)) by Eq. (2.4)",
        ),
        RecipeStep(
            StepOp.PERIODICITY, None, bl_ref, bl_ref2,
            "square-periodicity in the twist, Eq. (1.3)",
        ),
        RecipeStep(
            StepOp.PUSHFORWARD, d.pi, bl_ref2, x_ref,
            "push-forward along π with ω_π = (0, c−1), Prop. 2.1(A)",
        ),
    )
    return Recipe(
        steps, "section",
        (f"{d.X.name} regular", f"{h.Y.name} regular", f"{d.Z.name} regular"),
    )


def compile_connecting(
    d: BlowupDiagram, h: HypothesisData, L: PicElement, i: int
) -> Recipe:
    """The boundary ∂ = ι_* ∘ π̃_* ∘ ι̃* ∘ α̃* ∘ (α*)⁻¹, defined when
    λ(L) ≡ c (mod 2)."""
    lam = lambda_of(h, L)
    if (lam - d.c) % 2 != 0:
        raise PreconditionError(
            f"λ(L) = {lam} ≢ c = {d.c} (mod 2): the connecting recipe "
            f"ι_* ∘ π̃_* ∘ ι̃* ∘ α̃* ∘ (α*)⁻¹ requires λ(L) ≡ c mod 2 (Thm. 2.6)"
        )
    _require_regular(d.X, h.Y, d.Z)

    L_u = _restrict_to_u(d, L)
    L_y = apply(h.alpha_inv, L_u)
    M = apply(h.alpha_t.pullback, L_y)
    M_e = apply(d.iota_t.pullback, M)
    z_twist = d.omega_iota + apply(d.iota.pullback, L)
    e_twist = d.pi_t.omega + apply(d.pi_t.pullback, z_twist)
    # The periodicity step must produce the push-forward twist exactly.
    diff = e_twist - M_e
    if any(x % 2 != 0 for x in diff.coords):
        raise AssertionError(
            "internal consistency: twist correction at the periodicity step "
            "must be even; this cannot happen for λ(L) ≡ c mod 2"
        )

    u_ref = WittRef(d.U, i, L_u)
    y_ref = WittRef(h.Y, i, L_y)
    bl_ref = WittRef(d.Bl, i, M)
    e_ref = WittRef(d.E, i, M_e)
    e_ref2 = WittRef(d.E, i, e_twist)
    z_ref = WittRef(d.Z, i - d.c + 1, z_twist)
    x_ref = WittRef(d.X, i + 1, L, support=d.Z)
    steps = (
        RecipeStep(
            StepOp.INVERSE_PULLBACK, h.alpha, u_ref, y_ref,
            "invert α*: homotopy invariance along the A*-bundle α "
            "(Hypothesis 1.2)",
        ),
        RecipeStep(
            StepOp.PULLBACK, h.alpha_t, y_ref, bl_ref,
            "pull-back along α̃; the twist is (L, λ(L)) by Eq. (2.4)",
        ),
        RecipeStep(
            StepOp.PULLBACK, d.iota_t, bl_ref, e_ref,
            "restrict to the exceptional fiber E, Prop. 2.1(B)",
        ),
        RecipeStep(
            StepOp.PERIODICITY, None, e_ref, e_ref2,
            "square-periodicity in the twist, Eq. (1.3)",
        ),
        RecipeStep(
            StepOp.PUSHFORWARD, d.pi_t, e_ref2, z_ref,
            "push-forward along π̃ with ω_π̃ = (−ω_ι, c), Prop. 2.1(B)",
        ),
        RecipeStep(
            StepOp.DEVISSAGE, d.iota, z_ref, x_ref,
            "dévissage ι_*: W^{*−c}(Z, ω_ι ⊗ ι*L) ≅ W^*_Z(X, L), Eq. (2.8)",
        ),
    )
    return Recipe(
        steps, "connecting",
        (f"{d.X.name} regular", f"{h.Y.name} regular", f"{d.Z.name} regular"),
    )


NONREGULAR_FLAGS = ("a", "b", "c", "d")

_FLAG_TEXT = {
    "a": "(a) a dualizing complex K_Y on Y with α*K_Y = K_U",
    "b": "(b) homotopy invariance of coherent Witt groups along α",
    "c": "(c) α̃ of finite Tor-dimension with Lα̃*(K_Y) dualizing",
    "d": "(d) exactness of Z → Pic(Bl) → Pic(U)",
}


def nonregular_twist_exponent(
    d: BlowupDiagram, h: HypothesisData, K_X: DualizingClass, K_Y: DualizingClass
) -> int:
    """The integer n with Lα̃*(K_Y) = π^!(K_X) ⊗ O(E)^n; raises when the
    two dualizing classes do not differ by a power of O(E)."""
    if K_X.scheme is not d.X or K_Y.scheme is not h.Y:
        raise StructuralError("need K_X on X and K_Y on Y")
    pulled = DualizingClass(d.Bl, apply(h.alpha_t.pullback, K_Y.bundle), K_Y.shift)
    k_bl = shriek(d.pi, K_X)
    if pulled.shift != k_bl.shift:
        raise ValidationError(
            f"Lα̃*(K_Y) has shift {pulled.shift} but π^!(K_X) has shift "
            f"{k_bl.shift}; dualizing complexes must differ by a shifted "
            f"line bundle with trivial shift on U (Thm. 5.1), so the shifts "
            f"must agree"
        )
    L, n = d.decompose_bl(pulled.bundle - k_bl.bundle)
    if not L.is_zero():
        raise ValidationError(
            f"Lα̃*(K_Y) − π^!(K_X) = ({L.render()}, {n}) is not a power of "
            f"O(E); its Pic(X)-block must vanish (Thm. 5.1 with the exact "
            f"Picard sequence)"
        )
    return n


def compile_nonregular(
    d: BlowupDiagram,
    h: HypothesisData,
    K_X: DualizingClass,
    K_Y: DualizingClass,
    hypothesis_flags: dict[str, bool],
    i: int = 0,
) -> Recipe:
    """Coherent recipes under hypotheses (a)-(d): a section when the
    O(E)-exponent n is even, the connecting decomposition when n is odd."""
    for flag in NONREGULAR_FLAGS:
        if not hypothesis_flags.get(flag, False):
            raise AssumptionError(
                f"hypothesis flag {_FLAG_TEXT[flag]} is not asserted (Thm. 5.1)"
            )
    if not picard_sequence_exact(d):
        raise AssumptionError(
            f"hypothesis flag {_FLAG_TEXT['d']} fails the lattice kernel check"
        )
    K_U = DualizingClass(d.U, K_X.bundle, K_X.shift)
    pulled_u = apply(h.alpha.pullback, K_Y.bundle)
    if pulled_u != K_U.bundle or K_Y.shift != K_U.shift:
        raise ValidationError(
            f"α*(K_Y) = ({pulled_u.render()})[{K_Y.shift}] differs from "
            f"K_U = {K_U.render()}: hypothesis (a) fails for the supplied K_Y"
        )
    n = nonregular_twist_exponent(d, h, K_X, K_Y)
    k_bl = shriek(d.pi, K_X)
    pulled = DualizingClass(d.Bl, apply(h.alpha_t.pullback, K_Y.bundle), K_Y.shift)
    assumptions = tuple(_FLAG_TEXT[f] for f in NONREGULAR_FLAGS)

    u_ref = WittRef(d.U, i, K_U)
    y_ref = WittRef(h.Y, i, K_Y)
    bl_ref = WittRef(d.Bl, i, pulled)
    inv_step = RecipeStep(
        StepOp.INVERSE_PULLBACK, h.alpha, u_ref, y_ref,
        "invert α* on coherent Witt groups (hypothesis (b), Thm. 5.1)",
    )
    pull_step = RecipeStep(
        StepOp.PULLBACK, h.alpha_t, y_ref, bl_ref,
        "Lα̃* (hypothesis (c)); Lα̃*(K_Y) = π^!(K_X) ⊗ O(E)^n (Thm. 5.1)",
    )

    if n % 2 == 0:
        bl_ref2 = WittRef(d.Bl, i, k_bl)
        x_ref = WittRef(d.X, i, K_X)
        steps = (
            inv_step,
            pull_step,
            RecipeStep(
                StepOp.PERIODICITY, None, bl_ref, bl_ref2,
                "square-periodicity: O(E)^n is a square for n even, Eq. (3.1)",
            ),
            RecipeStep(
                StepOp.PUSHFORWARD, d.pi, bl_ref2, x_ref,
                "coherent push-forward along π: Ŵ^i(Bl, π^!K_X) → Ŵ^i(X, K_X)",
            ),
        )
        return Recipe(steps, "section", assumptions)

    k_bl_oe = DualizingClass(d.Bl, k_bl.bundle + d.oE, k_bl.shift)
    bl_ref2 = WittRef(d.Bl, i, k_bl_oe)
    e_twist = DualizingClass(
        d.E, apply(d.iota_t.pullback, k_bl_oe.bundle), k_bl_oe.shift
    )
    e_ref = WittRef(d.E, i, e_twist)
    k_z = shriek(d.iota, K_X)
    k_e = shriek(d.pi_t, k_z)
    e_ref2 = WittRef(d.E, i + 1, k_e)
    z_ref = WittRef(d.Z, i + 1, k_z)
    x_ref = WittRef(d.X, i + 1, K_X, support=d.Z)
    steps = (
        inv_step,
        pull_step,
        RecipeStep(
            StepOp.PERIODICITY, None, bl_ref, bl_ref2,
            "square-periodicity: O(E)^{n−1} is a square for n odd, Eq. (3.1)",
        ),
        RecipeStep(
            StepOp.PULLBACK, d.iota_t, bl_ref2, e_ref,
            "Lι̃* of O(E) ⊗ K_Bl (Main Lemma (B))",
        ),
        RecipeStep(
            StepOp.PERIODICITY, None, e_ref, e_ref2,
            "Lι̃*(O(E) ⊗ K_Bl) ≅ π̃^!ι^!K_X[1]: trade the shift of the "
            "dualizing class for a degree (Main Lemma (B) isomorphism chain)",
        ),
        RecipeStep(
            StepOp.PUSHFORWARD, d.pi_t, e_ref2, z_ref,
            "coherent push-forward along π̃: Ŵ(E, π̃^!ι^!K_X) → Ŵ(Z, ι^!K_X)",
        ),
        RecipeStep(
            StepOp.DEVISSAGE, d.iota, z_ref, x_ref,
            "coherent dévissage ι_*: Ŵ(Z, ι^!K_X) ≅ Ŵ_Z(X, K_X)",
        ),
    )
    return Recipe(steps, "connecting", assumptions)


@dataclass(frozen=True)
class LesEntry:
    """One group of the localization long exact sequence, with the label
    of its outgoing arrow and, on Z-entries, the dévissage witness."""

    ref: WittRef
    arrow: str | None
    devissage: WittRef | None = None


def les_table(
    d: BlowupDiagram, L: PicElement, i_from: int, i_to: int
) -> list[LesEntry]:
    """The segment of the long exact sequence
    W^i(X, L) → W^i(U, L|U) → W^{i+1−c}(Z, ω_ι + ι*L) → W^{i+1}(X, L) → …
    with three entries per degree."""
    if i_from > i_to:
        raise ValidationError(f"empty degree range {i_from}..{i_to}")
    if L.lattice is not d.X.pic:
        raise StructuralError("the twist of the sequence lives on Pic(X)")
    z_twist = d.omega_iota + apply(d.iota.pullback, L)
    entries: list[LesEntry] = []
    for i in range(i_from, i_to + 1):
        entries.append(LesEntry(WittRef(d.X, i, L), "υ*"))
        entries.append(LesEntry(WittRef(d.U, i, _restrict_to_u(d, L)), "∂′"))
        entries.append(
            LesEntry(
                WittRef(d.Z, i + 1 - d.c, z_twist),
                "ext ∘ ι_*",
                devissage=WittRef(d.X, i + 1, L, support=d.Z),
            )
        )
    return entries


def main_lemma_recipe(
    d: BlowupDiagram, K_X: DualizingClass, variant: str, i: int = 0
) -> Recipe:
    """The two statements about classes restricted from the blow-up.

    Variant A: υ̃* followed by ∂ vanishes (flagged zero_map).  Variant B:
    starting from the O(E)-twisted dualizing class, υ̃* followed by ∂
    equals ι_* ∘ π̃_* ∘ ι̃*.
    """
    if K_X.scheme is not d.X:
        raise StructuralError("main lemma needs a dualizing class on X")
    k_bl = shriek(d.pi, K_X)
    K_U = DualizingClass(d.U, K_X.bundle, K_X.shift)
    if variant == "A":
        bl_ref = WittRef(d.Bl, i, k_bl)
        u_ref = WittRef(d.U, i, K_U)
        x_ref = WittRef(d.X, i + 1, K_X, support=d.Z)
        steps = (
            RecipeStep(
                StepOp.PULLBACK, d.upsilon_t, bl_ref, u_ref,
                "restrict to U; υ̃*(π^!K_X) = K_U",
            ),
            RecipeStep(
                StepOp.CONNECTING, d.upsilon, u_ref, x_ref,
                "connecting homomorphism of the localization sequence (1.2); "
                "the composite vanishes (Main Lemma (A))",
            ),
        )
        return Recipe(steps, "connecting", zero_map=True)
    if variant == "B":
        k_bl_oe = DualizingClass(d.Bl, k_bl.bundle + d.oE, k_bl.shift)
        bl_ref = WittRef(d.Bl, i, k_bl_oe)
        e_twist = DualizingClass(
            d.E, apply(d.iota_t.pullback, k_bl_oe.bundle), k_bl_oe.shift
        )
        e_ref = WittRef(d.E, i, e_twist)
        k_z = shriek(d.iota, K_X)
        k_e = shriek(d.pi_t, k_z)
        e_ref2 = WittRef(d.E, i + 1, k_e)
        z_ref = WittRef(d.Z, i + 1, k_z)
        x_ref = WittRef(d.X, i + 1, K_X, support=d.Z)
        steps = (
            RecipeStep(
                StepOp.PULLBACK, d.iota_t, bl_ref, e_ref,
                "Lι̃* of O(E) ⊗ K_Bl (Main Lemma (B))",
            ),
            RecipeStep(
                StepOp.PERIODICITY, None, e_ref, e_ref2,
                "Lι̃*(O(E) ⊗ K_Bl) ≅ ι̃^!K_Bl[1] ≅ π̃^!ι^!K_X[1] "
                "(Main Lemma (B) isomorphism chain)",
            ),
            RecipeStep(
                StepOp.PUSHFORWARD, d.pi_t, e_ref2, z_ref,
                "coherent push-forward along π̃",
            ),
            RecipeStep(
                StepOp.DEVISSAGE, d.iota, z_ref, x_ref,
                "coherent dévissage ι_*",
            ),
        )
        return Recipe(steps, "connecting")
    raise ValidationError(f"main lemma variant must be 'A' or 'B', got {variant!r}")


# ---------------------------------------------------------------------------
# Serialization


def twist_to_json(twist: Twist) -> dict:
    if isinstance(twist, DualizingClass):
        return {
            "lattice": twist.bundle.lattice.name,
            "coords": list(twist.bundle.coords),
            "shift": twist.shift,
        }
    return {"lattice": twist.lattice.name, "coords": list(twist.coords)}


def ref_to_json(ref: WittRef) -> dict:
    out = {
        "scheme": ref.scheme.name,
        "degree": ref.degree,
        "twist": twist_to_json(ref.twist),
    }
    if ref.support is not None:
        out["support"] = ref.support.name
    return out


def step_to_json(step: RecipeStep) -> dict:
    return {
        "op": step.op.value,
        "morphism": step.morphism.name if step.morphism is not None else None,
        "from": ref_to_json(step.from_ref),
        "to": ref_to_json(step.to_ref),
        "justification": step.justification,
    }


def recipe_to_json(recipe: Recipe) -> dict:
    return {
        "schema": SCHEMA,
        "kind": recipe.kind,
        "zero_map": recipe.zero_map,
        "assumptions": list(recipe.assumptions),
        "composition": recipe.composition_text(),
        "steps": [step_to_json(s) for s in recipe.steps],
    }


def recipe_to_text(recipe: Recipe, fold_degrees: bool = False) -> str:
    lines = [f"kind: {recipe.kind}" + (" (zero map)" if recipe.zero_map else "")]
    if recipe.assumptions:
        lines.append("assumptions: " + "; ".join(recipe.assumptions))
    lines.append(f"composition: {recipe.composition_text()}")
    for k, step in enumerate(recipe.steps, start=1):
        name = step.morphism.name if step.morphism is not None else "-"
        lines.append(
            f"  {k}. {step.op.value} [{name}]: "
            f"{step.from_ref.render(fold_degrees)} → "
            f"{step.to_ref.render(fold_degrees)}"
        )
        lines.append(f"     {step.justification}")
    return "\n".join(lines)


def recipe_json_text(recipe: Recipe) -> str:
    return json.dumps(recipe_to_json(recipe), indent=2, ensure_ascii=False)
