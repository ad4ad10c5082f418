"""Independent validation of compiled recipes.

This checker knows only the invariants of individual recipe steps (and
composability); it re-derives every expected twist and degree from the
morphism data carried by the step, so a bug in a compiler cannot hide
from it.  Locally free references measure push-forward shifts in the
degree; coherent references keep the degree and move shifts into the
dualizing class.
"""

from __future__ import annotations

from .dichotomy import Recipe, RecipeStep, StepOp, WittRef
from .errors import ValidationError
from .geometry import DualizingClass, shriek
from .lattice import apply, equal_mod2


def _twists_match(a, b) -> bool:
    return a == b


def _even_difference(a, b) -> bool:
    if isinstance(a, DualizingClass) != isinstance(b, DualizingClass):
        return False
    if isinstance(a, DualizingClass):
        return equal_mod2(a.bundle, b.bundle)
    return equal_mod2(a, b)


def _check_pullback(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["pullback step without a morphism"]
    if step.from_ref.scheme is not m.target or step.to_ref.scheme is not m.source:
        problems.append(f"pullback along {m.name} connects the wrong schemes")
    if step.from_ref.degree != step.to_ref.degree:
        problems.append(f"pullback along {m.name} must preserve the degree")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if isinstance(src, DualizingClass):
        expected = DualizingClass(m.source, apply(m.pullback, src.bundle), src.shift)
        if not isinstance(dst, DualizingClass) or dst != expected:
            problems.append(
                f"pullback along {m.name}: expected twist {expected.render()}"
            )
    else:
        expected = apply(m.pullback, src)
        if dst != expected:
            problems.append(
                f"pullback along {m.name}: expected twist {expected.render()}"
            )
    return problems


def _check_shriek_pullback(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["shriek-pullback step without a morphism"]
    if step.from_ref.scheme is not m.target or step.to_ref.scheme is not m.source:
        problems.append(f"{m.name}^! connects the wrong schemes")
    if step.from_ref.degree != step.to_ref.degree:
        problems.append(f"{m.name}^! must preserve the degree")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if not isinstance(src, DualizingClass) or not isinstance(dst, DualizingClass):
        problems.append(f"{m.name}^! acts on dualizing classes")
    elif dst != shriek(m, src):
        problems.append(
            f"{m.name}^!: expected twist {shriek(m, src).render()}"
        )
    return problems


def _check_pushforward(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["pushforward step without a morphism"]
    if step.from_ref.scheme is not m.source or step.to_ref.scheme is not m.target:
        problems.append(f"push-forward along {m.name} connects the wrong schemes")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if isinstance(src, DualizingClass) or isinstance(dst, DualizingClass):
        if not (isinstance(src, DualizingClass) and isinstance(dst, DualizingClass)):
            problems.append(f"{m.name}_*: mixed twist kinds")
            return problems
        if step.from_ref.degree != step.to_ref.degree:
            problems.append(
                f"coherent push-forward along {m.name} preserves the degree"
            )
        if src != shriek(m, dst):
            problems.append(
                f"coherent {m.name}_* must start at the {m.name}^! twist "
                f"{shriek(m, dst).render()}, got {src.render()}"
            )
        return problems
    if step.from_ref.degree != step.to_ref.degree + m.relative_dim:
        problems.append(
            f"{m.name}_* must drop the degree by dim {m.name} = {m.relative_dim}"
        )
    expected = m.omega + apply(m.pullback, dst)
    if not equal_mod2(src, expected):
        problems.append(
            f"{m.name}_* twist admissibility fails: {src.render()} is not "
            f"ω ⊗ {m.name}*(target twist) = {expected.render()} mod squares"
        )
    return problems


def _check_periodicity(step: RecipeStep) -> list[str]:
    problems = []
    if step.from_ref.scheme is not step.to_ref.scheme:
        problems.append("periodicity step must stay on one scheme")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if isinstance(src, DualizingClass) and isinstance(dst, DualizingClass):
        if step.from_ref.degree + src.shift != step.to_ref.degree + dst.shift:
            problems.append(
                "coherent reindexing must preserve degree + dualizing shift"
            )
        if not equal_mod2(src.bundle, dst.bundle):
            problems.append("periodicity may only change the twist by squares")
    else:
        if step.from_ref.degree != step.to_ref.degree:
            problems.append("periodicity must preserve the degree")
        if not _even_difference(src, dst):
            problems.append("periodicity may only change the twist by squares")
    return problems


def _check_devissage(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["devissage step without a morphism"]
    if step.from_ref.scheme is not m.source or step.to_ref.scheme is not m.target:
        problems.append(f"dévissage along {m.name} connects the wrong schemes")
    if step.to_ref.support is not m.source:
        problems.append("dévissage must land in the group with supports in Z")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if isinstance(src, DualizingClass) and isinstance(dst, DualizingClass):
        if step.from_ref.degree != step.to_ref.degree:
            problems.append("coherent dévissage preserves the degree")
        if src != shriek(m, dst):
            problems.append(
                f"coherent dévissage must start at {shriek(m, dst).render()}"
            )
    else:
        if step.from_ref.degree != step.to_ref.degree + m.relative_dim:
            problems.append(
                f"dévissage shifts the degree by dim {m.name} = {m.relative_dim}"
            )
        expected = m.omega + apply(m.pullback, dst)
        if src != expected:
            problems.append(
                f"dévissage twist must be exactly {expected.render()}, "
                f"got {src.render()}"
            )
    return problems


def _check_inverse_pullback(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["inverse-pullback step without a morphism"]
    if step.from_ref.scheme is not m.source or step.to_ref.scheme is not m.target:
        problems.append(f"({m.name}*)⁻¹ connects the wrong schemes")
    if step.from_ref.degree != step.to_ref.degree:
        problems.append(f"({m.name}*)⁻¹ must preserve the degree")
    src, dst = step.from_ref.twist, step.to_ref.twist
    # Validate by applying the forward pull-back to the target twist.
    if isinstance(src, DualizingClass):
        if not isinstance(dst, DualizingClass):
            problems.append(f"({m.name}*)⁻¹: mixed twist kinds")
        else:
            back = DualizingClass(m.source, apply(m.pullback, dst.bundle), dst.shift)
            if back != src:
                problems.append(
                    f"({m.name}*)⁻¹: {m.name}*(target twist) = {back.render()} "
                    f"differs from the source twist {src.render()}"
                )
    else:
        back = apply(m.pullback, dst)
        if back != src:
            problems.append(
                f"({m.name}*)⁻¹: {m.name}*(target twist) = {back.render()} "
                f"differs from the source twist {src.render()}"
            )
    return problems


def _check_connecting(step: RecipeStep) -> list[str]:
    problems = []
    m = step.morphism
    if m is None:
        return ["connecting step needs the open immersion as its morphism"]
    if step.from_ref.scheme is not m.source or step.to_ref.scheme is not m.target:
        problems.append("∂ goes from the open complement to the ambient scheme")
    if step.to_ref.support is None:
        problems.append("∂ must land in a group with supports")
    if step.from_ref.degree != step.to_ref.degree - 1:
        problems.append("∂ raises the degree by one")
    src, dst = step.from_ref.twist, step.to_ref.twist
    if isinstance(src, DualizingClass) and isinstance(dst, DualizingClass):
        restricted = DualizingClass(m.source, apply(m.pullback, dst.bundle), dst.shift)
        if restricted != src:
            problems.append("∂ must use the restricted duality on U")
    elif isinstance(src, DualizingClass) != isinstance(dst, DualizingClass):
        problems.append("∂: mixed twist kinds")
    else:
        if apply(m.pullback, dst) != src:
            problems.append("∂ must use the restricted twist on U")
    return problems


_CHECKERS = {
    StepOp.PULLBACK: _check_pullback,
    StepOp.SHRIEK_PULLBACK: _check_shriek_pullback,
    StepOp.PUSHFORWARD: _check_pushforward,
    StepOp.PERIODICITY: _check_periodicity,
    StepOp.DEVISSAGE: _check_devissage,
    StepOp.INVERSE_PULLBACK: _check_inverse_pullback,
    StepOp.CONNECTING: _check_connecting,
}


def check_step(step: RecipeStep) -> list[str]:
    return _CHECKERS[step.op](step)


def check_recipe(recipe: Recipe) -> list[str]:
    """All problems found in a recipe; empty means valid."""
    problems: list[str] = []
    if not recipe.steps:
        return ["empty recipe"]
    for a, b in zip(recipe.steps, recipe.steps[1:]):
        if a.to_ref != b.from_ref:
            problems.append(
                f"steps do not compose at {a.to_ref.render()} / "
                f"{b.from_ref.render()}"
            )
    for k, step in enumerate(recipe.steps, start=1):
        for problem in check_step(step):
            problems.append(f"step {k}: {problem}")
    return problems


def assert_valid(recipe: Recipe):
    problems = check_recipe(recipe)
    if problems:
        raise ValidationError("recipe fails validation: " + "; ".join(problems))
