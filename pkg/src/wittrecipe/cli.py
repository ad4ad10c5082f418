"""Command-line interface: configuration ingestion, command dispatch and
deterministic report generation.

Commands: validate, classify, recipe, les, grassmannian, verify-koszul.
Exit codes: 0 success, 1 domain/validation failures (with a diagnostic
naming the violated condition), 2 I/O or parse errors.  Identical inputs
produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .checker import assert_valid
from .dichotomy import (
    CaseA,
    SCHEMA,
    classify,
    compile_connecting,
    compile_section,
    les_table,
    recipe_to_json,
    recipe_to_text,
)
from .divisor import (
    DivisorModel,
    verify_factorization,
    verify_restriction,
)
from .errors import EngineError, PreconditionError, ValidationError
from .geometry import (
    diagram_from_config,
    grassmannian_config,
    grassmannian_instance,
    lambda_of,
    picard_sequence_exact,
)
from .chainalg import ChainComplex, SymmetricSpace, Twist
from .matrices import eye, zeros
from .poly import parse_ring


def _parse_coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x.strip()) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse coordinate vector {text!r}")


def _load_config(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _build_form(ring, spec: str) -> SymmetricSpace:
    """Form specifications: diag(a1,...,ak) with polynomial entries, or
    hyperbolic(k) for the rank-2k split form."""
    s = spec.strip()
    zero, one = ring.zero(), ring.one()
    if s.startswith("diag(") and s.endswith(")"):
        entries = [ring.parse(e) for e in s[5:-1].split(",") if e.strip()]
        if not entries:
            raise ValidationError(f"empty diagonal form {spec!r}")
        k = len(entries)
        mat = tuple(
            tuple(entries[i] if i == j else zero for j in range(k))
            for i in range(k)
        )
        cx = ChainComplex.build(ring, {0: k})
        return SymmetricSpace.build(cx, Twist.trivial(), 0, {0: mat}, 1)
    if s.startswith("hyperbolic(") and s.endswith(")"):
        try:
            k = int(s[11:-1])
        except ValueError:
            raise ValidationError(f"cannot parse {spec!r}")
        if k <= 0:
            raise ValidationError("hyperbolic(k) needs k ≥ 1")
        idk = eye(k, one, zero)
        zk = zeros(k, k, zero)
        mat = tuple(
            tuple(list(zk[i]) + list(idk[i])) for i in range(k)
        ) + tuple(
            tuple(list(idk[i]) + list(zk[i])) for i in range(k)
        )
        cx = ChainComplex.build(ring, {0: 2 * k})
        return SymmetricSpace.build(cx, Twist.trivial(), 0, {0: mat}, 1)
    raise ValidationError(
        f"cannot parse form spec {spec!r}; expected diag(...) or hyperbolic(k)"
    )


def _symbolic_degree(offset: int) -> str:
    if offset == 0:
        return "W^*"
    return f"W^(*{offset:+d})"


# ---------------------------------------------------------------------------
# Command handlers: each returns (payload dict, text lines).


def _cmd_validate(args):
    cfg = _load_config(args.config)
    diagram, hypothesis = diagram_from_config(cfg)
    diagram.validate()
    seq_exact = picard_sequence_exact(diagram)
    lines = [
        f"configuration {args.config}: valid",
        f"X = {diagram.X.name} (Pic rank {diagram.X.pic.rank}, "
        f"regular={diagram.X.regular})",
        f"Z = {diagram.Z.name} (Pic rank {diagram.Z.pic.rank}, "
        f"regular={diagram.Z.regular})",
        f"c = {diagram.c}",
        f"ω_ι = {diagram.omega_iota.render()}",
        f"ω_π = {diagram.pi.omega.render()}",
        f"ω_π̃ = {diagram.pi_t.omega.render()}",
        f"Picard sequence Z → Pic(Bl) → Pic(U) exact: {seq_exact}",
    ]
    payload = {
        "schema": SCHEMA,
        "command": "validate",
        "valid": True,
        "c": diagram.c,
        "schemes": {
            "X": diagram.X.name,
            "Z": diagram.Z.name,
        },
        "picard_sequence_exact": seq_exact,
    }
    if hypothesis is not None:
        lam_row = hypothesis.lambda_hom.matrix[0]
        lines.append(f"Y = {hypothesis.Y.name}, λ-row = {list(lam_row)}")
        payload["schemes"]["Y"] = hypothesis.Y.name
        payload["lambda_row"] = list(lam_row)
    lines.append(
        "model assumption: Pic(U) is identified with Pic(X) via υ* "
        "(regular/normal regime)"
    )
    return payload, lines


def _cmd_classify(args):
    cfg = _load_config(args.config)
    diagram, _ = diagram_from_config(cfg)
    coords = _parse_coords(args.twist)
    M = diagram.Bl.pic.element(coords)
    result = classify(diagram, M)
    target = (
        f"{_symbolic_degree(result.degree_offset)}"
        f"({result.target_scheme.name}, {result.target_twist.render()})"
    )
    morphism = "π" if isinstance(result, CaseA) else "π̃"
    lines = [
        f"twist M = {M.render()} on Pic(Bl)",
        f"case {result.letter}: push-forward along {morphism} lands in {target}",
    ]
    payload = {
        "schema": SCHEMA,
        "command": "classify",
        "case": result.letter,
        "L": list(result.L.coords),
        "target": {
            "scheme": result.target_scheme.name,
            "twist": list(result.target_twist.coords),
            "degree_offset": result.degree_offset,
        },
    }
    return payload, lines


def _compile_by_parity(diagram, hypothesis, L, degree):
    try:
        return compile_section(diagram, hypothesis, L, degree)
    except PreconditionError:
        return compile_connecting(diagram, hypothesis, L, degree)


def _cmd_recipe(args):
    cfg = _load_config(args.config)
    diagram, hypothesis = diagram_from_config(cfg)
    if hypothesis is None:
        raise ValidationError(
            "the recipe command needs a 'hypothesis' block in the "
            "configuration (Hypothesis 1.2)"
        )
    coords = _parse_coords(args.twist)
    L = diagram.X.pic.element(coords)
    recipe = _compile_by_parity(diagram, hypothesis, L, args.degree)
    assert_valid(recipe)
    lam = lambda_of(hypothesis, L)
    lines = [
        f"L = {L.render()}, λ(L) = {lam}, c = {diagram.c}",
        recipe_to_text(recipe, fold_degrees=args.fold_degrees),
    ]
    payload = {
        "schema": SCHEMA,
        "command": "recipe",
        "lambda": lam,
        "c": diagram.c,
        "recipe": recipe_to_json(recipe),
    }
    return payload, lines


def _cmd_les(args):
    cfg = _load_config(args.config)
    diagram, _ = diagram_from_config(cfg)
    coords = _parse_coords(args.twist)
    L = diagram.X.pic.element(coords)
    entries = les_table(diagram, L, args.i_from, args.i_to)
    lines = [
        f"localization sequence for L = {L.render()}, degrees "
        f"{args.i_from}..{args.i_to}"
    ]
    for entry in entries:
        arrow = f"  --{entry.arrow}-->" if entry.arrow else ""
        lines.append(f"  {entry.ref.render(args.fold_degrees)}{arrow}")
        if entry.devissage is not None:
            lines.append(
                f"      (dévissage: ≅ {entry.devissage.render(args.fold_degrees)})"
            )
    payload = {
        "schema": SCHEMA,
        "command": "les",
        "entries": [
            {
                "group": e.ref.render(args.fold_degrees),
                "arrow": e.arrow,
                "devissage": (
                    e.devissage.render(args.fold_degrees)
                    if e.devissage is not None else None
                ),
            }
            for e in entries
        ],
    }
    return payload, lines


def _sweep_ranges(spec: str) -> dict[str, range]:
    out = {}
    for part in spec.split(","):
        part = part.strip()
        if "=" not in part or ".." not in part:
            raise ValidationError(
                f"cannot parse sweep {spec!r}; expected d=2..3,n=4..8"
            )
        name, rng = part.split("=", 1)
        lo, hi = rng.split("..", 1)
        try:
            out[name.strip()] = range(int(lo), int(hi) + 1)
        except ValueError:
            raise ValidationError(f"bad bounds in sweep part {part!r}")
    missing = {"d", "n"} - set(out)
    if missing:
        raise ValidationError(f"sweep is missing ranges for {sorted(missing)}")
    return out


def _sweep_line(task) -> str:
    d, n, lam, omega = task
    diagram, hypothesis = grassmannian_instance(d, n, lam, omega)
    L = diagram.X.pic.basis(0)
    recipe = _compile_by_parity(diagram, hypothesis, L, 0)
    assert_valid(recipe)
    letter = "A" if recipe.kind == "section" else "B"
    return (
        f"d={d} n={n} λ={lam} c={diagram.c} case={letter} "
        f"{recipe.composition_text()}"
    )


def _cmd_grassmannian(args):
    if args.emit and args.sweep:
        raise ValidationError("choose one of --emit and --sweep")
    if args.sweep:
        ranges = _sweep_ranges(args.sweep)
        tasks = [
            (d, n, lam, args.omega_iota)
            for d in ranges["d"]
            for n in ranges["n"]
            if 2 <= d <= n - 2
            for lam in (0, 1)
        ]
        with ThreadPoolExecutor(max_workers=4) as pool:
            lines = list(pool.map(_sweep_line, tasks))
        payload = {
            "schema": SCHEMA,
            "command": "grassmannian-sweep",
            "lines": lines,
        }
        return payload, lines
    if args.d is None or args.n is None:
        raise ValidationError("--d and --n are required without --sweep")
    if args.lambda_row is None:
        raise ValidationError(
            "--lambda is required: λ(O(1)) is instance configuration and "
            "has no default"
        )
    if args.emit:
        cfg = grassmannian_config(args.d, args.n, args.lambda_row,
                                  args.omega_iota)
        with open(args.emit, "w", encoding="utf-8") as fh:
            json.dump(cfg, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
        lines = [f"wrote {args.emit}"]
        payload = {
            "schema": SCHEMA,
            "command": "grassmannian-emit",
            "path": args.emit,
        }
        return payload, lines
    diagram, hypothesis = grassmannian_instance(
        args.d, args.n, args.lambda_row, args.omega_iota
    )
    L = diagram.X.pic.element((args.twist_coeff,))
    lam = lambda_of(hypothesis, L)
    recipe = _compile_by_parity(diagram, hypothesis, L, args.degree)
    assert_valid(recipe)
    letter = "A" if recipe.kind == "section" else "B"
    lines = [
        f"X = {diagram.X.name}, Z = {diagram.Z.name}, "
        f"Y = {hypothesis.Y.name}",
        f"c = {diagram.c}, fiber dim = {hypothesis.alpha.relative_dim}, "
        f"λ(O(1)) = {args.lambda_row}",
        f"L = {L.render()}: λ(L) = {lam}, case {letter}",
        f"recipe: {recipe.composition_text()}",
        recipe_to_text(recipe, fold_degrees=args.fold_degrees),
    ]
    payload = {
        "schema": SCHEMA,
        "command": "grassmannian",
        "c": diagram.c,
        "fiber_dim": hypothesis.alpha.relative_dim,
        "lambda": lam,
        "case": letter,
        "recipe": recipe_to_json(recipe),
    }
    return payload, lines


def _cmd_verify_koszul(args):
    ring = parse_ring(args.ring)
    t = ring.parse(args.t)
    model = DivisorModel(ring, t)
    phi = _build_form(ring, args.form)
    factorization = verify_factorization(model, phi)
    restriction = verify_restriction(model, phi)
    passed = factorization.passed and restriction.passed
    lines = [
        factorization.to_text(),
        restriction.to_text(),
        "verify-koszul: PASS" if passed else "verify-koszul: FAIL",
    ]
    payload = {
        "schema": SCHEMA,
        "command": "verify-koszul",
        "passed": passed,
        "factorization": factorization.to_json(),
        "restriction": restriction.to_json(),
    }
    return payload, lines, passed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittrecipe",
        description=(
            "Twist/parity calculus for blow-ups: validated pull-back/"
            "push-forward recipes and the codimension-one cone identity."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("config", help="configuration JSON file")
        p.add_argument("--format", choices=("text", "json", "markdown"),
                       default="text")
        p.add_argument("--out", help="write the report to a file")

    p = sub.add_parser("validate", help="validate a configuration document")
    common(p)

    p = sub.add_parser("classify", help="parity case of a twist on Pic(Bl)")
    common(p)
    p.add_argument("--twist", required=True,
                   help="comma-separated coordinates on Pic(Bl)")

    p = sub.add_parser("recipe", help="compile the section or connecting recipe")
    common(p)
    p.add_argument("--twist", required=True,
                   help="comma-separated coordinates of L on Pic(X)")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--fold-degrees", action="store_true",
                   help="render degrees modulo 4")

    p = sub.add_parser("les", help="localization long exact sequence table")
    common(p)
    p.add_argument("--twist", required=True,
                   help="comma-separated coordinates of L on Pic(X)")
    p.add_argument("--from", dest="i_from", type=int, required=True)
    p.add_argument("--to", dest="i_to", type=int, required=True)
    p.add_argument("--fold-degrees", action="store_true")

    p = sub.add_parser("grassmannian", help="Grassmannian instances and sweeps")
    common(p, config=False)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lambda_row", type=int,
                   help="value of λ on O(1); required, no default")
    p.add_argument("--omega-iota", dest="omega_iota", type=int, default=1,
                   help="coefficient of ω_ι on the generator of Pic(Z)")
    p.add_argument("--twist", dest="twist_coeff", type=int, default=1,
                   help="coefficient k of L = k·O(1)")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--emit", help="write a configuration file and exit")
    p.add_argument("--sweep", help="e.g. d=2..3,n=4..8 (both λ parities)")
    p.add_argument("--fold-degrees", action="store_true")

    p = sub.add_parser("verify-koszul",
                       help="verify the codimension-one cone identities")
    common(p, config=False)
    p.add_argument("--ring", required=True, help="Z, Z[x] or Z[x,y]")
    p.add_argument("--t", required=True, help="the divisor section t")
    p.add_argument("--form", required=True,
                   help="diag(a1,...,ak) or hyperbolic(k)")

    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "classify": _cmd_classify,
    "recipe": _cmd_recipe,
    "les": _cmd_les,
    "grassmannian": _cmd_grassmannian,
}


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, ensure_ascii=False)
    elif args.format == "markdown":
        title = payload.get("command", "report")
        body = "\n".join(lines)
        text = f"## wittrecipe {title}\n\n```\n{body}\n```"
    else:
        text = "\n".join(lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_error(args, kind: str, message: str) -> None:
    if getattr(args, "format", "text") == "json":
        payload = {"schema": SCHEMA, "error": {"kind": kind, "message": message}}
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stderr.write(f"error: {message}\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify-koszul":
            payload, lines, passed = _cmd_verify_koszul(args)
            _emit(args, payload, lines)
            return 0 if passed else 1
        payload, lines = _HANDLERS[args.command](args)
        _emit(args, payload, lines)
        return 0
    except EngineError as exc:
        _emit_error(args, "domain", str(exc))
        return 1
    except json.JSONDecodeError as exc:
        _emit_error(args, "parse", f"invalid JSON: {exc}")
        return 2
    except OSError as exc:
        _emit_error(args, "io", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
