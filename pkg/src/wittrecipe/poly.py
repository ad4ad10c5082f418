"""Sparse multivariate polynomials over the integers, and their
localization at a distinguished element t (fractions p / t^k).

Terms map exponent vectors to nonzero int coefficients; arithmetic is
exact, division is exact-or-fail.  An empty variable list gives the
integers themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, StructuralError, ValidationError


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"duplicate variables in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "PolyElement":
        return PolyElement(self, ())

    def one(self) -> "PolyElement":
        return self.constant(1)

    def constant(self, c: int) -> "PolyElement":
        c = int(c)
        if c == 0:
            return self.zero()
        return PolyElement(self, (((0,) * self.nvars, c),))

    def variable(self, name: str) -> "PolyElement":
        if name not in self.variables:
            raise DomainError(f"{name!r} is not a variable of {self.render()}")
        i = self.variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return PolyElement(self, ((exp, 1),))

    def render(self) -> str:
        if not self.variables:
            return "Z"
        return "Z[" + ",".join(self.variables) + "]"

    def parse(self, text: str) -> "PolyElement":
        return _parse_poly(self, text)


def parse_ring(spec: str) -> PolyRing:
    """Ring specifications of the form Z, Z[x], Z[x,y]."""
    s = spec.strip()
    if s == "Z":
        return PolyRing(())
    if s.startswith("Z[") and s.endswith("]"):
        names = tuple(v.strip() for v in s[2:-1].split(",") if v.strip())
        if not names:
            raise ValidationError(f"no variables in ring spec {spec!r}")
        return PolyRing(names)
    raise ValidationError(f"cannot parse ring spec {spec!r}; expected Z or Z[vars]")


def _canon(terms: dict) -> tuple:
    items = [(exp, c) for exp, c in terms.items() if c != 0]
    items.sort(key=lambda t: t[0], reverse=True)
    return tuple(items)


@dataclass(frozen=True)
class PolyElement:
    ring: PolyRing
    terms: tuple  # sorted ((exponents, coefficient), ...), no zeros

    def __post_init__(self):
        for exp, c in self.terms:
            if len(exp) != self.ring.nvars:
                raise StructuralError(
                    f"exponent vector {exp} does not fit {self.ring.render()}"
                )
            if c == 0:
                raise StructuralError("zero coefficient stored in a polynomial")

    def _coerce(self, other):
        if isinstance(other, PolyElement):
            if other.ring != self.ring:
                raise StructuralError(
                    f"ring mismatch: {self.ring.render()} vs {other.ring.render()}"
                )
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for exp, c in other.terms:
            acc[exp] = acc.get(exp, 0) + c
        return PolyElement(self.ring, _canon(acc))

    __radd__ = __add__

    def __neg__(self):
        return PolyElement(self.ring, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc[exp] = acc.get(exp, 0) + c1 * c2
        return PolyElement(self.ring, _canon(acc))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        # Units of Z[x1..xn] are the constants ±1.
        if len(self.terms) != 1:
            return False
        exp, c = self.terms[0]
        return c in (1, -1) and all(e == 0 for e in exp)

    def is_constant(self) -> bool:
        return not self.terms or all(
            all(e == 0 for e in exp) for exp, _ in self.terms
        )

    def leading(self):
        return self.terms[0]

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms:
            factors = []
            for e, name in zip(exp, self.ring.variables):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<{self.render()} in {self.ring.render()}>"


def exact_div(p: PolyElement, d: PolyElement) -> PolyElement | None:
    """Quotient p/d when d divides p exactly over the ring, else None."""
    if d.ring != p.ring:
        raise StructuralError("division across different rings")
    if d.is_zero():
        raise DomainError("division by zero polynomial")
    ring = p.ring
    quotient: dict = {}
    rem = p
    d_exp, d_coeff = d.leading()
    while not rem.is_zero():
        r_exp, r_coeff = rem.leading()
        q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
        if any(e < 0 for e in q_exp) or r_coeff % d_coeff != 0:
            return None
        q_coeff = r_coeff // d_coeff
        quotient[q_exp] = quotient.get(q_exp, 0) + q_coeff
        rem = rem - PolyElement(ring, ((q_exp, q_coeff),)) * d
    return PolyElement(ring, _canon(quotient))


def divides(d: PolyElement, p: PolyElement) -> bool:
    return exact_div(p, d) is not None


def is_signed_t_power(p: PolyElement, t: PolyElement) -> bool:
    """True iff p = ±t^k for some k ≥ 0.  Requires t ≠ 0 and t not a unit."""
    if t.is_zero() or t.is_unit():
        raise DomainError("t must be a nonzero non-unit")
    if p.is_zero():
        return False
    while not p.is_unit():
        q = exact_div(p, t)
        if q is None:
            return False
        p = q
    return True


# ---------------------------------------------------------------------------
# Localization at t: elements p / t^k, normalized so t does not divide p
# unless k = 0.


@dataclass(frozen=True)
class LocalizedElement:
    t: PolyElement
    numerator: PolyElement
    t_power: int

    @staticmethod
    def make(t: PolyElement, numerator: PolyElement, t_power: int = 0
             ) -> "LocalizedElement":
        if t_power < 0:
            raise DomainError("denominator exponent must be ≥ 0")
        while t_power > 0:
            q = exact_div(numerator, t)
            if q is None:
                break
            numerator = q
            t_power -= 1
        return LocalizedElement(t, numerator, t_power)

    def _coerce(self, other):
        if isinstance(other, LocalizedElement):
            if other.t != self.t:
                raise StructuralError("localizations at different elements")
            return other
        if isinstance(other, (int, PolyElement)):
            num = other if isinstance(other, PolyElement) else \
                self.numerator.ring.constant(other)
            return LocalizedElement(self.t, num, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = max(self.t_power, other.t_power)
        num = (
            self.numerator * self.t ** (k - self.t_power)
            + other.numerator * self.t ** (k - other.t_power)
        )
        return LocalizedElement.make(self.t, num, k)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(self.t, -self.numerator, self.t_power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalizedElement.make(
            self.t, self.numerator * other.numerator,
            self.t_power + other.t_power,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_unit(self) -> bool:
        # Units of the localization are ±t^k / t^m.
        return is_signed_t_power(self.numerator, self.t)

    def render(self) -> str:
        num = self.numerator.render()
        if self.t_power == 0:
            return num
        denom = f"({self.t.render()})^{self.t_power}" if self.t_power > 1 \
            else f"({self.t.render()})"
        return f"({num})/{denom}"

    def __repr__(self):
        return f"<{self.render()}>"


def localize(p: PolyElement, t: PolyElement) -> LocalizedElement:
    return LocalizedElement.make(t, p, 0)


def loc_zero(t: PolyElement) -> LocalizedElement:
    return LocalizedElement(t, t.ring.zero(), 0)


def loc_one(t: PolyElement) -> LocalizedElement:
    return LocalizedElement(t, t.ring.one(), 0)


def t_inverse(t: PolyElement, k: int = 1) -> LocalizedElement:
    return LocalizedElement.make(t, t.ring.one(), k)


# ---------------------------------------------------------------------------
# Infix parser for ring elements: integers, declared variables, + - * ^
# (also **), parentheses.


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif text.startswith("**", i):
            tokens.append(("op", "^"))
            i += 2
        elif ch in "+-*^()":
            tokens.append(("op", ch))
            i += 1
        else:
            raise ValidationError(f"unexpected character {ch!r} in {text!r}")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValidationError(f"expected {op!r} in {self.text!r}")

    def parse_expr(self) -> PolyElement:
        value = self.parse_term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> PolyElement:
        value = self.parse_factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.parse_factor()
        return value

    def parse_factor(self) -> PolyElement:
        sign = 1
        while self.peek() == ("op", "-") or self.peek() == ("op", "+"):
            _, op = self.take()
            if op == "-":
                sign = -sign
        value = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, digits = self.take()
            if kind != "int":
                raise ValidationError(
                    f"exponent must be a nonnegative integer in {self.text!r}"
                )
            value = value ** int(digits)
        return value if sign == 1 else -value

    def parse_atom(self) -> PolyElement:
        kind, val = self.take()
        if kind == "int":
            return self.ring.constant(int(val))
        if kind == "name":
            return self.ring.variable(val)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ValidationError(f"unexpected token {val!r} in {self.text!r}")


def _parse_poly(ring: PolyRing, text: str) -> PolyElement:
    parser = _Parser(ring, text)
    value = parser.parse_expr()
    if parser.peek() != ("end", ""):
        raise ValidationError(f"trailing input in polynomial {text!r}")
    return value
