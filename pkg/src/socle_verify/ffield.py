"""Exact arithmetic in small finite fields GF(p^n).

Elements are dense coefficient vectors over GF(p), reduced modulo a fixed
monic irreducible polynomial in the generator ``t``.  Everything here is
desk scale (n <= 8), so schoolbook polynomial arithmetic is used throughout;
there are no log/antilog tables.
"""

from __future__ import annotations

import itertools

from typing import Iterator, Sequence

__all__ = [
    "GF",
    "FieldSpec",
    "FieldElement",
    "FieldMismatch",
    "DomainError",
    "MAX_EXTENSION_DEGREE",
    "parse_field_literal",
    "is_prime",
]

MAX_EXTENSION_DEGREE = 8


class FieldMismatch(ValueError):
    """Raised when two operands live over different field specs."""


class DomainError(ValueError):
    """Raised when an argument is outside an operation's domain."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists are low-degree first

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    # mod is monic
    r = list(a)
    dm = len(mod) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for i, c in enumerate(mod):
                r[shift + i] = (r[shift + i] - lead * c) % p
        r.pop()
    return _trim(r)


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial factoring; fine for the degrees this package supports (<= 8)."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        return False
    if n == 1:
        return True
    # a reducible polynomial of degree n has a monic factor of degree <= n // 2
    for d in range(1, n // 2 + 1):
        for code in range(p**d):
            div = [0] * (d + 1)
            c = code
            for i in range(d):
                div[i] = c % p
                c //= p
            div[d] = 1
            if not _poly_mod(coeffs, div, p):
                return False
    return True


_SMALLEST_IRREDUCIBLE: dict[tuple[int, int], tuple[int, ...]] = {}


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over GF(p).

    Candidates are ordered by their low-degree-first coefficient vectors, so
    the choice is reproducible across runs and platforms.
    """
    key = (p, n)
    cached = _SMALLEST_IRREDUCIBLE.get(key)
    if cached is not None:
        return cached
    # itertools.product varies the last digit fastest, so putting the constant
    # coefficient first makes it the most significant comparison digit
    for low_first in itertools.product(range(p), repeat=n):
        coeffs = list(low_first) + [1]
        if _is_irreducible(coeffs, p):
            result = tuple(coeffs)
            _SMALLEST_IRREDUCIBLE[key] = result
            return result
    raise RuntimeError(f"no irreducible polynomial of degree {n} over GF({p})")


class FieldSpec:
    """A concrete finite field GF(p^n) with a pinned modulus.

    Two specs compare equal iff they have the same characteristic, degree and
    modulus; mixing elements across unequal specs raises FieldMismatch.
    """

    __slots__ = ("p", "n", "q", "modulus")

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | str | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if not 1 <= n <= MAX_EXTENSION_DEGREE:
            raise ValueError(f"extension degree must be in 1..{MAX_EXTENSION_DEGREE}, got {n}")
        self.p = p
        self.n = n
        self.q = p**n
        if modulus is None:
            self.modulus = _smallest_irreducible(p, n)
        else:
            if isinstance(modulus, str):
                modulus = parse_polynomial_literal(modulus, p)
            mod = tuple(c % p for c in modulus)
            if len(mod) != n + 1:
                raise ValueError(f"modulus must have degree {n} (got {len(mod) - 1})")
            if mod[-1] != 1:
                raise ValueError("modulus must be monic")
            if not _is_irreducible(mod, p):
                raise ValueError(f"modulus {list(mod)} is reducible over GF({p})")
            self.modulus = mod

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __repr__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.q}; {format_modulus(self)})"

    # -- element constructors ------------------------------------------------

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.n)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.n - 1))

    def t(self) -> FieldElement:
        """The residue of the generator t (zero in a prime field)."""
        coeffs = [0] * self.n
        if self.n >= 2:
            coeffs[1] = 1
            return FieldElement(self, tuple(coeffs))
        return self.from_coeffs([-self.modulus[0]])

    def element(self, value: int | FieldElement) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"element of {value.spec!r} used in {self!r}")
            return value
        return FieldElement(self, (value % self.p,) + (0,) * (self.n - 1))

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        reduced = _poly_mod([c % self.p for c in coeffs], self.modulus, self.p)
        reduced += [0] * (self.n - len(reduced))
        return FieldElement(self, tuple(reduced))

    def elements(self) -> Iterator[FieldElement]:
        for code in range(self.q):
            yield self.element_from_code(code)

    def units(self) -> Iterator[FieldElement]:
        for code in range(1, self.q):
            yield self.element_from_code(code)

    # -- integer codes (base-p packed coefficients) --------------------------

    def code_of(self, a: FieldElement) -> int:
        if a.spec != self:
            raise FieldMismatch(f"element of {a.spec!r} used in {self!r}")
        code = 0
        for c in reversed(a.coeffs):
            code = code * self.p + c
        return code

    def element_from_code(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        coeffs = []
        for _ in range(self.n):
            coeffs.append(code % self.p)
            code //= self.p
        return FieldElement(self, tuple(coeffs))

    def parse(self, text: str) -> FieldElement:
        return parse_field_literal(self, text)


def GF(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    return FieldSpec(p, n, modulus)


class FieldElement:
    """An element of a fixed GF(p^n), stored as a coefficient tuple."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _coerce(self, other: int | FieldElement) -> FieldElement:
        if isinstance(other, int):
            return self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented  # type: ignore[return-value]
        if other.spec != self.spec:
            raise FieldMismatch(f"cannot combine {self.spec!r} with {other.spec!r}")
        return other

    def __add__(self, other: int | FieldElement) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: int | FieldElement) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: int) -> FieldElement:
        return (-self) + other

    def __mul__(self, other: int | FieldElement) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        spec = self.spec
        prod = _poly_mul(_trim(list(self.coeffs)), _trim(list(o.coeffs)), spec.p)
        return spec.from_coeffs(prod)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError(f"zero is not invertible in {self.spec!r}")
        return self ** (self.spec.q - 2)

    def __truediv__(self, other: int | FieldElement) -> FieldElement:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: int) -> FieldElement:
        return self.spec.element(other) / self

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.spec.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self == self.spec.one()

    def is_pm1_power(self) -> bool:
        """Whether this unit is a (p-1)-st power in the multiplicative group.

        The multiplicative group is cyclic of order q-1, so the (p-1)-st
        powers form its unique subgroup of index gcd(p-1, q-1) = p-1, and
        membership reduces to one exponentiation.
        """
        if self.is_zero():
            raise DomainError("zero is not a unit; (p-1)-st power test undefined")
        e = (self.spec.q - 1) // (self.spec.p - 1)
        return (self**e).is_one()

    def __str__(self) -> str:
        return format_field_literal(self)

    def __repr__(self) -> str:
        return f"{self.spec!r}:{self}"


# ---------------------------------------------------------------------------
# literal grammar: decimal residues for prime fields, polynomials in t
# (e.g. "2*t+1", "t^2+2") for extensions; spaces are optional

def format_field_literal(a: FieldElement) -> str:
    terms = []
    for deg in range(a.spec.n - 1, -1, -1):
        c = a.coeffs[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        elif deg == 1:
            terms.append("t" if c == 1 else f"{c}*t")
        else:
            terms.append(f"t^{deg}" if c == 1 else f"{c}*t^{deg}")
    return "+".join(terms) if terms else "0"


def format_modulus(spec: FieldSpec) -> str:
    terms = []
    for deg in range(spec.n, -1, -1):
        c = spec.modulus[deg]
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        elif deg == 1:
            terms.append("t" if c == 1 else f"{c}*t")
        else:
            terms.append(f"t^{deg}" if c == 1 else f"{c}*t^{deg}")
    return "+".join(terms) if terms else "0"


def parse_polynomial_literal(text: str, p: int) -> list[int]:
    """Parse a polynomial in t over GF(p), low-degree-first coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field literal")
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign = 1
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            terms.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and not cur and not terms:
            sign = -1 if ch == "-" else 1
        else:
            cur += ch
    if not cur:
        raise ValueError(f"malformed field literal {text!r}")
    terms.append((sign, cur))

    coeffs: list[int] = []

    def bump(deg: int, val: int) -> None:
        while len(coeffs) <= deg:
            coeffs.append(0)
        coeffs[deg] = (coeffs[deg] + val) % p

    import re

    term_re = re.compile(r"^(?:(\d+)\*?)?(t)(?:\^(\d+))?$|^(\d+)$")
    for sgn, term in terms:
        mt = term_re.match(term)
        if not mt:
            raise ValueError(f"malformed term {term!r} in field literal {text!r}")
        if mt.group(4) is not None:
            bump(0, sgn * int(mt.group(4)))
            continue
        coef = int(mt.group(1)) if mt.group(1) else 1
        deg = int(mt.group(3)) if mt.group(3) else 1
        bump(deg, sgn * coef)
    return coeffs


def parse_field_literal(spec: FieldSpec, text: str) -> FieldElement:
    coeffs = parse_polynomial_literal(text, spec.p)
    return spec.from_coeffs(coeffs)
