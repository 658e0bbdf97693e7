"""Truncated polynomial rings k[x_1, ..., x_m] / (x_1^p, ..., x_m^p).

This is the shape of the graded algebra of kG when every generator sits
in the same filtration degree (and, with a degree-weighted grading, in
general).  Elements are dense coefficient grids of shape (p, ..., p).
The ring's one nontrivial job here: push an invertible linear change of
variables through the top monomial prod_j x_j^((p-1)).  The image of a
linear substitution is homogeneous, the top degree m*(p-1) contains no
monomial other than the top one inside the truncation, so the image of
the top monomial is an exact scalar multiple of itself; that scalar is
what gets compared against det^(p-1).
"""

from __future__ import annotations

import numpy as np

from .ffield import FieldElement, FieldMismatch, FieldSpec
from .linalg import FieldOps

__all__ = [
    "TruncatedPolynomialRing",
    "TruncatedPolynomial",
    "NotScalarMultiple",
    "SingularMatrix",
]


class NotScalarMultiple(ValueError):
    """Image of the top monomial picked up lower-order terms."""


class SingularMatrix(ValueError):
    """Linear substitutions must be invertible."""


class TruncatedPolynomialRing:
    """k[x_1..x_m] with every variable's p-th power truncated to zero."""

    def __init__(self, field: FieldSpec, nvars: int):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.field = field
        self.nvars = nvars
        self.p = field.p
        self.ops = FieldOps(field)
        self.shape = (self.p,) * nvars

    def zero(self) -> TruncatedPolynomial:
        return TruncatedPolynomial(self, np.zeros(self.shape, dtype=np.int64))

    def one(self) -> TruncatedPolynomial:
        grid = np.zeros(self.shape, dtype=np.int64)
        grid[(0,) * self.nvars] = 1
        return TruncatedPolynomial(self, grid)

    def scalar(self, c: int | FieldElement) -> TruncatedPolynomial:
        grid = np.zeros(self.shape, dtype=np.int64)
        grid[(0,) * self.nvars] = self.field.code_of(self.field.element(c))
        return TruncatedPolynomial(self, grid)

    def variable(self, j: int) -> TruncatedPolynomial:
        if not 1 <= j <= self.nvars:
            raise ValueError(f"variable index {j} out of range 1..{self.nvars}")
        grid = np.zeros(self.shape, dtype=np.int64)
        grid[tuple(1 if k == j - 1 else 0 for k in range(self.nvars))] = 1
        return TruncatedPolynomial(self, grid)

    def monomial(self, exponents: tuple[int, ...], coeff: int | FieldElement = 1) -> TruncatedPolynomial:
        if len(exponents) != self.nvars or any(not 0 <= e < self.p for e in exponents):
            raise ValueError(f"exponents must be {self.nvars} values in 0..{self.p - 1}")
        grid = np.zeros(self.shape, dtype=np.int64)
        grid[tuple(exponents)] = self.field.code_of(self.field.element(coeff))
        return TruncatedPolynomial(self, grid)

    def top_monomial(self) -> TruncatedPolynomial:
        return self.monomial((self.p - 1,) * self.nvars)

    def linear_form(self, coeffs: np.ndarray) -> TruncatedPolynomial:
        """sum_i coeffs[i] * x_(i+1) from a vector of field codes."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (self.nvars,):
            raise ValueError(f"need {self.nvars} coefficients")
        grid = np.zeros(self.shape, dtype=np.int64)
        for i in range(self.nvars):
            grid[tuple(1 if k == i else 0 for k in range(self.nvars))] = coeffs[i]
        return TruncatedPolynomial(self, grid)

    def _mul_grids(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for exps in np.ndindex(*self.shape):
            c = int(b[exps])
            if not c:
                continue
            dst = tuple(slice(e, self.p) for e in exps)
            src = tuple(slice(0, self.p - e) for e in exps)
            out[dst] = self.ops.add(out[dst], self.ops.mul(a[src], np.int64(c)))
        return out

    def _substitution_rows(self, matrix: np.ndarray) -> np.ndarray:
        """Validate a linear substitution x_j -> sum_i matrix[j,i] x_i."""
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape != (self.nvars, self.nvars):
            raise ValueError("substitution matrix has the wrong shape")
        if self.ops.det(matrix) == 0:
            raise SingularMatrix("linear substitution matrix is singular")
        return matrix

    def top_monomial_scalar(self, matrix: np.ndarray) -> FieldElement:
        """Scalar lambda with (prod_j L_j^(p-1)) = lambda * top monomial,
        where L_j = sum_i matrix[j,i] x_i.

        Homogeneity makes the image an exact multiple of the top monomial;
        anything else is an error in the ring arithmetic.
        """
        matrix = self._substitution_rows(matrix)
        acc = self.one()
        for j in range(self.nvars):
            form = self.linear_form(matrix[j])
            acc = acc * form ** (self.p - 1)
        top = (self.p - 1,) * self.nvars
        lam = int(acc.grid[top])
        rest = acc.grid.copy()
        rest[top] = 0
        if rest.any():
            raise NotScalarMultiple("image of the top monomial is not homogeneous of top degree")
        return self.field.element_from_code(lam)


class TruncatedPolynomial:
    __slots__ = ("ring", "grid")

    def __init__(self, ring: TruncatedPolynomialRing, grid: np.ndarray):
        self.ring = ring
        self.grid = grid

    def _check(self, other: "TruncatedPolynomial") -> None:
        if other.ring is not self.ring:
            raise FieldMismatch("polynomials from different rings")

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check(other)
        return TruncatedPolynomial(self.ring, self.ring.ops.add(self.grid, other.grid))

    def __sub__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        self._check(other)
        return TruncatedPolynomial(self.ring, self.ring.ops.sub(self.grid, other.grid))

    def __neg__(self) -> "TruncatedPolynomial":
        return TruncatedPolynomial(self.ring, self.ring.ops.neg(self.grid))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            code = self.ring.field.code_of(self.ring.field.element(other))
            return TruncatedPolynomial(self.ring, self.ring.ops.mul(self.grid, np.int64(code)))
        if isinstance(other, TruncatedPolynomial):
            self._check(other)
            return TruncatedPolynomial(self.ring, self.ring._mul_grids(self.grid, other.grid))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedPolynomial":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        acc = self.ring.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedPolynomial)
            and other.ring is self.ring
            and np.array_equal(self.grid, other.grid)
        )

    def __hash__(self):
        return hash((id(self.ring), self.grid.tobytes()))

    def is_zero(self) -> bool:
        return not self.grid.any()

    def coefficient(self, exponents: tuple[int, ...]) -> FieldElement:
        return self.ring.field.element_from_code(int(self.grid[tuple(exponents)]))

    def substitute(
        self, images: "list[TruncatedPolynomial] | np.ndarray"
    ) -> "TruncatedPolynomial":
        """Evaluate at x_j -> images[j-1].

        A square matrix of field codes means the linear substitution
        x_j -> sum_i matrix[j,i] x_i; it must be invertible.
        """
        if isinstance(images, np.ndarray):
            matrix = self.ring._substitution_rows(images)
            images = [self.ring.linear_form(matrix[j]) for j in range(self.ring.nvars)]
        if len(images) != self.ring.nvars:
            raise ValueError(f"need {self.ring.nvars} images")
        for img in images:
            self._check(img)
        pow_tables = []
        for img in images:
            tab = [self.ring.one()]
            for _ in range(self.ring.p - 1):
                tab.append(tab[-1] * img)
            pow_tables.append(tab)
        acc = self.ring.zero()
        for exps in np.ndindex(*self.ring.shape):
            c = int(self.grid[exps])
            if not c:
                continue
            term = self.ring.scalar(self.ring.field.element_from_code(c))
            for j, e in enumerate(exps):
                if e:
                    term = term * pow_tables[j][e]
            acc = acc + term
        return acc

    def __str__(self) -> str:
        terms = []
        for exps in np.ndindex(*self.ring.shape):
            c = int(self.grid[exps])
            if not c:
                continue
            mono = " ".join(
                f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}" for j, e in enumerate(exps) if e
            )
            lit = str(self.ring.field.element_from_code(c))
            if not mono:
                terms.append(lit if self.ring.field.n == 1 else f"({lit})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{lit}*{mono}" if self.ring.field.n == 1 else f"({lit})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"TruncatedPolynomial({self})"
