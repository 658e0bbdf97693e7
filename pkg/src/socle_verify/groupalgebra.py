"""Group algebras kG of finite p-groups over GF(p^n).

Elements are coefficient vectors indexed by the group's normal-form
order, with coefficients stored as integer field codes.  Because G is a
p-group and char k = p, the algebra is local: the Jacobson radical is
the augmentation ideal J, its powers give a filtration that ends in a
one-dimensional socle spanned by the sum of all group elements, and the
filtration is what everything downstream (dimension subgroups, graded
algebra, automorphism blocks) is measured against.

Row-echelon bases of the powers J^r are computed over the prime field
and reused for every coefficient field of the same characteristic;
echelonization commutes with extension of scalars, and the test suite
recomputes a filtration honestly over GF(p^n) to pin that down.
"""

from __future__ import annotations

import re
import weakref

import numpy as np

from .ffield import GF, DomainError, FieldElement, FieldMismatch, FieldSpec
from .linalg import FieldOps
from .pgroup import GroupElement, PcGroup, Subgroup

__all__ = [
    "GroupAlgebra",
    "AlgebraElement",
    "RadicalFiltration",
    "FiltrationError",
    "NotAUnit",
    "radical_filtration",
    "dimension_subgroups_definitional",
]


class FiltrationError(ValueError):
    """Radical filtration or socle structure violates a required invariant."""


class NotAUnit(ValueError):
    """Element has augmentation zero, hence lies in the radical."""


def _sum_codes(ops: FieldOps, codes: np.ndarray) -> int:
    if ops.n == 1:
        return int(codes.sum() % ops.p)
    planes = ops.decode(codes.reshape(-1))
    return int(ops.encode(planes.sum(axis=0) % ops.p))


class RadicalFiltration:
    """Echelon bases of J^0 > J^1 > ... > J^s > J^(s+1) = 0."""

    def __init__(self, group: PcGroup, ops: FieldOps | None = None):
        self.group = group
        self.ops = ops if ops is not None else FieldOps(GF(group.p))
        if self.ops.p != group.p:
            raise FieldMismatch("filtration field characteristic must match the group prime")
        ops = self.ops
        n = group.order
        t = group.cayley_table
        inv = group.inverse_table
        gens = [group.index_of(g) for g in group.generators()]
        rtake = [t[:, int(inv[gi])] for gi in gens]

        first = np.zeros((n - 1, n), dtype=np.int64)
        first[:, 0] = ops.p - 1
        first[np.arange(n - 1), np.arange(1, n)] = 1
        bases: list[np.ndarray] = [ops.eye(n)]
        pivots: list[list[int]] = [list(range(n))]
        b, piv = ops.rref(first)
        bases.append(b)
        pivots.append(piv)
        while bases[-1].shape[0] > 0:
            prev = bases[-1]
            # J^(r+1) = sum_i J^r (g_i - 1): the augmentation ideal is
            # generated, as a right ideal over itself, by the generator
            # differences
            stacked = np.vstack([ops.sub(prev[:, rt], prev) for rt in rtake])
            b, piv = ops.rref(stacked)
            if b.shape[0] >= prev.shape[0]:
                raise FiltrationError("radical filtration failed to descend strictly")
            bases.append(b)
            pivots.append(piv)

        self.bases = bases
        self.pivots = pivots
        self.dims = [b.shape[0] for b in bases]
        self.socle_degree = len(bases) - 2
        if self.dims[self.socle_degree] != 1:
            raise FiltrationError(
                f"last nonzero radical power has dimension {self.dims[self.socle_degree]}, expected 1"
            )
        self.gr_dims = [self.dims[r] - self.dims[r + 1] for r in range(self.socle_degree + 1)]

        # complements C_r with J^r = C_r (+) J^(r+1); coordinates on C_r are
        # the graded coordinates in degree r
        self.complements: list[np.ndarray] = []
        self.comp_pivots: list[list[int]] = []
        for r in range(self.socle_degree + 1):
            reduced = ops.reduce_rows(self.bases[r], self.bases[r + 1], self.pivots[r + 1])
            q, qp = ops.rref(reduced)
            if q.shape[0] != self.gr_dims[r]:
                raise FiltrationError(f"graded complement in degree {r} has the wrong rank")
            self.complements.append(q)
            self.comp_pivots.append(qp)

    def basis(self, r: int) -> np.ndarray:
        """Echelon basis of J^r (the zero-row matrix for r past the socle)."""
        if r < 0:
            raise ValueError("radical power index must be nonnegative")
        if r >= len(self.bases):
            return self.bases[-1]
        return self.bases[r]

    def basis_pivots(self, r: int) -> list[int]:
        if r >= len(self.bases):
            return self.pivots[-1]
        return self.pivots[r]


_FILTRATION_CACHE: "weakref.WeakKeyDictionary[PcGroup, RadicalFiltration]" = weakref.WeakKeyDictionary()


def radical_filtration(group: PcGroup) -> RadicalFiltration:
    """Prime-field radical filtration, cached per group."""
    filt = _FILTRATION_CACHE.get(group)
    if filt is None:
        filt = RadicalFiltration(group)
        _FILTRATION_CACHE[group] = filt
    return filt


def dimension_subgroups_definitional(group: PcGroup) -> list[Subgroup]:
    """F_r = {g : g - 1 in J^r}, straight from the definition.

    Entry k of the result is F_(k+1).  Interior repeats (zero layers) are
    kept so the indexing carries degrees; the chain ends at its first
    trivial term, matching jennings_series_recursive.
    """
    filt = radical_filtration(group)
    ops = filt.ops
    n = group.order
    diffs = np.zeros((n, n), dtype=np.int64)
    diffs[np.arange(n), np.arange(n)] = 1
    diffs[:, 0] = (diffs[:, 0] - 1) % ops.p
    out: list[Subgroup] = []
    for r in range(1, filt.socle_degree + 2):
        res = ops.reduce_rows(diffs, filt.bases[r], filt.pivots[r])
        idxs = [int(i) for i in np.nonzero(~res.any(axis=1))[0]]
        if group._closure_indices(idxs) != idxs:
            raise FiltrationError(f"membership set for J^{r} is not a subgroup")
        out.append(Subgroup(group, idxs, [group.element_at(i) for i in idxs if i]))
        if out[-1].is_trivial():
            break
    if not out[-1].is_trivial():
        raise FiltrationError("dimension subgroup chain did not reach the trivial group")
    return out


class AlgebraElement:
    """A vector of field codes over the group basis, tied to its algebra."""

    __slots__ = ("algebra", "codes")

    def __init__(self, algebra: GroupAlgebra, codes: np.ndarray):
        self.algebra = algebra
        self.codes = codes

    def _coerce(self, other) -> "AlgebraElement | None":
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise FieldMismatch("elements belong to different group algebras")
            return other
        if isinstance(other, int):
            return self.algebra.scalar(other)
        if isinstance(other, FieldElement):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.algebra, self.algebra.ops.add(self.codes, o.codes))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.algebra, self.algebra.ops.sub(self.codes, o.codes))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraElement(self.algebra, self.algebra.ops.neg(self.codes))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            code = self.algebra.field.code_of(self.algebra.field.element(other))
            scaled = self.algebra.ops.mul(self.codes, np.full_like(self.codes, code))
            return AlgebraElement(self.algebra, scaled)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElement(self.algebra, self.algebra.multiply_codes(self.codes, o.codes))

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use inverse() for negative powers")
        acc = self.algebra.one()
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and other.algebra is self.algebra
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((id(self.algebra), self.codes.tobytes()))

    def is_zero(self) -> bool:
        return not self.codes.any()

    def augmentation(self) -> FieldElement:
        return self.algebra.field.element_from_code(_sum_codes(self.algebra.ops, self.codes))

    def coefficient(self, g: GroupElement) -> FieldElement:
        idx = self.algebra.group.index_of(g)
        return self.algebra.field.element_from_code(int(self.codes[idx]))

    def inverse(self) -> "AlgebraElement":
        return self.algebra.unit_inverse(self)

    def __str__(self) -> str:
        alg = self.algebra
        terms = []
        for idx in np.nonzero(self.codes)[0]:
            c = alg.field.element_from_code(int(self.codes[idx]))
            word = alg.group.word_str(alg.group.element_at(int(idx)))
            if c.is_one():
                terms.append(word)
            elif alg.field.n == 1:
                terms.append(f"{c}*{word}")
            else:
                terms.append(f"({c})*{word}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


class GroupAlgebra:
    """The algebra kG with a vectorized convolution product."""

    def __init__(self, group: PcGroup, field: FieldSpec):
        if field.p != group.p:
            raise FieldMismatch(
                f"group has prime {group.p} but field has characteristic {field.p}"
            )
        self.group = group
        self.field = field
        self.ops = FieldOps(field)
        t = group.cayley_table
        inv = group.inverse_table
        # khinv[k,h] = index of k * h^-1; left multiplication by a is then
        # the matrix a[khinv]
        self._khinv = t[:, inv]
        self._hkinv = t[inv].T  # hkinv[k,g] = index of g^-1 * k
        self.generator_indices = [group.index_of(g) for g in group.generators()]

    @property
    def dimension(self) -> int:
        return self.group.order

    @property
    def filtration(self) -> RadicalFiltration:
        return radical_filtration(self.group)

    @property
    def socle_degree(self) -> int:
        return self.filtration.socle_degree

    # -- element constructors --------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, np.zeros(self.dimension, dtype=np.int64))

    def one(self) -> AlgebraElement:
        codes = np.zeros(self.dimension, dtype=np.int64)
        codes[0] = 1
        return AlgebraElement(self, codes)

    def scalar(self, c: int | FieldElement) -> AlgebraElement:
        codes = np.zeros(self.dimension, dtype=np.int64)
        codes[0] = self.field.code_of(self.field.element(c))
        return AlgebraElement(self, codes)

    def embed(self, g: GroupElement) -> AlgebraElement:
        codes = np.zeros(self.dimension, dtype=np.int64)
        codes[self.group.index_of(g)] = 1
        return AlgebraElement(self, codes)

    def from_codes(self, codes: np.ndarray) -> AlgebraElement:
        arr = np.asarray(codes, dtype=np.int64)
        if arr.shape != (self.dimension,):
            raise ValueError(f"expected {self.dimension} coefficients")
        return AlgebraElement(self, arr)

    def sum_of_group_elements(self) -> AlgebraElement:
        return AlgebraElement(self, np.ones(self.dimension, dtype=np.int64))

    # -- multiplication ----------------------------------------------------------

    def left_mult_matrix(self, codes: np.ndarray) -> np.ndarray:
        """Matrix of x -> a*x in the group basis (column-vector convention)."""
        return codes[self._khinv]

    def right_mult_matrix(self, codes: np.ndarray) -> np.ndarray:
        """Matrix of x -> x*a."""
        return codes[self._hkinv]

    def multiply_codes(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.ops.matvec(self.left_mult_matrix(a), b)

    def unit_inverse(self, u: AlgebraElement) -> AlgebraElement:
        """Inverse via the geometric series of the radical part.

        u = eps(1 - z) with z in J, so u^-1 = eps^-1 (1 + z + ... + z^s).
        """
        eps = u.augmentation()
        if eps.is_zero():
            raise NotAUnit("element lies in the augmentation ideal")
        einv = self.field.code_of(eps.inverse())
        w = self.ops.mul(u.codes, np.full_like(u.codes, einv))
        z = self.ops.sub(self.one().codes, w)
        lz = self.left_mult_matrix(z)
        term = self.one().codes
        acc = term.copy()
        for _ in range(self.socle_degree):
            term = self.ops.matvec(lz, term)
            if not term.any():
                break
            acc = self.ops.add(acc, term)
        inv_codes = self.ops.mul(acc, np.full_like(acc, einv))
        if not np.array_equal(self.multiply_codes(u.codes, inv_codes), self.one().codes):
            raise NotAUnit("geometric series did not invert the element")
        return AlgebraElement(self, inv_codes)

    # -- filtration access ---------------------------------------------------------

    def in_radical_power(self, x: AlgebraElement, r: int) -> bool:
        filt = self.filtration
        res = self.ops.reduce_rows(x.codes, filt.basis(r), filt.basis_pivots(r))
        return not res.any()

    def gr_coordinates(self, x: AlgebraElement, r: int) -> np.ndarray:
        """Coordinates of x + J^(r+1) on the degree-r complement basis."""
        filt = self.filtration
        if not 0 <= r <= filt.socle_degree:
            raise FiltrationError(f"degree {r} outside 0..{filt.socle_degree}")
        if not self.in_radical_power(x, r):
            raise FiltrationError(f"element does not lie in J^{r}")
        proj = self.ops.reduce_rows(x.codes, filt.bases[r + 1], filt.pivots[r + 1])
        coords = self.ops.coordinates(proj, filt.complements[r], filt.comp_pivots[r])
        if coords is None:
            raise FiltrationError("projected element escaped its graded complement")
        return coords

    def socle_vector(self) -> AlgebraElement:
        """The sum of all group elements, certified to span the socle.

        Certification: J^s is one-dimensional and spanned by this vector,
        and the fixed space of all left and all right translations is
        exactly one-dimensional (equivalently, the two-sided annihilator
        of J is k times this vector).
        """
        filt = self.filtration
        s = filt.socle_degree
        if filt.dims[s] != 1 or not np.all(filt.bases[s] == 1):
            raise FiltrationError("last radical power is not spanned by the all-ones vector")
        t = self.group.cayley_table
        inv = self.group.inverse_table
        n = self.dimension
        ops = filt.ops
        rows = []
        for gi in self.generator_indices:
            for gather in (t[int(inv[gi])], t[:, int(inv[gi])]):
                block = np.zeros((n, n), dtype=np.int64)
                block[np.arange(n), gather] = 1
                block[np.arange(n), np.arange(n)] = (block[np.arange(n), np.arange(n)] - 1) % ops.p
                rows.append(block)
        fixed = ops.nullspace(np.vstack(rows))
        if fixed.shape[0] != 1 or not np.all(fixed == 1):
            raise FiltrationError("translation-fixed space is not spanned by the all-ones vector")
        return self.sum_of_group_elements()

    # -- parsing ----------------------------------------------------------------------

    def parse(self, text: str) -> AlgebraElement:
        """Parse 'g1 + 2*g2 g3 + (t+1)*g1^2' style literals."""
        acc = self.zero()
        for sign, term in _split_terms(text):
            coeff, word = _split_coeff(term, self.field)
            el = self.embed(self.group.parse_word(word))
            contrib = el * coeff
            acc = acc + contrib if sign > 0 else acc - contrib
        return acc


def _split_terms(text: str) -> list[tuple[int, str]]:
    s = text.strip()
    if not s:
        raise ValueError("empty algebra literal")
    out = []
    depth = 0
    pending = 1
    cur: list[str] = []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-":
            chunk = "".join(cur).strip()
            if chunk:
                out.append((pending, chunk))
                pending = 1 if ch == "+" else -1
            else:
                pending *= 1 if ch == "+" else -1
            cur = []
            continue
        cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    chunk = "".join(cur).strip()
    if not chunk:
        raise ValueError(f"dangling operator in {text!r}")
    out.append((pending, chunk))
    return out


def _split_coeff(term: str, field: FieldSpec) -> tuple[FieldElement, str]:
    t = term.strip()
    if t.startswith("("):
        depth = 0
        for k, ch in enumerate(t):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        coeff = field.parse(t[1 : k])
        rest = t[k + 1 :].lstrip()
        if rest.startswith("*"):
            rest = rest[1:]
        return coeff, rest.strip() or "1"
    m = re.match(r"^(\d+)\s*\*?\s*(.*)$", t)
    if m:
        return field.element(int(m.group(1))), m.group(2).strip() or "1"
    return field.one(), t
