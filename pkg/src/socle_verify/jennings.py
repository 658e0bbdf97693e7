"""Dimension subgroups, graded layers, and the product basis of kG.

For a p-group G with augmentation ideal J, the dimension subgroups
F_r = {g : g - 1 in J^r} form a chain with elementary abelian quotients.
Writing d_r for the GF(p)-dimension of F_r/F_(r+1) and picking lifts
y_(r,1), ..., y_(r,d_r) in F_r of a quotient basis, the sorted products

    y_1^(e_1) ... y_M^(e_M),    0 <= e_j < p

enumerate G bijectively, (y_j - 1) has degree r_j in the radical
filtration, and the graded dimensions of kG are the coefficients of

    prod_j (1 + t^(r_j) + t^(2 r_j) + ... + t^((p-1) r_j)).

The direct sum of the quotients is a restricted Lie algebra: the group
commutator induces the bracket between layers r and r', landing in layer
r + r', and the p-th power map induces the restriction from layer r to
layer p*r.  Everything is generated in degree one under those two
operations.  The top degree s = (p-1) sum_r r*d_r is one-dimensional and

    prod_j (y_j - 1)^(p-1) = sum of all elements of G

holds exactly, because (y-1)^(p-1) = 1 + y + ... + y^(p-1) in
characteristic p and the monomials enumerate G.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ffield import GF, FieldMismatch, FieldSpec
from .groupalgebra import (
    AlgebraElement,
    FiltrationError,
    GroupAlgebra,
    dimension_subgroups_definitional,
)
from .pgroup import GroupElement, PcGroup

import weakref

__all__ = ["JenningsBasis", "JenningsLayer", "DimensionMismatch", "build_jennings_basis"]


class DimensionMismatch(ValueError):
    """A graded dimension, degree, or layer rank came out wrong."""


@dataclass(frozen=True)
class JenningsLayer:
    """Chosen lifts for one quotient F_r/F_(r+1) and their graded coordinates."""

    degree: int
    lifts: tuple[GroupElement, ...]
    coords: np.ndarray  # row j = graded coordinates of (lift_j - 1) in degree r

    @property
    def rank(self) -> int:
        return len(self.lifts)


class JenningsBasis:
    """Layer lifts, layer arithmetic, and the product-basis invariants."""

    def __init__(self, group: PcGroup):
        self.group = group
        self.algebra = GroupAlgebra(group, GF(group.p))
        self.filtration = self.algebra.filtration
        self.series = dimension_subgroups_definitional(group)
        p = group.p

        orders = [sub.order for sub in self.series]
        dims: list[int] = []
        for r in range(1, len(orders)):
            quot = orders[r - 1] // orders[r]
            d = 0
            while p**d < quot:
                d += 1
            if p**d != quot or orders[r - 1] % orders[r]:
                raise DimensionMismatch(
                    f"|F_{r}/F_{r + 1}| = {orders[r - 1]}/{orders[r]} is not a power of {p}"
                )
            dims.append(d)
        self._dims = dims
        self.max_degree = max(r for r, d in enumerate(dims, start=1) if d > 0)

        one = self.algebra.one()
        layers: list[JenningsLayer] = []
        for r in range(1, self.max_degree + 1):
            want = dims[r - 1]
            lifts: list[GroupElement] = []
            rows: list[np.ndarray] = []
            if want:
                basis = np.zeros((0, self.filtration.gr_dims[r]), dtype=np.int64)
                pivots: list[int] = []
                for idx in self.series[r - 1].indices:
                    if idx == 0:
                        continue
                    g = group.element_at(idx)
                    w = self.algebra.gr_coordinates(self.algebra.embed(g) - one, r)
                    if np.any(self.algebra.ops.reduce_rows(w, basis, pivots)):
                        lifts.append(g)
                        rows.append(w)
                        basis, pivots = self.algebra.ops.rref(np.vstack(rows))
                        if len(lifts) == want:
                            break
                if len(lifts) != want:
                    raise DimensionMismatch(
                        f"layer {r}: found {len(lifts)} independent lifts, expected {want}"
                    )
            coords = (
                np.vstack(rows)
                if rows
                else np.zeros((0, self.filtration.gr_dims[r]), dtype=np.int64)
            )
            layers.append(JenningsLayer(r, tuple(lifts), coords))
        self.layers = layers
        self.lift_elements = tuple(y for layer in layers for y in layer.lifts)
        self.lift_degrees = tuple(layer.degree for layer in layers for _ in layer.lifts)
        self._lift_slots = tuple(
            (layer.degree, j) for layer in layers for j in range(layer.rank)
        )

        s = (p - 1) * sum(r * d for r, d in enumerate(dims, start=1))
        if s != self.filtration.socle_degree:
            raise DimensionMismatch(
                f"(p-1) sum r*d_r = {s} but the radical filtration ends at {self.filtration.socle_degree}"
            )

    def d(self, r: int) -> int:
        if r < 1:
            raise ValueError("layer degrees start at 1")
        return self._dims[r - 1] if r <= len(self._dims) else 0

    @property
    def layer_ranks(self) -> list[int]:
        return [layer.rank for layer in self.layers]

    # -- layer arithmetic -----------------------------------------------------

    def class_coordinates(self, g: GroupElement, r: int) -> np.ndarray:
        """Coordinates of g F_(r+1) on layer r's lifts (g must lie in F_r)."""
        if r > self.max_degree:
            if not g.is_identity():
                raise DimensionMismatch(f"g lies outside the trivial subgroup F_{r}")
            return np.zeros(0, dtype=np.int64)
        if r <= len(self.series) and g not in self.series[r - 1]:
            raise DimensionMismatch(f"element is not in F_{r}")
        layer = self.layers[r - 1]
        if layer.rank == 0:
            return np.zeros(0, dtype=np.int64)
        w = self.algebra.gr_coordinates(self.algebra.embed(g) - self.algebra.one(), r)
        coords = self.algebra.ops.solve(layer.coords.T, w)
        if coords is None:
            raise DimensionMismatch(f"class in layer {r} escaped the span of the chosen lifts")
        return coords

    def lie_bracket(self, j1: int, j2: int) -> tuple[int, np.ndarray]:
        """Bracket of lifts number j1, j2 (0-based); returns (r1+r2, coords).

        The group commutator of the two lifts lands in F_(r1+r2); its class
        there, in degree-(r1+r2) lift coordinates, is the induced bracket.
        """
        r1, _ = self._lift_slots[j1]
        r2, _ = self._lift_slots[j2]
        c = self.group.commutator(self.lift_elements[j1], self.lift_elements[j2])
        return r1 + r2, self.class_coordinates(c, r1 + r2)

    def p_restriction(self, j: int) -> tuple[int, np.ndarray]:
        """Restriction map on lift number j (0-based); returns (p*r, coords)."""
        r, _ = self._lift_slots[j]
        c = self.group.power(self.lift_elements[j], self.group.p)
        return self.group.p * r, self.class_coordinates(c, self.group.p * r)

    def degree_one_generates(self) -> bool:
        """Close degree one under brackets and p-powers; must fill every layer.

        Every vector the closure produces keeps a witness group element, so
        brackets and p-th powers of closure vectors stay inside what witness
        commutators and witness powers span.
        """
        ops = self.algebra.ops
        witnesses: list[tuple[int, GroupElement]] = [(1, y) for y in self.layers[0].lifts]
        spans: dict[int, tuple[np.ndarray, list[int]]] = {}

        def absorb(r: int, g: GroupElement) -> bool:
            if r > self.max_degree or self.d(r) == 0:
                return False
            w = self.class_coordinates(g, r)
            basis, pivots = spans.get(r, (np.zeros((0, self.d(r)), dtype=np.int64), []))
            if not np.any(ops.reduce_rows(w, basis, pivots)):
                return False
            spans[r] = ops.rref(np.vstack([basis, w.reshape(1, -1)]))
            return True

        for r, y in witnesses:
            absorb(r, y)
        frontier = list(witnesses)
        while frontier:
            fresh: list[tuple[int, GroupElement]] = []
            for ra, ha in frontier:
                for rb, hb in witnesses:
                    for r, g in (
                        (ra + rb, self.group.commutator(ha, hb)),
                        (ra + rb, self.group.commutator(hb, ha)),
                    ):
                        if absorb(r, g):
                            fresh.append((r, g))
                pw = self.group.power(ha, self.group.p)
                if absorb(self.group.p * ra, pw):
                    fresh.append((self.group.p * ra, pw))
            witnesses.extend(fresh)
            frontier = fresh
        for r in range(1, self.max_degree + 1):
            have = spans[r][0].shape[0] if r in spans else 0
            if have != self.d(r):
                raise DimensionMismatch(
                    f"degree-one closure spans {have} of {self.d(r)} dimensions in layer {r}"
                )
        return True

    # -- dimension bookkeeping ---------------------------------------------------

    def pbw_polynomial(self) -> list[int]:
        """Coefficients of prod_j (1 + t^(r_j) + ... + t^((p-1) r_j))."""
        poly = [1]
        p = self.group.p
        for r in self.lift_degrees:
            factor = [0] * ((p - 1) * r + 1)
            for e in range(p):
                factor[e * r] = 1
            out = [0] * (len(poly) + len(factor) - 1)
            for i, a in enumerate(poly):
                if a:
                    for j, b in enumerate(factor):
                        if b:
                            out[i + j] += a
            poly = out
        return poly

    def pbw_dimension(self, r: int) -> int:
        """Number of lift-power products y_1^(e_1)...y_M^(e_M) of total degree r."""
        poly = self.pbw_polynomial()
        return poly[r] if 0 <= r < len(poly) else 0

    def jq_dimension_check(self) -> dict:
        """Graded dimensions must match the product generating function."""
        pbw = self.pbw_polynomial()
        gr = self.filtration.gr_dims
        if len(pbw) != len(gr) or pbw != gr:
            raise DimensionMismatch(f"graded dimensions {gr} != product coefficients {pbw}")
        if sum(pbw) != self.group.order:
            raise DimensionMismatch(f"product coefficients sum to {sum(pbw)}, not {self.group.order}")
        return {
            "gr_dims": list(gr),
            "pbw_dims": list(pbw),
            "socle_degree": self.filtration.socle_degree,
        }

    def check_normal_form_bijection(self) -> None:
        """Sorted products of lift powers must enumerate G exactly once each."""
        t = self.group.cayley_table
        indices = [0]
        for y in self.lift_elements:
            yi = self.group.index_of(y)
            new = []
            for acc in indices:
                cur = acc
                new.append(cur)
                for _ in range(self.group.p - 1):
                    cur = int(t[cur, yi])
                    new.append(cur)
            indices = new
        if sorted(indices) != list(range(self.group.order)):
            raise DimensionMismatch("lift power products do not enumerate the group")

    def socle_product(self, algebra: GroupAlgebra) -> AlgebraElement:
        """prod_j (y_j - 1)^(p-1) in ascending degree order."""
        if algebra.group is not self.group:
            raise ValueError("algebra is over a different group")
        acc = algebra.one()
        for y in self.lift_elements:
            acc = acc * (algebra.embed(y) - algebra.one()) ** (self.group.p - 1)
        return acc

    def layer_summary(self) -> list[dict]:
        return [
            {
                "r": layer.degree,
                "d_r": layer.rank,
                "lifts": [self.group.word_str(y) for y in layer.lifts],
            }
            for layer in self.layers
        ]


_BASIS_CACHE: "weakref.WeakKeyDictionary[PcGroup, JenningsBasis]" = weakref.WeakKeyDictionary()


def build_jennings_basis(group: PcGroup, field: FieldSpec | None = None) -> JenningsBasis:
    """Per-group cached layer basis (prime-field data, reusable for any GF(p^n))."""
    if field is not None and field.p != group.p:
        raise FieldMismatch(
            f"field has characteristic {field.p} but the group has exponent prime {group.p}"
        )
    basis = _BASIS_CACHE.get(group)
    if basis is None:
        basis = JenningsBasis(group)
        _BASIS_CACHE[group] = basis
    return basis
