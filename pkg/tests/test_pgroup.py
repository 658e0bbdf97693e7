"""Polycyclic group arithmetic against a concrete permutation model.

The dihedral group of order 8 acts on the square's corners; composing
permutations gives a multiplication table computed with no collection
code at all, which pins down both the group law and the normal forms.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socle_verify import (
    InconsistentPresentation,
    NotBijective,
    PcGroup,
    PresentationError,
    RelationViolation,
    catalog,
    catalog_names,
)


def _compose(f, h):
    return lambda x, f=f, h=h: f(h(x))


def _dihedral_model():
    rot = lambda x: (x + 1) % 4
    ref = lambda x: (-x) % 4
    gens = (ref, rot, _compose(rot, rot))  # g1, g2, g3 = g2^2

    def phi(element):
        f = lambda x: x
        for gen, exp in zip(gens, element.exponents):
            for _ in range(exp):
                f = _compose(f, gen)
        return tuple(f(x) for x in range(4))

    return phi


def test_d8_matches_square_symmetries(group):
    g = group("D8")
    phi = _dihedral_model()
    images = {e.exponents: phi(e) for e in g.elements()}
    assert len(set(images.values())) == 8
    for x in g.elements():
        for y in g.elements():
            fx, fy = images[x.exponents], images[y.exponents]
            composed = tuple(fx[fy[i]] for i in range(4))
            assert images[g.multiply(x, y).exponents] == composed


def test_d8_collection_normal_forms(group):
    g = group("D8")
    s = g.element((1, 0, 0))
    r = g.element((0, 1, 0))
    # s r = r^-1 s, and r^-1 = r g3 in normal form
    assert g.multiply(s, r).exponents == (1, 1, 0)
    assert g.multiply(r, s).exponents == (1, 1, 1)
    assert g.inverse(r).exponents == (0, 1, 1)
    assert g.commutator(r, s).exponents == (0, 0, 1)
    assert g.power(r, 2).exponents == (0, 0, 1)
    assert g.multiply(g.identity(), r) == r


def test_parse_word_and_word_str_roundtrip(group):
    g = group("D16")
    for e in g.elements():
        assert g.parse_word(g.word_str(e)) == e
    assert g.parse_word("g2^3 g1").exponents == g.multiply(
        g.power(g.generator(2), 3), g.generator(1)
    ).exponents


def test_cayley_table_is_a_group(group):
    # identity, inverses, associativity spot checks on every catalog group
    for name in catalog_names():
        g = group(name)
        table = g.cayley_table
        n = g.order
        assert table.shape == (n, n)
        ident = g.index_of(g.identity())
        assert (table[ident] == range(n)).all()
        assert (table[:, ident] == range(n)).all()
        inv = g.inverse_table
        for i in range(n):
            assert table[i, inv[i]] == ident
        # each row and column is a permutation
        for i in range(0, n, max(1, n // 8)):
            assert len(set(table[i])) == n
            assert len(set(table[:, i])) == n


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 124), st.integers(0, 124), st.integers(0, 124))
def test_heis125_associativity(a, b, c):
    g = _HEIS125
    x, y, z = g.element_at(a), g.element_at(b), g.element_at(c)
    assert g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z))


_HEIS125 = catalog("Heis125")


def test_frozen_structure_constants(group):
    expected = {
        # name: (center, frattini, lower central orders, jennings orders)
        "D8": (2, 2, [8, 2, 1], [8, 2, 1]),
        "Q8": (2, 2, [8, 2, 1], [8, 2, 1]),
        # F_3 = F_4 = <r^4> in D16: the squares of F_2 only die at F_5
        "D16": (2, 4, [16, 4, 2, 1], [16, 4, 2, 2, 1]),
        "M16": (4, 4, [16, 2, 1], [16, 4, 2, 2, 1]),
        # exponent 3 kills all cubes, so the chain stops at F_3
        "Heis27": (3, 3, [27, 3, 1], [27, 3, 1]),
        "C4xC2": (8, 2, [8, 1], [8, 2, 1]),
        "ES27": (3, 3, [27, 3, 1], [27, 3, 3, 1]),
    }
    for name, (z, f, lcs, jennings) in expected.items():
        g = group(name)
        assert g.center().order == z, name
        assert g.frattini().order == f, name
        assert [s.order for s in g.lower_central_series()] == lcs, name
        assert [s.order for s in g.jennings_series_recursive()] == jennings, name


def test_agemo_and_frattini(group):
    c9 = group("C9")
    assert c9.agemo(c9.full_subgroup()).order == 3
    assert c9.agemo(c9.full_subgroup(), 2).order == 1
    c4c2 = group("C4xC2")
    # Frattini of C4 x C2 is the square subgroup, generated by g1^2
    frat = c4c2.frattini()
    assert frat.order == 2
    assert c4c2.element((0, 0, 1)) in frat.elements()


def test_subgroup_closure(group):
    g = group("D8")
    s = g.subgroup_closure([g.element((0, 1, 0))])
    assert s.order == 4
    assert g.subgroup_closure([g.element((1, 0, 0)), g.element((0, 1, 0))]).order == 8
    assert g.trivial_subgroup().order == 1


def test_group_automorphism_validates_relations(group):
    g = group("D8")
    # r -> r^3 extends to an automorphism fixing s
    auto = g.group_automorphism(
        [g.element((1, 0, 0)), g.element((0, 1, 1)), g.element((0, 0, 1))]
    )
    assert auto.perm is not None
    # swapping the generators breaks g1^2 = 1
    with pytest.raises(RelationViolation):
        g.group_automorphism(
            [g.element((0, 1, 0)), g.element((1, 0, 0)), g.element((0, 0, 1))]
        )


def test_group_automorphism_rejects_collapse(group):
    g = group("C2xC2")
    same = g.element((1, 0))
    with pytest.raises(NotBijective):
        g.group_automorphism([same, same])


def test_inconsistent_presentation_rejected():
    text = """pcgroup p=2 m=3
g1^2 = g2
g2^2 = g3
g3^2 = 1
[g2,g1] = g3
"""
    with pytest.raises(InconsistentPresentation):
        PcGroup.from_presentation_text(text)


def test_malformed_presentations_rejected():
    with pytest.raises(PresentationError):
        PcGroup.from_presentation_text("pcgroup p=2 m=1\ng1^2 = g5\n")
    with pytest.raises(PresentationError):
        PcGroup.from_presentation_text("not a presentation")
    with pytest.raises(PresentationError):
        # commutator relation must only involve later generators
        PcGroup.from_presentation_text(
            "pcgroup p=2 m=2\ng1^2 = 1\ng2^2 = 1\n[g2,g1] = g1\n"
        )


def test_presentation_text_roundtrip(group):
    for name in ("D8", "Q8", "Heis27", "ES125", "C4xC2"):
        g = group(name)
        rebuilt = PcGroup.from_presentation_text(g.presentation_text(), name=name)
        assert (rebuilt.cayley_table == g.cayley_table).all()


def test_stored_automorphisms_cover_catalog(group):
    for name in catalog_names():
        g = group(name)
        autos = g.stored_automorphisms()
        assert autos, name
        ident = g.identity()
        for auto in autos:
            assert auto.images[0] != ident or g.order <= 2 or len(auto.images) > 1


def test_elementary_abelian_flags(group):
    assert group("C3xC3").is_elementary_abelian()
    assert group("C2xC2xC2").is_elementary_abelian()
    assert not group("C9").is_elementary_abelian()
    assert not group("D8").is_elementary_abelian()
    assert group("C9").is_abelian()
    assert not group("Heis27").is_abelian()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 26), min_size=2, max_size=5))
def test_word_products_match_table(indices):
    g = _HEIS27
    via_elements = g.identity()
    for i in indices:
        via_elements = g.multiply(via_elements, g.element_at(i))
    code = g.index_of(g.identity())
    for i in indices:
        code = int(g.cayley_table[code, i])
    assert g.index_of(via_elements) == code


_HEIS27 = catalog("Heis27")
