"""Algebra automorphisms: construction, validation, and the socle scalar.

The determinant side is cross-checked at two scales: tiny cases where the
blocks can be read off by hand, and multiplicativity under composition,
which the graded action must respect if the bookkeeping is right.
"""

from __future__ import annotations

import random

import numpy as np
import pytest

from socle_verify import (
    GF,
    GroupAlgebra,
    NotBijective,
    NotMultiplicative,
    SingularLinearPart,
    catalog,
    lambda_of,
    induced_blocks,
    verify_theorem,
)
from socle_verify.automorphisms import (
    FULL_PAIR_CHECK_LIMIT,
    AlgebraAutomorphism,
    parse_automorphism_specs,
    random_inner,
    random_substitution,
)


def test_c3_inversion_report(algebra):
    alg = algebra("C3")
    g = alg.group
    auto = AlgebraAutomorphism.from_group_automorphism(
        alg, g.group_automorphism([g.element((2,))])
    )
    rep = verify_theorem(auto)
    d = rep.as_dict()
    assert d["lambda"] == "1"
    assert d["det_blocks"] == [{"r": 1, "det": "2"}]
    assert d["det_total"] == "2"
    assert d["det_pow"] == "1"  # 2^2 = 4 = 1 mod 3
    assert d["equation_holds"] and d["in_subgroup"] and d["lambda_is_one"]


def test_gf9_diagonal_substitution_lambda():
    alg = GroupAlgebra(catalog("C3xC3"), GF(3, 2))
    k = alg.field
    zeta = k.parse("t+1")  # generates the units
    linear = np.array(
        [[k.code_of(zeta), 0], [0, k.code_of(k.one())]], dtype=np.int64
    )
    auto = AlgebraAutomorphism.elementary_abelian_substitution(alg, linear)
    lam = lambda_of(auto)
    assert lam == zeta * zeta  # det = zeta, lambda = det^(p-1)
    assert str(lam) == "2*t"
    action = induced_blocks(auto)
    assert action.det_total == zeta
    assert lam.is_pm1_power()


def test_gf9_spec_example():
    alg = GroupAlgebra(catalog("C3xC3"), GF(3, 2))
    (auto,) = parse_automorphism_specs(alg, "subst: x1 -> (t)*x1, x2 -> x2")
    rep = verify_theorem(auto).as_dict()
    # det = t, so lambda = t^2 = -1 = 2 with modulus t^2+1
    assert rep["det_total"] == "t"
    assert rep["lambda"] == "2"
    assert rep["equation_holds"]


def test_higher_terms_do_not_move_lambda():
    alg = GroupAlgebra(catalog("C3xC3"), GF(3, 2))
    k = alg.field
    linear = np.array([[k.code_of(k.t()), 1], [0, 1]], dtype=np.int64)
    plain = AlgebraAutomorphism.elementary_abelian_substitution(alg, linear)
    g1 = alg.embed(alg.group.generator(1)) - alg.one()
    g2 = alg.embed(alg.group.generator(2)) - alg.one()
    tail = g1 * g2 + g2 * g2 * g1
    dressed = AlgebraAutomorphism.elementary_abelian_substitution(
        alg, linear, higher={1: tail}
    )
    assert lambda_of(plain) == lambda_of(dressed)
    a, b = induced_blocks(plain), induced_blocks(dressed)
    assert a.det_total == b.det_total
    assert [d for d in a.block_dets] == [d for d in b.block_dets]


def test_lambda_multiplicative_under_composition(algebra):
    alg = algebra("D8")
    rng = random.Random(11)
    first = random_inner(alg, rng)
    g = alg.group
    second = AlgebraAutomorphism.from_group_automorphism(
        alg, g.stored_automorphisms()[0]
    )
    composed = first.compose(second)
    assert lambda_of(composed) == lambda_of(first) * lambda_of(second)
    da, db, dc = (
        induced_blocks(first).det_total,
        induced_blocks(second).det_total,
        induced_blocks(composed).det_total,
    )
    assert dc == da * db


def test_inner_acts_trivially_on_layers(algebra):
    for name in ("Q8", "Heis27"):
        alg = algebra(name)
        rng = random.Random(23)
        auto = random_inner(alg, rng)
        action = induced_blocks(auto)
        for _degree, block in action.blocks:
            assert np.array_equal(block, np.eye(block.shape[0], dtype=np.int64))
        assert lambda_of(auto).is_one()


def test_stored_group_autos_give_lambda_one(algebra):
    for name in ("D8", "M16", "Heis27", "C27"):
        alg = algebra(name)
        for gauto in alg.group.stored_automorphisms():
            auto = AlgebraAutomorphism.from_group_automorphism(alg, gauto)
            rep = verify_theorem(auto)
            assert rep.lambda_is_one
            assert rep.equation_holds


def test_apply_matches_group_action(algebra):
    alg = algebra("D8")
    g = alg.group
    gauto = g.stored_automorphisms()[0]
    auto = AlgebraAutomorphism.from_group_automorphism(alg, gauto)
    for el in g.elements():
        assert auto.apply(alg.embed(el)) == alg.embed(gauto(el))


def test_non_multiplicative_matrix_rejected(algebra):
    alg = algebra("C4")
    # swapping an order-4 and an order-2 element is linear and unital but
    # cannot be multiplicative: the image of g1 would square to 1
    n = alg.dimension
    matrix = np.eye(n, dtype=np.int64)
    i = alg.group.index_of(alg.group.element((1, 0)))
    j = alg.group.index_of(alg.group.element((0, 1)))
    matrix[:, [i, j]] = matrix[:, [j, i]]
    with pytest.raises(NotMultiplicative):
        AlgebraAutomorphism.from_matrix(alg, matrix)


def test_singular_linear_part_rejected():
    alg = GroupAlgebra(catalog("C3xC3"), GF(3))
    with pytest.raises(SingularLinearPart):
        AlgebraAutomorphism.elementary_abelian_substitution(
            alg, np.array([[1, 2], [2, 4 % 3]], dtype=np.int64)
        )


def test_substitution_requires_elementary_abelian(algebra):
    alg = algebra("C9")
    with pytest.raises(ValueError):
        AlgebraAutomorphism.elementary_abelian_substitution(
            alg, np.array([[1]], dtype=np.int64)
        )


def test_substitution_higher_terms_must_sit_in_j2():
    alg = GroupAlgebra(catalog("C3xC3"), GF(3))
    g1 = alg.embed(alg.group.generator(1)) - alg.one()
    with pytest.raises(ValueError):
        AlgebraAutomorphism.elementary_abelian_substitution(
            alg, np.eye(2, dtype=np.int64), higher={1: g1}
        )


def test_group_side_rejections(algebra):
    alg = algebra("C2xC2")
    g = alg.group
    with pytest.raises(NotBijective):
        g.group_automorphism([g.element((1, 0)), g.element((1, 0))])


def test_pair_check_modes(algebra, monkeypatch):
    alg = algebra("D8")
    g = alg.group
    auto = AlgebraAutomorphism.from_group_automorphism(alg, g.stored_automorphisms()[0])
    assert auto.pair_check == "full"
    assert alg.dimension <= FULL_PAIR_CHECK_LIMIT

    import socle_verify.automorphisms as mod

    monkeypatch.setattr(mod, "FULL_PAIR_CHECK_LIMIT", 4)
    sampled = AlgebraAutomorphism.from_group_automorphism(
        alg, g.stored_automorphisms()[0]
    )
    assert sampled.pair_check == "sampled"
    assert sampled.provenance.endswith("[sampled multiplicativity]")
    assert lambda_of(sampled) == lambda_of(auto)


def test_spec_parser_all_forms(algebra):
    alg = algebra("D8")
    lines = [
        "group-auto: g1 -> g1 g3, g2 -> g2",
        "inner: 1 + g1 + g1*g2",
        "random-inner seed=42",
        "compose: inner: 1 + g1 + g1*g2 ; random-inner seed=3",
    ]
    autos = [a for line in lines for a in parse_automorphism_specs(alg, line)]
    assert len(autos) == 4
    for auto in autos:
        assert verify_theorem(auto).equation_holds

    ext = GroupAlgebra(catalog("C3xC3"), GF(3, 2))
    autos = parse_automorphism_specs(ext, "subst: x1 -> (t)*x1, x2 -> x2 + x1")
    assert len(autos) == 1
    with pytest.raises(ValueError):
        parse_automorphism_specs(alg, "bogus: nope")


def test_spec_parser_default_seed(algebra):
    alg = algebra("D8")
    a1 = parse_automorphism_specs(alg, "random-inner", default_seed=5)[0]
    a2 = parse_automorphism_specs(alg, "random-inner", default_seed=5)[0]
    a3 = parse_automorphism_specs(alg, "random-inner", default_seed=6)[0]
    assert np.array_equal(a1.matrix, a2.matrix)
    assert not np.array_equal(a1.matrix, a3.matrix)


def test_random_substitution_matches_contract():
    alg = GroupAlgebra(catalog("C5xC5"), GF(5, 2))
    rng = random.Random(99)
    auto = random_substitution(alg, rng)
    rep = verify_theorem(auto)
    assert rep.equation_holds
    assert rep.lambda_in_power_subgroup
    assert rep.socle_scalar == rep.det_power
