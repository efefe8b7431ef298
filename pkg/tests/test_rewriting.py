import pytest

from oracles import (a5_triangle_generators, perm_group_sphere_sizes, psl2_triangle_sphere_sizes,
                     todd_coxeter_order, triangle_relators)
from relhyp.errors import IncompleteOracle
from relhyp.rewriting import cayley_ball, growth_series, knuth_bendix, make_oracle
from relhyp.words import (ParabolicSpec, RelativePresentation, free_product_presentation, quotient_presentation,
                          triangle_kernels, triangle_presentation)

Z5 = RelativePresentation("Z5", ("x",), (), ((1,) * 5,))


def vondyck(p, q, r):
    return RelativePresentation(f"D{p}{q}{r}", ("x", "y"), (), tuple(triangle_relators(p, q, r)))


def triangle_quotient(p, q, r):
    return quotient_presentation(triangle_presentation(), triangle_kernels(p, q, r))


def test_z5_normal_forms_multiply_as_z5():
    o = make_oracle(Z5)
    assert o.complete
    forms = [o.normal_form((1,) * k) for k in range(5)]
    assert len(set(forms)) == 5
    for i in range(5):
        for j in range(5):
            assert o.mul(forms[i], forms[j]) == forms[(i + j) % 5]
    assert o.normal_form((1,) * 7) == o.normal_form((1, 1))


def test_free_group_needs_no_rules():
    o = make_oracle(free_product_presentation())
    assert o.backing == "FreeGroup"
    assert o.normal_form((1, 2, -2)) == (1,)
    z2 = make_oracle(RelativePresentation("Z2Z", ("s", "t", "u"), (ParabolicSpec(1, "FreeAbelian", (1, 2)),)))
    assert z2.backing == "FreeProductOfParabolics"
    assert z2.normal_form((2, 3, 1, -3, 2, 1)) == (2, 3, 1, -3, 1, 2)
    rs = knuth_bendix(RelativePresentation("F", ("a", "b")))
    assert rs.complete and len(rs.rules) == 4
    assert rs.is_locally_confluent()


def test_free_ball_radius_two():
    assert len(cayley_ball(make_oracle(free_product_presentation()), 2)) == 17


def test_z5_ball_saturates():
    assert len(cayley_ball(make_oracle(Z5), 10)) == 5


def test_235_ball_is_a5():
    o = make_oracle(vondyck(2, 3, 5))
    ball = cayley_ball(o, 12)
    assert len(ball) == 60 == todd_coxeter_order(2, triangle_relators(2, 3, 5))
    perm = perm_group_sphere_sizes(a5_triangle_generators(), 12)
    assert sum(perm) == 60
    assert ball.sphere_sizes() == perm


@pytest.mark.parametrize("pqr,order", [((2, 3, 4), 24), ((2, 3, 3), 12), ((2, 2, 5), 10)])
def test_spherical_orders_against_coset_enumeration(pqr, order):
    assert todd_coxeter_order(2, triangle_relators(*pqr)) == order
    assert len(cayley_ball(make_oracle(triangle_quotient(*pqr)), 30)) == order


def test_237_two_generator_shortlex_does_not_complete():
    # no finite ShortLex system exists in this ordering; the oracle refuses to answer
    o = make_oracle(vondyck(2, 3, 7))
    assert not o.complete
    with pytest.raises(IncompleteOracle):
        o.normal_form((1, 2))


def test_237_relator_is_identity_in_three_generator_form():
    q = triangle_quotient(2, 3, 7)
    o = make_oracle(q)
    assert o.complete and o.rs.is_locally_confluent()
    assert o.is_identity(q.word("(x y)^7"))
    assert not o.is_identity(q.word("(x y)^6"))


@pytest.mark.parametrize("pqr", [(2, 3, 7), (3, 3, 4), (4, 4, 4)])
def test_hyperbolic_growth_matches_matrix_representation(pqr):
    o = make_oracle(triangle_quotient(*pqr))
    want = psl2_triangle_sphere_sizes(*pqr, 8, with_product=True)
    assert growth_series(o.rs, 8) == want
    assert cayley_ball(o, 5).sphere_sizes() == want[:6]
    assert all(b > a for a, b in zip(want[1:], want[2:]))


def test_237_frozen_two_generator_growth():
    # frozen from the matrix oracle; the (2,3,7) growth in x, y is slow but unbounded
    assert psl2_triangle_sphere_sizes(2, 3, 7, 10) == [1, 3, 4, 6, 8, 12, 16, 22, 24, 34, 40]
