import random
from fractions import Fraction

import pytest

from halfsquares import multiindex as mi
from halfsquares.exactpoly import SparsePolynomial

from oracles import (
    SqrtExpression,
    compose_last,
    implicit_test_problem,
    poly_partial,
    random_polynomial,
)


def part_sets(beta):
    return [p.expand() for p in mi.enumerate_partitions(beta)]


def test_partitions_of_1_2():
    got = part_sets((1, 2))
    expected = [
        ((0, 1), (0, 1), (1, 0)),
        ((0, 1), (1, 1)),
        ((0, 2), (1, 0)),
        ((1, 2),),
    ]
    assert sorted(got) == sorted(expected)
    assert len(got) == 4


def test_partition_of_unit_index():
    assert part_sets((1,)) == [((1,),)]


@pytest.mark.parametrize("k,count", [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7)])
def test_partition_counts_match_integer_partitions(k, count):
    assert len(mi.enumerate_partitions((k,))) == count


def test_partitions_sum_to_target():
    for beta in [(3, 1), (2, 2), (1, 1, 2)]:
        for part in mi.enumerate_partitions(beta):
            total = [0] * len(beta)
            for gamma in part.expand():
                total = [a + b for a, b in zip(total, gamma)]
            assert tuple(total) == beta
            assert all(mi.order(g) >= 1 for g in part.expand())
            assert part.size == len(part.expand())


def test_partitions_of_zero_rejected():
    with pytest.raises(ValueError):
        mi.enumerate_partitions((0, 0))


def test_partition_enumeration_is_deterministic():
    a = mi.enumerate_partitions((2, 2))
    b = mi.enumerate_partitions((2, 2))
    assert [p.expand() for p in a] == [p.expand() for p in b]


def test_chain_coefficient_simple_values():
    two = (2,)
    split = mi.enumerate_partitions(two)
    by_parts = {p.expand(): p for p in split}
    assert mi.chain_coefficient(two, two, by_parts[((1,), (1,))]) == 1
    assert mi.chain_coefficient(two, two, by_parts[((2,),)]) == 1


def test_chain_coefficients_positive():
    for beta in [(3,), (2, 1), (1, 1, 1)]:
        for term in mi.chain_terms(beta):
            assert term.coefficient > 0


def test_leibniz_examples():
    assert mi.leibniz_expand((1,)) == ((1, (0,), (1,)), (1, (1,), (0,)))
    row = [c for c, _, _ in mi.leibniz_expand((2,))]
    assert row == [1, 2, 1]
    four = mi.leibniz_expand((1, 1))
    assert len(four) == 4
    assert all(c == 1 for c, _, _ in four)
    assert all(isinstance(c, int) and c > 0 for c, _, _ in mi.leibniz_expand((2, 3)))


def test_directional_expand():
    assert mi.directional_expand(1, 2) == ((1, (0, 1)), (1, (1, 0)))
    coeffs = dict((b, c) for c, b in mi.directional_expand(2, 2))
    assert coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    three = dict((b, c) for c, b in mi.directional_expand(3, 3))
    assert three[(1, 1, 1)] == 6


def test_sqrt_expansion_first_orders():
    one = mi.sqrt_expansion((1,))
    assert len(one) == 1
    assert one[0].coefficient == Fraction(1, 2)
    assert one[0].power == Fraction(-1, 2)

    two = {t.factors.expand(): t for t in mi.sqrt_expansion((2,))}
    assert two[((2,),)].coefficient == Fraction(1, 2)
    assert two[((2,),)].power == Fraction(-1, 2)
    assert two[((1,), (1,))].coefficient == Fraction(-1, 4)
    assert two[((1,), (1,))].power == Fraction(-3, 2)


def _eval_chain_terms(beta, f, g, point):
    """Evaluate the chain-rule term list with exact polynomial callbacks."""
    gval = g.evaluate(point)
    inner_point = list(point) + [gval]
    total = Fraction(0)
    for term in mi.chain_terms(beta):
        fd = poly_partial(f, term.x_deriv + (term.inner_order,))
        value = term.coefficient * fd.evaluate(inner_point)
        for gamma in term.factors.expand():
            value *= poly_partial(g, gamma).evaluate(point)
        total += value
    return total


def test_chain_rule_against_composition_oracle():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 3)
        g = random_polynomial(rng, n, 3, 4)
        f = random_polynomial(rng, n + 1, 3, 4)
        h = compose_last(f, g)
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        if mi.order(beta) == 0:
            beta = tuple(1 if i == 0 else 0 for i in range(n))
        point = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
        expected = poly_partial(h, beta).evaluate(point)
        assert _eval_chain_terms(beta, f, g, point) == expected


def test_sqrt_expansion_against_symbolic_oracle():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 3)
        base = random_polynomial(rng, n, 2, 3)
        g = base * base + SparsePolynomial.constant(n, rng.randint(1, 3))  # positive
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        if not 1 <= mi.order(beta) <= 4:
            beta = tuple(1 for _ in range(n))
        point = [Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(n)]
        oracle = SqrtExpression(g).partial(beta).evaluate(point)
        gval = float(g.evaluate(point))
        got = 0.0
        for term in mi.sqrt_expansion(beta):
            value = float(term.coefficient) * gval ** float(term.power)
            for gamma in term.factors.expand():
                value *= float(poly_partial(g, gamma).evaluate(point))
            got += value
        assert got == pytest.approx(oracle, rel=1e-10, abs=1e-12)


def test_sqrt_expansion_mixed_example():
    # d_x d_y sqrt(g) for a strictly positive polynomial, against the oracle
    g = SparsePolynomial(2, {(0, 0): 5, (1, 0): 1, (0, 1): -1, (1, 1): 2, (2, 2): 1})
    point = [Fraction(1, 2), Fraction(1, 3)]
    oracle = SqrtExpression(g).partial((1, 1)).evaluate(point)
    gval = float(g.evaluate(point))
    got = sum(
        float(t.coefficient)
        * gval ** float(t.power)
        * float(
            __import__("math").prod(
                float(poly_partial(g, gamma).evaluate(point)) for gamma in t.factors.expand()
            )
        )
        for t in mi.sqrt_expansion((1, 1))
    )
    assert got == pytest.approx(oracle, rel=1e-10)


def _implicit_callback(G, x0, y0):
    cache = {}

    def g_partial(alpha, j):
        key = (tuple(alpha), j)
        if key not in cache:
            cache[key] = poly_partial(G, tuple(alpha) + (j,)).evaluate(list(x0) + [y0])
        return cache[key]

    return g_partial


def test_implicit_derivatives_exact():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 2)
        g = random_polynomial(rng, n, 3, 3)
        residual = random_polynomial(rng, n + 1, 1, 2, coeff_range=(-2, 2))
        G = implicit_test_problem(g, residual, shift=rng.randint(1, 3))
        x0 = [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(n)]
        y0 = g.evaluate(x0)
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        if mi.order(beta) == 0:
            beta = tuple(2 if i == 0 else 0 for i in range(n))
        derivs = mi.implicit_derivatives(beta, _implicit_callback(G, x0, y0))
        for gamma, value in derivs.items():
            assert value == poly_partial(g, gamma).evaluate(x0)


def test_implicit_linear_has_zero_higher_derivatives():
    # G = y - a x: the implicit function is linear, so order >= 2 vanishes
    a = Fraction(3, 2)
    G = SparsePolynomial(2, {(0, 1): 1, (1, 0): -a})
    derivs = mi.implicit_derivatives((3,), _implicit_callback(G, [Fraction(2)], 3 * Fraction(2) / 2))
    assert derivs[(1,)] == a
    assert derivs[(2,)] == 0
    assert derivs[(3,)] == 0


def test_implicit_parabola_example():
    # G(x, y) = y - x^2 solved by g = x^2: g' = 2x, g'' = 2
    G = SparsePolynomial(2, {(0, 1): 1, (2, 0): -1})
    x0 = [Fraction(1)]
    derivs = mi.implicit_derivatives((2,), _implicit_callback(G, x0, Fraction(1)))
    assert derivs[(1,)] == 2
    assert derivs[(2,)] == 2
