"""Independent oracles for the derivative-expansion tests.

Everything here differentiates explicit polynomial expressions by
repeated single-variable differentiation, never through the term-list
formulas under test.
"""

from __future__ import annotations

from fractions import Fraction

from halfsquares.exactpoly import SparsePolynomial


def poly_derivative(P: SparsePolynomial, axis: int) -> SparsePolynomial:
    terms = {}
    for exp, coeff in P.terms.items():
        if exp[axis] == 0:
            continue
        new = list(exp)
        new[axis] -= 1
        terms[tuple(new)] = terms.get(tuple(new), Fraction(0)) + coeff * exp[axis]
    return SparsePolynomial(P.nvars, terms)


def poly_partial(P: SparsePolynomial, beta) -> SparsePolynomial:
    out = P
    for axis, count in enumerate(beta):
        for _ in range(count):
            out = poly_derivative(out, axis)
    return out


def compose_last(f: SparsePolynomial, g: SparsePolynomial) -> SparsePolynomial:
    """h(x) = f(x, g(x)): substitute g for the last variable of f."""
    if f.nvars != g.nvars + 1:
        raise ValueError("f must have one more variable than g")
    h = SparsePolynomial.zero(g.nvars)
    powers = {0: SparsePolynomial.constant(g.nvars, 1)}

    def g_power(k):
        if k not in powers:
            powers[k] = g_power(k - 1) * g
        return powers[k]

    for exp, coeff in f.terms.items():
        base = SparsePolynomial.monomial(exp[:-1], coeff)
        h = h + base * g_power(exp[-1])
    return h


class SqrtExpression:
    """Sum of P_s(x) * g(x)^s terms, closed under differentiation.

    Starting from g^(1/2) and differentiating repeatedly gives the exact
    symbolic derivatives of sqrt(g) for polynomial g.
    """

    def __init__(self, g: SparsePolynomial, terms=None):
        self.g = g
        if terms is None:
            terms = {Fraction(1, 2): SparsePolynomial.constant(g.nvars, 1)}
        self.terms = terms

    def differentiate(self, axis: int) -> "SqrtExpression":
        gprime = poly_derivative(self.g, axis)
        out: dict[Fraction, SparsePolynomial] = {}

        def add(power, poly):
            if poly.is_zero():
                return
            if power in out:
                out[power] = out[power] + poly
            else:
                out[power] = poly

        for power, poly in self.terms.items():
            add(power, poly_derivative(poly, axis))
            add(power - 1, poly.scale(power) * gprime)
        return SqrtExpression(self.g, out)

    def partial(self, beta) -> "SqrtExpression":
        out = self
        for axis, count in enumerate(beta):
            for _ in range(count):
                out = out.differentiate(axis)
        return out

    def evaluate(self, point) -> float:
        gval = float(self.g.evaluate(point))
        total = 0.0
        for power, poly in self.terms.items():
            total += float(poly.evaluate(point)) * gval ** float(power)
        return total


def implicit_test_problem(g: SparsePolynomial, residual: SparsePolynomial, shift: int = 1):
    """G(x, y) = (y - g(x)) * (shift + residual(x, y)^2), solved by y = g(x).

    The second factor is positive everywhere, so d_y G > 0 along the
    solution branch and the implicit recursion applies; the exact
    derivatives of the implicit function are those of g.
    """
    n = g.nvars
    y_minus_g = SparsePolynomial.monomial(
        tuple(0 for _ in range(n)) + (1,), 1
    ) - lift_to_ambient(g)
    factor = SparsePolynomial.constant(n + 1, shift) + residual * residual
    return y_minus_g * factor


def lift_to_ambient(g: SparsePolynomial) -> SparsePolynomial:
    """View an n-variable polynomial inside n+1 variables (no y-dependence)."""
    return SparsePolynomial(g.nvars + 1, {exp + (0,): c for exp, c in g.terms.items()})


def random_polynomial(rng, nvars, degree, terms, coeff_range=(-4, 4)) -> SparsePolynomial:
    out = {}
    for _ in range(terms):
        exp = []
        remaining = degree
        for _ in range(nvars):
            e = rng.randint(0, remaining)
            exp.append(e)
            remaining -= e
        c = 0
        while c == 0:
            c = rng.randint(*coeff_range)
        out[tuple(exp)] = Fraction(c)
    return SparsePolynomial(nvars, out)
