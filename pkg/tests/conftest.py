import random

from fractions import Fraction

from logdiv.poly import Polynomial


def to_sympy(p, symbols):
    import sympy

    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, m):
            t *= s ** e
        expr += t
    return sympy.expand(expr)


def from_sympy(expr, ring, symbols):
    import sympy

    poly = sympy.Poly(sympy.expand(expr), *symbols)
    terms = {}
    for mono, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return Polynomial(ring, terms)


def random_poly(rng, ring, max_deg=3, n_terms=4, coeff_range=5):
    n = len(ring)
    terms = {}
    for _ in range(n_terms):
        m = tuple(rng.randint(0, max_deg) for _ in range(n))
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[m] = terms.get(m, Fraction(0)) + c
    return Polynomial(ring, terms)
