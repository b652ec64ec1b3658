"""Desk-scale polynomial factorization driving decomposition splitting.

The irreducible-factorization core is delegated to sympy's factor engine
over the rationals; every result is re-expanded with this package's exact
arithmetic and checked against the input before being trusted.  Factors are
normalized to integer-primitive form with a positive leading coefficient
under the table's default order, so reports are deterministic and diffable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import sympy

from .arith import ONE, Polynomial, Rational, VarTable, grevlex_order


@dataclass(frozen=True)
class Factorization:
    """unit * product(factor**multiplicity) expands exactly to the input."""

    unit: object
    factors: tuple  # of (Polynomial, multiplicity) pairs
    complete: bool  # True when every factor is certified irreducible

    def expand(self, vartable: VarTable) -> Polynomial:
        result = Polynomial.constant(vartable, self.unit)
        for poly, multiplicity in self.factors:
            result = result * poly**multiplicity
        return result


@lru_cache(maxsize=128)
def _symbols(names: tuple):
    return tuple(sympy.Symbol(name) for name in names)


def _to_sympy(f: Polynomial):
    syms = _symbols(f.vars.names)
    rep = {
        mono: sympy.Rational(int(c.numerator), int(c.denominator))
        for mono, c in f.terms.items()
    }
    return sympy.Poly.from_dict(rep, *syms, domain=sympy.QQ)


def _from_sympy(poly, vartable: VarTable) -> Polynomial:
    terms = {}
    for mono, coeff in poly.terms():
        value = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Rational(int(value.p), int(value.q))
    return Polynomial(vartable, terms)


def _factor_key(entry, order):
    poly, _ = entry
    from .syntax import print_polynomial

    return (
        poly.total_degree(),
        order.key(poly.leading_monomial(order)),
        print_polynomial(poly, order),
    )


def factor(f: Polynomial) -> Factorization:
    """Factor f over the rationals into pairwise non-associate factors.

    Best effort: when the engine fails the input comes back whole with
    complete=False; an unsplit reducible factor only coarsens downstream
    decompositions, never makes them wrong.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    order = grevlex_order(len(f.vars))
    constant = f.constant_value()
    if constant is not None:
        return Factorization(constant, (), True)
    try:
        coeff, raw = _to_sympy(f).factor_list()
    except Exception:
        unit, base = f.primitive(order)
        return Factorization(unit, ((base, 1),), False)
    unit = Rational(int(sympy.Rational(coeff).p), int(sympy.Rational(coeff).q))
    factors = []
    for poly, multiplicity in raw:
        candidate = _from_sympy(poly, f.vars)
        scale, normalized = candidate.primitive(order)
        unit = unit * scale ** int(multiplicity)
        factors.append((normalized, int(multiplicity)))
    factors.sort(key=lambda entry: _factor_key(entry, order))
    result = Factorization(unit, tuple(factors), True)
    if result.expand(f.vars) != f:
        unit, base = f.primitive(order)
        return Factorization(unit, ((base, 1),), False)
    return result


def squarefree_part(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f, each to power one."""
    if f.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    factorization = factor(f)
    order = grevlex_order(len(f.vars))
    if not factorization.factors:
        _, base = f.primitive(order)
        return base
    result = Polynomial.constant(f.vars, 1)
    for poly, _ in factorization.factors:
        result = result * poly
    return result


def is_irreducible(f: Polynomial) -> bool:
    """True when factorization certifies f irreducible over the rationals."""
    factorization = factor(f)
    return (
        factorization.complete
        and len(factorization.factors) == 1
        and factorization.factors[0][1] == 1
    )
