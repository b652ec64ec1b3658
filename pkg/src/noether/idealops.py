"""Ideal-level toolkit: radical membership, saturation, comparison,
dimension and height, and the recoverability precheck.

Radical membership uses the fresh-variable construction (adjoin t with
1 - t*f and test triviality) rather than computing radicals; the auxiliary
variable name is reserved and never reaches user input.
"""

from __future__ import annotations

import threading
from itertools import combinations

from .arith import MonomialOrder, Polynomial, VarTable, grevlex_order
from .groebner import (
    DEFAULT_LIMITS,
    GroebnerBasis,
    Limits,
    buchberger,
    elimination_ideal,
    ideal_membership,
)

AUX_NAME = "__t"


class TrivialIdealError(Exception):
    """Operation undefined on the unit ideal (empty variety)."""


class Ideal:
    """Generator list with lazily cached reduced Groebner bases per order."""

    def __init__(self, generators, vartable: VarTable | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if vartable is None:
            if not gens:
                raise ValueError("zero ideal needs an explicit variable table")
            vartable = gens[0].vars
        for g in gens:
            if g.vars != vartable:
                raise ValueError("generators use mismatched variable tables")
        self.generators = tuple(gens)
        self.vars = vartable
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        from .syntax import print_polynomial

        return "Ideal(%s)" % ", ".join(print_polynomial(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        raise TypeError("Ideal is unhashable (equality is semantic)")

    def is_zero(self) -> bool:
        return not self.generators

    def default_order(self) -> MonomialOrder:
        return grevlex_order(len(self.vars))

    def groebner_basis(
        self,
        order: MonomialOrder | None = None,
        limits: Limits = DEFAULT_LIMITS,
        track: bool = False,
    ) -> GroebnerBasis:
        if order is None:
            order = self.default_order()
        with self._lock:
            cached = self._cache.get(order)
        if cached is not None and (not track or cached.transform is not None):
            return cached
        basis = buchberger(self.generators, order=order, limits=limits, track=track)
        with self._lock:
            self._cache[order] = basis
        return basis

    def contains_poly(self, f: Polynomial, limits: Limits = DEFAULT_LIMITS) -> bool:
        if self.is_zero():
            return f.is_zero()
        return self.groebner_basis(limits=limits).contains(f)

    def is_trivial(self, limits: Limits = DEFAULT_LIMITS) -> bool:
        if self.is_zero():
            return False
        return self.groebner_basis(limits=limits).is_trivial()


def _extend_to_aux(polys, vartable: VarTable):
    """Map polynomials into the ring with the auxiliary variable ranked first."""
    extended = vartable.extended(AUX_NAME, first=True)
    return extended, [p.map_vars(extended) for p in polys]


def radical_membership(
    f: Polynomial, ideal: Ideal, limits: Limits = DEFAULT_LIMITS
) -> bool:
    """True iff some power of f lies in the ideal (f vanishes on the variety)."""
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    # quick exits: direct membership, constants
    if f.constant_value() is not None:
        return ideal.is_trivial(limits)
    if ideal.contains_poly(f, limits):
        return True
    extended, gens = _extend_to_aux(list(ideal.generators) + [f], ideal.vars)
    f_ext = gens.pop()
    t = Polynomial.variable(extended, AUX_NAME)
    one = Polynomial.constant(extended, 1)
    witness = one - t * f_ext
    basis = buchberger(
        gens + [witness], order=grevlex_order(len(extended)), limits=limits
    )
    return basis.is_trivial()


def saturate(ideal: Ideal, f: Polynomial, limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """The saturation I : f^infty, via elimination of the auxiliary variable."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.constant_value() is not None:
        return ideal
    if ideal.is_zero():
        return ideal
    extended, gens = _extend_to_aux(list(ideal.generators) + [f], ideal.vars)
    f_ext = gens.pop()
    t = Polynomial.variable(extended, AUX_NAME)
    one = Polynomial.constant(extended, 1)
    witness = one - t * f_ext
    eliminated = elimination_ideal(gens + [witness], set(ideal.vars.names), limits)
    return Ideal([g.map_vars(ideal.vars) for g in eliminated], ideal.vars)


def ideal_contains(big: Ideal, small: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    """True iff every generator of small reduces to zero modulo big."""
    if small.is_zero():
        return True
    if big.is_zero():
        return False
    basis = big.groebner_basis(limits=limits)
    return all(basis.contains(g) for g in small.generators)


def ideal_equal(a: Ideal, b: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    return ideal_contains(a, b, limits) and ideal_contains(b, a, limits)


def dimension(ideal: Ideal, limits: Limits = DEFAULT_LIMITS) -> int:
    """Krull dimension via exhaustive independent-set search on the initial ideal.

    The dimension is the size of a largest variable subset S such that no
    leading monomial of the reduced basis is supported entirely inside S.
    """
    n = len(ideal.vars)
    if ideal.is_zero():
        return n
    basis = ideal.groebner_basis(limits=limits)
    if basis.is_trivial():
        raise TrivialIdealError("dimension of the empty variety is undefined")
    supports = []
    for g in basis.polys:
        lm = g.leading_monomial(basis.order)
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if not any(support <= chosen for support in supports):
                return size
    return 0


def height_of_prime(prime: Ideal, limits: Limits = DEFAULT_LIMITS) -> int:
    """Height of a (pseudo-)prime ideal: variables minus dimension."""
    return len(prime.vars) - dimension(prime, limits)


def recoverability_precheck(
    axioms, hypothesis: Polynomial, limits: Limits = DEFAULT_LIMITS
) -> str:
    """Advisory check: "guaranteed" when the hypothesis avoids every minimal
    prime of the known-axiom ideal, else "unknown".  Never blocks a run."""
    from .decompose import minimal_primes

    known = Ideal(list(axioms), hypothesis.vars)
    if known.is_zero():
        return "guaranteed" if not hypothesis.is_zero() else "unknown"
    if known.is_trivial(limits):
        return "unknown"
    decomposition = minimal_primes(known, limits=limits)
    if not decomposition.exhausted:
        return "unknown"
    for component in decomposition.components:
        if radical_membership(hypothesis, component.ideal, limits):
            return "unknown"
    return "guaranteed"
