"""Minimal-prime (component) decomposition by recursive factor splitting.

Work-list algorithm: reduce a Groebner basis, replace elements by their
square-free parts, split on the lowest-degree reducible element, saturate
each branch by the complementary factors, and emit ideals whose basis
elements no longer split.  Components are deduplicated and pruned so no
emitted ideal contains another; the union of their varieties equals the
input variety.

Primality of emitted components is not certified in general (pseudoPrime
stays True) except for two cheap certificates: an all-linear basis, or a
single irreducible generator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Polynomial, grevlex_order
from .factor import factor, is_irreducible, squarefree_part
from .groebner import DEFAULT_LIMITS, Limits, ResourceLimitExceeded
from .idealops import Ideal, dimension, ideal_contains, saturate


@dataclass
class Component:
    """One irreducible piece of the input variety (stored as a reduced basis)."""

    ideal: Ideal
    pseudo_prime: bool
    height: int

    def generators(self):
        return component_generators(self)


@dataclass
class Decomposition:
    components: tuple
    input_ideal: Ideal
    exhausted: bool = True  # False when the node budget truncated the search


def component_generators(component: Component) -> list:
    """Reduced-basis generators in the canonical deterministic order:
    ascending total degree, then leading monomial, then printed form."""
    from .syntax import print_polynomial

    order = grevlex_order(len(component.ideal.vars))
    return sorted(
        component.ideal.generators,
        key=lambda g: (
            g.total_degree(),
            order.key(g.leading_monomial(order)),
            print_polynomial(g, order),
        ),
    )


def _squarefree_fixpoint(gens, order, limits):
    """Reduced basis closed under square-free replacement of its elements.

    Returns None when the ideal is trivial.  Replacing an element by its
    square-free part can only grow the ideal, so the loop terminates.
    """
    from .groebner import buchberger

    current = list(gens)
    for _ in range(32):
        limits.check_time()
        basis = buchberger(current, order=order, limits=limits)
        if basis.is_trivial():
            return None
        if basis.is_zero_ideal():
            return basis
        replaced = []
        changed = False
        for g in basis.polys:
            part = squarefree_part(g)
            if part.total_degree() < g.total_degree():
                changed = True
            replaced.append(part)
        if not changed:
            return basis
        current = replaced
    return buchberger(current, order=order, limits=limits)


def _find_split(basis, limits):
    """Lowest-total-degree basis element with at least two distinct factors.

    Returns (generator list to branch from, factor list) or None.  Factors
    already lying in the ideal are unusable for splitting (their branch would
    not shrink), so such elements are skipped.  When no element of the given
    basis splits, a lex basis of the same ideal is scanned as well: reduced
    bases under different orders expose different reducible combinations.
    """
    from .arith import lex_order
    from .groebner import buchberger

    def scan(polys):
        candidates = sorted(range(len(polys)), key=lambda i: polys[i].total_degree())
        for i in candidates:
            g = polys[i]
            if g.total_degree() < 1:
                continue
            factorization = factor(squarefree_part(g))
            parts = [p for p, _ in factorization.factors]
            if len(parts) < 2:
                continue
            if any(basis.contains(p) for p in parts):
                continue
            return parts
        return None

    parts = scan(basis.polys)
    if parts is not None:
        return list(basis.polys), parts
    lex_basis = buchberger(
        list(basis.polys), order=lex_order(len(basis.vars)), limits=limits
    )
    parts = scan(lex_basis.polys)
    if parts is not None:
        return list(lex_basis.polys), parts
    return None


def _certified_prime(basis) -> bool:
    polys = basis.polys
    if all(g.total_degree() <= 1 for g in polys):
        return True
    if len(polys) == 1 and is_irreducible(polys[0]):
        return True
    return False


def minimal_primes(
    ideal: Ideal,
    limits: Limits = DEFAULT_LIMITS,
    saturate_branches: bool = True,
) -> Decomposition:
    """Decompose the variety of the ideal into minimal (pseudo-)prime pieces.

    The returned components pairwise do not contain one another, each
    contains the input ideal, and the union of their varieties is the input
    variety.  An empty component list means the ideal is the whole ring.
    """
    order = grevlex_order(len(ideal.vars))
    worklist = [list(ideal.generators)]
    finished = []
    nodes = 0
    exhausted = True
    while worklist:
        limits.check_time()
        nodes += 1
        if nodes > limits.max_nodes:
            exhausted = False
            # keep the union of varieties: emit unfinished branches as-is
            for gens in worklist:
                from .groebner import buchberger

                basis = buchberger(gens, order=order, limits=limits)
                if not basis.is_trivial():
                    finished.append((basis, False))
            break
        gens = worklist.pop(0)
        basis = _squarefree_fixpoint(gens, order, limits)
        if basis is None:
            continue  # trivial ideal: empty variety contributes nothing
        split = _find_split(basis, limits)
        if split is None:
            finished.append((basis, True))
            continue
        branch_base, parts = split
        for j, part in enumerate(parts):
            branch = list(branch_base) + [part]
            if saturate_branches and j > 0:
                # saturate by the preceding factors only: branch j keeps the
                # locus where f_1..f_{j-1} are nonzero, so every point of the
                # parent variety lands in the branch of its first vanishing
                # factor and the union of varieties is preserved exactly
                branch_ideal = Ideal(branch, ideal.vars)
                for earlier in parts[:j]:
                    branch_ideal = saturate(branch_ideal, earlier, limits)
                branch = list(branch_ideal.generators)
            worklist.append(branch)

    # wrap, deduplicate by identical reduced bases, prune containments
    unique = {}
    for basis, split_finished in finished:
        key = basis.polys
        if key not in unique:
            unique[key] = (basis, split_finished)
    entries = list(unique.values())
    kept = []
    for i, (basis_i, fin_i) in enumerate(entries):
        ideal_i = Ideal(list(basis_i.polys), ideal.vars)
        ideal_i._cache[order] = basis_i
        redundant = False
        for j, (basis_j, _) in enumerate(entries):
            if i == j:
                continue
            ideal_j = Ideal(list(basis_j.polys), ideal.vars)
            ideal_j._cache[order] = basis_j
            # drop i when it contains j properly (its variety is inside j's);
            # for equal ideals keep the first occurrence only
            if ideal_contains(ideal_i, ideal_j, limits):
                if ideal_contains(ideal_j, ideal_i, limits):
                    if j < i:
                        redundant = True
                        break
                else:
                    redundant = True
                    break
        if not redundant:
            kept.append((ideal_i, fin_i))

    components = []
    for ideal_i, fin_i in kept:
        basis_i = ideal_i.groebner_basis(order=order, limits=limits)
        pseudo = not (fin_i and _certified_prime(basis_i))
        try:
            ht = len(ideal.vars) - dimension(ideal_i, limits)
        except ResourceLimitExceeded:
            raise
        components.append(Component(ideal_i, pseudo, ht))

    from .syntax import print_polynomial

    def component_key(component: Component):
        return tuple(
            print_polynomial(g, order) for g in component_generators(component)
        )

    components.sort(key=component_key)
    return Decomposition(tuple(components), ideal, exhausted)
