"""Multivariate division, Buchberger's algorithm, reduced Groebner bases,
ideal membership with certificates, and elimination ideals.

Internally polynomials are raw term dicts (monomial tuple -> rational); the
public surface takes and returns Polynomial values.  All computations are
deterministic: pair selection, divisor choice and output ordering are fixed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .arith import (
    ONE,
    MonomialOrder,
    Polynomial,
    Rational,
    VarTable,
    grevlex_order,
    lex_order,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


class ResourceLimitExceeded(Exception):
    """A degree, size or time budget was exhausted mid-computation."""


@dataclass(frozen=True)
class Limits:
    """Resource budget threaded through every potentially heavy operation."""

    max_degree: int = 40
    max_basis: int = 5000
    max_nodes: int = 512
    deadline: float | None = None

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimitExceeded("time budget exhausted")

    def with_deadline(self, seconds: float | None) -> "Limits":
        if seconds is None:
            return self
        return Limits(self.max_degree, self.max_basis, self.max_nodes,
                      time.monotonic() + seconds)


DEFAULT_LIMITS = Limits()


# ---------------------------------------------------------------------------
# Raw-dict helpers (hot path)


def _sub_scaled(target: dict, source: dict, coeff, shift) -> None:
    """target -= coeff * x^shift * source, in place."""
    for mono, value in source.items():
        key = tuple(a + b for a, b in zip(mono, shift))
        acc = target.get(key)
        delta = coeff * value
        if acc is None:
            target[key] = -delta
        else:
            acc = acc - delta
            if acc:
                target[key] = acc
            else:
                del target[key]


def _divide(f: dict, basis: list, order: MonomialOrder):
    """Divide term dict f by a list of (lm, lc, terms) entries.

    Returns (remainder dict, quotient dicts).  Deterministic: at each step the
    first listed divisor whose leading monomial divides the current leading
    term is used.
    """
    key = order.key
    remainder: dict = {}
    quotients = [dict() for _ in basis]
    work = dict(f)
    while work:
        lm = max(work, key=key)
        lc = work.pop(lm)
        for i, (blm, blc, bterms) in enumerate(basis):
            if monomial_divides(blm, lm):
                shift = monomial_div(lm, blm)
                coeff = lc / blc
                quotient = quotients[i]
                acc = quotient.get(shift)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    quotient[shift] = acc
                elif shift in quotient:
                    del quotient[shift]
                # the divisor's leading term cancels the popped term exactly
                for mono, value in bterms.items():
                    if mono == blm:
                        continue
                    dest = tuple(a + b for a, b in zip(mono, shift))
                    existing = work.get(dest)
                    delta = coeff * value
                    if existing is None:
                        work[dest] = -delta
                    else:
                        existing = existing - delta
                        if existing:
                            work[dest] = existing
                        else:
                            del work[dest]
                break
        else:
            remainder[lm] = lc
    return remainder, quotients


def _basis_entries(polys, order: MonomialOrder):
    entries = []
    for terms in polys:
        lm = max(terms, key=order.key)
        entries.append((lm, terms[lm], terms))
    return entries


def normal_form(f: Polynomial, basis, order: MonomialOrder):
    """Remainder and quotients of f under multivariate division by basis.

    Postcondition: f == sum(quotients[i] * basis[i]) + remainder, and no
    remainder term is divisible by any basis leading monomial.
    """
    items = [g.terms for g in basis if not g.is_zero()]
    entries = _basis_entries(items, order)
    rem, quots = _divide(f.terms, entries, order)
    vartable = f.vars
    quotients = []
    it = iter(quots)
    for g in basis:
        if g.is_zero():
            quotients.append(Polynomial.zero(vartable))
        else:
            quotients.append(Polynomial._raw(vartable, next(it)))
    return Polynomial._raw(vartable, rem), quotients


def reduce_polynomial(f: Polynomial, basis, order: MonomialOrder) -> Polynomial:
    """Remainder only (cheaper call site for membership-style checks)."""
    return normal_form(f, basis, order)[0]


# ---------------------------------------------------------------------------
# Buchberger


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order.

    When tracking was requested, transform[i][j] expresses basis polynomial i
    as a combination of the input generators: polys[i] == sum_j
    transform[i][j] * gens[j].
    """

    polys: tuple
    order: MonomialOrder
    vars: VarTable
    reduced: bool = True
    transform: tuple | None = None

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def is_trivial(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].constant_value() == 1

    def is_zero_ideal(self) -> bool:
        return not self.polys

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce_polynomial(f, self.polys, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()


def _combination(quotients, reprs, ngens, vartable):
    """Sum of quotient * repr products, as a cofactor vector."""
    out = [dict() for _ in range(ngens)]
    for quotient, rep in zip(quotients, reprs):
        if not quotient:
            continue
        for j in range(ngens):
            source = rep[j]
            if not source:
                continue
            dest = out[j]
            for mq, cq in quotient.items():
                for ms, cs in source.items():
                    key = tuple(a + b for a, b in zip(mq, ms))
                    acc = dest.get(key)
                    prod = cq * cs
                    acc = prod if acc is None else acc + prod
                    if acc:
                        dest[key] = acc
                    elif key in dest:
                        del dest[key]
    return out


def buchberger(
    gens,
    order: MonomialOrder | None = None,
    limits: Limits = DEFAULT_LIMITS,
    track: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Pair selection follows the normal strategy (minimal lcm degree, ties by
    insertion index); the coprime and chain criteria discard useless pairs.
    Exceeding the degree or basis-size budget raises ResourceLimitExceeded.
    """
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        vartable = gens[0].vars if gens else VarTable(())
        return GroebnerBasis((), order or grevlex_order(len(vartable)), vartable,
                             transform=() if track else None)
    vartable = polys[0].vars
    if order is None:
        order = grevlex_order(len(vartable))
    key = order.key
    ngens = len(gens)

    basis: list = []          # (lm, lc, terms)
    reprs: list = []          # cofactor vectors over the original gens
    index_of = {}

    def append(terms: dict, rep) -> int:
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc != 1:
            inv = ONE / lc
            terms = {m: c * inv for m, c in terms.items()}
            if track:
                rep = [{m: c * inv for m, c in r.items()} for r in rep]
        basis.append((lm, ONE, terms))
        if track:
            reprs.append(rep)
        return len(basis) - 1

    import heapq

    pairs: list = []
    processed = set()

    def push_pairs(new_index: int) -> None:
        lm_new = basis[new_index][0]
        for i in range(new_index):
            lcm = monomial_lcm(basis[i][0], lm_new)
            heapq.heappush(pairs, (sum(lcm), i, new_index, lcm))

    for position, g in enumerate(gens):
        if g.is_zero():
            continue
        rep = None
        if track:
            rep = [dict() for _ in range(ngens)]
            rep[position] = {(0,) * len(vartable): ONE}
        idx = append(dict(g.terms), rep)
        push_pairs(idx)

    while pairs:
        limits.check_time()
        degree, i, j, lcm = heapq.heappop(pairs)
        processed.add((i, j))
        lm_i, _, terms_i = basis[i]
        lm_j, _, terms_j = basis[j]
        # coprime criterion
        if lcm == monomial_mul(lm_i, lm_j):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(basis[k][0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in processed and b in processed:
                    skip = True
                    break
        if skip:
            continue
        # S-polynomial s = x^shift_i * g_i - x^shift_j * g_j (both monic)
        shift_i = monomial_div(lcm, lm_i)
        shift_j = monomial_div(lcm, lm_j)
        s: dict = {}
        _sub_scaled(s, terms_i, -ONE, shift_i)
        _sub_scaled(s, terms_j, ONE, shift_j)
        rem, quots = _divide(s, basis, order)
        if not rem:
            continue
        lead = max(rem, key=key)
        if sum(lead) > limits.max_degree:
            raise ResourceLimitExceeded(
                "degree budget exceeded (%d > %d)" % (sum(lead), limits.max_degree)
            )
        rep = None
        if track:
            rep = [dict() for _ in range(ngens)]
            for col in range(ngens):
                src_i = reprs[i][col]
                if src_i:
                    _sub_scaled(rep[col], src_i, -ONE, shift_i)
                src_j = reprs[j][col]
                if src_j:
                    _sub_scaled(rep[col], src_j, ONE, shift_j)
            correction = _combination(quots, reprs, ngens, vartable)
            for col in range(ngens):
                if correction[col]:
                    _sub_scaled(rep[col], correction[col], ONE,
                                (0,) * len(vartable))
        idx = append(rem, rep)
        if len(basis) > limits.max_basis:
            raise ResourceLimitExceeded(
                "basis size budget exceeded (%d)" % limits.max_basis
            )
        push_pairs(idx)

    # minimalize: process by increasing leading monomial, keep an entry only
    # if no previously kept leading monomial divides it
    keep = []
    for i in sorted(range(len(basis)), key=lambda idx: (key(basis[idx][0]), idx)):
        lm_i = basis[i][0]
        if not any(monomial_divides(basis[j][0], lm_i) for j in keep):
            keep.append(i)

    # interreduce tails
    reduced_terms = []
    reduced_reprs = []
    for pos, i in enumerate(keep):
        others = [basis[j] for j in keep if j != i]
        rem, quots = _divide(basis[i][2], others, order)
        if not rem:
            continue
        lm = max(rem, key=key)
        lc = rem[lm]
        inv = ONE / lc
        rem = {m: c * inv for m, c in rem.items()}
        reduced_terms.append(rem)
        if track:
            rep = [dict(r) for r in reprs[i]]
            other_reprs = [reprs[j] for j in keep if j != i]
            correction = _combination(quots, other_reprs, ngens, vartable)
            for col in range(ngens):
                if correction[col]:
                    _sub_scaled(rep[col], correction[col], ONE, (0,) * len(vartable))
                if inv != 1:
                    rep[col] = {m: c * inv for m, c in rep[col].items()}
            reduced_reprs.append(rep)

    pairs_sorted = sorted(
        range(len(reduced_terms)),
        key=lambda idx: key(max(reduced_terms[idx], key=key)),
        reverse=True,
    )
    out_polys = tuple(
        Polynomial._raw(vartable, reduced_terms[i]) for i in pairs_sorted
    )
    transform = None
    if track:
        transform = tuple(
            tuple(Polynomial._raw(vartable, col) for col in reduced_reprs[i])
            for i in pairs_sorted
        )
    return GroebnerBasis(out_polys, order, vartable, reduced=True, transform=transform)


# ---------------------------------------------------------------------------
# Membership and elimination


@dataclass
class MembershipCertificate:
    """Cofactors alpha_i with sum(alpha_i * generators[i]) == member polynomial."""

    cofactors: tuple

    def expand(self, gens, vartable: VarTable) -> Polynomial:
        total = Polynomial.zero(vartable)
        for alpha, g in zip(self.cofactors, gens):
            total = total + alpha * g
        return total


def ideal_membership(
    f: Polynomial,
    gens,
    order: MonomialOrder | None = None,
    certificate: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    basis: GroebnerBasis | None = None,
):
    """Decide f in <gens>; optionally return an exact cofactor certificate.

    Cofactors are recovered by composing division quotients through the
    Buchberger transformation history, so the certificate expands to f
    exactly (cofactors are not unique).
    """
    if basis is None or (certificate and basis.transform is None):
        basis = buchberger(gens, order=order, limits=limits, track=certificate)
    if basis.is_zero_ideal():
        member = f.is_zero()
        if member and certificate:
            zero = Polynomial.zero(f.vars)
            return True, MembershipCertificate(tuple(zero for _ in gens))
        return member, None
    remainder, quotients = normal_form(f, basis.polys, basis.order)
    if not remainder.is_zero():
        return False, None
    if not certificate:
        return True, None
    ngens = len(gens)
    vartable = f.vars
    cofactors = [Polynomial.zero(vartable) for _ in range(ngens)]
    for quotient, row in zip(quotients, basis.transform):
        if quotient.is_zero():
            continue
        for j in range(ngens):
            if not row[j].is_zero():
                cofactors[j] = cofactors[j] + quotient * row[j]
    return True, MembershipCertificate(tuple(cofactors))


def elimination_order(vartable: VarTable, keep_names) -> MonomialOrder:
    """Lex order ranking eliminated variables strictly above kept ones."""
    keep = set(keep_names)
    eliminated = [i for i, n in enumerate(vartable.names) if n not in keep]
    kept = [i for i, n in enumerate(vartable.names) if n in keep]
    return lex_order(len(vartable), eliminated + kept)


def elimination_ideal(gens, keep_names, limits: Limits = DEFAULT_LIMITS):
    """Reduced-basis generators of <gens> intersected with the kept subring.

    Computed with a lex order ranking eliminated variables strictly above
    kept variables, then filtering basis elements supported on kept ones.
    """
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        return []
    vartable = polys[0].vars
    keep = set(keep_names)
    unknown = keep - set(vartable.names)
    if unknown:
        raise KeyError("keep set names unknown variables: %s" % sorted(unknown))
    order = elimination_order(vartable, keep)
    basis = buchberger(polys, order=order, limits=limits)
    keep_idx = {vartable.index(n) for n in keep}
    out = [g for g in basis.polys if g.support_indices() <= keep_idx]
    return out
