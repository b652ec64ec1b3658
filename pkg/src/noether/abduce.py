"""The encode / decompose / reason abduction pipeline.

Given axioms that fail to derive a hypothesis Q, form the ideal of the
axioms together with Q, decompose its variety into minimal components, and
test each component generator as a candidate missing axiom: the candidate is
accepted when the known axioms plus the candidate derive Q and the projection
onto Q's variables adds exactly Q's surface and nothing smaller.

The projection-exactness filter compares the elimination ideal E of the
augmented system against E0 + <Q>, where E0 is the elimination ideal of the
known axioms alone: every generator of E must be a radical member of
E0 + <Q>.  Testing against <Q> alone would reject valid candidates whenever
the known axioms already constrain Q's variables (their projection lands in
E, e.g. a center-of-mass relation over hypothesis variables), so the known
contribution is factored out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .arith import Polynomial, VarTable, grevlex_order
from .decompose import Decomposition, component_generators, minimal_primes
from .groebner import (
    DEFAULT_LIMITS,
    Limits,
    MembershipCertificate,
    ResourceLimitExceeded,
    buchberger,
    elimination_ideal,
    ideal_membership,
    normal_form,
)
from .idealops import Ideal, radical_membership, recoverability_precheck
from .syntax import AxiomSystem, print_normalized

STATUS_ALREADY = "already-derivable"
STATUS_FOUND = "candidates-found"
STATUS_NONE = "no-single-axiom"
STATUS_INCONSISTENT = "inconsistent"
STATUS_EXHAUSTED = "resource-exhausted"

REJECT_NOT_DERIVABLE = "not-derivable"
REJECT_NOT_EXACT = "projection-not-exact"
REJECT_DUPLICATE = "duplicate"
REJECT_TRIVIAL = "trivially-Q"
REJECT_RESOURCE = "resource"


@dataclass
class AbduceOptions:
    limits: Limits = DEFAULT_LIMITS
    timeout_secs: float | None = 120.0
    certificates: bool = True
    precheck: bool = True
    saturate_branches: bool = True


@dataclass
class Candidate:
    polynomial: Polynomial
    source_component: int
    accepted: bool
    rejection_reason: str | None = None
    certificate: MembershipCertificate | None = None

    def normalized(self) -> str:
        order = grevlex_order(len(self.polynomial.vars))
        return print_normalized(self.polynomial, order)


@dataclass
class AbductionReport:
    system: str
    dropped: tuple
    hypothesis: str
    status: str
    candidates: list = field(default_factory=list)
    decomposition: Decomposition | None = None
    precheck: str = "unknown"
    timings_ms: dict = field(default_factory=dict)
    certificate: MembershipCertificate | None = None  # for already-derivable
    error: str | None = None

    def accepted_candidates(self):
        return [c for c in self.candidates if c.accepted]

    def accepted_strings(self):
        return [c.normalized() for c in self.accepted_candidates()]


def encode(system: AxiomSystem, known, hypothesis_name: str) -> Ideal:
    """The ideal of the known axioms together with the hypothesis."""
    for name in known:
        if name not in system.axioms:
            raise KeyError("unknown axiom %r" % name)
    if hypothesis_name not in system.hypotheses:
        raise KeyError("unknown hypothesis %r" % hypothesis_name)
    polys = [system.axioms[n] for n in system.axioms if n in set(known)]
    polys.append(system.hypotheses[hypothesis_name])
    return Ideal(polys, system.vars)


def check_derivable(
    system: AxiomSystem,
    known,
    hypothesis_name: str,
    certificate: bool = False,
    limits: Limits = DEFAULT_LIMITS,
):
    """Is the hypothesis an algebraic combination of the known axioms?"""
    known = list(known)
    hypothesis = system.hypotheses[hypothesis_name]
    gens = [system.axioms[n] for n in known]
    if not gens:
        if hypothesis.is_zero():
            return True, MembershipCertificate(()) if certificate else None
        return False, None
    return ideal_membership(
        hypothesis, gens, certificate=certificate, limits=limits
    )


class _Reasoner:
    """Shared state for testing candidates against one (known, Q) pair.

    Exactness is judged in the subring of the hypothesis variables: every
    generator of the augmented system's elimination ideal must be a radical
    member of E0 + <Q>, where E0 is the elimination ideal of the known
    axioms alone.  A candidate that projects onto a smaller degenerate
    surface (a "some quantity is zero" condition) adds projected content
    outside E0 + <Q> and is rejected.
    """

    def __init__(self, known_polys, hypothesis, limits: Limits):
        self.known = list(known_polys)
        self.q = hypothesis
        self.limits = limits
        self.vars = hypothesis.vars
        self.keep = hypothesis.support_names()
        keep_names = [n for n in self.vars.names if n in self.keep]
        self.keep_table = VarTable(keep_names)
        self.q_kept = hypothesis.map_vars(self.keep_table)
        self.q_normal = print_normalized(hypothesis)
        self._exactness_ideal = None

    def exactness_ideal(self) -> Ideal:
        if self._exactness_ideal is None:
            e0 = (
                elimination_ideal(self.known, self.keep, self.limits)
                if self.known
                else []
            )
            gens = [e.map_vars(self.keep_table) for e in e0] + [self.q_kept]
            self._exactness_ideal = Ideal(gens, self.keep_table)
        return self._exactness_ideal

    def test(self, candidate: Polynomial, source: int) -> Candidate:
        if print_normalized(candidate) == self.q_normal:
            return Candidate(candidate, source, False, REJECT_TRIVIAL)
        augmented = self.known + [candidate]
        member, _ = ideal_membership(self.q, augmented, limits=self.limits)
        if not member:
            return Candidate(candidate, source, False, REJECT_NOT_DERIVABLE)
        projection = elimination_ideal(augmented, self.keep, self.limits)
        projected = [e.map_vars(self.keep_table) for e in projection]
        # membership through the projected ideal must agree with the
        # full-ring test above
        basis_e = (
            buchberger(
                projected,
                order=grevlex_order(len(self.keep_table)),
                limits=self.limits,
            )
            if projected
            else None
        )
        if basis_e is None or not basis_e.contains(self.q_kept):
            return Candidate(candidate, source, False, REJECT_NOT_DERIVABLE)
        exactness = self.exactness_ideal()
        for e in projected:
            if not radical_membership(e, exactness, self.limits):
                return Candidate(candidate, source, False, REJECT_NOT_EXACT)
        return Candidate(candidate, source, True)


def abduce_single(
    system: AxiomSystem,
    drop,
    hypothesis_name: str,
    options: AbduceOptions | None = None,
) -> AbductionReport:
    """Propose and verify candidate axioms after dropping the named axioms."""
    options = options or AbduceOptions()
    limits = options.limits.with_deadline(options.timeout_secs)
    drop = tuple(drop)
    for name in drop:
        if name not in system.axioms:
            raise KeyError("unknown axiom %r" % name)
    known = [n for n in system.axioms if n not in set(drop)]
    hypothesis = system.hypotheses[hypothesis_name]
    report = AbductionReport(
        system=system.name,
        dropped=drop,
        hypothesis=hypothesis_name,
        status=STATUS_NONE,
    )
    clock = time.perf_counter
    started = clock()

    try:
        derivable, certificate = check_derivable(
            system, known, hypothesis_name,
            certificate=options.certificates, limits=limits,
        )
        report.timings_ms["derivability"] = (clock() - started) * 1000.0
        if derivable:
            report.status = STATUS_ALREADY
            report.certificate = certificate
            return report

        known_polys = [system.axioms[n] for n in known]
        encoded = encode(system, known, hypothesis_name)
        basis = encoded.groebner_basis(limits=limits)
        if basis.is_trivial() or (
            known_polys
            and buchberger(known_polys, limits=limits).is_trivial()
        ):
            report.status = STATUS_INCONSISTENT
            return report

        if options.precheck:
            t0 = clock()
            try:
                report.precheck = recoverability_precheck(
                    known_polys, hypothesis, limits
                )
            except ResourceLimitExceeded:
                report.precheck = "unknown"
            report.timings_ms["precheck"] = (clock() - t0) * 1000.0

        t0 = clock()
        decomposition = minimal_primes(
            encoded, limits=limits, saturate_branches=options.saturate_branches
        )
        report.decomposition = decomposition
        report.timings_ms["decompose"] = (clock() - t0) * 1000.0

        t0 = clock()
        reasoner = _Reasoner(known_polys, hypothesis, limits)
        seen = set()
        for index, component in enumerate(decomposition.components):
            for generator in component_generators(component):
                if generator.total_degree() < 1:
                    continue
                key = print_normalized(generator)
                if key in seen:
                    report.candidates.append(
                        Candidate(generator, index, False, REJECT_DUPLICATE)
                    )
                    continue
                seen.add(key)
                candidate = reasoner.test(generator, index)
                if candidate.accepted and options.certificates:
                    _, cert = ideal_membership(
                        hypothesis,
                        known_polys + [generator],
                        certificate=True,
                        limits=limits,
                    )
                    candidate.certificate = cert
                report.candidates.append(candidate)
        report.timings_ms["reason"] = (clock() - t0) * 1000.0

        report.status = (
            STATUS_FOUND if report.accepted_candidates() else STATUS_NONE
        )
        return report
    except ResourceLimitExceeded:
        report.status = STATUS_EXHAUSTED
        return report
    finally:
        report.timings_ms["total"] = (clock() - started) * 1000.0


def abduce_sweep(
    system: AxiomSystem,
    drop_sets,
    hypothesis_name: str,
    options: AbduceOptions | None = None,
):
    """One report per drop set; per-case failures never abort the sweep."""
    reports = []
    for drop in drop_sets:
        try:
            reports.append(abduce_single(system, drop, hypothesis_name, options))
        except Exception as exc:  # defensive: record, keep sweeping
            report = AbductionReport(
                system=system.name,
                dropped=tuple(drop),
                hypothesis=hypothesis_name,
                status=STATUS_EXHAUSTED,
            )
            report.timings_ms["error"] = 0.0
            report.error = str(exc)
            reports.append(report)
    return reports


def scan_inconsistent(
    system: AxiomSystem,
    hypothesis_name: str,
    options: AbduceOptions | None = None,
):
    """The one-at-a-time removal loop for inconsistent axiom systems.

    Returns (base report with nothing dropped, list of single-removal
    reports in declaration order).
    """
    base = abduce_single(system, (), hypothesis_name, options)
    removals = abduce_sweep(
        system,
        [(name,) for name in system.axioms],
        hypothesis_name,
        options,
    )
    return base, removals
