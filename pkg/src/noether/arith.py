"""Exact arithmetic core: rationals, variable tables, monomials, orders, polynomials.

A polynomial is a sparse map from monomials (dense exponent tuples) to nonzero
rational coefficients.  All arithmetic is exact; nothing here ever rounds.
Term storage is order-independent: a monomial order is supplied at the point
where one is needed (leading terms, printing), so a single polynomial value
can serve several orders.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is normally available
    from fractions import Fraction as Rational

#: Exponent tuple, one non-negative int per variable of the owning VarTable.
Monomial = tuple

ZERO = Rational(0)
ONE = Rational(1)

RESERVED_NAMES = ("__t",)


class ArithError(Exception):
    """Base class for arithmetic-layer errors."""


class VarTableMismatch(ArithError):
    """Operands belong to different variable tables."""


class ZeroPolynomialError(ArithError):
    """Operation undefined on the zero polynomial."""


def rat(numerator, denominator=1) -> Rational:
    """Build an exact rational; always reduced, denominator positive."""
    return Rational(numerator, denominator)


def _is_identifier(name: str) -> bool:
    if not name or not name[0].isalpha():
        return False
    return all(ch.isalnum() or ch == "_" for ch in name[1:])


class VarTable:
    """Ordered table of distinct variable names shared by a polynomial system."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names: %r" % (self.names,))
        for name in self.names:
            if not _is_identifier(name):
                raise ValueError("invalid variable name %r" % name)
            if name in RESERVED_NAMES:
                raise ValueError("reserved variable name %r" % name)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return "VarTable(%s)" % ", ".join(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown variable %r" % name) from None

    def extended(self, name: str, first: bool = False) -> "VarTable":
        """A new table with one extra (possibly reserved) variable appended."""
        if name in self._index:
            raise ValueError("variable %r already present" % name)
        table = VarTable.__new__(VarTable)
        table.names = (name, *self.names) if first else (*self.names, name)
        table._index = {n: i for i, n in enumerate(table.names)}
        return table


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A total multiplicative well-order on monomials.

    kind is "lex" or "grevlex"; ranking is a permutation of variable indices,
    highest-ranked variable first.  key() maps monomials to sort keys so that
    bigger key means bigger monomial.
    """

    __slots__ = ("kind", "ranking", "_rev")

    def __init__(self, kind: str, ranking: Iterable[int]):
        if kind not in ("lex", "grevlex"):
            raise ValueError("unknown order kind %r" % kind)
        self.kind = kind
        self.ranking = tuple(ranking)
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError("ranking must be a permutation of variable indices")
        self._rev = tuple(reversed(self.ranking))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.ranking == other.ranking
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.ranking))

    def __repr__(self) -> str:
        return "MonomialOrder(%r, ranking=%r)" % (self.kind, self.ranking)

    def key(self, m: Monomial):
        if self.kind == "lex":
            return tuple(m[i] for i in self.ranking)
        # grevlex: compare total degree, then reversed exponents negated
        return (sum(m), tuple(-m[i] for i in self._rev))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def sorted_monomials(self, monomials: Iterable[Monomial]) -> list:
        """Monomials in decreasing order."""
        return sorted(monomials, key=self.key, reverse=True)


def lex_order(n: int, ranking: Iterable[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", range(n) if ranking is None else ranking)


def grevlex_order(n: int, ranking: Iterable[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", range(n) if ranking is None else ranking)


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Immutable after construction: no operation mutates its inputs, so values
    are safe to share between concurrent tasks.  Two polynomials are equal iff
    their term maps (and variable tables) are equal.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vartable: VarTable, terms: Mapping[Monomial, object]):
        self.vars = vartable
        clean = {}
        for mono, coeff in terms.items():
            coeff = coeff if type(coeff) is type(ONE) else Rational(coeff)
            if coeff != 0:
                clean[mono] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(vartable: VarTable) -> "Polynomial":
        return Polynomial(vartable, {})

    @staticmethod
    def constant(vartable: VarTable, value) -> "Polynomial":
        return Polynomial(vartable, {(0,) * len(vartable): Rational(value)})

    @staticmethod
    def variable(vartable: VarTable, name: str) -> "Polynomial":
        exps = [0] * len(vartable)
        exps[vartable.index(name)] = 1
        return Polynomial(vartable, {tuple(exps): ONE})

    # -- basic protocol ------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .syntax import print_polynomial

        return "Polynomial(%s)" % print_polynomial(self)

    def _check(self, other: "Polynomial") -> None:
        if self.vars is not other.vars and self.vars != other.vars:
            raise VarTableMismatch(
                "operands use different variable tables: %r vs %r"
                % (self.vars, other.vars)
            )

    # -- ring operations -----------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[mono] = acc
            elif mono in out:
                del out[mono]
        return Polynomial._raw(self.vars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            acc = -coeff if acc is None else acc - coeff
            if acc:
                out[mono] = acc
            elif mono in out:
                del out[mono]
        return Polynomial._raw(self.vars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                acc = out.get(mono)
                prod = ca * cb
                acc = prod if acc is None else acc + prod
                if acc:
                    out[mono] = acc
                elif mono in out:
                    del out[mono]
        return Polynomial._raw(self.vars, out)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.vars, 1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, value) -> "Polynomial":
        c = Rational(value)
        if c == 0:
            return Polynomial.zero(self.vars)
        return Polynomial._raw(self.vars, {m: c * v for m, v in self.terms.items()})

    @staticmethod
    def _raw(vartable: VarTable, terms: dict) -> "Polynomial":
        """Wrap an already-clean term dict without re-validation."""
        poly = Polynomial.__new__(Polynomial)
        poly.vars = vartable
        poly.terms = terms
        poly._hash = None
        return poly

    # -- structure -----------------------------------------------------

    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def leading_term(self, order: MonomialOrder):
        """Order-maximal (monomial, coefficient) pair; f must be nonzero."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def coefficient(self, mono: Monomial) -> Rational:
        return self.terms.get(mono, ZERO)

    def constant_value(self):
        """The rational value of a constant polynomial, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            mono, coeff = next(iter(self.terms.items()))
            if not any(mono):
                return coeff
        return None

    def support_indices(self) -> frozenset:
        """Indices of variables that actually occur."""
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(i)
        return frozenset(used)

    def support_names(self) -> frozenset:
        return frozenset(self.vars.names[i] for i in self.support_indices())

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(m[index] for m in self.terms)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, point: Mapping[str, object]) -> Rational:
        """Exact value at a point assigning every variable of the polynomial."""
        values = []
        for i, name in enumerate(self.vars.names):
            if name in point:
                values.append(Rational(point[name]))
            elif self.degree_in(i) > 0:
                raise KeyError("no assignment for variable %r" % name)
            else:
                values.append(ZERO)
        total = ZERO
        for mono, coeff in self.terms.items():
            term = coeff
            for exp, val in zip(mono, values):
                if exp:
                    term *= val**exp
            total += term
        return total

    def map_vars(self, target: VarTable) -> "Polynomial":
        """Re-express over a larger table containing all used variables."""
        mapping = [target.index(n) if n in target._index else -1 for n in self.vars.names]
        width = len(target)
        used = self.support_indices()
        for i in used:
            if mapping[i] < 0:
                raise KeyError("target table lacks variable %r" % self.vars.names[i])
        out = {}
        for mono, coeff in self.terms.items():
            exps = [0] * width
            for i, e in enumerate(mono):
                if e:
                    exps[mapping[i]] = e
            out[tuple(exps)] = coeff
        return Polynomial._raw(target, out)

    # -- normalization ---------------------------------------------------

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        if lc == 1:
            return self
        inv = ONE / lc
        return Polynomial._raw(self.vars, {m: c * inv for m, c in self.terms.items()})

    def primitive(self, order: MonomialOrder):
        """(unit, normalized) with integer coprime coefficients and positive
        leading coefficient; unit * normalized == self."""
        if not self.terms:
            return ONE, self
        from math import gcd

        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, int(c.numerator))
            den = int(c.denominator)
            den_lcm = den_lcm * den // gcd(den_lcm, den)
        scale = Rational(num_gcd, den_lcm)
        _, lc = self.leading_term(order)
        if lc < 0:
            scale = -scale
        return scale, Polynomial._raw(
            self.vars, {m: c / scale for m, c in self.terms.items()}
        )


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Functional entry point for the ring operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown operation %r" % op)
