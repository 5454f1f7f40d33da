"""Exact sparse multivariate polynomials over Q.

Polynomials model the equivariant cohomology of a point, Q[x_1, ..., x_r],
with algebraic degree d standing for cohomological degree 2d.  Everything
here is immutable; coefficients are :class:`fractions.Fraction`.

On top of ring arithmetic the GKM code needs two things from this module:
reduction and exact division by a linear form, and simultaneous-congruence
lifting (CRT) for pairwise non-proportional linear moduli.  :class:`RationalFunction` covers the part
of the fraction field whose denominators are products of linear forms,
which is where localization sums live.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...] of length rank


class RankMismatch(ValueError):
    pass


class ProportionalModuli(ValueError):
    """Two CRT moduli are proportional, so the congruences cannot be lifted."""

    def __init__(self, first, second, message=None):
        self.first = first
        self.second = second
        super().__init__(message or f"proportional moduli {first} and {second}")


class NoCRTSolution(ValueError):
    """The residues are incompatible: no polynomial satisfies all congruences."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def _grlex_key(mono):
    return (sum(mono), mono)


def format_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    """A sparse polynomial in ``rank`` variables with rational coefficients.

    Terms are kept as a mapping from exponent tuples to nonzero Fractions.
    Instances are hashable and must be treated as values.
    """

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Monomial, object] | None = None):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        self.rank = rank
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != rank:
                    raise RankMismatch(f"monomial {mono} has length {len(mono)}, rank is {rank}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = _as_fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.rank = rank
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "Polynomial":
        return cls._raw(rank, {})

    @classmethod
    def constant(cls, rank: int, c) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def one(cls, rank: int) -> "Polynomial":
        return cls.constant(rank, 1)

    @classmethod
    def variable(cls, rank: int, i: int) -> "Polynomial":
        if not 0 <= i < rank:
            raise IndexError(f"variable index {i} out of range for rank {rank}")
        mono = [0] * rank
        mono[i] = 1
        return cls._raw(rank, {tuple(mono): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        """The homogeneous linear polynomial sum(coeffs[i] * x_i)."""
        rank = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c:
                mono = [0] * rank
                mono[i] = 1
                terms[tuple(mono)] = c
        return cls._raw(rank, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.rank in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.rank, Fraction(0))

    def coefficient(self, mono) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def degree(self) -> int:
        """Algebraic total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def cohomological_degree(self) -> int:
        return 2 * self.degree()

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def monomials(self) -> list:
        """Monomials in descending graded-lexicographic order."""
        return sorted(self._terms, key=_grlex_key, reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=_grlex_key)
        return mono, self._terms[mono]

    def uses_variable(self, i: int) -> bool:
        return any(m[i] for m in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.rank, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.rank)
        return Polynomial._raw(self.rank, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Polynomial._raw(self.rank, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(Fraction(1) / Fraction(other))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.rank:
            raise RankMismatch("evaluation point has wrong length")
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    def substitute(self, i: int, value: "Polynomial") -> "Polynomial":
        """Replace x_i by ``value`` everywhere."""
        value = self._coerce(value)
        powers = [Polynomial.one(self.rank)]
        result = Polynomial.zero(self.rank)
        by_exp: dict = {}
        for m, c in self._terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            by_exp.setdefault(m[i], {})[rest] = c
        for e in sorted(by_exp):
            while len(powers) <= e:
                powers.append(powers[-1] * value)
            result = result + Polynomial._raw(self.rank, by_exp[e]) * powers[e]
        return result

    # -- printing -----------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        """Canonical text: graded-lex order, explicit signs, ``p/q`` rationals."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self.rank)]
        if len(names) != self.rank:
            raise RankMismatch("wrong number of variable names")
        if not self._terms:
            return "0"
        pieces = []
        for k, mono in enumerate(self.monomials()):
            c = self._terms[mono]
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = format_fraction(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = format_fraction(a) + "*" + "*".join(factors)
            if k == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r}, rank={self.rank})"


class LinearForm:
    """A nonzero integer linear form, e.g. a character of the torus."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        coeffs = tuple(coeffs)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"linear form entries must be integers, got {c!r}")
        if not any(coeffs):
            raise ValueError("linear form must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, key, value):
        raise AttributeError("LinearForm is immutable")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def pivot(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c)

    @property
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "LinearForm":
        """Divide out the content and make the grlex-leading coefficient positive."""
        g = self.content
        if self.coeffs[self.pivot] < 0:
            g = -g
        return LinearForm(c // g for c in self.coeffs)

    def __neg__(self):
        return LinearForm(-c for c in self.coeffs)

    def __add__(self, other):
        return LinearForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return LinearForm(a - b for a, b in zip(self.coeffs, other.coeffs))

    def pairing(self, covector: Sequence[int]) -> int:
        if len(covector) != len(self.coeffs):
            raise RankMismatch("covector has wrong length")
        return sum(a * b for a, b in zip(self.coeffs, covector))

    def is_proportional(self, other: "LinearForm") -> bool:
        if self.rank != other.rank:
            raise RankMismatch("rank mismatch")
        return self.primitive() == other.primitive()

    def to_polynomial(self) -> Polynomial:
        return Polynomial.linear(self.coeffs)

    def format(self, names=None) -> str:
        return self.to_polynomial().format(names)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LinearForm", self.coeffs))

    def __repr__(self):
        return f"LinearForm({list(self.coeffs)})"


def _linear_parts(form) -> tuple[int, dict]:
    """(rank, {index: Fraction}) for a LinearForm or a linear Polynomial."""
    if isinstance(form, LinearForm):
        return form.rank, {i: Fraction(c) for i, c in enumerate(form.coeffs) if c}
    if isinstance(form, Polynomial):
        parts = {}
        for m, c in form.items():
            if sum(m) != 1:
                raise ValueError(f"{form} is not a homogeneous linear form")
            parts[m.index(1)] = c
        if not parts:
            raise ValueError("linear form must be nonzero")
        return form.rank, parts
    raise TypeError(f"expected a linear form, got {type(form).__name__}")


def reduce_mod_linear(p: Polynomial, form) -> Polynomial:
    """Canonical representative of ``p`` modulo the ideal generated by ``form``.

    The pivot is the lowest-index variable with a nonzero coefficient in
    ``form``; it is eliminated by solving ``form = 0`` for it.  The result
    does not involve the pivot and ``p - result`` is a multiple of ``form``.
    """
    rank, parts = _linear_parts(form)
    if p.rank != rank:
        raise RankMismatch(f"polynomial rank {p.rank}, form rank {rank}")
    k = min(parts)
    ck = parts[k]
    if not p.uses_variable(k):
        return p
    solved = Polynomial._raw(rank, {})
    for i, c in parts.items():
        if i != k:
            mono = [0] * rank
            mono[i] = 1
            solved = solved + Polynomial._raw(rank, {tuple(mono): -c / ck})
    return p.substitute(k, solved)


def _divide_exact(p: Polynomial, form) -> Polynomial | None:
    rank, parts = _linear_parts(form)
    if p.rank != rank:
        raise RankMismatch(f"polynomial rank {p.rank}, form rank {rank}")
    k = min(parts)
    ck = parts[k]
    rest = {}
    for i, c in parts.items():
        if i != k:
            mono = [0] * rank
            mono[i] = 1
            rest[tuple(mono)] = c
    rest_poly = Polynomial._raw(rank, rest)

    # p = sum_e p_e x_k^e; synthetic division by (ck*x_k + rest) from the top
    by_exp: dict = {}
    for m, c in p.items():
        by_exp.setdefault(m[k], {})[m[:k] + (0,) + m[k + 1:]] = c
    if not by_exp:
        return Polynomial.zero(rank)
    top = max(by_exp)
    coeff = {e: Polynomial._raw(rank, t) for e, t in by_exp.items()}
    quotient = Polynomial.zero(rank)
    xk = Polynomial.variable(rank, k)
    carry = Polynomial.zero(rank)
    for e in range(top, 0, -1):
        current = coeff.get(e, Polynomial.zero(rank)) - carry
        q = current.scale(1 / ck)
        quotient = quotient + q * xk ** (e - 1)
        carry = q * rest_poly
    remainder = coeff.get(0, Polynomial.zero(rank)) - carry
    if remainder:
        return None
    return quotient


def divides_linear(form, p: Polynomial) -> Polynomial | None:
    """Return ``q`` with ``p == form * q``, or None when ``form`` does not divide ``p``.

    Divisibility is over Q, so the content of ``form`` is irrelevant.
    """
    return _divide_exact(p, form)


def crt_lift(residues: Sequence[tuple[Polynomial, object]]) -> Polynomial:
    """Find ``g`` with ``g = p_k mod chi_k`` for every pair ``(p_k, chi_k)``.

    Builds ``g`` incrementally as ``g + chi_1...chi_{k-1} * h_k`` where
    ``h_k`` is obtained by exact division in Q[x]/(chi_k).  The moduli must
    be pairwise non-proportional.  The output depends on the order of the
    residues only up to a multiple of the product of all moduli.

    Raises:
        ProportionalModuli: two moduli are proportional.
        NoCRTSolution: the residues are not simultaneously solvable.
    """
    residues = list(residues)
    if not residues:
        raise ValueError("crt_lift needs at least one residue")
    for a in range(len(residues)):
        for b in range(a + 1, len(residues)):
            if _proportional(residues[a][1], residues[b][1]):
                raise ProportionalModuli(residues[a][1], residues[b][1])

    g = residues[0][0]
    rank = g.rank
    product = _linear_poly(residues[0][1], rank)
    done = [residues[0][1]]
    for p, chi in residues[1:]:
        target = reduce_mod_linear(p - g, chi)
        h = target
        if h:
            for prev in done:
                prev_bar = reduce_mod_linear(_linear_poly(prev, rank), chi)
                h = _divide_exact(h, prev_bar)
                if h is None:
                    raise NoCRTSolution(
                        f"residue {p} modulo {_linear_poly(chi, rank)} is incompatible "
                        "with the earlier congruences"
                    )
            g = g + product * h
        product = product * _linear_poly(chi, rank)
        done.append(chi)
    return g


def _linear_poly(form, rank) -> Polynomial:
    if isinstance(form, LinearForm):
        return form.to_polynomial()
    if isinstance(form, Polynomial):
        return form
    return Polynomial.linear(form)


def _proportional(a, b) -> bool:
    ra, pa = _linear_parts(a)
    rb, pb = _linear_parts(b)
    if ra != rb:
        raise RankMismatch("moduli of different rank")
    if set(pa) != set(pb):
        return False
    k = min(pa)
    ratio = pb[k] / pa[k]
    return all(pb[i] == ratio * pa[i] for i in pa)


def _primitive_from_poly(lin: Polynomial) -> tuple[LinearForm, Fraction]:
    """Split a linear polynomial as ``unit * form`` with ``form`` primitive integral."""
    rank, parts = _linear_parts(lin)
    den = 1
    for c in parts.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [0] * rank
    for i, c in parts.items():
        ints[i] = int(c * den)
    form = LinearForm(ints)
    prim = form.primitive()
    unit = Fraction(form.coeffs[form.pivot], prim.coeffs[prim.pivot]) / den
    return prim, unit


class RationalFunction:
    """A fraction whose denominator is a product of linear forms.

    Stored normalized: the denominator is a sorted tuple of
    ``(primitive LinearForm, multiplicity)`` pairs, each form with positive
    grlex-leading coefficient, and no listed form divides the numerator.
    Representation is therefore unique and equality is structural.
    """

    __slots__ = ("numerator", "factors")

    def __init__(self, numerator: Polynomial, factors: Iterable[tuple[LinearForm, int]] = ()):
        num = numerator
        rank = num.rank
        merged: dict = {}
        for form, mult in factors:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            if isinstance(form, Polynomial):
                form, unit = _primitive_from_poly(form)
                num = num.scale(Fraction(1) / unit ** mult)
            else:
                prim = form.primitive()
                unit = Fraction(form.coeffs[form.pivot], prim.coeffs[prim.pivot])
                num = num.scale(Fraction(1) / unit ** mult)
                form = prim
            if form.rank != rank:
                raise RankMismatch("denominator factor rank differs from numerator")
            merged[form] = merged.get(form, 0) + mult
        if not num:
            merged = {}
        for form in list(merged):
            while merged[form]:
                q = _divide_exact(num, form)
                if q is None:
                    break
                num = q
                merged[form] -= 1
            if not merged[form]:
                del merged[form]
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "factors", tuple(sorted(merged.items(), key=lambda fm: fm[0].coeffs)))

    def __setattr__(self, key, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    @classmethod
    def reciprocal_of_product(cls, rank, coefficient, forms: Iterable) -> "RationalFunction":
        """1 / (coefficient * prod(forms))."""
        coefficient = _as_fraction(coefficient)
        if not coefficient:
            raise ZeroDivisionError("division by zero polynomial")
        return cls(Polynomial.constant(rank, 1 / coefficient), [(f, 1) for f in forms])

    @property
    def rank(self):
        return self.numerator.rank

    @property
    def denominator(self) -> Polynomial:
        d = Polynomial.one(self.rank)
        for form, mult in self.factors:
            d = d * form.to_polynomial() ** mult
        return d

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def as_polynomial(self) -> Polynomial | None:
        return self.numerator if not self.factors else None

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction(Polynomial.constant(self.rank, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return rational_sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.factors)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numerator * other.numerator, self.factors + other.factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Divide by a constant, a linear form, or a product of linear forms."""
        if isinstance(other, LinearForm):
            return RationalFunction(self.numerator, self.factors + ((other, 1),))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        inv_factors, unit = _split_linear_product(other.numerator)
        num = self.numerator.scale(1 / unit)
        for form, mult in other.factors:
            num = num * form.to_polynomial() ** mult
        return RationalFunction(num, self.factors + tuple(inv_factors))

    def __eq__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)) and not isinstance(other, bool):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.factors == other.factors

    def __hash__(self):
        return hash((self.numerator, self.factors))

    def format(self, names=None) -> str:
        num = self.numerator.format(names)
        if not self.factors:
            return num
        dens = []
        for form, mult in self.factors:
            f = f"({form.format(names)})"
            dens.append(f if mult == 1 else f"{f}^{mult}")
        return f"({num})/({'*'.join(dens)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def _split_linear_product(p: Polynomial):
    """Factor ``p`` as unit * product of linear forms, for constants and linear ``p``."""
    if p.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_constant():
        return [], p.constant_value()
    if p.degree() == 1 and p.is_homogeneous():
        form, unit = _primitive_from_poly(p)
        return [(form, 1)], unit
    raise ValueError(
        "only constants and products of linear forms may appear in denominators"
    )


def rational_sum(terms: Iterable[RationalFunction]) -> RationalFunction:
    """Sum over the least common multiple of the denominators, normalized once."""
    terms = [t for t in terms]
    if not terms:
        raise ValueError("empty sum needs an explicit rank")
    rank = terms[0].rank
    lcm: dict = {}
    for t in terms:
        if t.rank != rank:
            raise RankMismatch("rank mismatch in sum")
        for form, mult in t.factors:
            lcm[form] = max(lcm.get(form, 0), mult)
    total = Polynomial.zero(rank)
    for t in terms:
        if t.is_zero():
            continue
        have = dict(t.factors)
        cofactor = Polynomial.one(rank)
        for form, mult in lcm.items():
            missing = mult - have.get(form, 0)
            if missing:
                cofactor = cofactor * form.to_polynomial() ** missing
        total = total + t.numerator * cofactor
    return RationalFunction(total, lcm.items())
