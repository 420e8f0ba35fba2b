"""Candidate foliation generators delta = a(t)*alpha + b(t)*beta + c(t)*d/dt.

The pair (alpha, beta) spans the restricted Lie algebra of an infinitesimal
group of length p^2 in characteristic 2; its p-th power structure falls into
exactly four cases.  A triple (a, b, c) of polynomials generates a rank-one
subsheaf; it is an admissible foliation generator when it is primitive (C1),
extends to the chart at infinity without zeros (C2), and is p-closed (C3).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ConsistencyError, FieldMismatchError
from .polynomial import Poly, poly_gcd


class LieCase(enum.Enum):
    """The four p-th power structures of the commuting pair (alpha, beta)."""

    I = ("zero", "zero")
    II = ("alpha", "beta")
    III = ("alpha", "zero")
    IV = ("beta", "zero")

    def __init__(self, alpha_sq, beta_sq):
        self.alpha_sq = alpha_sq
        self.beta_sq = beta_sq

    @classmethod
    def from_name(cls, name):
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown Lie case {name!r}; expected I, II, III or IV") from None


@dataclass(frozen=True)
class DerivationTriple:
    case: LieCase
    a: Poly
    b: Poly
    c: Poly

    def __post_init__(self):
        spec = self.a.spec
        if self.b.spec != spec or self.c.spec != spec:
            raise FieldMismatchError("triple components must share one field")
        if spec.p != 2:
            raise ValueError("derivation triples are specific to characteristic 2")
        if not (self.a or self.b or self.c):
            raise ValueError("the zero triple does not generate a rank-one subsheaf")

    @property
    def spec(self):
        return self.a.spec

    def components(self):
        return (self.a, self.b, self.c)

    def to_json_dict(self):
        return {
            "case": self.case.name,
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "field": self.spec.literal(),
        }

    def __str__(self):
        return f"[case {self.case.name}] a={self.a}, b={self.b}, c={self.c} over {self.spec.literal()}"


@dataclass(frozen=True)
class SquaredDerivation:
    """The alpha, beta, d/dt components of delta squared."""

    A: Poly
    B: Poly
    C: Poly

    def components(self):
        return (self.A, self.B, self.C)

    def is_zero(self):
        return not (self.A or self.B or self.C)


def delta_squared(d: DerivationTriple) -> SquaredDerivation:
    """Expand delta^2 = a^2*alpha^2 + b^2*beta^2 + c*a'*alpha + c*b'*beta + c*c'*d/dt
    and substitute the case's values of alpha^2 and beta^2."""
    a, b, c = d.a, d.b, d.c
    A = c * a.formal_derivative()
    B = c * b.formal_derivative()
    C = c * c.formal_derivative()
    for sq, slot in ((a * a, d.case.alpha_sq), (b * b, d.case.beta_sq)):
        if slot == "alpha":
            A = A + sq
        elif slot == "beta":
            B = B + sq
    return SquaredDerivation(A, B, C)


def _compose_engine(case, a, b, c, zero, padd, pmul, pderiv):
    """Expand (a*alpha + b*beta + c*d/dt)^2 by operator composition.

    Works over any arithmetic backend (object polynomials or packed index
    tuples).  Only the defining relations are used: alpha and beta commute
    with functions of t, with each other and with d/dt; d/dt picks up the
    derivative when moved past a coefficient; (d/dt)^2 = 0; and alpha^2,
    beta^2 reduce per the Lie case.  Returns the accumulator over the basis
    words A, B, T, the irreducible length-2 words and the identity word.
    """
    slots = {"A": zero, "B": zero, "T": zero, "AB": zero, "AT": zero, "BT": zero, "": zero}
    sq_words = {"AA": case.alpha_sq, "BB": case.beta_sq}
    terms = (("A", a), ("B", b), ("T", c))

    def absorb(word, coeff):
        if len(word) == 2:
            if word in sq_words:
                target = sq_words[word]
                if target == "zero":
                    return
                word = "A" if target == "alpha" else "B"
            elif word == "TT":
                return
            else:
                word = "".join(sorted(word))  # BA -> AB, TA -> AT, TB -> BT
        slots[word] = padd(slots[word], coeff)

    for x, rx in terms:
        for y, ry in terms:
            # (rx * x) o (ry * y): move x past the coefficient ry
            if x == "T":
                absorb("T" + y, pmul(rx, ry))
                absorb(y, pmul(rx, pderiv(ry)))
            else:
                absorb(x + y, pmul(rx, ry))
    return slots


def _pk_add(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, gi in enumerate(g):
        out[i] ^= gi
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _pk_mul_factory(mul, q):
    def pk_mul(f, g):
        if not f or not g:
            return ()
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi:
                base = fi * q
                for j, gj in enumerate(g):
                    if gj:
                        out[i + j] ^= mul[base + gj]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    return pk_mul


def _pk_deriv(f):
    out = [(f[e] if e & 1 else 0) for e in range(1, len(f))]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def oracle_delta_squared(d: DerivationTriple) -> SquaredDerivation:
    """Recompute delta^2 by symbolic operator composition.

    Independent of delta_squared: the square is expanded as a word rewrite
    with the Lie relations instead of transcribing the closed formula.  Any
    residue on irreducible length-2 words or on the identity word signals a
    bug.  Small fields run on packed coefficient indices over flat tables;
    larger ones fall back to object arithmetic.
    """
    spec = d.spec
    try:
        q, _add, mul, _inv = spec.tables()
    except ValueError:
        q = None
    if q is not None:
        packed = [tuple(x.index for x in f.coeffs) for f in d.components()]
        slots = _compose_engine(
            d.case, *packed, (), _pk_add, _pk_mul_factory(mul, q), _pk_deriv
        )
        unpack = lambda t: Poly(spec, tuple(spec.element(i) for i in t))
    else:
        zero = Poly.zero(spec)
        slots = _compose_engine(
            d.case,
            d.a,
            d.b,
            d.c,
            zero,
            Poly.__add__,
            Poly.__mul__,
            Poly.formal_derivative,
        )
        unpack = lambda f: f
    for word in ("AB", "AT", "BT", ""):
        if slots[word]:
            raise ConsistencyError(
                f"operator expansion left a nonzero residue on word {word or '1'}"
            )
    return SquaredDerivation(unpack(slots["A"]), unpack(slots["B"]), unpack(slots["T"]))


def satisfies_C1(d: DerivationTriple) -> bool:
    """Primitivity: the gcd of the nonzero components is a nonzero constant."""
    nonzero = [f for f in d.components() if f]
    if not nonzero:
        return False
    g = nonzero[0]
    for f in nonzero[1:]:
        g = poly_gcd(g, f)
    return g.degree == 0


def satisfies_C2(d: DerivationTriple) -> bool:
    """Degree bounds deg a, deg b <= 1, deg c <= 3 with at least one attained."""
    da, db, dc = d.a.degree, d.b.degree, d.c.degree
    return da <= 1 and db <= 1 and dc <= 3 and (da == 1 or db == 1 or dc == 3)


def is_p_closed(d: DerivationTriple):
    """p-closedness as proportionality over the rational function field.

    delta^2 = (A, B, C) lies in the span of delta exactly when the three 2x2
    minors against (a, b, c) vanish.  When they do and the triple is
    primitive, the multiplier h with (A, B, C) = h * (a, b, c) is a
    polynomial, recovered by exact division against a component of maximal
    degree; delta^2 = 0 yields h = 0.  Returns (closed, h or None).
    """
    sq = delta_squared(d)
    A, B, C = sq.components()
    a, b, c = d.components()
    if (A * b + B * a) or (A * c + C * a) or (B * c + C * b):
        return False, None
    if not satisfies_C1(d):
        return True, None
    pairs = [(f, F) for f, F in ((a, A), (b, B), (c, C)) if f]
    denom, numer = max(pairs, key=lambda p: p[0].degree)
    h, rem = divmod(numer, denom)
    if rem:
        raise ConsistencyError("multiplier division left a remainder on a primitive p-closed triple")
    return True, h


def is_valid_foliation(d: DerivationTriple) -> bool:
    return satisfies_C1(d) and satisfies_C2(d) and is_p_closed(d)[0]


def failed_conditions(d: DerivationTriple):
    """Names of the admissibility conditions the triple violates."""
    failed = []
    if not satisfies_C1(d):
        failed.append("C1 (gcd of a, b, c is not a nonzero constant)")
    if not satisfies_C2(d):
        failed.append("C2 (degree bounds with at least one equality)")
    if not is_p_closed(d)[0]:
        failed.append("C3 (delta^2 is not proportional to delta)")
    return failed


@dataclass(frozen=True)
class ChartAtInfinity:
    """The triple rewritten in the coordinate s = 1/t at infinity.

    The components transform as s*a(1/s), s*b(1/s), s^3*c(1/s) (the d/dt
    frame picks up s^2 and the twist one more power of s).  A component is
    None when negative powers of s remain.  nonvanishing_at_s0 is meaningful
    when regular: it holds when some component has a nonzero constant term.
    """

    a_bar: Poly | None
    b_bar: Poly | None
    c_bar: Poly | None
    regular: bool
    nonvanishing_at_s0: bool


def _reverse_into(f: Poly, weight: int):
    """s^weight * f(1/s) as a polynomial in s, or None if a pole remains."""
    if f.degree > weight:
        return None
    coeffs = [f.coeff(weight - i) for i in range(weight + 1)]
    return Poly(f.spec, tuple(coeffs))


def chart_at_infinity(d: DerivationTriple) -> ChartAtInfinity:
    a_bar = _reverse_into(d.a, 1)
    b_bar = _reverse_into(d.b, 1)
    c_bar = _reverse_into(d.c, 3)
    regular = a_bar is not None and b_bar is not None and c_bar is not None
    nonvanishing = any(bool(f.coeff(0)) for f in (a_bar, b_bar, c_bar) if f is not None)
    return ChartAtInfinity(a_bar, b_bar, c_bar, regular, nonvanishing)


def scale(lam, d: DerivationTriple) -> DerivationTriple:
    """Multiply all three components by the nonzero constant lam."""
    if lam.spec != d.spec:
        raise FieldMismatchError("scalar must live in the triple's field")
    if not lam:
        raise ZeroDivisionError("scaling a foliation generator by zero")
    return DerivationTriple(d.case, d.a.scale(lam), d.b.scale(lam), d.c.scale(lam))
