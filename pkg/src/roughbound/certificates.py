"""Exact sign certificates for linear combinations of the ``j = 2`` profile.

For ``g(a) = a F_{w_2}(a)`` and integer weights ``alpha`` with
``sum alpha_i a_i = 0`` there is a polynomial ``r`` such that

    sum_i alpha_i g(a_i) = integral_0^1 (1+t)**(n - a_k) r(t) dt.

If ``r >= 0`` on ``[0, 1]`` the combination is positive for every
``n >= a_k``.  If ``r`` changes sign once, from negative to positive, and
``integral (1+t)**l r > 0`` for some ``l``, the combination is positive for
every ``n >= a_k + l``, because multiplying by an increasing positive factor
keeps a single-crossing integrand's integral positive.  Both facts are
checked here in exact arithmetic; signs on ``[0, 1]`` come from Sturm
sequences, never from sampling a float grid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Sequence

from ._rational import format_rational
from .poly import RationalPolynomial, RootBracket, integrate_01_shifted, isolate_roots, refine
from .weights import WeightSpec, g_profile

Kind = Literal["nonneg", "nonpos", "single_crossing_up", "single_crossing_down", "indefinite"]

L_MAX = 32
T = RationalPolynomial.of(0, 1)


class InconclusiveError(Exception):
    """No certificate applies; says nothing about whether the inequality holds."""


class UnsoundCertificateError(AssertionError):
    """A certificate contradicted direct exact evaluation."""


@dataclass(frozen=True)
class ComparisonSpec:
    """Items ``a_1 < ... < a_k`` with integer weights summing (against ``a``) to zero."""

    a: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        a, alpha = tuple(self.a), tuple(self.alpha)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha", alpha)
        if len(a) != len(alpha) or not a:
            raise ValueError("a and alpha must be nonempty and of equal length")
        if a[0] < 1 or any(x >= y for x, y in zip(a, a[1:])):
            raise ValueError(f"a must be strictly increasing positive integers, got {a}")
        if sum(x * y for x, y in zip(a, alpha)):
            raise ValueError(f"sum alpha_i a_i must vanish, got {sum(x * y for x, y in zip(a, alpha))}")

    @property
    def span(self) -> int:
        return self.a[-1] - self.a[0]

    def direct_value(self, n: int) -> Fraction:
        """``sum alpha_i g(a_i)`` from the exact ``j = 2`` profile on ``[n]``."""
        profile = g_profile(WeightSpec(2, n))
        return sum((w * profile.g(x) for x, w in zip(self.a, self.alpha)), Fraction(0))


def build_q_minus(spec: ComparisonSpec) -> RationalPolynomial:
    a1, ak = spec.a[0], spec.a[-1]
    total = RationalPolynomial()
    for x, w in zip(spec.a, spec.alpha):
        term = RationalPolynomial.one_plus_t_power(ak - x).shift(x - a1)
        total = total + term * (w * x)
    return total


def build_q_plus(spec: ComparisonSpec) -> RationalPolynomial:
    ak = spec.a[-1]
    total = RationalPolynomial()
    for x, w in zip(spec.a, spec.alpha):
        total = total + RationalPolynomial.one_plus_t_power(ak - x) * (w * x)
    return total


def build_r(spec: ComparisonSpec) -> RationalPolynomial:
    """``t**(a_k-a_1-1) q-(1/t) + t**(a_1-1) q-(t)``."""
    if spec.span < 1:
        raise ValueError("need a_k > a_1")
    q = build_q_minus(spec)
    flipped, rem = q.reciprocal_flip(spec.span).divmod(T)
    # the zero-sum condition kills the t**span coefficient of q-, so t divides the flip
    assert rem.is_zero()
    return flipped + q.shift(spec.a[0] - 1)


def p_plus(a: int, n: int) -> RationalPolynomial:
    """``((1+t)**(n-a) - 1) / t``."""
    quotient, rem = (RationalPolynomial.one_plus_t_power(n - a) - RationalPolynomial.of(1)).divmod(T)
    assert rem.is_zero()
    return quotient


def p_minus(a: int, n: int) -> RationalPolynomial:
    return RationalPolynomial.one_plus_t_power(n - a).shift(a - 1)


def p_integrand(a: int, n: int) -> RationalPolynomial:
    """``a (p+ + p-)``, whose integral over ``[0, 1]`` is ``g(a)`` for ``j = 2``."""
    if not 1 <= a <= n:
        raise ValueError(f"need 1 <= a <= n, got a={a}, n={n}")
    return (p_plus(a, n) + p_minus(a, n)) * a


def g_by_integral(a: int, n: int) -> Fraction:
    return p_integrand(a, n).integrate(0, 1)


@dataclass(frozen=True)
class SignCertificate:
    kind: Kind
    root_bracket: RootBracket | None = None
    l: int | None = None
    shifted_integral: Fraction | None = None
    min_n: int | None = None


def certify_sign(r: RationalPolynomial, bracket_width: Fraction = Fraction(1, 64)) -> SignCertificate:
    """Classify the sign pattern of ``r`` on ``[0, 1]``.

    Every distinct root in ``(0, 1)`` is isolated by Sturm counting and ``r``
    is evaluated once strictly between consecutive roots, which fixes its
    sign on each piece.
    """
    if r.is_zero():
        raise ValueError("cannot certify the sign of the zero polynomial")
    brackets = isolate_roots(r, 0, 1)
    if brackets:
        samples = [brackets[0].lo / 2]
        samples += [(x.hi + y.lo) / 2 for x, y in zip(brackets, brackets[1:])]
        samples.append((brackets[-1].hi + 1) / 2)
    else:
        samples = [Fraction(1, 2)]
    signs = [r(s) > 0 for s in samples]
    if all(signs):
        return SignCertificate("nonneg")
    if not any(signs):
        return SignCertificate("nonpos")
    if len(brackets) == 1 and r(0) != 0 and r(1) != 0:
        root = refine(r, brackets[0], bracket_width)
        if signs == [False, True]:
            return SignCertificate("single_crossing_up", root)
        return SignCertificate("single_crossing_down", root)
    return SignCertificate("indefinite")


@dataclass(frozen=True)
class ComparisonVerdict:
    """``holds`` is True when ``sum alpha_i g(a_i) > 0`` and False when it is ``< 0``."""

    spec: ComparisonSpec
    n: int
    holds: bool
    certificate: SignCertificate
    r: RationalPolynomial
    direct_value: Fraction

    def to_dict(self) -> dict:
        return certificate_dict(self.spec, self.r, self.certificate)


def certificate_dict(spec: ComparisonSpec, r: RationalPolynomial, cert: SignCertificate) -> dict:
    return {
        "alpha": list(spec.alpha),
        "a": list(spec.a),
        "r_coeffs": r.to_strings(),
        "kind": cert.kind,
        "l": cert.l,
        "integral": None if cert.shifted_integral is None else format_rational(cert.shifted_integral),
        "min_n": cert.min_n,
    }


def certify_comparison(spec: ComparisonSpec, l_max: int = L_MAX) -> tuple[bool, SignCertificate, RationalPolynomial]:
    """Certificate for the sign of ``sum alpha_i g(a_i)``, independent of ``n``.

    Returns ``(positive, certificate, r)``; the conclusion holds for every
    ``n >= certificate.min_n``.
    """
    r = build_r(spec)
    cert = certify_sign(r)
    ak = spec.a[-1]
    if cert.kind in ("nonneg", "nonpos"):
        return cert.kind == "nonneg", replace(cert, min_n=ak), r
    if cert.kind == "indefinite":
        raise InconclusiveError(f"r(t) = {r} changes sign more than once on [0, 1]")
    up = cert.kind == "single_crossing_up"
    for l in range(l_max + 1):
        value = integrate_01_shifted(r, l)
        if (value > 0) if up else (value < 0):
            return up, replace(cert, l=l, shifted_integral=value, min_n=ak + l), r
    raise InconclusiveError(f"no shift l <= {l_max} gives an integral of the right sign for r(t) = {r}")


def verify_comparison(spec: ComparisonSpec, n: int, l_max: int = L_MAX) -> ComparisonVerdict:
    """Certified sign of ``sum alpha_i g(a_i)`` at ground-set size ``n``, cross-checked directly."""
    if n < spec.a[-1]:
        raise ValueError(f"n={n} below the largest item {spec.a[-1]}")
    positive, cert, r = certify_comparison(spec, l_max)
    assert cert.min_n is not None
    if n < cert.min_n:
        raise InconclusiveError(f"certificate covers n >= {cert.min_n}, not n={n}")
    direct = spec.direct_value(n)
    if (direct > 0) != positive or direct == 0:
        raise UnsoundCertificateError(f"certificate says {'>' if positive else '<'} 0 but direct value is {direct}")
    return ComparisonVerdict(spec, n, positive, cert, r, direct)


def second_difference_spec(a: int) -> ComparisonSpec:
    return ComparisonSpec((a - 1, a, a + 1), (1, -2, 1))


def verify_second_difference(a: int, n: int) -> tuple[int, ComparisonVerdict]:
    """Certified sign of ``g(a-1) - 2 g(a) + g(a+1)`` for ``j = 2``.

    For ``a >= 5`` the shortcut used by hand is checked as well: the part
    ``t**(a-2) (a - 2t - 1)`` of ``r`` is nonnegative and the remainder
    ``(a-1) t - 2`` has nonnegative integral.
    """
    if n < 6 or not 2 <= a <= n - 1:
        raise ValueError(f"need n >= 6 and 2 <= a <= n-1, got a={a}, n={n}")
    verdict = verify_comparison(second_difference_spec(a), n)
    if a >= 5:
        head = RationalPolynomial.of(a - 1, -2).shift(a - 2)
        tail = RationalPolynomial.of(-2, a - 1)
        if head + tail != verdict.r:
            raise UnsoundCertificateError(f"r(t) for a={a} does not split as expected")
        if certify_sign(head).kind != "nonneg" or tail.integrate(0, 1) < 0:
            raise UnsoundCertificateError(f"shortcut bound fails for a={a}")
    return (1 if verdict.holds else -1), verdict


def monotonicity_step(a: int, n: int) -> RationalPolynomial:
    """``(1+t)**(n-a-1) ((1 - a t) + t**a (t - a))``, the change of ``d_{a,n}`` from ``n`` to ``n+1``."""
    inner = RationalPolynomial.of(1, -a) + RationalPolynomial.of(-a, 1).shift(a)
    return RationalPolynomial.one_plus_t_power(n - a - 1) * inner


def verify_monotonicity(n: int) -> bool:
    """``g(2) > g(1)`` and ``g`` strictly decreasing on ``{2..n}`` for ``j = 2``, certified stepwise in ``n``.

    Checks the polynomial identities behind each step, the base value
    ``g(2,6) - g(1,6) = 29/60`` and finally the direct profile.
    """
    if n < 6:
        raise ValueError("monotonicity is only claimed for n >= 6")

    def d(a: int, size: int) -> RationalPolynomial:
        return p_integrand(a + 1, size) - p_integrand(a, size)

    if d(1, 6).integrate(0, 1) != Fraction(29, 60):
        return False
    one_minus_t_sq = RationalPolynomial.of(1, -2, 1)
    for size in range(6, n):
        step = d(1, size + 1) - d(1, size)
        if step != monotonicity_step(1, size) or step != RationalPolynomial.one_plus_t_power(size - 2) * one_minus_t_sq:
            return False
        if certify_sign(step).kind != "nonneg":
            return False
    for a in range(2, n):
        if d(a, a + 1).integrate(0, 1) >= 0:
            return False
        for size in range(a + 1, n):
            step = d(a, size + 1) - d(a, size)
            if step != monotonicity_step(a, size) or step.integrate(0, 1) >= 0:
                return False
    profile = g_profile(WeightSpec(2, n))
    return profile.g(2) > profile.g(1) and all(profile.g(a + 1) < profile.g(a) for a in range(2, n))


@dataclass(frozen=True)
class TableRow:
    label: str
    spec: ComparisonSpec
    r: RationalPolynomial
    certificate: SignCertificate

    def to_dict(self) -> dict:
        return {"label": self.label, **certificate_dict(self.spec, self.r, self.certificate)}


# (label, items, weights); each label reads "left side > right side"
INEQUALITY_SPECS: tuple[tuple[str, tuple[int, ...], tuple[int, ...]], ...] = (
    ("g(1,7) > g(4,4)", (1, 4, 7), (1, -2, 1)),
    ("g(1,8) > g(4,5)", (1, 4, 5, 8), (1, -1, -1, 1)),
    ("g(2,3) > g(1,4)", (1, 2, 3, 4), (-1, 1, 1, -1)),
    ("g(2,5) > g(3,4)", (2, 3, 4, 5), (1, -1, -1, 1)),
    ("g(3,3) > g(1,5)", (1, 3, 5), (-1, 2, -1)),
    ("g(3,4) > g(1,6)", (1, 3, 4, 6), (-1, 1, 1, -1)),
    ("g(1,6,6) > g(4,4,5)", (1, 4, 5, 6), (1, -2, -1, 2)),
    ("g(2,2,5) > g(3,3,3)", (2, 3, 5), (2, -3, 1)),
    ("g(4,4,4) > g(1,5,6)", (1, 4, 5, 6), (-1, 3, -1, -1)),
)

# Reference values for the rows above: r(t) coefficients from t^0 upward, then
# l, the shifted integral and a_k + l (None where r >= 0 makes them moot).
REFERENCE_TABLE: tuple[tuple[tuple[Fraction, ...], int | None, Fraction | None, int | None], ...] = (
    ((-17, -3, 27, 27, -3, -17), 4, Fraction(1639, 360), 11),
    ((-23, -11, 35, 62, 35, -11, -23), 0, Fraction(23, 42), 8),
    ((Fraction(1, 3), -2, 3), None, None, None),
    ((-4, 5, 5, -4), 3, Fraction(37, 70), 8),
    ((7, -4, -4, 7), None, None, None),
    ((11, -2, -14, -2, 11), None, None, None),
    ((-15, 7, 20, 7, -15), 7, Fraction(247, 660), 13),
    ((-6, 7, 7, -6), 5, Fraction(443, 168), 10),
    ((13, -3, -20, -3, 13), None, None, None),
)


def inequality_table(l_max: int = L_MAX) -> list[TableRow]:
    rows = []
    for label, a, alpha in INEQUALITY_SPECS:
        spec = ComparisonSpec(a, alpha)
        positive, cert, r = certify_comparison(spec, l_max)
        if not positive:
            raise UnsoundCertificateError(f"{label}: certificate has the wrong sign")
        rows.append(TableRow(label, spec, r, cert))
    return rows


def reference_mismatches(rows: Sequence[TableRow]) -> list[str]:
    """Differences between computed rows and :data:`REFERENCE_TABLE`, one message each."""
    problems = []
    for row, (coeffs, l, integral, min_n) in zip(rows, REFERENCE_TABLE):
        expected_r = RationalPolynomial(tuple(Fraction(c) for c in coeffs))
        if row.r != expected_r:
            problems.append(f"{row.label}: r(t) computed as {row.r}, reference {expected_r}")
        if l is None:
            if row.certificate.kind != "nonneg":
                problems.append(f"{row.label}: expected r >= 0, got {row.certificate.kind}")
            continue
        got = (row.certificate.l, row.certificate.shifted_integral, row.certificate.min_n)
        if got != (l, integral, min_n):
            problems.append(f"{row.label}: (l, integral, min_n) computed as {got}, reference {(l, integral, min_n)}")
    return problems


def extension_lemma_checks(n: int) -> list[tuple[str, bool]]:
    """Direct exact checks of the two-item exchange families used for ``j = 2``.

    ``g(1, 2k-1) > g(k, k)`` and ``g(1, 2k) > g(k, k+1)`` for ``k >= 4``
    (run when ``n >= 11``), and ``g(2) + g(a+1) > g(3) + g(a)`` for
    ``4 <= a <= n-3``.
    """
    if n < 8:
        raise ValueError("extension checks need n >= 8")
    g = g_profile(WeightSpec(2, n)).g
    checks = []
    if n >= 11:
        for k in range(4, n // 2 + 1):
            checks.append((f"g(1,{2 * k - 1}) > g({k},{k})", g(1) + g(2 * k - 1) > 2 * g(k)))
            if 2 * k < n:
                checks.append((f"g(1,{2 * k}) > g({k},{k + 1})", g(1) + g(2 * k) > g(k) + g(k + 1)))
    for a in range(4, n - 2):
        checks.append((f"g(2,{a + 1}) > g(3,{a})", g(2) + g(a + 1) > g(3) + g(a)))
    return checks


def verify_extension_lemmas(n: int) -> bool:
    return all(ok for _, ok in extension_lemma_checks(n))
