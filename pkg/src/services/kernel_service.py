"""
Kernel service: admissibility gate for depressed quartics, exact arithmetic
in the splitting algebra, Galois action and certified evaluation at the real
embedding x1 > x2 > x3 > x4.
"""

import logging
from fractions import Fraction
from math import ceil
from typing import List, Optional, Sequence, Union

from sympy import Poly, Rational, factorint, integer_nthroot, symbols
from sympy.polys.rings import PolyElement

from ..exceptions import DegenerateQuartic, NotFound, NotReal, PrecisionExhausted
from ..models.galois import GaloisElem
from ..models.interval import Interval, RootEnclosure
from ..models.splitting import ContextConstants, SplitElem, SplittingAlgebra
from ..schemas.quartic import GateReport, Quartic
from ..utils.helpers import to_fraction

logger = logging.getLogger(__name__)

_x, _y = symbols("x y")


class KernelService:
    """Quartic gate, field arithmetic and root isolation"""

    # ------------------------------------------------------------------
    # Gate
    # ------------------------------------------------------------------

    @staticmethod
    def monic_discriminant(p: Quartic) -> Fraction:
        """
        Discriminant of x^4 + P x^2 + Q x + R with P, Q, R = b/a, c/a, d/a.

        Equals disc(P)/a^6 and the square of the Vandermonde product of the roots.
        """
        P, Q, R = p.b / p.a, p.c / p.a, p.d / p.a
        return (
            16 * P**4 * R
            - 4 * P**3 * Q**2
            - 128 * P**2 * R**2
            + 144 * P * Q**2 * R
            - 27 * Q**4
            + 256 * R**3
        )

    @staticmethod
    def resolvent_cubic(p: Quartic) -> List[Fraction]:
        """
        Coefficients (leading first) of y^3 - P y^2 - 4R y + (4PR - Q^2).

        Its roots are x1x2+x3x4, x1x3+x2x4, x1x4+x2x3.
        """
        P, Q, R = p.b / p.a, p.c / p.a, p.d / p.a
        return [Fraction(1), -P, -4 * R, 4 * P * R - Q**2]

    @staticmethod
    def minimal_rescale(delta: Fraction) -> int:
        """Smallest natural N with N^12 * delta integral"""
        n = 1
        for prime, exp in factorint(delta.denominator).items():
            n *= prime ** ceil(exp / 12)
        return n

    @staticmethod
    def count_real_roots(coeffs: Sequence[Fraction]) -> int:
        """Number of distinct real roots (Sturm count over the whole line)"""
        return int(_sympy_poly(coeffs, _x).count_roots())

    @staticmethod
    def gate_quartic(p: Quartic) -> GateReport:
        """
        Check the admissibility conditions on P = a x^4 + b x^2 + c x + d.

        Args:
            p: The quartic to test

        Returns:
            GateReport with the four booleans and the discriminant data

        Raises:
            DegenerateQuartic: a = 0 or the discriminant vanishes
        """
        if p.a == 0:
            raise DegenerateQuartic("Leading coefficient a must be nonzero")
        delta = KernelService.monic_discriminant(p)
        if delta == 0:
            raise DegenerateQuartic(f"Quartic {p.label()} has a repeated root")

        coeffs = [p.a, Fraction(0), p.b, p.c, p.d]
        irreducible = _sympy_poly(coeffs, _x).is_irreducible
        real_roots = KernelService.count_real_roots(coeffs)
        cubic = KernelService.resolvent_cubic(p)
        cubic_irreducible = _sympy_poly(cubic, _y).is_irreducible
        square = _is_rational_square(delta)
        integral = delta.denominator == 1

        report = GateReport(
            quartic=p,
            irreducible=irreducible,
            four_real_roots=real_roots == 4,
            real_root_count=real_roots,
            galois_S4=irreducible and cubic_irreducible and not square,
            delta_integral=integral,
            discriminant=delta * p.a**6,
            delta=delta,
            resolvent_cubic=cubic,
            resolvent_irreducible=cubic_irreducible,
            delta_is_square=square,
            rescale_factor=None if integral else KernelService.minimal_rescale(delta),
        )
        logger.debug(f"Gate for {p.label()}: passed={report.passed}")
        return report

    @staticmethod
    def rescale_quartic(p: Quartic, n: int) -> Quartic:
        """Quartic whose roots are n times those of p"""
        if n < 1:
            raise ValueError(f"Rescale factor must be a natural number, got {n}")
        return Quartic(a=p.a, b=p.b * n**2, c=p.c * n**3, d=p.d * n**4)

    @staticmethod
    def search_quartic(coeff_bound: int) -> Quartic:
        """
        First admissible quartic in lexicographic order of (a, b, c, d).

        a runs over 1..bound, b, c, d over -bound..bound; a quartic whose
        discriminant is not integral is returned rescaled.

        Raises:
            NotFound: nothing admissible within the bound
        """
        logger.info(f"Searching admissible quartics with coefficients bounded by {coeff_bound}")
        span = range(-coeff_bound, coeff_bound + 1)
        for a in range(1, coeff_bound + 1):
            for b in span:
                for c in span:
                    for d in span:
                        candidate = Quartic(a=a, b=b, c=c, d=d)
                        try:
                            report = KernelService.gate_quartic(candidate)
                        except DegenerateQuartic:
                            continue
                        if not report.passed:
                            continue
                        if report.rescale_factor:
                            candidate = KernelService.rescale_quartic(
                                candidate, report.rescale_factor
                            )
                        logger.info(f"Found admissible quartic {candidate.label()}")
                        return candidate
        raise NotFound(f"No admissible quartic with coefficients bounded by {coeff_bound}")

    # ------------------------------------------------------------------
    # Field arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def build_algebra(p: Quartic) -> SplittingAlgebra:
        algebra = SplittingAlgebra(p.a, p.b, p.c, p.d)
        logger.info(f"Built splitting algebra for {p.label()}")
        return algebra

    @staticmethod
    def reduce(algebra: SplittingAlgebra, raw: Union[PolyElement, object]) -> SplitElem:
        """
        Normal form of a polynomial in x1..x4 and i.

        ``raw`` is an element of ``algebra.ring`` or a sympy expression in the
        symbols x1, x2, x3, x4, i.
        """
        if not isinstance(raw, PolyElement):
            raw = algebra.ring.from_expr(raw)
        return algebra.elem(raw)

    @staticmethod
    def field_mul(u: SplitElem, v: SplitElem) -> SplitElem:
        return u * v

    @staticmethod
    def field_inv(u: SplitElem) -> SplitElem:
        return u.inverse()

    @staticmethod
    def galois_apply(g: GaloisElem, u: SplitElem) -> SplitElem:
        return u.apply(g)

    @staticmethod
    def is_rational(u: SplitElem) -> Optional[Fraction]:
        return u.rational_value()

    @staticmethod
    def constants(algebra: SplittingAlgebra) -> ContextConstants:
        """Vandermonde product, discriminant, pair sums and root derivatives"""
        x = {j: algebra.root(j) for j in range(1, 5)}
        vandermonde = algebra.one()
        for j in range(1, 5):
            for k in range(j + 1, 5):
                vandermonde = vandermonde * (x[j] - x[k])
        i_vandermonde = algebra.imaginary_unit() * vandermonde
        discriminant = (vandermonde * vandermonde).rational_value()
        if discriminant is None:
            raise ValueError("Square of the Vandermonde product is not rational")

        pair_sums = {
            2: x[1] * x[2] + x[3] * x[4],
            3: x[1] * x[3] + x[2] * x[4],
            4: x[1] * x[4] + x[2] * x[3],
        }
        mu1 = (x[1] - x[2]) * (x[1] - x[3]) * (x[1] - x[4])
        derivatives = {1: mu1}
        for j in range(2, 5):
            derivatives[j] = mu1.apply(GaloisElem.transposition(1, j))

        return ContextConstants(
            vandermonde=vandermonde,
            i_vandermonde=i_vandermonde,
            discriminant=discriminant,
            pair_sums=pair_sums,
            root_derivatives=derivatives,
            isogeny_a=1 + i_vandermonde,
            isogeny_b=i_vandermonde,
        )

    # ------------------------------------------------------------------
    # Real embedding
    # ------------------------------------------------------------------

    @staticmethod
    def isolate_roots(p: Quartic, bits: int) -> RootEnclosure:
        """
        Sturm-certified enclosures of the four real roots, widths <= 2^-bits.

        Intervals come out ordered x1 > x2 > x3 > x4.
        """
        poly = _sympy_poly([p.a, Fraction(0), p.b, p.c, p.d], _x)
        isolated = [
            Interval(to_fraction(lo), to_fraction(hi))
            for (lo, hi), _ in poly.intervals(eps=Rational(1, 2**bits))
        ]
        if len(isolated) != 4:
            raise NotReal(f"Quartic {p.label()} has {len(isolated)} real roots, expected 4")

        isolated.sort(key=lambda iv: iv.lower, reverse=True)
        return RootEnclosure(
            coefficients=(p.a, p.b, p.c, p.d), intervals=tuple(isolated), bits=bits
        )

    @staticmethod
    def refine_roots(enc: RootEnclosure, bits: int) -> RootEnclosure:
        """Shrink every root interval to width <= 2^-bits"""
        if bits <= enc.bits:
            return enc
        a, b, c, d = enc.coefficients
        poly = _sympy_poly([a, Fraction(0), b, c, d], _x)
        eps = Rational(1, 2**bits)
        refined = []
        for iv in enc.intervals:
            if iv.spread == 0:
                refined.append(iv)
                continue
            s, t = poly.refine_root(_rational(iv.lower), _rational(iv.upper), eps=eps)
            s, t = sorted((to_fraction(s), to_fraction(t)))
            refined.append(Interval(s, t))
        logger.debug(f"Refined root enclosures to {bits} bits")
        return RootEnclosure(coefficients=enc.coefficients, intervals=tuple(refined), bits=bits)

    @staticmethod
    def evaluate(u: SplitElem, enc: RootEnclosure) -> Interval:
        """Interval enclosure of a real element at the identity embedding"""
        if not u.is_real:
            raise NotReal(f"{u} is not fixed by complex conjugation")
        powers = {
            j: [enc.root(j) ** e for e in range(4)] for j in (1, 2, 3)
        }
        total = Interval(0)
        for monom, coeff in u.poly.items():
            _, e3, e2, e1, _ = monom
            term = powers[1][e1] * powers[2][e2] * powers[3][e3]
            total = total + term * to_fraction(coeff)
        return total

    @staticmethod
    def sign_at_identity(u: SplitElem, enc: RootEnclosure, cap_bits: int = 4096) -> int:
        """
        Certified sign of a real element at the identity embedding.

        Raises:
            NotReal: u is not fixed by complex conjugation
        """
        if not u.is_real:
            raise NotReal(f"{u} is not fixed by complex conjugation")
        if u.is_zero:
            return 0
        bits = max(enc.bits, 16)
        while True:
            value = KernelService.evaluate(u, enc)
            sign = value.sign()
            if sign:
                return sign
            if bits >= cap_bits:
                raise PrecisionExhausted(f"Sign of {u} undecided at {bits} bits")
            bits *= 2
            enc = KernelService.refine_roots(enc, bits)

    @staticmethod
    def interval_magnitude(u: SplitElem, enc: RootEnclosure) -> Fraction:
        """Upper bound on max(|Re u|, |Im u|) at the identity embedding"""
        real = KernelService.evaluate(u.real_part(), enc)
        imag = KernelService.evaluate(u.imag_part(), enc)
        return max(real.bound, imag.bound)


def _sympy_poly(coeffs: Sequence[Fraction], var) -> Poly:
    return Poly([_rational(c) for c in coeffs], var, domain="QQ")


def _rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _is_rational_square(value: Fraction) -> bool:
    if value < 0:
        return False
    _, num_exact = integer_nthroot(value.numerator, 2)
    _, den_exact = integer_nthroot(value.denominator, 2)
    return num_exact and den_exact
