"""
Claims service: the catalogue of verifiers C01..C28 and the runner.

Each verifier receives a VerificationContext and records named checks and
witness values on an Evidence object. A verifier never lets a
VerificationError escape: run_claim turns it into a failed report.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ..config import settings
from ..exceptions import ContextMissing, SingularTransform, UnknownClaim, VerificationError
from ..models.cube import CubeModel, Orbit, Vertex
from ..models.form import Form, LinMap, StandardForms
from ..models.interval import RootEnclosure
from ..models.param_poly import AlphaMatrix, ParamPoly
from ..models.splitting import ContextConstants, SplitElem, SplittingAlgebra
from ..schemas.quartic import GateReport, Quartic
from ..schemas.report import ClaimReport, ClaimStatus
from ..utils.helpers import jsonable, monomial_name
from .cube_service import CubeService, expected_sign
from .forms_service import (
    TETRAHEDRAL_P,
    TETRAHEDRAL_Q,
    FormsService,
)
from .kernel_service import KernelService
from .paramalg_service import ParamAlgService, solve_cond1_for_a34

logger = logging.getLogger(__name__)


# ============================================================================
# CONTEXT
# ============================================================================


class VerificationContext:
    """
    Everything the claims share for one quartic. Expensive pieces are built
    on first use and kept.
    """

    def __init__(
        self,
        quartic: Quartic,
        gate: GateReport,
        precision_bits: int = settings.precision_bits,
        samples: int = settings.samples,
        seed: int = settings.seed,
        charge_c: int = settings.charge_c,
        bogomolov_k: int = settings.bogomolov_k,
        c_max: int = settings.c_max,
        k1_max: int = settings.k1_max,
        omega4: Fraction = Fraction(settings.omega4),
    ):
        self.quartic = quartic
        self.gate = gate
        self.precision_bits = precision_bits
        self.samples = samples
        self.seed = seed
        self.charge_c = charge_c
        self.bogomolov_k = bogomolov_k
        self.c_max = c_max
        self.k1_max = k1_max
        self.omega4 = omega4

    @cached_property
    def algebra(self) -> SplittingAlgebra:
        return KernelService.build_algebra(self.quartic)

    @cached_property
    def constants(self) -> ContextConstants:
        return KernelService.constants(self.algebra)

    @cached_property
    def enclosure(self) -> RootEnclosure:
        return KernelService.isolate_roots(self.quartic, self.precision_bits)

    @cached_property
    def model(self) -> CubeModel:
        return CubeService.build_cube_model(self.algebra, self.constants)

    @cached_property
    def forms(self) -> StandardForms:
        return FormsService.standard_context(
            self.algebra, self.constants, self.model, self.charge_c
        )

    @cached_property
    def orbits(self) -> Dict[int, List[Orbit]]:
        return {r: CubeService.set_orbits(self.model, r) for r in range(1, 5)}

    @cached_property
    def conditions(self) -> Tuple[ParamPoly, ParamPoly]:
        return ParamAlgService.condition_polys(self.algebra, self.constants)

    @cached_property
    def alpha_star(self) -> AlphaMatrix:
        return ParamAlgService.alpha_star(self.algebra, self.constants)

    @property
    def delta(self) -> Fraction:
        return self.constants.discriminant

    def root(self, j: int) -> SplitElem:
        return self.algebra.root(j)

    def diff(self, j: int, k: int) -> SplitElem:
        return self.algebra.root(j) - self.algebra.root(k)


def build_context(
    quartic: Optional[Quartic] = None, search: Optional[int] = None, **options
) -> VerificationContext:
    """
    Resolve the quartic (given or searched) and run the gate.

    Raises:
        NotFound: the search found nothing
        DegenerateQuartic: the given quartic is degenerate
    """
    if quartic is None:
        quartic = KernelService.search_quartic(search or settings.search_bound)
    gate = KernelService.gate_quartic(quartic)
    if not gate.passed:
        logger.warning(f"Quartic {quartic.label()} rejected by the gate")
    return VerificationContext(quartic, gate, **options)


# ============================================================================
# EVIDENCE
# ============================================================================


def _shown(value: Any) -> Any:
    """Witness form of a compared value"""
    if isinstance(value, LinMap):
        return {str(s): {str(t): c.to_json() for t, c in row.items()} for s, row in value.rows.items()}
    return value


class Evidence:
    """Named checks plus witness values for one claim"""

    def __init__(self):
        self.checks: Dict[str, bool] = {}
        self.values: Dict[str, Any] = {}
        self.numeric = False

    def check(self, name: str, ok: bool, **detail) -> bool:
        self.checks[name] = bool(ok)
        if not ok and detail:
            self.values[f"{name}.discrepancy"] = detail
        return bool(ok)

    def equal(self, name: str, lhs, rhs) -> bool:
        ok = lhs == rhs
        if not ok:
            self.values[f"{name}.discrepancy"] = {"lhs": _shown(lhs), "rhs": _shown(rhs)}
        self.checks[name] = bool(ok)
        return bool(ok)

    def record(self, name: str, value) -> None:
        self.values[name] = value

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def witness(self) -> Dict[str, Any]:
        return {"checks": dict(self.checks), **jsonable(self.values)}


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    title: str
    anchor: str
    verifier: Callable[[VerificationContext, Evidence], None] = field(compare=False)
    needs_context: bool = True


CLAIMS: Dict[str, ClaimSpec] = {}


def claim(claim_id: str, title: str, anchor: str, needs_context: bool = True):
    """Register a verifier under ``claim_id``"""

    def register(fn):
        CLAIMS[claim_id] = ClaimSpec(claim_id, title, anchor, fn, needs_context)
        return fn

    return register


# ============================================================================
# HELPERS
# ============================================================================


def _rational_rows(forms: Sequence[Form], keys: Sequence[Tuple[int, ...]]) -> List[List]:
    """Each form as a Q-vector: 48 rational coordinates per monomial key"""
    rows = []
    for form in forms:
        row = []
        for key in keys:
            value = form.terms.get(key)
            coefficients = value.coefficients() if value is not None else [Fraction(0)] * 48
            row.extend(QQ(c.numerator, c.denominator) for c in coefficients)
        rows.append(row)
    return rows


def _rank(forms: Sequence[Form], keys: Sequence[Tuple[int, ...]]) -> int:
    if not forms:
        return 0
    rows = _rational_rows(forms, keys)
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ).rank()


def _degree4_keys() -> List[Tuple[int, ...]]:
    return list(combinations(range(8), 4))


def _pullback_scalar(m: LinMap, f: Form):
    """The eigenvalue of m on a monomial form f, or None when f is not an eigenvector"""
    image = m.pullback(f)
    (key, value), = f.items()
    if set(image.terms) != {key}:
        return None
    return image.terms[key] * value.inverse()


def _coefficient(form: Form, seq: Tuple[int, ...], algebra: SplittingAlgebra) -> SplitElem:
    value = form.coefficient(seq)
    return algebra.zero() if value is None else value


def _ch_pair(a: Form, multiplicity) -> List:
    """Terms of multiplicity * (L + L^-1) for the line bundle with class a"""
    return [(multiplicity, a), (multiplicity, -a)]


def _a2_with_charge(ctx: VerificationContext, c: int) -> Form:
    base = ctx.forms.A2 * Fraction(1, ctx.forms.charge_c)
    return base * c


def genus_bookkeeping(delta: Fraction, c: int, k1: int, omega4: Fraction) -> Dict[str, Any]:
    """
    Curve bookkeeping for a complete intersection C of three sections of
    L_{k1 omega}: the solved k, the degree d, twice the genus and the
    Riemann-Roch residual (k k1^3 - 3/2 k1^4) <omega^4> - c^2 Delta.
    """
    k = Fraction(c * c) * delta / (k1**3 * omega4) + Fraction(3 * k1, 2)
    literal_k = (Fraction(c * c) * delta / k1**3 + Fraction(3 * k1, 2)) / omega4
    d = k * k1**3 * omega4
    two_genus = 3 * k1**4 * omega4 + 2
    residual = (k * k1**3 - Fraction(3, 2) * k1**4) * omega4 - c * c * delta
    return {
        "c": c,
        "k1": k1,
        "k": k,
        "k_integral": k.denominator == 1,
        "literal_k": literal_k,
        "literal_k_integral": literal_k.denominator == 1,
        "degree": d,
        "two_genus": two_genus,
        "degree_exceeds_two_genus": d > two_genus,
        "riemann_roch_residual": residual,
    }


# ============================================================================
# KERNEL AND CUBE CLAIMS
# ============================================================================


@claim("C01", "Admissibility gate", "P irreducible, totally real, Galois group S4", False)
def _c01(ctx: VerificationContext, ev: Evidence):
    gate = ctx.gate
    ev.check("irreducible", gate.irreducible)
    ev.check("four_real_roots", gate.four_real_roots, real_roots=gate.real_root_count)
    ev.check("galois_S4", gate.galois_S4)
    ev.record("gate", gate.model_dump(mode="json"))


@claim("C02", "Conjugates of iD", "phi_j(iD) = -(-1)^j iD, phi_jb(iD) = (-1)^j iD")
def _c02(ctx: VerificationContext, ev: Evidence):
    i_d = ctx.constants.i_vandermonde
    ev.check("stabilizer_fixes_iD", all(i_d.apply(h) == i_d for h in ctx.model.stabilizer))
    signs = {}
    for v in range(8):
        image = CubeService.embedding_of(ctx.model, i_d, v)
        expected = expected_sign(v)
        signs[str(Vertex.from_index(v))] = expected
        ev.equal(f"vertex_{Vertex.from_index(v)}", image, i_d * expected)
    ev.record("signs", signs)
    ev.record("cube", ctx.model.to_json())


@claim("C03", "Orbit dimension lemma", "dim H_R = |R|/r! for every orbit, r = 1..4")
def _c03(ctx: VerificationContext, ev: Evidence):
    table = []
    for r, orbits in ctx.orbits.items():
        for orbit in orbits:
            basis = CubeService.equivariant_basis(ctx.model, ctx.algebra, orbit)
            ev.equal(f"r{r}_{monomial_name(orbit.base)}", len(basis), orbit.dimension)
            ev.check(
                f"r{r}_{monomial_name(orbit.base)}_rational",
                all(CubeService.is_rational_form(ctx.model, f) for f in basis),
            )
            table.append({**orbit.to_json(), "dimension": len(basis)})
    ev.record("orbits", table)


@claim("C04", "Neron-Severi rank", "rational (1,1) classes span a space of rank 4")
def _c04(ctx: VerificationContext, ev: Evidence):
    balanced = CubeService.balanced_orbits(ctx.model, 2)
    dims = {
        monomial_name(o.base): len(CubeService.equivariant_basis(ctx.model, ctx.algebra, o))
        for o in balanced
    }
    ev.record("balanced_orbits", dims)
    ev.equal("rank", sum(dims.values()), 4)


@claim("C05", "Exceptional Hodge classes", "dim M = 2, M and M' not products of (1,1) classes")
def _c05(ctx: VerificationContext, ev: Evidence):
    model, algebra, forms = ctx.model, ctx.algebra, ctx.forms
    orbit = CubeService.orbit_of(model, TETRAHEDRAL_P)
    m_basis = CubeService.equivariant_basis(model, algebra, orbit)
    ev.equal("dim_M", len(m_basis), 2)
    ev.check("M_rational", CubeService.is_rational_form(model, forms.M))
    ev.check("M_prime_rational", CubeService.is_rational_form(model, forms.M_prime))
    ev.check("M_pure_22", forms.M.is_pure(2, 2) and forms.M_prime.is_pure(2, 2))

    keys = _degree4_keys()
    ev.equal("M_in_orbit_span", _rank(m_basis + [forms.M, forms.M_prime], keys), 2)

    divisors = []
    for o in CubeService.balanced_orbits(model, 2):
        divisors.extend(CubeService.equivariant_basis(model, algebra, o))
    products = [f.wedge(g) for f, g in combinations(divisors, 2)]
    products += [f.wedge(f) for f in divisors]
    products = [p for p in products if not p.is_zero]
    base_rank = _rank(products, keys)
    ev.record("product_rank", base_rank)
    ev.equal("M_outside_products", _rank(products + [forms.M, forms.M_prime], keys), base_rank + 2)

    rational_22 = []
    for o in CubeService.balanced_orbits(model, 4):
        rational_22.extend(CubeService.equivariant_basis(model, algebra, o))
    total = _rank(rational_22, keys)
    ev.record("rational_22_dimension", total)
    ev.record("products_and_M_exhaust_rational_22", total == base_rank + 2)


# ============================================================================
# FORMS CLAIMS
# ============================================================================


def _isogeny_matrix_on_M(delta: Fraction) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Columns: pi_a^* M = m11 M + m12 M', pi_a^* M' = m21 M + m22 M'"""
    a = (1 - delta) ** 2 - 4 * delta
    b = 4 * (1 - delta)
    return a, b * delta, -b, a


@claim("C06", "Isogeny on M, M'", "pi_a^*M = ((1-D)^2-4D)M + 4(1-D)D M'")
def _c06(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    m11, m12, m21, m22 = _isogeny_matrix_on_M(ctx.delta)
    pi_a = FormsService.isogeny_map(ctx.model, ctx.constants.isogeny_a)
    ev.equal("pi_a_M", pi_a.pullback(forms.M), forms.M * m11 + forms.M_prime * m12)
    ev.equal("pi_a_M_prime", pi_a.pullback(forms.M_prime), forms.M * m21 + forms.M_prime * m22)
    ev.record("matrix", [[m11, m12], [m21, m22]])


@claim("C07", "Isogeny mixes M and M'", "the matrix of pi_a^* on span(M, M') is invertible")
def _c07(ctx: VerificationContext, ev: Evidence):
    m11, m12, m21, m22 = _isogeny_matrix_on_M(ctx.delta)
    det = m11 * m22 - m12 * m21
    ev.record("determinant", det)
    ev.check("invertible", det != 0)
    ev.check("mixes", m12 != 0 and m21 != 0)


@claim("C08", "Kaehler form", "omega rational, positive, and omega^4/4! = theta ^ theta_bar")
def _c08(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    ev.check("rational", CubeService.is_rational_form(ctx.model, forms.omega))
    ev.check("pure_11", forms.omega.is_pure(1, 1))
    top = forms.omega.power(4, ctx.algebra.one()) * Fraction(1, 24)
    ev.equal("volume", top, forms.theta.wedge(forms.theta_bar))
    ev.equal("pair_top", FormsService.pair_top(top, ctx.constants), ctx.algebra.one())
    ev.numeric = True
    signs = {}
    for j, g in forms.metric.items():
        ev.check(f"g{j}_real", g.is_real)
        signs[j] = KernelService.sign_at_identity(g, ctx.enclosure, settings.refinement_cap_bits)
        ev.check(f"g{j}_positive", signs[j] > 0)
    ev.record("metric_signs", signs)


@claim("C09", "T_a", "with a13 = h3, T_a = -D")
def _c09(ctx: VerificationContext, ev: Evidence):
    square = ctx.forms.A1.wedge(ctx.forms.A1)
    t_a = _coefficient(square, (0, 2, 5, 7), ctx.algebra) * Fraction(1, 2)
    ev.record("T_a", t_a)
    ev.equal("T_a_plus_D", t_a + ctx.constants.vandermonde, ctx.algebra.zero())


def _a1_for_seed(ctx: VerificationContext, seed: SplitElem) -> Tuple[Form, Form]:
    orbit = CubeService.orbit_of(ctx.model, (0, 2))
    i_d = ctx.constants.i_vandermonde
    return (
        CubeService.expand_seed(ctx.model, orbit, seed),
        CubeService.expand_seed(ctx.model, orbit, i_d * seed),
    )


def _ch_virtual(ctx: VerificationContext, a1: Form, a2: Form, c: int, max_degree: int) -> Form:
    n = Fraction(c * c) * ctx.delta
    terms = _ch_pair(a1, n) + _ch_pair(a2 * c, Fraction(-1))
    return FormsService.ch_combination(ctx.algebra, terms, max_degree)


@claim("C10", "Chern character of V1 - V2", "ch = 4c^2 Delta (T_a dz1dz3dzb2dzb4 + ..) mod 0-, 8-forms")
def _c10(ctx: VerificationContext, ev: Evidence):
    x = {j: ctx.root(j) for j in range(1, 5)}
    seeds = {"a13=1": x[1] - x[3], "a13=h3": ctx.constants.h(3) * (x[1] - x[3])}
    support = {(0, 2, 5, 7), (1, 3, 4, 6)}
    for label, seed in seeds.items():
        a1, a2 = _a1_for_seed(ctx, seed)
        t_a = _coefficient(a1.wedge(a1), (0, 2, 5, 7), ctx.algebra) * Fraction(1, 2)
        ch = _ch_virtual(ctx, a1, a2, ctx.charge_c, max_degree=4)
        part = ch.degree_part(4)
        ev.check(f"{label}_degree2_vanishes", ch.degree_part(2).is_zero)
        ev.check(f"{label}_support", set(part.terms) <= support)
        expected = t_a * (4 * ctx.charge_c**2 * ctx.delta)
        ev.equal(f"{label}_coefficient", _coefficient(part, (0, 2, 5, 7), ctx.algebra), expected)
        ev.record(f"{label}_T_a", t_a)


@claim("C11", "Key theorem", "ch(V1^{c^2 Delta} - V2) = 4c^2 Delta M mod 0-, 8-forms")
def _c11(ctx: VerificationContext, ev: Evidence):
    a1 = ctx.forms.A1
    a2 = _a2_with_charge(ctx, 1)
    for c in sorted({1, 2, ctx.charge_c}):
        ch = _ch_virtual(ctx, a1, a2, c, max_degree=4)
        ev.check(f"c{c}_degree2_vanishes", ch.degree_part(2).is_zero)
        ev.equal(f"c{c}_degree4", ch.degree_part(4), ctx.forms.M * (4 * c * c * ctx.delta))


@claim("C12", "A1^2 ^ omega", "A1^2 ^ omega is a rational (3,3) form, leading coefficient -2iD/mu4")
def _c12(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    product = forms.A1.wedge(forms.A1).wedge(forms.omega)
    ev.check("pure_33", product.is_pure(3, 3))
    ev.check("rational", CubeService.is_rational_form(ctx.model, product))
    coefficient = _coefficient(product, (0, 4, 1, 5, 2, 6), ctx.algebra)
    i = ctx.algebra.imaginary_unit()
    mu4_inv = ctx.constants.mu(4).inverse()
    expected = i * ctx.constants.vandermonde * mu4_inv * (-2)
    literal = i * mu4_inv * (-2 * ctx.delta)
    ev.equal("leading_coefficient", coefficient, expected)
    ev.record("matches_literal_display", coefficient == literal)


@claim("C13", "A_i ^ omega^3", "A1 ^ omega^3 = 0 and A2 ^ omega^3 = 0")
def _c13(ctx: VerificationContext, ev: Evidence):
    cube = ctx.forms.omega.power(3, ctx.algebra.one())
    ev.check("A1", ctx.forms.A1.wedge(cube).is_zero)
    ev.check("A2", ctx.forms.A2.wedge(cube).is_zero)


@claim("C14", "Bundle E and Bogomolov", "ch(E) = 2c^2Dk omega + 4c^2 D M + k^2c^2D omega^2, Bogomolov holds")
def _c14(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    c, k = ctx.charge_c, ctx.bogomolov_k
    n = Fraction(c * c) * ctx.delta
    kw = forms.omega * k
    terms = [(n, forms.A1 + kw), (n, kw - forms.A1), (Fraction(-1), forms.A2), (Fraction(-1), -forms.A2)]
    ch = FormsService.ch_combination(ctx.algebra, terms, max_degree=6)
    omega2 = forms.omega.wedge(forms.omega)

    ev.equal("degree2", ch.degree_part(2), forms.omega * (2 * n * k))
    ev.equal("degree4", ch.degree_part(4), forms.M * (4 * n) + omega2 * (k * k * n))
    ev.check("degree6_pure_33", ch.degree_part(6).is_pure(3, 3))

    rank = 2 * n - 2
    c1, c2 = FormsService.chern_parts(ch, rank)
    w = FormsService.pair_top(omega2.wedge(omega2), ctx.constants).rational_value()
    c2w = FormsService.pair_top(c2.wedge(omega2), ctx.constants).rational_value()
    c1w = FormsService.pair_top(c1.wedge(c1).wedge(omega2), ctx.constants).rational_value()
    coefficient = (rank - 1) / (2 * rank)
    margin = c2w - coefficient * c1w
    displayed = (2 * ctx.delta - 3) / (4 * (ctx.delta - 1))

    ev.equal("omega4", w, Fraction(24))
    ev.equal("margin", margin, k * k * w * n / (n - 1))
    ev.check("bogomolov", margin > 0)
    ev.record("rank", rank)
    ev.record("c2_omega2_over_omega4", c2w / w)
    ev.record("c1sq_omega2_over_omega4", c1w / w)
    ev.record("coefficient", coefficient)
    ev.record("displayed_coefficient", displayed)
    ev.record("displayed_coefficient_matches", displayed == coefficient)


@claim("C15", "Star operator", "star^2 = 1 on (0,2)-forms, a ^ star a = |a|^2 theta_bar")
def _c15(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    one = ctx.algebra.one()
    i = ctx.algebra.imaginary_unit()
    for key, weight in forms.star_weights.items():
        name = monomial_name(key)
        f = Form({key: one})
        star = FormsService.star_02(f, forms)
        ev.equal(f"{name}_involution", FormsService.star_02(star, forms), f)
        a, b = key[0] - 3, key[1] - 3
        norm = (forms.metric[a] * forms.metric[b]).inverse()
        ev.equal(f"{name}_norm", f.wedge(star), forms.theta_bar * norm)
        ev.equal(f"{name}_antilinear", FormsService.star_02(f * i, forms), star * (-i))


def _table_rows(u: SplitElem, delta: Fraction) -> List[Tuple[Tuple[int, ...], SplitElem, SplitElem]]:
    plus, minus = 1 + u, 1 - u
    d2 = u.algebra.const(delta * delta)
    flat = u.algebra.const((1 + delta) ** 2)
    twisted = minus * minus * (1 + delta)
    return [
        ((0, 1, 2, 3), flat, d2),
        ((0, 4, 1, 2), flat, d2),
        ((0, 4, 1, 3), twisted, -d2),
        ((4, 1, 2, 3), twisted, -d2),
        ((0, 4, 1, 5), flat, d2),
        ((0, 4, 1, 6), twisted, -d2),
        ((0, 1, 6, 7), flat, d2),
        (TETRAHEDRAL_P, plus**4, d2),
        (TETRAHEDRAL_Q, minus**4, d2),
    ]


@claim("C16", "Isogeny eigenvalue table", "eigenvalues of pi_a^*, pi_b^* on four-forms")
def _c16(ctx: VerificationContext, ev: Evidence):
    model, constants = ctx.model, ctx.constants
    u = constants.i_vandermonde
    pi_a = FormsService.isogeny_map(model, constants.isogeny_a)
    pi_b = FormsService.isogeny_map(model, constants.isogeny_b)
    one = ctx.algebra.one()
    d2 = ctx.delta**2

    failures = []
    for key in _degree4_keys():
        t2 = sum(model.tetrahedron(v) for v in key)
        f = Form({key: one})
        expected_a = (1 + u) ** (4 - t2) * (1 - u) ** t2
        expected_b = d2 * (-1) ** t2
        if pi_a.pullback(f) != f * expected_a or pi_b.pullback(f) != f * expected_b:
            failures.append(monomial_name(key))
    ev.check("all_monomials", not failures, monomials=failures)

    for seq, value_a, value_b in _table_rows(u, ctx.delta):
        f = Form.monomial(seq, one)
        name = monomial_name(seq)
        ev.equal(f"{name}_pi_a", _pullback_scalar(pi_a, f), value_a)
        ev.equal(f"{name}_pi_b", _pullback_scalar(pi_b, f), value_b)
        g = f.conjugate()
        ev.equal(f"{name}_conjugate_pi_a", _pullback_scalar(pi_a, g), value_a.conjugate())
        ev.equal(f"{name}_conjugate_pi_b", _pullback_scalar(pi_b, g), value_b.conjugate())


def _phi_matrix(delta: Fraction, conjugate: bool) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Phi M = m11 M + m12 M', Phi M' = m21 M + m22 M'"""
    s = -1 if conjugate else 1
    scale = -8 * delta**2
    return (
        scale * 2 * delta,
        scale * (-s) * (1 - delta) * delta,
        scale * s * (1 - delta),
        scale * 2 * delta,
    )


@claim("C17", "The operators Phi_a, Phi_abar", "Phi_a = (pi_a^* - (1+D)^2)(pi_b^* + D^2) on M, M'")
def _c17(ctx: VerificationContext, ev: Evidence):
    forms, model, constants = ctx.forms, ctx.model, ctx.constants
    M, Mp = forms.M, forms.M_prime
    for conjugate in (False, True):
        label = "abar" if conjugate else "a"
        m11, m12, m21, m22 = _phi_matrix(ctx.delta, conjugate)
        phi_m = FormsService.phi_operator(model, constants, M, conjugate)
        phi_mp = FormsService.phi_operator(model, constants, Mp, conjugate)
        ev.equal(f"{label}_M", phi_m, M * m11 + Mp * m12)
        ev.equal(f"{label}_M_prime", phi_mp, M * m21 + Mp * m22)
        twice = FormsService.phi_operator(model, constants, phi_m, conjugate)
        ev.equal(
            f"{label}_twice",
            twice,
            M * (m11 * m11 + m12 * m21) + Mp * (m11 * m12 + m12 * m22),
        )
        ev.record(f"{label}_matrix", [[m11, m12], [m21, m22]])

    one = ctx.algebra.one()
    kept = {tuple(sorted(TETRAHEDRAL_P)), tuple(sorted(TETRAHEDRAL_Q))}
    survivors = [
        monomial_name(key)
        for key in _degree4_keys()
        if key not in kept
        and not FormsService.phi_operator(model, constants, Form({key: one})).is_zero
    ]
    ev.check("annihilates_other_monomials", not survivors, monomials=survivors)


@claim("C18", "Real locus", "sigma1 antiholomorphic involution, sigma1^*theta = theta_bar, omega|Y = 0")
def _c18(ctx: VerificationContext, ev: Evidence):
    forms = ctx.forms
    sigma = FormsService.form_sigma1(ctx.algebra)
    ev.equal("involution", sigma.compose(sigma), FormsService.identity_map(ctx.algebra))
    ev.check(
        "antiholomorphic",
        all(sigma.image(s).is_pure(0, 1) for s in range(4)),
    )
    ev.equal("theta", sigma.pullback(forms.theta), forms.theta_bar)
    ev.equal("omega", sigma.pullback(forms.omega), -forms.omega)
    ev.check("omega_on_Y", FormsService.restrict_to_Y(forms.omega).is_zero)
    im_theta = FormsService.restrict_to_Y(forms.theta - forms.theta_bar)
    ev.check("im_theta_on_Y", im_theta.is_zero)


@claim("C19", "Cycle pairings", "<Y,M> = 2D delta, <C_a,M> = -32D^3 D delta, <C_a,M'> = -16D^2(1-D)D delta")
def _c19(ctx: VerificationContext, ev: Evidence):
    forms, model, constants, algebra = ctx.forms, ctx.model, ctx.constants, ctx.algebra
    d = constants.vandermonde
    delta = ctx.delta
    y_m = FormsService.pair_Y(forms.M, algebra)
    y_mp = FormsService.pair_Y(forms.M_prime, algebra)
    ev.equal("Y_M", y_m, d * 2)
    ev.equal("Y_M_prime", y_mp, algebra.zero())

    expected = {
        False: (d * (-32 * delta**3), d * (-16 * delta**2 * (1 - delta))),
        True: (d * (-32 * delta**3), d * (16 * delta**2 * (1 - delta))),
    }
    for conjugate, (on_m, on_mp) in expected.items():
        label = "C_abar" if conjugate else "C_a"
        value_m = FormsService.pair_Y(FormsService.phi_operator(model, constants, forms.M, conjugate), algebra)
        value_mp = FormsService.pair_Y(
            FormsService.phi_operator(model, constants, forms.M_prime, conjugate), algebra
        )
        ev.equal(f"{label}_M", value_m, on_m)
        ev.equal(f"{label}_M_prime", value_mp, on_mp)
        m11, m12, m21, m22 = _phi_matrix(delta, conjugate)
        ev.equal(f"{label}_M_table", y_m * m11 + y_mp * m12, value_m)
        ev.equal(f"{label}_M_prime_table", y_m * m21 + y_mp * m22, value_mp)
    ev.record("delta", "formal covolume of the real lattice; pairings are multiples of it")


@claim("C20", "Isogenies on omega, theta", "pi_a^*omega = (1+D)omega, pi_b^*theta = D^2 theta")
def _c20(ctx: VerificationContext, ev: Evidence):
    forms, model, constants = ctx.forms, ctx.model, ctx.constants
    delta = ctx.delta
    pi_a = FormsService.isogeny_map(model, constants.isogeny_a)
    pi_b = FormsService.isogeny_map(model, constants.isogeny_b)
    ev.equal("pi_a_omega", pi_a.pullback(forms.omega), forms.omega * (1 + delta))
    ev.equal("pi_a_theta", pi_a.pullback(forms.theta), forms.theta * (1 + delta) ** 2)
    ev.equal("pi_b_omega", pi_b.pullback(forms.omega), forms.omega * delta)
    ev.equal("pi_b_theta", pi_b.pullback(forms.theta), forms.theta * delta**2)


# ============================================================================
# PARAMETER CLAIMS
# ============================================================================


def _all_conditions(ctx: VerificationContext) -> List[ParamPoly]:
    cond1, cond2 = ctx.conditions
    return [cond1, cond2, cond1.conjugate(), cond2.conjugate()]


def _sample_points(ctx: VerificationContext, count: int) -> List[AlphaMatrix]:
    """Seeded exact points of cond1 = 0 with small rational free entries"""
    rng = random.Random(ctx.seed)
    points = []
    while len(points) < count:
        free = [
            ctx.algebra.const(Fraction(rng.randint(-6, 6), rng.randint(1, 4))) for _ in range(3)
        ]
        alpha = solve_cond1_for_a34(*free, ctx.algebra, ctx.constants)
        if alpha is not None:
            points.append(alpha)
    return points


def _numeric_residual(ctx: VerificationContext, poly: ParamPoly) -> bool:
    """Evaluate at sample points on the constraint variety; residual below 2^-128"""
    enclosure = KernelService.refine_roots(ctx.enclosure, settings.fallback_precision_bits)
    threshold = Fraction(1, 2**128)
    for alpha in _sample_points(ctx, ctx.samples):
        tilde = ParamAlgService.tilde_from_alpha(alpha, ctx.algebra)
        values = dict(zip(range(8), alpha.entries() + tilde.entries()))
        value = poly.specialize(values)
        if KernelService.interval_magnitude(value, enclosure) >= threshold:
            return False
    return True


@claim("C21", "Type (1,1) conditions suffice", "A_i of type (1,1) when <alpha,H> = h3(x2-x4) + h3(x1-x3) det alpha")
def _c21(ctx: VerificationContext, ev: Evidence):
    algebra = ctx.algebra
    alpha = ParamAlgService.formal_alpha(algebra)
    tilde = ParamAlgService.formal_tilde(algebra)
    divisors = _all_conditions(ctx)
    cond1, _ = ctx.conditions
    ev.equal("long_form", -cond1, _long_condition(ctx, alpha))

    for name, f in (("A1", ctx.forms.A1), ("A2", ctx.forms.A2)):
        parts = ParamAlgService.symbolic_02_parts(f, alpha, tilde)
        for bidegree, coefficients in parts.items():
            for key, poly in coefficients.items():
                label = f"{name}_{monomial_name(key)}"
                remainder = ParamAlgService.reduce_by_conditions(poly, divisors)
                if not remainder:
                    ev.check(label, True)
                    continue
                logger.warning(f"{label}: nonzero remainder, falling back to sampling")
                ev.numeric = True
                ev.check(label, _numeric_residual(ctx, poly), remainder=remainder)

    zero = AlphaMatrix(*([algebra.zero()] * 4))
    ev.check("identity_change", ParamAlgService.w_substitution(zero, zero) == FormsService.identity_map(algebra))


def _long_condition(ctx: VerificationContext, alpha: AlphaMatrix):
    """The expanded (1,1) condition, written out term by term"""
    h2, h3, h4 = (ctx.constants.h(k) for k in (2, 3, 4))
    return (
        alpha.det() * (h3 * ctx.diff(1, 3))
        + alpha.a11 * (h4 * ctx.diff(1, 4))
        - alpha.a12 * (h2 * ctx.diff(1, 2))
        + alpha.a21 * (h2 * ctx.diff(3, 4))
        - alpha.a22 * (h4 * ctx.diff(3, 2))
        + h3 * ctx.diff(2, 4)
    )


@claim("C22", "alpha-tilde from alpha", "alpha~ = (x1-x3)/(x2-x4) hat(conj alpha) solves the second condition")
def _c22(ctx: VerificationContext, ev: Evidence):
    algebra, constants = ctx.algebra, ctx.constants
    alpha = ParamAlgService.formal_alpha(algebra)
    tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
    cond1, _ = ctx.conditions
    cond2 = ParamAlgService.cond2_of(tilde, algebra, constants)
    remainder = ParamAlgService.reduce_by_conditions(cond2, [cond1.conjugate()])
    ev.check("cond2_reduces", not remainder, remainder=remainder)

    product = alpha.conjugate() @ tilde
    scalar = alpha.conjugate().det() * ParamAlgService.ratio(algebra)
    ev.check("scalar_matrix", not product.a12 and not product.a21)
    ev.equal("scalar_value_11", product.a11, scalar)
    ev.equal("scalar_value_22", product.a22, scalar)

    zero = AlphaMatrix(*([algebra.zero()] * 4))
    ev.equal("zero", ParamAlgService.tilde_from_alpha(zero, algebra), zero)


@claim("C23", "Inverse transform", "c(1 - conj(alpha) alpha~) = 1, det alpha != (x2-x4)/(x1-x3)")
def _c23(ctx: VerificationContext, ev: Evidence):
    algebra = ctx.algebra
    one = algebra.one()
    minus_identity = LinMap({s: {s: -one} for s in range(8)})
    identity = FormsService.identity_map(algebra)
    points = {"alpha_star": ctx.alpha_star}
    for n, alpha in enumerate(_sample_points(ctx, min(2, ctx.samples))):
        points[f"sample_{n}"] = alpha

    for label, alpha in points.items():
        t = ParamAlgService.inverse_transform(alpha, algebra)
        r = ParamAlgService.ratio(algebra)
        ev.equal(f"{label}_c", t.c * (1 - r * alpha.det().conjugate()), one)
        ev.equal(f"{label}_c_tilde", t.c_tilde, t.c.conjugate())
        scalar = (t.c - 1) * t.c.inverse()
        product = alpha.conjugate() @ t.alpha_tilde
        ev.equal(f"{label}_product", product, AlphaMatrix(scalar, algebra.zero(), algebra.zero(), scalar))
        ev.equal(f"{label}_J_squared", t.J.compose(t.J), minus_identity)
        substitution = ParamAlgService.w_substitution(alpha, t.alpha_tilde)
        ev.equal(f"{label}_inverse", substitution.compose(t.inverse), identity)

    singular = AlphaMatrix(one, algebra.zero(), algebra.zero(), ParamAlgService.ratio(algebra).inverse())
    try:
        ParamAlgService.inverse_transform(singular, algebra)
        ev.check("singular_rejected", False)
    except SingularTransform:
        ev.check("singular_rejected", True)


@claim("C24", "omega stays (1,1)", "a34 = (x1-x4)/(x2-x3) conj(a12), a14 = -(x3-x4)/(x1-x2) conj(a32)")
def _c24(ctx: VerificationContext, ev: Evidence):
    algebra, constants = ctx.algebra, ctx.constants
    a12 = ParamPoly.variable(algebra, 0)
    a32 = ParamPoly.variable(algebra, 2)
    alpha = ParamAlgService.omega_preserving_alpha(a12, a32, algebra)
    tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
    parts = ParamAlgService.symbolic_02_parts(ctx.forms.omega, alpha, tilde)
    nonzero = [
        monomial_name(key) for coefficients in parts.values() for key, p in coefficients.items() if p
    ]
    ev.check("omega_11", not nonzero, monomials=nonzero)

    residual = ParamAlgService.ellipsoid_residual(a12, a32, algebra, constants)
    ev.equal("ellipsoid", residual.ellipsoid, -ParamAlgService.cond1_of(alpha, algebra, constants))
    ev.equal("quadratic_is_det", residual.quadratic, alpha.det())

    s1, _ = ParamAlgService.omega_coefficients(algebra)
    literal_s2 = ctx.diff(3, 4) / ctx.diff(1, 3)
    literal = AlphaMatrix(a12, -(a32.conjugate() * literal_s2), a32, a12.conjugate() * s1)
    literal_parts = ParamAlgService.symbolic_02_parts(
        ctx.forms.omega, literal, ParamAlgService.tilde_from_alpha(literal, algebra)
    )
    ev.record(
        "literal_denominator_keeps_omega_11",
        not any(p for coefficients in literal_parts.values() for p in coefficients.values()),
    )


@claim("C25", "The solution alpha*", "alpha* satisfies the (1,1) conditions and keeps omega (1,1)")
def _c25(ctx: VerificationContext, ev: Evidence):
    algebra, constants = ctx.algebra, ctx.constants
    alpha = ctx.alpha_star
    zero = algebra.zero()
    ev.equal("cond1", ParamAlgService.cond1_of(alpha, algebra, constants), zero)
    tilde = ParamAlgService.tilde_from_alpha(alpha, algebra)
    ev.equal("cond2", ParamAlgService.cond2_of(tilde, algebra, constants), zero)

    s1, s2 = ParamAlgService.omega_coefficients(algebra)
    ev.equal("a34_relation", alpha.a22, alpha.a11.conjugate() * s1)
    ev.equal("a14_relation", alpha.a12, -(alpha.a21.conjugate() * s2))

    residual = ParamAlgService.ellipsoid_residual(alpha.a11, alpha.a21, algebra, constants)
    ev.equal("ellipsoid", residual.ellipsoid, zero)
    ev.check("off_singular_locus", bool(residual.singular))
    ev.record("hyperplane", residual.hyperplane)

    substitution = ParamAlgService.w_substitution(alpha, tilde)
    for name, f in (("A1", ctx.forms.A1), ("A2", ctx.forms.A2), ("omega", ctx.forms.omega)):
        ev.check(f"{name}_pure_11", substitution.pullback(f).is_pure(1, 1))
    ev.record("alpha_star", alpha)


def _display(ctx: VerificationContext, rows: Sequence[Tuple[Tuple[int, int], int, Dict[Tuple[int, int], int]]]) -> Form:
    total = Form()
    for seq, sign, exponents in rows:
        coefficient = ctx.algebra.const(sign)
        for (j, k), power in exponents.items():
            coefficient = coefficient * ctx.diff(j, k) ** power
        total = total + Form.monomial(seq, coefficient)
    return total


_A_MAGNITUDES = [
    {(1, 2): 2, (2, 3): 2, (1, 4): 2, (3, 4): 1},
    {(1, 2): 2, (2, 3): 2, (1, 4): 1, (3, 4): 2},
    {(1, 2): 1, (2, 3): 2, (1, 4): 2, (3, 4): 2},
    {(1, 2): 2, (2, 3): 1, (1, 4): 2, (3, 4): 2},
]
_A_SEQUENCES = [(0, 5), (1, 6), (2, 7), (3, 4), (4, 1), (5, 2), (6, 3), (7, 0)]
_A1_SIGNS = [1, -1, 1, 1, 1, -1, 1, 1]
_A2_SIGNS = [1, 1, 1, -1, -1, -1, -1, 1]
_OMEGA_ROWS = [
    ((0, 4), {(1, 2): 2, (1, 3): 1, (2, 3): 1, (1, 4): 2, (3, 4): 1}),
    ((1, 5), {(1, 2): 2, (2, 3): 2, (1, 4): 1, (2, 4): 1, (3, 4): 1}),
    ((2, 6), {(1, 2): 1, (1, 3): 1, (2, 3): 2, (1, 4): 1, (3, 4): 2}),
    ((3, 7), {(1, 2): 1, (2, 3): 1, (1, 4): 2, (2, 4): 1, (3, 4): 2}),
]


@claim("C26", "Forms in w-coordinates", "h3^2/4 A1, h3^2/(4iD) A2, D h3^2/(4iD) omega at alpha*")
def _c26(ctx: VerificationContext, ev: Evidence):
    algebra, constants = ctx.algebra, ctx.constants
    alpha = ctx.alpha_star
    substitution = ParamAlgService.w_substitution(
        alpha, ParamAlgService.tilde_from_alpha(alpha, algebra)
    )
    h3_sq = constants.h(3) ** 2
    i_d = constants.i_vandermonde

    a_rows = list(zip(_A_SEQUENCES, _A_MAGNITUDES * 2))
    expected_a1 = _display(ctx, [(seq, s, e) for (seq, e), s in zip(a_rows, _A1_SIGNS)])
    expected_a2 = _display(ctx, [(seq, s, e) for (seq, e), s in zip(a_rows, _A2_SIGNS)])
    expected_omega = -_display(ctx, [(seq, 1, e) for seq, e in _OMEGA_ROWS])

    a1 = substitution.pullback(ctx.forms.A1) * (h3_sq * Fraction(1, 4))
    a2 = substitution.pullback(_a2_with_charge(ctx, 1)) * (h3_sq * (i_d * 4).inverse())
    omega = substitution.pullback(ctx.forms.omega) * (h3_sq * ctx.delta * (i_d * 4).inverse())
    ev.equal("A1", a1, expected_a1)
    ev.equal("A2", a2, expected_a2)
    ev.equal("omega", omega, expected_omega)


@claim("C27", "Kaehler in w-coordinates", "-omega is a Kaehler form at alpha*")
def _c27(ctx: VerificationContext, ev: Evidence):
    algebra = ctx.algebra
    alpha = ctx.alpha_star
    substitution = ParamAlgService.w_substitution(
        alpha, ParamAlgService.tilde_from_alpha(alpha, algebra)
    )
    minus_omega = -substitution.pullback(ctx.forms.omega)
    diagonal = {(j, j + 4) for j in range(4)}
    ev.check("diagonal", set(minus_omega.terms) <= diagonal)
    ev.numeric = True
    i = algebra.imaginary_unit()
    signs = {}
    for j in range(4):
        h = -i * minus_omega.terms.get((j, j + 4), algebra.zero())
        ev.check(f"h{j + 1}_real", h.is_real)
        signs[j + 1] = KernelService.sign_at_identity(h, ctx.enclosure, settings.refinement_cap_bits)
        ev.check(f"h{j + 1}_positive", signs[j + 1] > 0)
    ev.record("signs", signs)
    ev.record("precision_bits", ctx.enclosure.bits)


@claim("C28", "Curve bookkeeping", "k = c^2 Delta/(k1^3 <omega^4>) + 3k1/2 integral with d > 2g")
def _c28(ctx: VerificationContext, ev: Evidence):
    solutions = []
    for c in range(1, ctx.c_max + 1):
        for k1 in range(1, ctx.k1_max + 1):
            book = genus_bookkeeping(ctx.delta, c, k1, ctx.omega4)
            if book["k_integral"] and book["degree_exceeds_two_genus"]:
                solutions.append(book)
    ev.check("solution_exists", bool(solutions))
    if solutions:
        first = solutions[0]
        ev.equal("riemann_roch", first["riemann_roch_residual"], Fraction(0))
        ev.record("first", first)
    ev.record("solutions", [(s["c"], s["k1"], s["k"]) for s in solutions])


# ============================================================================
# RUNNER
# ============================================================================


def run_claim(claim_id: str, ctx: Optional[VerificationContext]) -> ClaimReport:
    """
    Run one verifier and wrap its outcome.

    Raises:
        UnknownClaim: id outside the catalogue
        ContextMissing: no context, or a rejected quartic for a claim that needs L
    """
    spec = CLAIMS.get(claim_id)
    if spec is None:
        raise UnknownClaim(f"Unknown claim id {claim_id}")
    if ctx is None or (spec.needs_context and not ctx.gate.passed):
        raise ContextMissing(f"{claim_id} needs an admissible quartic")

    ev = Evidence()
    start = time.perf_counter()
    try:
        spec.verifier(ctx, ev)
        if ev.passed:
            status = ClaimStatus.VERIFIED_NUMERIC if ev.numeric else ClaimStatus.VERIFIED_EXACT
        else:
            status = ClaimStatus.FAILED
        witness = ev.witness()
    except VerificationError as e:
        logger.error(f"{claim_id} raised: {e}")
        status = ClaimStatus.FAILED
        witness = {**ev.witness(), "error": f"{type(e).__name__}: {e}"}
    elapsed = (time.perf_counter() - start) * 1000

    logger.info(f"{claim_id} {status.value} in {elapsed:.0f} ms")
    return ClaimReport(
        id=spec.id,
        title=spec.title,
        anchor=spec.anchor,
        status=status,
        witness=witness,
        elapsed_ms=elapsed,
    )


def run_all(
    ctx: Optional[VerificationContext], subset: Optional[Sequence[str]] = None
) -> List[ClaimReport]:
    """
    Run the requested claims (all by default), in id order.

    With a rejected quartic only the gate claim runs; the others are
    reported as skipped.
    """
    ids = sorted(set(subset)) if subset else sorted(CLAIMS)
    for claim_id in ids:
        if claim_id not in CLAIMS:
            raise UnknownClaim(f"Unknown claim id {claim_id}")
    reports = []
    for claim_id in ids:
        spec = CLAIMS[claim_id]
        if ctx is not None and spec.needs_context and not ctx.gate.passed:
            reports.append(
                ClaimReport(
                    id=spec.id,
                    title=spec.title,
                    anchor=spec.anchor,
                    status=ClaimStatus.SKIPPED,
                    witness={"reason": "quartic rejected by the gate"},
                )
            )
            continue
        reports.append(run_claim(claim_id, ctx))
    return reports
