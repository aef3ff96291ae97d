"""
Claim catalogue tests:
- verifiers on the fixture and search quartics
- the runner (unknown ids, missing context, rejected quartics)
- evidence bookkeeping and report serialization
"""

from fractions import Fraction

import pytest

from src.exceptions import ContextMissing, PrecisionExhausted, UnknownClaim
from src.schemas.quartic import Quartic
from src.schemas.report import ClaimStatus, OverallStatus, RunConfig, SuiteReport
from src.services.claims_service import CLAIMS, Evidence, genus_bookkeeping, run_all, run_claim
from src.services.kernel_service import KernelService
from tests.test_utils import FIXTURE_COEFFICIENTS, FIXTURE_DELTA, SEARCH_DELTA, TestHelpers


class TestCatalogue:
    def test_every_claim_registered(self):
        assert sorted(CLAIMS) == [f"C{n:02d}" for n in range(1, 29)]

    def test_only_gate_runs_without_context(self):
        assert [c for c, spec in CLAIMS.items() if not spec.needs_context] == ["C01"]


NUMERIC_CLAIMS = {"C08", "C27"}


class TestVerifiers:
    """Every verifier on x^4 - 4x^2 + x + 1 and x^4 - 5x^2 - 2x + 1"""

    @pytest.mark.parametrize("context_name", ["fixture_context", "search_context"])
    @pytest.mark.parametrize("claim_id", sorted(CLAIMS))
    def test_claim_verified(self, request, context_name, claim_id):
        report = run_claim(claim_id, request.getfixturevalue(context_name))
        TestHelpers.assert_verified(report)
        expected = ClaimStatus.VERIFIED_EXACT
        if claim_id in NUMERIC_CLAIMS:
            expected = ClaimStatus.VERIFIED_NUMERIC
        assert report.status == expected

    def test_search_gate_witness(self, search_context):
        report = run_claim("C01", search_context)
        assert report.witness["gate"]["delta"] == f"{SEARCH_DELTA}/1"

    def test_undecided_sign_fails_claim(self, fixture_context, monkeypatch):
        """Exhausting the refinement cap marks the claim failed instead of aborting the run"""

        def undecided(u, enc, cap_bits=4096):
            raise PrecisionExhausted(f"undecided at {cap_bits} bits")

        monkeypatch.setattr(KernelService, "sign_at_identity", staticmethod(undecided))
        reports = run_all(fixture_context, ["C27", "C28"])
        assert [r.status for r in reports] == [ClaimStatus.FAILED, ClaimStatus.VERIFIED_EXACT]
        assert reports[0].witness["error"].startswith("PrecisionExhausted")

    def test_gate_witness(self, fixture_context):
        report = run_claim("C01", fixture_context)
        assert report.witness["checks"] == {
            "irreducible": True,
            "four_real_roots": True,
            "galois_S4": True,
        }
        assert report.witness["gate"]["delta"] == f"{FIXTURE_DELTA}/1"

    def test_curve_bookkeeping_witness(self, fixture_context):
        """The smallest charge making k integral is c = 6"""
        witness = run_claim("C28", fixture_context).witness
        assert witness["first"]["c"] == 6
        assert witness["first"]["k"] == "2937/1"


class TestGenusBookkeeping:
    def test_fixture_values(self):
        book = genus_bookkeeping(Fraction(FIXTURE_DELTA), 6, 1, Fraction(24))
        assert book["k"] == 2937
        assert book["k_integral"]
        assert book["degree"] == 70488
        assert book["two_genus"] == 74
        assert book["degree_exceeds_two_genus"]
        assert book["riemann_roch_residual"] == 0

    def test_search_quartic_values(self):
        book = genus_bookkeeping(Fraction(SEARCH_DELTA), 6, 2, Fraction(24))
        assert book["k"] == 1080
        assert book["riemann_roch_residual"] == 0

    def test_non_integral_charge(self):
        book = genus_bookkeeping(Fraction(FIXTURE_DELTA), 1, 1, Fraction(24))
        assert not book["k_integral"]
        assert book["k"] == Fraction(1957, 24) + Fraction(3, 2)

    def test_literal_reading_differs(self):
        """Dividing 3k1/2 by <omega^4> as well changes k"""
        book = genus_bookkeeping(Fraction(FIXTURE_DELTA), 6, 1, Fraction(24))
        assert book["literal_k"] == (36 * FIXTURE_DELTA + Fraction(3, 2)) / 24
        assert not book["literal_k_integral"]


class TestRunner:
    def test_unknown_claim(self, fixture_context):
        with pytest.raises(UnknownClaim):
            run_claim("C99", fixture_context)
        with pytest.raises(UnknownClaim):
            run_all(fixture_context, ["C01", "C99"])

    def test_missing_context(self):
        with pytest.raises(ContextMissing):
            run_claim("C09", None)

    def test_rejected_quartic_for_dependent_claim(self, rejected_context):
        with pytest.raises(ContextMissing):
            run_claim("C09", rejected_context)

    def test_rejected_quartic_skips(self, rejected_context):
        reports = run_all(rejected_context, ["C09", "C01"])
        assert TestHelpers.claim_ids(reports) == ["C01", "C09"]
        assert reports[0].status == ClaimStatus.FAILED
        assert reports[0].witness["checks"]["four_real_roots"] is False
        assert reports[1].status == ClaimStatus.SKIPPED

    def test_subset_deduplicated_and_ordered(self, fixture_context):
        reports = run_all(fixture_context, ["C09", "C02", "C09"])
        assert TestHelpers.claim_ids(reports) == ["C02", "C09"]


class TestEvidence:
    def test_failed_check_keeps_detail(self):
        ev = Evidence()
        ev.check("ok", True)
        ev.check("bad", False, got=3)
        assert not ev.passed
        assert ev.witness() == {"checks": {"ok": True, "bad": False}, "bad.discrepancy": {"got": 3}}

    def test_equal_records_both_sides(self):
        ev = Evidence()
        assert not ev.equal("value", Fraction(1, 2), Fraction(1, 3))
        assert ev.witness()["value.discrepancy"] == {"lhs": "1/2", "rhs": "1/3"}

    def test_record_does_not_affect_outcome(self):
        ev = Evidence()
        ev.record("note", (1, Fraction(2)))
        assert ev.passed
        assert ev.witness()["note"] == [1, "2/1"]


class TestSuiteReport:
    def _config(self):
        return RunConfig(poly=Quartic(**dict(zip("abcd", FIXTURE_COEFFICIENTS))))

    def test_overall_verified(self, fixture_context):
        claims = run_all(fixture_context, ["C09", "C01"])
        report = SuiteReport.assemble(self._config(), fixture_context.gate, claims, 1.0)
        assert report.overall == OverallStatus.VERIFIED

    def test_overall_gate_rejected(self, rejected_context):
        claims = run_all(rejected_context, ["C01"])
        config = RunConfig(poly=rejected_context.quartic)
        report = SuiteReport.assemble(config, rejected_context.gate, claims, 1.0)
        assert report.overall == OverallStatus.GATE_REJECTED

    def test_json_round_trip(self, fixture_context):
        claims = run_all(fixture_context, ["C01"])
        report = SuiteReport.assemble(self._config(), fixture_context.gate, claims, 1.0)
        restored = SuiteReport.model_validate_json(report.model_dump_json())
        assert restored.gate.delta == FIXTURE_DELTA
        assert restored.config.omega4 == 24
        assert restored.claims[0].witness == report.claims[0].witness

    def test_exactly_one_source(self):
        with pytest.raises(ValueError):
            RunConfig()
