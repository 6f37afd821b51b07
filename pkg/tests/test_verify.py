import dataclasses
import math

import pytest

from qtheta import verify as V
from qtheta.errors import DomainError
from qtheta.qspecial import c_q, theta4
from qtheta.special_functions import ZETA2

LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


class TestClassicalRaabe:
    def test_t0(self):
        rep = V.check_classical_raabe(0.0)
        assert rep.passed
        assert rep.rhs == pytest.approx(0.9189385332, abs=1e-10)

    def test_t1_t2(self):
        assert V.check_classical_raabe(1.0).rhs == pytest.approx(LOG_SQRT_2PI - 1, abs=1e-15)
        rep = V.check_classical_raabe(2.0)
        assert rep.rhs == pytest.approx(LOG_SQRT_2PI + 2 * math.log(2) - 2, abs=1e-15)
        assert rep.passed

    def test_negative_t(self):
        with pytest.raises(DomainError):
            V.check_classical_raabe(-1.0)


class TestRaabeQ:
    @pytest.mark.parametrize("q, t", [(2.0, 1.0), (5.0, 0.25), (1.5, 3.0)])
    def test_examples(self, q, t):
        rep = V.check_raabe_q(q, t)
        assert rep.passed and rep.abs_err <= 1e-7

    @pytest.mark.parametrize("q", [2.0, 1.2, 20.0])
    def test_special(self, q):
        assert V.check_raabe_q_special(q).passed

    @pytest.mark.parametrize("q", [1.5, 2.0, 5.0])
    def test_limit_matches_special_case(self, q):
        # C_q plus the t -> 0 limit of the bracket reproduces the t = 0 closed form
        special = V.check_raabe_q_special(q).rhs
        assert c_q(q) + V.raabe_q_limit(q) == pytest.approx(special, abs=1e-12)

    def test_limit_values(self):
        assert V.raabe_q_limit(3.0) == pytest.approx((2 * ZETA2 + math.log(2) ** 2) / (2 * math.log(3)), abs=1e-15)
        assert V.raabe_q_limit(2.0) == pytest.approx(ZETA2 / math.log(2), abs=1e-15)

    @pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
    def test_t_limit(self, q):
        rep = V.check_t_limit(q)
        assert rep.passed
        assert "monotone=True" in rep.notes

    def test_bracket_discrepancy_is_reported(self, monkeypatch):
        # a corrupted closed form must fail and say the residue route still agrees
        real = V.raabe_q_bracket
        monkeypatch.setattr(V, "raabe_q_bracket", lambda q, t: real(q, t) + 1e-3)
        rep = V.check_raabe_q(2.0, 1.0)
        assert not rep.passed
        assert "residue route agrees" in rep.notes


class TestTheorem2:
    @pytest.mark.parametrize("q, t, s", [(2.0, 1.0, 2.0), (5.0, 0.5, 1.5), (1.5, 2.0, 3.0)])
    def test_examples(self, q, t, s):
        assert V.check_theorem2(q, t, s).passed

    @pytest.mark.parametrize("q, t, s, n", [(2.0, 1.0, 2.0, 0), (2.0, 1.0, 2.0, 3), (3.0, 0.25, 1.5, 1)])
    def test_inner(self, q, t, s, n):
        assert V.check_inner_antiderivative(q, t, s, n).passed

    def test_s_outside_direct_regime(self):
        with pytest.raises(DomainError):
            V.check_theorem2(2.0, 1.0, 1.0)

    @pytest.mark.parametrize("q, t", [(2.0, 1.0), (1.5, 0.5), (10.0, 2.0)])
    def test_residue(self, q, t):
        assert V.check_residue_formula(q, t).passed


class TestProducts:
    @pytest.mark.parametrize("x", [1.0, 0.5, 3.0])
    def test_lerch(self, x):
        assert V.check_lerch(x).passed

    def test_lerch_at_one(self):
        assert V.check_lerch(1.0).rhs == pytest.approx(LOG_SQRT_2PI, abs=1e-15)

    @pytest.mark.parametrize("x, q", [(1.0, 2.0), (0.5, 1.5), (2.5, 5.0)])
    def test_nk(self, x, q):
        assert V.check_nk(x, q).passed


class TestTheta:
    def test_triple_product_center(self):
        rep = V.check_triple_product(1.0, 0.5)
        assert rep.passed
        assert rep.lhs == pytest.approx(theta4(0, 0.5).real, abs=1e-15)
        assert rep.lhs == pytest.approx(0.1211242080, abs=1e-10)

    def test_triple_product_inversion(self):
        a = V.check_triple_product(2.0, 0.3)
        b = V.check_triple_product(0.5, 0.3)
        assert a.passed and b.passed
        assert a.rhs == pytest.approx(b.rhs, abs=1e-15)

    @pytest.mark.parametrize("x", [0.1, 0.25])
    def test_link_symmetry(self, x):
        a = V.check_theta_gamma_link(x, 2.0)
        b = V.check_theta_gamma_link(1 - x, 2.0)
        assert a.passed and b.passed
        assert a.lhs == pytest.approx(b.lhs, abs=1e-14)
        assert a.rhs == pytest.approx(b.rhs, abs=1e-14)

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
    def test_main(self, p):
        rep = V.check_main_theta(p)
        assert rep.passed
        gap = float(rep.notes.rsplit("= ", 1)[1])
        assert gap <= V.THETA_HALVES_TOL

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
    def test_routes(self, p):
        assert V.check_main_theta_routes(p).abs_err <= 1e-12

    @pytest.mark.parametrize("p", ["1/2", "1/3", 0.3])
    def test_zero(self, p):
        rep = V.check_theta_zero(p)
        assert rep.passed and rep.lhs == 0.0

    def test_zero_decimal_reading(self):
        assert V.check_theta_zero(0.3).params["p"] == "3/10"


class TestExact:
    def test_partition_oracle(self):
        assert V.partitions_by_parts(10)[10] == 42
        assert V.check_partition(50).passed

    @pytest.mark.parametrize("kind", ["Hn", "Hn_sq", "Hn2", "Hn_over_n"])
    def test_genfunc(self, kind):
        assert V.check_genfunc(kind, 200).passed


class TestHarness:
    def test_tolerances(self):
        assert V.Tolerances().get("lerch") == 1e-8
        assert V.Tolerances({}).as_dict() == V.DEFAULT_TOLERANCES
        assert V.Tolerances({"lerch": 1e-3}).get("lerch") == 1e-3
        assert V.Tolerances(global_tol=1e-2).get("nk") == 1e-2
        with pytest.raises(DomainError):
            V.Tolerances({"bogus": 1.0})
        with pytest.raises(DomainError):
            V.Tolerances(global_tol=-1.0)

    def test_single_filter(self):
        reps = V.run_all(names=["raabe_q"], overrides={"q": 2.0, "t": 1.0})
        assert len(reps) == 1 and reps[0].params == {"q": 2.0, "t": 1.0}

    def test_unknown(self):
        with pytest.raises(KeyError):
            V.run_all(names=["bogus"])

    def test_failure_becomes_report(self):
        rep = V.run_check("raabe_q", {"q": 0.5, "t": 1.0}, 1e-7)
        assert not rep.passed
        assert math.isnan(rep.lhs)
        assert "DomainError" in rep.notes

    def test_full_run_deterministic_and_sorted(self):
        a = V.run_all()
        b = V.run_all()
        assert all(r.passed for r in a), [r for r in a if not r.passed]
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
        keys = [(r.check_id, V.params_key(r.params)) for r in a]
        assert keys == sorted(keys)
        assert {r.check_id for r in a} == set(V.CHECKS)

    def test_grid_sizes(self):
        assert len(V.grid_for("raabe_q")) == 16
        assert len(V.grid_for("theorem2")) == 27
        assert len(V.grid_for("inner_antiderivative")) == 9
        assert len(V.grid_for("raabe_q", {"q": 2.0})) == 4

    def test_report_rule(self):
        rep = V.CheckReport.compare("x", {}, 101.0, 100.0, 0.02)
        assert rep.passed and rep.rel_err == pytest.approx(0.01)
        assert not dataclasses.replace(rep, passed=False).passed
        assert V.CheckReport.from_dict(rep.to_dict()) == rep
