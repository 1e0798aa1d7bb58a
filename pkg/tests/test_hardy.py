"""Closed-form Hardy-type functionals: direct, sup-operator, and reverse."""

import math

import pytest

from morreyemb.errors import HypothesisViolated, InadmissibleExponents
from morreyemb.hardy import (HardyProblem, hardy_A, hardy_A_star,
                             reverse_hardy_C, reverse_hardy_C_star,
                             sup_operator_constant)
from morreyemb.profiles import (ExpProfile, PowerProfile,
                                ShiftedPowerProfile, constant,
                                truncated_power)
from morreyemb.weights import Weight, tail_norm, tail_norm_left_limit

INF = math.inf


def direct(p, q, v, w, n=1):
    return HardyProblem("direct", p, q, v, Weight(n, w))


class TestDirect:
    def test_benchmark_sqrt2(self):
        prob = direct(2.0, 2.0, PowerProfile(1.0, -2.0), constant(1.0))
        assert float(hardy_A(prob)) == pytest.approx(math.sqrt(2.0),
                                                     rel=1e-9)

    def test_divergent_when_tail_too_fat(self):
        prob = direct(2.0, 2.0, PowerProfile(1.0, -2.0),
                      ShiftedPowerProfile(1.0, 1.0, -1.0))
        assert hardy_A(prob).is_inf

    def test_case_b_exponential(self):
        # p=2, q=1, r=2: A = (integral V_tail * v * W_ball dt)^(1/2)
        prob = direct(2.0, 1.0, ExpProfile(1.0, -1.0), constant(1.0))
        # integral e^(-t) e^(-t) 2t dt = 1/2
        assert float(hardy_A(prob)) == pytest.approx(math.sqrt(0.5),
                                                     rel=1e-7)

    def test_case_q_inf(self):
        prob = direct(2.0, INF, ExpProfile(1.0, -1.0), constant(1.0))
        # sup_t e^(-t) (2t)^(1/2) at t = 1/2
        want = math.exp(-0.5)
        assert float(hardy_A(prob)) == pytest.approx(want, rel=1e-7)

    def test_scaling_in_outer_weight(self):
        base = direct(2.0, 2.0, PowerProfile(1.0, -2.0), constant(1.0))
        scaled = direct(2.0, 2.0, PowerProfile(16.0, -2.0), constant(1.0))
        # A scales like c^(1/q) = 16^(1/2)
        assert float(hardy_A(scaled)) == pytest.approx(
            4.0 * float(hardy_A(base)), rel=1e-9)

    @pytest.mark.parametrize("p", [0.25, 0.5])
    def test_direct_requires_p_at_least_one(self, p):
        with pytest.raises(InadmissibleExponents):
            direct(p, 2.0, constant(1.0), constant(1.0))

    def test_mirror_variant_finite(self):
        prob = HardyProblem("direct_complement", 2.0, 2.0,
                            ExpProfile(1.0, -1.0),
                            Weight(1, ShiftedPowerProfile(1.0, 1.0, 3.0)))
        assert math.isfinite(float(hardy_A_star(prob)))


class TestSupOperator:
    def test_constant_data(self):
        # ||v(r) esssup_{B_r} w^{-1}||_q with v = e^{-s}, w = 1:
        # (integral e^{-2s})^{1/2} = sqrt(1/2)
        prob = HardyProblem("sup", INF, 2.0, ExpProfile(1.0, -1.0),
                            Weight(1, constant(1.0)))
        assert float(sup_operator_constant(prob)) == pytest.approx(
            math.sqrt(0.5), rel=1e-7)


class TestReverse:
    def test_benchmark_one(self):
        prob = HardyProblem("reverse", 0.5, 0.5,
                            ShiftedPowerProfile(1.0, 1.0, -4.0),
                            Weight(1, ShiftedPowerProfile(1.0, 1.0, -3.0)))
        assert float(reverse_hardy_C(prob)) == pytest.approx(1.0, rel=1e-6)

    def test_benchmark_two(self):
        prob = HardyProblem("reverse", 1.0, INF, ExpProfile(1.0, -1.0),
                            Weight(1, ExpProfile(1.0, -2.0)))
        assert float(reverse_hardy_C(prob)) == pytest.approx(2.0, rel=1e-6)

    def test_mirror_benchmark(self):
        prob = HardyProblem("reverse_complement", 1.0, INF,
                            ExpProfile(1.0, 1.0), Weight(1, constant(1.0)))
        assert float(reverse_hardy_C_star(prob)) == pytest.approx(1.0,
                                                                  rel=1e-6)

    def test_mirror_power_benchmark(self):
        prob = HardyProblem("reverse_complement", 0.5, 0.5,
                            PowerProfile(1.0, -0.5),
                            Weight(1, PowerProfile(1.0, 0.5)))
        assert float(reverse_hardy_C_star(prob)) == pytest.approx(0.75,
                                                                  rel=1e-6)

    def test_hypothesis_violated_when_tail_norm_infinite(self):
        prob = HardyProblem("reverse", 0.5, 0.5, constant(1.0),
                            Weight(1, ShiftedPowerProfile(1.0, 1.0, -3.0)))
        with pytest.raises(HypothesisViolated):
            reverse_hardy_C(prob)

    @pytest.mark.parametrize("p", [1.5, 2.0])
    def test_reverse_requires_p_at_most_one(self, p):
        with pytest.raises(InadmissibleExponents):
            HardyProblem("reverse", p, 2.0, constant(1.0),
                         Weight(1, constant(1.0)))


class TestLeftLimitCollapse:
    """For q < inf, the left-limit tail norm equals the plain tail norm."""

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("q", [0.5, 1.0, 3.0])
    def test_collapse_for_finite_q(self, q, t):
        om = truncated_power(1.0, -2.0, 1.0, None)
        a = float(tail_norm(om, q, t))
        b = float(tail_norm_left_limit(om, q, t))
        assert b == pytest.approx(a, rel=1e-7)

    def test_no_collapse_for_q_inf_at_jump(self):
        om = truncated_power(1.0, 0.0, None, 1.0)  # drops to 0 at rho = 1
        a = float(tail_norm(om, INF, 1.0))
        b = float(tail_norm_left_limit(om, INF, 1.0))
        assert a == 0.0
        assert b == 1.0
