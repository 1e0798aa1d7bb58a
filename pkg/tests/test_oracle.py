"""Brute-force lower bounds, divergence witnesses, and equivalence reports."""

import math

import numpy as np
import pytest

from morreyemb.errors import DegenerateRatio, WitnessNotFound
from morreyemb.hardy import HardyProblem, hardy_A
from morreyemb.embeddings import EmbeddingProblem
from morreyemb.oracle import (OracleConfig, _RatioEvaluator,
                              best_constant_lower_bound, divergence_witness,
                              equivalence_report)
from morreyemb.profiles import (PowerProfile, ShiftedPowerProfile, constant,
                                truncated_power)
from morreyemb.weights import Weight

INF = math.inf

SMALL = OracleConfig(grid_cells=48, restarts=2, ascent_sweeps=8, seed=5)

BENCHMARK = HardyProblem("direct", 2.0, 2.0, PowerProfile(1.0, -2.0),
                         Weight(1, constant(1.0)))


class TestConfig:
    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError):
            OracleConfig(grid_cells=4)

    def test_rejects_no_restarts(self):
        with pytest.raises(ValueError):
            OracleConfig(restarts=0)


class TestLowerBound:
    def test_benchmark_exceeds_functional(self):
        res = best_constant_lower_bound(BENCHMARK, SMALL)
        # the ball family alone achieves the A-functional value sqrt(2)
        assert float(res.lower_bound) >= math.sqrt(2.0) * (1.0 - 1e-3)
        # and the true best constant here is 2 * sqrt(2)
        assert float(res.lower_bound) <= 2.0 * math.sqrt(2.0) * (1.0 + 1e-3)

    def test_trace_is_nondecreasing(self):
        res = best_constant_lower_bound(BENCHMARK, SMALL)
        ratios = [r for _, r in res.trace]
        assert all(b >= a for a, b in zip(ratios, ratios[1:]))
        assert float(res.lower_bound) == ratios[-1]

    def test_argmax_reproduces_lower_bound(self):
        res = best_constant_lower_bound(BENCHMARK, SMALL)
        ev = _RatioEvaluator(BENCHMARK, SMALL)
        again = ev.ratio(res.argmax.values)
        assert again == pytest.approx(float(res.lower_bound), rel=1e-12)

    def test_deterministic_given_seed(self):
        a = best_constant_lower_bound(BENCHMARK, SMALL)
        b = best_constant_lower_bound(BENCHMARK, SMALL)
        assert float(a.lower_bound) == float(b.lower_bound)
        assert np.array_equal(a.argmax.values, b.argmax.values)
        assert a.trace == b.trace

    def test_degenerate_ratio(self):
        # source weight is identically infinite on the sampled grid
        prob = HardyProblem("direct", 2.0, 2.0, constant(0.0),
                            Weight(1, constant(1.0)))
        with pytest.raises(DegenerateRatio):
            best_constant_lower_bound(prob, SMALL)

    def test_embedding_problem_supported(self):
        prob = EmbeddingProblem(
            "lebesgue_to_lm", 1, 2.0, 2.0, 2.0,
            Weight(1, constant(1.0)), Weight(1, constant(1.0)),
            truncated_power(1.0, -1.0, 1.0, None))
        res = best_constant_lower_bound(prob, SMALL)
        # closed-form constant is 1; near-extremal f gets close
        assert 0.9 <= float(res.lower_bound) <= 1.5


class TestDivergenceWitness:
    def test_requires_infinite_constant(self):
        with pytest.raises(ValueError):
            divergence_witness(BENCHMARK, SMALL)

    def test_doubling_growth(self):
        prob = HardyProblem("direct", 2.0, 2.0, PowerProfile(1.0, -2.0),
                            Weight(1, ShiftedPowerProfile(1.0, 1.0, -1.0)))
        assert hardy_A(prob).is_inf
        series, ratios = divergence_witness(prob, SMALL)
        assert len(series) == len(ratios)
        assert any(ratios[i + 4] >= 2.0 * ratios[i]
                   for i in range(len(ratios) - 4))


class TestEquivalenceReport:
    def test_benchmark_report(self):
        rep = equivalence_report(BENCHMARK, SMALL)
        assert rep.ratio_low >= 0.99
        assert "ball" in rep.family_ratios

    def test_rejects_infinite_constant(self):
        prob = HardyProblem("direct", 2.0, 2.0, PowerProfile(1.0, -2.0),
                            Weight(1, ShiftedPowerProfile(1.0, 1.0, -1.0)))
        with pytest.raises(ValueError):
            equivalence_report(prob, SMALL)

    def test_json_round_trip(self):
        import json
        rep = equivalence_report(BENCHMARK, SMALL)
        doc = json.loads(rep.to_json())
        assert doc["ratio_low"] == pytest.approx(rep.ratio_low)
