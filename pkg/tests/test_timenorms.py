"""Weighted trajectory norms and the admissibility window arithmetic."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperheat import (ModelParams, ParameterError, SpaceParams, TimeWeight,
                       Trajectory, admissibility, a_norm, cosine_mode,
                       equivalence_check, log_time_grid, weighted_norm)


def power_trajectory(grid, beta, T, per_decade=128):
    """u(t) = t^beta cos(4x): spatial norm K t^beta with constant K."""
    f = cosine_mode(grid, (4,))
    times = log_time_grid(T * 1e-4, T, per_decade=per_decade)
    fields = [float(t) ** beta * f for t in times]
    return Trajectory(tuple(times), tuple(fields)), f


class TestTimeWeight:
    def test_validation(self):
        with pytest.raises(ParameterError):
            TimeWeight(b=math.nan, v=1.0, T=1.0)
        with pytest.raises(ParameterError):
            TimeWeight(b=0.1, v=0.4, T=1.0)
        with pytest.raises(ParameterError):
            TimeWeight(b=0.1, v=1.0, T=0.0)

    def test_inv_v(self):
        assert TimeWeight(b=0.0, v=2.0, T=1.0).inv_v == 0.5
        assert TimeWeight(b=0.0, v=math.inf, T=1.0).inv_v == 0.0

    def test_tempered_flag(self):
        assert TimeWeight(b=-0.5, v=1.0, T=1.0).tempered_ok
        assert not TimeWeight(b=0.0, v=1.0, T=1.0).tempered_ok
        assert TimeWeight(b=0.5, v=math.inf, T=1.0).tempered_ok


class TestTrajectory:
    def test_validation(self, grid1d):
        f = cosine_mode(grid1d, (1,))
        with pytest.raises(ParameterError):
            Trajectory((0.0, 1.0), (f, f))
        with pytest.raises(ParameterError):
            Trajectory((1.0, 0.5), (f, f))
        with pytest.raises(ParameterError):
            Trajectory((), ())

    def test_terminal(self, grid1d):
        f = cosine_mode(grid1d, (1,))
        traj = Trajectory((0.5, 1.0), (f, 2.0 * f))
        assert traj.terminal is traj.fields[-1]
        assert len(traj) == 2


class TestLogTimeGrid:
    def test_endpoints_and_count(self):
        t = log_time_grid(1e-3, 1.0, per_decade=10)
        assert t[0] == pytest.approx(1e-3, rel=1e-12)
        assert t[-1] == pytest.approx(1.0, rel=1e-12)
        assert len(t) == 31

    def test_rejects_bad_range(self):
        with pytest.raises(ParameterError):
            log_time_grid(1.0, 0.5)


class TestWeightedNorm:
    def test_power_law_closed_form(self, grid1d):
        # || t^b K t^beta ||_{L^v dt} ^ v = K^v T^((b+beta)v+1) / ((b+beta)v+1).
        beta, b, v, T = 0.5, 0.25, 2.0, 0.8
        traj, f = power_trajectory(grid1d, beta, T)
        sp = SpaceParams("B", 1.0, 2.0, 2.0)
        K = a_norm(f, sp)
        q = (b + beta) * v
        expect = K * (T ** (q + 1.0) / (q + 1.0)) ** (1.0 / v)
        result = weighted_norm(traj, TimeWeight(b=b, v=v, T=T), sp, v)
        assert result.coverage_ok
        assert result.value == pytest.approx(expect, rel=1e-4)

    def test_sup_norm_form(self, grid1d):
        # v = inf takes the max of t^b ||u(t)||; rising power beta > -b
        # puts the max at the final sample.
        beta, b, T = 0.5, 0.25, 0.8
        traj, f = power_trajectory(grid1d, beta, T)
        sp = SpaceParams("B", 1.0, 2.0, 2.0)
        w = TimeWeight(b=b, v=math.inf, T=T)
        expect = T ** (b + beta) * a_norm(f, sp)
        assert weighted_norm(traj, w, sp, math.inf).value == pytest.approx(
            expect, rel=1e-12)

    def test_homogeneity(self, grid1d):
        traj, _ = power_trajectory(grid1d, 0.0, 1.0, per_decade=16)
        scaled = Trajectory(traj.times, tuple(3.0 * f for f in traj.fields))
        sp = SpaceParams("B", 1.0, 2.0, 2.0)
        w = TimeWeight(b=0.1, v=2.0, T=1.0)
        assert weighted_norm(scaled, w, sp, 2.0).value == pytest.approx(
            3.0 * weighted_norm(traj, w, sp, 2.0).value, rel=1e-12)

    def test_coverage_flag(self, grid1d):
        f = cosine_mode(grid1d, (1,))
        late = Trajectory((0.5, 1.0), (f, f))
        out = weighted_norm(late, TimeWeight(b=0.0, v=1.0, T=1.0),
                            SpaceParams("B", 1.0, 2.0, 2.0), 1.0)
        assert not out.coverage_ok
        assert "cover" in out.note

    def test_rejects_samples_beyond_horizon(self, grid1d):
        f = cosine_mode(grid1d, (1,))
        traj = Trajectory((0.5, 2.0), (f, f))
        with pytest.raises(ParameterError):
            weighted_norm(traj, TimeWeight(b=0.0, v=1.0, T=1.0),
                          SpaceParams("B", 1.0, 2.0, 2.0), 1.0)

    def test_rejects_exponent_below_one(self, grid1d):
        f = cosine_mode(grid1d, (1,))
        traj = Trajectory((0.5, 1.0), (f, f))
        with pytest.raises(ParameterError):
            weighted_norm(traj, TimeWeight(b=0.0, v=1.0, T=1.0),
                          SpaceParams("B", 1.0, 2.0, 2.0), 0.5)


class TestAdmissibility:
    def test_exponent_arithmetic(self):
        # a=1/2, v=1, s=s0, r=2: delta = av - 0 + 1 = 3/2,
        # kappa = av + 2rv - arv - r + 1 = 1/2 + 4 - 1 - 2 + 1 = 5/2.
        m = ModelParams(alpha=1, r=2.0, n=1)
        adm = admissibility(0.5, 1.0, 1.0, 1.0, m, 2.0)
        assert adm.delta == 1.5
        assert adm.kappa == 2.5
        assert adm.admissible

    def test_lower_boundary_gives_delta_zero(self):
        # a + 1/v exactly at r (s - s0) / alpha makes delta vanish.
        m = ModelParams(alpha=2, r=3.0, n=1)
        gap = m.r * 0.5 / m.alpha  # s - s0 = 0.5
        adm = admissibility(gap - 1.0, 1.0, 1.5, 1.0, m, 2.0)
        assert adm.delta == 0.0
        assert not adm.admissible

    def test_infinite_v_conventions(self):
        # At v = inf the stored values are the leading coefficients:
        # delta -> a - gap, kappa -> a(1-r) + 2r.
        m = ModelParams(alpha=1, r=3.0, n=1)
        adm = admissibility(1.0, math.inf, 1.25, 1.0, m, 2.0)
        assert adm.delta == pytest.approx(1.0 - 3.0 * 0.25)
        assert adm.kappa == pytest.approx(1.0 * (1.0 - 3.0) + 6.0)
        assert adm.admissible  # 0.75 < 1.0 < 2

    def test_classification_pins(self):
        m1 = ModelParams(alpha=1, r=3.0, n=2)
        assert admissibility(0.5, 1.0, 0.0, 0.0, m1, 2.0).classification.startswith(
            "critical")
        assert admissibility(0.5, 1.0, 0.5, 0.5, m1, 2.0).classification.startswith(
            "supercritical")
        assert admissibility(0.5, 1.0, -0.5, -0.5, m1, 2.0).classification.startswith(
            "subcritical")

    def test_rejects_bad_arguments(self):
        m = ModelParams(alpha=1, r=3.0, n=1)
        with pytest.raises(ParameterError):
            admissibility(0.5, 1.0, 0.0, 1.0, m, 2.0)   # s < s0
        with pytest.raises(ParameterError):
            admissibility(0.5, 0.5, 1.0, 1.0, m, 2.0)   # v at the open endpoint
        with pytest.raises(ParameterError):
            admissibility(0.5, 1.0, 1.0, 1.0, m, 0.5)   # p < 1


class TestEquivalence:
    def test_agrees_inside_working_range(self):
        # On a + 1/v < 2 the window is equivalent to delta > 0 and kappa > 0.
        rng = np.random.default_rng(101)
        m_cache = {}
        for _ in range(2000):
            alpha = float(rng.choice([1.0, 2.0]))
            r = float(rng.uniform(2.0, 4.0))
            v = float(rng.uniform(0.51, 4.0))
            s0 = float(rng.uniform(-1.0, 1.0))
            s = s0 + float(rng.uniform(0.0, 1.5))
            a = float(rng.uniform(-3.0, 2.0 - 1.0 / v))
            m = m_cache.setdefault((alpha, r), ModelParams(alpha=alpha, r=r, n=1))
            assert equivalence_check(a, v, s, s0, m)

    def test_counterexample_beyond_working_range(self):
        # kappa > 0 is weaker than the upper bound: at a = 2.5, v = 1, r = 2,
        # s = s0 both exponents are positive but a + 1/v = 3.5 >= 2.
        m = ModelParams(alpha=1, r=2.0, n=1)
        assert not equivalence_check(2.5, 1.0, 1.0, 1.0, m)
        adm = admissibility(2.5, 1.0, 1.0, 1.0, m, 2.0)
        assert adm.delta > 0 and adm.kappa > 0 and not adm.admissible

    @settings(max_examples=200, deadline=None)
    @given(a=st.floats(-3.0, 1.0), v=st.floats(0.51, 5.0),
           gap=st.floats(0.0, 1.0), r=st.floats(2.0, 4.0))
    def test_property_sweep(self, a, v, gap, r):
        if a + 1.0 / v >= 2.0:
            return
        m = ModelParams(alpha=1, r=r, n=1)
        assert equivalence_check(a, v, 1.0 + gap, 1.0, m)
