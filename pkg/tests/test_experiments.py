"""Experiment runners: dispatch, cheap end-to-end runs, validation paths."""

import dataclasses

import pytest

from hyperheat import (EXPERIMENTS, ConfigError, default_config,
                       run_experiment)
from hyperheat.experiments import RUNNERS


def with_extras(cfg, **overrides):
    extras = dict(cfg.extras)
    extras.update({k: str(v) for k, v in overrides.items()})
    return dataclasses.replace(cfg, extras=extras)


class TestDispatch:
    def test_every_experiment_has_a_runner(self):
        assert set(RUNNERS) == set(EXPERIMENTS)

    def test_record_carries_identity(self):
        cfg = with_extras(default_config("sweep"), tuples=200)
        rec = run_experiment(cfg)
        assert rec.experiment == "sweep"
        assert rec.seed == cfg.seed
        assert len(rec.config_digest) == 16


class TestCheapRunners:
    def test_criticality_pins(self):
        rec = run_experiment(default_config("criticality"))
        assert rec.passed
        assert rec.metrics["pin_n2_p2_alpha1_r3"] == 0.0
        assert rec.metrics["pin_n4_p2_alpha2_r2"] == -2.0
        table = rec.series["criticality_table"]
        # 3 dimensions x 3 integrabilities x 2 orders x 2 powers.
        assert len(table.rows) == 36

    def test_sweep_agreement(self):
        rec = run_experiment(with_extras(default_config("sweep"), tuples=2000))
        assert rec.passed
        assert rec.metrics["equivalence_agreement"] == 1.0
        assert rec.metrics["tuples_tested"] == 2000.0

    def test_sweep_determinism(self):
        cfg = with_extras(default_config("sweep"), tuples=300)
        assert run_experiment(cfg).to_json_dict() == run_experiment(cfg).to_json_dict()

    def test_seed_changes_sweep_sample(self):
        base = with_extras(default_config("sweep"), tuples=300)
        other = dataclasses.replace(base, seed=base.seed + 1)
        a = run_experiment(base).series["sweep_sample"]
        b = run_experiment(other).series["sweep_sample"]
        assert a.rows != b.rows


class TestValidation:
    def test_sweep_rejects_v_range_at_half(self):
        cfg = with_extras(default_config("sweep"), v_range="0.5,4")
        with pytest.raises(ConfigError):
            run_experiment(cfg)

    def test_smoothing_rejects_empty_pairs(self):
        cfg = with_extras(default_config("smoothing"), pairs="")
        with pytest.raises(ConfigError):
            run_experiment(cfg)

    def test_scaling_rejects_fractional_factor(self):
        cfg = with_extras(default_config("scaling"), rescale_factor="2.5")
        with pytest.raises(ConfigError):
            run_experiment(cfg)

    def test_scaling_rejects_inconsistent_grids(self):
        # factor x rescaled_points must reproduce the base grid exactly.
        cfg = with_extras(default_config("scaling"), rescaled_points=16)
        with pytest.raises(ConfigError):
            run_experiment(cfg)

    def test_solve_rejects_zero_strong_levels(self):
        cfg = with_extras(default_config("solve"), strong_levels=0)
        with pytest.raises(ConfigError):
            run_experiment(cfg)
