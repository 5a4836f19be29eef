import pytest

from alphatest.harness import ScenarioConfig, replicate_details

# master seeds for the frozen Monte Carlo batches
M3_NULL_SEED = 11
M1_NULL_SEED = 101


@pytest.fixture(scope="session")
def m3_null_details():
    """2000 null replications of Model 3 / normal / N=200 / T=100.

    Shared by the null-size, Fisher-law and independence checks so the
    batch is simulated once per session.
    """
    scenario = ScenarioConfig(
        n=200, t=100, cov_model="M3", error_dist="normal", m=0, seed=M3_NULL_SEED
    )
    return replicate_details(scenario, 0, 2000)


@pytest.fixture(scope="session")
def m1_null_rejections():
    """1000 null replications of Model 1 / normal / N=200 / T=100."""
    scenario = ScenarioConfig(
        n=200, t=100, cov_model="M1", error_dist="normal", m=0, seed=M1_NULL_SEED
    )
    details = replicate_details(scenario, 0, 1000)
    return {
        name: [d[name].reject for d in details]
        for name in ("PY", "MAX1", "MAX2", "FC1", "FC2")
    }
