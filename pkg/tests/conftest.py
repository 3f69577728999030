import pytest

from sinespline import FitConfig, fit, generate_synthetic, get_preset


@pytest.fixture(scope="session")
def benchmark():
    """Seed-0 benchmark realization; frozen dataclass, safe to share."""
    return generate_synthetic(get_preset("benchmark"))


@pytest.fixture(scope="session")
def benchmark_fit(benchmark):
    spec = benchmark.spec
    config = FitConfig(sspec=spec.sspec, harmonics=spec.harmonics)
    ds = benchmark.dataset
    return fit(ds.x, ds.y, config)
