"""Shared fixtures: synthetic income files standing in for survey data."""

import numpy as np
import pandas as pd
import pytest

from tfep.distributions import Lognormal, Seed, sample

INCOME_N = 1122


@pytest.fixture
def incomes() -> np.ndarray:
    """Right-skewed incomes with a mean in the hundreds of thousands."""
    return sample(Lognormal(mu=12.4, sigma=1.2), INCOME_N, Seed(master=1122))


@pytest.fixture
def income_csv(tmp_path, incomes):
    """CSV with an id column and an income column, one row per household."""
    path = tmp_path / "incomes.csv"
    pd.DataFrame({"household": np.arange(1, INCOME_N + 1), "income": incomes}).to_csv(
        path, index=False, float_format="%.17g"
    )
    return path


@pytest.fixture
def second_income_csv(tmp_path):
    """A second, lighter-tailed income file."""
    values = sample(Lognormal(mu=12.0, sigma=0.8), 900, Seed(master=900))
    path = tmp_path / "incomes2.csv"
    pd.DataFrame({"income": values}).to_csv(path, index=False, float_format="%.17g")
    return path


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    """Tests choose their seeds explicitly."""
    monkeypatch.delenv("TFEP_SEED", raising=False)
