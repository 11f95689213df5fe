import numpy as np
import pytest
from sklearn.datasets import load_wine

from rangesets.config import SessionConfig


@pytest.fixture(scope="session")
def wine_csv(tmp_path_factory):
    """The UCI wine dataset (178 samples, 13 numeric attributes) plus its
    class column, written as a CSV file."""
    wine = load_wine()
    path = tmp_path_factory.mktemp("data") / "wine.csv"
    names = [n.replace("/", "_") for n in wine.feature_names]
    lines = [",".join(names + ["class"])]
    for row, cls in zip(wine.data, wine.target):
        lines.append(",".join(repr(float(v)) for v in row) + f",class_{cls}")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def wine_matrix():
    return load_wine().data


@pytest.fixture(scope="session")
def wine_config(wine_csv):
    return SessionConfig(dataset=str(wine_csv), epsilon="auto")


@pytest.fixture
def rng():
    return np.random.default_rng(42)
