import numpy as np
import pytest

from spfk.dataset import save_ucr
from spfk.fixtures import SyntheticSpec, generate_synthetic


@pytest.fixture(scope="session")
def small_dataset():
    """The canonical 3-class synthetic dataset, 60 series of length 128."""
    return generate_synthetic(SyntheticSpec(seed=0))


@pytest.fixture()
def ucr_file(tmp_path):
    """Write a dataset (default: small 2-class synthetic) as a UCR file."""

    def write(dataset=None, name="synth_TRAIN.tsv"):
        if dataset is None:
            dataset = generate_synthetic(
                SyntheticSpec(classes=2, per_class=8, length=64, seed=5)
            )
        path = tmp_path / name
        save_ucr(dataset, path)
        return path

    return write


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
