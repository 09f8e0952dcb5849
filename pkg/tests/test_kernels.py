import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wpscoh import _kernels
from wpscoh.weights import lj_sequence

coords = st.lists(st.integers(1, 40), min_size=1, max_size=8)


@given(coords)
@settings(max_examples=200, deadline=None)
def test_numpy_matches_reference(c):
    assert [int(v) for v in _kernels.subset_lcms_numpy(np.array(c))] == _kernels.subset_lcms_python(c)


numba = pytest.importorskip("numba")


@given(coords)
@settings(max_examples=100, deadline=None)
def test_numba_matches_reference(c):
    assert [int(v) for v in _kernels.subset_lcms_numba(np.array(c))] == _kernels.subset_lcms_python(c)


def test_flag_selects_path(monkeypatch):
    monkeypatch.setenv("WPSCOH_NUMBA", "1")
    assert _kernels.numba_requested()
    assert lj_sequence((3, 4, 5)) == (60, 60)
    monkeypatch.setenv("WPSCOH_NUMBA", "0")
    assert not _kernels.numba_requested()
    assert lj_sequence((3, 4, 5)) == (60, 60)


def test_big_inputs_stay_exact():
    big = [2**40 + 1, 2**40 + 3, 3**20]
    assert _kernels.subset_lcms(big) == _kernels.subset_lcms_python(big)
