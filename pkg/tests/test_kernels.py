import pytest
from hypothesis import given

from modhom import kernels
from modhom.homs import count_homs, count_inj

from helpers import graphs


@pytest.fixture
def restore_backend():
    old = kernels.get_backend()
    yield
    kernels.set_backend(old)


def test_unknown_backend_rejected(restore_backend):
    with pytest.raises(ValueError):
        kernels.set_backend("gpu")


@pytest.mark.skipif(not kernels.NATIVE_AVAILABLE, reason="native kernel not built")
@given(graphs(max_n=5), graphs(max_n=4))
def test_native_matches_python(g, h):
    try:
        kernels.set_backend("python")
        slow = (count_homs(g, h).value, count_inj(g, h).value)
        kernels.set_backend("native")
        fast = (count_homs(g, h).value, count_inj(g, h).value)
    finally:
        kernels.set_backend("auto")
    assert slow == fast


def test_python_backend_always_available(restore_backend):
    kernels.set_backend("python")
    from modhom import families as F
    assert count_homs(F.complete_graph(2), F.cycle_graph(4)).value == 8
