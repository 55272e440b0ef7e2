"""Both walk-enumeration kernels must agree exactly."""

import random

import pytest

from cyclekit import _walks_py
from cyclekit._kernels import KERNEL, enumerate_closed_walks

from helpers import closed_walks_oracle, random_digraph

try:
    from cyclekit import _walks_c
except ImportError:
    _walks_c = None

IMPLEMENTATIONS = [("python", _walks_py.enumerate_closed_walks)]
if _walks_c is not None:
    IMPLEMENTATIONS.append(("compiled", _walks_c.enumerate_closed_walks))


@pytest.mark.parametrize("name,impl", IMPLEMENTATIONS)
def test_matches_oracle(name, impl):
    rng = random.Random(20)
    for _ in range(40):
        g = random_digraph(rng, 6)
        for n in range(1, 6):
            got = impl(g.successors(), n, None)
            assert got == sorted(closed_walks_oracle(g, n))


@pytest.mark.parametrize("name,impl", IMPLEMENTATIONS)
def test_output_is_lexicographic(name, impl):
    rng = random.Random(21)
    for _ in range(20):
        g = random_digraph(rng, 7, 0.3, 0.6)
        walks = impl(g.successors(), 4, None)
        assert walks == sorted(walks)
        assert len(set(walks)) == len(walks)


@pytest.mark.parametrize("name,impl", IMPLEMENTATIONS)
def test_cap(name, impl):
    g = random_digraph(random.Random(22), 6, 0.5, 0.9)
    walks = impl(g.successors(), 5, None)
    if len(walks) > 3:
        with pytest.raises(_walks_py.WalkCapExceeded):
            impl(g.successors(), 5, 3)
    assert impl(g.successors(), 5, len(walks)) == walks


@pytest.mark.parametrize("name,impl", IMPLEMENTATIONS)
def test_empty_and_single(name, impl):
    assert impl((), 3, None) == []
    assert impl(((0,),), 1, None) == [(0,)]
    assert impl(((0,),), 4, None) == [(0, 0, 0, 0)]


@pytest.mark.skipif(_walks_c is None, reason="compiled kernel not built")
def test_implementations_agree():
    rng = random.Random(23)
    for _ in range(50):
        g = random_digraph(rng, 8, 0.2, 0.6)
        for n in (1, 2, 3, 5, 7):
            assert _walks_c.enumerate_closed_walks(g.successors(), n, None) == \
                _walks_py.enumerate_closed_walks(g.successors(), n, None)


def test_selected_kernel_is_exported():
    assert KERNEL in ("python", "compiled")
    assert callable(enumerate_closed_walks)
