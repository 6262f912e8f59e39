import pytest

from decrement import EpistemicState, Signature, TotalPreorder


@pytest.fixture
def sig2():
    return Signature(("a", "b"))


@pytest.fixture
def psi1(sig2):
    # Worked-example state: layer0 {ab}, layer1 {-a b}, layer2 {a -b, -a -b}
    # World ints: 00=0, 10=1, 01=2, 11=3.
    return EpistemicState(sig2, TotalPreorder((2, 2, 1, 0)))


@pytest.fixture
def flat2(sig2):
    return EpistemicState(sig2, TotalPreorder((0, 0, 0, 0)))


@pytest.fixture
def conflict2(sig2):
    # Mixed bottom layer: [[11, 01], [00], [10]]
    return EpistemicState(sig2, TotalPreorder((1, 2, 0, 0)))
