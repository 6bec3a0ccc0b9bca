import pytest

from pfw.lattice import Poset, frame_from_poset, two
from pfw.frith import FrithFrame
from pfw.pervin import PervinSpace


@pytest.fixture(scope="session")
def TWO():
    return two()


@pytest.fixture(scope="session")
def C3():
    """The three-element chain 0 < m < 1 (m at index 1)."""
    return frame_from_poset(Poset.from_pairs(("x", "y"), [("x", "y")]), names=("0", "m", "1"))


@pytest.fixture(scope="session")
def D4():
    """The diamond 2x2 with atoms a, b."""
    return frame_from_poset(Poset(2, (1, 2), names=("a", "b")), names=("0", "a", "b", "1"))


@pytest.fixture(scope="session")
def B3():
    """The eight-element Boolean frame on three atoms."""
    return frame_from_poset(Poset(3, (1, 2, 4), names=("a", "b", "c")))


@pytest.fixture(scope="session")
def sierpinski():
    return PervinSpace(("x", "y"), (0b00, 0b01, 0b11))


@pytest.fixture(scope="session")
def indiscrete2():
    return PervinSpace(("x", "y"), (0b00, 0b11))


@pytest.fixture(scope="session")
def discrete2():
    return PervinSpace(("x", "y"), (0b00, 0b01, 0b10, 0b11))


@pytest.fixture(scope="session")
def F_TWO(TWO):
    return FrithFrame.whole(TWO)


@pytest.fixture(scope="session")
def F_C3(C3):
    return FrithFrame.whole(C3)


@pytest.fixture(scope="session")
def F_D4(D4):
    return FrithFrame.whole(D4)
