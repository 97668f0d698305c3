import pytest

from dgoim.parser import parse, parse_term

ID_ID = r"(\x. x) (\z. z)"
K_ID = r"(\x. \y. y) (\z. z)"
DUP = r"(\x. x x) (\y. y)"
OMEGA = r"(\x. x x) (\y. y y)"


@pytest.fixture
def p():
    return parse


@pytest.fixture
def pt():
    return parse_term
