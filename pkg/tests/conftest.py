import pytest

from countones import Machine, combined_program, dense_program, twobit_program, wegner_program


class NonWrappingIncMachine(Machine):
    """Broken interpreter: INC does not wrap, so registers escape the width."""

    def _inc(self, value, mask):
        return value + 1


class ComplementMovMachine(Machine):
    """Broken interpreter: MOV stores the complement of its source."""

    def _mov(self, value, mask):
        return ~value & mask


@pytest.fixture
def non_wrapping_machine():
    return NonWrappingIncMachine()


@pytest.fixture
def complement_mov_machine():
    return ComplementMovMachine()


@pytest.fixture(scope="session")
def generators():
    """Shipped counting programs per width, built once for the whole run."""
    cache = {}

    def build(width):
        if width not in cache:
            programs = [
                wegner_program(width),
                dense_program(width),
                combined_program(width),
            ]
            if width == 2:
                programs.append(twobit_program())
            cache[width] = programs
        return cache[width]

    return build
