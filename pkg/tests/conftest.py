import pytest

from abspec.molecule import MoleculeSpec


@pytest.fixture
def unit_mol():
    """Molecule with hbar_omega0 = 1 eV, so energies read directly in units of hw."""
    return MoleculeSpec(1.0, 1.0, 1.0, name="unit")


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the line is printed in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(number, title, ok, detail=""):
        lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
                     + (f"  [{detail}]" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
