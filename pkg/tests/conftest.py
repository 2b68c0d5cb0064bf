from pathlib import Path

import pytest

from tmeshdim.errors import Infeasible
from tmeshdim.hierarchy import random_hmesh
from tmeshdim.io import parse_mesh_file

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: dict[int, str] = {}


def load(name: str):
    return parse_mesh_file((DATA / name).read_bytes())


def meshes(count: int, **kw):
    """The first ``count`` feasible random_hmesh outputs over seeds 1, 2, ..."""
    out, seed = [], 0
    while len(out) < count:
        seed += 1
        if seed > 50 * count:
            raise RuntimeError(f"generator too often infeasible for {kw}")
        try:
            out.append(random_hmesh(seed, **kw))
        except Infeasible:
            pass
    return out


@pytest.fixture(scope="session")
def tmesh():
    return load("tmesh_two_tledges.json")


@pytest.fixture(scope="session")
def two_level():
    return load("two_level.json")


@pytest.fixture(scope="session")
def plus_pattern():
    return load("plus_pattern.json")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
