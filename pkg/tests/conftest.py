import random
import warnings

import pytest

from imgroups.core import AutomatonSpec, free_reduce
from imgroups.kneading import KneadingGroup

K0 = AutomatonSpec.from_states([("a1", None, "a2", True), ("a2", "a1", None, False)], family="kv")


def random_word(rng: random.Random, spec: AutomatonSpec, max_len: int, min_len: int = 0):
    """Uniform length in [min_len, max_len], uniform letters; reduced afterwards."""
    length = rng.randint(min_len, max_len)
    signs = (1,) if spec.involutive else (1, -1)
    raw = [(rng.randrange(len(spec)), rng.choice(signs)) for _ in range(length)]
    return free_reduce(raw, spec.involutive)


def group(name: str) -> KneadingGroup:
    """``"0"`` for K_0, ``"1,10"`` for K_{1,10}."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if "," in name:
            w, v = name.split(",")
            return KneadingGroup.kwv(w, v)
        return KneadingGroup.kv(name)


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance reporting: one line per criterion, shown even when output is captured
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}: {detail}")
