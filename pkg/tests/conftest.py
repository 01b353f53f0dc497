import random
from itertools import combinations

import pytest

from gsss.access import AccessStructure
from gsss.scheme import deal

NAMES = "ABCDEFGH"


def all_nonempty_subsets(participants):
    for size in range(1, len(participants) + 1):
        for combo in combinations(participants, size):
            yield frozenset(combo)


def random_structure(rng: random.Random, max_n=6, max_k=8) -> AccessStructure:
    n = rng.randint(1, max_n)
    participants = NAMES[:n]
    pool = list(all_nonempty_subsets(participants))
    k = rng.randint(1, min(max_k, len(pool)))
    return AccessStructure.from_sets(participants, rng.sample(pool, k))


def random_instances(count, seed=2024, bits=16):
    rng = random.Random(seed)
    for i in range(count):
        structure = random_structure(rng)
        secret = rng.getrandbits(64)
        yield structure, secret, deal(structure, secret, bits, f"instance-{seed}-{i}".encode())


@pytest.fixture
def worked():
    structure = AccessStructure.from_sets("ABC", [{"A", "B"}, {"B", "C"}])
    return deal(structure, 42, 2, b"worked", primes={"A": 2, "B": 3, "C": 5})


@pytest.fixture
def worked_cubic():
    structure = AccessStructure.from_sets("ABC", [{"A", "B"}, {"B", "C"}, {"A", "C"}])
    return deal(structure, 42, 2, b"worked", primes={"A": 2, "B": 3, "C": 5})


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results:
        terminalreporter.write_line(line)
