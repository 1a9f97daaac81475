from collections import defaultdict

import pytest

from uspm.datasets import load_toy
from uspm.io import GenConfig, generate, synthesize
from uspm.model import MiningParams

TOY_PARAMS = MiningParams(min_sup=0.2, mu=0.7, wgt_fct=1.0)

CRITERIA = {
    1: "initial mining of the toy database",
    2: "candidate set before verification",
    3: "uWSInc replay of the toy increments",
    4: "uWSInc+ replay of the toy increments",
    5: "miner equals oracle on 200 random databases",
    6: "bound properties on the random corpus",
    7: "cap bound never generates more candidates than top",
    8: "SupCalc equals exact WES on 50 random tries",
    9: "incremental soundness and dominance on 50 replays",
    10: "byte-identical CLI output across repeated runs",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.fixture(scope="session")
def toy():
    initial, weights, deltas = load_toy()
    return initial, weights, deltas


@pytest.fixture(scope="session")
def toy_params():
    return TOY_PARAMS


def random_case(seed, max_sequences=10, max_events=5, max_alphabet=6):
    """Deterministic small database, weights and mining parameters for one seed."""
    from uspm.io import XorShift64Star

    rng = XorShift64Star(seed * 7919 + 1)
    n = rng.randint(1, max_sequences)
    alpha = rng.randint(2, max_alphabet)
    precise = synthesize(n, max_events, alpha, seed=seed)
    db, weights = generate(precise, GenConfig(seed=seed))
    min_sup = (0.15, 0.2, 0.3, 0.4, 0.5)[rng.randint(0, 4)]
    mu = (1.0, 0.8, 0.6)[rng.randint(0, 2)]
    return db, weights, MiningParams(min_sup=min_sup, mu=mu)


@pytest.fixture(scope="session")
def corpus():
    return [random_case(seed) for seed in range(200)]


_outcomes = defaultdict(list)


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        state = "xfail" if hasattr(report, "wasxfail") else report.outcome
        _outcomes[crit].append(state)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        states = _outcomes.get(n)
        if not states:
            line = "NOT RUN"
        elif all(s == "passed" for s in states):
            line = "PASS"
        elif "failed" in states:
            line = "FAIL"
        elif "xfail" in states:
            line = "FAIL (a literal sub-check is unattainable; see decisions ledger)"
        else:
            line = "INCOMPLETE (" + ",".join(sorted(set(states))) + ")"
        terminalreporter.write_line(f"criterion {n:2d} {line:<5} {title}")
