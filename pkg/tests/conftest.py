"""Shared fixtures plus a per-criterion verdict table for the acceptance tests."""

import random

import pytest

from circuitwalks.polytope import DegenerateHull, VPolygon, hull2d, v_to_h
from circuitwalks.ratgeo import Point2, rat

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    verdict = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    _acceptance.append((report.nodeid.split("::")[-1], verdict))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_acceptance):
        terminalreporter.write_line(f"{verdict}  {name}")


def random_hull(rng: random.Random, max_points: int = 12, bound: int = 100) -> VPolygon:
    """Hull of a few random rational points; retries until it has an interior."""
    while True:
        pts = [
            Point2(
                rat(rng.randint(-bound, bound), rng.randint(1, bound)),
                rat(rng.randint(-bound, bound), rng.randint(1, bound)),
            )
            for _ in range(rng.randint(3, max_points))
        ]
        try:
            return hull2d(pts)
        except DegenerateHull:
            continue


@pytest.fixture
def rng():
    return random.Random(0x5EED)


def random_hpolygon(rng: random.Random, max_points: int = 12, bound: int = 100):
    return v_to_h(random_hull(rng, max_points, bound))
