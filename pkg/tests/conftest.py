import time
from pathlib import Path

import pytest

from enriques import classify

GOLDEN = Path(__file__).parent / "golden"


def format_entry(e):
    triple = ",".join(str(t) for t in e.triple)
    row = (f"({triple}) variant {e.variant}: n={e.glued.size()} "
           f"rank={e.rank} disc={e.disc}")
    if e.verdict is not None:
        row += f" {e.verdict}"
    return row


@pytest.fixture(scope="session")
def timings():
    return {}


@pytest.fixture(scope="session")
def census(timings):
    t0 = time.perf_counter()
    out = classify.enumerate_triangles()
    timings["census"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def filtered(census, timings):
    t0 = time.perf_counter()
    out = classify.discriminant_filter(census)
    timings["filter"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def resolved(filtered):
    return classify.derive_survivors(filtered)


@pytest.fixture(scope="session")
def survivors(resolved):
    return [e for e in resolved if isinstance(e.verdict, classify.Survivor)]
