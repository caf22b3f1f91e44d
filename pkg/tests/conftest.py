import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F_GENS = ["x0", "x1", "x2"]
FO_GENS = ["x0 x1", "x1 x2", "x2 x3"]
T_GENS = ["x0", "x1", "c0", "c1", "c2"]


def _letter(gens):
    return st.tuples(st.sampled_from(gens), st.booleans()).map(
        lambda t: " ".join(f"{s}^-1" for s in reversed(t[0].split())) if t[1] else t[0])


def words(gens, max_len=4, min_len=0):
    return st.lists(_letter(gens), min_size=min_len, max_size=max_len).map(" ".join)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import report_lines
    except ImportError:
        return
    lines = report_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
