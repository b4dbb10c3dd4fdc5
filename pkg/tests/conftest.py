from hypothesis import strategies as st

from fuzzyshrink import TriangularFuzzyNumber as TFN

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
spread = st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=1e3))


@st.composite
def tfns(draw, centers=finite, spreads=spread):
    return TFN(draw(spreads), draw(centers), draw(spreads))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
