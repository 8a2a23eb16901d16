import pytest
from hypothesis import settings, strategies as st

from epsforest import forest as fo
from epsforest.epscore import forest_instance
from epsforest.forest import Forest, Tree
from epsforest.textio import parse_forest

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# Greek letters renamed: alpha->a, beta->b, gamma->g, omega->w
WORKED = fo.Alphabet(X=("x", "y"), Omega=("a", "b", "g", "w"))
SMALL = fo.Alphabet(X=("x", "y"), Omega=("a", "b"))


@pytest.fixture
def alphabet():
    return WORKED


@pytest.fixture
def inst():
    return forest_instance(WORKED)


@pytest.fixture
def F():
    return lambda s: parse_forest(s, WORKED)


def trees(alphabet=SMALL, max_leaves=6):
    leaves = st.sampled_from(
        [fo.xdec(x) for x in alphabet.X] + [fo.odec(w) for w in alphabet.Omega]
    ).map(Tree)
    return st.recursive(
        leaves,
        lambda kids: st.builds(
            Tree, st.sampled_from([fo.odec(w) for w in alphabet.Omega]), st.lists(kids, max_size=3)
        ),
        max_leaves=max_leaves,
    )


def forests(alphabet=SMALL, max_trees=3, max_leaves=4):
    return st.lists(trees(alphabet, max_leaves), max_size=max_trees).map(Forest)


def small_forests(max_vertices=6, alphabet=SMALL):
    return forests(alphabet, max_trees=3, max_leaves=3).filter(
        lambda f: fo.vertex_count(f) <= max_vertices
    )


# -- acceptance summary ---------------------------------------------------------

_CRITERIA: dict[int, tuple[str, list[str]]] = {}
_MARKS: dict[str, tuple[int, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _MARKS.get(report.nodeid)
    if marker is None:
        return
    n, title = marker
    _CRITERIA.setdefault(n, (title, []))[1].append(report.outcome)



def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKS[item.nodeid] = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[n]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title} ({len(outcomes)} tests)")
