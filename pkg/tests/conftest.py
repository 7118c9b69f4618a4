import hypothesis.strategies as st
from hypothesis import settings

from cantorkit.permutations import Perm
from cantorkit.sdl.terms import BinOp, DivLit, If, Lit, Parity, Var

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def exprs(names=("i",), max_leaves=12):
    leaves = st.one_of(
        st.integers(min_value=0, max_value=20).map(Lit),
        st.sampled_from(names).map(Var),
    )

    def grow(children):
        return st.one_of(
            st.builds(BinOp, st.sampled_from(("add", "sub", "mul", "eq", "lt", "bit")), children, children),
            st.builds(DivLit, st.sampled_from(("div", "mod")), children, st.integers(min_value=1, max_value=7)),
            st.builds(If, children, children, children),
            st.builds(Parity, children),
        )

    return st.recursive(leaves, grow, max_leaves=max_leaves)


@st.composite
def perms(draw, max_bound=7):
    m = draw(st.integers(min_value=0, max_value=max_bound))
    table = draw(st.permutations(list(range(m))))
    return Perm.from_table(table)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
