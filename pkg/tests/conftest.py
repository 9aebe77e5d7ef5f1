import hypothesis
from hypothesis import strategies as st

from freefield.core import EVEN, ODD, Element, Monomial, Signature, Variable
from freefield.poly import Poly

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@st.composite
def signatures(draw, affine=False, max_size=5):
    m = draw(st.integers(1, max_size))
    n = draw(st.integers(0, max_size - m))
    return Signature(m, n, affine)


@st.composite
def monomials(draw, sig, max_degree=5, modes=(-2, 2)):
    lo, hi = modes if sig.affine else (0, 0)
    evens = [Variable(EVEN, i) for i in range(2, sig.m + 1)]
    odds = [Variable(ODD, k) for k in range(1, sig.n + 1)]
    mode = st.integers(lo, hi)
    exps: dict = {}
    budget = draw(st.integers(0, max_degree))
    odd_part = set()
    for _ in range(budget):
        pool = evens + odds
        if not pool:
            break
        v = draw(st.sampled_from(pool))
        v = Variable(v.parity, v.index, draw(mode))
        if v.parity == EVEN:
            exps[v] = exps.get(v, 0) + 1
        else:
            odd_part.add(v)
    return Monomial(tuple(sorted(exps.items())), tuple(sorted(odd_part)))


coeffs = st.builds(lambda a, b: Poly([a, b]), st.integers(-4, 4), st.integers(-2, 2))


@st.composite
def elements(draw, sig, max_degree=5, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(monomials(sig, max_degree))] = draw(coeffs)
    return Element(terms)


@st.composite
def sig_and_element(draw, affine=False):
    sig = draw(signatures(affine=affine))
    return sig, draw(elements(sig))


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
