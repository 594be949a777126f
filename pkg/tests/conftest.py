from __future__ import annotations

import random

import hypothesis
from hypothesis import strategies as st

from ncpoly.algebra import Q, octonions, quaternions
from ncpoly.nonassoc import VAR, BracketPolynomial, Const, Mul
from ncpoly.poly import Polynomial

hypothesis.settings.register_profile("default", deadline=None, max_examples=40)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=5)
hypothesis.settings.load_profile("default")

H = quaternions()
O = octonions()

small_q = st.builds(Q, st.integers(-6, 6), st.integers(1, 4))


def elements(algebra, sparse: bool = True):
    coord = st.one_of(st.just(Q(0)), small_q) if sparse else small_q
    return st.lists(coord, min_size=algebra.dim, max_size=algebra.dim).map(algebra.element)


quaternion = elements(H)
octonion = elements(O)
nonzero_quaternion = quaternion.filter(bool)


def random_element(rng: random.Random, algebra, density: float = 0.5):
    return algebra.element([Q(rng.randint(-5, 5), rng.randint(1, 3)) if rng.random() < density else 0
                            for _ in range(algebra.dim)])


def random_polynomial(rng: random.Random, algebra=H, max_degree: int = 4, max_terms: int = 4) -> Polynomial:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0, max_degree)
        term = []
        for _ in range(n + 1):
            e = random_element(rng, algebra)
            term.append(e if e else algebra.one())
        terms.append(tuple(term))
    return Polynomial.from_terms(algebra, terms)


def random_tree(rng: random.Random, algebra, degree: int):
    """A random bracket tree with ``degree`` variable leaves and a few constants."""
    leaves = [VAR] * degree + [Const(random_element(rng, algebra, 0.4) or algebra.basis(rng.randrange(algebra.dim)))
                               for _ in range(rng.randint(0 if degree else 1, 2))]
    rng.shuffle(leaves)
    while len(leaves) > 1:
        n = rng.randrange(len(leaves) - 1)
        leaves[n:n + 2] = [Mul(leaves[n], leaves[n + 1])]
    return leaves[0]


def random_bracket_polynomial(rng: random.Random, algebra=O, max_degree: int = 3,
                              max_terms: int = 4) -> BracketPolynomial:
    terms = [(Q(rng.randint(-3, 3) or 1), random_tree(rng, algebra, rng.randint(0, max_degree)))
             for _ in range(rng.randint(1, max_terms))]
    return BracketPolynomial(algebra, tuple(terms))


seeds = st.integers(0, 2**32 - 1)


def pytest_terminal_summary(terminalreporter):
    results: dict[str, bool] = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(report, "user_properties", ()))
            if "criterion" in props and (report.when == "call" or outcome != "passed"):
                name = props["criterion"]
                results[name] = results.get(name, True) and outcome == "passed"
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(f"[{'PASS' if results[name] else 'FAIL'}] {name}")
