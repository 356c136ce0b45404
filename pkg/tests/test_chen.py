import pytest

from helpers import (
    CYCLES,
    chen_word,
    oracle_act_generator,
    random_prefix,
    random_element,
    rng,
    setup,
    strip_to_prefix,
    words,
)
from lpa.algebra import Monomial
from lpa.chen import IDENTITY, ChenModule, SigmaNormalPrefix
from lpa.division import chen_module
from lpa.errors import PreconditionError

FIXTURES = list(CYCLES)


def test_sigma_normalize_examples():
    E, A, c = setup("R_2")
    M = ChenModule(A, c)
    assert M.sigma_normalize(E.path("d", "c", "d", "c", "c")) == SigmaNormalPrefix(0, ("d", "c", "d"))
    assert M.sigma_normalize(E.path("c", "c", "d")) == SigmaNormalPrefix(2, ("d",))
    E1, A1, c1 = setup("R_1")
    assert ChenModule(A1, c1).sigma_normalize(E1.path("c", "c", "c", "c", "c")) == IDENTITY
    Es, As, cs = setup("G_S")
    with pytest.raises(PreconditionError):
        ChenModule(As, cs).sigma_normalize(Es.path("h"))


def test_act_examples():
    _, A, c = setup("R_1")
    M = ChenModule(A, c)
    assert M.act(A.parse("c*"), M.basis()) == M.basis()
    _, A, c = setup("G_E1")
    M = ChenModule(A, c)
    assert str(M.act(A.parse("e"), M.basis())) == "e.c^inf"
    assert M.rho_cinf(A.parse("u")) == 0
    _, A, c = setup("R_2")
    M = ChenModule(A, c)
    assert M.act(A.parse("d*"), M.basis()) == 0
    assert M.rho_cinf(A.one()) == M.basis()
    assert M.rho_cinf(A.parse("c - 1")) == 0


def test_sigma_examples():
    E, A, c = setup("G_E1")
    M = ChenModule(A, c)
    assert M.sigma(M.basis()) == A.one()
    assert M.sigma(M.basis_from_path(E.path("e")).scale(2)) == A.parse("2 e")
    assert M.sigma(M.zero()) == 0


def test_basic_closed_required():
    E, A, _ = setup("R_1")
    with pytest.raises(PreconditionError):
        ChenModule(A, E.path("c", "c"))


@pytest.mark.parametrize("name", FIXTURES)
def test_generators_match_word_oracle(name):
    E, A, c = setup(name)
    M = chen_module(A, c)
    r = rng(11)
    gens = [("vertex", v) for v in E.vertices]
    gens += [("edge", e.name) for e in E.edges] + [("ghost", e.name) for e in E.edges]
    for _ in range(60):
        p = random_prefix(M, r)
        word = chen_word(M, p)
        for kind, g in gens:
            x = {"vertex": A.vertex, "edge": A.edge, "ghost": A.ghost}[kind](g)
            got = M.act(x, M.basis(p))
            w = oracle_act_generator(E, kind, g, word)
            want = M.zero() if w is None else M.basis(strip_to_prefix(M, w))
            assert got == want, (kind, g, p)


@pytest.mark.parametrize("name", FIXTURES)
def test_action_is_a_module_action(name):
    E, A, c = setup(name)
    M = chen_module(A, c)
    r = rng(12)
    for _ in range(40):
        x = random_element(A, r, max_terms=3, max_degree=4)
        y = random_element(A, r, max_terms=3, max_degree=4)
        u = M.basis(random_prefix(M, r)) + M.basis(random_prefix(M, r)).scale(3)
        assert M.act(x * y, u) == M.act(x, M.act(y, u))
        assert M.act(x + y, u) == M.act(x, u) + M.act(y, u)
        assert M.act(A.one(), u) == u
        assert M.rho_cinf(x * (A.path_element(c) - 1)) == 0


@pytest.mark.parametrize("name", FIXTURES)
def test_sigma_rho_inverse(name):
    E, A, c = setup(name)
    M = chen_module(A, c)
    r = rng(13)
    for _ in range(40):
        u = M.zero()
        for _ in range(r.randint(0, 3)):
            u = u + M.basis(random_prefix(M, r)).scale(r.randint(-3, 3))
        g = M.sigma(u)
        assert M.rho_cinf(g) == u
        assert M.sigma(M.rho_cinf(g)) == g


@pytest.mark.parametrize("name", ["R_2", "G_E1", "G_C2z"])
def test_cyclic_generation(name):
    E, A, c = setup(name)
    M = chen_module(A, c)
    r = rng(14)
    mons = [Monomial((), (), v) for v in E.vertices]
    for a in list(words(E, 3)) + [()]:
        for b in list(words(E, 3)) + [()]:
            if (a or b):
                va = E.dst(a[-1]) if a else None
                vb = E.dst(b[-1]) if b else None
                v = va or vb
                if (va is None or va == v) and (vb is None or vb == v):
                    mons.append(Monomial(a, b, v))
    # words of length <= 2 are reached by monomials of length <= 3
    for _ in range(10):
        p, q = random_prefix(M, r, 2, 0), random_prefix(M, r, 2, 0)
        target = M.basis(q)
        assert any(M.act(A.from_terms([(m, 1)]), M.basis(p)) == target for m in mons), (p, q)
