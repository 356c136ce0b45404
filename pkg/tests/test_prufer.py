import pytest

from helpers import CYCLES, SOURCE_LOOPS, random_element, rng, setup
from lpa.algebra import LeavittPathAlgebra
from lpa.division import ann_U_membership
from lpa.errors import NoSolutionError, PreconditionError
from lpa.graph import Graph, fixture
from lpa.prufer import (
    act_prufer,
    classify_injectivity,
    embed,
    endo_apply,
    make_element,
    prufer_module,
    quotient_shift,
    shift_iso,
    solve_divisibility,
    submodule_level,
)
from lpa.series import TruncatedPowerSeries as T
from lpa.series import series_mul

FIXTURES = list(CYCLES)


def module(name):
    E, A, c = setup(name)
    return E, A, c, prufer_module(A, c)


def random_u(P, r, max_level=6):
    """Random element of U at level <= max_level, with G-coefficients from random divisions."""
    A = P.algebra
    n = r.randint(1, max_level)
    x = random_element(A, r, max_terms=3, max_degree=4)
    return P.element(P.make_element(x, n))


def random_scalar_u(P, r, max_level=6):
    n = r.randint(1, max_level)
    return P.from_coefficients([r.randint(-3, 3) for _ in range(n)])


def test_make_and_embed():
    E, A, c, P = module("R_1")
    a1 = P.make_element(A.one(), 1)
    assert [str(g) for g in embed(a1, 3).coefficients] == ["0", "0", "1"]
    assert [str(g) for g in make_element(A.one(), c, 2).coefficients] == ["1", "0"]
    u = P.make_element(A.parse("c^2"), 3)
    assert embed(u, 3) == u
    with pytest.raises(PreconditionError):
        embed(u, 2)
    # embedding is right multiplication by (c - 1)^k
    cm1 = A.path_element(c) - 1
    assert embed(u, 5) == P.make_element(u.representative() * cm1 ** 2, 5)


@pytest.mark.parametrize("name", FIXTURES)
def test_alpha_relations(name):
    E, A, c, P = module(name)
    cm1 = A.path_element(c) - 1
    assert act_prufer(cm1, P.alpha(3)) == P.alpha(2)
    assert act_prufer(cm1, P.alpha(1)) == 0
    assert submodule_level(P.alpha(3)) == 3
    assert submodule_level(P.alpha(3) + P.alpha(1).scale(2)) == 3
    assert submodule_level(P.zero()) == 0


def test_quotient_shift_examples():
    _, _, _, P = module("R_2")
    a = P.alpha
    assert quotient_shift(a(3), 1) == a(2)
    assert quotient_shift(a(1), 1) == 0
    assert quotient_shift(a(2) + a(1), 1) == a(1)


@pytest.mark.parametrize("name", SOURCE_LOOPS)
def test_level_law(name):
    E, A, c, P = module(name)
    cm1 = A.path_element(c) - 1
    r = rng(31)
    for _ in range(30):
        u = random_u(P, r)
        assert submodule_level(act_prufer(cm1, u)) == max(u.level - 1, 0)
        # level agrees with the least power of c - 1 that kills u
        i, y = 0, u
        while not y.is_zero():
            y, i = act_prufer(cm1, y), i + 1
        assert i == u.level


def test_c_minus_one_does_not_kill_socle_off_source_loops():
    E, A, c, P = module("R_2")
    u = P.from_coefficients([A.parse("d")])
    cm1 = A.path_element(c) - 1
    assert u.level == 1
    assert act_prufer(cm1, u) == P.from_coefficients([A.parse("c.d - d")])


@pytest.mark.parametrize("name", FIXTURES)
def test_levels_form_submodules(name):
    E, A, c, P = module(name)
    r = rng(37)
    for _ in range(30):
        u = random_u(P, r)
        x = random_element(A, r, max_terms=3, max_degree=3)
        assert submodule_level(act_prufer(x, u)) <= u.level


@pytest.mark.parametrize("name", FIXTURES)
def test_module_axioms(name):
    E, A, c, P = module(name)
    r = rng(32)
    for _ in range(20):
        x = random_element(A, r, max_terms=3, max_degree=3)
        y = random_element(A, r, max_terms=3, max_degree=3)
        u, v = random_u(P, r, 4), random_u(P, r, 4)
        assert act_prufer(x * y, u) == act_prufer(x, act_prufer(y, u))
        assert act_prufer(x, u + v) == act_prufer(x, u) + act_prufer(x, v)
        assert act_prufer(A.one(), u) == u


@pytest.mark.parametrize("name", FIXTURES)
def test_quotient_law(name):
    E, A, c, P = module(name)
    r = rng(33)
    for _ in range(20):
        x = random_element(A, r, max_terms=3, max_degree=3)
        u = random_u(P, r)
        i = r.randint(1, 4)
        assert quotient_shift(act_prufer(x, u), i) == act_prufer(x, quotient_shift(u, i))
        assert (quotient_shift(u, i) == 0) == (submodule_level(u) <= i)


@pytest.mark.parametrize("name", SOURCE_LOOPS)
def test_annihilator_split(name):
    E, A, c, P = module(name)
    for w in E.vertices:
        for i in range(1, 7):
            if w != c.src:
                assert act_prufer(A.vertex(w), P.alpha(i)) == 0
    assert act_prufer(A.vertex(c.src), P.alpha(1)) == P.alpha(1)


@pytest.mark.parametrize("name", SOURCE_LOOPS)
def test_uniserial(name):
    E, A, c, P = module(name)
    r = rng(34)
    for _ in range(40):
        u, v = random_scalar_u(P, r), random_scalar_u(P, r)
        lo, hi = (u, v) if u.level <= v.level else (v, u)
        if hi.is_zero():
            continue
        m = P.find_multiplier(lo, hi)
        assert act_prufer(m, hi) == lo
        if lo.level < hi.level:
            with pytest.raises(NoSolutionError):
                P.find_multiplier(hi, lo)


def test_endo_examples():
    _, A, c, P = module("R_1")
    a = P.alpha
    cm1 = A.path_element(c) - 1
    for i in range(1, 5):
        assert endo_apply(T([1]), a(i)) == a(i)
        assert endo_apply(T([0, 1]), a(i)) == act_prufer(cm1, a(i))
    assert endo_apply(T([3, 5]), a(2)) == a(2).scale(3) + a(1).scale(5)
    _, A2, c2, P2 = module("R_2")
    with pytest.raises(PreconditionError):
        endo_apply(T([1]), P2.alpha(1))


@pytest.mark.parametrize("name", SOURCE_LOOPS)
def test_endo_laws(name):
    E, A, c, P = module(name)
    r = rng(35)
    for _ in range(30):
        m = r.randint(1, 8)
        H = T([r.randint(-3, 3) for _ in range(m)], m)
        K = T([r.randint(-3, 3) for _ in range(m)], m)
        u, v = random_scalar_u(P, r), random_scalar_u(P, r)
        if u.level <= m:
            assert endo_apply(H, endo_apply(K, u)) == endo_apply(series_mul(H, K), u)
        assert endo_apply(H, u + v) == endo_apply(H, u) + endo_apply(H, v)
        x = random_element(A, r, max_terms=3, max_degree=3)
        assert endo_apply(H, act_prufer(x, u)) == act_prufer(x, endo_apply(H, u))
        # right product by the series evaluated at c - 1
        right = P.element(P.make_element(u.payload.representative() * P.series_element(H), u.payload.level))
        if u.level <= m:
            assert endo_apply(H, u) == right


def test_solver_examples():
    _, A, c, P = module("R_1")
    assert solve_divisibility(A.parse("c"), P.alpha(1)) == P.alpha(1)
    assert solve_divisibility(A.parse("c - 1"), P.alpha(1)) == P.alpha(2)
    _, A, c, P = module("G_S")
    with pytest.raises(NoSolutionError):
        solve_divisibility(A.parse("w"), P.alpha(1))
    _, A, c, P = module("G_E1")
    with pytest.raises(PreconditionError):
        solve_divisibility(A.parse("c"), P.alpha(1))


@pytest.mark.parametrize("name", SOURCE_LOOPS)
def test_solver_soundness(name):
    E, A, c, P = module(name)
    r = rng(36)
    done = 0
    while done < 40:
        ell = random_element(A, r, max_terms=3, max_degree=4)
        if ell.is_zero():
            continue
        u = random_scalar_u(P, r)
        if ann_U_membership(ell, c):
            with pytest.raises(NoSolutionError):
                solve_divisibility(ell, u)
            continue
        X = solve_divisibility(ell, u)
        assert act_prufer(ell, X) == u
        done += 1


@pytest.mark.parametrize("length", [2, 3, 4])
def test_shift_iso_round_trips(length):
    verts = [f"v{i}" for i in range(1, length + 1)]
    edges = [(f"e{i}", verts[i - 1], verts[i % length]) for i in range(1, length + 1)]
    E = Graph(verts, edges)
    A = LeavittPathAlgebra(E)
    c = E.path([f"e{i}" for i in range(1, length + 1)])
    for ell in range(1, length + 1):
        for m in (1, 2, 3):
            f, b = shift_iso(A, c, ell, m), shift_iso(A, c, ell, m, "backward")
            src, dst = f.source, f.target
            for i in range(m):
                g1 = src.make_element(src._divider.c_minus_one ** i, m)
                assert b(f(g1)) == g1
                g2 = dst.make_element(dst._divider.c_minus_one ** i, m)
                assert f(b(g2)) == g2


def test_shift_iso_example_and_errors():
    E, A, c = setup("G_C2")
    f = shift_iso(A, c, 2, 1)
    one = f.source.make_element(A.one(), 1)
    assert [str(g) for g in f(one).coefficients] == ["e1"]
    with pytest.raises(PreconditionError):
        shift_iso(A, c, 3, 1)
    E1, A1, c1 = setup("R_1")
    with pytest.raises(PreconditionError):
        shift_iso(A1, c1, 1, 1)


def test_classify_injectivity():
    assert classify_injectivity(fixture("R_1"), fixture("R_1").path("c"))["injective"]
    v = classify_injectivity(fixture("R_2"), fixture("R_2").path("c"))
    assert not v["injective"] and v["witness"] == "d"
    assert classify_injectivity(fixture("G_E1"), fixture("G_E1").path("c"))["injective"]
    E = fixture("R_1")
    with pytest.raises(PreconditionError):
        classify_injectivity(E, E.path("c", "c"))
