from fractions import Fraction

import pytest
import sympy

from arakelov_fermat import polyfp
from arakelov_fermat.errors import BadSplit, NotPrime
from arakelov_fermat.fermat import (
    admissible_splits,
    build,
    build_with_split,
    component_count,
    is_prime,
    mirimanoff_split,
    phi_minus_one,
    phi_minus_one_mod_p,
)

PRIMES = [p for p in range(5, 98) if is_prime(p)]


def phi_value(p, x):
    return ((x - 1) ** p - x**p + 1) // p


def brute_split(p):
    # double roots other than 0, 1 are exactly the residues where phi and its derivative vanish
    zeros = [x for x in range(p) if phi_value(p, x) % p == 0]
    X = sympy.symbols("X")
    poly = sympy.Poly(sympy.expand(((X - 1) ** p - X**p + 1) / p), X, modulus=p)
    _, factors = poly.factor_list()
    mult = {}
    for f, e in factors:
        if f.degree() == 1:
            c = f.all_coeffs()
            mult[(-c[1] * pow(int(c[0]), -1, p)) % p] = e
    return zeros, mult


@pytest.mark.parametrize("p", PRIMES)
def test_split_matches_brute_force(p):
    r, s = mirimanoff_split(p)
    zeros, mult = brute_split(p)
    assert 2 * r + s == p - 3
    assert set(zeros) == set(mult)
    assert mult[0] == 1 and mult[1] == 1
    others = [x for x in zeros if x not in (0, 1)]
    assert all(mult[x] == 2 for x in others)
    assert len(others) == r


def test_known_splits():
    assert mirimanoff_split(5) == (0, 2)
    assert mirimanoff_split(7) == (2, 0)
    assert mirimanoff_split(11) == (0, 8)
    assert mirimanoff_split(13) == (2, 6)
    assert mirimanoff_split(59) == (12, 32)


@pytest.mark.parametrize("p", [5, 7, 31, 97])
def test_two_forms_agree(p):
    assert polyfp.reduce(phi_minus_one(p), p) == phi_minus_one_mod_p(p)


@pytest.mark.parametrize("n", [1, 4, 9, 15, 91])
def test_not_prime(n):
    with pytest.raises(NotPrime, match=f"{n} is not prime"):
        mirimanoff_split(n)


@pytest.mark.parametrize("p", [2, 3])
def test_small_primes_rejected(p):
    with pytest.raises(ValueError):
        build(p)


def test_roots_and_multiplicity():
    # (X-1)^2 (X-3) mod 5
    f = polyfp.mul(polyfp.mul([4, 1], [4, 1], 5), [2, 1], 5)
    assert sorted(polyfp.roots(f, 5)) == [1, 3]
    assert polyfp.root_multiplicity(f, 1, 5) == 2
    assert polyfp.root_multiplicity(f, 3, 5) == 1
    assert polyfp.root_multiplicity(f, 0, 5) == 0


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_model_shape(p):
    m = build(p)
    assert len(m.cfg) == component_count(p, m.r, m.s)
    assert m.cfg.component("L").multiplicity == p
    assert m.cfg.component("L").self_intersection == -1
    assert m.genus == (p - 1) * (p - 2) // 2
    for i in range(1, m.r + 1):
        assert m.cfg.component(f"L_alpha_{i}").multiplicity == 2
        assert m.cfg.component(f"L_alpha_{i}_1").self_intersection == -2


def test_p7_has_twenty_components():
    assert len(build(7).cfg) == 20


def test_bad_split():
    with pytest.raises(BadSplit):
        build_with_split(11, 1, 5)
    with pytest.raises(BadSplit):
        build_with_split(11, -1, 10)
    assert admissible_splits(11) == [(0, 8), (1, 6), (2, 4), (3, 2), (4, 0)]


def test_pullback_target_meets_only_L():
    m = build(7)
    T = m.pullback_target()
    pairing = T.pairing(m.cfg)
    for c, v in zip(m.cfg.components, pairing):
        assert v == (Fraction(1, 7) if c.label == "L" else 0)


def test_pullback_target_degree():
    # p^2 D . (full fibre) = p^2, and p^2 D . L = p
    m = build(5)
    cfg = m.cfg
    pairing = m.pullback_target().pairing(cfg)
    total = sum(c.multiplicity * v for c, v in zip(cfg.components, pairing))
    assert 25 * total == 25
    assert 25 * pairing[cfg.index("L")] == 5
