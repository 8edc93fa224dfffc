import random
from fractions import Fraction

import pytest
from hypothesis import given

from gptmeasure.errors import DimensionMismatch, NotClassical, NotGenerating, NotOrderUnit, NotProper, UnsupportedKind
from gptmeasure.gpt_core import (
    classical,
    classical_product,
    cone_member,
    dual_cone_member,
    gbit,
    is_classical,
    is_state,
    make_space,
    polygon,
    standard_space,
    validate_space,
)
from gptmeasure.rational import dot, vec
from strategies import SPACES, space_names, vectors


def test_classical_bit_valid():
    sp = validate_space({"dim": 2, "order_unit": [1, 1], "cone_generators": [[1, 0], [0, 1]]})
    assert sp == classical(2)


def test_gbit_valid():
    sp = validate_space({"dim": 3, "order_unit": [1, 0, 0], "cone_generators": [[1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1]]})
    assert sp == gbit()
    assert len(sp.extreme_rays) == 4


def test_not_generating():
    with pytest.raises(NotGenerating):
        validate_space({"dim": 2, "order_unit": [1, 0], "cone_generators": [[1, 0]]})


def test_not_proper():
    with pytest.raises(NotProper):
        validate_space({"dim": 2, "order_unit": [1, 0], "cone_generators": [[1, 0], [0, 1], [0, -1]]})


def test_not_order_unit():
    # u on the boundary of the cone
    with pytest.raises(NotOrderUnit):
        validate_space({"dim": 2, "order_unit": [1, 0], "cone_generators": [[1, 0], [0, 1]]})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        validate_space({"dim": 2, "order_unit": [1, 1, 1], "cone_generators": [[1, 0], [0, 1]]})
    with pytest.raises(DimensionMismatch):
        cone_member(gbit(), (1, 0))


def test_duplicate_generators_deduplicated_keep_first():
    sp = make_space(2, [1, 1], [[2, 0], [1, 0], [0, 1], [0, 3]])
    assert sp.cone_generators == (vec([2, 0]), vec([0, 1]))


def test_cone_member_gbit_unit():
    cert = cone_member(gbit(), (1, 0, 0))
    assert cert.member
    assert cert.coefficients == (Fraction(1, 2), Fraction(1, 2), 0, 0)


def test_cone_member_gbit_outside():
    cert = cone_member(gbit(), (1, 1, 1))
    assert not cert.member
    psi = cert.separator
    assert dual_cone_member(gbit(), psi)
    assert dot(psi, (1, 1, 1)) < 0
    assert psi == (1, -1, -1)


def test_cone_member_apex():
    cert = cone_member(classical(2), (0, 0))
    assert cert.member and cert.coefficients == (0, 0)


def test_dual_cone_member_examples():
    assert dual_cone_member(classical(2), (1, 0))
    assert dual_cone_member(gbit(), (1, 1, 1))
    chk = dual_cone_member(gbit(), (1, 2, 0))
    assert not chk and chk.witness == (1, -1, 0) and chk.value == -1
    assert dual_cone_member(gbit(), (1, 1, 0))


def test_is_classical_examples():
    assert is_classical(classical(2))
    assert is_classical(classical(3))
    assert not is_classical(gbit())


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8, 9, 10, 11, 12])
def test_polygon_classical_iff_triangle(k):
    assert is_classical(polygon(k)) == (k == 3)
    assert len(polygon(k).extreme_rays) == k


def test_polygon4_is_gbit():
    assert polygon(4) == gbit()


def test_classical_product_examples():
    sp = classical(2)
    assert classical_product(sp, (1, 0), (1, 0)) == (1, 0)
    assert classical_product(sp, (2, 3), (1, 1)) == (2, 3)
    assert classical_product(classical(3), (1, 2, 0), (0, 1, 1)) == (0, 2, 0)
    with pytest.raises(NotClassical):
        classical_product(gbit(), (1, 0, 0), (1, 0, 0))


def test_classical_product_on_triangle_has_unit():
    sp = polygon(3)
    a = (Fraction(1, 3), Fraction(1, 5), Fraction(-1, 7))
    assert classical_product(sp, a, sp.order_unit) == a


def test_standard_space_kinds():
    assert standard_space("classical(2)") == classical(2)
    assert standard_space(" gbit ") == gbit()
    with pytest.raises(UnsupportedKind):
        standard_space("qubit")
    with pytest.raises(UnsupportedKind):
        standard_space("polygon(2)")
    with pytest.raises(UnsupportedKind):
        standard_space("polygon(40)")


@pytest.mark.parametrize("name", SPACES)
def test_generators_are_members(name):
    sp = standard_space(name)
    for g in sp.cone_generators:
        assert cone_member(sp, g).member


@pytest.mark.parametrize("name", SPACES)
def test_interior_state_strictly_positive(name):
    sp = standard_space(name)
    sigma = sp.interior_state
    assert is_state(sp, sigma)
    assert all(dot(sigma, g) > 0 for g in sp.cone_generators)


@given(space_names(), vectors(3))
def test_farkas_soundness(name, v):
    sp = standard_space(name)
    v = v[: sp.dim] + (0,) * (sp.dim - len(v[: sp.dim]))
    cert = cone_member(sp, v)
    if cert.member:
        combo = [sum(c * g[i] for c, g in zip(cert.coefficients, sp.cone_generators)) for i in range(sp.dim)]
        assert tuple(combo) == vec(v)
        assert all(c >= 0 for c in cert.coefficients)
    else:
        assert dual_cone_member(sp, cert.separator)
        assert dot(cert.separator, v) < 0


def test_classical_product_rays_and_algebra():
    n = 4
    sp = classical(n)
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert classical_product(sp, e[i], e[j]) == (e[i] if i == j else (0,) * n)
    rng = random.Random(3)
    for _ in range(100):
        a, b, c = (tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)) for _ in range(3))
        assert classical_product(sp, a, b) == classical_product(sp, b, a)
        assert classical_product(sp, classical_product(sp, a, b), c) == classical_product(sp, a, classical_product(sp, b, c))
