import warnings
from fractions import Fraction

import pytest

from frobreal.frobenius import (FrobeniusError, FrobeniusStructure,
                                check_axioms, find_top_class, handle_element)
from frobreal.linear import op_scale
from frobreal.manifolds import (ManifoldSpec, ManifoldSpecError,
                                build_structure, connsum, cp,
                                euler_characteristic, reduce_mod_p, sphere,
                                surface)
from frobreal.scalars import PrimeField, Rationals

from _helpers import ALL_SPECS

Q = Rationals()


def test_sphere_model():
    s = build_structure(sphere(3), Q)
    sp = s.space
    assert [sp.label(i) for i in range(sp.dim)] == ["1", "x"]
    assert sp.dims_by_degree() == {0: 1, 3: 1}
    one, x = sp.index("1"), sp.index("x")
    assert s.mu.entries[(one, x)] == {(x,): Q.one}
    assert (x, x) not in s.mu.entries
    assert s.delta.entries[(one,)] == {(one, x): Q.from_int(-1),
                                       (x, one): Q.one}
    assert s.delta.entries[(x,)] == {(x, x): Q.one}
    assert s.eps.entries == {(x,): {(): Q.one}}


def test_cp_model():
    s = build_structure(cp(3), Q)
    sp = s.space
    labels = [sp.label(i) for i in range(sp.dim)]
    assert labels == ["1", "x", "x^2", "x^3"]
    assert [sp.degree(i) for i in range(sp.dim)] == [0, 2, 4, 6]
    x, x2, x3 = sp.index("x"), sp.index("x^2"), sp.index("x^3")
    assert s.mu.entries[(x, x2)] == {(x3,): Q.one}
    assert s.mu.entries[(x2, x)] == {(x3,): Q.one}
    assert (x2, x2) not in s.mu.entries
    assert find_top_class(s) == x3
    assert handle_element(s) == {x3: Q.from_int(4)}


def test_surface_model_products_anticommute():
    s = build_structure(surface(2), Q)
    sp = s.space
    labels = [sp.label(i) for i in range(sp.dim)]
    assert labels == ["1", "a1", "a2", "b1", "b2", "w"]
    assert sp.dims_by_degree() == {0: 1, 1: 4, 2: 1}
    a1, a2, b1, b2, w = (sp.index(l) for l in ("a1", "a2", "b1", "b2", "w"))
    assert s.mu.entries[(a1, b1)] == {(w,): Q.one}
    assert s.mu.entries[(b1, a1)] == {(w,): Q.from_int(-1)}
    assert (a1, b2) not in s.mu.entries
    assert (a1, a2) not in s.mu.entries
    assert (a1, a1) not in s.mu.entries


def test_connsum_model_kills_cross_products():
    s = build_structure(connsum(cp(2), cp(2)), Q)
    sp = s.space
    labels = [sp.label(i) for i in range(sp.dim)]
    assert labels == ["1", "L:x", "R:x", "w"]
    lx, rx, w = sp.index("L:x"), sp.index("R:x"), sp.index("w")
    assert s.mu.entries[(lx, lx)] == {(w,): Q.one}
    assert s.mu.entries[(rx, rx)] == {(w,): Q.one}
    assert (lx, rx) not in s.mu.entries
    assert (rx, lx) not in s.mu.entries
    assert find_top_class(s) == w


def test_connsum_of_tori_matches_genus_two():
    left = build_structure(connsum(surface(1), surface(1)), Q)
    right = build_structure(surface(2), Q)
    translate = {}
    pairs = (("1", "1"), ("L:a1", "a1"), ("L:b1", "b1"),
             ("R:a1", "a2"), ("R:b1", "b2"), ("w", "w"))
    for src, dst in pairs:
        translate[left.space.index(src)] = right.space.index(dst)

    def move(entries):
        return {tuple(translate[i] for i in in_t):
                {tuple(translate[j] for j in out_t): c
                 for out_t, c in row.items()}
                for in_t, row in entries.items()}

    assert move(left.mu.entries) == right.mu.entries
    assert move(left.delta.entries) == right.delta.entries
    assert move(left.eps.entries) == right.eps.entries
    assert move(left.eta.entries) == right.eta.entries


def test_connsum_is_symmetric_up_to_side_swap():
    ab = build_structure(connsum(sphere(4), cp(2)), Q)
    ba = build_structure(connsum(cp(2), sphere(4)), Q)
    swap = {}
    for i in range(ab.space.dim):
        label = ab.space.label(i)
        if label.startswith("L:"):
            label = "R:" + label[2:]
        elif label.startswith("R:"):
            label = "L:" + label[2:]
        swap[i] = ba.space.index(label)

    def move(entries):
        return {tuple(swap[i] for i in in_t):
                {tuple(swap[j] for j in out_t): c
                 for out_t, c in row.items()}
                for in_t, row in entries.items()}

    assert move(ab.mu.entries) == ba.mu.entries
    assert move(ab.delta.entries) == ba.delta.entries


def test_euler_characteristics():
    cases = (
        (sphere(2), 2), (sphere(3), 0), (sphere(4), 2),
        (cp(1), 2), (cp(2), 3), (cp(3), 4),
        (surface(0), 2), (surface(1), 0), (surface(2), -2),
        (connsum(cp(2), cp(2)), 4),
    )
    for spec, chi in cases:
        s = build_structure(spec, Q, check=False)
        assert euler_characteristic(s.space) == chi, spec.text()


def test_reduction_agrees_with_entrywise_coproduct():
    for spec in ALL_SPECS:
        s = build_structure(spec, Q)
        for p in (3, 5):
            reduced = reduce_mod_p(s, p)
            expected = {}
            for in_t, row in s.delta.entries.items():
                new_row = {}
                for out_t, c in row.items():
                    assert c.denominator == 1
                    r = c.numerator % p
                    if r:
                        new_row[out_t] = r
                if new_row:
                    expected[in_t] = new_row
            assert reduced.delta.entries == expected, (spec.text(), p)
            assert check_axioms(reduced).all_pass


def test_reduction_known_handles():
    two_sphere = build_structure(sphere(2), Q)
    mod3 = reduce_mod_p(two_sphere, 3)
    assert handle_element(mod3) == {mod3.space.index("x"): 2}
    proj = build_structure(cp(2), Q)
    mod2 = reduce_mod_p(proj, 2)
    assert handle_element(mod2) == {mod2.space.index("x^2"): 1}


def test_characteristic_two_warns_for_odd_classes():
    with pytest.warns(RuntimeWarning):
        build_structure(sphere(3), PrimeField(2))
    with pytest.warns(RuntimeWarning):
        reduce_mod_p(build_structure(surface(1), Q), 2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_structure(sphere(2), PrimeField(2))
        reduce_mod_p(build_structure(cp(2), Q), 2)


def test_torus_passes_mod_two_despite_odd_classes():
    with pytest.warns(RuntimeWarning):
        reduced = reduce_mod_p(build_structure(surface(1), Q), 2)
    assert check_axioms(reduced).all_pass


def test_reduction_rejects_degenerating_pairing():
    space = build_structure(sphere(2), Q).space
    base = build_structure(sphere(2), Q)
    doubled_eps = op_scale(base.eps, Q.from_int(2))
    from frobreal.frobenius import Pairing, coproduct_from_pairing
    from frobreal.linear import vertical_compose
    beta = Pairing(space, vertical_compose(doubled_eps, base.mu), 2)
    delta, _ = coproduct_from_pairing(base.mu, base.eta, beta)
    s = FrobeniusStructure(space, base.mu, base.eta, delta, doubled_eps, 2)
    with pytest.raises(FrobeniusError) as err:
        reduce_mod_p(s, 2)
    assert "degenerates mod 2" in str(err.value)
    assert "degree blocks" in str(err.value)


def test_reduction_rejects_fractional_constants():
    base = build_structure(sphere(2), Q)
    halved = op_scale(base.mu, Fraction(1, 2))
    s = FrobeniusStructure(base.space, halved, base.eta, base.delta,
                           base.eps, 2)
    with pytest.raises(FrobeniusError) as err:
        reduce_mod_p(s, 3)
    assert "1/2 is not an integer" in str(err.value)


def test_reduction_requires_rational_input():
    s = build_structure(sphere(2), PrimeField(3))
    with pytest.raises(FrobeniusError):
        reduce_mod_p(s, 5)


def test_spec_validation():
    with pytest.raises(ManifoldSpecError):
        sphere(0)
    with pytest.raises(ManifoldSpecError):
        cp(0)
    with pytest.raises(ManifoldSpecError):
        surface(-1)
    with pytest.raises(ManifoldSpecError) as err:
        connsum(sphere(2), cp(2))
    assert "top degree mismatch 2≠4" in str(err.value)
    with pytest.raises(ManifoldSpecError):
        ManifoldSpec("torus", 1)
    assert connsum(sphere(2), cp(1)).top_degree() == 2


def test_spec_text_equality_and_json():
    spec = connsum(cp(2), cp(2))
    assert spec.text() == "connsum(cp:2,cp:2)"
    assert spec == connsum(cp(2), cp(2))
    assert spec != cp(2)
    assert hash(spec) == hash(connsum(cp(2), cp(2)))
    assert spec.to_json() == "connsum(cp:2,cp:2)"
    assert surface(1).text() == "surface:1"


def test_every_model_checks_at_build_time():
    for spec in ALL_SPECS:
        s = build_structure(spec, Q)
        assert find_top_class(s) is not None
        assert s.degree_m == spec.top_degree()
