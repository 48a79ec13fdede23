from fractions import Fraction

import pytest

import artgallery


def test_generate_comb():
    inst = artgallery.generate("comb(3)")
    assert inst["name"] == "comb(3)"
    assert len(inst["outer"]) == 12
    assert inst["opt"] == {"lower": 3, "upper": 3}


def test_verify_lshape_corner_guard():
    inst = artgallery.generate("lshape")
    assert artgallery.verify(inst, [["1/4", "7/4"]]) == 1 - Fraction(1, 2) / 3
    assert artgallery.verify(inst, []) == 0


def test_solve_convex_single_guard():
    inst = artgallery.generate("convex(5)")
    rep = artgallery.solve(inst, eps="1/2", delta="1/10", nu="1/2")
    assert rep["guard_count"] == 1
    assert rep["coverage"] == "1"
    assert rep["iterations"] == 10
    assert artgallery.verify(inst, rep["guards"]) == Fraction(rep["coverage"])


def test_greedy_and_sample_lshape():
    inst = artgallery.generate("lshape")
    g = artgallery.greedy(inst, delta=Fraction(1, 100))
    assert g["guard_count"] <= 2
    s1 = artgallery.sample(inst, delta="1/4", seed=42, k=1)
    s2 = artgallery.sample(inst, delta="1/4", seed=42, k=1)
    assert s1["guards"] == s2["guards"]


def test_opt_bracket_comb():
    b = artgallery.opt_bracket(artgallery.generate("comb(4)"))
    assert (b["lower"], b["upper"]) == (4, 4)


def test_render_is_deterministic():
    inst = artgallery.generate("lshape")
    a = artgallery.render(inst, [["1/4", "7/4"]])
    assert a == artgallery.render(inst, [["1/4", "7/4"]])
    assert a.startswith("<svg")


def test_bad_input_raises():
    with pytest.raises(ValueError):
        artgallery.generate("star(5)")
    with pytest.raises(ValueError):
        artgallery.solve(artgallery.generate("lshape"), eps="9/10")
