"""Differential forms with two generator kinds: normalization rules, the
third-order differential, worked expansions, and the product rule."""

from __future__ import annotations

import random

import pytest

from z3forms import (
    CoeffExpr,
    Form,
    coefficient_form,
    components,
    coordinate,
    ddx,
    dx,
    form_from_components,
    grade_and_degree,
    jet,
    redistribute_t3,
)
from z3forms.forms import normalize_form, word_degree, word_grade
from z3forms.scalar import J, J2, ONE, Scalar, jpow


def rand_scalar(rng: random.Random) -> Scalar:
    return Scalar(rng.randint(-3, 3), rng.randint(-3, 3))


def rand_run(rng: random.Random) -> tuple:
    names = ("f", "g")
    return tuple(
        ("c", jet(rng.choice(names))) for _ in range(rng.randint(0, 1))
    )


def rand_form(rng: random.Random, n: int, max_degree: int = 2) -> Form:
    shapes = [(), ("dx",), ("ddx",), ("dx", "dx")]
    shapes = [
        s for s in shapes
        if sum(1 if t == "dx" else 2 for t in s) <= max_degree
    ]
    out = Form.zero(n)
    for _ in range(rng.randint(1, 3)):
        word: list = []
        for kind in rng.choice(shapes):
            word.extend(rand_run(rng))
            word.append((kind, rng.randint(1, n)))
        word.extend(rand_run(rng))
        out = out + Form(n, [(rand_scalar(rng), tuple(word))])
    return out


def rand_generator_tailed(rng: random.Random, n: int) -> Form:
    """Nonzero-probability forms whose words end in a generator."""
    out = Form.zero(n)
    for _ in range(rng.randint(1, 2)):
        word: list = list(rand_run(rng))
        word.append(("dx" if rng.random() < 0.7 else "ddx", rng.randint(1, n)))
        out = out + Form(n, [(rand_scalar(rng), tuple(word))])
    return out


# -- normalization rules ---------------------------------------------------------


def test_degree_cap():
    n = 3
    assert (dx(1, n) * dx(2, n) * dx(3, n) * dx(1, n)).is_zero()
    assert (ddx(1, n) * dx(2, n) * dx(3, n)).is_zero()
    assert (ddx(1, n) * ddx(2, n)).is_zero()  # degree 4
    d3 = dx(1, n) * dx(2, n) * dx(3, n)
    assert not d3.is_zero()


def test_second_generator_squares_vanish():
    n = 2
    assert (ddx(1, n) * ddx(1, n)).is_zero()
    assert (ddx(1, n) * ddx(2, n)).is_zero()


def test_generator_swap_phase():
    n = 3
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            lhs = dx(i, n) * ddx(k, n)
            rhs = (ddx(k, n) * dx(i, n)).scale(J)
            assert lhs == rhs


def test_triple_rotation_to_least_representative():
    n = 3
    w231 = Form(n, [(ONE, (("dx", 2), ("dx", 3), ("dx", 1)))])
    w123 = dx(1, n) * dx(2, n) * dx(3, n)
    assert w231 == w123.scale(J2)
    w312 = Form(n, [(ONE, (("dx", 3), ("dx", 1), ("dx", 2)))])
    assert w312 == w123.scale(J)
    # each left rotation costs one phase factor
    w112 = Form(n, [(ONE, (("dx", 1), ("dx", 1), ("dx", 2)))])
    w121 = Form(n, [(ONE, (("dx", 1), ("dx", 2), ("dx", 1)))])
    w211 = Form(n, [(ONE, (("dx", 2), ("dx", 1), ("dx", 1)))])
    assert w121 == w112.scale(J2)
    assert w211 == w112.scale(J)


def test_all_equal_triples_vanish():
    n = 2
    assert (dx(1, n) * dx(1, n) * dx(1, n)).is_zero()
    assert (dx(2, n) * dx(2, n) * dx(2, n)).is_zero()


def test_degree_three_collapse_multiplies_coefficients():
    n = 3
    f, g = jet("f"), jet("g")
    interleaved = Form(
        n,
        [(ONE, (("c", f), ("dx", 1), ("c", g), ("dx", 2), ("dx", 3)))],
    )
    fg = CoeffExpr.from_symbol(f) * CoeffExpr.from_symbol(g)
    collapsed = coefficient_form(fg, n) * dx(1, n) * dx(2, n) * dx(3, n)
    assert interleaved == collapsed
    # collapse preserves left-to-right coefficient order (no commuting)
    gf = CoeffExpr.from_symbol(g) * CoeffExpr.from_symbol(f)
    other = coefficient_form(gf, n) * dx(1, n) * dx(2, n) * dx(3, n)
    assert interleaved != other


def test_low_degree_words_stay_interleaved():
    n = 2
    f, g = jet("f"), jet("g")
    interleaved = Form(n, [(ONE, (("c", f), ("dx", 1), ("c", g), ("dx", 2)))])
    collapsed = Form(n, [(ONE, (("c", f), ("c", g), ("dx", 1), ("dx", 2)))])
    assert interleaved != collapsed
    assert not (interleaved - collapsed).is_zero()


def test_index_range_enforced():
    with pytest.raises(ValueError):
        dx(3, 2)
    with pytest.raises(ValueError):
        Form(2, [(ONE, (("ddx", 5),))])
    with pytest.raises(ValueError):
        Form(0)


# -- the differential ---------------------------------------------------------------


def test_differential_of_coordinate_product():
    n = 2
    x1, x2 = coordinate(1, n), coordinate(2, n)
    got = (x1 * x2).d()
    want = x1 * dx(2, n) + x2 * dx(1, n)
    assert got == want


def test_differential_of_coefficient():
    n = 3
    f = coefficient_form(CoeffExpr.from_symbol(jet("f")), n)
    got = f.d()
    want = Form.zero(n)
    for i in range(1, n + 1):
        want = want + Form(n, [(ONE, (("c", jet("f", derivs=(i,))), ("dx", i)))])
    assert got == want


def test_second_differential_of_coefficient():
    n = 3
    f = coefficient_form(CoeffExpr.from_symbol(jet("f")), n)
    want = Form.zero(n)
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            want = want + Form(
                n,
                [(ONE, (("c", jet("f", derivs=(i, k))), ("dx", k), ("dx", i)))],
            )
    for i in range(1, n + 1):
        want = want + Form(n, [(ONE, (("c", jet("f", derivs=(i,))), ("ddx", i)))])
    assert f.d().d() == want


def test_second_differential_of_coordinate_one_form():
    n = 3
    w = coordinate(1, n) * dx(2, n)
    want = ddx(1, n) * dx(2, n) - ddx(2, n) * dx(1, n)
    assert w.d().d() == want


def test_second_differential_of_generic_one_form():
    n = 3
    om = Form.zero(n)
    for k in range(1, n + 1):
        om = om + Form(n, [(ONE, (("c", jet("w", k)), ("dx", k)))])
    want = Form.zero(n)
    for m in range(1, n + 1):
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                want = want + Form(
                    n,
                    [(ONE, (("c", jet("w", k, (i, m))),
                            ("dx", m), ("dx", i), ("dx", k)))],
                )
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            want = want + Form(
                n, [(ONE, (("c", jet("w", k, (i,))), ("ddx", i), ("dx", k)))]
            )
            want = want + Form(
                n, [(-ONE, (("c", jet("w", i, (k,))), ("ddx", i), ("dx", k)))]
            )
    assert om.d().d() == want


def test_third_differential_vanishes_random():
    rng = random.Random(51)
    for n in (2, 3):
        for _ in range(80):
            w = rand_form(rng, n)
            assert w.d().d().d().is_zero()


def test_image_containments():
    rng = random.Random(52)
    n = 3
    for _ in range(60):
        w = rand_form(rng, n)
        first = w.d()
        assert first.d().d().is_zero()      # image of d sits inside ker d^2
        second = w.d().d()
        assert second.d().is_zero()         # image of d^2 sits inside ker d


def test_second_differential_not_identically_zero():
    n = 2
    f = coefficient_form(CoeffExpr.from_symbol(jet("f")), n)
    assert not f.d().d().is_zero()


# -- products ---------------------------------------------------------------


def test_product_associativity_random():
    rng = random.Random(53)
    n = 2
    for _ in range(80):
        a, b, c = (rand_form(rng, n, 1) for _ in range(3))
        assert ((a * b) * c - a * (b * c)).is_zero()


def test_left_module_scalar_runs_merge():
    n = 2
    f = coefficient_form(CoeffExpr.from_symbol(jet("f")), n)
    g = coefficient_form(CoeffExpr.from_symbol(jet("g")), n)
    fg = coefficient_form(
        CoeffExpr.from_symbol(jet("f")) * CoeffExpr.from_symbol(jet("g")), n
    )
    assert f * g == fg


def test_product_rule_generator_tailed():
    rng = random.Random(54)
    n = 2
    for _ in range(120):
        w = rand_generator_tailed(rng, n)
        phi = rand_form(rng, n, 1)
        grade = grade_and_degree(w)[0]
        if grade == "mixed":
            continue
        lhs = (w * phi).d()
        rhs = w.d() * phi + (w * phi.d()).scale(jpow(grade))
        assert (lhs - rhs).is_zero()


def test_product_rule_seam_residual():
    # Because a coefficient run differentiates as one block, the product
    # rule on two bare coefficients acquires an exact residual: the version
    # with g merged into the differentiated run minus the interleaved one.
    n = 2
    f = coefficient_form(CoeffExpr.from_symbol(jet("f")), n)
    g = coefficient_form(CoeffExpr.from_symbol(jet("g")), n)
    lhs = (f * g).d()
    rhs = f.d() * g + f * g.d()
    residual = lhs - rhs
    expected = Form.zero(n)
    for q in range(1, n + 1):
        fq = jet("f", derivs=(q,))
        expected = expected + Form(
            n, [(ONE, (("c", fq), ("c", jet("g")), ("dx", q)))]
        )
        expected = expected + Form(
            n, [(-ONE, (("c", fq), ("dx", q), ("c", jet("g"))))]
        )
    assert residual == expected
    assert not residual.is_zero()


# -- structure helpers ---------------------------------------------------------


def test_grade_and_degree():
    n = 3
    assert grade_and_degree(dx(1, n)) == (1, 1)
    assert grade_and_degree(ddx(1, n)) == (2, 2)
    assert grade_and_degree(dx(1, n) * dx(2, n)) == (2, 2)
    assert grade_and_degree(ddx(1, n) * dx(2, n)) == (0, 3)
    assert grade_and_degree(dx(1, n) * dx(2, n) * dx(3, n)) == (0, 3)
    assert grade_and_degree(coordinate(1, n)) == (0, 0)
    assert grade_and_degree(Form.zero(n)) == (0, 0)
    mixed = dx(1, n) + ddx(1, n)
    assert grade_and_degree(mixed) == ("mixed", "mixed")


def test_word_grade_degree_helpers():
    word = (("c", jet("f")), ("ddx", 1), ("dx", 2))
    assert word_degree(word) == 3
    assert word_grade(word) == 0


def rand_degree3(rng: random.Random, n: int) -> Form:
    out = Form.zero(n)
    for _ in range(rng.randint(1, 3)):
        run = rand_run(rng)
        if rng.random() < 0.5:
            gens: tuple = tuple(("dx", rng.randint(1, n)) for _ in range(3))
        else:
            gens = (("ddx", rng.randint(1, n)), ("dx", rng.randint(1, n)))
        out = out + Form(n, [(rand_scalar(rng), run + gens)])
    return out


def test_components_round_trip():
    rng = random.Random(55)
    n = 3
    for _ in range(60):
        w = rand_degree3(rng, n)
        table = components(w)
        back = form_from_components(table)
        assert back == w


def test_redistribute_preserves_class():
    rng = random.Random(56)
    n = 3
    for _ in range(40):
        w = rand_degree3(rng, n)
        table = components(w)
        spread = redistribute_t3(table.T3, False)
        rebuilt = Form.zero(n)
        for (i, k, m), coeff in spread.items():
            rebuilt = rebuilt + Form(
                n,
                [
                    (s, tuple(("c", sym) for sym in cw)
                         + (("dx", i), ("dx", k), ("dx", m)))
                    for cw, s in coeff.terms.items()
                ],
            )
        twosector = Form.zero(n)
        for (i, k), coeff in table.T21.items():
            twosector = twosector + Form(
                n,
                [
                    (s, tuple(("c", sym) for sym in cw)
                         + (("ddx", i), ("dx", k)))
                    for cw, s in coeff.terms.items()
                ],
            )
        assert rebuilt + twosector == w


def test_normalize_form_entrypoint():
    n = 3
    w = normalize_form((("dx", 2), ("dx", 3), ("dx", 1)), n)
    assert w == (dx(1, n) * dx(2, n) * dx(3, n)).scale(J2)
