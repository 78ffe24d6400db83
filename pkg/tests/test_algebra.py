from fractions import Fraction
from itertools import product as iproduct

import pytest

from cychom.algebra import (
    DslError,
    GeneratorSpec,
    attach_differential,
    check_presentation,
    crossing_lines,
    free_skew_algebra,
    laurent_window,
    parse_algebra_spec,
    pretty_print,
    quotient_truncated_poly,
    resolution_dga,
    square_zero_extension,
)


def comb_names(pres, comb):
    return {pres.names[k]: c for k, c in comb.items()}


class TestFreeSkew:
    def test_empty_gives_scalars(self):
        pres = free_skew_algebra([], ((0, 0),))
        assert pres.dim() == 1
        assert pres.names == ["1"]

    def test_one_even_one_odd(self):
        # C[x, xi] with weight(x) = 1, weight(xi) = 2: basis x^a xi^eps
        pres = free_skew_algebra(
            [GeneratorSpec("x", 0, (1,)), GeneratorSpec("xi", 1, (2,))],
            ((0, 4),))
        names = set(pres.names)
        assert "xi" in names and "x^2*xi" in names
        # admissible monomials: x^a (a<=4) and x^a xi (a<=2)
        assert pres.dim() == 5 + 3

    def test_two_even_window_count(self):
        # direct enumeration oracle: exponents (a, b) with a <= 3, b <= 3
        pres = free_skew_algebra(
            [GeneratorSpec("x", 0, (1, 0)), GeneratorSpec("y", 0, (0, 1))],
            ((0, 3), (0, 3)))
        count = sum(1 for a, b in iproduct(range(4), range(4)))
        assert pres.dim() == count == 16

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            free_skew_algebra([GeneratorSpec("x", -1, (1,))], ((0, 3),))

    def test_odd_squares_to_zero(self):
        pres = free_skew_algebra([GeneratorSpec("xi", 1, (1,))], ((0, 3),))
        i = pres.index_of("xi")
        assert pres.product(i, i) == {}

    def test_koszul_sign(self):
        pres = free_skew_algebra(
            [GeneratorSpec("a", 1, (1, 0)), GeneratorSpec("b", 1, (0, 1))],
            ((0, 2), (0, 2)))
        ia, ib = pres.index_of("a"), pres.index_of("b")
        ab = pres.product(ia, ib)
        ba = pres.product(ib, ia)
        (kab, cab), = ab.items()
        (kba, cba), = ba.items()
        assert kab == kba and cab == -cba

    def test_weight_additivity(self):
        pres = free_skew_algebra(
            [GeneratorSpec("x", 0, (1,)), GeneratorSpec("xi", 1, (2,))],
            ((0, 6),))
        for i in range(pres.dim()):
            for j in range(pres.dim()):
                for k in pres.product(i, j):
                    assert pres.weights[k] == tuple(
                        a + b for a, b in zip(pres.weights[i], pres.weights[j]))


class TestQuotient:
    def test_m1_is_scalars(self):
        pres = quotient_truncated_poly(1)
        assert pres.dim() == 1
        assert check_presentation(pres).ok()

    def test_dual_numbers(self):
        pres = quotient_truncated_poly(2)
        x = pres.index_of("x")
        assert pres.product(x, x) == {}
        assert check_presentation(pres).ok()

    def test_m3_relations(self):
        pres = quotient_truncated_poly(3)
        x = pres.index_of("x")
        x2 = pres.index_of("x^2")
        assert pres.product(x, x) == {x2: Fraction(1)}
        assert pres.product(x, x2) == {}
        assert check_presentation(pres).ok()

    def test_m_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            quotient_truncated_poly(0)


class TestSquareZero:
    def test_module_rules(self):
        pres = square_zero_extension(3, 3)
        x = pres.index_of("x")
        xm1 = pres.index_of("x^-1")
        xm2 = pres.index_of("x^-2")
        assert pres.product(x, xm1) == {}
        assert pres.product(x, xm2) == {xm1: Fraction(1)}
        assert pres.product(xm1, xm1) == {}
        assert check_presentation(pres).ok()

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            square_zero_extension(3, 0)


class TestCrossingLines:
    def test_xy_zero(self):
        pres = crossing_lines(3)
        x, y = pres.index_of("x"), pres.index_of("y")
        assert pres.product(x, y) == {}
        x2 = pres.index_of("x^2")
        x3 = pres.index_of("x^3")
        assert pres.product(x2, x) == {x3: Fraction(1)}
        assert check_presentation(pres).ok()

    def test_weight_le3_slice_dimension(self):
        pres = crossing_lines(3)
        # 1, x, x^2, x^3, y, y^2, y^3
        assert pres.dim() == 7


class TestLaurent:
    def test_products_exact_inside_pad(self):
        pres = laurent_window(2, pad=2)
        i2 = pres.index_of("x^2")
        im2 = pres.index_of("x^-2")
        assert pres.product(i2, im2) == {pres.unit: Fraction(1)}
        i3 = pres.index_of("x^3")
        assert comb_names(pres, pres.product(i2, i3)) == {}  # 5 > 4 truncated
        assert check_presentation(pres).ok()


class TestResolution:
    def test_delta_rules(self):
        pres = resolution_dga(2, 6)
        xi = pres.index_of("xi")
        x2 = pres.index_of("x^2")
        assert pres.apply_differential(xi) == {x2: Fraction(1)}
        x = pres.index_of("x")
        assert pres.apply_differential(x) == {}
        assert check_presentation(pres).ok()

    def test_delta_is_derivation_and_square_zero(self):
        for m in (1, 2, 3):
            pres = resolution_dga(m, 7)
            assert check_presentation(pres).ok()


class TestCheckPresentation:
    def test_fault_injection_associativity(self):
        pres = quotient_truncated_poly(3)
        x, x2 = pres.index_of("x"), pres.index_of("x^2")
        pres.table[(x, x2)] = {pres.unit: Fraction(1)}   # corrupt x*x^2 only
        pres._prod_cache.clear()
        rep = check_presentation(pres)
        assert not rep.ok()
        kinds = {v.kind for v in rep.violations}
        assert "associativity" in kinds or "commutativity" in kinds
        touched = {v.where for v in rep.violations
                   if v.kind in ("associativity", "commutativity")}
        assert any(x in where and x2 in where for where in touched)

    def test_fault_injection_delta(self):
        pres = resolution_dga(2, 6)
        xi = pres.index_of("xi")
        x = pres.index_of("x")
        pres.differential[x] = {pres.unit: Fraction(1)}  # break weight/degree
        rep = check_presentation(pres)
        assert not rep.ok()


class TestDsl:
    def test_resolution_equivalence(self):
        pres = parse_algebra_spec("free x:even:w=1; xi:odd:w=2; d xi = x^2",
                                  weight_bound=6)
        ref = resolution_dga(2, 6)
        assert pres.names == ref.names
        assert pres.weights == ref.weights
        assert pres.differential == ref.differential

    def test_quot(self):
        pres = parse_algebra_spec("quot x^3")
        ref = quotient_truncated_poly(3)
        assert pres.names == ref.names
        assert pres.table == ref.table

    def test_free_two_vars(self):
        pres = parse_algebra_spec("free x:even:w=1,0; y:even:w=0,1", weight_bound=3)
        assert pres.dim() == 16

    def test_comma_separated_gens(self):
        a = parse_algebra_spec("free x:even:w=1, xi:odd:w=2", weight_bound=4)
        b = parse_algebra_spec("free x:even:w=1; free xi:odd:w=2", weight_bound=4)
        assert a.names == b.names

    def test_error_position_and_expected(self):
        with pytest.raises(DslError) as err:
            parse_algebra_spec("quot x*3")
        assert err.value.line == 1
        assert err.value.col == 7
        assert "^" in err.value.expected

    def test_unknown_generator_in_d_rule(self):
        with pytest.raises(DslError):
            parse_algebra_spec("free x:even:w=1; d zeta = x^2")

    def test_inhomogeneous_d_rule(self):
        with pytest.raises(DslError):
            parse_algebra_spec("free x:even:w=1; xi:odd:w=3; d xi = x^2")

    @pytest.mark.parametrize("text", [
        "quot x^3",
        "cross",
        "sqzero D+=3 D-=2",
        "laurent 2",
        "free x:even:w=1; xi:odd:w=2; d xi = x^2",
        "free x:even:w=1,0, y:even:w=0,1",
    ])
    def test_print_parse_roundtrip(self, text):
        pres = parse_algebra_spec(text, weight_bound=5)
        printed = pretty_print(pres)
        again = parse_algebra_spec(printed, weight_bound=5)
        assert again.names == pres.names
        assert again.weights == pres.weights
        assert again.degrees == pres.degrees
        assert getattr(again, "differential", None) == getattr(pres, "differential", None)
        if pres.kind == "table":
            assert again.table == pres.table
