"""Exterior-algebra core: products, signs, canonical form, parity, norm."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grk.grassmann import (
    GeneratorRegistry,
    GrassmannElement,
    GrassmannError,
    gen,
    gmul,
    gadd,
    gscale,
    gparity,
    gnorm,
)

from util import sorted_product_oracle


def make_registry(n):
    return GeneratorRegistry([f"t{i}" for i in range(n)])


def monomial(reg, indices, coeff=1.0):
    el = GrassmannElement.scalar(coeff, reg)
    for i in indices:
        el = el * gen(reg, f"t{i}")
    return el


class TestGen:
    def test_single_generator(self):
        reg = GeneratorRegistry(["G_3_1"])
        el = gen(reg, "G_3_1")
        assert el.terms == {1: 1.0 + 0j}

    def test_nilpotency(self):
        reg = make_registry(1)
        assert (gen(reg, "t0") * gen(reg, "t0")).is_zero()

    def test_empty_registry_errors(self):
        reg = GeneratorRegistry()
        with pytest.raises(GrassmannError):
            gen(reg, "t0")

    def test_unknown_label_errors(self):
        reg = make_registry(2)
        with pytest.raises(GrassmannError, match="unregistered"):
            gen(reg, "nope")

    def test_registry_is_capped_at_64(self):
        reg = make_registry(64)
        with pytest.raises(GrassmannError):
            reg.add("overflow")


class TestProduct:
    def test_anticommutation(self):
        reg = make_registry(2)
        t1, t2 = gen(reg, "t0"), gen(reg, "t1")
        assert t1 * t2 == -(t2 * t1)
        assert (t1 * t2).terms == {0b11: 1.0 + 0j}

    def test_square_with_body(self):
        reg = make_registry(1)
        x = GrassmannElement.scalar(1, reg) + gen(reg, "t0")
        sq = x * x
        assert sq.terms == {0: 1.0 + 0j, 1: 2.0 + 0j}

    def test_crossing_signs_match_sort_oracle(self):
        # (t0 t1) * t2 and t1 * (t0 t2), signs frozen from the
        # transposition-sort oracle.
        reg = make_registry(3)
        s, merged = sorted_product_oracle((0, 1), (2,))
        assert (s, merged) == (1, (0, 1, 2))
        assert (monomial(reg, [0, 1]) * monomial(reg, [2])).terms == {0b111: 1.0 + 0j}

        s, merged = sorted_product_oracle((1,), (0, 2))
        assert (s, merged) == (-1, (0, 1, 2))
        assert (monomial(reg, [1]) * monomial(reg, [0, 2])).terms == {0b111: -1.0 + 0j}

    @pytest.mark.parametrize("na,nb", list(itertools.product(range(4), range(4))))
    def test_all_small_monomial_products_match_oracle(self, na, nb):
        reg = make_registry(6)
        for a in itertools.combinations(range(6), na):
            for b in itertools.combinations(range(6), nb):
                s, merged = sorted_product_oracle(a, b)
                got = monomial(reg, a) * monomial(reg, b)
                if s == 0:
                    assert got.is_zero()
                else:
                    mask = sum(1 << i for i in merged)
                    assert got.terms == {mask: complex(s)}

    def test_registry_mismatch(self):
        ra, rb = make_registry(1), make_registry(1)
        with pytest.raises(GrassmannError):
            gen(ra, "t0") * gen(rb, "t0")

    def test_repeated_index_kills_product(self):
        reg = make_registry(3)
        x = monomial(reg, [0, 1]) + monomial(reg, [2])
        t0 = gen(reg, "t0")
        assert (t0 * x * t0).is_zero()


class TestLinear:
    def test_cancellation_gives_empty(self):
        reg = make_registry(1)
        t = gen(reg, "t0")
        assert gadd(t, gscale(t, -1)).is_zero()

    def test_scale_by_i(self):
        reg = make_registry(2)
        el = gscale(monomial(reg, [0, 1]), 1j)
        assert el.terms == {0b11: 1j}

    def test_disjoint_supports_union(self):
        reg = make_registry(3)
        a = monomial(reg, [0], 2.0)
        b = monomial(reg, [1, 2], -1.0)
        assert gadd(a, b).terms == {0b001: 2.0 + 0j, 0b110: -1.0 + 0j}


class TestParity:
    def test_examples(self):
        reg = make_registry(2)
        one = GrassmannElement.scalar(1, reg)
        assert gparity(one + monomial(reg, [0, 1])) == "even"
        assert gparity(gen(reg, "t0")) == "odd"
        assert gparity(one + gen(reg, "t0")) == "mixed"
        assert gparity(GrassmannElement.zero(reg)) == "zero"

    def test_parity_multiplicative_on_homogeneous(self):
        reg = make_registry(4)
        table = {"even": 0, "odd": 1}
        for a_idx in [(0,), (1,), (0, 1), (2, 3)]:
            for b_idx in [(2,), (3,), (2, 3), (0, 1)]:
                a, b = monomial(reg, a_idx), monomial(reg, b_idx)
                ab = a * b
                if ab.is_zero():
                    continue
                expected = (table[gparity(a)] + table[gparity(b)]) % 2
                assert table[gparity(ab)] == expected


class TestNorm:
    def test_zero(self):
        assert gnorm(GrassmannElement.zero()) == 0.0

    def test_pythagorean(self):
        reg = make_registry(2)
        el = monomial(reg, [0], 3.0) + monomial(reg, [1], 4j)
        assert gnorm(el) == pytest.approx(5.0)

    def test_product_norm_bound(self):
        # |ab| <= sqrt(#monomial pairs) * |a| * |b| on random elements
        import random

        rnd = random.Random(7)
        reg = make_registry(6)
        for _ in range(50):
            a = GrassmannElement.zero(reg)
            b = GrassmannElement.zero(reg)
            for _ in range(4):
                idx = rnd.sample(range(6), rnd.randint(0, 3))
                a = a + monomial(reg, sorted(idx), complex(rnd.gauss(0, 1), rnd.gauss(0, 1)))
                idx = rnd.sample(range(6), rnd.randint(0, 3))
                b = b + monomial(reg, sorted(idx), complex(rnd.gauss(0, 1), rnd.gauss(0, 1)))
            pairs = len(a.terms) * len(b.terms)
            bound = math.sqrt(max(pairs, 1)) * gnorm(a) * gnorm(b)
            assert gnorm(gmul(a, b)) <= bound + 1e-12


class TestAlgebraLaws:
    def test_associativity_exhaustive_small(self):
        # all monomial triples over 4 generators
        reg = make_registry(4)
        masks = list(itertools.chain.from_iterable(
            itertools.combinations(range(4), k) for k in range(5)
        ))
        for a_idx, b_idx, c_idx in itertools.product(masks, repeat=3):
            a, b, c = (monomial(reg, i) for i in (a_idx, b_idx, c_idx))
            assert (a * b) * c == a * (b * c)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_associativity_randomized(self, data):
        reg = make_registry(12)
        def draw_element():
            nterms = data.draw(st.integers(0, 3))
            el = GrassmannElement.zero(reg)
            for _ in range(nterms):
                idx = data.draw(st.sets(st.integers(0, 11), max_size=4))
                re = data.draw(st.integers(-3, 3))
                im = data.draw(st.integers(-3, 3))
                el = el + monomial(reg, sorted(idx), complex(re, im))
            return el
        a, b, c = draw_element(), draw_element(), draw_element()
        lhs, rhs = (a * b) * c, a * (b * c)
        assert gnorm(lhs - rhs) <= 1e-12 * max(1.0, gnorm(lhs))

    @settings(max_examples=200, deadline=None)
    @given(st.sets(st.integers(0, 9), max_size=5), st.sets(st.integers(0, 9), max_size=5))
    def test_supercommutativity(self, a_idx, b_idx):
        reg = make_registry(10)
        a, b = monomial(reg, sorted(a_idx)), monomial(reg, sorted(b_idx))
        sign = (-1) ** (len(a_idx) * len(b_idx))
        assert a * b == (b * a).scale(sign)


class TestJson:
    def test_round_trip(self):
        reg = make_registry(5)
        el = (monomial(reg, [0, 3], 1.5 - 2j)
              + monomial(reg, [1], 0.25j)
              + GrassmannElement.scalar(-3, reg))
        data = el.to_terms_json()
        back = GrassmannElement.from_terms_json(data, reg)
        assert back == el

    def test_terms_sorted_by_mask(self):
        reg = make_registry(3)
        el = monomial(reg, [2]) + monomial(reg, [0])
        gens = [t["gens"] for t in el.to_terms_json()]
        assert gens == [[0], [2]]
