"""Field and polynomial arithmetic: pinned examples plus algebraic properties."""

import pytest
from hypothesis import given, settings, strategies as st

from pointless.errors import (
    CompositeCharacteristic,
    DivisionByZero,
    DuplicateNodes,
    MixedFields,
    NoSquareRoot,
    OddCharacteristic,
    ReduciblePolynomial,
)
from pointless.field import (
    FiniteField,
    Poly,
    QuotientField,
    RationalFunction,
    canonical_extension,
    embed,
    map_poly,
)

F5 = FiniteField(5)
F32 = FiniteField(2, 5, [1, 0, 1, 0, 0, 1])       # a^5 + a^2 + 1 = 0
F4 = FiniteField(2, 2, [1, 1, 1])                 # a^2 + a + 1 = 0
F16 = FiniteField(2, 4, [1, 1, 0, 0, 1])          # a^4 + a + 1 = 0
F9 = FiniteField(3, 2, [-1, -1, 1])               # a^2 - a - 1 = 0
F25 = FiniteField(5, 2, [2, -1, 1])               # a^2 - a + 2 = 0
F27 = FiniteField(3, 3, [1, -1, 0, 1])            # a^3 - a + 1 = 0


class TestConstruction:
    def test_prime_field(self):
        assert F5.q == 5 and F5.n == 1

    def test_composite_characteristic(self):
        with pytest.raises(CompositeCharacteristic):
            FiniteField(6)

    def test_reducible_rejected(self):
        # x^2 - 1 = (x-1)(x+1) over F_3
        with pytest.raises(ReduciblePolynomial):
            FiniteField(3, 2, [-1, 0, 1])

    def test_irreducible_accepted(self):
        F = FiniteField(3, 2, [1, 0, 1])          # x^2 + 1 irreducible over F_3
        assert F.q == 9

    def test_f32_defining_relation(self):
        a = F32.gen
        assert a ** 5 == F32.element([1, 0, 1])   # a^5 = a^2 + 1

    def test_element_parsing(self):
        assert F32.element("a^30") == F32.gen ** 30
        assert F25.element([2, 3]) == F25.element(2) + F25.element(3) * F25.gen
        assert F5.element(7) == F5.element(2)


class TestArithmetic:
    def test_inverse_f5(self):
        assert F5.element(2).inv() == F5.element(3)

    def test_inverse_extension(self):
        for v in F27.elements():
            if not v.is_zero():
                assert v * v.inv() == F27.one

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            F5.zero.inv()

    def test_mixed_fields(self):
        with pytest.raises(MixedFields):
            F5.one + F9.one

    def test_sqrt_char2_bijection(self):
        a = F4.gen
        assert a.sqrt() == a + F4.one             # (a+1)^2 = a^2+1 = a
        for v in F32.elements():
            assert v.sqrt() ** 2 == v

    def test_sqrt_odd(self):
        for F in (F5, F9, F25, F27):
            for v in F.elements():
                if v.is_square():
                    assert v.sqrt() ** 2 == v
                else:
                    with pytest.raises(NoSquareRoot):
                        v.sqrt()

    def test_frobenius_fixes_field(self):
        for F in (F9, F25, F32):
            for v in F.elements():
                assert v ** F.q == v


class TestSquares:
    def test_f5_squares(self):
        squares = {F.coeffs for F in (F5.element(i) ** 2 for i in range(5))}
        assert not F5.element(2).is_square()
        assert F5.element(4).is_square()
        assert len(squares) == 3

    def test_f9_minus_one_square(self):
        assert (-F9.one).is_square()              # q = 9 is 1 mod 4

    def test_char2_all_squares(self):
        F8 = FiniteField(2, 3, [1, 1, 0, 1])
        assert all(v.is_square() for v in F8.elements())

    def test_square_count_odd_q(self):
        for F in (F5, F9, F25, F27):
            assert sum(v.is_square() for v in F.elements()) == (F.q + 1) // 2

    def test_canonical_nonsquare(self):
        assert F5.canonical_nonsquare == F5.element(2)
        with pytest.raises(OddCharacteristic):
            F4.canonical_nonsquare


class TestTrace:
    def test_trace_examples(self):
        assert F32.one.trace_to_F2() == 1         # odd degree 5
        assert F4.gen.trace_to_F2() == 1          # a + a^2 = 1
        assert F16.one.trace_to_F2() == 0         # even degree 4
        with pytest.raises(OddCharacteristic):
            F5.one.trace_to_F2()

    def test_trace_additive_and_balanced(self):
        vals = [v.trace_to_F2() for v in F32.elements()]
        assert sum(vals) == 16                    # trace is balanced
        for v in F32.elements():
            for w in list(F32.elements())[:8]:
                assert (v + w).trace_to_F2() == (v.trace_to_F2() + w.trace_to_F2()) % 2


class TestPoly:
    def test_separability(self):
        f5 = Poly.from_ints(F5, [1, 0, 0, 0, 0, 0, 0, 0, 1])   # x^8 + 1
        assert f5.is_separable()
        F2 = FiniteField(2)
        f2 = Poly.from_ints(F2, [1, 0, 0, 0, 0, 0, 0, 0, 1])
        assert not f2.is_separable()              # (x+1)^8

    def test_gcd_coprime_cubics(self):
        F3 = FiniteField(3)
        f = Poly.from_ints(F3, [-1, -1, 0, 1])    # x^3 - x - 1
        g = Poly.from_ints(F3, [-1, 1, 0, -1])    # -x^3 + x - 1
        assert f.gcd(g).degree == 0

    def test_divmod_roundtrip(self):
        f = Poly.from_ints(F9, [1, 2, 0, 1, 2])
        g = Poly.from_ints(F9, [2, 1, 1])
        q, r = divmod(f, g)
        assert q * g + r == f and r.degree < g.degree

    def test_interpolate_roundtrip(self):
        nodes = [F25.from_index(i) for i in range(6)]
        values = [F25.from_index(3 * i + 1) for i in range(6)]
        f = Poly.interpolate(F25, nodes, values)
        assert all(f.eval(x) == y for x, y in zip(nodes, values))
        with pytest.raises(DuplicateNodes):
            Poly.interpolate(F25, [F25.one, F25.one], [F25.one, F25.zero])

    def test_roots(self):
        f = Poly.from_ints(F5, [1, 0, 1])         # x^2 + 1 = (x-2)(x-3)
        assert {F5.index(r) for r in f.roots()} == {2, 3}

    def test_factor_reassembles(self):
        for F in (F5, F32, F9):
            f = Poly.from_ints(F, [1, 1, 0, 2, 0, 0, 1, 1])
            acc = Poly.constant(F, f.lc)
            for piece, m in f.factor():
                assert piece.is_irreducible()
                for _ in range(m):
                    acc = acc * piece
            assert acc == f

    def test_factor_with_multiplicity(self):
        F3 = FiniteField(3)
        x = Poly.x(F3)
        one = Poly.constant(F3, F3.one)
        f = (x + one) * (x + one) * (x * x + one)
        fac = dict(f.factor())
        assert fac[(x + one)] == 2

    def test_irreducibility(self):
        F2 = FiniteField(2)
        assert Poly.from_ints(F2, [1, 0, 1, 0, 0, 1]).is_irreducible()   # x^5+x^2+1
        assert not Poly.from_ints(F2, [1, 0, 0, 0, 0, 0, 1]).is_irreducible()

    def test_squarefree_part(self):
        F3 = FiniteField(3)
        x = Poly.x(F3)
        one = Poly.constant(F3, F3.one)
        f = (x + one) ** 3 * (x * x + one)
        sf = f.squarefree_part()
        assert sf == ((x + one) * (x * x + one)).monic()


class TestRationalFunction:
    def test_normalization(self):
        x = Poly.x(F5)
        one = Poly.constant(F5, F5.one)
        r = RationalFunction((x + one) * x, (x + one) * (x - one))
        assert r.num == x and r.den == x - one

    def test_pole(self):
        x = Poly.x(F5)
        r = RationalFunction(Poly.constant(F5, F5.one), x)
        assert r.has_pole_at(F5.zero)
        with pytest.raises(DivisionByZero):
            r.eval(F5.zero)


class TestEmbed:
    def test_prime_field_case(self):
        big, phi = embed(F5, 2)
        assert big.q == 25
        assert phi(F5.element(3)) == big.element(3)

    def test_defining_relation_preserved(self):
        big, phi = embed(F25, 2)
        assert big.q == 625
        img = phi(F25.gen)
        # a^2 - a + 2 = 0 must hold for the image
        assert img * img - img + big.element(2) == big.zero

    def test_homomorphism(self):
        for F, m in ((F25, 2), (F27, 2), (F32, 2)):
            big, phi = embed(F, m)
            elems = list(F.elements())
            for x in elems[::5]:
                for y in elems[::7]:
                    assert phi(x + y) == phi(x) + phi(y)
                    assert phi(x * y) == phi(x) * phi(y)
            assert phi(F.one) == big.one

    def test_deterministic(self):
        b1, p1 = embed(F27, 2)
        b2, p2 = embed(F27, 2)
        assert b1 is b2 and p1(F27.gen) == p2(F27.gen)

    def test_root_count_f27_in_f729(self):
        big, _ = embed(F27, 2)
        mini = Poly.from_ints(big, [1, -1, 0, 1])
        assert len(mini.roots()) == 3

    def test_map_poly(self):
        big, phi = embed(F9, 2)
        f = Poly(F9, [F9.gen, F9.one])
        g = map_poly(f, big, phi)
        for v in list(F9.elements())[:4]:
            assert g.eval(phi(v)) == phi(f.eval(v))


class TestQuotientField:
    def test_adjoined_root(self):
        f = Poly.from_ints(F5, [2, 1, 1])         # x^2 + x + 2, irreducible over F_5
        assert f.is_irreducible()
        K = QuotientField(f)
        x0 = K.x_class
        assert x0 * x0 + x0 + K.from_base(F5.element(2)) == K.zero
        assert K.order == 25

    def test_square_and_sqrt(self):
        f = Poly.from_ints(F5, [2, 1, 1])
        K = QuotientField(f)
        x0 = K.x_class
        v = x0 * x0 + K.one
        if v.is_square():
            assert v.sqrt() * v.sqrt() == v
        sq = v * v
        assert sq.is_square() and sq.sqrt() ** 2 == sq

    def test_char2_sqrt(self):
        F2 = FiniteField(2)
        f = Poly.from_ints(F2, [1, 1, 0, 1])      # x^3 + x + 1
        K = QuotientField(f)
        v = K.x_class + K.one
        assert v.sqrt() * v.sqrt() == v


class TestDlogTables:
    def test_consistency(self):
        for F in (F5, F9, F25):
            exp, log = F.dlog_tables()
            assert len(exp) == F.q - 1
            for k, idx in enumerate(exp):
                assert log[idx] == k
            assert log[0] is None                 # zero has no log
            # multiplication through the table matches field arithmetic
            g = F.from_index(exp[1])
            k = 5 % (F.q - 1)
            assert F.from_index(exp[k]) == g ** k


@given(st.integers(0, 24), st.integers(0, 24))
@settings(max_examples=60, deadline=None)
def test_field_ring_axioms(i, j):
    x, y = F25.from_index(i), F25.from_index(j)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + F25.one) == x * y + x


@given(st.lists(st.integers(0, 8), min_size=1, max_size=6),
       st.lists(st.integers(0, 8), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_poly_mul_eval_compat(a, b):
    f = Poly(F9, [F9.from_index(c) for c in a])
    g = Poly(F9, [F9.from_index(c) for c in b])
    v = F9.from_index(5)
    assert (f * g).eval(v) == f.eval(v) * g.eval(v)


def test_canonical_extension_cached():
    assert canonical_extension(3, 6) is canonical_extension(3, 6)
    assert canonical_extension(3, 6).q == 729
