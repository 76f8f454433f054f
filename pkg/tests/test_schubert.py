from fractions import Fraction
from math import factorial

import pytest

from jetform import (
    ParseError,
    Permutation,
    block_rotation,
    catalan_congruence_check,
    catalan_number,
    divided_difference,
    in_IS,
    inversions,
    monk_expand,
    normal_form_IS,
    schubert_expansion,
    schubert_poly,
    schubert_table,
    zring,
)

from conftest import make_rng, random_poly


def test_inversions_examples():
    assert inversions(Permutation.identity(4)) == 0
    assert inversions(Permutation([2, 3, 1])) == 2
    w = block_rotation(3, 2)
    assert w.oneline == (2, 3, 1)
    assert inversions(w) == 2 * (3 - 2) * 2 // 2  # lam1 * (ell - lam1) = 2


def test_permutation_validation_and_parse():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
    w = Permutation.parse("[2,3,1]")
    assert w == Permutation([2, 3, 1])
    assert Permutation.parse(str(w)) == w
    with pytest.raises(ParseError):
        Permutation.parse("[2,3]")
    with pytest.raises(ParseError):
        Permutation.parse("nope")


def test_permutation_composition_convention():
    # (self * other)(i) = self(other(i))
    a = Permutation([2, 1, 3])
    b = Permutation([1, 3, 2])
    assert (a * b).oneline == (2, 3, 1)
    assert (b * a).oneline == (3, 1, 2)


def test_divided_difference_examples():
    ring = zring(3)
    z1, z2, _ = ring.gens()
    assert divided_difference(z1, 1) == ring.one()
    assert divided_difference(z1 * z2, 1).is_zero()
    assert divided_difference(z1**2, 1) == z1 + z2


def test_divided_difference_square_zero_and_braid():
    rng = make_rng(12)
    ring = zring(4)
    for _ in range(15):
        p = random_poly(ring, rng, max_deg=4, terms=5)
        for i in (1, 2, 3):
            assert divided_difference(divided_difference(p, i), i).is_zero()
        for i in (1, 2):
            lhs = divided_difference(
                divided_difference(divided_difference(p, i), i + 1), i
            )
            rhs = divided_difference(
                divided_difference(divided_difference(p, i + 1), i), i + 1
            )
            assert lhs == rhs


def test_schubert_simple_reflections():
    for ell in (2, 3, 4):
        ring = zring(ell)
        for i in range(1, ell):
            expected = ring.zero()
            for k in range(i):
                expected = expected + ring.var(k)
            assert schubert_poly(Permutation.simple(i, ell)) == expected


def test_schubert_identity_and_grassmannian():
    assert schubert_poly(Permutation.identity(3)) == zring(3).one()
    ring = zring(3)
    assert schubert_poly(Permutation([3, 1, 2])) == ring.var(0) ** 2


def test_schubert_table_complete_and_graded():
    for ell in (2, 3, 4):
        table = schubert_table(ell)
        assert len(table) == factorial(ell)
        for w, poly in table.items():
            assert poly.is_homogeneous()
            assert poly.total_degree() == w.length


def test_schubert_word_independence():
    # every ascent route from a longer permutation gives the same polynomial
    for ell in (3, 4, 5):
        table = schubert_table(ell)
        for w, poly in table.items():
            for i in range(1, ell):
                v = w.swap_positions(i, i + 1)
                if v.length == w.length + 1:
                    assert divided_difference(table[v], i) == poly


def test_monk_examples():
    assert monk_expand(1, Permutation.identity(2)) == [Permutation([2, 1])]
    assert monk_expand(1, Permutation([2, 1])) == []
    assert in_IS(zring(2).var(0) ** 2)
    assert monk_expand(1, Permutation([2, 1, 3])) == [Permutation([3, 1, 2])]


def test_monk_matches_normal_form_product():
    for ell in (2, 3, 4):
        table = schubert_table(ell)
        nf = {w: normal_form_IS(p, ell) for w, p in table.items()}
        for w in table:
            for r in range(1, ell):
                product = normal_form_IS(table[Permutation.simple(r, ell)] * table[w], ell)
                total = zring(ell).zero()
                for v in monk_expand(r, w):
                    total = total + nf[v]
                assert product == normal_form_IS(total, ell)


def test_schubert_normal_forms_have_full_rank():
    from jetform import ExactSpan
    from jetform.linalg import int_row

    for ell in (2, 3, 4, 5):
        span = ExactSpan()
        for w, p in schubert_table(ell).items():
            assert span.insert(int_row(normal_form_IS(p, ell).terms), w)
        assert span.rank == factorial(ell)


def test_expansion_examples():
    ring = zring(4)
    z = ring.gens()
    for i in (1, 2, 3):
        p = ring.zero()
        for k in range(i):
            p = p + z[k]
        assert schubert_expansion(p) == {Permutation.simple(i, 4): Fraction(1)}
    sym = z[0] + z[1] + z[2] + z[3]
    assert schubert_expansion(sym) == {}
    # binomial power lands on a single Grassmannian class with a Catalan coefficient
    expansion = schubert_expansion((z[0] + z[1]) ** 4)
    assert expansion == {block_rotation(4, 2): Fraction(2)}


def test_expansion_recombines_to_normal_form():
    rng = make_rng(3)
    ring = zring(4)
    table = schubert_table(4)
    for _ in range(8):
        p = random_poly(ring, rng, max_deg=4, terms=5)
        expansion = schubert_expansion(p)
        total = ring.zero()
        for w, c in expansion.items():
            total = total + table[w].scale(c)
        assert normal_form_IS(total, 4) == normal_form_IS(p, 4)


def test_expansion_cap():
    ring = zring(7)
    with pytest.raises(ValueError):
        schubert_expansion(ring.var(0), 7)


def test_catalan_values():
    assert [catalan_number(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert catalan_congruence_check(2) == 1
    assert catalan_congruence_check(3) == 1
    assert catalan_congruence_check(4) == 2
    assert catalan_congruence_check(5) == 5


def test_block_rotation_length_and_factorisation():
    for ell in range(2, 7):
        for lam1 in range(1, ell):
            w = block_rotation(ell, lam1)
            assert w.length == lam1 * (ell - lam1)
            # product of the straddling transpositions, applied left to right
            prod = Permutation.identity(ell)
            for i in range(1, lam1 + 1):
                for k in range(ell, lam1, -1):
                    prod = Permutation.transposition(i, k, ell) * prod
            assert prod == w


def test_block_rotation_is_unique_maximal_chain_target():
    # repeated straddling transpositions that raise the length land on the
    # rotation alone at full length
    for ell in (3, 4, 5):
        for lam1 in range(1, ell):
            frontier = {Permutation.identity(ell)}
            for _ in range(lam1 * (ell - lam1)):
                nxt = set()
                for w in frontier:
                    for j in range(1, lam1 + 1):
                        for k in range(lam1 + 1, ell + 1):
                            v = w.swap_positions(j, k)
                            if v.length == w.length + 1:
                                nxt.add(v)
                frontier = nxt
            assert frontier == {block_rotation(ell, lam1)}


def test_binomial_power_expansion_is_positive_integral():
    for ell in (3, 4, 5):
        ring = zring(ell)
        for lam1 in range(1, ell):
            base = ring.zero()
            for k in range(lam1):
                base = base + ring.var(k)
            expansion = schubert_expansion(base ** (lam1 * (ell - lam1)))
            assert expansion
            for c in expansion.values():
                assert c.denominator == 1 and c > 0
