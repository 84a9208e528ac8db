import itertools
import random

import pytest

from edgeideals.errors import FormatError, GuardError
from edgeideals.monomials import (
    Monomial,
    MonomialIdeal,
    is_lyubeznik_subset,
    lyubeznik_subsets,
    mapping_cone_bound,
    minimalize,
)


def m(text, n=3):
    return Monomial.parse(text, n)


class TestMonomialArithmetic:
    def test_lcm_examples(self):
        assert m("x1*y2").lcm(m("x2*y3")) == m("x1*x2*y2*y3")
        a = m("x1*y2")
        assert a.lcm(a) == a
        assert m("x1*y2").lcm(m("x1*y3")) == m("x1*y2*y3")

    def test_colon_generator_examples(self):
        assert m("x1*y2").colon(m("x2*y3")) == m("x1*y2")
        assert m("x1*y2").colon(m("x1*y3")) == m("y2")
        assert m("x1*x3*y2").colon(m("x1*y2")) == m("x3")

    def test_degree_and_squarefree(self):
        assert m("x1*x3*y2").degree == 3
        assert m("x1*x3*y2").is_squarefree
        assert not Monomial.parse("x1^2*y2", 3).is_squarefree

    def test_mult_support(self):
        assert m("x1*y1*x2*y3").mult_support() == {1}
        assert Monomial.parse("x1*y2*x3*y4", 4).mult_support() == frozenset()
        assert Monomial.parse("x1*y1*x2*y2", 2).mult_support() == {1, 2}

    def test_divides(self):
        assert m("x1").divides(m("x1*y2"))
        assert not m("y3").divides(m("x1*y2"))

    def test_div_requires_divisibility(self):
        with pytest.raises(ValueError):
            m("x1*y2").div(m("x2"))


class TestTextForm:
    def test_canonical_output_sorts_blocks(self):
        assert Monomial.parse("x3*x1*y2", 3).text() == "x1*x3*y2"

    def test_unit(self):
        assert Monomial.one(6).text() == "1"
        assert Monomial.parse("1", 3) == Monomial.one(6)

    def test_powers_roundtrip(self):
        t = "x1^2*x2*y3^3"
        assert Monomial.parse(t, 3).text() == t

    def test_repeated_factors_accumulate(self):
        assert Monomial.parse("x1*x1*y2", 2).text() == "x1^2*y2"

    def test_bad_factor(self):
        with pytest.raises(FormatError):
            Monomial.parse("z1", 3)

    def test_out_of_range_index(self):
        with pytest.raises(FormatError):
            Monomial.parse("x4", 3)


class TestMinimalize:
    def test_drops_multiples(self):
        ideal = minimalize([m("x1*y2"), m("x1*x3*y2")])
        assert [g.text() for g in ideal] == ["x1*y2"]

    def test_triangle_path_monomials(self):
        gens = [m(t) for t in ["x1*y2", "x1*y3", "x2*y3", "x1*x3*y2", "x2*y1*y3"]]
        assert [g.text() for g in minimalize(gens)] == ["x1*y2", "x1*y3", "x2*y3"]

    def test_empty(self):
        assert minimalize([]).gens == ()

    def test_idempotent_and_order_independent(self):
        rng = random.Random(3)
        pool = [m(t) for t in ["x1*y2", "x1*y3", "x2*y3", "x1*x3*y2", "x2*y1*y3", "x1*x2*y3"]]
        base = minimalize(pool)
        assert minimalize(base.gens).gens == base.gens
        for _ in range(10):
            shuffled = pool[:]
            rng.shuffle(shuffled)
            assert minimalize(shuffled).gen_set() == base.gen_set()

    def test_duplicates_keep_first(self):
        ideal = minimalize([m("x1*y2"), m("x1*y2")])
        assert len(ideal) == 1


class TestColonIdeal:
    def test_principal(self):
        ideal = MonomialIdeal([m("x1*y2")])
        assert ideal.colon(m("x1*y3")).gen_set() == {m("y2")}

    def test_unit_result(self):
        ideal = MonomialIdeal([m("x1*y2"), m("x2*y3")])
        result = ideal.colon(m("x1*x2*y3"))
        assert result.is_unit
        assert result.gen_set() == {Monomial.one(6)}

    def test_colon_by_one_minimalizes(self):
        ideal = MonomialIdeal([m("x1*y2"), m("x1*x3*y2")])
        assert ideal.colon(Monomial.one(6)).gen_set() == {m("x1*y2")}

    def test_iterated_colon_matches_product(self):
        rng = random.Random(5)
        vars_ = ["x1", "x2", "x3", "y1", "y2", "y3"]
        for _ in range(25):
            gens = [
                m("*".join(rng.sample(vars_, rng.randint(1, 3))))
                for _ in range(rng.randint(1, 4))
            ]
            ideal = MonomialIdeal(gens)
            a = m(rng.choice(vars_))
            b = m(rng.choice(vars_))
            lhs = ideal.colon(a * b)
            rhs = ideal.colon(a).colon(b)
            assert lhs.gen_set() == rhs.gen_set()


class TestLyubeznik:
    def test_first_index_always_allowed(self):
        gens = [m("x1*y2"), m("x1*y3"), m("x2*y3")]
        assert is_lyubeznik_subset([1], gens)

    def test_triangle_pair(self):
        gens = [m("x1*y2"), m("x1*y3"), m("x2*y3")]
        # lcm(m2, m3) = x1*x2*y3 and m1 = x1*y2 does not divide it
        assert is_lyubeznik_subset([2, 3], gens)

    def test_regular_sequence_all_subsets(self):
        gens = [m("x1*y2"), m("x2*y3")]
        assert lyubeznik_subsets(gens, 2) == [(1,), (1, 2), (2,)]

    def test_single_generator(self):
        assert lyubeznik_subsets([m("x1*y2")], 1) == [(1,)]

    def test_guard(self):
        gens = [m("x1*y2")] * 21
        with pytest.raises(GuardError):
            lyubeznik_subsets(gens, 2)

    def test_indices_must_increase(self):
        with pytest.raises(ValueError):
            is_lyubeznik_subset([2, 2], [m("x1"), m("x2")])

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            is_lyubeznik_subset([3], [m("x1"), m("x2")])

    @pytest.mark.parametrize("seed", range(6))
    def test_dfs_matches_naive_enumeration(self, seed):
        rng = random.Random(seed)
        vars_ = ["x1", "x2", "x3", "y1", "y2", "y3"]
        gens = [
            m("*".join(rng.sample(vars_, rng.randint(1, 3))))
            for _ in range(rng.randint(2, 6))
        ]
        naive = set()
        for size in range(1, len(gens) + 1):
            for combo in itertools.combinations(range(1, len(gens) + 1), size):
                if is_lyubeznik_subset(list(combo), gens):
                    naive.add(combo)
        assert set(lyubeznik_subsets(gens, len(gens))) == naive

    def test_non_squarefree_path_agrees(self):
        gens = [Monomial.parse(t, 2) for t in ["x1^2*y2", "x1*y2^2", "x2*y1"]]
        naive = {
            combo
            for size in range(1, 4)
            for combo in itertools.combinations((1, 2, 3), size)
            if is_lyubeznik_subset(list(combo), gens)
        }
        assert set(lyubeznik_subsets(gens, 3)) == naive


class TestMappingConeBound:
    def test_principal_is_exact(self):
        b = mapping_cone_bound([m("x1*y2")])
        assert b.terms == {
            (0, Monomial.one(6).exps): 1,
            (1, m("x1*y2").exps): 1,
        }

    def test_regular_sequence_is_koszul(self):
        b = mapping_cone_bound([m("x1*y2"), m("x2*y3")])
        assert b.terms == {
            (0, Monomial.one(6).exps): 1,
            (1, m("x1*y2").exps): 1,
            (1, m("x2*y3").exps): 1,
            (2, m("x1*x2*y2*y3").exps): 1,
        }

    def test_redundant_generator_skipped(self):
        with_redundant = mapping_cone_bound([m("x1*y2"), m("x1*x3*y2")])
        assert with_redundant.terms == mapping_cone_bound([m("x1*y2")]).terms

    def test_constant_term_is_one(self):
        b = mapping_cone_bound([m("x1*y2"), m("x1*y3"), m("x2*y3")])
        assert b.terms[(0, Monomial.one(6).exps)] == 1
        assert all(v >= 0 for v in b.terms.values())

    def test_guard(self):
        gens = [m("x1*y2")] * 16
        with pytest.raises(GuardError):
            mapping_cone_bound(gens)

    def test_empty_needs_nvars(self):
        with pytest.raises(ValueError):
            mapping_cone_bound([])
        b = mapping_cone_bound([], nvars=4)
        assert b.terms == {(0, bytes(4)): 1}

    def test_dominates_entries_flags_excess(self):
        b = mapping_cone_bound([m("x1*y2")])
        ok = b.dominates_entries({(1, m("x1*y2").exps): 1})
        assert ok == []
        bad = b.dominates_entries({(1, m("x1*y3").exps): 1})
        assert bad == [(1, m("x1*y3").exps)]
