import itertools
import random

import pytest

from edgeideals.adpaths import (
    AdmissiblePath,
    Binomial,
    admissible_path_monomials,
    admissible_paths,
    binomial_edge_generators,
    colon_membership_violations,
    initial_ideal,
    path_monomial,
    wedge,
)
from edgeideals.errors import GuardError
from edgeideals.graphs import (
    Graph,
    complete_graph,
    enumerate_graphs,
    masked_graph,
    path_graph,
)
from edgeideals.monomials import Monomial, minimalize


def naive_admissible_paths(g):
    """Oracle: enumerate every simple path and apply the definition directly."""
    found = set()
    for size in range(2, g.n + 1):
        for combo in itertools.combinations(range(1, g.n + 1), size):
            for perm in itertools.permutations(combo):
                if perm[0] >= perm[-1]:
                    continue
                if any(not g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
                    continue
                s, t = perm[0], perm[-1]
                if all(v < s or v > t for v in perm[1:-1]):
                    found.add(perm)
    return found


class TestBinomialGenerators:
    def test_single_edge(self):
        gens = binomial_edge_generators(complete_graph(2))
        assert len(gens) == 1
        assert gens[0].plus == Monomial.parse("x1*y2", 2)
        assert gens[0].minus == Monomial.parse("x2*y1", 2)
        assert gens[0].text() == "x1*y2 - x2*y1"

    def test_edgeless(self):
        assert binomial_edge_generators(Graph(3, (0, 0, 0))) == []

    def test_path_has_one_generator_per_edge(self):
        gens = binomial_edge_generators(path_graph(3))
        assert [b.text() for b in gens] == ["x1*y2 - x2*y1", "x2*y3 - x3*y2"]

    def test_terms_must_differ(self):
        with pytest.raises(ValueError):
            Binomial(Monomial.parse("x1", 1), Monomial.parse("x1", 1))


class TestAdmissiblePaths:
    def test_single_edge(self):
        assert [p.text() for p in admissible_paths(complete_graph(2))] == ["1->2"]

    def test_triangle_has_five(self):
        texts = [p.text() for p in admissible_paths(complete_graph(3))]
        assert texts == ["1->2", "1->3", "2->3", "1->3->2", "2->1->3"]

    def test_natural_path_has_only_edges(self):
        texts = [p.text() for p in admissible_paths(path_graph(3))]
        assert texts == ["1->2", "2->3"]

    def test_inner_vertex_inside_interval_rejected(self):
        with pytest.raises(ValueError):
            AdmissiblePath((1, 2, 3))

    def test_ends_must_increase(self):
        with pytest.raises(ValueError):
            AdmissiblePath((3, 1))

    def test_text_roundtrip(self):
        p = AdmissiblePath((3, 1, 4))
        assert AdmissiblePath.parse(p.text()) == p

    def test_guard(self):
        with pytest.raises(GuardError):
            admissible_paths(complete_graph(5), max_n=4)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_matches_naive_enumeration(self, n):
        for g in enumerate_graphs(n):
            expected = naive_admissible_paths(g)
            got = {p.vertices for p in admissible_paths(g)}
            assert got == expected

    def test_length_then_lex_order(self):
        for g in enumerate_graphs(5):
            ps = admissible_paths(g)
            keys = [(p.length, p.vertices) for p in ps]
            assert keys == sorted(keys)


class TestPathMonomial:
    def test_plain_edge(self):
        assert path_monomial(AdmissiblePath((2, 5)), 5).text() == "x2*y5"

    def test_inner_above(self):
        assert path_monomial(AdmissiblePath((1, 3, 2)), 3).text() == "x1*x3*y2"

    def test_inner_below(self):
        assert path_monomial(AdmissiblePath((3, 1, 4)), 4).text() == "x3*y1*y4"

    def test_degree_and_mult(self):
        for g in enumerate_graphs(5):
            for p in admissible_paths(g):
                mono = path_monomial(p, g.n)
                assert mono.degree == p.length + 1
                assert mono.is_squarefree
                assert mono.mult_support() == frozenset()


class TestInitialIdeal:
    def test_single_edge(self):
        assert [g.text() for g in initial_ideal(complete_graph(2))] == ["x1*y2"]

    def test_triangle(self):
        assert [g.text() for g in initial_ideal(complete_graph(3))] == [
            "x1*y2",
            "x1*y3",
            "x2*y3",
        ]

    def test_natural_paths_are_regular_sequences(self):
        for n in range(2, 7):
            gens = initial_ideal(path_graph(n)).gens
            assert [g.text() for g in gens] == [
                f"x{i}*y{i + 1}" for i in range(1, n)
            ]

    def test_degree_two_generators_are_the_edges(self):
        for g in enumerate_graphs(5):
            gens = initial_ideal(g).gens
            quad = {m.text() for m in gens if m.degree == 2}
            assert quad == {f"x{i}*y{j}" for i, j in g.edges()}

    def test_restriction_to_subset_matches_masked_graph(self):
        rng = random.Random(13)
        graphs = list(enumerate_graphs(5))
        for g in rng.sample(graphs, 12):
            w = rng.sample(range(1, 6), rng.randint(1, 5))
            wvars = set(w)
            inside = {
                mono
                for mono in initial_ideal(g).gens
                if all(
                    (k % 5) + 1 in wvars
                    for k in range(10)
                    if mono.exps[k]
                )
            }
            assert inside == set(initial_ideal(masked_graph(g, w)).gens)


class TestWedge:
    def test_inner_above_example(self):
        p = AdmissiblePath((2, 4, 3))
        w = wedge(p, 1)
        assert w.text() == "2->4"
        target = Monomial.parse("y4", 4) * path_monomial(p, 4)
        assert path_monomial(w, 4).divides(target)

    def test_inner_below_example(self):
        p = AdmissiblePath((3, 1, 4))
        w = wedge(p, 1)
        assert w.text() == "1->4"
        target = Monomial.parse("x1", 4) * path_monomial(p, 4)
        assert path_monomial(w, 4).divides(target)

    def test_requires_inner_index(self):
        with pytest.raises(ValueError):
            wedge(AdmissiblePath((1, 2)), 1)

    def test_wedges_exist_shrink_and_divide(self):
        for g in enumerate_graphs(5):
            for p in admissible_paths(g):
                for k in range(1, p.length):
                    w = wedge(p, k)  # constructor re-checks admissibility
                    assert w.length < p.length
                    v = p.vertices[k]
                    name = f"x{v}" if v < p.s else f"y{v}"
                    target = Monomial.parse(name, g.n) * path_monomial(p, g.n)
                    assert path_monomial(w, g.n).divides(target)


class TestColonMembership:
    def test_exhaustive_small(self):
        for n in range(2, 5):
            for g in enumerate_graphs(n):
                assert colon_membership_violations(g) == []

    def test_triangle_detail(self):
        # the long paths sit after the edges; check one membership by hand
        paths, monomials = admissible_path_monomials(complete_graph(3))
        j = paths.index(AdmissiblePath((1, 3, 2)))
        mj = monomials[j]
        yv = Monomial.parse("y3", 3)
        assert any(monomials[i].divides(yv * mj) for i in range(j))

    def test_vacuous_when_paths_are_edges(self):
        assert colon_membership_violations(path_graph(5)) == []

    def test_full_list_keeps_duplicates(self):
        # distinct paths may share a monomial; the ordered list keeps both
        g = complete_graph(4)
        paths, monomials = admissible_path_monomials(g)
        assert len(paths) == len(monomials)
        assert len(set(monomials)) < len(monomials)
