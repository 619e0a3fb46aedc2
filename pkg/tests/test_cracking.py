import pytest

from balloonlab.errors import DomainError, ParameterError
from balloonlab.services.ballooning import BalloonSpec, odd_balloon
from balloonlab.services.canonical import GraphFamily, canonical_form, is_isomorphic
from balloonlab.services.cracking import (
    ComponentKind,
    CrackAssignment,
    EdgeType,
    FbulletCase,
    classify_fbullet,
    crack,
    crack_family,
    cracking_family,
    decomposition_family_bruteforce,
    decomposition_host,
    fbullet_case,
    fixture_J,
    independent_sets,
    q_of_family,
)
from balloonlab.services.graph import disjoint_union, is_bipartite, join, make_named

K2 = make_named("complete", 2)
P3 = make_named("path", 3)
P4 = make_named("path", 4)
M3 = make_named("matching", 3)
P3_K2 = disjoint_union(P3, K2)


class TestCrack:
    def test_type_one_keeps_neighbours_adjacent(self, K3):
        G = crack(K3, CrackAssignment.uniform(K3, [0], EdgeType.TYPE_I))
        assert is_isomorphic(G, P4)

    def test_mixed_types(self, K3):
        assignment = CrackAssignment((0,), {(0, 1): EdgeType.TYPE_I, (0, 2): EdgeType.TYPE_II})
        assert is_isomorphic(crack(K3, assignment), P3_K2)

    def test_empty_set_is_identity(self, petersen):
        assert crack(petersen, CrackAssignment((), {})) == petersen

    @pytest.mark.parametrize("edge_type,extra", [(EdgeType.TYPE_I, 0), (EdgeType.TYPE_II, 1)])
    def test_vertex_and_edge_counts(self, C4, edge_type, extra):
        F = join(make_named("complete", 1), C4)
        U = (1, 3)
        G = crack(F, CrackAssignment.uniform(F, U, edge_type))
        degree_sum = sum(F.degree(u) for u in U)
        assert G.edge_count == F.edge_count
        assert G.n == F.n - len(U) + degree_sum * (1 + extra)

    def test_rejects_dependent_set(self, K3):
        with pytest.raises(ParameterError):
            crack(K3, CrackAssignment.uniform(K3, [0, 1], EdgeType.TYPE_I))

    def test_rejects_incomplete_types(self, K3):
        with pytest.raises(ParameterError):
            crack(K3, CrackAssignment((0,), {(0, 1): EdgeType.TYPE_I}))


class TestCrackFamilies:
    def test_triangle_single_vertex(self, K3):
        assert crack_family(K3, [0]) == GraphFamily.of(P4, P3_K2, M3)

    def test_empty_set(self, petersen):
        assert crack_family(petersen, []) == GraphFamily.of(petersen)

    def test_edge_single_vertex(self):
        assert crack_family(K2, [0]).strip_isolated() == GraphFamily.of(K2)

    def test_crack_family_rejects_bad_sets(self, K3):
        with pytest.raises(ParameterError):
            crack_family(K3, [0, 2])
        with pytest.raises(ParameterError):
            crack_family(K3, [5])

    def test_cracking_family_of_edge(self):
        assert cracking_family(K2).strip_isolated() == GraphFamily.of(K2)

    def test_cracking_family_of_triangle(self, K3):
        assert cracking_family(K3) == GraphFamily.of(K3, P4, P3_K2, M3)

    def test_cracking_preserves_edge_count(self, C4):
        F = join(make_named("complete", 1), C4)
        assert {G.edge_count for G in cracking_family(F)} == {F.edge_count}

    def test_independent_sets(self):
        assert independent_sets(P3) == [(), (0,), (1,), (2,), (0, 2)]
        assert set(independent_sets(P3, up_to_symmetry=True)) == {(), (0,), (1,), (0, 2)}


class TestFbullet:
    @pytest.mark.parametrize("F_bullet,kinds", [
        (make_named("cycle", 4), [ComponentKind.EVEN_CYCLE]),
        (K2, [ComponentKind.EDGE]),
        (P3, [ComponentKind.TREE]),
        (disjoint_union(make_named("cycle", 4), K2), [ComponentKind.EVEN_CYCLE, ComponentKind.EDGE]),
    ])
    def test_classify(self, F_bullet, kinds):
        assert classify_fbullet(F_bullet) == kinds

    @pytest.mark.parametrize("F_bullet", [make_named("cycle", 5), make_named("complete", 3), make_named("empty", 1)])
    def test_classify_rejects(self, F_bullet):
        with pytest.raises(DomainError):
            classify_fbullet(F_bullet)

    @pytest.mark.parametrize("F_bullet,case", [
        (disjoint_union(make_named("cycle", 4), make_named("cycle", 6)), FbulletCase.ALL_EVEN_CYCLES),
        (make_named("matching", 3), FbulletCase.ALL_SINGLE_EDGES),
        (make_named("star", 4), FbulletCase.MIXED_TREES),
        (disjoint_union(make_named("cycle", 4), K2), FbulletCase.MIXED_TREES),
    ])
    def test_case(self, F_bullet, case):
        assert fbullet_case(F_bullet) == case

    def test_fixture_J1_of_wheel_is_a_tree(self, C4):
        J1 = fixture_J(C4, 1)
        assert (J1.n, J1.edge_count) == (9, 8)
        assert is_bipartite(J1)

    def test_fixture_J3_of_wheel(self, C4):
        J3 = fixture_J(C4, 3).strip_isolated()
        assert is_isomorphic(J3, disjoint_union(make_named("star", 5), make_named("matching", 4)))

    def test_fixture_J2_of_two_edges(self):
        J2 = fixture_J(make_named("matching", 2), 2).strip_isolated()
        assert is_isomorphic(J2, disjoint_union(make_named("star", 3), make_named("matching", 4)))

    @pytest.mark.parametrize("which", [1, 2, 3, 4])
    def test_fixtures_are_crackings(self, C4, which):
        assert fixture_J(C4, which) in cracking_family(join(make_named("complete", 1), C4))

    def test_fixture_index(self, C4):
        with pytest.raises(ParameterError):
            fixture_J(C4, 5)


class TestQValues:
    @pytest.mark.parametrize("F_bullet,q", [
        (make_named("cycle", 4), 4),
        (make_named("cycle", 6), 6),
        (disjoint_union(make_named("cycle", 4), make_named("cycle", 4)), 8),
        (K2, 2),
        (make_named("matching", 2), 3),
        (P3, 3),
        (make_named("star", 4), 4),
        (disjoint_union(make_named("cycle", 4), K2), 6),
    ])
    def test_q_of_cracking_family(self, F_bullet, q):
        assert q_of_family(cracking_family(join(make_named("complete", 1), F_bullet))) == q

    def test_no_bipartite_member(self, K3):
        with pytest.raises(DomainError):
            q_of_family(GraphFamily.of(K3))


class TestDecompositionFamily:
    def test_host_shape(self):
        host = decomposition_host(K2, 2, 2)
        assert (host.n, host.edge_count) == (6, 1 + 4 * 2)

    def test_five_cycle(self):
        C5 = odd_balloon(BalloonSpec.uniform(K2, 5)).graph
        result = decomposition_family_bruteforce(C5, r=2, t_max=4, size_cap=4)
        assert result.family == GraphFamily.of(K2)
        assert result.minimal_t == {canonical_form(K2): 2}
        assert result.status == "complete"
        assert result.at_size_cap == []

    def test_edge_count_hint(self):
        C5 = odd_balloon(BalloonSpec.uniform(K2, 5)).graph
        result = decomposition_family_bruteforce(C5, r=2, t_max=4, size_cap=4, edge_count_hint=1)
        assert result.family == GraphFamily.of(K2)

    def test_budget_gives_indeterminate(self):
        C5 = odd_balloon(BalloonSpec.uniform(K2, 5)).graph
        result = decomposition_family_bruteforce(C5, r=2, t_max=4, size_cap=3, budget=1)
        assert result.status == "indeterminate"
        assert result.undecided

    def test_rejects_bipartite_target(self):
        with pytest.raises(DomainError):
            decomposition_family_bruteforce(make_named("cycle", 6))

    @pytest.mark.slow
    def test_matches_cracking_family_for_path(self):
        target = odd_balloon(BalloonSpec.uniform(P4, 5)).graph
        result = decomposition_family_bruteforce(target, r=2, t_max=8, size_cap=7)
        assert result.status == "complete"
        assert result.family == cracking_family(P4).strip_isolated()
        assert result.family == GraphFamily.of(P4, P3_K2, M3)

    @pytest.mark.slow
    def test_matches_cracking_family_for_triangle(self, K3):
        target = odd_balloon(BalloonSpec.uniform(K3, 5)).graph
        result = decomposition_family_bruteforce(target, r=2, t_max=8, size_cap=6)
        assert result.family == cracking_family(K3)
