"""Named families, concatenation, closed forms, and extremal mutations."""

import pytest

from imfree import (
    ConstructionError,
    DomainError,
    MutationError,
    OrderedBipartiteGraph,
    bound_k2,
    bound_k3,
    complete,
    concat,
    concat2,
    contains,
    contains_bruteforce,
    decompose,
    delete_saturated_row,
    ex3_value,
    family_G,
    family_H,
    family_K3,
    graph_R,
    graph_S,
    m_formula,
    relocate_pendant,
)


def is_free(g, pattern):
    return contains(g, pattern) is None


def test_decompose_k2():
    d = decompose(5, 5)
    assert (d.r, d.e) == (1, 2)  # 5 = 3*1 + 2
    d = decompose(11, 5)
    assert (d.r, d.e) == (3, 2)  # 11 = 3*3 + 2
    assert 1 <= decompose(1, 3).e <= 1
    with pytest.raises(DomainError):
        decompose(4, 2)
    with pytest.raises(DomainError):
        decompose(0, 4)


def test_decompose_k3():
    d = decompose(4, 4, "K3")
    assert (d.r, d.e) == (2, 2)  # 4 = 1*2 + 2, 2 <= e <= 2
    d = decompose(5, 5, "K3")
    assert (d.r, d.e) == (1, 3)  # 5 = 2*1 + 3
    with pytest.raises(DomainError):
        decompose(3, 3, "K3")
    with pytest.raises(DomainError):
        decompose(1, 4, "K3")
    with pytest.raises(DomainError):
        decompose(4, 4, "K9mode")


def test_concat_layout():
    # [PAPER] worked 2-block example: overlap in one row and one column
    g = concat(complete(2, 2), complete(2, 2))
    assert g.to_grid() == "3 3\n110\n111\n011"
    assert g.edge_count() == 7


def test_concat_preconditions():
    no_corner = OrderedBipartiteGraph.from_grid("2 2\n01\n10")
    with pytest.raises(ConstructionError):
        concat(no_corner, complete(2, 2))
    with pytest.raises(ConstructionError):
        concat(complete(2, 2), no_corner)


def test_concat2_layout():
    g = concat2(complete(2, 2), complete(2, 3))
    assert g.p == 2 and g.q == 3
    assert g == complete(2, 3)
    g = concat2(complete(3, 3), complete(3, 3))
    assert (g.p, g.q) == (4, 4)
    assert g.edge_count() == 18 - 4


def test_concat2_preconditions():
    thin = complete(1, 3)
    with pytest.raises(ConstructionError):
        concat2(thin, complete(2, 2))
    with pytest.raises(ConstructionError):
        concat2(complete(2, 2), thin)


def test_family_H_example():
    # [PAPER] the 5 x 11 member for ell = 5 has 27 edges and avoids K_{2,5}
    g = family_H(5, 11, 5)
    assert (g.p, g.q) == (5, 11)
    assert g.edge_count() == 27
    assert g.edge_count() == m_formula(5, 11, 5)
    assert is_free(g, complete(2, 5))


def test_family_H_rejects_balanced_split():
    with pytest.raises(DomainError):
        family_H(9, 9, 5)


def test_family_G_example():
    # [PAPER] the 9 x 9 member for ell = 5 has 39 edges and avoids K_{2,5}
    g = family_G(9, 9, 5)
    assert (g.p, g.q) == (9, 9)
    assert g.edge_count() == 39
    assert g.edge_count() == m_formula(9, 9, 5)
    assert is_free(g, complete(2, 5))


def test_family_G_rejects_unbalanced_split():
    with pytest.raises(DomainError):
        family_G(5, 11, 5)


def test_family_H_G_edge_counts_sweep():
    # [DERIVED] every member matches the closed form and is pattern-free
    for ell in (3, 4, 5, 6):
        for p in range(1, 13):
            for q in range(1, 13):
                dp, dq = decompose(p, ell), decompose(q, ell)
                if dp.r < dq.r:
                    g = family_H(p, q, ell)
                elif dp.r == dq.r:
                    g = family_G(p, q, ell)
                else:
                    continue
                assert (g.p, g.q) == (p, q)
                assert g.edge_count() == m_formula(p, q, ell)
                assert is_free(g, complete(2, ell))


def test_family_K3_examples():
    # [PAPER] 4 x 4 member at ell = 4 has 14 edges; 3 x 5 member has 13
    g = family_K3(4, 4, 4)
    assert (g.p, g.q) == (4, 4)
    assert g.edge_count() == 14
    assert is_free(g, complete(3, 4))
    g = family_K3(3, 5, 4)
    assert (g.p, g.q) == (3, 5)
    assert g.edge_count() == 13
    assert is_free(g, complete(3, 4))


def test_family_K3_transposed_parameters():
    g = family_K3(5, 3, 4)
    assert (g.p, g.q) == (5, 3)
    assert g == family_K3(3, 5, 4).transposed()


def test_family_K3_sweep():
    # [DERIVED] edge counts match ex3_value; members avoid the pattern
    for ell in (4, 5, 6):
        for p in range(2, 13):
            for q in range(2, 13):
                g = family_K3(p, q, ell)
                value, _status = ex3_value(p, q, ell)
                assert (g.p, g.q) == (p, q)
                assert g.edge_count() == value
                assert is_free(g, complete(3, ell))


def test_graph_R():
    g = graph_R(5)
    assert (g.p, g.q) == (6, 9)
    assert g.edge_count() == 12
    # [DERIVED] the host itself avoids K_{2,2}
    assert contains_bruteforce(g, complete(2, 2)) is None
    with pytest.raises(DomainError):
        graph_R(2)


def test_graph_R_smallest():
    g = graph_R(3)
    assert (g.p, g.q) == (4, 7)
    assert contains_bruteforce(g, complete(2, 2)) is None


def test_graph_S():
    g = graph_S(4)
    assert (g.p, g.q) == (7, 7)
    assert g.edge_count() == 11
    assert contains_bruteforce(g, complete(2, 2)) is None
    with pytest.raises(DomainError):
        graph_S(1)


def test_hosts_free_sweep():
    # [DERIVED] all hosts up to n = 8 avoid K_{2,2}
    k22 = complete(2, 2)
    for n in range(2, 9):
        assert is_free(graph_S(n), k22)
    for n in range(3, 9):
        assert is_free(graph_R(n), k22)


def test_m_formula_values():
    # [PAPER] spot values of the closed form
    assert m_formula(5, 5, 2) == 9
    assert m_formula(3, 3, 3) == 7
    assert m_formula(5, 11, 5) == 27
    assert m_formula(9, 9, 5) == 39
    # [TRIVIAL] ell = 2 is the cross count
    assert all(m_formula(p, q, 2) == p + q - 1 for p in range(1, 6) for q in range(1, 6))
    with pytest.raises(DomainError):
        m_formula(0, 3, 3)
    with pytest.raises(DomainError):
        m_formula(3, 3, 1)


def test_m_formula_symmetric():
    for ell in (3, 4, 5):
        for p in range(1, 10):
            for q in range(1, 10):
                assert m_formula(p, q, ell) == m_formula(q, p, ell)


def test_ex3_value():
    # [PAPER] unbalanced cells are exact, balanced conjectured
    assert ex3_value(3, 5, 4) == (13, "exact")
    assert ex3_value(4, 6, 4) == (18, "exact")
    assert ex3_value(4, 4, 4) == (14, "conjectured")
    assert ex3_value(2, 2, 4) == (4, "conjectured")
    assert ex3_value(5, 3, 4) == ex3_value(3, 5, 4)
    with pytest.raises(DomainError):
        ex3_value(1, 4, 4)
    with pytest.raises(DomainError):
        ex3_value(4, 4, 3)


def test_bounds_dominate_formulas():
    for ell in (3, 4, 5):
        for p in range(1, 10):
            for q in range(1, 10):
                assert m_formula(p, q, ell) <= bound_k2(p, q, ell)
    for ell in (4, 5):
        for p in range(2, 10):
            for q in range(2, 10):
                assert ex3_value(p, q, ell)[0] <= bound_k3(p, q, ell)


def test_relocate_pendant():
    g = OrderedBipartiteGraph.from_grid("2 4\n1101\n0110")
    # b4 is pendant on a1; row a1 keeps consecutive neighbours b1 b2
    out = relocate_pendant(g, 3, 0)
    assert (out.p, out.q) == (2, 4)
    assert out.edge_count() == g.edge_count()
    assert out.col_degree(1) == 1 and out.has_edge(0, 1)
    with pytest.raises(MutationError):
        relocate_pendant(g, 1, 0)  # b2 has degree 2
    with pytest.raises(MutationError):
        relocate_pendant(g, 9, 0)


def test_relocate_pendant_needs_consecutive_pair():
    g = OrderedBipartiteGraph.from_grid("3 3\n100\n010\n001")
    with pytest.raises(MutationError):
        relocate_pendant(g, 1, 0)


def test_delete_saturated_row():
    g = complete(3, 3)
    out = delete_saturated_row(g, 1, 4)
    assert (out.p, out.q) == (2, 3)
    with pytest.raises(MutationError):
        delete_saturated_row(g, 1, 3)
    with pytest.raises(MutationError):
        delete_saturated_row(complete(1, 2), 0, 3)
    with pytest.raises(MutationError):
        delete_saturated_row(g, 7, 4)
