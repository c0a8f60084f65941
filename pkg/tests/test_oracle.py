import pytest

from soinv import oracle
from soinv.errors import PreconditionError


def test_group_orders_match_known_formulas():
    # |O(n, F_q)| for small cases: 2q(q^2-1) when n = 3
    assert oracle.group_order(2, 3, (1, 1)) == 8
    assert oracle.group_order(3, 3, (1, 1, 1)) == 48
    assert oracle.group_order(3, 5, (1, 1, 1)) == 240
    assert oracle.group_order(3, 7, (1, 1, 1)) == 672
    assert oracle.group_order(4, 3, (1, 1, 1, 1)) == 1152


def test_group_order_is_form_independent_in_odd_dim():
    assert oracle.group_order(3, 3, (1, 1, 2)) == 48
    assert oracle.group_order(3, 5, (1, 1, 2)) == 240


def test_bfs_route_agrees_with_backtracking():
    for n, p, m in [(2, 3, (1, 1)), (3, 3, (1, 1, 1)), (3, 3, (1, 1, 2)),
                    (4, 3, (1, 1, 1, 1)), (3, 5, (1, 1, 1))]:
        bfs = oracle.orthogonal_group_bfs(n, p, m)
        assert len(bfs) == oracle.group_order(n, p, m)


def test_max_elements_guard():
    with pytest.raises(PreconditionError):
        oracle.group_order(3, 5, (1, 1, 1), max_elements=100)
    with pytest.raises(PreconditionError):
        oracle.orthogonal_group_bfs(3, 5, (1, 1, 1), max_elements=100)


def test_so_coset_split():
    so = oracle.orthogonal_group(3, 3, (1, 1, 1), det_value=1)
    other = oracle.orthogonal_group(3, 3, (1, 1, 1), det_value=2)
    assert len(so) == len(other) == 24
    for w in so[:5]:
        assert oracle.det_p(w, 3) == 1


def test_orth_inverse():
    for w in oracle.orthogonal_group(3, 3, (1, 1, 2))[:20]:
        winv = oracle.orth_inverse(w, (1, 1, 2), 3)
        assert oracle.mat_mul_p(w, winv, 3) == oracle.mat_eye(3)


def test_type1_candidates_331():
    _, cands = oracle.involution_candidates(3, 3, (1, 1, 1), 1)
    # symmetric orthogonal nonscalar matrices over F_3: 9 with a 1-dim
    # minus space and 9 with a 2-dim one
    assert len(cands) == 18
    for b in cands:
        assert oracle.mat_mul_p(b, b, 3) == oracle.mat_eye(3)


def test_type1_class_counts_include_degenerate_pair():
    assert oracle.count_classes_bruteforce(3, 3, (1, 1, 1), 1) == 4
    assert oracle.count_classes_bruteforce(3, 5, (1, 1, 1), 1) == 4
    assert oracle.count_classes_bruteforce(3, 3, (1, 1, 1), 1,
                                           include_degenerate=False) == 2


def test_paper_type2_matrix_is_a_candidate_f3():
    delta, cands = oracle.involution_candidates(4, 3, (1, 1, 1, 1), 2)
    assert delta == 2
    c_blocks = ((1, 1, 0, 0), (1, 2, 0, 0), (0, 0, 1, 1), (0, 0, 1, 2))
    assert c_blocks in cands
    sq = oracle.mat_mul_p(c_blocks, c_blocks, 3)
    assert sq == tuple(tuple(2 if i == j else 0 for j in range(4)) for i in range(4))


def test_types_2_3_4_single_class_43():
    for itype in (2, 3, 4):
        assert oracle.count_classes_bruteforce(4, 3, (1, 1, 1, 1), itype) == 1


def test_conjugate_in_group_finds_witness():
    a = ((2, 0, 0), (0, 1, 0), (0, 0, 1))  # diag(-1, 1, 1) mod 3
    r = oracle.reflections(3, 3, (1, 1, 1))[3]
    b = oracle.mat_mul_p(
        oracle.orth_inverse(r, (1, 1, 1), 3), oracle.mat_mul_p(a, r, 3), 3
    )
    w = oracle.conjugate_in_group(3, 3, (1, 1, 1), a, b)
    assert w is not None
    winv = oracle.orth_inverse(w, (1, 1, 1), 3)
    got = oracle.mat_mul_p(winv, oracle.mat_mul_p(a, w, 3), 3)
    assert got == b or got == oracle.mat_neg_p(b, 3)


def test_conjugacy_respects_negation_merge():
    _, cands = oracle.involution_candidates(3, 3, (1, 1, 1), 1)
    merged = oracle.conjugacy_classes(3, 3, (1, 1, 1), cands, plus_minus=True)
    separate = oracle.conjugacy_classes(3, 3, (1, 1, 1), cands, plus_minus=False)
    assert len(merged) == 2
    # plain matrix conjugacy sees 4 classes (s in {1,2} crossed with the
    # norm class of the distinguished eigenline); negation pairs them up
    assert len(separate) == 4
