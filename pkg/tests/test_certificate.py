from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamondlab import certificate as cert
from diamondlab.canon import canonical_code, labeled_graphs
from diamondlab.certificate import ALL_CLASSES, HClass
from diamondlab.corpus import random_graphs, random_structures
from diamondlab.errors import BadDimensions, BadParameter, TooManyVertices
from diamondlab.graphs import Graph, h_density, worst_case_f
from diamondlab.lattice import falling

F = Fraction


def r(n, v):
    return F(v - 1, n - 2)


def lin(n, v):
    return F((n - v) * v, falling(n, 2))


# ---------------------------------------------------------------- classes


def test_representative_edge_counts():
    want = [0, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6]
    assert [H.edges for H in ALL_CLASSES] == want
    assert all(cert.classify(H.graph) is H for H in ALL_CLASSES)


def test_complements():
    assert cert.classify(HClass.Hwedge.graph.complement()) is HClass.Hq
    assert cert.classify(HClass.Hpar.graph.complement()) is HClass.Cyc
    assert cert.classify(HClass.H1.graph.complement()) is HClass.H5


def test_classify_agrees_with_isomorphism():
    by_class = {}
    for G in labeled_graphs(4):
        by_class.setdefault(cert.classify(G), set()).add(canonical_code(G))
    assert len(by_class) == 11
    assert all(len(codes) == 1 for codes in by_class.values())


def test_classify_rejects_wrong_size():
    with pytest.raises(BadParameter):
        cert.classify(Graph.empty(5))


# ---------------------------------------------------------------- epsilon


@pytest.mark.parametrize("H", ALL_CLASSES)
def test_epsilon_empty_y_is_zero(H):
    assert cert.epsilon(20, 9, H, 0) == 0


def test_epsilon_examples():
    for n in range(5, 25):
        for v in range(4, n + 1):
            assert cert.epsilon(n, v, HClass.Hpar, 15) == F(v, falling(n, 2)) * (-2 + 2 * r(n, v))
    n, v = 12, 8
    assert cert.epsilon(n, v, HClass.H0, 15) == F(3 * v, falling(n, 2)) * (r(n, v) - F(2, 3))
    with pytest.raises(BadDimensions):
        cert.epsilon(10, 3, HClass.H0, 1)
    with pytest.raises(BadDimensions):
        cert.epsilon(10, 11, HClass.H0, 1)


def test_epsilon_row_examples():
    tri3 = cert.eps_rows(HClass.Tri)[2]
    h1_4 = cert.eps_rows(HClass.H1)[3]
    for n in range(5, 30):
        for v in range(4, n):
            assert tri3.value(n, v) == F(v, falling(n, 2)) * (F(-3, 2) + r(n, v) * F(3, 2))
            assert tri3.value(n, v) <= 0
            want = F(5 * v, 2 * falling(n, 2)) * (r(n, v) - F(4, 5))
            assert h1_4.value(n, v) == want
            assert cert.class_bound(HClass.H1, n, v) == max(F(0), want)


def test_epsilon_table_check_passes():
    rep = cert.epsilon_table_check((5, 30))
    assert rep.ok, rep.violations[:3]
    assert rep.cases_checked == 11 * 16 * sum(n - 3 for n in range(5, 31))


def test_first_rows_of_class_tables_are_half_the_maximum():
    for H in (HClass.Hpar, HClass.Hwedge, HClass.H1, HClass.H0):
        row = cert.eps_rows(H)[0]
        true_b = F(cert.epsilon_numerators(H)[1], 12)
        assert (row.A, row.B) == (F(-1, 4), true_b / 2)


def test_exact_rows():
    rep = cert.epsilon_table_check((5, 16))
    loose = {(row["class"], row["k"]) for row in rep.rows if not row["exact"]}
    for H in (HClass.Claw, HClass.Hq, HClass.H5, HClass.H6):
        assert (H.value, 3) not in loose and (H.value, 4) not in loose
    assert ("Hpar", 3) in loose  # tabulated numerator 20, the best Y gives 16


# ---------------------------------------------------------------- d*


def test_dstar_examples():
    for n in range(5, 30):
        for v in range(4, n + 1):
            assert cert.dstar(HClass.H6, n, v) == lin(n, v)
        assert cert.dstar(HClass.Path, n, n) == 0
        assert cert.dstar(HClass.H0, n, n) == F(1, 4)
    with pytest.raises(BadDimensions):
        cert.dstar(HClass.H0, 5, 6)


def test_tabulated_and_derived_rows_differ_only_in_cubic_terms():
    differ = {H for H in ALL_CLASSES if cert.TABULATED_DSTAR[H] != cert.DERIVED_DSTAR[H]}
    assert differ == {HClass.Claw, HClass.Cyc, HClass.Hq, HClass.H5}
    for H in differ:
        assert cert.TABULATED_DSTAR[H].cubic == 3 * cert.DERIVED_DSTAR[H].cubic


def test_dstar_table_check():
    rep = cert.dstar_table_check((5, 25))
    assert rep.ok
    assert len(rep.notes) == 4


def test_derived_dstar_bounds_every_summand():
    for n, S in random_structures(40, seed=11, v_min=4, v_max=7):
        v = S.graph.v
        assert len(S.parts) == n - v
        for quad in combinations(range(v), 4):
            H = sum(1 << u for u in quad)
            cls = cert.classify(S.graph.induced(quad))
            assert h_density(n, S.graph, H, S.parts) <= cert.dstar(cls, n, v, derived=True)


# ---------------------------------------------------------------- squared forms


def test_sq_forms_examples():
    assert cert.sq_forms(Graph.complete(4)) == 48
    lhs, rhs = cert.sq_identity(Graph.complete(4))
    assert lhs == rhs == 48
    for v in range(2, 9):
        assert cert.sq_forms(Graph.empty(v)) == 0


def test_sq_identity_all_v5():
    rep = cert.sq_identity_check(labeled_graphs(5))
    assert rep.ok and rep.cases_checked == 1024


def test_sq_identity_random():
    rep = cert.sq_identity_check(random_graphs(40, seed=5, v_min=4, v_max=12))
    assert rep.ok


def test_gamma_c_split():
    rep = cert.gamma_c_check()
    assert rep.ok
    for H in ALL_CLASSES:
        assert sum(cert.c_split(H)) == cert.c_weight(H)


def test_gamma():
    for n in range(7, 61):
        assert cert.gamma(n, n) == F(1, 96)
        for v in cert.large_v_range(n):
            assert cert.gamma(n, v) >= 0
            assert cert.dstar(HClass.H6, n, v) + 24 * cert.gamma(n, v) == F(1, 4)


# ---------------------------------------------------------------- v >= 2n/3


def test_certificate_consistency():
    for derived in (False, True):
        rep = cert.certificate_check((7, 60), derived=derived)
        assert rep.ok
        eq = rep.values["equality_offsets_v_minus_n"]
        assert eq["Hpar"] == [0] and eq["Tri"] == [0] and eq["H6"] == "all"
        assert eq["H0"] == [-1, 0]


def test_simplified_rows():
    rep = cert.simplified_check((7, 60))
    assert rep.ok
    assert any("Tri" in note for note in rep.notes)


def test_g_examples():
    assert cert.g_eval(HClass.Hpar, 1) == 0
    assert cert.g_eval(HClass.Hwedge, F(2, 3)) == F(-7, 72)
    assert cert.g_eval(HClass.H5, F(2, 3)) == F(-127, 648)
    assert cert.g_eval(HClass.H5, F(2, 3), cert.H5_TABULATED_CONSTANT) != F(-127, 648)
    with pytest.raises(BadParameter):
        cert.g_eval(HClass.H0, 1)


def test_g_max_check():
    rep = cert.g_max_check()
    assert rep.ok
    assert rep.cases_checked == 9 * 3001


@pytest.mark.parametrize("H", cert.G_CLASSES)
@pytest.mark.parametrize("x", [F(2, 3), F(5, 6), F(1)])
def test_g_is_leading_order(H, x):
    gaps = []
    for n in (30, 60, 120):
        v = round(x * n)
        gaps.append(n * abs(cert.simplified(H, n, v) - cert.g_eval(H, F(v, n))))
    assert max(gaps) <= 10


@given(st.integers(7, 200), st.data())
def test_simplified_nonpositive(n, data):
    v = data.draw(st.sampled_from(list(cert.large_v_range(n))))
    for H in ALL_CLASSES:
        assert cert.simplified(H, n, v) <= 0


# ---------------------------------------------------------------- v <= (2n-1)/3


def test_case1_examples():
    for H in ALL_CLASSES:
        assert cert.dstar(H, 13, 8) <= F(40, 156)
    for n in range(6, 40):
        assert cert.dstar(HClass.H6, n, 4) == lin(n, 4)


def test_case1_check():
    rep = cert.case1_check((6, 60))
    assert rep.ok


def test_h0_polynomial_endpoint():
    for n in range(4, 50):
        assert cert.h0_polynomial(n, F(2 * n - 1, 3)) == F(-8 * n * n - 10 * n + 106, 9)


# ---------------------------------------------------------------- scan


def test_empty_graph_is_tight():
    for n in range(4, 16):
        assert worst_case_f(n, Graph.empty(n)) == F(1, 4)


def test_small_v_bound():
    assert cert.small_v_bound(11) > F(1, 4)
    assert cert.small_v_threshold() == 17


def test_scan_agrees_with_direct_worst_case():
    rep = cert.lemma3_scan(4, 15)
    for row in rep.rows:
        n = row["n"]
        best = max(worst_case_f(n, G) for v in range(5) for G in labeled_graphs(v))
        assert row["worst_f"] == best


def test_scan_v5():
    rep = cert.lemma3_scan(5, 40)
    assert rep.ok
    assert rep.values["graphs_per_v"][5] == 1024


def test_scan_deterministic_across_threads():
    a = cert.lemma3_scan(5, 20, threads=1, chunk=100)
    b = cert.lemma3_scan(5, 20, threads=3, chunk=100)
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()


def test_scan_limit():
    with pytest.raises(TooManyVertices):
        cert.lemma3_scan(8, 20)
