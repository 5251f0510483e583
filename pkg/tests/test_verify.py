from diamondlab import verify
from diamondlab.report import Report, fmt
from fractions import Fraction


def test_report_rendering():
    rep = Report("demo", cases_checked=2)
    rep.values["x"] = Fraction(3, 6)
    rep.rows.append({"a": Fraction(2), "b": True})
    assert fmt(Fraction(2)) == "2/1"
    assert '"x": "1/2"' in rep.to_json()
    assert rep.to_csv() == "a,b\n2/1,True\n"
    assert rep.to_text().startswith("PASS demo")
    rep.violate(kind="bad", value=Fraction(-1, 3))
    assert not rep.ok and '"-1/3"' in rep.to_json()


def test_lemma2_small_corpus():
    cfg = verify.CorpusConfig(exhaustive_ns=(2, 3), random_ns=(5,), count=30, seed=2)
    rep = verify.verify_lemma2(cfg)
    assert rep.ok and rep.cases_checked == 7 + 52 + 30


def test_psi_bounds_corpus():
    cfg = verify.CorpusConfig(exhaustive_ns=(3,), random_ns=(6,), count=20)
    assert verify.verify_psi_bounds(cfg).ok


def test_fh_and_sq():
    assert verify.verify_fH(40, seed=9).ok
    rep = verify.verify_sq_identity(v_all=4, count=10, v_max=9)
    assert rep.ok and rep.cases_checked == 64 + 10


def test_reports_identical_across_threads():
    cfg1 = verify.CorpusConfig(exhaustive_ns=(3,), random_ns=(6,), count=100, seed=8, threads=1)
    cfg2 = verify.CorpusConfig(exhaustive_ns=(3,), random_ns=(6,), count=100, seed=8, threads=3)
    assert verify.verify_lemma2(cfg1).to_json() == verify.verify_lemma2(cfg2).to_json()
    assert verify.verify_fH(60, 3, threads=1).to_json() == verify.verify_fH(60, 3, threads=2).to_json()


def test_tables_all():
    reps = verify.verify_tables("all")
    assert [r.table for r in reps] == ["epsilon", "dstar", "gamma-c", "simplified", "certificate", "gmax"]
    assert all(r.ok for r in reps)
