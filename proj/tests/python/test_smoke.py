import math

import pytest

import citestat


def test_example_authors():
    a = citestat.unlikelihood([0, 0, 0, 0, 10, 0])
    b = citestat.unlikelihood([9, 0, 0, 0, 0, 1])
    assert abs(a.r - 14.4) <= 0.1
    assert abs(b.r - 5.33) <= 0.05
    assert math.isclose(a.r, a.log10_max - a.log10_record, abs_tol=1e-9)


def test_corpus_round_trip():
    text = "author_id,paper_id,citations,year,field\nA,p1,100,2001,hep\nA,p2,3,,hep\nB,q,0,,\n"
    corpus = citestat.parse_corpus(text)
    assert len(corpus) == 2
    assert corpus.total_papers() == 3
    again = citestat.parse_corpus(corpus.to_csv())
    assert [r.author_id for r in again.authors] == ["A", "B"]
    assert citestat.bin_record(corpus.authors[0]) == [0, 1, 0, 0, 1, 0]
    assert citestat.evaluate("h_index", corpus.authors[0]) == 2.0


def test_errors_are_raised():
    with pytest.raises(citestat.CitestatError):
        citestat.parse_corpus("author_id,paper_id,citations,year,field\nA,p,-1,,\n")
    with pytest.raises(ValueError):
        citestat.preset_model("nope")
    with pytest.raises(ValueError):
        citestat.evaluate("nope", citestat.CitationRecord("x", []))


def test_indicator_pipeline():
    model = citestat.preset_model("separated", papers_per_author=30)
    corpus, classes = citestat.sample_corpus(model, 300, seed=3)
    assert len(classes) == 300
    binning = citestat.bin_authors(corpus, "mean_citations", 10)
    assert sum(binning.bin_sizes) == 300
    cond = citestat.conditional_distributions(corpus, binning)
    metrics = citestat.assignment_metrics(corpus, binning, cond)
    assert metrics.argmax_accuracy > 0.3
    post = citestat.posterior([5, 5, 5, 5, 5, 5], cond, binning.prior)
    assert math.isclose(sum(post), 1.0, abs_tol=1e-9)


def test_curve_is_deterministic():
    model = citestat.preset_model("separated")
    first = citestat.accuracy_curve(model, 100, "mean_citations", [5, 20], seed=1)
    assert first == citestat.accuracy_curve(model, 100, "mean_citations", [5, 20], seed=1)
    assert first[0][0] == 5


def test_homogeneity():
    chi, df, p = citestat.chi_square_homogeneity([90, 10], [10, 90])
    assert math.isclose(chi, 128.0)
    assert df == 1
    assert p < 1e-20
    model = citestat.preset_model("homogeneous")
    fields = citestat.partition_by_field(citestat.sample_two_field_corpus(model, 2000, 2.0, seed=4))
    assert sorted(fields) == ["base", "inflated"]
    assert 1.8 <= citestat.mean_ratio(fields["inflated"], fields["base"]) <= 2.2
    assert math.isclose(citestat.regularized_gamma_q(1.0, 2.0), math.exp(-2.0), rel_tol=1e-12)
