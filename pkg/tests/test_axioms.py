import numpy as np
import pytest

from tracelab.tracecats import (
    AxiomId,
    CategoryId,
    check_axiom,
    generate_sample,
    run_axiom_samples,
)
from tracelab.tracecats.axioms import sample_seed

FAST_GRID = [
    (CategoryId.VECT_OPLUS_INV, 4),
    (CategoryId.VECT_OPLUS_KERIM, 4),
    (CategoryId.SREL_TENSOR, 4),
    (CategoryId.CPMS_TENSOR, 3),
    (CategoryId.CPM_OPLUS, 2),
    (CategoryId.Q_OPLUS_TOTAL, 2),
    (CategoryId.Q_OPLUS_INV, 2),
    (CategoryId.Q_OPLUS_KERIM, 2),
    (CategoryId.QS_TENSOR_SUB, 3),
    (CategoryId.FHILB_TENSOR, 3),
]


@pytest.mark.parametrize("cat_id,dmax", FAST_GRID, ids=[c.value for c, _ in FAST_GRID])
@pytest.mark.parametrize("axiom", list(AxiomId), ids=[a.value for a in AxiomId])
def test_axiom_grid_small(cat_id, dmax, axiom):
    report = run_axiom_samples(cat_id, axiom, n_samples=6, seed=11, dim_max=dmax)
    assert report.failures == 0, report.to_dict()
    assert report.passed, report.to_dict()


def test_sample_seed_is_stable():
    assert sample_seed(42, "SREL_TENSOR", "Yanking", 0) == sample_seed(
        42, "SREL_TENSOR", "Yanking", 0
    )
    seen = {
        sample_seed(42, c, a, i)
        for c in ("A", "B")
        for a in ("X", "Y")
        for i in range(5)
    }
    assert len(seen) == 20


def test_run_axiom_samples_deterministic():
    a = run_axiom_samples(CategoryId.CPMS_TENSOR, AxiomId.Naturality, 8, seed=3)
    b = run_axiom_samples(CategoryId.CPMS_TENSOR, AxiomId.Naturality, 8, seed=3)
    assert a.to_dict() == b.to_dict()
    c = run_axiom_samples(CategoryId.CPMS_TENSOR, AxiomId.Naturality, 8, seed=4)
    assert c.max_deviation != a.max_deviation


def test_vanishing_ii_counts_premise_false():
    # Q_OPLUS_INV rejects singular feedback often enough that both branches
    # show up across a modest number of samples
    report = run_axiom_samples(
        CategoryId.VECT_OPLUS_INV, AxiomId.VanishingII, 40, seed=0, dim_max=3
    )
    assert report.passed
    assert set(report.patterns) <= {"both_defined", "both_undefined", "premise_false"}
    assert report.patterns.get("both_defined", 0) > 0


def test_dinaturality_tracks_definedness_both_ways():
    report = run_axiom_samples(
        CategoryId.VECT_OPLUS_INV, AxiomId.Dinaturality, 40, seed=0, dim_max=3
    )
    assert report.passed
    assert report.patterns.get("both_defined", 0) > 0


def test_yanking_deviation_zero():
    for cat_id, dmax in FAST_GRID:
        report = run_axiom_samples(cat_id, AxiomId.Yanking, 5, seed=9, dim_max=dmax)
        assert report.max_deviation == 0.0, cat_id


def test_directed_axiom_skips_with_note_when_rejection_fails(monkeypatch):
    import tracelab.tracecats.axioms as ax

    monkeypatch.setattr(ax, "REJECTION_CAP", 0)
    rng = np.random.default_rng(0)
    sample, note = generate_sample(
        CategoryId.VECT_OPLUS_INV, AxiomId.Naturality, rng, dim_max=3
    )
    assert sample is None
    assert "rejection cap" in note


def test_skip_heavy_run_is_not_a_pass(monkeypatch):
    import tracelab.tracecats.axioms as ax

    monkeypatch.setattr(ax, "REJECTION_CAP", 0)
    report = run_axiom_samples(
        CategoryId.VECT_OPLUS_INV, AxiomId.Naturality, 4, seed=0, dim_max=3
    )
    assert report.skipped == 4
    assert not report.passed
    assert any("skip rate" in n for n in report.notes)


def test_check_axiom_flags_a_planted_violation():
    # feed Yanking a sample and a category whose symmetry we sabotage by
    # checking against the wrong object: build the sample by hand instead
    from tracelab.tracecats.categories import get_category

    cat = get_category(CategoryId.FHILB_TENSOR)
    res = check_axiom(CategoryId.FHILB_TENSOR, AxiomId.Yanking, {"u": 2})
    assert res.ok and res.deviation == 0.0
    # VanishingI with a morphism compared against itself always passes
    f = cat.random_morphism(np.random.default_rng(0), 2, 3)
    res = check_axiom(
        CategoryId.FHILB_TENSOR, AxiomId.VanishingI, {"x": 2, "y": 3, "f": f}
    )
    assert res.ok and res.pattern == "both_defined"


def test_report_dict_shape():
    report = run_axiom_samples(CategoryId.SREL_TENSOR, AxiomId.Superposing, 5, seed=1)
    d = report.to_dict()
    assert set(d) == {
        "category",
        "axiom",
        "samples",
        "skipped",
        "patterns",
        "max_deviation",
        "min_abs_margin",
        "failures",
        "passed",
        "witness",
        "notes",
    }
    assert d["category"] == "SREL_TENSOR"
    assert d["witness"] is None
