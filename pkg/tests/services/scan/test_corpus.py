import json

import pytest

from apkwarden.domain.enums.rule_category import AssessmentCategory
from apkwarden.domain.errors import NoApksFound
from apkwarden.services.scan import (
    CORPUS_FILE,
    discover_apks,
    scan_corpus,
    stats_from_report_files,
)
from tests.builders.apps import ALL_APPS, FIREBASE, clean_app, four_app_corpus

FIREBASE_NAME = "Google Firebase Analytics"


# ----- Test 1: corpus statistics ----
@pytest.mark.corpus
def test_four_app_corpus(write_apps, tmp_path, analysis_data):
    write_apps(four_app_corpus())
    result = scan_corpus([tmp_path / "corpus"], analysis_data, tmp_path / "out", jobs=2)
    stats = result.stats

    assert stats.n_apps == 4
    assert stats.failures == []
    assert stats.per_rule_prevalence["MANIFEST-BACKUP"] == pytest.approx(0.5)
    assert stats.per_rule_prevalence["CRYPTO-HASH"] == pytest.approx(0.5)
    assert stats.per_tracker_prevalence == {FIREBASE_NAME: pytest.approx(0.75)}
    assert stats.per_category_prevalence[AssessmentCategory.manifest_weaknesses] == 0.5
    assert stats.per_category_prevalence[AssessmentCategory.privacy_leaks] == 0.0
    assert stats.source_sink_matrix == []
    assert result.exit_code == 2
    assert result.run.scanned == 4 and result.run.failed == 0

    # one report per app plus corpus.json
    written = sorted(p.name for p in (tmp_path / "out").iterdir())
    assert written == sorted([*stats.reports, CORPUS_FILE])
    on_disk = json.loads((tmp_path / "out" / CORPUS_FILE).read_text(encoding="utf-8"))
    assert on_disk["n_apps"] == 4


@pytest.mark.corpus
def test_same_stem_in_two_directories_keeps_both_reports(write_apps, tmp_path, analysis_data):
    write_apps([clean_app()], subdir="corpus/a")
    write_apps([clean_app()], subdir="corpus/b")
    write_apps([clean_app().with_trackers(FIREBASE)], subdir="corpus/c")
    result = scan_corpus([tmp_path / "corpus"], analysis_data, tmp_path / "out")

    assert result.stats.n_apps == 3
    assert len(set(result.stats.reports)) == 3
    written = sorted(p.name for p in (tmp_path / "out").iterdir())
    assert written == sorted([*result.stats.reports, CORPUS_FILE])
    assert all(name.startswith("clean-") for name in result.stats.reports)

@pytest.mark.corpus
def test_stats_recomputed_from_report_files(write_apps, tmp_path, analysis_data):
    write_apps(four_app_corpus())
    out = tmp_path / "out"
    stats = scan_corpus([tmp_path / "corpus"], analysis_data, out).stats

    again = stats_from_report_files(out / name for name in stats.reports)
    assert again.n_apps == stats.n_apps
    assert again.per_rule_prevalence == stats.per_rule_prevalence
    assert again.per_tracker_prevalence == stats.per_tracker_prevalence
    assert again.per_category_prevalence == stats.per_category_prevalence
    assert again.source_sink_matrix == stats.source_sink_matrix


@pytest.mark.corpus
def test_source_sink_matrix(write_apps, tmp_path, analysis_data):
    write_apps(f() for f in ALL_APPS)
    stats = scan_corpus([tmp_path / "corpus"], analysis_data, tmp_path / "out").stats
    cells = {(c.sink, c.count) for c in stats.source_sink_matrix}
    assert ("SMS", 1) in cells
    assert ("Bundle", 1) in cells
    assert ("SharedPreferences", 1) in cells
    assert sum(c.count for c in stats.source_sink_matrix) == 3
    assert stats.per_category_prevalence[AssessmentCategory.privacy_leaks] == pytest.approx(
        3 / len(ALL_APPS)
    )


# ----- Test 2: scheduling does not change the output ----
@pytest.mark.corpus
@pytest.mark.threaded
def test_output_independent_of_jobs(write_apps, tmp_path, analysis_data):
    write_apps(f() for f in ALL_APPS)
    outs = {}
    for jobs in (1, 4):
        out = tmp_path / f"out-{jobs}"
        scan_corpus([tmp_path / "corpus"], analysis_data, out, jobs=jobs, deterministic=True)
        outs[jobs] = {p.name: p.read_bytes() for p in out.iterdir()}
    assert outs[1] == outs[4]
    assert len(outs[1]) == len(ALL_APPS) + 1


# ----- Test 3: failures and empty input ----
@pytest.mark.corpus
def test_failing_app_is_recorded(write_apps, tmp_path, analysis_data):
    write_apps(four_app_corpus()[:2])
    (tmp_path / "corpus" / "broken.apk").write_bytes(b"not a zip at all")

    result = scan_corpus([tmp_path / "corpus"], analysis_data, tmp_path / "out")
    assert result.stats.n_apps == 2
    (failure,) = result.stats.failures
    assert failure.path.endswith("broken.apk")
    assert failure.error.type == "NotAZip"
    assert result.run.failed == 1
    # prevalence is over the apps that scanned
    assert result.stats.per_tracker_prevalence == {FIREBASE_NAME: 1.0}
    assert result.exit_code == 2


def test_all_apps_failing(tmp_path, analysis_data):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "a.apk").write_bytes(b"junk")
    result = scan_corpus([corpus], analysis_data, tmp_path / "out")
    assert result.stats.n_apps == 0
    assert result.stats.per_rule_prevalence == {}
    assert result.exit_code == 3


def test_no_apks(tmp_path, analysis_data):
    (tmp_path / "empty").mkdir()
    (tmp_path / "empty" / "notes.txt").write_text("x", encoding="utf-8")
    with pytest.raises(NoApksFound):
        scan_corpus([tmp_path / "empty"], analysis_data, tmp_path / "out")


def test_discover_apks(write_apps, tmp_path):
    paths = write_apps(four_app_corpus())
    nested = tmp_path / "corpus" / "more"
    nested.mkdir()
    (nested / "x.apk").write_bytes(b"PK")
    found = discover_apks([tmp_path / "corpus", paths[0], tmp_path / "missing"])
    assert found[0].name == "clean.apk"
    assert len(found) == 5
    assert nested / "x.apk" in found
