"""Smoke tests for the compiled extension: one happy path per operation."""

import json
import os

import pretestkit as pk

ROOT = os.environ.get("PRETESTKIT_ROOT", os.path.join(os.path.dirname(__file__), "..", ".."))


def fixture_path(*parts):
    return os.path.join(ROOT, "fixtures", *parts)


def read_text(*parts):
    with open(fixture_path(*parts), encoding="utf-8") as fh:
        return fh.read().rstrip("\n")


def test_parse_and_roundtrip():
    doc = pk.load_questionnaire_file(fixture_path("nature.q.json"))
    assert len(doc.questions) == 1
    assert doc.questions[0].kind == "closed-frequency"
    again = pk.parse_questionnaire(pk.serialize_questionnaire(doc))
    assert again == doc


def test_strict_parsing_raises():
    try:
        pk.parse_questionnaire(json.dumps({"questions": [], "oops": 1}))
    except pk.PretestError as e:
        assert "oops" in str(e)
    else:
        raise AssertionError("expected PretestError")


def test_scale_analysis_contradicts_the_overlap_claim():
    analysis = pk.analyze_scale(["Never", "1-2 days a week", "3-4 days a week"])
    kinds = sorted(f.kind for f in analysis.findings)
    assert kinds == ["SubWeeklyGap", "TopNotCovered"]
    interval = pk.parse_category_interval("1-2 days a week")
    assert interval.lo == 1.0 and interval.hi == 2.0


def test_lint_finds_the_designated_defects():
    ctx = pk.LintContext.load(os.path.join(ROOT, "lexicons"))
    doc = pk.load_questionnaire_file(fixture_path("comprehension.q.json"))
    meta = doc.meta
    findings = pk.lint_question(doc.questions[0], meta, ctx)
    assert any(f.rule == "L1" and "somatic" in f.evidence for f in findings)
    findings = pk.lint_question(doc.questions[5], meta, ctx)
    assert any(f.rule == "L6" for f in findings)


def test_prompt_is_byte_exact():
    doc = pk.load_questionnaire_file(fixture_path("nature.q.json"))
    spec = pk.build_prompt("1", doc.questions[0], doc.meta)
    assert spec.text == read_text("prompts", "nature_level1.txt")
    assert len(spec.digest) == 64


def test_feedback_parse_counts():
    fb = pk.parse_feedback(read_text("feedback", "nature_level4.txt"))
    assert len(fb.suggestions) == 3
    assert fb.revised_categories[-1] == "Daily"


def test_replay_and_digest():
    transcript = pk.Transcript.load_file(fixture_path("corpus.transcript.json"))
    prompt = read_text("prompts", "nature_level1.txt")
    assert transcript.replay(prompt).startswith('1. Clarify the Definition of "Activities"')
    assert pk.request_digest(prompt) == pk.request_digest(prompt, temperature=0.70)


def test_compare_and_cross_check():
    doc = pk.load_questionnaire_file(fixture_path("comprehension.q.json"))
    report = pk.compare_proposals(
        doc.questions[0].stem,
        read_text("proposals", "ai_q1.txt"),
        read_text("proposals", "expert_q1.txt"),
    )
    assert len(report.shared) == 1
    assert report.shared[0].expert.old_tokens == ["somatic"]

    ctx = pk.LintContext.load(os.path.join(ROOT, "lexicons"))
    findings = pk.lint_question(doc.questions[5], doc.meta, ctx)
    fb = pk.parse_feedback(read_text("feedback", "comprehension_q6.txt"))
    statuses = {item.status for item in pk.cross_check(findings, fb)}
    assert "MissedByAI" in statuses
