"""Questionnaire pretesting toolkit.

Deterministic lint rules over survey questions, pretest prompt protocols with
record/replay transcripts, structured feedback parsing, and AI-vs-expert
revision comparison. The heavy lifting lives in the compiled `_core` module.
"""

from ._core import (  # noqa: F401
    AgreementReport,
    EditOp,
    Finding,
    FrequencyInterval,
    JudgmentItem,
    LintContext,
    MatchedEdit,
    PretestError,
    PretestFeedback,
    PromptSpec,
    Question,
    Questionnaire,
    RevisionDiff,
    ScaleAnalysis,
    ScaleFinding,
    StructuralIssue,
    StudyMeta,
    Suggestion,
    Transcript,
    __version__,
    analyze_scale,
    build_prompt,
    classify_suggestion,
    compare_proposals,
    cross_check,
    diff_revision,
    format_finding,
    lint_question,
    load_questionnaire_file,
    parse_category_interval,
    parse_feedback,
    parse_questionnaire,
    principle_catalog,
    render_question_block,
    request_digest,
    serialize_questionnaire,
    validate_structure,
)
