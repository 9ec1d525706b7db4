#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pretestkit/qmodel.hpp"

namespace pretestkit::scale {

/// Exact rational arithmetic for occurrences-per-week rates.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // > 0, normalized

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }

    std::string str() const;
};

/// Occurrences-per-week interval. An absent hi means unbounded above
/// (and is then never inclusive). A point value has lo == hi, both inclusive.
struct FrequencyInterval {
    Rational lo;
    std::optional<Rational> hi;  // nullopt = +infinity
    bool lo_inclusive = true;
    bool hi_inclusive = true;

    static FrequencyInterval point(Rational v) { return {v, v, true, true}; }

    bool contains(const Rational& v) const;
    bool intersects(const FrequencyInterval& o) const;
    /// True when the open band (band_lo, band_hi) meets this interval.
    bool meets_open_band(const Rational& band_lo, const Rational& band_hi) const;

    bool operator==(const FrequencyInterval&) const = default;

    std::string str() const;
};

enum class ScaleFindingKind {
    Overlap,
    InteriorGap,
    TopNotCovered,
    SubWeeklyGap,
    UnbalancedAgreementScale,
    NotParsable,
};

const char* to_string(ScaleFindingKind kind);

struct ScaleFinding {
    ScaleFindingKind kind;
    std::string detail;
    std::vector<std::size_t> category_indices;

    bool operator==(const ScaleFinding&) const = default;
};

struct ScaleAnalysis {
    std::vector<std::optional<FrequencyInterval>> intervals;  // nullopt = NotParsable
    std::vector<ScaleFinding> findings;
};

/// Positive/negative/neutral agreement vocabulary, loadable from lexicon files.
struct PolarityLexicon {
    std::unordered_set<std::string> positive;
    std::unordered_set<std::string> negative;
    std::unordered_set<std::string> neutral;

    static PolarityLexicon builtin();
    static PolarityLexicon load(const std::filesystem::path& dir);
};

struct ScaleOptions {
    int weeks_per_month = 4;  // documented conversion constant
    PolarityLexicon polarity = PolarityLexicon::builtin();
};

/// Maps a category label to its per-week rate interval, or nullopt when the
/// label is outside the recognized vocabulary.
std::optional<FrequencyInterval> parse_category_interval(const std::string& label,
                                                         const ScaleOptions& opts = {});

/// Frequency scales: overlap, interior/top coverage gaps over day counts 0..7,
/// and the sub-weekly (0,1) band. Agreement scales: polarity balance.
/// Problems come back as findings, never as errors.
ScaleAnalysis analyze_scale(const std::vector<std::string>& labels,
                            qmodel::QuestionKind kind, const ScaleOptions& opts = {});

}  // namespace pretestkit::scale
