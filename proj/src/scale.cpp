#include "pretestkit/scale.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pretestkit/lexicon.hpp"
#include "pretestkit/text.hpp"

namespace pretestkit::scale {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) den = 1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const {
    return num * o.den < o.num * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool FrequencyInterval::contains(const Rational& v) const {
    if (v < lo || (v == lo && !lo_inclusive)) return false;
    if (!hi) return true;
    if (*hi < v || (v == *hi && !hi_inclusive)) return false;
    return true;
}

bool FrequencyInterval::intersects(const FrequencyInterval& o) const {
    // Tightest common lower bound.
    Rational max_lo = lo;
    bool max_lo_incl = lo_inclusive;
    if (lo < o.lo) {
        max_lo = o.lo;
        max_lo_incl = o.lo_inclusive;
    } else if (o.lo < lo) {
        // keep ours
    } else {
        max_lo_incl = lo_inclusive && o.lo_inclusive;
    }
    if (!hi && !o.hi) return true;
    Rational min_hi{0};
    bool min_hi_incl = true;
    if (!hi) {
        min_hi = *o.hi;
        min_hi_incl = o.hi_inclusive;
    } else if (!o.hi) {
        min_hi = *hi;
        min_hi_incl = hi_inclusive;
    } else if (*hi < *o.hi) {
        min_hi = *hi;
        min_hi_incl = hi_inclusive;
    } else if (*o.hi < *hi) {
        min_hi = *o.hi;
        min_hi_incl = o.hi_inclusive;
    } else {
        min_hi = *hi;
        min_hi_incl = hi_inclusive && o.hi_inclusive;
    }
    if (max_lo < min_hi) return true;
    return max_lo == min_hi && max_lo_incl && min_hi_incl;
}

bool FrequencyInterval::meets_open_band(const Rational& band_lo, const Rational& band_hi) const {
    FrequencyInterval band{band_lo, band_hi, false, false};
    return band.intersects(*this);
}

std::string FrequencyInterval::str() const {
    std::ostringstream out;
    out << (lo_inclusive ? '[' : '(') << lo.str() << ", ";
    if (hi)
        out << hi->str() << (hi_inclusive ? ']' : ')');
    else
        out << "inf)";
    return out.str();
}

const char* to_string(ScaleFindingKind kind) {
    switch (kind) {
        case ScaleFindingKind::Overlap: return "Overlap";
        case ScaleFindingKind::InteriorGap: return "InteriorGap";
        case ScaleFindingKind::TopNotCovered: return "TopNotCovered";
        case ScaleFindingKind::SubWeeklyGap: return "SubWeeklyGap";
        case ScaleFindingKind::UnbalancedAgreementScale: return "UnbalancedAgreementScale";
        case ScaleFindingKind::NotParsable: return "NotParsable";
    }
    return "Unknown";
}

PolarityLexicon PolarityLexicon::builtin() {
    PolarityLexicon lex;
    lex.positive = {"agree", "satisfied", "likely", "favorable", "favourable", "willing",
                    "support", "approve", "important", "good", "true"};
    lex.negative = {"disagree", "dissatisfied", "unlikely", "unfavorable", "unfavourable",
                    "unwilling", "oppose", "disapprove", "unimportant", "bad", "false"};
    lex.neutral = {"neither", "neutral", "undecided", "unsure", "don't know", "no opinion"};
    return lex;
}

PolarityLexicon PolarityLexicon::load(const std::filesystem::path& dir) {
    PolarityLexicon lex;
    lex.positive = lexicon::load_set(dir / "polarity_positive.txt");
    lex.negative = lexicon::load_set(dir / "polarity_negative.txt");
    lex.neutral = lexicon::load_set(dir / "polarity_neutral.txt");
    return lex;
}

namespace {

bool parse_int(const std::string& tok, std::int64_t& out) {
    if (tok.empty()) return false;
    std::int64_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
        if (v > 10000) return false;
    }
    out = v;
    return true;
}

bool number_word(const std::string& tok, std::int64_t& out) {
    static const std::pair<const char*, std::int64_t> words[] = {
        {"one", 1}, {"two", 2}, {"three", 3}, {"four", 4}, {"five", 5},
        {"six", 6}, {"seven", 7}, {"eight", 8}, {"nine", 9}, {"ten", 10}};
    for (auto& [w, v] : words) {
        if (tok == w) {
            out = v;
            return true;
        }
    }
    return parse_int(tok, out);
}

bool range_token(const std::string& tok, std::int64_t& lo, std::int64_t& hi) {
    auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= tok.size()) return false;
    return parse_int(tok.substr(0, dash), lo) && parse_int(tok.substr(dash + 1), hi) && lo <= hi;
}

enum class Unit { Week, Month, Day, None };

Unit unit_of(const std::string& tok) {
    if (tok == "week" || tok == "weeks") return Unit::Week;
    if (tok == "month" || tok == "months") return Unit::Month;
    if (tok == "day" || tok == "days") return Unit::Day;
    return Unit::None;
}

}  // namespace

std::optional<FrequencyInterval> parse_category_interval(const std::string& label,
                                                         const ScaleOptions& opts) {
    std::vector<std::string> toks;
    for (auto& t : text::tokenize(label)) toks.push_back(t.folded);
    if (toks.empty()) return std::nullopt;

    auto per_week = [&](std::int64_t count, Unit unit) -> std::optional<Rational> {
        switch (unit) {
            case Unit::Week: return Rational(count);
            case Unit::Month: return Rational(count, opts.weeks_per_month);
            default: return std::nullopt;
        }
    };

    if (toks.size() == 1) {
        if (toks[0] == "never") return FrequencyInterval::point(Rational(0));
        if (toks[0] == "daily") return FrequencyInterval::point(Rational(7));
    }
    if (toks.size() == 2 && toks[0] == "every" && toks[1] == "day")
        return FrequencyInterval::point(Rational(7));

    // "less than once a week|month": above never, strictly below the unit rate.
    if (toks.size() >= 5 && toks[0] == "less" && toks[1] == "than" && toks[2] == "once" &&
        (toks[3] == "a" || toks[3] == "per")) {
        Unit u = unit_of(toks[4]);
        if (auto rate = per_week(1, u)) return FrequencyInterval{Rational(0), *rate, false, false};
        return std::nullopt;
    }

    // "once a week|month"
    if (toks.size() == 3 && toks[0] == "once" && (toks[1] == "a" || toks[1] == "per")) {
        if (auto rate = per_week(1, unit_of(toks[2]))) return FrequencyInterval::point(*rate);
        return std::nullopt;
    }
    // "twice a week|month"
    if (toks.size() == 3 && toks[0] == "twice" && (toks[1] == "a" || toks[1] == "per")) {
        if (auto rate = per_week(2, unit_of(toks[2]))) return FrequencyInterval::point(*rate);
        return std::nullopt;
    }

    // "N days|times a week", "N-M days|times a week", month variants.
    // Token shapes: [N|N-M] (days|times|day|time) (a|per) (week|month)
    if (toks.size() == 4 &&
        (toks[1] == "days" || toks[1] == "times" || toks[1] == "day" || toks[1] == "time") &&
        (toks[2] == "a" || toks[2] == "per")) {
        Unit u = unit_of(toks[3]);
        if (u == Unit::None) return std::nullopt;
        bool day_unit = toks[1] == "days" || toks[1] == "day";
        if (day_unit && u != Unit::Week) return std::nullopt;  // "3 days a month" is ambiguous
        std::int64_t lo = 0, hi = 0;
        if (range_token(toks[0], lo, hi)) {
            auto rlo = per_week(lo, u);
            auto rhi = per_week(hi, u);
            if (!rlo || !rhi) return std::nullopt;
            return FrequencyInterval{*rlo, *rhi, true, true};
        }
        std::int64_t n = 0;
        if (number_word(toks[0], n)) {
            if (auto rate = per_week(n, u)) return FrequencyInterval::point(*rate);
        }
        return std::nullopt;
    }

    return std::nullopt;
}

namespace {

ScaleAnalysis analyze_frequency(const std::vector<std::string>& labels, const ScaleOptions& opts) {
    ScaleAnalysis analysis;
    std::vector<std::size_t> unparsable;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        analysis.intervals.push_back(parse_category_interval(labels[i], opts));
        if (!analysis.intervals.back()) unparsable.push_back(i);
    }
    if (!unparsable.empty()) {
        std::string detail = "not recognized as frequency labels:";
        for (auto i : unparsable) detail += " \"" + labels[i] + "\"";
        analysis.findings.push_back(
            {ScaleFindingKind::NotParsable, detail, unparsable});
        return analysis;  // interval checks skipped
    }

    // Overlap: pairwise nonempty intersection.
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            const auto& a = *analysis.intervals[i];
            const auto& b = *analysis.intervals[j];
            if (a.intersects(b)) {
                analysis.findings.push_back(
                    {ScaleFindingKind::Overlap,
                     "\"" + labels[i] + "\" " + a.str() + " overlaps \"" + labels[j] + "\" " +
                         b.str(),
                     {i, j}});
            }
        }
    }

    // Coverage over whole day counts 0..7.
    auto covered = [&](const Rational& v) {
        return std::any_of(analysis.intervals.begin(), analysis.intervals.end(),
                           [&](const auto& iv) { return iv->contains(v); });
    };
    std::vector<bool> day(8, false);
    for (int d = 0; d <= 7; ++d) day[d] = covered(Rational(d));

    int max_covered = -1;
    for (int d = 7; d >= 0; --d) {
        if (day[d]) {
            max_covered = d;
            break;
        }
    }
    if (max_covered >= 0) {
        std::vector<std::size_t> none;
        std::string interior;
        for (int d = 0; d < max_covered; ++d) {
            bool below = false;
            for (int b = 0; b < d; ++b) below |= day[b];
            if (!day[d] && below) interior += (interior.empty() ? "" : ", ") + std::to_string(d);
        }
        if (!interior.empty()) {
            analysis.findings.push_back({ScaleFindingKind::InteriorGap,
                                         "no category covers day count(s) " + interior, none});
        }
        if (max_covered < 7) {
            std::string top;
            for (int d = max_covered + 1; d <= 7; ++d)
                top += (top.empty() ? "" : ", ") + std::to_string(d);
            analysis.findings.push_back(
                {ScaleFindingKind::TopNotCovered,
                 "no category covers day count(s) " + top + " at the top of the range", none});
        }
        // Sub-weekly band: fires only when (0,1) is entirely uncovered while
        // both "never" and at least one weekly rate are covered.
        bool band_met = std::any_of(analysis.intervals.begin(), analysis.intervals.end(),
                                    [&](const auto& iv) {
                                        return iv->meets_open_band(Rational(0), Rational(1));
                                    });
        bool some_weekly = false;
        for (int d = 1; d <= 7; ++d) some_weekly |= day[d];
        if (!band_met && day[0] && some_weekly) {
            analysis.findings.push_back(
                {ScaleFindingKind::SubWeeklyGap,
                 "nothing covers rates between never and once a week", none});
        }
    }
    return analysis;
}

enum class Polarity { Positive, Negative, Neutral, Unknown };

Polarity label_polarity(const std::string& label, const PolarityLexicon& lex) {
    auto toks = text::tokenize(label);
    auto hits = [&](const std::unordered_set<std::string>& entries) {
        for (const auto& e : entries) {
            if (text::find_phrase(toks, e) != std::string::npos) return true;
        }
        return false;
    };
    if (hits(lex.neutral)) return Polarity::Neutral;
    if (hits(lex.negative)) return Polarity::Negative;
    if (hits(lex.positive)) return Polarity::Positive;
    return Polarity::Unknown;
}

ScaleAnalysis analyze_agreement(const std::vector<std::string>& labels, const ScaleOptions& opts) {
    ScaleAnalysis analysis;
    analysis.intervals.assign(labels.size(), std::nullopt);
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        switch (label_polarity(labels[i], opts.polarity)) {
            case Polarity::Positive: pos.push_back(i); break;
            case Polarity::Negative: neg.push_back(i); break;
            default: break;
        }
    }
    if (pos.size() != neg.size()) {
        std::vector<std::size_t> indices = pos;
        indices.insert(indices.end(), neg.begin(), neg.end());
        std::sort(indices.begin(), indices.end());
        analysis.findings.push_back(
            {ScaleFindingKind::UnbalancedAgreementScale,
             std::to_string(pos.size()) + " positive vs " + std::to_string(neg.size()) +
                 " negative option(s)",
             indices});
    }
    return analysis;
}

}  // namespace

ScaleAnalysis analyze_scale(const std::vector<std::string>& labels, qmodel::QuestionKind kind,
                            const ScaleOptions& opts) {
    if (kind == qmodel::QuestionKind::ClosedFrequency) return analyze_frequency(labels, opts);
    if (kind == qmodel::QuestionKind::ClosedAgreement) return analyze_agreement(labels, opts);
    ScaleAnalysis analysis;
    analysis.intervals.assign(labels.size(), std::nullopt);
    return analysis;
}

}  // namespace pretestkit::scale
