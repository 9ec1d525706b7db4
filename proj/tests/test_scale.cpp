#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pretestkit/scale.hpp"
#include "test_support.hpp"

using namespace pretestkit;
using scale::FrequencyInterval;
using scale::Rational;
using scale::ScaleFindingKind;

namespace {

std::multiset<ScaleFindingKind> kinds_of(const scale::ScaleAnalysis& analysis) {
    std::multiset<ScaleFindingKind> out;
    for (const auto& f : analysis.findings) out.insert(f.kind);
    return out;
}

// Independent oracle over the finite check domain: day counts 0..7 plus the
// open band (0,1). Works from witness-point enumeration, not interval algebra:
// every nonempty intersection of rational intervals contains an endpoint or a
// midpoint of two endpoints, so those points decide everything.
struct Oracle {
    std::vector<FrequencyInterval> intervals;
    std::vector<Rational> candidates;

    explicit Oracle(const std::vector<FrequencyInterval>& ivs) : intervals(ivs) {
        for (int d = 0; d <= 7; ++d) candidates.push_back(Rational(d));
        std::vector<Rational> ends;
        for (const auto& iv : intervals) {
            ends.push_back(iv.lo);
            if (iv.hi) ends.push_back(*iv.hi);
        }
        ends.push_back(Rational(0));
        ends.push_back(Rational(1));
        for (std::size_t i = 0; i < ends.size(); ++i)
            for (std::size_t j = 0; j < ends.size(); ++j)
                candidates.push_back((ends[i] + ends[j]) / Rational(2));
    }

    bool overlap(std::size_t i, std::size_t j) const {
        return std::any_of(candidates.begin(), candidates.end(), [&](const Rational& p) {
            return intervals[i].contains(p) && intervals[j].contains(p);
        });
    }
    bool day_covered(int d) const {
        return std::any_of(intervals.begin(), intervals.end(),
                           [&](const auto& iv) { return iv.contains(Rational(d)); });
    }
    bool band_touched() const {
        return std::any_of(candidates.begin(), candidates.end(), [&](const Rational& p) {
            if (!(Rational(0) < p) || !(p < Rational(1))) return false;
            return std::any_of(intervals.begin(), intervals.end(),
                               [&](const auto& iv) { return iv.contains(p); });
        });
    }

    std::multiset<ScaleFindingKind> expected_kinds() const {
        std::multiset<ScaleFindingKind> out;
        for (std::size_t i = 0; i < intervals.size(); ++i)
            for (std::size_t j = i + 1; j < intervals.size(); ++j)
                if (overlap(i, j)) out.insert(ScaleFindingKind::Overlap);
        int max_cov = -1;
        for (int d = 0; d <= 7; ++d)
            if (day_covered(d)) max_cov = d;
        if (max_cov >= 0) {
            bool interior = false;
            for (int d = 0; d < max_cov; ++d) {
                bool below = false;
                for (int b = 0; b < d; ++b) below |= day_covered(b);
                if (!day_covered(d) && below) interior = true;
            }
            if (interior) out.insert(ScaleFindingKind::InteriorGap);
            if (max_cov < 7) out.insert(ScaleFindingKind::TopNotCovered);
            bool weekly = false;
            for (int d = 1; d <= 7; ++d) weekly |= day_covered(d);
            if (!band_touched() && day_covered(0) && weekly)
                out.insert(ScaleFindingKind::SubWeeklyGap);
        }
        return out;
    }
};

void check_against_oracle(const std::vector<std::string>& labels) {
    auto analysis = scale::analyze_scale(labels, qmodel::QuestionKind::ClosedFrequency);
    std::vector<FrequencyInterval> ivs;
    for (const auto& iv : analysis.intervals) {
        REQUIRE_MESSAGE(iv.has_value(), "oracle check needs fully parseable scales");
        ivs.push_back(*iv);
    }
    Oracle oracle(ivs);
    CHECK_MESSAGE(kinds_of(analysis) == oracle.expected_kinds(), "labels: ",
                  [&] {
                      std::string s;
                      for (const auto& l : labels) s += "\"" + l + "\" ";
                      return s;
                  }());
}

}  // namespace

TEST_CASE("category label vocabulary") {
    auto never = scale::parse_category_interval("Never");
    REQUIRE(never);
    CHECK(*never == FrequencyInterval::point(Rational(0)));

    auto range = scale::parse_category_interval("1-2 days a week");
    REQUIRE(range);
    CHECK(range->lo == Rational(1));
    CHECK(range->hi.value() == Rational(2));
    CHECK(range->lo_inclusive);
    CHECK(range->hi_inclusive);

    // "less than once a month" sits strictly between never and once a month
    // (month = 4 weeks): both ends open, or the next category up would
    // spuriously overlap at exactly once-a-month.
    auto less = scale::parse_category_interval("Less than once a month");
    REQUIRE(less);
    CHECK(less->lo == Rational(0));
    CHECK_FALSE(less->lo_inclusive);
    CHECK(less->hi.value() == Rational(1, 4));
    CHECK_FALSE(less->hi_inclusive);

    auto daily = scale::parse_category_interval("Daily");
    REQUIRE(daily);
    CHECK(*daily == FrequencyInterval::point(Rational(7)));

    auto monthly_range = scale::parse_category_interval("1-3 times a month");
    REQUIRE(monthly_range);
    CHECK(monthly_range->lo == Rational(1, 4));
    CHECK(monthly_range->hi.value() == Rational(3, 4));

    auto once = scale::parse_category_interval("Once a week");
    REQUIRE(once);
    CHECK(*once == FrequencyInterval::point(Rational(1)));

    CHECK_FALSE(scale::parse_category_interval("Strongly agree"));
    CHECK_FALSE(scale::parse_category_interval("A few times"));
    CHECK_FALSE(scale::parse_category_interval("3 days a month"));
}

TEST_CASE("parsing is pure over case and whitespace") {
    auto a = scale::parse_category_interval("NEVER");
    auto b = scale::parse_category_interval("  never ");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
}

TEST_CASE("month conversion factor is configurable") {
    scale::ScaleOptions opts;
    opts.weeks_per_month = 5;
    auto iv = scale::parse_category_interval("2 times a month", opts);
    REQUIRE(iv);
    CHECK(iv->lo == Rational(2, 5));
}

TEST_CASE("original three-option scale: coverage gaps but no overlap") {
    auto analysis = scale::analyze_scale({"Never", "1-2 days a week", "3-4 days a week"},
                                         qmodel::QuestionKind::ClosedFrequency);
    auto kinds = kinds_of(analysis);
    CHECK(kinds.count(ScaleFindingKind::TopNotCovered) == 1);
    CHECK(kinds.count(ScaleFindingKind::SubWeeklyGap) == 1);
    CHECK(kinds.count(ScaleFindingKind::Overlap) == 0);
    CHECK(kinds.count(ScaleFindingKind::InteriorGap) == 0);
    for (const auto& f : analysis.findings) {
        if (f.kind == ScaleFindingKind::TopNotCovered) {
            CHECK(f.detail.find("5, 6, 7") != std::string::npos);
        }
    }
}

TEST_CASE("adjacent ranges sharing a day count overlap") {
    auto analysis = scale::analyze_scale({"1-2 days a week", "2-3 days a week"},
                                         qmodel::QuestionKind::ClosedFrequency);
    auto kinds = kinds_of(analysis);
    CHECK(kinds.count(ScaleFindingKind::Overlap) == 1);
    for (const auto& f : analysis.findings)
        if (f.kind == ScaleFindingKind::Overlap) {
            REQUIRE(f.category_indices.size() == 2);
            CHECK(f.category_indices[0] == 0);
            CHECK(f.category_indices[1] == 1);
        }
}

TEST_CASE("the seven-option revised scale: interior gap at six, nothing else") {
    std::vector<std::string> labels = {"Never",        "Less than once a month",
                                       "1-3 times a month", "Once a week",
                                       "2-3 times a week",  "4-5 times a week",
                                       "Daily"};
    auto analysis = scale::analyze_scale(labels, qmodel::QuestionKind::ClosedFrequency);
    auto kinds = kinds_of(analysis);
    CHECK(kinds == std::multiset<ScaleFindingKind>{ScaleFindingKind::InteriorGap});
    for (const auto& f : analysis.findings)
        if (f.kind == ScaleFindingKind::InteriorGap)
            CHECK(f.detail.find("6") != std::string::npos);
    check_against_oracle(labels);
}

TEST_CASE("balanced agreement scale passes; lopsided one does not") {
    std::vector<std::string> balanced = {"Strongly agree", "Somewhat agree",
                                         "Neither agree nor disagree", "Somewhat disagree",
                                         "Strongly disagree"};
    auto analysis = scale::analyze_scale(balanced, qmodel::QuestionKind::ClosedAgreement);
    CHECK(analysis.findings.empty());

    std::vector<std::string> lopsided = {"Strongly agree", "Agree", "Somewhat agree",
                                         "Disagree"};
    analysis = scale::analyze_scale(lopsided, qmodel::QuestionKind::ClosedAgreement);
    auto kinds = kinds_of(analysis);
    CHECK(kinds == std::multiset<ScaleFindingKind>{ScaleFindingKind::UnbalancedAgreementScale});
}

TEST_CASE("unrecognized labels degrade to a NotParsable finding") {
    auto analysis = scale::analyze_scale({"Never", "When I feel like it"},
                                         qmodel::QuestionKind::ClosedFrequency);
    REQUIRE(analysis.findings.size() == 1);
    CHECK(analysis.findings[0].kind == ScaleFindingKind::NotParsable);
    CHECK(analysis.findings[0].category_indices == std::vector<std::size_t>{1});
    CHECK_FALSE(analysis.intervals[1].has_value());
}

TEST_CASE("open and other kinds yield no scale findings") {
    CHECK(scale::analyze_scale({"Never"}, qmodel::QuestionKind::Open).findings.empty());
    CHECK(scale::analyze_scale({"Never"}, qmodel::QuestionKind::Other).findings.empty());
}

TEST_CASE("permuting labels preserves the finding kinds") {
    std::vector<std::string> labels = {"Never", "1-2 days a week", "2-3 days a week",
                                       "Daily"};
    auto base = kinds_of(scale::analyze_scale(labels, qmodel::QuestionKind::ClosedFrequency));
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto shuffled = labels;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto kinds = kinds_of(scale::analyze_scale(shuffled, qmodel::QuestionKind::ClosedFrequency));
        CHECK(kinds == base);
    }
}

TEST_CASE("scales that partition the domain are clean") {
    std::mt19937 rng(20240502);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<std::string> labels = {"Never", "Less than once a week"};
        int from = 1;
        while (from <= 7) {
            int to = std::min<int>(7, from + static_cast<int>(rng() % 3));
            if (from == 7 && rng() % 2) {
                labels.push_back("Daily");
            } else if (from == to) {
                labels.push_back(std::to_string(from) + " days a week");
            } else {
                labels.push_back(std::to_string(from) + "-" + std::to_string(to) +
                                 " days a week");
            }
            from = to + 1;
        }
        auto analysis = scale::analyze_scale(labels, qmodel::QuestionKind::ClosedFrequency);
        CHECK_MESSAGE(analysis.findings.empty(), "partition scale produced findings");
        check_against_oracle(labels);
    }
}

TEST_CASE("analysis equals the enumeration oracle on fixture and random scales") {
    check_against_oracle({"Never", "1-2 days a week", "3-4 days a week"});
    check_against_oracle({"Never", "Less than once a week", "1-2 days a week",
                          "3-4 days a week", "5-6 days a week", "Daily"});
    check_against_oracle({"1-2 days a week", "2-3 days a week"});
    check_against_oracle({"Never", "Once a week", "Daily"});
    check_against_oracle({"Less than once a month", "1-3 times a month", "Once a week"});

    // Random label subsets from the recognized vocabulary.
    const std::vector<std::string> vocab = {
        "Never",           "Less than once a month", "Less than once a week",
        "1-3 times a month", "Once a week",          "1-2 days a week",
        "2-3 days a week",   "3-4 days a week",      "4-5 times a week",
        "5-6 days a week",   "6 days a week",        "Daily"};
    std::mt19937 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::string> labels;
        for (const auto& v : vocab)
            if (rng() % 3 == 0) labels.push_back(v);
        if (labels.size() < 2) continue;
        check_against_oracle(labels);
    }
}
