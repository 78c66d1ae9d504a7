#include <catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "numrange/matrix.hpp"
#include "numrange/suite.hpp"

using namespace numrange;

namespace {

const ComplexMatrix kShift{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
const ComplexMatrix kDiagI1{{Complex(0, 1), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}};

}  // namespace

TEST_CASE("worked example rows") {
    const std::vector<PaperExampleRow> rows = paper_examples();
    REQUIRE(rows.size() == 9);
    const std::vector<std::string> labels = {
        "eq2 shift",          "eq3 shift",    "eq2 diag(i,1)", "eq3 diag(i,1)",
        "thm37 block example", "shebrawi constant", "cor42 ex1",     "cor42 ex2",
        "hks constant"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].label == labels[i]);
        REQUIRE(rows[i].diff <= 1e-6);
        REQUIRE(rows[i].diff == std::abs(rows[i].computed - rows[i].expected));
    }

    // The block-example bound undercuts the first comparison constant, and
    // the commutator example exceeds the second: both separations are the
    // point of those rows.
    REQUIRE(rows[4].computed < kShebrawiBound - 0.4);
    REQUIRE(rows[7].computed > kHirzallahKittanehShebrawiBound + 0.2);
}

TEST_CASE("small suite runs clean") {
    const SuiteReport rep = run_suite(5, {2, 3}, 7);
    REQUIRE(rep.trials == 5);
    REQUIRE(rep.violations.empty());
    REQUIRE(rep.checks > 0);
    REQUIRE_FALSE(rep.tightness.empty());

    // Every check lands in exactly one per-bound stat.
    std::size_t total = 0;
    for (const auto& [id, st] : rep.tightness) {
        REQUIRE_FALSE(id.empty());
        REQUIRE(st.checks >= 1);
        REQUIRE(st.min_slack >= -1e-6 * 1e6);  // sanity: no wild negatives
        total += st.checks;
    }
    REQUIRE(total == rep.checks);

    // The symmetric-block identity holds on every trial.
    REQUIRE(rep.tightness.count("lem43") == 1);
    REQUIRE(rep.tightness.at("lem43").equality_count == rep.trials);

    // Curated equality cases guarantee attained bounds in the stats.
    for (const char* id : {"eq2", "cor36", "offdiag_i", "thm45"})
        REQUIRE(rep.tightness.at(id).equality_count >= 1);
}

TEST_CASE("suite input validation") {
    REQUIRE_THROWS_AS(run_suite(0, {2}, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(run_suite(1, {}, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(run_suite(1, {2, 0}, 1), std::invalid_argument);
}

TEST_CASE("report json is deterministic and well-formed") {
    const std::string a = report_to_json(run_suite(3, {2}, 99));
    const std::string b = report_to_json(run_suite(3, {2}, 99));
    REQUIRE(a == b);

    const nlohmann::json doc = nlohmann::json::parse(a);
    REQUIRE(doc["trials"] == 3);
    REQUIRE(doc["violations"].is_array());
    REQUIRE(doc["violations"].empty());
    REQUIRE(doc["tightness"].is_object());
    for (const auto& [id, st] : doc["tightness"].items()) {
        REQUIRE_FALSE(id.empty());
        REQUIRE(st.contains("mean_slack"));
        REQUIRE(st.contains("min_slack"));
        REQUIRE(st.contains("equality_count"));
        REQUIRE(st.contains("checks"));
    }

    // A different seed changes the draws but not the clean verdict.
    const SuiteReport other = run_suite(3, {2}, 100);
    REQUIRE(other.violations.empty());
}

TEST_CASE("relative tolerances survive extreme scales") {
    for (double s : {1e3, 1e-3}) {
        const SuiteReport rep = run_suite(4, {2, 3}, 21, 1e-6, s);
        REQUIRE(rep.violations.empty());
    }
}

TEST_CASE("tightness report ordering") {
    // Shift: eq2 is tight from below (slack 0), lem31 is the best upper.
    const std::vector<BoundEvaluation> sh = tightness_report(kShift);
    REQUIRE(sh.size() == 8);
    std::size_t lower_count = 0;
    for (const auto& e : sh)
        if (e.direction == BoundDirection::lower) ++lower_count;
    REQUIRE(lower_count == 5);
    // Lower block first, sorted ascending in slack; upper block afterwards.
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(sh[i].direction == BoundDirection::lower);
    for (std::size_t i = 5; i < 8; ++i) REQUIRE(sh[i].direction == BoundDirection::upper);
    for (std::size_t i = 1; i < 5; ++i)
        REQUIRE(sh[i - 1].slack.value() <= sh[i].slack.value() + 1e-12);
    for (std::size_t i = 6; i < 8; ++i)
        REQUIRE(sh[i - 1].slack.value() <= sh[i].slack.value() + 1e-12);
    REQUIRE(sh[0].slack.value() <= 1e-8);  // an attained lower bound leads
    REQUIRE(sh[5].bound_id == "lem31");    // cartesian bound is tightest above
    REQUIRE(sh[5].slack.value() == Catch::Approx(std::sqrt(0.5) - 0.5).epsilon(1e-6));
    REQUIRE(sh[6].bound_id == "thm214");
    REQUIRE(sh[7].bound_id == "norm");

    // diag(i,1): eq3 attains w; eq2 trails by exactly 1/2.
    const std::vector<BoundEvaluation> di = tightness_report(kDiagI1);
    double eq2_slack = -1.0, eq3_slack = -1.0;
    for (const auto& e : di) {
        if (e.bound_id == "eq2") eq2_slack = e.slack.value();
        if (e.bound_id == "eq3") eq3_slack = e.slack.value();
    }
    REQUIRE(eq3_slack <= 1e-8);
    REQUIRE(eq2_slack == Catch::Approx(0.5).epsilon(1e-6));

    REQUIRE_THROWS_AS(tightness_report(ComplexMatrix(2, 2)), std::invalid_argument);
}
