#pragma once

// The verification suite: draws random matrices, runs every catalog
// evaluator against certified reference values, and accumulates violations
// and tightness statistics.  References are computed with outward-rounded
// enclosures, and violation checks compare against the unfavorable interval
// end, so a reported violation can never be enclosure noise.  Reports are
// deterministic functions of (trials, dims, seed, tol, matrix_scale) and
// serialize byte-identically.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blocks.hpp"
#include "bounds.hpp"
#include "ensembles.hpp"
#include "matrix.hpp"
#include "range.hpp"

namespace numrange {

// Reference w-values inside the suite use this scan tolerance: an order
// tighter than the 1e-6 violation tolerance, so enclosure width cannot eat
// the violation margin, but coarse enough to keep disk-shaped ranges cheap.
inline constexpr double kSuiteRefTol = 1e-7;

struct ViolationRecord {
    std::string bound_id;
    std::string fingerprint;  // enough to regenerate the inputs exactly
    double slack = 0.0;
};

struct TightnessStat {
    double mean_slack = 0.0;
    double min_slack = 0.0;
    std::size_t equality_count = 0;
    std::size_t checks = 0;
};

struct SuiteReport {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::vector<ViolationRecord> violations;
    std::map<std::string, TightnessStat> tightness;  // keyed by bound_id, sorted
};

namespace detail {

struct TightnessAccum {
    double sum = 0.0;
    double min = 0.0;
    std::size_t equal = 0;
    std::size_t count = 0;
};

// Records checks, violations, and tightness; all decisions are relative to
// tol * scale where scale is the natural size of the inequality at hand.
class SuiteAccumulator {
   public:
    explicit SuiteAccumulator(double tol) : tol_(tol) {}

    // value is a lower bound on the quantity enclosed by ref.
    void check_lower(const BoundEvaluation& e, const CertifiedValue& ref, double scale,
                     const std::string& fp) {
        if (!e.applicable) return;
        const double margin = tol_ * floor_scale(scale);
        record(e.bound_id, ref.value - e.value, e.value - ref.upper > margin, margin, fp);
    }

    // value is an upper bound on the quantity enclosed by ref.
    void check_upper(const BoundEvaluation& e, const CertifiedValue& ref, double scale,
                     const std::string& fp) {
        if (!e.applicable) return;
        const double margin = tol_ * floor_scale(scale);
        record(e.bound_id, e.value - ref.value, ref.lower - e.value > margin, margin, fp);
    }

    // lhs <= rhs with lhs rounded down and rhs rounded up by the evaluator.
    void check_pair(const std::string& id, const BoundEvaluation& lhs, const BoundEvaluation& rhs,
                    double scale, const std::string& fp) {
        const double margin = tol_ * floor_scale(scale);
        const double slack = rhs.value - lhs.value;
        record(id, slack, slack < -margin, margin, fp);
    }

    // A pointwise residual already of the form rhs - lhs.
    void check_residual(const BoundEvaluation& e, double scale, const std::string& fp) {
        const double margin = tol_ * floor_scale(scale);
        record(e.bound_id, e.value, e.value < -margin, margin, fp);
    }

    // Two enclosures of quantities that should be equal.
    void check_equality(const std::string& id, const CertifiedValue& lhs,
                        const CertifiedValue& rhs, double scale, const std::string& fp) {
        const double margin = tol_ * floor_scale(scale);
        const double gap = std::max(lhs.lower - rhs.upper, rhs.lower - lhs.upper);
        record(id, std::abs(lhs.value - rhs.value), gap > margin, margin, fp);
    }

    SuiteReport finish(std::size_t trials) {
        SuiteReport rep;
        rep.trials = trials;
        rep.checks = checks_;
        rep.violations = std::move(violations_);
        for (const auto& [id, acc] : accum_) {
            TightnessStat st;
            st.mean_slack = acc.count ? acc.sum / static_cast<double>(acc.count) : 0.0;
            st.min_slack = acc.min;
            st.equality_count = acc.equal;
            st.checks = acc.count;
            rep.tightness.emplace(id, st);
        }
        return rep;
    }

   private:
    static double floor_scale(double s) { return std::max(s, 1e-300); }

    void record(const std::string& id, double slack, bool violated, double margin,
                const std::string& fp) {
        ++checks_;
        TightnessAccum& acc = accum_[id];
        if (acc.count == 0 || slack < acc.min) acc.min = slack;
        acc.sum += slack;
        if (std::abs(slack) <= margin) ++acc.equal;
        ++acc.count;
        if (violated) violations_.push_back({id, fp, slack});
    }

    double tol_;
    std::size_t checks_ = 0;
    std::vector<ViolationRecord> violations_;
    std::map<std::string, TightnessAccum> accum_;
};

inline std::string fingerprint(EnsembleKind kind, std::size_t dim, std::uint64_t seed,
                               std::size_t trial, const char* part) {
    return std::string(to_string(kind)) + ":" + std::to_string(dim) + ":" + std::to_string(seed) +
           ":" + std::to_string(trial) + ":" + part;
}

}  // namespace detail

// The full fuzzing pass.  Every catalog evaluator runs once per trial; the
// pointwise lemmas get ceil(1000/trials) unit-vector draws per trial so the
// total reaches the thousand-draw target.  matrix_scale multiplies every
// generated matrix and exists to demonstrate that all tolerances are
// relative (the report must stay violation-free at 1e3 and 1e-3).
inline SuiteReport run_suite(std::size_t trials, const std::vector<std::size_t>& dims,
                             std::uint64_t seed, double tol = 1e-6, double matrix_scale = 1.0) {
    if (trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
    if (dims.empty()) throw std::invalid_argument("run_suite: dims must be nonempty");
    for (std::size_t d : dims)
        if (d == 0) throw std::invalid_argument("run_suite: dims entries must be >= 1");

    detail::SuiteAccumulator acc(tol);
    const std::size_t draws_per_trial = (1000 + trials - 1) / trials;
    const Complex unit_scale(matrix_scale, 0.0);

    for (std::size_t t = 0; t < trials; ++t) {
        const EnsembleKind kind = kEnsembleKinds[t % kEnsembleKinds.size()];
        const std::size_t dim = dims[t % dims.size()];
        const std::uint64_t base = t * 16;

        const ComplexMatrix tm =
            scale(unit_scale, gen_random({kind, dim, substream_seed(seed, base + 0)}));
        const ComplexMatrix a = scale(
            unit_scale, gen_random({EnsembleKind::ginibre, dim, substream_seed(seed, base + 1)}));
        const ComplexMatrix b = scale(
            unit_scale, gen_random({EnsembleKind::ginibre, dim, substream_seed(seed, base + 2)}));
        const ComplexMatrix c = scale(
            unit_scale, gen_random({EnsembleKind::ginibre, dim, substream_seed(seed, base + 3)}));
        const ComplexMatrix d = scale(
            unit_scale, gen_random({EnsembleKind::ginibre, dim, substream_seed(seed, base + 4)}));

        const double na = op_norm(a).upper;
        const double nb = op_norm(b).upper;
        const double nt = op_norm(tm).upper;

        // Scalar bounds on w(T).
        {
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "T");
            const CertifiedValue wref = numerical_radius(tm, kSuiteRefTol);
            for (const BoundEvaluation& e : scalar_bounds(tm, kSuiteRefTol)) {
                if (e.direction == BoundDirection::lower)
                    acc.check_lower(e, wref, nt, fp);
                else
                    acc.check_upper(e, wref, nt, fp);
            }
        }

        // Product bounds on w(AB).
        {
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "AB");
            const CertifiedValue wref = numerical_radius(matmul(a, b), kSuiteRefTol);
            for (const BoundEvaluation& e : product_upper(a, b, kSuiteRefTol))
                acc.check_upper(e, wref, na * nb, fp);
        }

        // Sandwich pairs around T.
        {
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "ATB");
            const std::vector<BoundEvaluation> evals = sandwich_bounds(a, tm, b, kSuiteRefTol);
            const double scale_atb = na * nb * nt;
            for (std::size_t i = 0; i + 1 < evals.size(); i += 2) {
                // sorted ids come in (x_lhs, x_rhs) adjacent pairs
                const std::string id = evals[i].bound_id.substr(0, evals[i].bound_id.size() - 4);
                acc.check_pair(id, evals[i], evals[i + 1], scale_atb, fp);
            }
        }

        // Pointwise lemma draws.
        {
            const CertifiedValue wt = numerical_radius(tm, kSuiteRefTol);
            const std::uint64_t vec_base = substream_seed(seed, 1000000 + t);
            for (std::size_t dr = 0; dr < draws_per_trial; ++dr) {
                const ComplexVector x = random_unit_vector(dim, substream_seed(vec_base, dr));
                const std::string fp = detail::fingerprint(kind, dim, seed, t,
                                                           ("x" + std::to_string(dr)).c_str());
                for (const BoundEvaluation& e : pointwise_check(a, tm, b, x, kSuiteRefTol, &wt)) {
                    const double sc = e.bound_id == "lem21" ? nt * nt : na * nb * nt;
                    acc.check_residual(e, sc, fp);
                }
            }
        }

        // Off-diagonal lower bounds; the assembled reference is shared with
        // the two-block anti-diagonal case below.
        const ComplexMatrix offm = off_diagonal(a, b);
        const CertifiedValue woff = numerical_radius(offm, kSuiteRefTol);
        {
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "offAB");
            const double sc = op_norm(offm).upper;
            for (const BoundEvaluation& e : offdiag_lower(a, b, kSuiteRefTol))
                acc.check_lower(e, woff, sc, fp);
        }

        // Row bounds on [[A,B],[0,0]].
        {
            BlockSpec rspec({dim, dim}, {dim, dim});
            rspec.set(0, 0, a);
            rspec.set(0, 1, b);
            const ComplexMatrix rm = assemble(rspec);
            const CertifiedValue wref = numerical_radius(rm, kSuiteRefTol);
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "rowAB");
            const double sc = op_norm(rm).upper;
            for (const BoundEvaluation& e : row_bounds(a, b, kSuiteRefTol)) {
                if (e.direction == BoundDirection::upper)
                    acc.check_upper(e, wref, sc, fp);
                else
                    acc.check_lower(e, wref, sc, fp);
            }
        }

        // First-row bound on [[A,B,C],[0,...],[0,...]].
        {
            BlockSpec fspec({dim, dim, dim}, {dim, dim, dim});
            fspec.set(0, 0, a);
            fspec.set(0, 1, b);
            fspec.set(0, 2, c);
            const ComplexMatrix fm = assemble(fspec);
            const CertifiedValue wref = numerical_radius(fm, kSuiteRefTol);
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "firstrowABC");
            acc.check_upper(firstrow_upper({a, b, c}).eval, wref, op_norm(fm).upper, fp);
        }

        // Full 2x2 grid [[A,B],[C,D]]: the grid bound and the block-matrix
        // bounds share one assembled reference.
        {
            BlockSpec gspec({dim, dim}, {dim, dim});
            gspec.set(0, 0, a);
            gspec.set(0, 1, b);
            gspec.set(1, 0, c);
            gspec.set(1, 1, d);
            const ComplexMatrix gm = assemble(gspec);
            const CertifiedValue wref = numerical_radius(gm, kSuiteRefTol);
            const double sc = op_norm(gm).upper;
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "ABCD");
            acc.check_upper(grid_upper(gspec).eval, wref, sc, fp);
            for (const BoundEvaluation& e : two_by_two_bounds(a, b, c, d, kSuiteRefTol)) {
                if (e.direction == BoundDirection::upper)
                    acc.check_upper(e, wref, sc, fp);
                else
                    acc.check_lower(e, wref, sc, fp);
            }
        }

        // Anti-diagonal lower bound with the block count cycling 1, 2, 3.
        {
            std::vector<ComplexMatrix> blocks;
            if (t % 3 == 0) blocks = {a};
            else if (t % 3 == 1) blocks = {a, b};
            else blocks = {a, b, c};
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "antidiag");
            if (t % 3 == 1) {
                acc.check_lower(antidiag_lower(blocks, kSuiteRefTol), woff, op_norm(offm).upper,
                                fp);
            } else {
                const ComplexMatrix am = anti_diagonal(blocks);
                acc.check_lower(antidiag_lower(blocks, kSuiteRefTol),
                                numerical_radius(am, kSuiteRefTol), op_norm(am).upper, fp);
            }
        }

        // The symmetric two-block identity.
        {
            const std::string fp = detail::fingerprint(kind, dim, seed, t, "symAB");
            const SymBlockEquality eq = sym_block_equality(a, b, kSuiteRefTol);
            acc.check_equality("lem43", eq.lhs, eq.rhs, na + nb, fp);
        }
    }

    // Curated equality cases: known inputs where a bound is attained
    // exactly.  They run through the same checks, so each contributes an
    // equality-attained count to its bound.
    {
        const ComplexMatrix shift{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
        const ComplexMatrix off_ss = off_diagonal(shift, shift);
        const CertifiedValue wref = numerical_radius(off_ss, kSuiteRefTol);
        const double sc = op_norm(off_ss).upper;
        for (const BoundEvaluation& e : offdiag_lower(shift, shift, kSuiteRefTol))
            acc.check_lower(e, wref, sc, "curated:0");
    }
    {
        const ComplexMatrix zero1(1, 1);
        const ComplexMatrix one{{Complex(1, 0)}};
        const ComplexMatrix two{{Complex(2, 0)}};
        const ComplexMatrix m{{Complex(0, 0), Complex(1, 0)}, {Complex(2, 0), Complex(0, 0)}};
        const CertifiedValue wref = numerical_radius(m, kSuiteRefTol);
        const double sc = op_norm(m).upper;
        for (const BoundEvaluation& e : two_by_two_bounds(zero1, one, two, zero1, kSuiteRefTol)) {
            if (e.direction == BoundDirection::upper)
                acc.check_upper(e, wref, sc, "curated:1");
            else
                acc.check_lower(e, wref, sc, "curated:1");
        }
        for (const BoundEvaluation& e : offdiag_lower(one, two, kSuiteRefTol))
            acc.check_lower(e, wref, sc, "curated:2");
    }
    {
        const ComplexMatrix eye = ComplexMatrix::identity(2);
        const CertifiedValue wref = numerical_radius(eye, kSuiteRefTol);
        for (const BoundEvaluation& e : scalar_bounds(eye, kSuiteRefTol)) {
            if (e.direction == BoundDirection::lower)
                acc.check_lower(e, wref, 1.0, "curated:3");
            else
                acc.check_upper(e, wref, 1.0, "curated:3");
        }
    }

    return acc.finish(trials);
}

// Deterministic serialization; doubles print shortest-round-trip, map keys
// are sorted, violations stay in trial order.
inline std::string report_to_json(const SuiteReport& rep) {
    nlohmann::ordered_json j;
    j["trials"] = rep.trials;
    j["checks"] = rep.checks;
    nlohmann::ordered_json viol = nlohmann::ordered_json::array();
    for (const ViolationRecord& v : rep.violations) {
        nlohmann::ordered_json rec;
        rec["bound_id"] = v.bound_id;
        rec["fingerprint"] = v.fingerprint;
        rec["slack"] = v.slack;
        viol.push_back(rec);
    }
    j["violations"] = viol;
    nlohmann::ordered_json tight;
    for (const auto& [id, st] : rep.tightness) {
        nlohmann::ordered_json rec;
        rec["mean_slack"] = st.mean_slack;
        rec["min_slack"] = st.min_slack;
        rec["equality_count"] = st.equality_count;
        rec["checks"] = st.checks;
        tight[id] = rec;
    }
    j["tightness"] = tight;
    return j.dump(2);
}

struct PaperExampleRow {
    std::string label;
    double computed = 0.0;
    double expected = 0.0;
    double diff = 0.0;
};

namespace detail {

inline double catalog_value(const std::vector<BoundEvaluation>& evals, const std::string& id) {
    for (const BoundEvaluation& e : evals)
        if (e.bound_id == id) return e.value;
    throw std::logic_error("catalog_value: no entry " + id);
}

}  // namespace detail

// The worked numerical examples, reproduced end to end: each row pairs a
// computed catalog value with its closed-form expectation.
inline std::vector<PaperExampleRow> paper_examples() {
    std::vector<PaperExampleRow> rows;
    auto push = [&rows](std::string label, double computed, double expected) {
        rows.push_back({std::move(label), computed, expected, std::abs(computed - expected)});
    };

    const ComplexMatrix shift{{Complex(0, 0), Complex(1, 0)}, {Complex(0, 0), Complex(0, 0)}};
    const ComplexMatrix diag_i1{{Complex(0, 1), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}};
    {
        const std::vector<BoundEvaluation> evals = scalar_bounds(shift);
        push("eq2 shift", detail::catalog_value(evals, "eq2"), 0.5);
        push("eq3 shift", detail::catalog_value(evals, "eq3"), 0.0);
    }
    {
        const std::vector<BoundEvaluation> evals = scalar_bounds(diag_i1);
        push("eq2 diag(i,1)", detail::catalog_value(evals, "eq2"), 0.5);
        push("eq3 diag(i,1)", detail::catalog_value(evals, "eq3"), 1.0);
    }
    {
        const ComplexMatrix a{{Complex(0, 0), Complex(0, 0)}, {Complex(3, 0), Complex(1, 0)}};
        const ComplexMatrix b{{Complex(1, 0), Complex(2, 0)}, {Complex(0, 0), Complex(0, 0)}};
        push("thm37 block example", detail::catalog_value(row_bounds(a, b), "thm37"),
             std::sqrt(8.0 + std::sqrt(10.0)));
        push("shebrawi constant", kShebrawiBound, (12.0 + std::sqrt(10.0)) / 4.0);
    }
    {
        const ComplexMatrix zero1(1, 1);
        const ComplexMatrix one{{Complex(1, 0)}};
        const ComplexMatrix two{{Complex(2, 0)}};
        push("cor42 ex1",
             detail::catalog_value(two_by_two_bounds(zero1, one, two, zero1), "cor42"),
             std::sqrt(2.0));
    }
    {
        const ComplexMatrix zero2(2, 2);
        const ComplexMatrix b{{Complex(-1, 0), Complex(3, 0)}, {Complex(0, 0), Complex(1, 0)}};
        const ComplexMatrix c{{Complex(1, 0), Complex(3, 0)}, {Complex(0, 0), Complex(-1, 0)}};
        push("cor42 ex2", detail::catalog_value(two_by_two_bounds(zero2, b, c, zero2), "cor42"),
             std::sqrt(3.0));
        push("hks constant", kHirzallahKittanehShebrawiBound, 1.5);
    }
    return rows;
}

// Scalar-bound tightness against certified w(T), lower bounds first, each
// direction sorted by ascending slack.
inline std::vector<BoundEvaluation> tightness_report(const ComplexMatrix& t,
                                                     double tol = kRangeTolDefault) {
    detail::require_square(t, "tightness_report");
    if (t.max_abs() == 0.0)
        throw std::invalid_argument("tightness_report: zero matrix has no meaningful slack");
    const CertifiedValue wref = numerical_radius(t, tol);
    std::vector<BoundEvaluation> evals = scalar_bounds(t, tol);
    for (BoundEvaluation& e : evals) {
        if (!e.applicable) continue;
        e.slack = e.direction == BoundDirection::lower ? wref.value - e.value
                                                       : e.value - wref.value;
    }
    std::stable_sort(evals.begin(), evals.end(),
                     [](const BoundEvaluation& x, const BoundEvaluation& y) {
                         if (x.direction != y.direction)
                             return static_cast<int>(x.direction) < static_cast<int>(y.direction);
                         const double xs = x.slack.value_or(1e308);
                         const double ys = y.slack.value_or(1e308);
                         return xs < ys;
                     });
    return evals;
}

}  // namespace numrange
