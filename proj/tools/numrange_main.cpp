// numrange: command-line front end for the certified numerical range
// toolkit.  Subcommands: compute (certified quantities), bounds (inequality
// catalog table), range (boundary samples and SVG), verify (fuzzing suite),
// examples (worked-example reproduction).
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 precondition failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "numrange/blocks.hpp"
#include "numrange/bounds.hpp"
#include "numrange/eigen.hpp"
#include "numrange/ensembles.hpp"
#include "numrange/matrix.hpp"
#include "numrange/matrix_io.hpp"
#include "numrange/range.hpp"
#include "numrange/suite.hpp"
#include "numrange/svg.hpp"

namespace nr = numrange;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

nr::MatrixFormat pick_format(const std::string& path, const std::string& override_fmt) {
    if (override_fmt == "json") return nr::MatrixFormat::json;
    if (override_fmt == "text") return nr::MatrixFormat::text;
    return path.ends_with(".json") ? nr::MatrixFormat::json : nr::MatrixFormat::text;
}

nr::ComplexMatrix load_matrix(const std::string& path, const std::string& override_fmt) {
    std::string content;
    if (!read_file(path, content)) throw nr::ParseError("cannot read file '" + path + "'", 0, 0);
    return nr::parse_matrix(content, pick_format(path, override_fmt));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += '"';
    return out;
}

nlohmann::ordered_json certified_json(const nr::CertifiedValue& cv) {
    nlohmann::ordered_json j;
    j["value"] = cv.value;
    j["lower"] = cv.lower;
    j["upper"] = cv.upper;
    if (cv.theta_star) j["theta"] = *cv.theta_star;
    return j;
}

int run_compute(const std::string& path, const std::string& fmt, double tol, bool json) {
    const nr::ComplexMatrix t = load_matrix(path, fmt);
    if (!t.is_square()) {
        std::cerr << "error: compute requires a square matrix, got "
                  << t.rows() << "x" << t.cols() << "\n";
        return kExitPrecondition;
    }
    const nr::CertifiedValue w = nr::numerical_radius(t, tol);
    const nr::CertifiedValue m = nr::crawford_number(t, tol);
    const nr::CertifiedValue c = nr::min_norm(t);
    const nr::CertifiedValue r = nr::spectral_radius(t);
    const nr::CertifiedValue nrm = nr::op_norm(t);

    if (json) {
        nlohmann::ordered_json j;
        j["w"] = certified_json(w);
        j["m"] = certified_json(m);
        j["c"] = certified_json(c);
        j["r"] = certified_json(r);
        j["norm"] = certified_json(nrm);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    auto line = [](const char* name, const nr::CertifiedValue& cv) {
        std::printf("%-6s %-24s [%s, %s]\n", name, nr::format_double(cv.value).c_str(),
                    nr::format_double(cv.lower).c_str(), nr::format_double(cv.upper).c_str());
    };
    std::printf("%-6s %-24s %s\n", "", "value", "enclosure");
    line("w", w);
    line("m", m);
    line("c", c);
    line("r", r);
    line("norm", nrm);
    return 0;
}

nr::ComplexMatrix submatrix(const nr::ComplexMatrix& m, std::size_t r0, std::size_t c0,
                            std::size_t nrows, std::size_t ncols) {
    nr::ComplexMatrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

// Whole-matrix bounds table, plus block bounds when a square grid is given.
int run_bounds(const std::string& path, const std::string& fmt, double tol,
               const std::vector<std::size_t>& blocks, bool json, bool csv) {
    const nr::ComplexMatrix t = load_matrix(path, fmt);
    if (!t.is_square()) {
        std::cerr << "error: bounds requires a square matrix, got " << t.rows() << "x" << t.cols()
                  << "\n";
        return kExitPrecondition;
    }

    std::vector<nr::BoundEvaluation> rows = nr::scalar_bounds(t, tol);

    if (!blocks.empty()) {
        const std::size_t br = blocks[0], bc = blocks[1];
        if (br == 0 || bc == 0 || br != bc) {
            std::cerr << "error: --blocks must give a square grid r c with r == c >= 1\n";
            return kExitPrecondition;
        }
        if (t.rows() % br != 0) {
            std::cerr << "error: matrix dimension " << t.rows()
                      << " does not divide into " << br << " blocks\n";
            return kExitPrecondition;
        }
        const std::size_t n = br;
        const std::size_t bs = t.rows() / n;
        std::vector<std::vector<nr::ComplexMatrix>> grid(n, std::vector<nr::ComplexMatrix>(n));
        nr::BlockSpec spec(std::vector<std::size_t>(n, bs), std::vector<std::size_t>(n, bs));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                grid[i][j] = submatrix(t, i * bs, j * bs, bs, bs);
                spec.set(i, j, grid[i][j]);
            }
        rows.push_back(nr::grid_upper(spec).eval);

        auto zero_block = [&](std::size_t i, std::size_t j) {
            return grid[i][j].max_abs() == 0.0;
        };
        bool lower_rows_zero = true;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!zero_block(i, j)) lower_rows_zero = false;
        if (lower_rows_zero) rows.push_back(nr::firstrow_upper(grid[0]).eval);

        bool anti_only = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != n - 1 - i && !zero_block(i, j)) anti_only = false;
        if (anti_only) {
            std::vector<nr::ComplexMatrix> anti;
            for (std::size_t i = 0; i < n; ++i) anti.push_back(grid[i][n - 1 - i]);
            rows.push_back(nr::antidiag_lower(anti, tol));
        }

        if (n == 2) {
            if (lower_rows_zero)
                for (nr::BoundEvaluation& e : nr::row_bounds(grid[0][0], grid[0][1], tol))
                    rows.push_back(std::move(e));
            if (zero_block(0, 0) && zero_block(1, 1))
                for (nr::BoundEvaluation& e : nr::offdiag_lower(grid[0][1], grid[1][0], tol))
                    rows.push_back(std::move(e));
            for (nr::BoundEvaluation& e :
                 nr::two_by_two_bounds(grid[0][0], grid[0][1], grid[1][0], grid[1][1], tol))
                rows.push_back(std::move(e));
        }
    }

    const nr::CertifiedValue w = nr::numerical_radius(t, tol);
    for (nr::BoundEvaluation& e : rows) {
        if (!e.applicable) continue;
        if (e.direction == nr::BoundDirection::lower)
            e.slack = w.value - e.value;
        else if (e.direction == nr::BoundDirection::upper)
            e.slack = e.value - w.value;
    }

    if (json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const nr::BoundEvaluation& e : rows) {
            nlohmann::ordered_json rec;
            rec["bound_id"] = e.bound_id;
            rec["direction"] = nr::to_string(e.direction);
            rec["value"] = e.value;
            rec["reference"] = e.reference;
            rec["applicable"] = e.applicable;
            if (e.slack) rec["slack"] = *e.slack;
            j.push_back(rec);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (csv) {
        std::cout << "bound_id,direction,value,reference,applicable,slack\n";
        for (const nr::BoundEvaluation& e : rows) {
            std::cout << csv_field(e.bound_id) << ',' << nr::to_string(e.direction) << ','
                      << nr::format_double(e.value) << ',' << csv_field(e.reference) << ','
                      << (e.applicable ? "true" : "false") << ','
                      << (e.slack ? nr::format_double(*e.slack) : std::string()) << "\n";
        }
        return 0;
    }
    std::printf("%-12s %-6s %-22s %-12s  %s\n", "bound_id", "dir", "value", "slack", "reference");
    for (const nr::BoundEvaluation& e : rows) {
        std::printf("%-12s %-6s %-22s %-12s  %s\n", e.bound_id.c_str(),
                    nr::to_string(e.direction), nr::format_double(e.value).c_str(),
                    e.slack ? nr::format_double(*e.slack).c_str()
                            : (e.applicable ? "" : "n/a"),
                    e.reference.c_str());
    }
    std::printf("certified w: %s in [%s, %s]\n", nr::format_double(w.value).c_str(),
                nr::format_double(w.lower).c_str(), nr::format_double(w.upper).c_str());
    return 0;
}

int run_range(const std::string& path, const std::string& fmt, std::size_t samples,
              const std::string& svg_out) {
    const nr::ComplexMatrix t = load_matrix(path, fmt);
    if (!t.is_square()) {
        std::cerr << "error: range requires a square matrix, got " << t.rows() << "x" << t.cols()
                  << "\n";
        return kExitPrecondition;
    }
    const nr::RangeBoundary rb = nr::range_boundary(t, samples);

    std::cout << "# numerical range boundary of " << path << "\n";
    if (rb.shape == nr::RangeShape::point) {
        std::cout << "# degenerate: single point at (" << nr::format_double(rb.anchor_a.real())
                  << ", " << nr::format_double(rb.anchor_a.imag()) << ")\n";
    } else if (rb.shape == nr::RangeShape::segment) {
        std::cout << "# degenerate: line segment from (" << nr::format_double(rb.anchor_a.real())
                  << ", " << nr::format_double(rb.anchor_a.imag()) << ") to ("
                  << nr::format_double(rb.anchor_b.real()) << ", "
                  << nr::format_double(rb.anchor_b.imag()) << ")\n";
    }
    std::cout << "theta,re,im,support\n";
    for (const nr::RangeBoundarySample& s : rb.samples) {
        std::cout << nr::format_double(s.theta) << ',' << nr::format_double(s.point.real()) << ','
                  << nr::format_double(s.point.imag()) << ',' << nr::format_double(s.support)
                  << "\n";
    }

    if (!svg_out.empty()) {
        const std::vector<nr::Complex> eigs = nr::general_eigenvalues(t);
        std::ofstream out(svg_out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << svg_out << "'\n";
            return kExitUsage;
        }
        out << nr::range_svg(rb, eigs, path);
    }
    return 0;
}

int run_verify(std::size_t trials, const std::vector<std::size_t>& dims, std::uint64_t seed,
               double tol, double matrix_scale, bool json) {
    const nr::SuiteReport rep = nr::run_suite(trials, dims, seed, tol, matrix_scale);
    if (json) {
        std::cout << nr::report_to_json(rep) << "\n";
    } else {
        std::printf("trials: %zu\nchecks: %zu\nviolations: %zu\n", rep.trials, rep.checks,
                    rep.violations.size());
        for (const nr::ViolationRecord& v : rep.violations)
            std::printf("  VIOLATION %s slack=%s at %s\n", v.bound_id.c_str(),
                        nr::format_double(v.slack).c_str(), v.fingerprint.c_str());
        std::printf("%-14s %-8s %-24s %-24s %s\n", "bound_id", "checks", "mean_slack",
                    "min_slack", "equalities");
        for (const auto& [id, st] : rep.tightness)
            std::printf("%-14s %-8zu %-24s %-24s %zu\n", id.c_str(), st.checks,
                        nr::format_double(st.mean_slack).c_str(),
                        nr::format_double(st.min_slack).c_str(), st.equality_count);
    }
    return rep.violations.empty() ? 0 : kExitVerification;
}

int run_examples(bool json) {
    const std::vector<nr::PaperExampleRow> rows = nr::paper_examples();
    bool ok = true;
    for (const nr::PaperExampleRow& r : rows) ok = ok && r.diff <= 1e-6;
    if (json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const nr::PaperExampleRow& r : rows) {
            nlohmann::ordered_json rec;
            rec["label"] = r.label;
            rec["computed"] = r.computed;
            rec["expected"] = r.expected;
            rec["diff"] = r.diff;
            j.push_back(rec);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-22s %-24s %-24s %s\n", "label", "computed", "expected", "diff");
        for (const nr::PaperExampleRow& r : rows)
            std::printf("%-22s %-24s %-24s %s\n", r.label.c_str(),
                        nr::format_double(r.computed).c_str(),
                        nr::format_double(r.expected).c_str(), nr::format_double(r.diff).c_str());
        std::printf("%s\n", ok ? "all examples reproduced" : "MISMATCH in examples");
    }
    return ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified numerical range toolkit"};
    app.require_subcommand(1);

    auto* compute = app.add_subcommand("compute", "certified w, m, c, r, and norm of a matrix");
    std::string c_file, c_fmt;
    double c_tol = nr::kRangeTolDefault;
    bool c_json = false;
    compute->add_option("file", c_file, "matrix file (text or json)")->required();
    compute->add_option("--tol", c_tol, "relative scan tolerance")
        ->check(CLI::PositiveNumber);
    compute->add_option("--format", c_fmt, "force input format")
        ->check(CLI::IsMember({"text", "json"}));
    compute->add_flag("--json", c_json, "JSON output");

    auto* bounds = app.add_subcommand("bounds", "inequality catalog table for a matrix");
    std::string b_file, b_fmt;
    double b_tol = nr::kRangeTolDefault;
    bool b_json = false, b_csv = false;
    std::vector<std::size_t> b_blocks;
    bounds->add_option("file", b_file, "matrix file (text or json)")->required();
    bounds->add_option("--tol", b_tol, "relative scan tolerance")->check(CLI::PositiveNumber);
    bounds->add_option("--format", b_fmt, "force input format")
        ->check(CLI::IsMember({"text", "json"}));
    bounds->add_option("--blocks", b_blocks, "treat the matrix as an r x c block grid")
        ->expected(2);
    auto* b_json_flag = bounds->add_flag("--json", b_json, "JSON output");
    bounds->add_flag("--csv", b_csv, "CSV output")->excludes(b_json_flag);

    auto* range = app.add_subcommand("range", "numerical range boundary samples");
    std::string r_file, r_fmt, r_svg;
    std::size_t r_samples = 256;
    range->add_option("file", r_file, "matrix file (text or json)")->required();
    range->add_option("--samples", r_samples, "number of boundary samples")
        ->check(CLI::Range(static_cast<std::size_t>(3), static_cast<std::size_t>(10000000)));
    range->add_option("--format", r_fmt, "force input format")
        ->check(CLI::IsMember({"text", "json"}));
    range->add_option("--svg", r_svg, "also write an SVG plot to this path");

    auto* verify = app.add_subcommand("verify", "run the randomized verification suite");
    std::size_t v_trials = 200;
    std::vector<std::size_t> v_dims = {2, 3, 4, 8};
    std::uint64_t v_seed = 42;
    double v_tol = 1e-6, v_scale = 1.0;
    bool v_json = false;
    verify->add_option("--trials", v_trials, "number of random trials")
        ->check(CLI::Range(static_cast<std::size_t>(1), static_cast<std::size_t>(100000000)));
    verify->add_option("--dims", v_dims, "matrix dimensions to cycle through")
        ->delimiter(',');
    verify->add_option("--seed", v_seed, "PRNG seed");
    verify->add_option("--tol", v_tol, "relative violation tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--scale", v_scale, "multiply every generated matrix by this factor")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--json", v_json, "JSON report");

    auto* examples = app.add_subcommand("examples", "reproduce the worked numerical examples");
    bool e_json = false;
    examples->add_flag("--json", e_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compute->parsed()) return run_compute(c_file, c_fmt, c_tol, c_json);
        if (bounds->parsed()) return run_bounds(b_file, b_fmt, b_tol, b_blocks, b_json, b_csv);
        if (range->parsed()) return run_range(r_file, r_fmt, r_samples, r_svg);
        if (verify->parsed()) return run_verify(v_trials, v_dims, v_seed, v_tol, v_scale, v_json);
        if (examples->parsed()) return run_examples(e_json);
    } catch (const nr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitUsage;
}
