#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bajra/builtins.hpp"
#include "bajra/diagonal.hpp"
#include "bajra/errors.hpp"
#include "bajra/family_spec.hpp"
#include "bajra/invariance.hpp"
#include "bajra/mean_registry.hpp"

namespace {

using bajra::BajraktarevicMean;
using bajra::Interval;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitNumericFailure = 1;
constexpr int kExitRejected = 2;

int exit_code_for(const bajra::Error& e) {
    const std::string& k = e.kind();
    if (k == "SpecRejected" || k == "NotIndependent" || k == "NotPositive" ||
        k == "AnchorNotPositive" || k == "DomainEmpty" || k == "OutOfDomain")
        return kExitRejected;
    return kExitNumericFailure;
}

class WallClock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

// Diagonal points pulled in from the ends far enough that every FD stencil
// (and the skip rule in compare_formulas) has room.
std::vector<double> diagonal_points(const Interval& dom, int n, double h_largest) {
    const double margin = 6.5 * h_largest;
    const double lo = dom.lo + margin;
    const double hi = dom.hi - margin;
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i)
        pts[i] = lo + (hi - lo) * (i + 1.0) / (n + 1.0);
    return pts;
}

json residuals_json(const bajra::ResidualReport& r, bool with_invariance) {
    json j{{"cond1", r.cond1},         {"cond2", r.cond2}, {"cond3", r.cond3},
           {"cond4", r.cond4},         {"delta_fit", r.delta_fit},
           {"grid_size", r.grid_size}};
    if (with_invariance) j["max_invariance"] = r.max_invariance;
    return j;
}

json system_json(const bajra::DiagonalSystemReport& s) {
    return json{{"sum_first", s.sum_first},
                {"sum_mixed2", s.sum_mixed2},
                {"sum_mixed3", s.sum_mixed3},
                {"sum_mixed4", s.sum_mixed4},
                {"grid_size", s.grid_size}};
}

int run_verify_invariance(const std::string& spec_path, int grid_flag, double tol,
                          const std::string& csv_path) {
    const WallClock clock;
    const bajra::FamilySpecFile spec = bajra::load_family_spec(spec_path);
    auto [mf, mg] = bajra::build_means(spec);
    const int grid = grid_flag > 0 ? grid_flag : spec.grid;

    std::vector<bajra::GridPointResidual> points;
    const bajra::ResidualReport rep =
        bajra::invariance_residual(mf, mg, grid, csv_path.empty() ? nullptr : &points);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv)
            throw bajra::SpecRejected("cannot open CSV output file '" + csv_path + "'");
        csv << "x,y,residual\n";
        csv.precision(17);
        for (const auto& p : points) csv << p.x << "," << p.y << "," << p.residual << "\n";
    }

    const bool pass = rep.max_invariance <= tol;
    emit(json{{"command", "verify-invariance"},
              {"spec", bajra::to_json(spec)},
              {"grid", grid},
              {"tolerances", {{"max_invariance", tol}}},
              {"residuals", {{"max_invariance", rep.max_invariance}}},
              {"csv", csv_path.empty() ? json(nullptr) : json(csv_path)},
              {"verdict", pass ? "pass" : "fail"},
              {"wall_time_s", clock.seconds()}});
    return pass ? kExitPass : kExitNumericFailure;
}

json compare_mean_diagonal(const std::string& label, const BajraktarevicMean& m,
                           const bajra::FdSteps& steps, bool& all_pass) {
    const auto pts = diagonal_points(m.domain(), 17, steps.largest());
    int tested = 0;
    std::array<double, 4> worst{};
    for (double x : pts) {
        const bajra::FormulaComparison cmp = bajra::compare_formulas(m, x, steps);
        if (!cmp.tested) continue;
        ++tested;
        for (int k = 0; k < 4; ++k) worst[k] = std::fmax(worst[k], cmp.discrepancy[k]);
        if (!cmp.all_pass()) all_pass = false;
    }
    if (tested == 0) all_pass = false;
    return json{{"mean", label},
                {"points", pts.size()},
                {"points_tested", tested},
                {"max_discrepancy",
                 {{"first", worst[0]}, {"mixed2", worst[1]}, {"mixed3", worst[2]},
                  {"mixed4", worst[3]}}}};
}

int run_verify_diagonal(const std::string& spec_path, const std::string& builtin,
                        bool system, double h_override) {
    const WallClock clock;
    bajra::FdSteps steps;
    if (h_override > 0) steps = bajra::FdSteps{h_override, h_override, h_override, h_override};

    json report{{"command", "verify-diagonal"},
                {"tolerances",
                 {{"first", bajra::kDiagonalTolerances[0]},
                  {"mixed2", bajra::kDiagonalTolerances[1]},
                  {"mixed3", bajra::kDiagonalTolerances[2]},
                  {"mixed4", bajra::kDiagonalTolerances[3]},
                  {"system", 1e-8}}},
                {"h_override", h_override > 0 ? json(h_override) : json(nullptr)}};

    bool pass = true;
    if (!builtin.empty()) {
        if (system)
            throw bajra::SpecRejected("--system needs a family spec, not a builtin mean");
        const BajraktarevicMean m = bajra::builtin_mean(builtin);
        report["source"] = json{{"builtin", builtin}};
        report["means"] = json::array({compare_mean_diagonal(builtin, m, steps, pass)});
    } else {
        const bajra::FamilySpecFile spec = bajra::load_family_spec(spec_path);
        auto [mf, mg] = bajra::build_means(spec);
        report["source"] = json{{"spec", bajra::to_json(spec)}};
        report["means"] = json::array({compare_mean_diagonal("f-side", mf, steps, pass),
                                       compare_mean_diagonal("g-side", mg, steps, pass)});
        if (system) {
            const bajra::DiagonalSystemReport sys =
                bajra::diagonal_system_check(mf, mg, spec.grid);
            report["diagonal_checks"] = system_json(sys);
            if (sys.worst() > 1e-8) pass = false;
        }
    }

    report["verdict"] = pass ? "pass" : "fail";
    report["wall_time_s"] = clock.seconds();
    emit(report);
    return pass ? kExitPass : kExitNumericFailure;
}

int run_classify(const std::string& spec_path) {
    const WallClock clock;
    const bajra::FamilySpecFile spec = bajra::load_family_spec(spec_path);
    auto [mf, mg] = bajra::build_means(spec);

    bajra::ClassifyOptions opts;
    opts.grid = spec.grid;
    const bajra::ClassifyResult res = bajra::classify_solution(mf, mg, opts);

    const char* verdict = res.verdict == bajra::Verdict::ConfirmedFamily ? "ConfirmedFamily"
                          : res.verdict == bajra::Verdict::NecessaryFail ? "NecessaryFail"
                                                                         : "ReconstructionFail";
    json report{{"command", "classify"},
                {"spec", bajra::to_json(spec)},
                {"tolerances",
                 {{"cond", opts.cond_tol},
                  {"system", opts.system_tol},
                  {"reconstruction", opts.reconstruction_tol},
                  {"gamma", opts.gamma_tol},
                  {"product", opts.product_tol}}},
                {"residuals", residuals_json(res.residuals, false)},
                {"diagonal_checks", system_json(res.system)},
                {"p_equal_fraction", res.p_equal_fraction},
                {"verdict", verdict},
                {"detail", res.detail},
                {"wall_time_s", clock.seconds()}};
    if (res.verdict == bajra::Verdict::ConfirmedFamily) {
        report["gamma"] = res.gamma;
        report["eta"] = res.eta;
        report["f_coeffs"] = res.f_coeffs;
        report["g_coeffs"] = res.g_coeffs;
    }
    emit(report);
    return res.verdict == bajra::Verdict::ConfirmedFamily ? kExitPass : kExitNumericFailure;
}

int run_recover(const std::string& builtin, double x0, double lo, double hi) {
    const WallClock clock;

    // The builtin argument may carry parameters ("mobius 2 1 1 3").
    std::istringstream words(builtin);
    std::string name;
    words >> name;
    std::vector<double> params;
    double p;
    while (words >> p) params.push_back(p);
    if (!words.eof())
        throw bajra::SpecRejected("builtin parameters must be numbers: '" + builtin + "'");

    const Interval dom(lo, hi);
    const bajra::C4Function f = bajra::builtins::by_name(name, dom, params);
    const bajra::RecoveredRatio rec = bajra::recover_uv(f, x0);

    // Independent round-trip probe on the usable part of the domain.
    const bajra::C4Function ratio = ratio_function(rec.u, rec.v);
    const auto span = intersect(rec.valid, dom);
    double worst = 0;
    if (span) {
        for (int i = 0; i < 101; ++i) {
            const double x = span->lo + span->width() * (i + 1.0) / 102.0;
            worst = std::fmax(worst, std::fabs(f(x) - ratio(x)));
        }
    }

    const bool pass = span.has_value() && worst <= 1e-9;
    emit(json{{"command", "recover"},
              {"builtin", builtin},
              {"x0", x0},
              {"domain", {lo, hi}},
              {"gamma", rec.gamma},
              {"u_coeffs", {rec.u.a(), rec.u.b()}},
              {"v_coeffs", {rec.v.a(), rec.v.b()}},
              {"wronskian", wronskian(rec.u, rec.v)},
              {"positive_subinterval", {rec.valid.lo, rec.valid.hi}},
              {"residuals", {{"max_ratio_deviation", worst}}},
              {"tolerances", {{"max_ratio_deviation", 1e-9}}},
              {"verdict", pass ? "pass" : "fail"},
              {"wall_time_s", clock.seconds()}});
    return pass ? kExitPass : kExitNumericFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructs, evaluates, and verifies invariant pairs of weighted "
                 "quasiarithmetic means"};
    app.require_subcommand(1);

    std::string vi_spec, vi_csv;
    int vi_grid = 0;
    double vi_tol = 1e-9;
    CLI::App* vi = app.add_subcommand("verify-invariance",
                                      "Check A_f(x,y) + A_g(x,y) = x + y on a grid");
    vi->add_option("spec", vi_spec, "family spec JSON file")->required();
    vi->add_option("--grid", vi_grid, "per-axis grid points (overrides the spec)");
    vi->add_option("--tol", vi_tol, "pass threshold for the sup-norm")->capture_default_str();
    vi->add_option("--csv", vi_csv, "write per-point residuals to this CSV file");

    std::string vd_spec, vd_builtin;
    bool vd_system = false;
    double vd_h = 0;
    CLI::App* vd = app.add_subcommand("verify-diagonal",
                                      "Compare closed-form diagonal derivatives against "
                                      "finite differences");
    vd->set_help_flag("--help", "print this help and exit");  // frees -h for --h below
    vd->add_option("spec", vd_spec, "family spec JSON file");
    vd->add_option("--builtin", vd_builtin, "builtin mean name instead of a spec file");
    vd->add_flag("--system", vd_system, "also check the four diagonal sums of the pair");
    vd->add_option("--h", vd_h, "override every finite-difference step");

    std::string cl_spec;
    CLI::App* cl = app.add_subcommand("classify",
                                      "Decide whether a pair of means is an invariant "
                                      "family member");
    cl->add_option("spec", cl_spec, "family spec JSON file")->required();

    std::string rc_builtin;
    double rc_x0 = 0;
    std::vector<double> rc_domain;
    CLI::App* rc = app.add_subcommand("recover",
                                      "Reconstruct (gamma, u, v) from a constant-Schwarzian "
                                      "generator");
    rc->add_option("--builtin", rc_builtin, "builtin function name, e.g. 'tan' or "
                                            "'mobius 2 1 1 3'")
        ->required();
    rc->add_option("--x0", rc_x0, "expansion point")->required();
    rc->add_option("--domain", rc_domain, "domain bounds LO HI")->expected(2)->required();

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (vi->parsed())
            return run_verify_invariance(vi_spec, vi_grid, vi_tol, vi_csv);
        if (vd->parsed()) {
            if (vd_spec.empty() == vd_builtin.empty())
                throw bajra::SpecRejected(
                    "verify-diagonal needs exactly one of a spec file or --builtin");
            return run_verify_diagonal(vd_spec, vd_builtin, vd_system, vd_h);
        }
        if (cl->parsed())
            return run_classify(cl_spec);
        return run_recover(rc_builtin, rc_x0, rc_domain[0], rc_domain[1]);
    } catch (const bajra::Error& e) {
        emit(json{{"command", command},
                  {"error", {{"kind", e.kind()}, {"message", e.what()}}},
                  {"verdict", exit_code_for(e) == kExitRejected ? "rejected" : "error"}});
        return exit_code_for(e);
    } catch (const std::exception& e) {
        emit(json{{"command", command},
                  {"error", {{"kind", "InternalError"}, {"message", e.what()}}},
                  {"verdict", "error"}});
        return kExitNumericFailure;
    }
}
