#include "bajra/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bajra/diagonal.hpp"
#include "bajra/errors.hpp"
#include "bajra/schwarzian.hpp"

namespace bajra {
namespace {

std::vector<double> interior_grid(const Interval& dom, int n) {
    if (n < 1)
        throw std::invalid_argument("grid size must be positive");
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i)
        pts[i] = dom.lo + dom.width() * (i + 1.0) / (n + 1.0);
    return pts;
}

Interval common_domain(const BajraktarevicMean& mf, const BajraktarevicMean& mg) {
    auto dom = intersect(mf.domain(), mg.domain());
    if (!dom)
        throw DomainEmpty("the two means have no common domain");
    return *dom;
}

double median(std::vector<double> v) {
    const auto mid = v.begin() + v.size() / 2;
    std::nth_element(v.begin(), mid, v.end());
    double m = *mid;
    if (v.size() % 2 == 0) {
        const auto lower = std::max_element(v.begin(), mid);
        m = 0.5 * (m + *lower);
    }
    return m;
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

ConstructedFamily construct_family(const FamilyRecipe& recipe) {
    const Interval& req = recipe.domain;
    const GammaSolution u(recipe.gamma, recipe.f_coeffs[0], recipe.f_coeffs[1], req);
    const GammaSolution v(recipe.gamma, recipe.f_coeffs[2], recipe.f_coeffs[3], req);
    const GammaSolution w(recipe.gamma, recipe.g_coeffs[0], recipe.g_coeffs[1], req);
    const GammaSolution z(recipe.gamma, recipe.g_coeffs[2], recipe.g_coeffs[3], req);

    if (!independent(u, v))
        throw NotIndependent("u and v are linearly dependent");
    if (!independent(w, z))
        throw NotIndependent("w and z are linearly dependent");

    // Hunt for an anchor where both denominators are positive, preferring
    // the widest joint positivity window.
    std::vector<double> anchors{req.midpoint()};
    for (double a : interior_grid(req, 33)) anchors.push_back(a);

    bool v_ok = false, z_ok = false;
    std::optional<Interval> best;
    for (double a : anchors) {
        const bool vp = v.value(a) > 0;
        const bool zp = z.value(a) > 0;
        v_ok = v_ok || vp;
        z_ok = z_ok || zp;
        if (!vp || !zp) continue;
        const Interval pv = positive_subinterval(v, a);
        const Interval pz = positive_subinterval(z, a);
        const auto joint = intersect(pv, pz);
        if (!joint) continue;  // can't happen: both contain a
        if (!best || joint->width() > best->width()) best = joint;
    }
    if (!best) {
        if (!v_ok)
            throw NotPositive("v is nonpositive at every anchor candidate");
        if (!z_ok)
            throw NotPositive("z is nonpositive at every anchor candidate");
        throw DomainEmpty("v and z are never positive at a common anchor");
    }

    const Interval dom = *best;
    const GammaSolution ur = u.restricted(dom);
    const GammaSolution vr = v.restricted(dom);
    const GammaSolution wr = w.restricted(dom);
    const GammaSolution zr = z.restricted(dom);

    const C4Function f = ratio_function(ur, vr);
    const C4Function g = ratio_function(wr, zr);
    const C4Function vz = product(vr.as_function(), zr.as_function());
    const C4Function s1 = recipe.split1.restricted(dom);
    const C4Function s2 = recipe.split2.restricted(dom);

    // p = (s1, s2) and q = (vz/s1, vz/s2), so p1 q1 = p2 q2 = vz.
    BajraktarevicMean mean_f(f, WeightPair(s1, s2));
    BajraktarevicMean mean_g(g, WeightPair(quotient(vz, s1), quotient(vz, s2)));

    return ConstructedFamily{recipe.gamma, dom,       ur,
                             vr,           wr,        zr,
                             std::move(mean_f),       std::move(mean_g)};
}

ResidualReport invariance_residual(const BajraktarevicMean& mf, const BajraktarevicMean& mg,
                                   int n, std::vector<GridPointResidual>* points) {
    const Interval dom = common_domain(mf, mg);
    const auto grid = interior_grid(dom, n);
    ResidualReport rep;
    rep.grid_size = n;
    for (double x : grid) {
        for (double y : grid) {
            const double r = std::fabs(mf(x, y) + mg(x, y) - (x + y));
            rep.max_invariance = std::fmax(rep.max_invariance, r);
            if (points) points->push_back({x, y, r});
        }
    }
    return rep;
}

ResidualReport necessary_residuals(const BajraktarevicMean& mf,
                                   const BajraktarevicMean& mg, int n) {
    const Interval dom = common_domain(mf, mg);
    const auto grid = interior_grid(dom, n);

    const C4Function& f = mf.generator();
    const C4Function& g = mg.generator();
    const C4Function& p1 = mf.weights().p1();
    const C4Function& p2 = mf.weights().p2();
    const C4Function& q1 = mg.weights().p1();
    const C4Function& q2 = mg.weights().p2();

    ResidualReport rep;
    rep.grid_size = n;

    std::vector<double> delta_vals;
    delta_vals.reserve(grid.size());
    for (double x : grid) {
        const double prod1 = p1(x) * q1(x);
        const double prod2 = p2(x) * q2(x);
        rep.cond1 = std::fmax(rep.cond1, std::fabs(prod1 - prod2) /
                                             std::fmax(std::fabs(prod1), std::fabs(prod2)));
        delta_vals.push_back(prod1 * prod1 * f.eval(1, x) * g.eval(1, x));

        const double dp = p1(x) - p2(x);
        rep.cond3 = std::fmax(rep.cond3,
                              std::fabs(dp * (schwarzian(f, x) - schwarzian(g, x))));
        rep.cond4 = std::fmax(rep.cond4,
                              std::fabs(dp * (schwarzian_derivative(f, x) +
                                              schwarzian_derivative(g, x))));
    }

    rep.delta_fit = median(delta_vals);
    const double scale = std::fmax(std::fabs(rep.delta_fit), 1e-30);
    for (double val : delta_vals)
        rep.cond2 = std::fmax(rep.cond2, std::fabs(val - rep.delta_fit) / scale);
    return rep;
}

double DiagonalSystemReport::worst() const {
    return std::fmax(std::fmax(sum_first, sum_mixed2),
                     std::fmax(sum_mixed3, sum_mixed4));
}

DiagonalSystemReport diagonal_system_check(const BajraktarevicMean& mf,
                                           const BajraktarevicMean& mg, int n) {
    const Interval dom = common_domain(mf, mg);
    DiagonalSystemReport rep;
    rep.grid_size = n;
    for (double x : interior_grid(dom, n)) {
        rep.sum_first = std::fmax(
            rep.sum_first,
            std::fabs(formula_first(mf, 1, x) + formula_first(mg, 1, x) - 1));
        rep.sum_mixed2 = std::fmax(
            rep.sum_mixed2, std::fabs(formula_mixed2(mf, x) + formula_mixed2(mg, x)));
        rep.sum_mixed3 = std::fmax(
            rep.sum_mixed3, std::fabs(formula_mixed3(mf, x) + formula_mixed3(mg, x)));
        rep.sum_mixed4 = std::fmax(
            rep.sum_mixed4, std::fabs(formula_mixed4(mf, x) + formula_mixed4(mg, x)));
    }
    return rep;
}

double identity_uvwz_check(const ConstructedFamily& fam,
                           std::span<const UvwzSample> samples) {
    const C4Function& f = fam.mean_f.generator();
    const C4Function& g = fam.mean_g.generator();
    double worst = 0;
    for (const UvwzSample& smp : samples) {
        const double lo = std::fmin(smp.x, smp.y);
        const double hi = std::fmax(smp.x, smp.y);
        // weights (t, s) on the f side, swapped to (s, t) on the g side
        const double rf = (smp.t * fam.u.value(smp.x) + smp.s * fam.u.value(smp.y)) /
                          (smp.t * fam.v.value(smp.x) + smp.s * fam.v.value(smp.y));
        const double rg = (smp.s * fam.w.value(smp.x) + smp.t * fam.w.value(smp.y)) /
                          (smp.s * fam.z.value(smp.x) + smp.t * fam.z.value(smp.y));
        const double a = smp.x == smp.y ? smp.x : invert_monotone(f, rf, lo, hi);
        const double b = smp.x == smp.y ? smp.x : invert_monotone(g, rg, lo, hi);
        worst = std::fmax(worst, std::fabs(a + b - smp.x - smp.y));
    }
    return worst;
}

RecoveredRatio recover_uv(const C4Function& f, double x0) {
    const Interval& dom = f.domain();
    if (!dom.contains(x0))
        throw OutOfDomain("recover_uv: expansion point outside the domain");

    // The target family has constant Schwarzian; anything else is rejected
    // before we trust the local expansion.
    std::vector<double> svals;
    for (double x : interior_grid(dom, 33)) svals.push_back(schwarzian(f, x));
    const double smed = median(svals);
    const auto [smin, smax] = std::minmax_element(svals.begin(), svals.end());
    if (*smax - *smin > 1e-6 * (1 + std::fabs(smed)))
        throw NonConstantSchwarzian("Schwarzian varies by " + format_double(*smax - *smin) +
                                    " across the domain (median " + format_double(smed) + ")");

    const double gamma = -0.5 * schwarzian(f, x0);
    const double f0 = f.eval(0, x0);
    const double f1 = f.eval(1, x0);
    const double f2 = f.eval(2, x0);

    // Initial values at x0 for the normalized pair with v(x0) = 1 and
    // W(u, v) = f'(x0):
    //   u = f,  u' = f' - (f''/2f') f,  v' = -f''/2f'.
    const double half_ratio = 0.5 * f2 / f1;
    const double u_val = f0, u_der = f1 - half_ratio * f0;
    const double v_val = 1.0, v_der = -half_ratio;

    // (value, derivative) at x0 are the coefficients in the shifted basis
    // S(x - x0), C(x - x0); the addition rules map them back to the
    // unshifted one.
    const double sx = eval_sgamma(gamma, x0);
    const double cx = eval_cgamma(gamma, x0);
    const double au = u_der * cx - gamma * u_val * sx;
    const double bu = u_val * cx - u_der * sx;
    const double av = v_der * cx - gamma * v_val * sx;
    const double bv = v_val * cx - v_der * sx;

    const GammaSolution u(gamma, au, bu, dom);
    const GammaSolution v(gamma, av, bv, dom);
    return RecoveredRatio{gamma, u, v, positive_subinterval(v, x0)};
}

ClassifyResult classify_solution(const BajraktarevicMean& mf,
                                 const BajraktarevicMean& mg,
                                 const ClassifyOptions& opts) {
    const Interval dom = common_domain(mf, mg);
    const auto grid = interior_grid(dom, opts.grid);

    ClassifyResult out{};
    out.residuals = necessary_residuals(mf, mg, opts.grid);
    out.system = diagonal_system_check(mf, mg, opts.grid);

    const C4Function& p1 = mf.weights().p1();
    const C4Function& p2 = mf.weights().p2();
    int equal = 0;
    for (double x : grid)
        if (std::fabs(p1(x) - p2(x)) < 1e-9) ++equal;
    out.p_equal_fraction = static_cast<double>(equal) / grid.size();

    auto necessary_fail = [&](const std::string& name, double value) {
        out.verdict = Verdict::NecessaryFail;
        out.detail = name + " = " + format_double(value) + " exceeds " +
                     format_double(opts.cond_tol);
        return out;
    };
    if (out.residuals.cond1 > opts.cond_tol) return necessary_fail("cond1", out.residuals.cond1);
    if (out.residuals.cond2 > opts.cond_tol) return necessary_fail("cond2", out.residuals.cond2);
    if (out.residuals.cond3 > opts.cond_tol) return necessary_fail("cond3", out.residuals.cond3);
    if (out.residuals.cond4 > opts.cond_tol) return necessary_fail("cond4", out.residuals.cond4);
    if (out.system.worst() > opts.system_tol) {
        out.verdict = Verdict::NecessaryFail;
        out.detail = "diagonal system defect " + format_double(out.system.worst()) +
                     " exceeds " + format_double(opts.system_tol);
        return out;
    }

    auto reconstruction_fail = [&](const std::string& why) {
        out.verdict = Verdict::ReconstructionFail;
        out.detail = why;
        return out;
    };

    const double x0 = dom.midpoint();
    std::optional<RecoveredRatio> rec_f, rec_g;
    try {
        rec_f = recover_uv(mf.generator().restricted(dom), x0);
        rec_g = recover_uv(mg.generator().restricted(dom), x0);
    } catch (const Error& e) {
        return reconstruction_fail(std::string(e.kind()) + ": " + e.what());
    }

    if (std::fabs(rec_f->gamma - rec_g->gamma) > opts.gamma_tol)
        return reconstruction_fail("generators disagree on gamma: " +
                                   format_double(rec_f->gamma) + " vs " +
                                   format_double(rec_g->gamma));
    out.gamma = 0.5 * (rec_f->gamma + rec_g->gamma);

    try {
        const C4Function fr = ratio_function(rec_f->u, rec_f->v);
        const C4Function gr = ratio_function(rec_g->u, rec_g->v);
        double worst = 0;
        for (double x : grid) {
            worst = std::fmax(worst, std::fabs(fr(x) - mf.generator()(x)));
            worst = std::fmax(worst, std::fabs(gr(x) - mg.generator()(x)));
        }
        if (worst > opts.reconstruction_tol)
            return reconstruction_fail("recovered generators deviate by " +
                                       format_double(worst));
    } catch (const Error& e) {
        return reconstruction_fail(std::string(e.kind()) + ": " + e.what());
    }

    // p1 q1 = eta * v z must hold with one positive constant eta; eta then
    // rescales (u, v) so the product identity is exact in the reported
    // coefficients.
    const C4Function& q1 = mg.weights().p1();
    std::vector<double> ratios;
    ratios.reserve(grid.size());
    for (double x : grid)
        ratios.push_back(p1(x) * q1(x) / (rec_f->v.value(x) * rec_g->v.value(x)));
    const double eta = median(ratios);
    if (!(eta > 0))
        return reconstruction_fail("weight product ratio eta = " + format_double(eta) +
                                   " is not positive");
    double worst_rel = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst_rel = std::fmax(worst_rel, std::fabs(ratios[i] - eta) / std::fabs(eta));
    if (worst_rel > opts.product_tol)
        return reconstruction_fail("p1*q1 / (v*z) varies by " + format_double(worst_rel) +
                                   " relative to its median");

    out.verdict = Verdict::ConfirmedFamily;
    out.eta = eta;
    out.f_coeffs = {eta * rec_f->u.a(), eta * rec_f->u.b(), eta * rec_f->v.a(),
                    eta * rec_f->v.b()};
    out.g_coeffs = {rec_g->u.a(), rec_g->u.b(), rec_g->v.a(), rec_g->v.b()};
    out.detail = "gamma = " + format_double(out.gamma) + ", eta = " + format_double(eta);
    return out;
}

}  // namespace bajra
