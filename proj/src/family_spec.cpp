#include "bajra/family_spec.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "bajra/builtins.hpp"
#include "bajra/errors.hpp"

namespace bajra {
namespace {

using nlohmann::json;

double finite_number(const json& j, const std::string& field) {
    if (!j.is_number())
        throw SpecRejected("field '" + field + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw SpecRejected("field '" + field + "' is not finite");
    return v;
}

// key is the JSON member to look up; label names it in diagnostics (so
// nested fields can report their full path).
const json& required(const json& j, const std::string& key, const std::string& label = "") {
    const auto it = j.find(key);
    if (it == j.end())
        throw SpecRejected("missing required field '" + (label.empty() ? key : label) + "'");
    return *it;
}

std::array<double, 4> coeff_array(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 4)
        throw SpecRejected("field '" + field + "' must be an array of 4 numbers");
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = finite_number(j[i], field);
    return out;
}

SplitSpec parse_split(const json& j, const std::string& field) {
    if (!j.is_object())
        throw SpecRejected("field '" + field + "' must be an object");
    SplitSpec out;
    const json& kind = required(j, "kind", field + ".kind");
    if (!kind.is_string())
        throw SpecRejected("field '" + field + ".kind' must be a string");
    out.kind = kind.get<std::string>();

    if (out.kind != "constant" && out.kind != "exp" && out.kind != "quadratic")
        throw SpecRejected("field '" + field + ".kind': unknown split kind '" + out.kind + "'");

    const json& params = required(j, "params", field + ".params");
    if (!params.is_array() || params.size() != 1)
        throw SpecRejected("field '" + field + ".params' must be an array of 1 number");
    for (const auto& p : params) out.params.push_back(finite_number(p, field + ".params"));
    return out;
}

}  // namespace

FamilySpecFile parse_family_spec(const json& j) {
    if (!j.is_object())
        throw SpecRejected("family spec must be a JSON object");

    FamilySpecFile spec;
    spec.gamma = finite_number(required(j, "gamma"), "gamma");
    spec.f_coeffs = coeff_array(required(j, "f_coeffs"), "f_coeffs");
    spec.g_coeffs = coeff_array(required(j, "g_coeffs"), "g_coeffs");

    const json& dom = required(j, "domain");
    if (!dom.is_array() || dom.size() != 2)
        throw SpecRejected("field 'domain' must be an array [lo, hi]");
    spec.domain = {finite_number(dom[0], "domain"), finite_number(dom[1], "domain")};
    if (!(spec.domain[0] < spec.domain[1]))
        throw SpecRejected("field 'domain': need lo < hi");

    spec.split1 = parse_split(required(j, "split1"), "split1");
    spec.split2 = parse_split(required(j, "split2"), "split2");

    if (const auto it = j.find("grid"); it != j.end()) {
        if (!it->is_number_integer() || it->get<int>() < 3 || it->get<int>() > 4096)
            throw SpecRejected("field 'grid' must be an integer in 3..4096");
        spec.grid = it->get<int>();
    }

    if (const auto it = j.find("perturb"); it != j.end()) {
        if (!it->is_object())
            throw SpecRejected("field 'perturb' must be an object");
        PerturbSpec p;
        const json& target = required(*it, "target", "perturb.target");
        const json& kind = required(*it, "kind", "perturb.kind");
        if (!target.is_string() || !kind.is_string())
            throw SpecRejected("fields 'perturb.target' and 'perturb.kind' must be strings");
        p.target = target.get<std::string>();
        p.kind = kind.get<std::string>();
        if (p.target != "p1" && p.target != "p2" && p.target != "q1" && p.target != "q2")
            throw SpecRejected("field 'perturb.target' must be one of p1, p2, q1, q2");
        if (p.kind != "scale" && p.kind != "quadratic")
            throw SpecRejected("field 'perturb.kind' must be 'scale' or 'quadratic'");
        p.amount = finite_number(required(*it, "amount", "perturb.amount"), "perturb.amount");
        spec.perturb = p;
    }
    return spec;
}

FamilySpecFile load_family_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SpecRejected("cannot open spec file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecRejected("spec file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_family_spec(j);
}

json to_json(const FamilySpecFile& spec) {
    json j{
        {"gamma", spec.gamma},
        {"f_coeffs", spec.f_coeffs},
        {"g_coeffs", spec.g_coeffs},
        {"domain", spec.domain},
        {"split1", {{"kind", spec.split1.kind}, {"params", spec.split1.params}}},
        {"split2", {{"kind", spec.split2.kind}, {"params", spec.split2.params}}},
        {"grid", spec.grid},
    };
    if (spec.perturb) {
        j["perturb"] = {{"target", spec.perturb->target},
                        {"kind", spec.perturb->kind},
                        {"amount", spec.perturb->amount}};
    }
    return j;
}

C4Function make_split(const SplitSpec& spec, const Interval& domain) {
    if (spec.params.size() != 1)
        throw SpecRejected("split '" + spec.kind + "' expects exactly 1 parameter");
    const double p = spec.params[0];
    if (spec.kind == "constant") {
        if (!(p > 0))
            throw SpecRejected("constant split must be positive");
        return builtins::constant_weight(p, domain);
    }
    if (spec.kind == "exp")
        return builtins::exp_weight(p, domain);
    if (spec.kind == "quadratic") {
        if (!(p > -1.0 / std::fmax(domain.lo * domain.lo, domain.hi * domain.hi)))
            throw SpecRejected("quadratic split 1 + mu x^2 is nonpositive on the domain");
        return builtins::quadratic_weight(p, domain);
    }
    throw SpecRejected("unknown split kind '" + spec.kind + "'");
}

FamilyRecipe to_recipe(const FamilySpecFile& spec) {
    const Interval dom(spec.domain[0], spec.domain[1]);
    return FamilyRecipe{spec.gamma,  spec.f_coeffs,        spec.g_coeffs,
                        make_split(spec.split1, dom), make_split(spec.split2, dom), dom};
}

std::pair<BajraktarevicMean, BajraktarevicMean> build_means(const FamilySpecFile& spec) {
    ConstructedFamily fam = construct_family(to_recipe(spec));
    if (!spec.perturb)
        return {std::move(fam.mean_f), std::move(fam.mean_g)};

    const PerturbSpec& p = *spec.perturb;
    const Interval dom = fam.domain;
    const C4Function factor = p.kind == "scale"
                                  ? constant(p.amount, dom)
                                  : builtins::quadratic_weight(p.amount, dom);

    auto scaled = [&](const BajraktarevicMean& m, bool first) {
        const C4Function& w1 = m.weights().p1();
        const C4Function& w2 = m.weights().p2();
        WeightPair wp = first ? WeightPair(product(w1, factor), w2)
                              : WeightPair(w1, product(w2, factor));
        return BajraktarevicMean(m.generator(), std::move(wp));
    };

    if (p.target == "p1") return {scaled(fam.mean_f, true), std::move(fam.mean_g)};
    if (p.target == "p2") return {scaled(fam.mean_f, false), std::move(fam.mean_g)};
    if (p.target == "q1") return {std::move(fam.mean_f), scaled(fam.mean_g, true)};
    return {std::move(fam.mean_f), scaled(fam.mean_g, false)};
}

}  // namespace bajra
