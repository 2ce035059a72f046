#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bajra/invariance.hpp"

namespace bajra {

// Split function: "constant" [c] | "exp" [lambda] | "quadratic" [mu].
struct SplitSpec {
    std::string kind;
    std::vector<double> params;
};

// Optional deliberate defect, for feeding non-members to the verifiers:
// multiply one weight by a factor ("scale" [c] or "quadratic" [mu], the
// latter meaning 1 + mu x^2).
struct PerturbSpec {
    std::string target;  // "p1" | "p2" | "q1" | "q2"
    std::string kind;    // "scale" | "quadratic"
    double amount = 0;
};

// On-disk description of a candidate pair of means.  Mirrors FamilyRecipe
// plus grid size and the optional perturbation.
struct FamilySpecFile {
    double gamma = 0;
    std::array<double, 4> f_coeffs{};
    std::array<double, 4> g_coeffs{};
    std::array<double, 2> domain{0, 1};
    SplitSpec split1;
    SplitSpec split2;
    int grid = 33;
    std::optional<PerturbSpec> perturb;
};

// Strict parse: unknown split kinds, wrong parameter counts, non-finite
// numbers and malformed domains all throw SpecRejected with the field name.
FamilySpecFile parse_family_spec(const nlohmann::json& j);
FamilySpecFile load_family_spec(const std::string& path);
nlohmann::json to_json(const FamilySpecFile& spec);

C4Function make_split(const SplitSpec& spec, const Interval& domain);

FamilyRecipe to_recipe(const FamilySpecFile& spec);

// Construct the family and apply the perturbation, if any, by rebuilding
// the affected mean with the scaled weight.
std::pair<BajraktarevicMean, BajraktarevicMean> build_means(const FamilySpecFile& spec);

}  // namespace bajra
