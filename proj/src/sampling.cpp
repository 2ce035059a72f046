#include "bajra/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

#include "bajra/errors.hpp"
#include "bajra/invariance.hpp"

namespace bajra {
namespace {

constexpr double kCoeffRange = 2.0;
constexpr double kWronskianFloor = 0.3;
constexpr double kRequestLo = -1.5;
constexpr double kRequestHi = 1.5;
constexpr double kMinWidth = 0.4;
constexpr double kEdgeShrink = 0.15;

std::array<double, 4> draw_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-kCoeffRange, kCoeffRange);
    for (;;) {
        std::array<double, 4> c{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        if (std::fabs(c[0] * c[3] - c[1] * c[2]) >= kWronskianFloor) return c;
    }
}

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv("BAJRA_SEED");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw SpecRejected("BAJRA_SEED must be a decimal integer, got '" + std::string(raw) + "'");
    return parsed;
}

SplitSpec draw_split(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
        case 0: {
            std::uniform_real_distribution<double> c(0.5, 2.0);
            return SplitSpec{"constant", {c(rng)}};
        }
        case 1: {
            std::uniform_real_distribution<double> lambda(-1.0, 1.0);
            return SplitSpec{"exp", {lambda(rng)}};
        }
        default: {
            std::uniform_real_distribution<double> mu(0.1, 1.0);
            return SplitSpec{"quadratic", {mu(rng)}};
        }
    }
}

FamilySpecFile draw_family(std::mt19937_64& rng, double gamma) {
    for (int attempt = 0; attempt < 512; ++attempt) {
        FamilySpecFile spec;
        spec.gamma = gamma;
        spec.f_coeffs = draw_pair(rng);
        spec.g_coeffs = draw_pair(rng);
        spec.split1 = draw_split(rng);
        spec.split2 = draw_split(rng);
        spec.domain = {kRequestLo, kRequestHi};

        std::optional<Interval> validated;
        try {
            validated = construct_family(to_recipe(spec)).domain;
        } catch (const Error&) {
            continue;  // unlucky coefficients, e.g. no joint positivity window
        }
        if (validated->width() < kMinWidth) continue;

        // Pull the final domain off the positivity boundary so every later
        // evaluation has slack.
        const Interval dom = validated->shrunk(kEdgeShrink);
        spec.domain = {dom.lo, dom.hi};
        return spec;
    }
    throw std::runtime_error("draw_family: no constructible family after 512 attempts");
}

}  // namespace bajra
