#pragma once

#include <cstdint>

#include "schurz/errors.hpp"
#include "schurz/eval_result.hpp"

namespace schurz {

inline constexpr std::uint64_t kDefaultSeed = 123456789ull;

struct Caps {
    int poset_elements = 20;
    int enum_weight = 12;
    long long loop_budget = 1000000000LL;
};

struct RunConfig {
    long n = 10000;
    EvalMode mode = EvalMode::Float;
    double quad_tol = 1e-8;
    long long mc_samples = 1000000;
    std::uint64_t seed = kDefaultSeed;
    Caps caps;

    void validate() const {
        if (n < 1) throw parse_error("N must be positive");
        if (quad_tol <= 0) throw parse_error("quad-tol must be positive");
        if (mc_samples < 256) throw parse_error("mc-samples must be at least 256");
        if (caps.poset_elements < 1 || caps.enum_weight < 1 ||
            caps.loop_budget < 1)
            throw parse_error("caps must be positive");
    }
};

} // namespace schurz
