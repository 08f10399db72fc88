#pragma once

#include <cmath>

#include "schurz/rational.hpp"

namespace schurz {

enum class EvalMode { Rational, Float };

// A truncated-series value. `value` is always the double view of the sum;
// `exact` is meaningful only in rational mode. The error estimate is the
// heuristic |S(N) - S(N/2)| computed in the same mode, not a bound.
struct EvalResult {
    EvalMode mode = EvalMode::Float;
    double value = 0.0;
    Rational exact = Rational(0);
    long n = 0;
    double error_estimate = 0.0;
};

inline EvalResult make_eval_result(double s_n, double s_half, long n) {
    EvalResult r;
    r.mode = EvalMode::Float;
    r.value = s_n;
    r.n = n;
    r.error_estimate = std::fabs(s_n - s_half);
    return r;
}

inline EvalResult make_eval_result(const Rational& s_n, const Rational& s_half,
                                   long n) {
    EvalResult r;
    r.mode = EvalMode::Rational;
    r.exact = s_n;
    r.value = s_n.get_d();
    r.n = n;
    r.error_estimate = std::fabs(Rational(s_n - s_half).get_d());
    return r;
}

} // namespace schurz
