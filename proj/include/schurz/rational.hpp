#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace schurz {

using Rational = mpq_class;

inline Rational rat_pow(const Rational& base, long e) {
    Rational out;
    if (e >= 0) {
        mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_pow_ui(out.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-e));
        mpz_pow_ui(out.get_den_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-e));
    }
    out.canonicalize();
    return out;
}

// 1 / m^k for positive m.
inline Rational inv_pow(long m, int k) {
    Rational out(1);
    mpz_ui_pow_ui(out.get_den_mpz_t(), static_cast<unsigned long>(m),
                  static_cast<unsigned long>(k));
    return out;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

// Numeric glue shared by the evaluators, templated over double / Rational.
template <class S>
struct scalar_ops {
    static S zero() { return S(0); }
    static S one() { return S(1); }
    static S reciprocal_pow(long m, int k); // 1 / m^k
    static S power(const S& t, long e);     // t^e, e >= 0
    static double to_double(const S& v);
};

template <>
struct scalar_ops<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double reciprocal_pow(long m, int k) {
        double inv = 1.0 / static_cast<double>(m);
        double out = 1.0;
        for (int i = 0; i < k; ++i) out *= inv;
        return out;
    }
    static double power(double t, long e) {
        double out = 1.0, acc = t;
        for (long b = e; b > 0; b >>= 1) {
            if (b & 1) out *= acc;
            acc *= acc;
        }
        return out;
    }
    static double to_double(double v) { return v; }
};

template <>
struct scalar_ops<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational reciprocal_pow(long m, int k) { return inv_pow(m, k); }
    static Rational power(const Rational& t, long e) { return rat_pow(t, e); }
    static double to_double(const Rational& v) { return v.get_d(); }
};

} // namespace schurz
