#pragma once

#include <cmath>
#include <cstddef>

namespace schurz {

namespace detail {

// Gauss-Kronrod 7/15 pair on [-1, 1]. All nodes are interior, so integrable
// endpoint singularities never get sampled at the endpoint itself.
inline constexpr double kGk15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

inline constexpr double kGk15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kGauss7Weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

template <class F>
void gk15(F&& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double vals[15];
    for (int i = 0; i < 15; ++i) vals[i] = f(c + h * kGk15Nodes[i]);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) k += kGk15Weights[i] * vals[i];
    for (int i = 0; i < 7; ++i) g += kGauss7Weights[i] * vals[2 * i + 1];
    kronrod = k * h;
    err = std::fabs((k - g) * h);
}

template <class F>
double adaptive(F&& f, double a, double b, double tol, int depth) {
    double val, err;
    gk15(f, a, b, val, err);
    if (err <= tol || depth <= 0) return val;
    const double c = 0.5 * (a + b);
    return adaptive(f, a, c, 0.5 * tol, depth - 1) +
           adaptive(f, c, b, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Gauss-Kronrod integration with absolute tolerance. The interval
// endpoints themselves are never evaluated.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-8,
                          int max_depth = 48) {
    if (!(b > a)) return 0.0;
    return detail::adaptive(f, a, b, tol, max_depth);
}

} // namespace schurz
