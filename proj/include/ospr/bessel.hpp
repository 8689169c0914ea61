#pragma once

#include <cmath>

namespace ospr {

// Modified Bessel function I0 via the rational approximations from
// Boost.Math's bessel_i0 (float-grade tables, relative error ~5e-8, exact at
// the origin). i0e returns exp(-|x|)*I0(x), which stays bounded for the large
// arguments the Rician density produces.

namespace detail {

template <int N>
inline double poly_eval(const double (&poly)[N], double x) {
    double r = poly[N - 1];
    for (int i = N - 2; i >= 0; --i)
        r = r * x + poly[i];
    return r;
}

// Coefficients from Boost.Math (John Maddock, 2017), small-|x| series in
// a = x^2/4 and large-|x| asymptotic in 1/x.
constexpr double kI0Small[9] = {
    1.00000003928615375e+00, 2.49999576572179639e-01, 2.77785268558399407e-02,
    1.73560257755821695e-03, 6.96166518788906424e-05, 1.89645733877137904e-06,
    4.29455004657565361e-08, 3.90565476357034480e-10, 1.48095934745267240e-11};
constexpr double kI0Mid[5] = {
    3.98942651588301770e-01, 4.98327234176892844e-02, 2.91866904423115499e-02,
    1.35614940793742178e-02, 1.31409251787866793e-01};
constexpr double kI0Large[3] = {
    3.98942391532752700e-01, 4.98455950638200020e-02, 2.94835666900682535e-02};

} // namespace detail

/// exp(-|x|) * I0(x)
inline double bessel_i0_scaled(double x) {
    x = std::fabs(x);
    if (x < 7.75) {
        const double a = x * x / 4;
        return std::exp(-x) * (a * detail::poly_eval(detail::kI0Small, a) + 1.0);
    }
    const double inv = 1.0 / x;
    const double p = (x < 50) ? detail::poly_eval(detail::kI0Mid, inv)
                              : detail::poly_eval(detail::kI0Large, inv);
    return p / std::sqrt(x);
}

/// I0(x); overflows around |x| > 713 like exp does.
inline double bessel_i0(double x) {
    x = std::fabs(x);
    if (x < 7.75) {
        const double a = x * x / 4;
        return a * detail::poly_eval(detail::kI0Small, a) + 1.0;
    }
    return bessel_i0_scaled(x) * std::exp(x);
}

} // namespace ospr
