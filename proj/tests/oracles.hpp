#pragma once

// Reference computations used by the tests. They share no code with the
// library: quadrature comes from Boost, sums are plain loops in long double.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// \int_0^1 x^alpha cos(n pi x) dx, i.e. the n-th coefficient of |theta/pi|^alpha.
// tanh-sinh on the first half-period absorbs the endpoint singularity; the
// rest is split at the zeros of the cosine and handled by Gauss-Kronrod.
inline double power_weight_coefficient(double alpha, long n) {
    n = std::labs(n);
    if (n == 0) return 1.0 / (alpha + 1.0);
    auto f = [&](double x) { return std::pow(x, alpha) * std::cos(static_cast<double>(n) * M_PI * x); };
    const double h = 1.0 / static_cast<double>(n);
    boost::math::quadrature::tanh_sinh<double> ts;
    long double sum = ts.integrate(f, 0.0, h, 1e-15);
    for (long k = 1; k < n; ++k) {
        const double a = h * static_cast<double>(k), b = a + h;
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
    }
    return static_cast<double>(sum);
}

// Table of power-weight coefficients 0..n_max.
inline std::vector<double> power_weight_table(double alpha, std::size_t n_max) {
    std::vector<double> t(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) t[n] = power_weight_coefficient(alpha, static_cast<long>(n));
    return t;
}

// Cantor measure on [0, 1] mapped by theta = 2 pi x. Self-similarity
// mu = (S_0 mu + S_1 mu) / 2 with S_0 x = x / 3, S_1 x = x / 3 + 2 / 3 gives
// mu^(xi) = (1 + e^{-4 pi i xi / 3}) / 2 * mu^(xi / 3), iterated in long double.
inline cplx cantor_coefficient(long n) {
    long double xi = static_cast<long double>(n);
    std::complex<long double> v{1.0L, 0.0L};
    for (int level = 0; level < 80; ++level) {
        const long double phase = -4.0L * kPiL * xi / 3.0L;
        v *= (std::complex<long double>{1.0L, 0.0L} + std::polar(1.0L, phase)) / 2.0L;
        xi /= 3.0L;
    }
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Dense Hermitian Toeplitz form sum_{n,m} t_{n-m} g_m conj(g_n), with t given
// for n >= 0 and t_{-n} = conj(t_n).
inline cplx dense_form(const std::vector<cplx>& t, const std::vector<cplx>& g) {
    std::complex<long double> s{0.0L, 0.0L};
    const long L = static_cast<long>(g.size());
    for (long n = 0; n < L; ++n)
        for (long m = 0; m < L; ++m) {
            const long d = n - m;
            const cplx e = d >= 0 ? t[static_cast<std::size_t>(d)] : std::conj(t[static_cast<std::size_t>(-d)]);
            const cplx term = e * g[static_cast<std::size_t>(m)] * std::conj(g[static_cast<std::size_t>(n)]);
            s += std::complex<long double>(term.real(), term.imag());
        }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

inline std::vector<cplx> dense_apply(const std::vector<cplx>& t, const std::vector<cplx>& g, std::size_t out_len) {
    std::vector<cplx> out(out_len);
    for (std::size_t n = 0; n < out_len; ++n)
        for (std::size_t m = 0; m < g.size(); ++m) {
            const long d = static_cast<long>(n) - static_cast<long>(m);
            out[n] += (d >= 0 ? t[static_cast<std::size_t>(d)] : std::conj(t[static_cast<std::size_t>(-d)])) * g[m];
        }
    return out;
}

// Tridiagonal Toeplitz matrix with diagonal a and off-diagonals b > 0 has
// eigenvalues a + 2 b cos(j pi / (N + 1)); the smallest is j = N.
inline double tridiagonal_min_eig(double a, double b, std::size_t n) {
    return a + 2.0 * b * std::cos(static_cast<double>(n) * M_PI / static_cast<double>(n + 1));
}

// \int_{-1}^{1} x^n dx / 2 for the uniform probability on [-1, 1].
inline double uniform_moment(std::size_t n) { return n % 2 ? 0.0 : 1.0 / static_cast<double>(n + 1); }

// Exact arc averages of |x|^a over [u, v], x = theta / pi in [-1, 1).
inline double abs_power_average(double a, double u, double v) {
    auto prim = [&](double x) { return std::copysign(std::pow(std::abs(x), a + 1.0) / (a + 1.0), x); };
    return (prim(v) - prim(u)) / (v - u);
}

// Sup of <w>_I <1/w>_I for w = |theta/pi|^alpha, |alpha| < 1, over the arcs
// of length 2 pi 2^{-i}, i <= level, and their half-shifted translates.
// Arcs are taken in [0, 2 pi) and mapped to (-pi, pi].
inline double power_weight_a2(double alpha, std::size_t level) {
    // Arc [lo, hi] in units of pi, lo in [0, 2): x = theta / pi below 1,
    // x - 2 from 1 on (continuous through 0 at theta = 2 pi).
    auto avg = [](double a, double lo, double hi) {
        double total = 0.0;
        if (lo < 1.0) {
            const double v = std::min(hi, 1.0);
            total += abs_power_average(a, lo, v) * (v - lo);
        }
        if (hi > 1.0) {
            const double u = std::max(lo, 1.0);
            total += abs_power_average(a, u - 2.0, hi - 2.0) * (hi - u);
        }
        return total / (hi - lo);
    };
    double best = 0.0;
    for (std::size_t i = 0; i <= level; ++i) {
        const std::size_t arcs = std::size_t{1} << i;
        const double width = 2.0 / static_cast<double>(arcs);
        for (double shift : {0.0, 0.5 * width})
            for (std::size_t k = 0; k < arcs; ++k) {
                const double lo = width * static_cast<double>(k) + shift;
                best = std::max(best, avg(alpha, lo, lo + width) * avg(-alpha, lo, lo + width));
            }
    }
    return best;
}

}  // namespace oracle
