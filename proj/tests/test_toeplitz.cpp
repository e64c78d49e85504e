#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toeform/error.hpp"
#include "toeform/toeplitz.hpp"

using namespace toeform;

namespace {

FiniteVector random_vector(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> d;
    FiniteVector g(n);
    for (auto& v : g) v = {d(rng), d(rng)};
    return g;
}

CircleMeasure random_mixture(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Atom> atoms;
    const int count = static_cast<int>(4 * u(rng));
    for (int i = 0; i < count; ++i) atoms.push_back({kTwoPi * u(rng), 0.1 + u(rng)});
    return CircleMeasure(AcDensity::power(2.5 * u(rng) - 0.4, 0.5 + u(rng)), atoms, 0.3 * u(rng));
}

}  // namespace

TEST_CASE("direct form matches the dense oracle") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_mixture(rng);
        const auto g = random_vector(rng, 1 + trial * 7);
        const auto t = coefficient_table(m, g.size() - 1);
        const double v = quadratic_form_direct(t, g);
        const cplx ref = oracle::dense_form(t.nonnegative(), g);
        CHECK(std::abs(v - ref.real()) <= 1e-12 * std::abs(ref.real()) + 1e-14);
        CHECK(v >= -1e-12 * norm_sq(g) * t(0).real());
    }
}

TEST_CASE("form requires enough coefficients") {
    const auto t = coefficient_table(CircleMeasure::lebesgue(), 2);
    const FiniteVector g(5, 1.0);
    CHECK_THROWS_AS(quadratic_form_direct(t, g), ResolutionError);
}

TEST_CASE("Lebesgue form is the l2 norm") {
    std::mt19937 rng(2);
    const auto g = random_vector(rng, 40);
    const auto t = coefficient_table(CircleMeasure::lebesgue(), 39);
    CHECK(quadratic_form_direct(t, g) == doctest::Approx(norm_sq(g)).epsilon(1e-14));
}

TEST_CASE("FFT apply matches dense multiplication") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::size_t> len(1, 120);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_vector(rng, len(rng));
        const std::size_t out = len(rng);
        const auto t = coefficient_table(random_mixture(rng), out + g.size());
        const auto fast = toeplitz_apply(t, g, out);
        const auto dense = toeplitz_apply_dense(t, g, out);
        const auto ref = oracle::dense_apply(t.nonnegative(), g, out);
        double err = 0.0, scale = 0.0;
        for (std::size_t n = 0; n < out; ++n) {
            err = std::max(err, std::abs(fast[n] - ref[n]));
            scale = std::max(scale, std::abs(ref[n]));
            CHECK(std::abs(dense[n] - ref[n]) <= 1e-12 * (1.0 + std::abs(ref[n])));
        }
        CHECK(err <= 1e-10 * scale);
    }
}

TEST_CASE("apply is linear") {
    std::mt19937 rng(4);
    const auto t = coefficient_table(random_mixture(rng), 80);
    const auto a = random_vector(rng, 30), b = random_vector(rng, 30);
    FiniteVector c(30);
    const cplx alpha{0.3, -1.2};
    for (std::size_t i = 0; i < 30; ++i) c[i] = a[i] + alpha * b[i];
    const auto ta = toeplitz_apply(t, a, 40), tb = toeplitz_apply(t, b, 40), tc = toeplitz_apply(t, c, 40);
    for (std::size_t n = 0; n < 40; ++n) CHECK(std::abs(tc[n] - (ta[n] + alpha * tb[n])) < 1e-11);
}

TEST_CASE("form equals <g, Tg>") {
    std::mt19937 rng(5);
    const auto g = random_vector(rng, 50);
    const auto t = coefficient_table(random_mixture(rng), 49);
    const auto tg = toeplitz_apply(t, g, g.size());
    cplx inner{};
    for (std::size_t n = 0; n < g.size(); ++n) inner += tg[n] * std::conj(g[n]);
    CHECK(std::abs(inner.imag()) < 1e-10 * norm_sq(g));
    CHECK(quadratic_form_direct(t, g) == doctest::Approx(inner.real()).epsilon(1e-11));
}

TEST_CASE("2+2cos sections follow the tridiagonal eigenvalue formula") {
    const auto t = coefficient_table(CircleMeasure(AcDensity::two_plus_two_cos(), {}), 300);
    for (std::size_t n : {1, 2, 5, 16, 64, 200, 301}) {
        CAPTURE(n);
        CHECK(std::abs(section_min_eig(t, n) - oracle::tridiagonal_min_eig(2.0, 1.0, n)) < 1e-10);
    }
}

TEST_CASE("sweep is ordered and nonincreasing") {
    std::mt19937 rng(6);
    const auto t = coefficient_table(random_mixture(rng), 255);
    const std::vector<std::size_t> orders{256, 1, 64, 16, 128, 32};
    const auto eig = min_eig_sweep(t, orders);
    REQUIRE(eig.size() == orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) CHECK(eig[i] == section_min_eig(t, orders[i]));
    CHECK(eig[1] >= eig[3]);
    CHECK(eig[3] >= eig[5]);
    CHECK(eig[5] >= eig[2]);
    CHECK(eig[2] >= eig[4]);
    CHECK(eig[4] >= eig[0]);
}

TEST_CASE("section eigenvector attains the smallest eigenvalue") {
    const auto t = coefficient_table(CircleMeasure(AcDensity::power(1.5), {}), 31);
    const FiniteSection s(t, 32);
    const auto v = s.min_eigenvector();
    CHECK(norm_sq(v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quadratic_form_direct(t, v) == doctest::Approx(s.min_eigenvalue()).epsilon(1e-9));
}

TEST_CASE("PSD check accepts measures and certifies indefinite sequences") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = coefficient_table(random_mixture(rng), 127);
        const auto r = psd_check(t, 128);
        CHECK(r.psd);
        CHECK_FALSE(r.certificate.has_value());
    }
    // t = (1, 0.8, 0): positive definite at N = 2, determinant -0.28 at N = 3.
    const CoeffSequence bad(std::vector<cplx>{1.0, 0.8});
    CHECK(psd_check(bad, 2).psd);
    CHECK_THROWS_AS(psd_check(bad, 3), ResolutionError);
    const CoeffSequence worse(std::vector<cplx>{1.0, 0.8, 0.0});
    const auto r = psd_check(worse, 3);
    REQUIRE_FALSE(r.psd);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate_value < 0.0);
    CHECK(quadratic_form_direct(worse, *r.certificate) == doctest::Approx(r.certificate_value));
}

TEST_CASE("semidefinite factor tolerates exact zero pivots") {
    // Rank-one Toeplitz matrix of a single atom.
    const auto t = coefficient_table(CircleMeasure::atom(0.7), 15);
    const auto r = psd_check(t, 16);
    CHECK(r.psd);
    CHECK(r.tolerance == doctest::Approx(1e-10 * 16.0));
}

TEST_CASE("section order limits") {
    const auto t = coefficient_table(CircleMeasure::lebesgue(), 4);
    CHECK_THROWS_AS(FiniteSection(t, 0), PreconditionError);
    CHECK_THROWS_AS(FiniteSection(t, 6), ResolutionError);
}
