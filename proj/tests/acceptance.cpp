// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "toeform/closability.hpp"
#include "toeform/closure_weights.hpp"
#include "toeform/hankel.hpp"

using namespace toeform;

namespace {

constexpr std::size_t kGrid = 4096;
constexpr long kMaxIndex = 512;

struct Mixture {
    CircleMeasure measure;
    BuiltinDensity density;
};

// Builtin AC density with 0..3 atoms; deterministic.
std::vector<Mixture> mixture_suite() {
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Mixture> out;
    for (int i = 0; i < 20; ++i) {
        BuiltinDensity b;
        b.kind = static_cast<BuiltinDensity::Kind>(i % 3);
        b.scale = 0.25 + 2.0 * u(rng);
        if (b.kind == BuiltinDensity::Kind::power) b.alpha = 3.0 * u(rng) - 0.5;
        std::vector<Atom> atoms;
        const int count = static_cast<int>(u(rng) * 4.0);
        for (int a = 0; a < count; ++a) atoms.push_back({kTwoPi * u(rng), 0.05 + u(rng)});
        out.push_back({CircleMeasure(AcDensity(b, kGrid), atoms, 0.0, kGrid), b});
    }
    return out;
}

// Independent coefficients of a suite member for 0 <= n <= kMaxIndex.
std::vector<cplx> oracle_coefficients(const Mixture& m) {
    std::vector<cplx> t(kMaxIndex + 1);
    switch (m.density.kind) {
        case BuiltinDensity::Kind::constant:
            t[0] = m.density.scale;
            break;
        case BuiltinDensity::Kind::two_plus_two_cos:
            t[0] = 2.0 * m.density.scale;
            t[1] = m.density.scale;
            break;
        case BuiltinDensity::Kind::power: {
            const auto p = oracle::power_weight_table(m.density.alpha, kMaxIndex);
            for (long n = 0; n <= kMaxIndex; ++n) t[static_cast<std::size_t>(n)] = m.density.scale * p[static_cast<std::size_t>(n)];
            break;
        }
    }
    for (const auto& a : m.measure.atoms())
        for (long n = 0; n <= kMaxIndex; ++n)
            t[static_cast<std::size_t>(n)] += a.mass * std::exp(cplx(0.0, -static_cast<double>(n) * a.angle));
    return t;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

FiniteVector random_vector(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> d;
    FiniteVector g(n);
    for (auto& v : g) v = {d(rng), d(rng)};
    return g;
}

void moment_fidelity(const std::vector<Mixture>& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CoeffSequence> tables;
    for (const auto& m : suite) tables.push_back(coefficient_table(m.measure, kMaxIndex));
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto ref = oracle_coefficients(suite[i]);
        for (long n = -kMaxIndex; n <= kMaxIndex; ++n) {
            const cplx r = n >= 0 ? ref[static_cast<std::size_t>(n)] : std::conj(ref[static_cast<std::size_t>(-n)]);
            worst = std::max(worst, std::abs(tables[i](n) - r));
        }
    }
    report(1, worst <= 1e-12 && elapsed < 5.0,
           fmt("max |t_n - oracle| = %.3e (tol 1e-12), |n| <= %ld, %zu mixtures, %.3f s (limit 5 s)", worst, kMaxIndex,
               suite.size(), elapsed));
}

void finite_section_psd(const std::vector<Mixture>& suite) {
    const std::vector<std::size_t> orders{16, 64, 256};
    double lowest = INFINITY;
    int certificates = 0;
    for (const auto& m : suite) {
        const auto t = coefficient_table(m.measure, 255);
        for (double e : min_eig_sweep(t, orders)) lowest = std::min(lowest, e);
        for (std::size_t n : orders) {
            const auto r = psd_check(t, n);
            if (!r.psd || r.certificate) ++certificates;
        }
    }
    report(2, lowest >= -1e-9 && certificates == 0,
           fmt("min lambda_min over N in {16,64,256} = %.3e (tol -1e-9), failed psd checks = %d", lowest, certificates));
}

void semiboundedness() {
    std::vector<std::size_t> orders;
    for (std::size_t n = 1; n <= 64; ++n) orders.push_back(n);
    for (std::size_t n = 80; n <= 512; n += 16) orders.push_back(n);
    if (orders.back() != 512) orders.push_back(512);

    bool floor_ok = true, monotone_ok = true;
    double worst_floor = INFINITY;
    const std::vector<AcDensity> densities{AcDensity::constant(1.5), AcDensity::two_plus_two_cos(0.75),
                                           AcDensity::power(0.5, 2.0), AcDensity::power(1.5)};
    for (const auto& d : densities) {
        const CircleMeasure m(d, {});
        const double gamma = gamma_floor(m);
        const auto t = coefficient_table(m, 511);
        const auto eig = min_eig_sweep(t, orders);
        for (std::size_t i = 0; i < eig.size(); ++i) {
            worst_floor = std::min(worst_floor, eig[i] - gamma);
            if (eig[i] < gamma - 1e-9) floor_ok = false;
            if (i > 0 && eig[i] > eig[i - 1] + 1e-12 * t(0).real()) monotone_ok = false;
        }
    }

    const auto t = coefficient_table(CircleMeasure(AcDensity::two_plus_two_cos(), {}), 511);
    const auto eig = min_eig_sweep(t, orders);
    double worst = 0.0;
    for (std::size_t i = 0; i < orders.size(); ++i)
        worst = std::max(worst, std::abs(eig[i] - oracle::tridiagonal_min_eig(2.0, 1.0, orders[i])));
    report(3, floor_ok && monotone_ok && worst <= 1e-9,
           fmt("min(lambda_min - gamma) = %.3e, sweep nonincreasing = %s, 2+2cos max |lambda - 2+2cos(N pi/(N+1))| = "
               "%.3e (tol 1e-9) over %zu orders N <= 512",
               worst_floor, monotone_ok ? "yes" : "no", worst, orders.size()));
}

void oracle_equivalence(const std::vector<Mixture>& suite) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> len(1, 200);
    double worst_apply = 0.0;
    for (int c = 0; c < 100; ++c) {
        const auto& m = suite[static_cast<std::size_t>(c) % suite.size()].measure;
        const auto g = random_vector(rng, len(rng));
        const std::size_t out = len(rng);
        const auto t = coefficient_table(m, out + g.size());
        const auto fast = toeplitz_apply(t, g, out);
        const auto dense = oracle::dense_apply(t.nonnegative(), g, out);
        double err = 0.0, scale = 0.0;
        for (std::size_t n = 0; n < out; ++n) {
            err = std::max(err, std::abs(fast[n] - dense[n]));
            scale = std::max(scale, std::abs(dense[n]));
        }
        worst_apply = std::max(worst_apply, err / scale);
    }
    double worst_form = 0.0;
    for (const auto& m : suite) {
        const CircleMeasure ac(m.measure.ac(), {}, 0.0, kGrid);
        for (int c = 0; c < 5; ++c) {
            const auto g = random_vector(rng, len(rng));
            const double direct = quadratic_form_direct(coefficient_table(ac, g.size() - 1), g);
            const double closed = closed_form_eval(ac, g, 1.0, kGrid);
            worst_form = std::max(worst_form, std::abs(closed - direct) / std::abs(direct));
        }
    }
    report(4, worst_apply <= 1e-10 && worst_form <= 1e-8,
           fmt("FFT vs dense apply rel err = %.3e (tol 1e-10, 100 cases); closed form vs direct rel err = %.3e (tol "
               "1e-8, 100 cases)",
               worst_apply, worst_form));
}

void witness_example() {
    const CircleMeasure m(AcDensity::constant(1.0), {{0.0, 1.0}});
    double worst = 0.0;
    std::string values;
    for (long k : {10L, 100L, 1000L}) {
        const auto w = nonclosability_witness(m, k, 2 * k);
        const double kd = static_cast<double>(k);
        worst = std::max({worst, std::abs(w.norm_sq_k - 1.0 / kd), std::abs(w.form_k - (1.0 + 1.0 / kd)),
                          std::abs(w.form_diff - 1.0 / (2.0 * kd))});
        values += fmt(" k=%ld: |g|^2=%.6g form=%.6g diff=%.6g;", k, w.norm_sq_k, w.form_k, w.form_diff);
    }
    report(5, worst <= 1e-12, fmt("max abs err = %.3e (tol 1e-12);", worst) + values);
}

void closability_classification(const std::vector<Mixture>& suite) {
    bool ok = classify_measure(CircleMeasure::lebesgue()).status == Closability::closable;
    int singular = 0, wrong = 0;
    for (const auto& m : suite) {
        for (double cantor : {0.0, 0.3}) {
            const CircleMeasure mm(m.measure.ac(), m.measure.atoms(), cantor, kGrid);
            const auto v = classify_measure(mm);
            const bool expect_closable = !mm.has_singular_part();
            if (!expect_closable) ++singular;
            if ((v.status == Closability::closable) != expect_closable) ++wrong;
        }
    }
    const cplx ref = oracle::cantor_coefficient(1);
    double spread = 0.0;
    long p = 1;
    for (int k = 0; k <= 7; ++k, p *= 3) spread = std::max(spread, std::abs(cantor_coefficient(p) - ref));
    const auto decay = decay_diagnostics(coefficient_table(CircleMeasure::cantor(), 2187), 243);
    ok = ok && wrong == 0 && spread <= 1e-10 && decay.status == Closability::not_closable;
    report(6, ok,
           fmt("Lebesgue closable, %d singular mixtures misclassified = %d, max |t_{3^m} - oracle t_1| (m<=7) = %.3e "
               "(tol 1e-10), Cantor decay verdict = %s",
               singular, wrong, spread, to_string(decay.status).c_str()));
}

void muckenhoupt_discrimination() {
    const std::size_t grid = 1u << 14;
    const auto t0 = std::chrono::steady_clock::now();
    const auto one = muckenhoupt_estimate(CircleMeasure(AcDensity::constant(1.0), {}), 8, grid);
    const auto half = muckenhoupt_estimate(CircleMeasure(AcDensity::power(0.5), {}), 8, grid);
    const auto three = muckenhoupt_estimate(CircleMeasure(AcDensity::power(1.5), {}), 8, grid);
    const double elapsed = seconds_since(t0);

    bool exact_one = true;
    for (double e : one.estimates) exact_one = exact_one && e == 1.0;
    const auto& h = half.estimates;
    const double last_two = std::abs(h.back() - h[h.size() - 2]) / h[h.size() - 2];
    bool ratios_ok = three.ratios.size() >= 3;
    std::string ratios;
    for (std::size_t i = three.ratios.size() - 3; i < three.ratios.size(); ++i) {
        ratios_ok = ratios_ok && three.ratios[i] >= 1.2 && three.ratios[i] <= 1.6;
        ratios += fmt(" %.4f", three.ratios[i]);
    }
    // Analytic arc-integral constant of |theta/pi|^{1/2} over the same arcs.
    const double analytic = oracle::power_weight_a2(0.5, 8);
    const bool ok = exact_one && half.verdict == "bounded" && last_two <= 0.05 && three.verdict == "diverging" &&
                    ratios_ok && elapsed < 10.0;
    report(7, ok,
           fmt("w=1 E_j==1: %s; alpha=1/2 verdict %s, last-two rel change %.4f (tol 0.05), E_8 = %.5f vs analytic "
               "%.5f; alpha=3/2 verdict %s, last ratios",
               exact_one ? "yes" : "no", half.verdict.c_str(), last_two, h.back(), analytic, three.verdict.c_str()) +
               ratios + fmt(" (in [1.2, 1.6]); %.3f s at grid 2^14 (limit 10 s)", elapsed));
}

void hankel_criterion() {
    const auto uniform = LineMeasure::uniform();
    const auto q = power_moments(uniform, 256);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 256; n += 2) worst = std::max(worst, std::abs(q[n] - oracle::uniform_moment(n)));
    const bool uniform_ok = hankel_classify(uniform).status == Closability::closable && worst <= 1e-12;

    const auto q1 = power_moments(LineMeasure::atom(1.0), 256);
    bool ones = true;
    for (double v : q1) ones = ones && v == 1.0;
    const bool atom1_ok = hankel_classify(LineMeasure::atom(1.0)).status == Closability::not_closable && ones;

    const auto q2 = power_moments(LineMeasure::atom(2.0), 256);
    bool powers = true;
    for (std::size_t n = 0; n < q2.size(); ++n) powers = powers && q2[n] == std::ldexp(1.0, static_cast<int>(n));
    const bool atom2_ok = hankel_classify(LineMeasure::atom(2.0)).status == Closability::not_closable && powers;

    int psd_fail = 0;
    for (const auto* moments : {&q, &q1, &q2}) {
        for (std::size_t n : {16, 64}) {
            const auto r = hankel_psd_check(*moments, n);
            if (!r.psd || r.certificate) ++psd_fail;
        }
    }
    report(8, uniform_ok && atom1_ok && atom2_ok && psd_fail == 0,
           fmt("uniform: max |q_2n - 1/(2n+1)| = %.3e (tol 1e-12), %s; atom at 1: q_n == 1 %s; atom at 2: q_n == 2^n "
               "%s; failed Hankel PSD checks (N in {16,64}) = %d",
               worst, uniform_ok ? "Closable" : "wrong", atom1_ok ? "NotClosable" : "wrong",
               atom2_ok ? "NotClosable" : "wrong", psd_fail));
}

void projection_properties() {
    const std::size_t grid = 4096;
    const auto probes = projection_probes(grid, 50, 8);
    bool idempotent = true;
    for (const auto& f : probes) {
        const auto p = riesz_project(f);
        idempotent = idempotent && riesz_project(p) == p;
    }
    const std::vector<double> ones(grid, 1.0);
    const std::vector<std::vector<cplx>> random(probes.begin(), probes.begin() + 50);
    const auto plain = survey_projection(random, ones);

    const auto w = AcDensity::power(1.5).samples(grid, 0.5);
    const auto weighted = survey_projection(probes, w);
    const auto unweighted = survey_projection(probes, ones);
    int above = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) above += weighted.ratios[i] > unweighted.ratios[i];
    report(9, idempotent && plain.max_ratio <= 1.0 + 1e-10 && weighted.max_ratio > unweighted.max_ratio,
           fmt("P+ idempotent exactly: %s; max unweighted ratio over 50 random probes = %.15f (tol 1 + 1e-10); "
               "reported: max ratio under |theta/pi|^{3/2} = %.4f vs w=1 %.4f, weighted above unweighted on %d of "
               "%zu probes",
               idempotent ? "yes" : "no", plain.max_ratio, weighted.max_ratio, unweighted.max_ratio, above,
               probes.size()));
}

}  // namespace

int main() {
    const auto suite = mixture_suite();
    const std::vector<std::function<void()>> checks{
        [&] { moment_fidelity(suite); },     [&] { finite_section_psd(suite); },
        [] { semiboundedness(); },           [&] { oracle_equivalence(suite); },
        [] { witness_example(); },           [&] { closability_classification(suite); },
        [] { muckenhoupt_discrimination(); }, [] { hankel_criterion(); },
        [] { projection_properties(); }};
    for (std::size_t i = 0; i < checks.size(); ++i) {
        try {
            checks[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, checks.size());
    return failures == 0 ? 0 : 1;
}
