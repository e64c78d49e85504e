#include "toeform/closure_weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "toeform/error.hpp"
#include "toeform/fft.hpp"

namespace toeform {
namespace {

void require_radius(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw PreconditionError("radius must lie in (0, 1]");
}

}  // namespace

AnalyticExtension analytic_extension_eval(std::span<const cplx> g, double r, std::size_t grid_size) {
    require_radius(r);
    if (grid_size == 0) throw PreconditionError("grid size must be positive");
    if (g.size() > grid_size) throw ResolutionError("grid is smaller than the support of g");
    std::vector<cplx> a(grid_size);
    double rn = 1.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        a[n] = g[n] * rn;
        rn *= r;
    }
    AnalyticExtension ext;
    ext.g.assign(g.begin(), g.end());
    ext.r = r;
    ext.samples = fft::inverse(a);
    return ext;
}

double measure_form_integral(const CircleMeasure& measure, std::span<const cplx> g, double r,
                             std::size_t grid_size) {
    require_radius(r);
    if (g.empty()) return 0.0;
    const std::size_t len = g.size();
    const std::size_t size = fft::next_pow2(std::max(grid_size, 2 * len));
    const auto ext = analytic_extension_eval(g, r, size);
    std::vector<cplx> mod2(size);
    for (std::size_t j = 0; j < size; ++j) mod2[j] = std::norm(ext.samples[j]);
    // |Ag(r.)|^2 = sum_{|k| < len} c_k z^k.
    const auto c = fft::forward(mod2);
    const double inv = 1.0 / static_cast<double>(size);
    const auto t = coefficient_table(measure, len - 1);
    CompensatedSum acc;
    acc.add(c[0].real() * inv * t(0).real());
    for (std::size_t k = 1; k < len; ++k) acc.add(2.0 * (c[k] * inv * std::conj(t(static_cast<long>(k)))).real());
    return acc.value();
}

double closed_form_eval(const CircleMeasure& measure, std::span<const cplx> g, double r, std::size_t grid_size) {
    if (measure.has_singular_part())
        throw PreconditionError("the closed form is defined through an absolutely continuous measure");
    return measure_form_integral(measure, g, r, grid_size);
}

RadialLadder closure_ladder(const CircleMeasure& measure, std::span<const cplx> g, std::size_t steps,
                            double tolerance, std::size_t grid_size) {
    RadialLadder ladder;
    ladder.tolerance = tolerance;
    for (std::size_t j = 1; j <= steps; ++j) ladder.radii.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));
    ladder.radii.push_back(1.0);
    for (double r : ladder.radii) ladder.values.push_back(closed_form_eval(measure, g, r, grid_size));
    for (std::size_t i = 1; i < ladder.values.size(); ++i) {
        const double prev = ladder.values[i - 1];
        const double d = ladder.values[i] - prev;
        ladder.relative_increments.push_back(prev != 0.0 ? d / std::abs(prev) : (d == 0.0 ? 0.0 : INFINITY));
    }
    ladder.stabilized =
        !ladder.relative_increments.empty() && std::abs(ladder.relative_increments.back()) < tolerance;
    return ladder;
}

double laurent_form_eval(const CircleMeasure& measure, const BilateralVector& g, std::size_t grid_size) {
    // |sum g_n z^n| = |z^{offset} p(z)| = |p(z)| on the circle.
    return measure_form_integral(measure, g.values, 1.0, grid_size);
}

// --- Muckenhoupt -----------------------------------------------------------------

MuckenhouptReport muckenhoupt_estimate(const CircleMeasure& measure, std::size_t levels, std::size_t grid_size,
                                       const MuckenhouptThresholds& thresholds) {
    if (!measure.ac()) throw PreconditionError("the A2 estimate needs an absolutely continuous density");
    if (measure.ac()->is_grid()) grid_size = measure.grid_size();
    if (!fft::is_pow2(grid_size)) throw PreconditionError("grid size must be a power of two");
    std::size_t log2g = 0;
    while ((std::size_t{1} << log2g) < grid_size) ++log2g;
    if (levels + 2 > log2g) throw PreconditionError("levels must not exceed log2(grid size) - 2");

    MuckenhouptReport rep;
    rep.thresholds = thresholds;
    rep.grid_size = grid_size;
    for (std::size_t j = 0; j <= levels; ++j) {
        const std::size_t cells = std::size_t{4} << j;
        const auto w = measure.ac()->samples(cells, 0.5);
        std::vector<double> sw(2 * cells + 1, 0.0), sinv(2 * cells + 1, 0.0);
        for (std::size_t i = 0; i < 2 * cells; ++i) {
            const double v = w[i % cells];
            if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError("weight must be positive and finite at every quadrature point");
            sw[i + 1] = sw[i] + v;
            sinv[i + 1] = sinv[i] + 1.0 / v;
        }
        double best = 0.0;
        std::size_t scanned = 0;
        for (std::size_t level = 0; level <= j; ++level) {
            const std::size_t arcs = std::size_t{1} << level;
            const std::size_t width = cells / arcs;
            const double inv = 1.0 / static_cast<double>(width);
            for (std::size_t shift : {std::size_t{0}, width / 2}) {
                for (std::size_t a = 0; a < arcs; ++a) {
                    const std::size_t s = a * width + shift;
                    const double mw = (sw[s + width] - sw[s]) * inv;
                    const double mi = (sinv[s + width] - sinv[s]) * inv;
                    best = std::max(best, mw * mi);
                    ++scanned;
                }
            }
        }
        rep.estimates.push_back(best);
        rep.resolutions.push_back(cells);
        rep.arcs_scanned.push_back(scanned);
    }
    for (std::size_t j = 1; j < rep.estimates.size(); ++j)
        rep.ratios.push_back(rep.estimates[j] / rep.estimates[j - 1]);

    rep.verdict = "inconclusive";
    const auto& e = rep.estimates;
    if (rep.ratios.size() >= 3 &&
        std::all_of(rep.ratios.end() - 3, rep.ratios.end(),
                    [&](double q) { return q > thresholds.diverging_ratio; })) {
        rep.verdict = "diverging";
    } else if (e.size() >= 2 &&
               std::abs(e.back() - e[e.size() - 2]) < thresholds.bounded_relative * e[e.size() - 2]) {
        rep.verdict = "bounded";
    }
    return rep;
}

// --- Riesz projection ----------------------------------------------------------

std::vector<cplx> riesz_project(std::span<const cplx> f) {
    const std::size_t n = f.size();
    if (n == 0 || n % 2 != 0) throw PreconditionError("projection needs an even number of samples");
    auto spec = fft::forward(f);
    double top = 0.0, negative = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        top = std::max(top, std::abs(spec[k]));
        if (k >= n / 2) negative = std::max(negative, std::abs(spec[k]));
    }
    if (negative <= kProjectionNoise * top) return {f.begin(), f.end()};
    for (std::size_t k = n / 2; k < n; ++k) spec[k] = 0.0;
    auto out = fft::inverse(spec);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= inv;
    return out;
}

double weighted_ratio(std::span<const cplx> f, std::span<const double> w) {
    if (f.size() != w.size()) throw PreconditionError("weights and samples differ in length");
    const auto p = riesz_project(f);
    CompensatedSum num, den;
    for (std::size_t j = 0; j < f.size(); ++j) {
        num.add(w[j] * std::norm(p[j]));
        den.add(w[j] * std::norm(f[j]));
    }
    if (!(den.value() > 0.0)) throw PreconditionError("probe has zero weighted norm");
    return std::sqrt(num.value() / den.value());
}

std::vector<std::vector<cplx>> projection_probes(std::size_t grid_size, std::size_t random_count,
                                                 std::size_t bump_count, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal;
    const long degree = static_cast<long>(std::min<std::size_t>(16, grid_size / 4));
    std::vector<std::vector<cplx>> probes;
    for (std::size_t p = 0; p < random_count; ++p) {
        std::vector<cplx> coeff(static_cast<std::size_t>(2 * degree + 1));
        for (auto& c : coeff) c = {normal(rng), normal(rng)};
        std::vector<cplx> f(grid_size);
        for (std::size_t j = 0; j < grid_size; ++j) {
            const double theta = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid_size);
            cplx v{};
            for (long k = -degree; k <= degree; ++k)
                v += coeff[static_cast<std::size_t>(k + degree)] * std::polar(1.0, static_cast<double>(k) * theta);
            f[j] = v;
        }
        probes.push_back(std::move(f));
    }
    const double cell = kTwoPi / static_cast<double>(grid_size);
    for (std::size_t b = 1; b <= bump_count; ++b) {
        const double width = kPi / std::ldexp(1.0, static_cast<int>(b));
        if (width < 2.0 * cell) break;
        std::vector<cplx> f(grid_size);
        for (std::size_t j = 0; j < grid_size; ++j) {
            const double theta = cell * (static_cast<double>(j) + 0.5);
            if (std::abs(std::remainder(theta, kTwoPi)) < 0.5 * width) f[j] = 1.0;
        }
        probes.push_back(std::move(f));
    }
    return probes;
}

ProjectionSurvey survey_projection(std::span<const std::vector<cplx>> probes, std::span<const double> w) {
    ProjectionSurvey s;
    for (const auto& f : probes) {
        s.ratios.push_back(weighted_ratio(f, w));
        s.max_ratio = std::max(s.max_ratio, s.ratios.back());
    }
    return s;
}

}  // namespace toeform
