#include "toeform/closability.hpp"

#include <algorithm>
#include <cmath>

#include "toeform/error.hpp"
#include "toeform/fft.hpp"

namespace toeform {

std::string to_string(Closability c) {
    switch (c) {
        case Closability::closable:
            return "Closable";
        case Closability::not_closable:
            return "NotClosable";
        case Closability::indeterminate:
            return "Indeterminate";
    }
    return "Indeterminate";
}

ClosabilityVerdict classify_measure(const CircleMeasure& measure) {
    if (measure.has_singular_part())
        return {Closability::not_closable, SingularEvidence{measure.atoms(), measure.cantor_mass()}};
    SymbolEvidence e;
    e.symbol = measure.ac() ? measure.ac()->describe() : "w = 0";
    e.gamma_floor = gamma_floor(measure);
    return {Closability::closable, e};
}

ClosabilityVerdict decay_diagnostics(const CoeffSequence& coeffs, std::size_t tail_start,
                                     const DecayThresholds& thresholds) {
    const std::size_t n = coeffs.empty() ? 0 : coeffs.cutoff();
    if (tail_start < 1 || 2 * tail_start > n)
        throw ResolutionError("decay diagnostics need 1 <= tail_start and 2 * tail_start <= cutoff");

    DecayEvidence e;
    e.cutoff = n;
    e.tail_start = tail_start;
    e.nondecay_fraction = thresholds.nondecay_fraction;
    e.l2_tail_ratio = thresholds.l2_tail_ratio;
    e.t0_abs = std::abs(coeffs(0));

    CompensatedSum total, tail;
    total.add(std::norm(coeffs(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        const double a = std::abs(coeffs(static_cast<long>(k)));
        total.add(2.0 * a * a);
        if (k >= tail_start) tail.add(2.0 * a * a);
        if (k < tail_start)
            e.early_level = std::max(e.early_level, a);
        else if (k < 2 * tail_start)
            e.window1_sup = std::max(e.window1_sup, a);
        else
            e.window2_sup = std::max(e.window2_sup, a);
    }
    e.total_l2 = total.value();
    e.tail_l2 = tail.value();

    const double floor = thresholds.nondecay_fraction * e.early_level;
    const bool early_significant = e.early_level > thresholds.negligible_level * e.t0_abs;
    if (early_significant && e.window1_sup >= floor && e.window2_sup >= floor)
        return {Closability::not_closable, e};
    if (e.tail_l2 < thresholds.l2_tail_ratio * e.total_l2) return {Closability::closable, e};
    return {Closability::indeterminate, e};
}

FiniteVector witness_vector(double angle, long k) {
    if (k < 1) throw PreconditionError("witness index k must be >= 1");
    FiniteVector g(static_cast<std::size_t>(k));
    const double inv = 1.0 / static_cast<double>(k);
    for (long n = 0; n < k; ++n) g[static_cast<std::size_t>(n)] = std::polar(inv, -static_cast<double>(n) * angle);
    return g;
}

WitnessReport nonclosability_witness(const CircleMeasure& measure, long k, long l) {
    if (measure.atoms().empty()) throw NotApplicable("witness construction needs an atom in the measure");
    if (k < 1 || l < 1 || k == l) throw PreconditionError("witness needs k, l >= 1 and k != l");
    const auto heaviest = std::max_element(measure.atoms().begin(), measure.atoms().end(),
                                           [](const Atom& a, const Atom& b) { return a.mass < b.mass; });
    const auto len = static_cast<std::size_t>(std::max(k, l));
    const auto coeffs = coefficient_table(measure, len - 1);

    const auto gk = witness_vector(heaviest->angle, k);
    const auto gl = witness_vector(heaviest->angle, l);
    FiniteVector diff(len);
    for (std::size_t n = 0; n < gk.size(); ++n) diff[n] += gk[n];
    for (std::size_t n = 0; n < gl.size(); ++n) diff[n] -= gl[n];

    WitnessReport r;
    r.k = k;
    r.l = l;
    r.atom_angle = heaviest->angle;
    r.atom_mass = heaviest->mass;
    r.norm_sq_k = norm_sq(gk);
    r.form_k = quadratic_form_direct(coeffs, gk);
    r.form_diff = quadratic_form_direct(coeffs, diff);
    return r;
}

AdjointResult adjoint_coefficients(std::span<const cplx> u_samples, const CircleMeasure& measure, std::size_t n,
                                   double membership_threshold) {
    const std::size_t grid = u_samples.size();
    if (grid == 0) throw PreconditionError("u needs at least one sample");
    if (grid < kGridOversampling * n)
        throw ResolutionError("grid of u samples does not resolve the requested frequency");

    // Trigonometric interpolant: u(theta) = sum_k uh[k] e^{ik theta}, k in [-G/2, G/2].
    const auto spec = fft::forward(u_samples);
    const long half = static_cast<long>(grid / 2);
    std::vector<std::pair<long, cplx>> modes;
    modes.reserve(grid + 1);
    const double inv = 1.0 / static_cast<double>(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        const long k = static_cast<long>(j) <= half ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(grid);
        const cplx c = spec[j] * inv;
        if (grid % 2 == 0 && static_cast<long>(j) == half) {
            modes.emplace_back(half, 0.5 * c);
            modes.emplace_back(-half, 0.5 * c);
        } else {
            modes.emplace_back(k, c);
        }
    }

    std::vector<cplx> u(n + 1);

    // Components with closed-form moments: sum_k uh_k t_{n-k}.
    const bool grid_ac = measure.ac() && measure.ac()->is_grid();
    std::optional<AcDensity> smooth_ac;
    if (measure.ac() && !grid_ac) smooth_ac = measure.ac();
    if (smooth_ac || measure.cantor_mass() > 0.0) {
        const CircleMeasure part(smooth_ac, {}, measure.cantor_mass(), measure.grid_size());
        const auto t = coefficient_table(part, n + static_cast<std::size_t>(half) + 1);
        for (std::size_t m = 0; m <= n; ++m) {
            CompensatedComplexSum acc;
            for (const auto& [k, c] : modes) acc.add(c * t(static_cast<long>(m) - k));
            u[m] += acc.value();
        }
    }

    // Grid density sharing the u grid: trapezoid rule on u w.
    if (grid_ac) {
        const auto w = measure.ac()->samples(measure.grid_size());
        if (w.size() != grid) throw PreconditionError("u must be sampled on the density grid");
        std::vector<cplx> prod(grid);
        for (std::size_t j = 0; j < grid; ++j) prod[j] = u_samples[j] * w[j];
        const auto ph = fft::forward(prod);
        for (std::size_t m = 0; m <= n; ++m) u[m] += ph[m] * inv;
    }

    for (const auto& a : measure.atoms()) {
        cplx value{};
        for (const auto& [k, c] : modes) value += c * std::polar(1.0, static_cast<double>(k) * a.angle);
        for (std::size_t m = 0; m <= n; ++m) u[m] += a.mass * value * std::polar(1.0, -static_cast<double>(m) * a.angle);
    }

    AdjointResult r;
    r.membership_threshold = membership_threshold;
    const std::size_t quart = std::max<std::size_t>(1, (n + 1) / 4);
    CompensatedSum all, last;
    for (std::size_t m = 0; m <= n; ++m) {
        all.add(std::norm(u[m]));
        if (m + quart > n) last.add(std::norm(u[m]));
    }
    r.tail_ratio = all.value() > 0.0 ? last.value() / all.value() : 0.0;
    r.plausibly_in_domain = r.tail_ratio < membership_threshold;
    r.u = std::move(u);
    return r;
}

}  // namespace toeform
