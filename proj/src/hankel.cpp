#include "toeform/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toeform/error.hpp"

namespace toeform {

LineMeasure::LineMeasure(std::optional<LineDensity> ac, std::vector<LineAtom> atoms)
    : ac_(std::move(ac)), atoms_(std::move(atoms)) {
    if (ac_) {
        if (!std::isfinite(ac_->a) || !std::isfinite(ac_->b) || !(ac_->a < ac_->b))
            throw InvalidMeasure("line density needs finite a < b");
        if (ac_->samples.size() < 2) throw InvalidMeasure("line density needs at least two samples");
        for (auto& v : ac_->samples) {
            if (!std::isfinite(v)) throw InvalidMeasure("line density sample is not finite");
            if (v < -kNegativeClamp) throw InvalidMeasure("line density sample is negative");
            if (v < 0.0) v = 0.0;
        }
    }
    for (const auto& a : atoms_)
        if (!std::isfinite(a.x) || !std::isfinite(a.mass) || a.mass <= 0.0)
            throw InvalidMeasure("line atom needs a finite position and positive mass");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            if (atoms_[i].x == atoms_[j].x) throw InvalidMeasure("line atoms must be distinct");
}

LineMeasure LineMeasure::uniform(double rho, double mass) {
    const double h = mass / (2.0 * rho);
    return LineMeasure(LineDensity{-rho, rho, {h, h}}, {});
}

LineMeasure LineMeasure::atom(double x, double mass) { return LineMeasure(std::nullopt, {LineAtom{x, mass}}); }

std::optional<std::pair<double, double>> LineMeasure::ac_support() const {
    if (!ac_) return std::nullopt;
    const auto& s = ac_->samples;
    const std::size_t cells = s.size() - 1;
    const double h = (ac_->b - ac_->a) / static_cast<double>(cells);
    std::optional<std::size_t> first, last;
    for (std::size_t c = 0; c < cells; ++c) {
        if (s[c] > 0.0 || s[c + 1] > 0.0) {
            if (!first) first = c;
            last = c;
        }
    }
    if (!first) return std::nullopt;
    return std::pair{ac_->a + h * static_cast<double>(*first), ac_->a + h * static_cast<double>(*last + 1)};
}

MomentSequence power_moments(const LineMeasure& measure, std::size_t n_max) {
    MomentSequence q(n_max + 1, 0.0);
    if (const auto& ac = measure.ac()) {
        // Linear density times x^n has degree n + 1 on each cell.
        const std::size_t nodes = n_max / 2 + 2;
        if (nodes > kMaxGaussNodes) throw ResolutionError("moment order exceeds the quadrature degree");
        const auto rule = gauss_legendre(nodes);
        const std::size_t cells = ac->samples.size() - 1;
        const double h = (ac->b - ac->a) / static_cast<double>(cells);
        std::vector<CompensatedSum> acc(n_max + 1);
        for (std::size_t c = 0; c < cells; ++c) {
            const double lo = ac->a + h * static_cast<double>(c);
            const double f0 = ac->samples[c], f1 = ac->samples[c + 1];
            if (f0 == 0.0 && f1 == 0.0) continue;
            for (std::size_t i = 0; i < nodes; ++i) {
                const double u = 0.5 * (1.0 + rule.nodes[i]);
                const double x = lo + h * u;
                double term = 0.5 * h * rule.weights[i] * ((1.0 - u) * f0 + u * f1);
                for (std::size_t n = 0; n <= n_max; ++n) {
                    acc[n].add(term);
                    term *= x;
                }
            }
        }
        for (std::size_t n = 0; n <= n_max; ++n) q[n] = acc[n].value();
    }
    for (const auto& a : measure.atoms()) {
        double p = a.mass;
        for (std::size_t n = 0; n <= n_max; ++n) {
            q[n] += p;
            p *= a.x;
        }
    }
    return q;
}

double hankel_form(std::span<const double> q, std::span<const cplx> g) {
    if (g.empty()) return 0.0;
    if (q.size() < 2 * g.size() - 1) throw ResolutionError("not enough moments for this vector");
    CompensatedComplexSum outer;
    for (std::size_t n = 0; n < g.size(); ++n) {
        CompensatedComplexSum inner;
        for (std::size_t m = 0; m < g.size(); ++m) inner.add(q[n + m] * g[m]);
        outer.add(inner.value() * std::conj(g[n]));
    }
    const cplx v = outer.value();
    double scale = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) scale = std::max(scale, std::abs(q[2 * n]));
    if (std::abs(v.imag()) > kFormImagTolerance * std::max(scale, 1e-300) * norm_sq(g) * static_cast<double>(g.size()))
        throw NumericError("Hankel form has a non-negligible imaginary part");
    return v.real();
}

Eigen::MatrixXcd hankel_section(std::span<const double> q, std::size_t order) {
    if (order == 0) throw PreconditionError("section order must be positive");
    if (q.size() < 2 * order - 1) throw ResolutionError("not enough moments for this section");
    const auto n = static_cast<Eigen::Index>(order);
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) h(i, j) = q[static_cast<std::size_t>(i + j)];
    return h;
}

PsdResult hankel_psd_check(std::span<const double> q, std::size_t order, double factor) {
    const auto h = hankel_section(q, order);
    double scale = 0.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) scale = std::max(scale, h(i, i).real());
    const auto f = semidefinite_ldl(h, scale, factor);
    PsdResult r;
    r.tolerance = f.tolerance;
    if (f.ok) return r;
    r.psd = false;
    auto g = negative_direction(h, f);
    r.certificate_value = hankel_form(q, g);
    r.certificate = std::move(g);
    return r;
}

MomentDiagnostic moment_decay(std::span<const double> q) {
    MomentDiagnostic d;
    const std::size_t n = q.empty() ? 0 : q.size() - 1;
    if (n < 8) {
        d.status = "inconclusive";
        return d;
    }
    double early = 0.0, late = 0.0;
    for (std::size_t k = n / 4; k < n / 2; ++k) early = std::max(early, std::abs(q[k]));
    for (std::size_t k = n / 2; k <= n; ++k) late = std::max(late, std::abs(q[k]));
    if (!std::isfinite(late)) {
        d.window_ratio = INFINITY;
    } else if (early == 0.0) {
        d.window_ratio = late == 0.0 ? 0.0 : INFINITY;
    } else {
        d.window_ratio = late / early;
    }
    if (d.window_ratio < 0.75)
        d.status = "decaying";
    else if (d.window_ratio > 0.9)
        d.status = "non-decaying";
    else
        d.status = "inconclusive";
    return d;
}

ClosabilityVerdict hankel_classify(const LineMeasure& measure, std::size_t diagnostic_moments) {
    SupportEvidence e;
    double lo = INFINITY, hi = -INFINITY;
    if (auto s = measure.ac_support()) {
        lo = s->first;
        hi = s->second;
        if (lo < -1.0 - kEndpointTolerance || hi > 1.0 + kEndpointTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "density supported on [" << lo << ", " << hi << "] leaves [-1, 1]";
            e.violations.push_back(os.str());
        }
    }
    for (const auto& a : measure.atoms()) {
        lo = std::min(lo, a.x);
        hi = std::max(hi, a.x);
        std::ostringstream os;
        os.precision(17);
        if (std::abs(a.x - 1.0) < kEndpointTolerance || std::abs(a.x + 1.0) < kEndpointTolerance) {
            os << "atom of mass " << a.mass << " at endpoint x = " << a.x;
            e.violations.push_back(os.str());
        } else if (std::abs(a.x) > 1.0) {
            os << "atom of mass " << a.mass << " at x = " << a.x << " outside [-1, 1]";
            e.violations.push_back(os.str());
        }
    }
    e.support_lo = std::isfinite(lo) ? lo : 0.0;
    e.support_hi = std::isfinite(hi) ? hi : 0.0;

    const auto q = power_moments(measure, diagnostic_moments);
    const auto diag = moment_decay(q);
    e.moment_diagnostic = diag.status;
    e.moment_window_ratio = diag.window_ratio;

    const auto status = e.violations.empty() ? Closability::closable : Closability::not_closable;
    e.diagnostic_agrees = (status == Closability::closable && diag.status != "non-decaying") ||
                          (status == Closability::not_closable && diag.status != "decaying");
    return {status, e};
}

}  // namespace toeform
