#include "toeform/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toeform/error.hpp"
#include "toeform/fft.hpp"

namespace toeform {
namespace {

constexpr std::size_t kPanelNodes = 24;

// \int_0^h x^alpha cos(omega x) dx by its Taylor series; omega h <= pi keeps
// the terms monotone after the first few.
double power_cos_head(double alpha, double omega, double h) {
    const double y2 = (omega * h) * (omega * h);
    double term = 1.0;  // (-1)^k y^{2k} / (2k)!
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double contrib = term / (2.0 * k + alpha + 1.0);
        sum += contrib;
        if (k > 2 && std::abs(contrib) < 1e-18 * std::abs(sum)) break;
        term *= -y2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    return sum * std::pow(h, alpha + 1.0);
}

// t_n of |theta/pi|^alpha for n = 0..n_max, i.e. \int_0^1 x^alpha cos(n pi x) dx.
// Panels of width 1/n_max resolve every frequency; the first one is handled
// analytically to absorb the endpoint singularity.
std::vector<double> power_coefficients(double alpha, std::size_t n_max) {
    const std::size_t panels = std::max<std::size_t>(n_max, 1);
    const double h = 1.0 / static_cast<double>(panels);
    std::vector<double> t(n_max + 1, 0.0);
    for (std::size_t n = 0; n <= n_max; ++n)
        t[n] = power_cos_head(alpha, kPi * static_cast<double>(n), h);

    static const GaussLegendre rule = gauss_legendre(kPanelNodes);
    constexpr std::size_t kReseed = 32;
    std::vector<double> acc(n_max + 1, 0.0);
    for (std::size_t p = 1; p < panels; ++p) {
        const double a = static_cast<double>(p) * h;
        for (std::size_t q = 0; q < kPanelNodes; ++q) {
            const double x = a + 0.5 * h * (1.0 + rule.nodes[q]);
            const double wf = 0.5 * h * rule.weights[q] * std::pow(x, alpha);
            const cplx step = std::polar(1.0, kPi * x);
            cplx z{1.0, 0.0};
            for (std::size_t n = 0; n <= n_max; ++n) {
                if (n % kReseed == 0) z = std::polar(1.0, kPi * x * static_cast<double>(n));
                acc[n] += wf * z.real();
                z *= step;
            }
        }
    }
    for (std::size_t n = 0; n <= n_max; ++n) t[n] += acc[n];
    return t;
}

double power_coefficient(double alpha, long n) {
    const auto m = static_cast<std::size_t>(std::abs(n));
    if (m == 0) return 1.0 / (alpha + 1.0);
    // Same panel layout as a table of cutoff |n|, evaluated only at |n|.
    const double h = 1.0 / static_cast<double>(m);
    const double omega = kPi * static_cast<double>(m);
    double sum = power_cos_head(alpha, omega, h);
    static const GaussLegendre rule = gauss_legendre(kPanelNodes);
    double acc = 0.0;
    for (std::size_t p = 1; p < m; ++p) {
        const double a = static_cast<double>(p) * h;
        for (std::size_t q = 0; q < kPanelNodes; ++q) {
            const double x = a + 0.5 * h * (1.0 + rule.nodes[q]);
            acc += 0.5 * h * rule.weights[q] * std::pow(x, alpha) * std::cos(omega * x);
        }
    }
    return sum + acc;
}

double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

cplx fourier_entry(const FourierDensity& f, long n) {
    const auto m = static_cast<std::size_t>(std::abs(n));
    if (m >= f.coeffs.size()) return {0.0, 0.0};
    return n >= 0 ? f.coeffs[m] : std::conj(f.coeffs[m]);
}

double evaluate_fourier(const FourierDensity& f, double theta) {
    double v = f.coeffs[0].real();
    for (std::size_t k = 1; k < f.coeffs.size(); ++k)
        v += 2.0 * (f.coeffs[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
    return v;
}

void require_resolved(std::size_t grid, std::size_t n) {
    if (grid < kGridOversampling * n) {
        std::ostringstream msg;
        msg << "grid of " << grid << " points does not resolve frequency " << n << " (need >= "
            << kGridOversampling * n << ")";
        throw ResolutionError(msg.str());
    }
}

}  // namespace

// --- AcDensity ---------------------------------------------------------------

AcDensity::AcDensity(Descriptor d, std::size_t check_grid) : desc_(std::move(d)) {
    if (auto* b = std::get_if<BuiltinDensity>(&desc_)) {
        if (!std::isfinite(b->scale) || b->scale < 0.0)
            throw InvalidMeasure("builtin density scale must be finite and >= 0");
        if (b->kind == BuiltinDensity::Kind::power && (!std::isfinite(b->alpha) || b->alpha <= -1.0))
            throw InvalidMeasure("power weight exponent must satisfy alpha > -1");
    } else if (auto* f = std::get_if<FourierDensity>(&desc_)) {
        if (f->coeffs.empty()) throw InvalidMeasure("Fourier density needs at least c_0");
        for (const auto& c : f->coeffs)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw InvalidMeasure("Fourier density coefficients must be finite");
        if (std::abs(f->coeffs[0].imag()) > 1e-12 * std::max(1.0, std::abs(f->coeffs[0])))
            throw InvalidMeasure("Fourier density c_0 must be real");
        f->coeffs[0] = {f->coeffs[0].real(), 0.0};
        const std::size_t g = std::max(check_grid, kGridOversampling * f->coeffs.size());
        for (std::size_t j = 0; j < g; ++j) {
            if (evaluate_fourier(*f, kTwoPi * static_cast<double>(j) / static_cast<double>(g)) <
                -kNegativeClamp)
                throw InvalidMeasure("Fourier density takes negative values");
        }
    } else {
        auto& s = std::get<GridDensity>(desc_).samples;
        if (s.empty()) throw InvalidMeasure("grid density has no samples");
        for (auto& v : s) {
            if (!std::isfinite(v)) throw InvalidMeasure("grid density sample is not finite");
            if (v < -kNegativeClamp) throw InvalidMeasure("grid density sample is negative");
            if (v < 0.0) v = 0.0;
        }
    }
}

AcDensity AcDensity::constant(double value) {
    return AcDensity(BuiltinDensity{BuiltinDensity::Kind::constant, value, 0.0});
}

AcDensity AcDensity::two_plus_two_cos(double scale) {
    return AcDensity(BuiltinDensity{BuiltinDensity::Kind::two_plus_two_cos, scale, 0.0});
}

AcDensity AcDensity::power(double alpha, double scale) {
    return AcDensity(BuiltinDensity{BuiltinDensity::Kind::power, scale, alpha});
}

double AcDensity::evaluate(double theta) const {
    if (auto* b = std::get_if<BuiltinDensity>(&desc_)) {
        switch (b->kind) {
            case BuiltinDensity::Kind::constant:
                return b->scale;
            case BuiltinDensity::Kind::two_plus_two_cos:
                return b->scale * (2.0 + 2.0 * std::cos(theta));
            case BuiltinDensity::Kind::power:
                return b->scale * std::pow(std::abs(std::remainder(theta, kTwoPi)) / kPi, b->alpha);
        }
    }
    if (auto* f = std::get_if<FourierDensity>(&desc_)) return std::max(0.0, evaluate_fourier(*f, theta));
    const auto& s = std::get<GridDensity>(desc_).samples;
    const double pos = reduce_angle(theta) / kTwoPi * static_cast<double>(s.size());
    const auto i = static_cast<std::size_t>(std::floor(pos)) % s.size();
    const double frac = pos - std::floor(pos);
    if (frac < 1e-9) return s[i];
    return (1.0 - frac) * s[i] + frac * s[(i + 1) % s.size()];
}

std::vector<double> AcDensity::samples(std::size_t n, double offset) const {
    if (auto* g = std::get_if<GridDensity>(&desc_); g && offset == 0.0 && n == g->samples.size())
        return g->samples;
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = evaluate(kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(n));
    return out;
}

std::vector<cplx> AcDensity::coefficients(std::size_t n_max) const {
    std::vector<cplx> t(n_max + 1, cplx{0.0, 0.0});
    if (auto* b = std::get_if<BuiltinDensity>(&desc_)) {
        switch (b->kind) {
            case BuiltinDensity::Kind::constant:
                t[0] = b->scale;
                break;
            case BuiltinDensity::Kind::two_plus_two_cos:
                t[0] = 2.0 * b->scale;
                if (n_max >= 1) t[1] = b->scale;
                break;
            case BuiltinDensity::Kind::power: {
                const auto p = power_coefficients(b->alpha, n_max);
                for (std::size_t n = 0; n <= n_max; ++n) t[n] = b->scale * p[n];
                break;
            }
        }
        return t;
    }
    if (auto* f = std::get_if<FourierDensity>(&desc_)) {
        for (std::size_t n = 0; n <= n_max; ++n) t[n] = fourier_entry(*f, static_cast<long>(n));
        return t;
    }
    const auto& s = std::get<GridDensity>(desc_).samples;
    require_resolved(s.size(), n_max);
    std::vector<cplx> x(s.begin(), s.end());
    const auto X = fft::forward(x);
    const double inv = 1.0 / static_cast<double>(s.size());
    for (std::size_t n = 0; n <= n_max; ++n) t[n] = X[n] * inv;
    t[0] = {t[0].real(), 0.0};
    return t;
}

std::string AcDensity::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (auto* b = std::get_if<BuiltinDensity>(&desc_)) {
        switch (b->kind) {
            case BuiltinDensity::Kind::constant:
                os << "w = " << b->scale;
                break;
            case BuiltinDensity::Kind::two_plus_two_cos:
                os << "w = " << b->scale << " * (2 + 2 cos theta)";
                break;
            case BuiltinDensity::Kind::power:
                os << "w = " << b->scale << " * |theta/pi|^" << b->alpha;
                break;
        }
    } else if (auto* f = std::get_if<FourierDensity>(&desc_)) {
        os << "w = trigonometric polynomial of degree " << f->coeffs.size() - 1;
    } else {
        os << "w = grid samples (" << std::get<GridDensity>(desc_).samples.size() << " points)";
    }
    return os.str();
}

bool AcDensity::operator==(const AcDensity& o) const {
    if (desc_.index() != o.desc_.index()) return false;
    if (auto* b = std::get_if<BuiltinDensity>(&desc_)) {
        const auto& c = std::get<BuiltinDensity>(o.desc_);
        return b->kind == c.kind && b->scale == c.scale &&
               (b->kind != BuiltinDensity::Kind::power || b->alpha == c.alpha);
    }
    if (auto* f = std::get_if<FourierDensity>(&desc_))
        return f->coeffs == std::get<FourierDensity>(o.desc_).coeffs;
    return std::get<GridDensity>(desc_).samples == std::get<GridDensity>(o.desc_).samples;
}

// --- CircleMeasure -----------------------------------------------------------

CircleMeasure::CircleMeasure(std::optional<AcDensity> ac, std::vector<Atom> atoms, double cantor_mass,
                             std::size_t grid_size)
    : ac_(std::move(ac)), atoms_(std::move(atoms)), cantor_mass_(cantor_mass), grid_size_(grid_size) {
    if (grid_size_ == 0) throw InvalidMeasure("grid size must be positive");
    for (const auto& a : atoms_) {
        if (!std::isfinite(a.angle) || a.angle < 0.0 || a.angle >= kTwoPi)
            throw InvalidMeasure("atom angle must lie in [0, 2 pi)");
        if (!std::isfinite(a.mass) || a.mass <= 0.0) throw InvalidMeasure("atom mass must be > 0");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            if (atoms_[i].angle == atoms_[j].angle) throw InvalidMeasure("atom angles must be distinct");
    if (!std::isfinite(cantor_mass_) || cantor_mass_ < 0.0)
        throw InvalidMeasure("Cantor mass must be finite and >= 0");
}

CircleMeasure CircleMeasure::lebesgue(std::size_t grid_size) {
    return CircleMeasure(AcDensity::constant(1.0), {}, 0.0, grid_size);
}

CircleMeasure CircleMeasure::atom(double angle, double mass) {
    return CircleMeasure(std::nullopt, {Atom{angle, mass}});
}

CircleMeasure CircleMeasure::cantor(double mass) { return CircleMeasure(std::nullopt, {}, mass); }

std::size_t CircleMeasure::grid_size() const {
    if (ac_ && ac_->is_grid()) return std::get<GridDensity>(ac_->descriptor()).samples.size();
    return grid_size_;
}

double CircleMeasure::total_mass() const {
    double m = cantor_mass_;
    for (const auto& a : atoms_) m += a.mass;
    if (ac_) m += ac_->coefficients(0)[0].real();
    return m;
}

bool CircleMeasure::operator==(const CircleMeasure& o) const {
    return ac_ == o.ac_ && atoms_ == o.atoms_ && cantor_mass_ == o.cantor_mass_ && grid_size() == o.grid_size();
}

// --- CoeffSequence -----------------------------------------------------------

CoeffSequence::CoeffSequence(std::vector<cplx> nonnegative) : t_(std::move(nonnegative)) {
    if (t_.empty()) return;
    if (std::abs(t_[0].imag()) > 1e-12 * std::max(1.0, std::abs(t_[0])))
        throw PreconditionError("t_0 must be real for a Hermitian sequence");
    t_[0] = {t_[0].real(), 0.0};
}

cplx CoeffSequence::operator()(long n) const {
    const auto m = static_cast<std::size_t>(std::abs(n));
    if (m >= t_.size()) throw ResolutionError("coefficient index exceeds the stored cutoff");
    return n >= 0 ? t_[m] : std::conj(t_[m]);
}

CoeffSequence& CoeffSequence::operator+=(const CoeffSequence& other) {
    if (other.t_.size() != t_.size()) throw PreconditionError("coefficient cutoffs differ");
    for (std::size_t i = 0; i < t_.size(); ++i) t_[i] += other.t_[i];
    return *this;
}

CoeffSequence operator+(CoeffSequence a, const CoeffSequence& b) { return a += b; }

// --- coefficients -------------------------------------------------------------

double cantor_coefficient(long n) {
    const auto m = static_cast<unsigned long long>(n < 0 ? -n : n);
    if (m == 0) return 1.0;
    double prod = (m % 2 == 0) ? 1.0 : -1.0;
    unsigned long long p3 = 3;
    for (int k = 1; k < 40; ++k, p3 *= 3) {
        const double ratio = static_cast<double>(m) / static_cast<double>(p3);
        if (kTwoPi * ratio < kCantorTruncation) break;
        // n mod 3^k is exact, so factors with 3^k | n are exactly 1.
        const unsigned long long r = m % p3;
        prod *= std::cos(kTwoPi * (static_cast<double>(r) / static_cast<double>(p3)));
    }
    return prod;
}

cplx fourier_coefficient(const CircleMeasure& measure, long n) {
    cplx t{0.0, 0.0};
    if (const auto& ac = measure.ac()) {
        const auto& d = ac->descriptor();
        if (auto* b = std::get_if<BuiltinDensity>(&d)) {
            const long m = std::abs(n);
            switch (b->kind) {
                case BuiltinDensity::Kind::constant:
                    t += (m == 0 ? b->scale : 0.0);
                    break;
                case BuiltinDensity::Kind::two_plus_two_cos:
                    t += (m == 0 ? 2.0 * b->scale : (m == 1 ? b->scale : 0.0));
                    break;
                case BuiltinDensity::Kind::power:
                    t += b->scale * power_coefficient(b->alpha, n);
                    break;
            }
        } else if (auto* f = std::get_if<FourierDensity>(&d)) {
            t += fourier_entry(*f, n);
        } else {
            const auto& s = std::get<GridDensity>(d).samples;
            require_resolved(s.size(), static_cast<std::size_t>(std::abs(n)));
            CompensatedComplexSum acc;
            const double G = static_cast<double>(s.size());
            for (std::size_t j = 0; j < s.size(); ++j)
                acc.add(s[j] * std::polar(1.0, -kTwoPi * static_cast<double>((static_cast<long long>(j) * n) %
                                                                             static_cast<long long>(s.size())) /
                                                   G));
            t += acc.value() / G;
        }
    }
    for (const auto& a : measure.atoms()) t += std::polar(a.mass, -static_cast<double>(n) * a.angle);
    if (measure.cantor_mass() > 0.0) t += measure.cantor_mass() * cantor_coefficient(n);
    if (n == 0) t = {t.real(), 0.0};
    return t;
}

CoeffSequence coefficient_table(const CircleMeasure& measure, std::size_t n_max) {
    std::vector<cplx> t = measure.ac() ? measure.ac()->coefficients(n_max) : std::vector<cplx>(n_max + 1);
    for (const auto& a : measure.atoms())
        for (std::size_t n = 0; n <= n_max; ++n) t[n] += std::polar(a.mass, -static_cast<double>(n) * a.angle);
    if (measure.cantor_mass() > 0.0)
        for (std::size_t n = 0; n <= n_max; ++n)
            t[n] += measure.cantor_mass() * cantor_coefficient(static_cast<long>(n));
    t[0] = {t[0].real(), 0.0};
    return CoeffSequence(std::move(t));
}

double gamma_floor(const CircleMeasure& measure) {
    if (!measure.ac()) return 0.0;
    const auto s = measure.ac()->samples(measure.grid_size());
    double lo = std::numeric_limits<double>::infinity();
    for (double v : s) lo = std::min(lo, v);
    return std::isfinite(lo) ? lo : 0.0;
}

CircleMeasure combine(const CircleMeasure& a, const CircleMeasure& b) {
    std::optional<AcDensity> ac;
    if (a.ac() && b.ac()) {
        const auto& da = a.ac()->descriptor();
        const auto& db = b.ac()->descriptor();
        if (auto *ga = std::get_if<GridDensity>(&da), *gb = std::get_if<GridDensity>(&db); ga && gb) {
            if (ga->samples.size() != gb->samples.size())
                throw NotApplicable("grid densities of different sizes cannot be added");
            GridDensity sum = *ga;
            for (std::size_t j = 0; j < sum.samples.size(); ++j) sum.samples[j] += gb->samples[j];
            ac = AcDensity(std::move(sum));
        } else if (auto *fa = std::get_if<FourierDensity>(&da), *fb = std::get_if<FourierDensity>(&db); fa && fb) {
            FourierDensity sum;
            sum.coeffs.resize(std::max(fa->coeffs.size(), fb->coeffs.size()));
            for (std::size_t k = 0; k < fa->coeffs.size(); ++k) sum.coeffs[k] += fa->coeffs[k];
            for (std::size_t k = 0; k < fb->coeffs.size(); ++k) sum.coeffs[k] += fb->coeffs[k];
            ac = AcDensity(std::move(sum));
        } else {
            throw NotApplicable("these AC descriptors have no common representation");
        }
    } else {
        ac = a.ac() ? a.ac() : b.ac();
    }
    std::vector<Atom> atoms = a.atoms();
    for (const auto& x : b.atoms()) {
        auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& y) { return y.angle == x.angle; });
        if (it != atoms.end())
            it->mass += x.mass;
        else
            atoms.push_back(x);
    }
    return CircleMeasure(std::move(ac), std::move(atoms), a.cantor_mass() + b.cantor_mass(),
                         std::max(a.grid_size(), b.grid_size()));
}

}  // namespace toeform
