#pragma once

// Hankel companion: power moments q_n = \int x^n dM(x) of measures on R and
// the form q[g,g] = sum_{n,m>=0} q_{n+m} g_m conj(g_n).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "toeform/closability.hpp"
#include "toeform/toeplitz.hpp"

namespace toeform {

/// Density on [a, b], sampled at a + i (b - a) / (S - 1) and read as the
/// piecewise-linear interpolant.
struct LineDensity {
    double a = -1.0;
    double b = 1.0;
    std::vector<double> samples;
    bool operator==(const LineDensity&) const = default;
};

struct LineAtom {
    double x = 0.0;
    double mass = 0.0;
    bool operator==(const LineAtom&) const = default;
};

class LineMeasure {
public:
    LineMeasure() = default;
    LineMeasure(std::optional<LineDensity> ac, std::vector<LineAtom> atoms);

    /// Uniform probability density on [-rho, rho].
    static LineMeasure uniform(double rho = 1.0, double mass = 1.0);
    static LineMeasure atom(double x, double mass = 1.0);

    const std::optional<LineDensity>& ac() const { return ac_; }
    const std::vector<LineAtom>& atoms() const { return atoms_; }

    /// Hull of the cells where the interpolated density is nonzero; nullopt
    /// when the AC part vanishes.
    std::optional<std::pair<double, double>> ac_support() const;

    bool operator==(const LineMeasure&) const = default;

private:
    std::optional<LineDensity> ac_;
    std::vector<LineAtom> atoms_;
};

using MomentSequence = std::vector<double>;

/// Per-cell Gauss-Legendre order is capped; higher N is a resolution error.
inline constexpr std::size_t kMaxGaussNodes = 1024;

MomentSequence power_moments(const LineMeasure& measure, std::size_t n_max);

double hankel_form(std::span<const double> q, std::span<const cplx> g);

Eigen::MatrixXcd hankel_section(std::span<const double> q, std::size_t order);

/// Same pivot policy as Toeplitz sections with scale = max diagonal entry.
PsdResult hankel_psd_check(std::span<const double> q, std::size_t order, double factor = kPsdToleranceFactor);

/// |x -/+ 1| below this counts as an endpoint atom.
inline constexpr double kEndpointTolerance = 1e-12;

struct MomentDiagnostic {
    std::string status;    // "decaying" | "non-decaying" | "inconclusive"
    double window_ratio = 0.0;  // sup_{[N/2,N]} |q_n| / sup_{[N/4,N/2)} |q_n|
};

MomentDiagnostic moment_decay(std::span<const double> q);

/// Closable iff supp M is in [-1, 1] and M({-1}) = M({1}) = 0.
ClosabilityVerdict hankel_classify(const LineMeasure& measure, std::size_t diagnostic_moments = 256);

}  // namespace toeform
