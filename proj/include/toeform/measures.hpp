#pragma once

// Finite nonnegative measures on the unit circle and their Fourier
// coefficients t_n = \int z^{-n} dM(z), with dm normalized so that m(T) = 1.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toeform/numeric.hpp"

namespace toeform {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Every coefficient request up to cutoff N needs a grid of at least
/// kGridOversampling * N points.
inline constexpr std::size_t kGridOversampling = 8;

/// Grid samples in [-kNegativeClamp, 0) are treated as 0.
inline constexpr double kNegativeClamp = 1e-12;

/// Products of cos(2 pi n 3^{-k}) stop once the argument drops below this.
inline constexpr double kCantorTruncation = 1e-8;

/// Named closed-form densities.
struct BuiltinDensity {
    enum class Kind { constant, two_plus_two_cos, power };
    Kind kind = Kind::constant;
    double scale = 1.0;
    /// Exponent of |theta/pi|^alpha, theta in (-pi, pi]; power only, alpha > -1.
    double alpha = 0.0;
};

/// w(e^{i theta}) = sum_{|k| <= K} c_k e^{ik theta}, with c_{-k} = conj(c_k).
/// Only c_0..c_K are stored.
struct FourierDensity {
    std::vector<cplx> coeffs;
};

/// Samples of w at theta_j = 2 pi j / G.
struct GridDensity {
    std::vector<double> samples;
};

/// Density of the absolutely continuous part, w >= 0.
class AcDensity {
public:
    using Descriptor = std::variant<BuiltinDensity, FourierDensity, GridDensity>;

    /// Validates nonnegativity (on `check_grid` points for non-grid kinds) and
    /// clamps tiny negative grid samples.
    explicit AcDensity(Descriptor d, std::size_t check_grid = kDefaultGridSize);

    static AcDensity constant(double value);
    static AcDensity two_plus_two_cos(double scale = 1.0);
    static AcDensity power(double alpha, double scale = 1.0);

    const Descriptor& descriptor() const { return desc_; }
    bool is_grid() const { return std::holds_alternative<GridDensity>(desc_); }

    /// Point value; grid densities are interpolated linearly between nodes.
    double evaluate(double theta) const;

    /// Values at theta_j = 2 pi (j + offset) / n.
    std::vector<double> samples(std::size_t n, double offset = 0.0) const;

    /// t_0..t_N of w dm. Grid densities use one FFT of their samples.
    std::vector<cplx> coefficients(std::size_t n_max) const;

    /// True when every coefficient is available without a grid (closed forms
    /// and Fourier lists).
    bool analytic_coefficients() const { return !is_grid(); }

    std::string describe() const;

    bool operator==(const AcDensity&) const;

private:
    Descriptor desc_;
};

struct Atom {
    double angle = 0.0;  // radians, in [0, 2 pi)
    double mass = 0.0;   // > 0
    bool operator==(const Atom&) const = default;
};

/// Finite nonnegative measure on T: w dm + sum of point masses + c * (Cantor
/// measure pushed forward by theta = 2 pi x). Immutable after construction.
class CircleMeasure {
public:
    CircleMeasure() = default;
    CircleMeasure(std::optional<AcDensity> ac, std::vector<Atom> atoms, double cantor_mass = 0.0,
                  std::size_t grid_size = kDefaultGridSize);

    static CircleMeasure lebesgue(std::size_t grid_size = kDefaultGridSize);
    static CircleMeasure atom(double angle, double mass = 1.0);
    static CircleMeasure cantor(double mass = 1.0);

    const std::optional<AcDensity>& ac() const { return ac_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    double cantor_mass() const { return cantor_mass_; }

    /// Quadrature grid: the sample count for grid densities, the configured
    /// size otherwise.
    std::size_t grid_size() const;

    bool has_singular_part() const { return !atoms_.empty() || cantor_mass_ > 0.0; }
    double total_mass() const;

    bool operator==(const CircleMeasure&) const;

private:
    std::optional<AcDensity> ac_;
    std::vector<Atom> atoms_;
    double cantor_mass_ = 0.0;
    std::size_t grid_size_ = kDefaultGridSize;
};

/// Hermitian two-sided sequence t_{-N}..t_N stored one-sided as t_0..t_N.
class CoeffSequence {
public:
    CoeffSequence() = default;
    /// t_0 must be real (|Im t_0| <= 1e-12 |t_0| is dropped, anything larger throws).
    explicit CoeffSequence(std::vector<cplx> nonnegative);

    std::size_t cutoff() const { return t_.empty() ? 0 : t_.size() - 1; }
    bool empty() const { return t_.empty(); }

    /// t_n for |n| <= cutoff; t_{-n} = conj(t_n).
    cplx operator()(long n) const;
    const std::vector<cplx>& nonnegative() const { return t_; }

    CoeffSequence& operator+=(const CoeffSequence& other);

private:
    std::vector<cplx> t_;
};

CoeffSequence operator+(CoeffSequence a, const CoeffSequence& b);

/// Fourier coefficient of the Cantor component with unit mass.
double cantor_coefficient(long n);

cplx fourier_coefficient(const CircleMeasure& measure, long n);
CoeffSequence coefficient_table(const CircleMeasure& measure, std::size_t n_max);

/// Largest gamma with M(X) >= gamma m(X): the minimum of w over the grid,
/// or 0 without an AC part.
double gamma_floor(const CircleMeasure& measure);

/// Sum of two measures. Supported when at most one has an AC part, or both
/// AC parts are grid samples of equal size or Fourier lists.
CircleMeasure combine(const CircleMeasure& a, const CircleMeasure& b);

}  // namespace toeform
