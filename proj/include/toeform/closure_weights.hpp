#pragma once

// The closed form of a Toeplitz form with AC measure w dm, realised through
// the analytic extension (Ag)(z) = sum_n g_n z^n, plus the bilateral form,
// an A2 (Muckenhoupt) estimator and the Riesz projection P+.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toeform/measures.hpp"
#include "toeform/toeplitz.hpp"

namespace toeform {

struct AnalyticExtension {
    FiniteVector g;
    double r = 1.0;
    /// (Ag)(r e^{i theta_j}), theta_j = 2 pi j / G.
    std::vector<cplx> samples;
};

AnalyticExtension analytic_extension_eval(std::span<const cplx> g, double r, std::size_t grid_size);

/// \int |(Ag)(r z)|^2 dM(z) for any measure: the trigonometric interpolant of
/// |Ag(r.)|^2 (exact for finite g on a grid of >= 2L points) is integrated
/// against the moments t_n of M.
double measure_form_integral(const CircleMeasure& measure, std::span<const cplx> g, double r,
                             std::size_t grid_size = kDefaultGridSize);

/// Closed form \int |(Ag)(r z)|^2 w dm. The measure must be absolutely
/// continuous with w >= 0.
double closed_form_eval(const CircleMeasure& measure, std::span<const cplx> g, double r,
                        std::size_t grid_size = kDefaultGridSize);

struct RadialLadder {
    std::vector<double> radii;   // 1 - 2^{-j}, j = 1..J, then 1
    std::vector<double> values;  // closed_form_eval at each radius
    std::vector<double> relative_increments;
    bool stabilized = false;     // last relative increment below the tolerance
    double tolerance = 1e-6;
};

/// Radial membership diagnostic for the domain of the closed form; never a
/// hard membership decision.
RadialLadder closure_ladder(const CircleMeasure& measure, std::span<const cplx> g, std::size_t steps,
                            double tolerance = 1e-6, std::size_t grid_size = kDefaultGridSize);

/// g_n for n = offset .. offset + values.size() - 1, n in Z.
struct BilateralVector {
    long offset = 0;
    FiniteVector values;
};

/// ||sum_n g_n z^n||^2 in L^2(dM); equals sum_{n,m in Z} t_{n-m} g_m conj(g_n).
double laurent_form_eval(const CircleMeasure& measure, const BilateralVector& g,
                         std::size_t grid_size = kDefaultGridSize);

struct MuckenhouptThresholds {
    double bounded_relative = 0.05;  // |E_L - E_{L-1}| / E_{L-1}
    double diverging_ratio = 1.2;    // each of the last three E_{j+1}/E_j
};

struct MuckenhouptReport {
    /// E_j uses midpoint quadrature on 2^{j+2} cells and takes the sup over
    /// dyadic arcs of length 2^{-i}, i <= j, and their half-shifted translates.
    std::vector<double> estimates;
    std::vector<std::size_t> resolutions;
    std::vector<std::size_t> arcs_scanned;
    std::vector<double> ratios;  // E_{j+1} / E_j
    std::string verdict;         // "bounded" | "diverging" | "inconclusive"
    MuckenhouptThresholds thresholds;
    std::size_t grid_size = 0;
};

/// Requires an AC density, w > 0 at every quadrature point, and
/// levels <= log2(grid_size) - 2.
MuckenhouptReport muckenhoupt_estimate(const CircleMeasure& measure, std::size_t levels,
                                       std::size_t grid_size = 1u << 14,
                                       const MuckenhouptThresholds& thresholds = {});

/// Negative-frequency content at or below this fraction of the largest mode
/// is rounding noise; such input is returned unchanged.
inline constexpr double kProjectionNoise = 1e-13;

/// P+ on grid samples: keeps modes 0 <= k < G/2 (the Nyquist mode counts as
/// negative). Grid size must be even.
std::vector<cplx> riesz_project(std::span<const cplx> f);

/// ||P+ f|| / ||f|| in the discrete L^2(w) norm with weights w_j >= 0.
double weighted_ratio(std::span<const cplx> f, std::span<const double> w);

/// Probe functions at theta_j = 2 pi (j + 1/2) / G: `random_count` random
/// trigonometric polynomials with modes on both sides of zero, then narrow
/// indicator bumps centred at theta = 0 of widths pi / 2^k.
std::vector<std::vector<cplx>> projection_probes(std::size_t grid_size, std::size_t random_count,
                                                 std::size_t bump_count, unsigned seed = 7);

struct ProjectionSurvey {
    std::vector<double> ratios;
    double max_ratio = 0.0;
};

ProjectionSurvey survey_projection(std::span<const std::vector<cplx>> probes, std::span<const double> w);

}  // namespace toeform
