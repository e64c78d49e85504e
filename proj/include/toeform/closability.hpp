#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toeform/measures.hpp"
#include "toeform/toeplitz.hpp"

namespace toeform {

enum class Closability { closable, not_closable, indeterminate };

std::string to_string(Closability c);

/// The measure is w dm; w is its symbol.
struct SymbolEvidence {
    std::string symbol;
    double gamma_floor = 0.0;
};

/// Singular components that obstruct closability.
struct SingularEvidence {
    std::vector<Atom> atoms;
    double cantor_mass = 0.0;
};

/// Coefficient-decay statistics from decay_diagnostics.
struct DecayEvidence {
    std::size_t cutoff = 0;
    std::size_t tail_start = 0;
    double t0_abs = 0.0;
    double early_level = 0.0;        // max_{1<=n<s} |t_n|
    double window1_sup = 0.0;        // max over [s, 2s)
    double window2_sup = 0.0;        // max over [2s, N]
    double tail_l2 = 0.0;            // sum_{|n|>=s} |t_n|^2
    double total_l2 = 0.0;           // sum_{|n|<=N} |t_n|^2
    double nondecay_fraction = 0.5;  // thresholds in force
    double l2_tail_ratio = 1e-6;
};

/// Support geometry of a line measure (Hankel companion).
struct SupportEvidence {
    std::vector<std::string> violations;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::string moment_diagnostic;  // "decaying" | "non-decaying" | "inconclusive"
    double moment_window_ratio = 0.0;
    bool diagnostic_agrees = true;
};

using Evidence = std::variant<SymbolEvidence, SingularEvidence, DecayEvidence, SupportEvidence>;

struct ClosabilityVerdict {
    Closability status = Closability::indeterminate;
    Evidence evidence;
};

/// Closable exactly when the measure is absolutely continuous.
ClosabilityVerdict classify_measure(const CircleMeasure& measure);

struct DecayThresholds {
    double nondecay_fraction = 0.5;
    double l2_tail_ratio = 1e-6;
    /// An early level below this fraction of |t_0| counts as already decayed.
    double negligible_level = 1e-12;
};

/// NotClosable when the tail sup stays above nondecay_fraction of the early
/// level in both [s, 2s) and [2s, N]; Closable when the l2 tail is below
/// l2_tail_ratio of the total; Indeterminate otherwise. Requires 1 <= s and 2s <= N.
ClosabilityVerdict decay_diagnostics(const CoeffSequence& coeffs, std::size_t tail_start,
                                     const DecayThresholds& thresholds = {});

struct WitnessReport {
    long k = 0;
    long l = 0;
    double atom_angle = 0.0;
    double atom_mass = 0.0;
    double norm_sq_k = 0.0;  // ||g^(k)||^2
    double form_k = 0.0;     // t[g^(k), g^(k)]
    double form_diff = 0.0;  // t[g^(k) - g^(l), g^(k) - g^(l)]
};

/// g^(k)_n = e^{-i n theta_0} / k for n < k, built on the heaviest atom.
FiniteVector witness_vector(double angle, long k);

WitnessReport nonclosability_witness(const CircleMeasure& measure, long k, long l);

inline constexpr double kMembershipTailRatio = 1e-4;

struct AdjointResult {
    std::vector<cplx> u;           // u_0..u_N
    double tail_ratio = 0.0;       // last-quartile share of sum |u_n|^2
    double membership_threshold = kMembershipTailRatio;
    bool plausibly_in_domain = false;  // heuristic l2 membership of (u_n)
};

/// u_n = \int u(z) z^{-n} dM(z), n = 0..N, for u given by samples at
/// theta_j = 2 pi j / G (read as its trigonometric interpolant).
AdjointResult adjoint_coefficients(std::span<const cplx> u_samples, const CircleMeasure& measure, std::size_t n,
                                   double membership_threshold = kMembershipTailRatio);

}  // namespace toeform
