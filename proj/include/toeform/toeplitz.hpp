#pragma once

// Toeplitz quadratic forms t[g,g] = sum_{n,m>=0} t_{n-m} g_m conj(g_n) on
// finitely supported vectors, the operator action (Tg)_n, and finite-section
// spectral probes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "toeform/measures.hpp"

namespace toeform {

/// Element of D: finitely many nonzero components g_0..g_{L-1}.
using FiniteVector = std::vector<cplx>;

double norm_sq(std::span<const cplx> g);

/// Relative size of the imaginary residue tolerated by the direct form.
inline constexpr double kFormImagTolerance = 1e-10;

/// Direct double sum with compensated accumulation. The imaginary residue
/// must stay below kFormImagTolerance * ||g||^2 * t_0.
double quadratic_form_direct(const CoeffSequence& coeffs, std::span<const cplx> g);

/// (Tg)_n for n < out_len by circulant embedding into the next power of two
/// >= out_len + L - 1.
FiniteVector toeplitz_apply(const CoeffSequence& coeffs, std::span<const cplx> g, std::size_t out_len);

/// Reference O(out_len * L) product.
FiniteVector toeplitz_apply_dense(const CoeffSequence& coeffs, std::span<const cplx> g, std::size_t out_len);

/// N x N section with entries t_{i-j}. Hermitian by construction.
class FiniteSection {
public:
    FiniteSection(const CoeffSequence& coeffs, std::size_t order);

    std::size_t order() const { return static_cast<std::size_t>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    bool is_real() const { return real_; }

    /// Smallest eigenvalue, computed on first use.
    double min_eigenvalue() const;
    /// Unit eigenvector of the smallest eigenvalue.
    FiniteVector min_eigenvector() const;

private:
    Eigen::MatrixXcd matrix_;
    bool real_ = true;
    mutable std::optional<double> min_eig_;
};

inline constexpr std::size_t kMaxDenseOrder = 2048;

double section_min_eig(const CoeffSequence& coeffs, std::size_t n);

/// lambda_min(T_N) for every N in `orders`, evaluated concurrently; the
/// result is in the order of `orders`.
std::vector<double> min_eig_sweep(const CoeffSequence& coeffs, std::span<const std::size_t> orders);

/// Pivots below -factor * scale * N fail; pivots in between count as zero.
inline constexpr double kPsdToleranceFactor = 1e-10;

struct SemidefiniteFactor {
    bool ok = true;
    std::size_t failed_index = 0;  // meaningful when !ok
    double failed_pivot = 0.0;
    double tolerance = 0.0;
    Eigen::MatrixXcd lower;        // unit lower triangular
    Eigen::VectorXd pivots;
};

/// LDL^H with the semidefinite pivot policy above. `scale` is the reference
/// diagonal size (t_0 for Toeplitz sections).
SemidefiniteFactor semidefinite_ldl(const Eigen::MatrixXcd& a, double scale,
                                    double factor = kPsdToleranceFactor);

struct PsdResult {
    bool psd = true;
    double tolerance = 0.0;
    /// On failure: g with t[g,g] < 0.
    std::optional<FiniteVector> certificate;
    double certificate_value = 0.0;
};

PsdResult psd_check(const CoeffSequence& coeffs, std::size_t n, double factor = kPsdToleranceFactor);

/// Certificate search shared with Hankel sections: a vector g with
/// g^H A g < 0 from the failing pivot, falling back to the lowest eigenvector.
FiniteVector negative_direction(const Eigen::MatrixXcd& a, const SemidefiniteFactor& f);

}  // namespace toeform
