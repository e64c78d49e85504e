#include "toeform/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <future>
#include <thread>
#include <sstream>

#include "toeform/error.hpp"
#include "toeform/fft.hpp"

namespace toeform {
namespace {

void require_cutoff(const CoeffSequence& coeffs, std::size_t needed) {
    if (coeffs.empty() || coeffs.cutoff() < needed) {
        std::ostringstream msg;
        msg << "coefficient cutoff " << (coeffs.empty() ? 0 : coeffs.cutoff()) << " is below the required "
            << needed;
        throw ResolutionError(msg.str());
    }
}

}  // namespace

double norm_sq(std::span<const cplx> g) {
    CompensatedSum s;
    for (const auto& x : g) s.add(std::norm(x));
    return s.value();
}

double quadratic_form_direct(const CoeffSequence& coeffs, std::span<const cplx> g) {
    if (g.empty()) return 0.0;
    require_cutoff(coeffs, g.size() - 1);
    CompensatedComplexSum outer;
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (g[n] == cplx{}) continue;
        CompensatedComplexSum inner;
        for (std::size_t m = 0; m < g.size(); ++m)
            inner.add(coeffs(static_cast<long>(n) - static_cast<long>(m)) * g[m]);
        outer.add(inner.value() * std::conj(g[n]));
    }
    const cplx v = outer.value();
    const double bound = kFormImagTolerance * norm_sq(g) * std::max(std::abs(coeffs(0)), 1e-300);
    if (std::abs(v.imag()) > bound) throw NumericError("quadratic form has a non-negligible imaginary part");
    return v.real();
}

FiniteVector toeplitz_apply_dense(const CoeffSequence& coeffs, std::span<const cplx> g, std::size_t out_len) {
    if (g.empty()) return FiniteVector(out_len);
    require_cutoff(coeffs, std::max(g.size(), out_len) - 1);
    FiniteVector out(out_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        cplx acc{};
        for (std::size_t m = 0; m < g.size(); ++m) acc += coeffs(static_cast<long>(n) - static_cast<long>(m)) * g[m];
        out[n] = acc;
    }
    return out;
}

FiniteVector toeplitz_apply(const CoeffSequence& coeffs, std::span<const cplx> g, std::size_t out_len) {
    if (g.empty() || out_len == 0) return FiniteVector(out_len);
    const std::size_t len = g.size();
    require_cutoff(coeffs, std::max(len, out_len) - 1);
    const std::size_t size = fft::next_pow2(out_len + len - 1);
    // First column of the circulant: t_0..t_{out_len-1}, then t_{-(len-1)}..t_{-1}.
    std::vector<cplx> column(size);
    for (std::size_t d = 0; d < out_len; ++d) column[d] = coeffs(static_cast<long>(d));
    for (std::size_t d = 1; d < len; ++d) column[size - d] = coeffs(-static_cast<long>(d));
    std::vector<cplx> x(size);
    std::copy(g.begin(), g.end(), x.begin());
    auto c_hat = fft::forward(column);
    const auto x_hat = fft::forward(x);
    for (std::size_t k = 0; k < size; ++k) c_hat[k] *= x_hat[k];
    auto y = fft::inverse(c_hat);
    const double inv = 1.0 / static_cast<double>(size);
    FiniteVector out(out_len);
    for (std::size_t n = 0; n < out_len; ++n) out[n] = y[n] * inv;
    return out;
}

// --- FiniteSection ------------------------------------------------------------

FiniteSection::FiniteSection(const CoeffSequence& coeffs, std::size_t order) {
    if (order == 0) throw PreconditionError("section order must be positive");
    if (order > kMaxDenseOrder) throw PreconditionError("section order exceeds the dense limit of 2048");
    require_cutoff(coeffs, order - 1);
    const auto n = static_cast<Eigen::Index>(order);
    matrix_.resize(n, n);
    for (std::size_t d = 0; d < order; ++d)
        if (coeffs(static_cast<long>(d)).imag() != 0.0) real_ = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        matrix_(i, i) = coeffs(0);
        for (Eigen::Index j = 0; j < i; ++j) {
            const cplx t = coeffs(static_cast<long>(i - j));
            matrix_(i, j) = t;
            matrix_(j, i) = std::conj(t);
        }
    }
}

double FiniteSection::min_eigenvalue() const {
    if (!min_eig_) {
        if (real_) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_.real(), Eigen::EigenvaluesOnly);
            min_eig_ = es.eigenvalues()(0);
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
            min_eig_ = es.eigenvalues()(0);
        }
    }
    return *min_eig_;
}

FiniteVector FiniteSection::min_eigenvector() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_);
    const Eigen::VectorXcd v = es.eigenvectors().col(0);
    return FiniteVector(v.data(), v.data() + v.size());
}

double section_min_eig(const CoeffSequence& coeffs, std::size_t n) {
    return FiniteSection(coeffs, n).min_eigenvalue();
}

std::vector<double> min_eig_sweep(const CoeffSequence& coeffs, std::span<const std::size_t> orders) {
    std::vector<double> out(orders.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < orders.size(); i = next++) out[i] = section_min_eig(coeffs, orders[i]);
    };
    const std::size_t threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(orders.size(), 1));
    std::vector<std::future<void>> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& p : pool) p.get();
    return out;
}

// --- semidefinite factorization -----------------------------------------------

SemidefiniteFactor semidefinite_ldl(const Eigen::MatrixXcd& a, double scale, double factor) {
    const Eigen::Index n = a.rows();
    SemidefiniteFactor f;
    f.tolerance = factor * std::abs(scale) * static_cast<double>(n);
    f.lower = Eigen::MatrixXcd::Identity(n, n);
    f.pivots = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        cplx d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) d -= f.lower(j, k) * std::conj(f.lower(j, k)) * f.pivots(k);
        const double pivot = d.real();
        if (pivot < -f.tolerance) {
            f.ok = false;
            f.failed_index = static_cast<std::size_t>(j);
            f.failed_pivot = pivot;
            return f;
        }
        if (pivot <= f.tolerance) {
            // Numerically zero pivot: the column below is dropped.
            f.pivots(j) = 0.0;
            continue;
        }
        f.pivots(j) = pivot;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) s -= f.lower(i, k) * std::conj(f.lower(j, k)) * f.pivots(k);
            f.lower(i, j) = s / pivot;
        }
    }
    return f;
}

FiniteVector negative_direction(const Eigen::MatrixXcd& a, const SemidefiniteFactor& f) {
    const auto j = static_cast<Eigen::Index>(f.failed_index);
    // Leading block is L D L^H; solving L^H x = e_j gives x^H A x = d_j < 0.
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(j + 1);
    e(j) = 1.0;
    const Eigen::VectorXcd x =
        f.lower.topLeftCorner(j + 1, j + 1).adjoint().triangularView<Eigen::Upper>().solve(e);
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(a.rows());
    full.head(j + 1) = x;
    const double value = (full.adjoint() * a * full)(0, 0).real();
    if (value < 0.0) return FiniteVector(full.data(), full.data() + full.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    const Eigen::VectorXcd v = es.eigenvectors().col(0);
    return FiniteVector(v.data(), v.data() + v.size());
}

PsdResult psd_check(const CoeffSequence& coeffs, std::size_t n, double factor) {
    const FiniteSection section(coeffs, n);
    const auto f = semidefinite_ldl(section.matrix(), coeffs(0).real(), factor);
    PsdResult r;
    r.tolerance = f.tolerance;
    if (f.ok) return r;
    r.psd = false;
    auto g = negative_direction(section.matrix(), f);
    r.certificate_value = quadratic_form_direct(coeffs, g);
    r.certificate = std::move(g);
    return r;
}

}  // namespace toeform
