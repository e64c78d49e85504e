#pragma once

#include <complex>
#include <span>
#include <vector>

namespace toeform::fft {

using cplx = std::complex<double>;

// Unnormalized DFTs of arbitrary length:
//   forward:  X_k = sum_j x_j e^{-2 pi i jk/n}
//   inverse:  x_j = sum_k X_k e^{+2 pi i jk/n}
std::vector<cplx> forward(std::span<const cplx> x);
std::vector<cplx> inverse(std::span<const cplx> x);

std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);

}  // namespace toeform::fft
