#include "charfol/kernels.hpp"

#include <algorithm>

#include <omp.h>

namespace charfol::kernels {

namespace {

gf::Elem coefficient(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t k, const gf::Field& f) {
  gf::Elem acc = f.zero();
  const std::size_t lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
  const std::size_t hi = std::min(k + 1, a.size());
  for (std::size_t i = lo; i < hi; ++i) {
    if (a[i].is_zero()) continue;
    acc += a[i] * b[k - i];
  }
  return acc;
}

}  // namespace

std::vector<gf::Elem> convolve_serial(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                                      const gf::Field& f) {
  std::vector<gf::Elem> out(n, f.zero());
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<gf::Elem> convolve_omp(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                                   const gf::Field& f) {
  std::vector<gf::Elem> out(n, f.zero());
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < len; ++k) out[static_cast<std::size_t>(k)] = coefficient(a, b, static_cast<std::size_t>(k), f);
  return out;
}

std::vector<gf::Elem> convolve(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                               const gf::Field& f) {
  if (n >= kParallelThreshold && omp_get_max_threads() > 1 && !omp_in_parallel()) return convolve_omp(a, b, n, f);
  return convolve_serial(a, b, n, f);
}

}  // namespace charfol::kernels
