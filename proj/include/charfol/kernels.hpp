#pragma once

// Hot loops with a serial reference and an OpenMP variant. The serial
// versions are the oracles for the parallel ones in tests and benchmarks.

#include <span>
#include <vector>

#include "charfol/gf.hpp"

namespace charfol::kernels {

// Truncated product: out[k] = sum_{i+j=k} a[i]*b[j] for k < n.
std::vector<gf::Elem> convolve_serial(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                                      const gf::Field& f);
std::vector<gf::Elem> convolve_omp(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                                   const gf::Field& f);

// Output length at which convolve() switches to the OpenMP variant.
inline constexpr std::size_t kParallelThreshold = 512;

// Picks convolve_omp for long outputs when more than one thread is available.
std::vector<gf::Elem> convolve(std::span<const gf::Elem> a, std::span<const gf::Elem> b, std::size_t n,
                               const gf::Field& f);

}  // namespace charfol::kernels
