// Inner-loop kernels. Each has a serial reference implementation and an
// OpenMP-parallel version that must produce bit-identical output (each
// output sample is an independent dot product evaluated in the same order).

#pragma once

#include <span>
#include <vector>

namespace specsense::kernels {

// Linear convolution truncated to the input length: y[n] = sum_t h[t]*x[n-t].
void convolve_ref(std::span<const double> h, std::span<const double> x,
                  std::span<double> y);
void convolve(std::span<const double> h, std::span<const double> x,
              std::span<double> y);

std::vector<double> convolve(std::span<const double> h, std::span<const double> x);

// Sum of squared samples.
double energy_ref(std::span<const double> x);
double energy(std::span<const double> x);

} // namespace specsense::kernels
