#pragma once

#include <vector>

namespace gem {

/// Error function from W. J. Cody's rational Chebyshev approximations
/// (Math. Comp. 23, 1969).  Absolute error below 1e-15 over the real
/// line, well inside the 1e-12 contract used by the analysis formulas.
double erf(double x);

/// Complement, same approximation family.
double erfc(double x);

/// Inverse error function for y in (-1, 1).  Seeded with a low-order
/// rational estimate and polished with Newton steps on gem::erf, so
/// erf(erf_inv(y)) = y to better than 1e-10.  Throws std::domain_error
/// for |y| >= 1.
double erf_inv(double y);

/// Weights of the discrete heat kernel: t_n = exp(-x) * I_n(x) for
/// n = 0..radius, with x = 2*D*dt/h^2 for grid spacing h.  The weights
/// solve the semi-discretized diffusion equation exactly, sum to 1 over
/// all n in Z, have variance exactly x (in pixel^2 units), and compose
/// exactly under convolution, which is what the diffusion split step
/// relies on.  For resolved kernels (x >> 1) they converge to samples of
/// a Gaussian of standard deviation sqrt(x) pixels.  Returned radius is
/// where the weights fall below ~1e-17.
std::vector<double> discrete_heat_kernel(double x);

}  // namespace gem
