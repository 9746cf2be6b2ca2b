#include "gem/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace gem {

// Cody's CALERF rational approximations (netlib specfun), double precision.
namespace {

constexpr double kA[5] = {3.1611237438705656, 113.864154151050156,
                          377.485237685302021, 3209.37758913846947,
                          0.185777706184603153};
constexpr double kB[4] = {23.6012909523441209, 244.024637934444173,
                          1282.61652607737228, 2844.23683343917062};
constexpr double kC[9] = {0.564188496988670089, 8.88314979438837594,
                          66.1191906371416295, 298.635138197400131,
                          881.95222124176909, 1712.04761263407058,
                          2051.07837782607147, 1230.33935479799725,
                          2.15311535474403846e-8};
constexpr double kD[8] = {15.7449261107098347, 117.693950891312499,
                          537.181101862009858, 1621.38957456669019,
                          3290.79923573345963, 4362.61909014324716,
                          3439.36767414372164, 1230.33935480374942};
constexpr double kP[6] = {0.305326634961232344, 0.360344899949804439,
                          0.125781726111229246, 0.0160837851487422766,
                          6.58749161529837803e-4, 0.0163153871373020978};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047,
                          0.527905102951428412, 0.0605183413124413191,
                          0.00233520497626869185};

constexpr double kSqrtPiInv = 0.56418958354775628695;
constexpr double kThresh = 0.46875;

// erfc(y) for y in (0.46875, inf); caller handles sign and erf/erfc fixup.
double erfc_positive(double y) {
    double num, den, r;
    if (y <= 4.0) {
        num = kC[8] * y;
        den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        r = (num + kC[7]) / (den + kD[7]);
    } else {
        if (y >= 26.543) return 0.0;
        const double ysq = 1.0 / (y * y);
        num = kP[5] * ysq;
        den = ysq;
        for (int i = 0; i < 4; ++i) {
            num = (num + kP[i]) * ysq;
            den = (den + kQ[i]) * ysq;
        }
        r = ysq * (num + kP[4]) / (den + kQ[4]);
        r = (kSqrtPiInv - r) / y;
    }
    // split exp(-y^2) to keep the argument product exactly representable
    const double yt = std::trunc(y * 16.0) / 16.0;
    const double del = (y - yt) * (y + yt);
    return std::exp(-yt * yt) * std::exp(-del) * r;
}

}  // namespace

double erf(double x) {
    const double y = std::abs(x);
    if (y <= kThresh) {
        const double ysq = y > 1.11e-16 ? y * y : 0.0;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        return x * (num + kA[3]) / (den + kB[3]);
    }
    const double r = 1.0 - erfc_positive(y);
    return x < 0 ? -r : r;
}

double erfc(double x) {
    const double y = std::abs(x);
    if (y <= kThresh) return 1.0 - gem::erf(x);
    const double r = erfc_positive(y);
    return x < 0 ? 2.0 - r : r;
}

double erf_inv(double y) {
    if (!(y > -1.0 && y < 1.0))
        throw std::domain_error("erf_inv: argument must be in (-1, 1)");
    if (y == 0.0) return 0.0;

    // Low-order seed (Winitzki-style), relative error ~1e-2.
    const double a = 0.147;
    const double ln1my2 = std::log(1.0 - y * y);
    const double t1 = 2.0 / (std::numbers::pi * a) + 0.5 * ln1my2;
    double x = std::copysign(std::sqrt(std::sqrt(t1 * t1 - ln1my2 / a) - t1), y);

    // Newton on erf(x) - y = 0; derivative 2/sqrt(pi) exp(-x^2).
    constexpr double two_over_sqrt_pi = 1.1283791670955126;
    for (int it = 0; it < 4; ++it) {
        const double f = gem::erf(x) - y;
        const double df = two_over_sqrt_pi * std::exp(-x * x);
        const double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

std::vector<double> discrete_heat_kernel(double x) {
    if (!(x >= 0.0)) throw std::domain_error("discrete_heat_kernel: x must be >= 0");
    if (x < 1e-14) return {1.0};  // kernel is a delta

    // Support: exp(-x) I_n(x) ~ exp(-n^2/(2x))/sqrt(2 pi x) for n << x,
    // so weights cross 1e-18 near n ~ 9.1 sqrt(x); keep margin.
    const int radius = int(std::ceil(9.5 * std::sqrt(x))) + 8;

    // Miller backward recurrence for I_n(x): start above the needed order
    // with a trial pair, recur down, then normalize with sum_n I_n = e^x,
    // i.e. t_0 + 2 sum_{n>=1} t_n = 1 for the scaled weights.
    const int start = radius + int(std::ceil(2.0 * std::sqrt(x))) + 12;
    std::vector<double> f(start + 2, 0.0);
    f[start + 1] = 0.0;
    f[start] = 1e-280;
    for (int n = start; n >= 1; --n) {
        f[n - 1] = f[n + 1] + (2.0 * n / x) * f[n];
        if (f[n - 1] > 1e260) {  // rescale to avoid overflow
            for (int m = n - 1; m <= start + 1; ++m) f[m] *= 1e-260;
        }
    }
    double sum = f[0];
    for (int n = 1; n <= start; ++n) sum += 2.0 * f[n];

    std::vector<double> kernel(radius + 1);
    for (int n = 0; n <= radius; ++n) kernel[n] = f[n] / sum;
    // trim the numerically irrelevant tail
    while (kernel.size() > 1 && kernel.back() < 1e-18) kernel.pop_back();
    return kernel;
}

}  // namespace gem
