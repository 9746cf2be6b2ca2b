#include "gem/field.hpp"

#include <cmath>

namespace gem {

namespace {
inline double norm_sq(const Complex& c) {
    return c.real() * c.real() + c.imag() * c.imag();
}
}  // namespace

double field_norm_sq(const Cplx3D& f, double dx, double dy, double dz) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += norm_sq(f[i]);
    return s * dx * dy * dz;
}

double field_norm_sq(const Cplx2D& f, double dx, double dy) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += norm_sq(f[i]);
    return s * dx * dy;
}

bool all_finite(const Cplx3D& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag())) return false;
    return true;
}

bool all_finite(const Real2D& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i])) return false;
    return true;
}

}  // namespace gem
