#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace gem {

using Complex = std::complex<double>;

/// Dense 2D array over the transverse plane, row-major with x fastest
/// (image convention: index = y*nx + x).
template <class T>
class Field2D {
public:
    Field2D() = default;
    Field2D(int nx, int ny, T init = T{}) : nx_(nx), ny_(ny), v_(std::size_t(nx) * ny, init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return v_.size(); }

    T& at(int x, int y) { return v_[std::size_t(y) * nx_ + x]; }
    const T& at(int x, int y) const { return v_[std::size_t(y) * nx_ + x]; }
    T& operator[](std::size_t i) { return v_[i]; }
    const T& operator[](std::size_t i) const { return v_[i]; }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }

    void fill(T value) { v_.assign(v_.size(), value); }
    bool same_shape(const Field2D& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }
    bool operator==(const Field2D&) const = default;

private:
    int nx_ = 0, ny_ = 0;
    std::vector<T> v_;
};

/// Dense 3D array, transverse-major with z fastest: each (x,y) pixel's
/// z-line is contiguous (index = (y*nx + x)*nz + z), which is what the
/// per-pixel longitudinal solver iterates over.
template <class T>
class Field3D {
public:
    Field3D() = default;
    Field3D(int nx, int ny, int nz, T init = T{})
        : nx_(nx), ny_(ny), nz_(nz), v_(std::size_t(nx) * ny * nz, init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    std::size_t size() const { return v_.size(); }

    T& at(int x, int y, int z) { return v_[pixel_offset(x, y) + z]; }
    const T& at(int x, int y, int z) const { return v_[pixel_offset(x, y) + z]; }
    T& operator[](std::size_t i) { return v_[i]; }
    const T& operator[](std::size_t i) const { return v_[i]; }

    std::size_t pixel_offset(int x, int y) const {
        return (std::size_t(y) * nx_ + x) * nz_;
    }
    T* pixel_line(int x, int y) { return v_.data() + pixel_offset(x, y); }
    const T* pixel_line(int x, int y) const { return v_.data() + pixel_offset(x, y); }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }

    void fill(T value) { v_.assign(v_.size(), value); }
    bool same_shape(const Field3D& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && nz_ == o.nz_;
    }

private:
    int nx_ = 0, ny_ = 0, nz_ = 0;
    std::vector<T> v_;
};

using Real2D = Field2D<double>;
using Cplx2D = Field2D<Complex>;
using Cplx3D = Field3D<Complex>;

/// Integral approximation of the squared norm: sum |f|^2 * dx*dy*dz.
double field_norm_sq(const Cplx3D& f, double dx, double dy, double dz);

/// Same for a 2D intensity/amplitude map: sum |f|^2 * dx*dy.
double field_norm_sq(const Cplx2D& f, double dx, double dy);

bool all_finite(const Cplx3D& f);
bool all_finite(const Real2D& f);

}  // namespace gem
