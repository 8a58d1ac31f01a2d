#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mockrep {

using cplx = std::complex<double>;

// Small fixed-capacity vectors: every chart and ground space here has dimension <= 4,
// so these never touch the heap.
inline constexpr int kMaxDim = 4;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline Vec vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct ParameterError : Error {
    using Error::Error;
};
struct UnsupportedSystem : Error {
    using Error::Error;
};
struct CoverageError : Error {
    using Error::Error;
};

// Axis-aligned box in some chart.
struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Vec& x) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    bool contains(const Box& b) const { return contains(b.lo) && contains(b.hi); }
};

}  // namespace mockrep
