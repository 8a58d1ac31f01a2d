#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "mockrep/representation.hpp"

namespace testing_util {

using namespace mockrep;

inline Field field(int dim, std::function<cplx(const Vec&)> f, std::optional<Box> support = std::nullopt) {
    Field out;
    out.dim = dim;
    out.eval = std::move(f);
    out.support = std::move(support);
    return out;
}

inline Box box(std::initializer_list<double> lo, std::initializer_list<double> hi) { return {vec(lo), vec(hi)}; }

inline Field gaussian(int dim, double r = 6.0) {
    Box b{Vec::Constant(dim, -r), Vec::Constant(dim, r)};
    return field(dim, [](const Vec& x) { return cplx(std::exp(-x.squaredNorm()), 0.0); }, b);
}

// smooth bump supported on (lo, hi)
inline double bump(double x, double lo, double hi) {
    if (x <= lo || x >= hi) return 0.0;
    const double u = (2.0 * x - lo - hi) / (hi - lo);
    return std::pow(1.0 - u * u, 8);
}

}  // namespace testing_util
