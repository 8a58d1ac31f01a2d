#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mockrep/core.hpp"

namespace mockrep {

// One-dimensional rule: sum_i w[i] g(x[i]) ~ integral of g.
struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

Rule1D gauss_legendre(int n, double a, double b);
// Composite Gauss-Legendre: `panels` equal panels of `n` points each.
Rule1D gauss_legendre_panels(int n, int panels, double a, double b);
// Periodic trapezoid: n nodes a + (k + shift) h, weight h = (b-a)/n.
Rule1D periodic_trapezoid(int n, double a, double b, double shift = 0.0);
// Closed trapezoid on [a,b] with n >= 2 nodes (half weights at the ends).
Rule1D trapezoid(int n, double a, double b);
// Nodes log-uniform on [lo,hi] (lo>0); weights integrate dt, i.e. trapezoid in s = log t times t.
Rule1D log_trapezoid(int n, double lo, double hi);
// Gauss-Legendre in s = log t on [log lo, log hi], weights integrate dt.
Rule1D log_gauss(int n, double lo, double hi);
// Mirror a rule on (0,inf)-type support to both signs: nodes -x (reversed) then x.
Rule1D symmetric(const Rule1D& positive);
// Concatenate rules on adjacent intervals.
Rule1D concat(const Rule1D& a, const Rule1D& b);

// d-dimensional rule as a flat list of points.
struct QuadRule {
    int dim = 0;
    std::vector<Vec> pts;
    std::vector<double> w;
    Box box;  // region covered by the rule

    std::size_t size() const { return pts.size(); }
};

QuadRule tensor_rule(const std::vector<Rule1D>& axes);
QuadRule tensor_gauss(const Box& box, int points_per_axis);
// Polar rule in the plane: radial rule (in r >= 0) times periodic angular trapezoid;
// weights include the Jacobian r.
QuadRule polar_rule(const Rule1D& radial, int angular);
// Concatenation of two rules of equal dimension (disjoint pieces of one region).
QuadRule join(const QuadRule& a, const QuadRule& b);

// Pairwise (cascade) summation; deterministic for a fixed input order.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.size() <= 16) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t m = v.size() / 2;
    return pairwise_sum(v.first(m)) + pairwise_sum(v.subspan(m));
}
template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

double integrate(const QuadRule& q, const std::function<double(const Vec&)>& g);
cplx integrate_c(const QuadRule& q, const std::function<cplx(const Vec&)>& g);
double integrate(const Rule1D& q, const std::function<double(double)>& g);

}  // namespace mockrep
