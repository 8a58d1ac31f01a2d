#include "mockrep/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <gsl/gsl_integration.h>

namespace mockrep {

namespace {

// GSL builds Legendre tables on demand; cache them since grids reuse a handful of orders.
const gsl_integration_glfixed_table* gl_table(int n) {
    struct Deleter {
        void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
    };
    static std::mutex mu;
    static std::map<int, std::unique_ptr<gsl_integration_glfixed_table, Deleter>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot.reset(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)));
    return slot.get();
}

}  // namespace

Rule1D gauss_legendre(int n, double a, double b) {
    if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
    const auto* t = gl_table(n);
    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &r.x[i], &r.w[i], t);
    return r;
}

Rule1D gauss_legendre_panels(int n, int panels, double a, double b) {
    Rule1D r;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) r = concat(r, gauss_legendre(n, a + p * h, a + (p + 1) * h));
    return r;
}

Rule1D periodic_trapezoid(int n, double a, double b, double shift) {
    if (n < 1) throw ConfigError("periodic_trapezoid: need at least one node");
    Rule1D r;
    const double h = (b - a) / n;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(a + (k + shift) * h);
        r.w.push_back(h);
    }
    return r;
}

Rule1D trapezoid(int n, double a, double b) {
    if (n < 2) throw ConfigError("trapezoid: need at least two nodes");
    Rule1D r;
    const double h = (b - a) / (n - 1);
    for (int k = 0; k < n; ++k) {
        r.x.push_back(a + k * h);
        r.w.push_back((k == 0 || k == n - 1) ? 0.5 * h : h);
    }
    return r;
}

Rule1D log_trapezoid(int n, double lo, double hi) {
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("log_trapezoid: need 0 < lo < hi");
    Rule1D s = trapezoid(n, std::log(lo), std::log(hi));
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.x[i] = std::exp(s.x[i]);
        s.w[i] *= s.x[i];
    }
    return s;
}

Rule1D log_gauss(int n, double lo, double hi) {
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("log_gauss: need 0 < lo < hi");
    Rule1D s = gauss_legendre(n, std::log(lo), std::log(hi));
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.x[i] = std::exp(s.x[i]);
        s.w[i] *= s.x[i];
    }
    return s;
}

Rule1D symmetric(const Rule1D& pos) {
    Rule1D r;
    for (std::size_t i = pos.size(); i-- > 0;) {
        r.x.push_back(-pos.x[i]);
        r.w.push_back(pos.w[i]);
    }
    r.x.insert(r.x.end(), pos.x.begin(), pos.x.end());
    r.w.insert(r.w.end(), pos.w.begin(), pos.w.end());
    return r;
}

Rule1D concat(const Rule1D& a, const Rule1D& b) {
    Rule1D r = a;
    r.x.insert(r.x.end(), b.x.begin(), b.x.end());
    r.w.insert(r.w.end(), b.w.begin(), b.w.end());
    return r;
}

QuadRule tensor_rule(const std::vector<Rule1D>& axes) {
    QuadRule q;
    q.dim = static_cast<int>(axes.size());
    q.box.lo = Vec(q.dim);
    q.box.hi = Vec(q.dim);
    std::size_t total = 1;
    for (int k = 0; k < q.dim; ++k) {
        const auto& ax = axes[k];
        if (ax.size() == 0) throw ConfigError("tensor_rule: empty axis");
        total *= ax.size();
        q.box.lo[k] = *std::min_element(ax.x.begin(), ax.x.end());
        q.box.hi[k] = *std::max_element(ax.x.begin(), ax.x.end());
    }
    q.pts.reserve(total);
    q.w.reserve(total);
    std::vector<std::size_t> idx(q.dim, 0);
    for (std::size_t m = 0; m < total; ++m) {
        Vec p(q.dim);
        double w = 1.0;
        for (int k = 0; k < q.dim; ++k) {
            p[k] = axes[k].x[idx[k]];
            w *= axes[k].w[idx[k]];
        }
        q.pts.push_back(p);
        q.w.push_back(w);
        for (int k = q.dim - 1; k >= 0; --k) {
            if (++idx[k] < axes[k].size()) break;
            idx[k] = 0;
        }
    }
    return q;
}

QuadRule tensor_gauss(const Box& box, int n) {
    std::vector<Rule1D> axes;
    for (int k = 0; k < box.dim(); ++k) axes.push_back(gauss_legendre(n, box.lo[k], box.hi[k]));
    QuadRule q = tensor_rule(axes);
    q.box = box;
    return q;
}

QuadRule polar_rule(const Rule1D& radial, int angular) {
    QuadRule q;
    q.dim = 2;
    const Rule1D th = periodic_trapezoid(angular, 0.0, kTwoPi, 0.5);
    double rmax = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
        rmax = std::max(rmax, radial.x[i]);
        for (std::size_t j = 0; j < th.size(); ++j) {
            q.pts.push_back(vec({radial.x[i] * std::cos(th.x[j]), radial.x[i] * std::sin(th.x[j])}));
            q.w.push_back(radial.w[i] * th.w[j] * radial.x[i]);
        }
    }
    q.box = {vec({-rmax, -rmax}), vec({rmax, rmax})};
    return q;
}

QuadRule join(const QuadRule& a, const QuadRule& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    if (a.dim != b.dim) throw ConfigError("join: dimension mismatch");
    QuadRule q = a;
    q.pts.insert(q.pts.end(), b.pts.begin(), b.pts.end());
    q.w.insert(q.w.end(), b.w.begin(), b.w.end());
    q.box.lo = a.box.lo.cwiseMin(b.box.lo);
    q.box.hi = a.box.hi.cwiseMax(b.box.hi);
    return q;
}

double integrate(const QuadRule& q, const std::function<double(const Vec&)>& g) {
    std::vector<double> terms(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) terms[i] = q.w[i] * g(q.pts[i]);
    return pairwise_sum(terms);
}

cplx integrate_c(const QuadRule& q, const std::function<cplx(const Vec&)>& g) {
    std::vector<cplx> terms(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) terms[i] = q.w[i] * g(q.pts[i]);
    return pairwise_sum(terms);
}

double integrate(const Rule1D& q, const std::function<double(double)>& g) {
    std::vector<double> terms(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) terms[i] = q.w[i] * g(q.x[i]);
    return pairwise_sum(terms);
}

}  // namespace mockrep
