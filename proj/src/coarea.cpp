#include "mockrep/coarea.hpp"

#include <cmath>

namespace mockrep {

FiberMeasure fiber_quadrature(const SemidirectSystem& sys, const Vec& y, const FiberResolution& res) {
    if (!sys.fiber) throw DomainError("fiber_quadrature: system '" + sys.id + "' has no fiber parametrization");
    if (y.size() != sys.n || (sys.domain_Y && !sys.domain_Y(y))) throw DomainError("fiber_quadrature: y outside Y");
    if (sys.fiber_kind == FiberKind::unbounded && !(res.truncation > 0.0))
        throw ConfigError("fiber_quadrature: unbounded fiber needs a truncation radius");
    if (res.points < 1) throw ConfigError("fiber_quadrature: resolution must be positive");
    return sys.fiber(y, res);
}

FiberMeasure transport_fiber(const SemidirectSystem& sys, const FiberMeasure& fm, const Vec& h) {
    FiberMeasure out;
    out.y = sys.act_n(h, fm.y);
    out.chart_desc = fm.chart_desc + " transported by h";
    const double ab = sys.alpha(h) * sys.beta(h);
    out.nodes.reserve(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i) {
        out.nodes.push_back(sys.act_d(h, fm.nodes[i]));
        out.weights.push_back(ab * fm.weights[i]);
    }
    return out;
}

namespace {

double fiber_integral(const FiberMeasure& fm, const Field& f) {
    std::vector<double> t(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i) t[i] = fm.weights[i] * f(fm.nodes[i]).real();
    return pairwise_sum(t);
}

}  // namespace

CoareaSides coarea_sides(const SemidirectSystem& sys, const Field& f, const QuadRule& xrule, const QuadRule& yrule,
                         const FiberResolution& res) {
    CoareaSides s;
    s.volume = integrate(xrule, [&](const Vec& x) {
        return (!sys.domain_X || sys.domain_X(x)) ? f(x).real() : 0.0;
    });
    std::vector<double> t(yrule.size());
    for (std::size_t k = 0; k < yrule.size(); ++k) {
        const Vec& y = yrule.pts[k];
        t[k] = (sys.domain_Y && !sys.domain_Y(y)) ? 0.0 : yrule.w[k] * fiber_integral(fiber_quadrature(sys, y, res), f);
    }
    s.fibered = pairwise_sum(t);
    return s;
}

double coarea_residual(const SemidirectSystem& sys, const Field& f, const QuadRule& xrule, const QuadRule& yrule,
                       const FiberResolution& res) {
    return coarea_sides(sys, f, xrule, yrule, res).residual();
}

double covariance_residual(const SemidirectSystem& sys, const Vec& y, const Vec& h, const Field& phi,
                           const FiberResolution& res) {
    const Vec hy = sys.act_n(h, y);
    const Vec hinv = sys.h_inverse(h);
    const FiberMeasure moved = fiber_quadrature(sys, hy, res);
    std::vector<cplx> t(moved.size());
    for (std::size_t i = 0; i < moved.size(); ++i) t[i] = moved.weights[i] * phi(sys.act_d(hinv, moved.nodes[i]));
    const cplx lhs = pairwise_sum(t);
    const FiberMeasure base = fiber_quadrature(sys, y, res);
    std::vector<cplx> u(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) u[i] = base.weights[i] * phi(base.nodes[i]);
    const cplx rhs = sys.alpha(h) * sys.beta(h) * pairwise_sum(u);
    return std::abs(lhs - rhs);
}

cplx omega_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const Vec& h,
                   const FiberMeasure& fm) {
    const Vec hinv = sys.h_inverse(h);
    std::vector<cplx> t(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i)
        t[i] = fm.weights[i] * f(fm.nodes[i]) * std::conj(eta(sys.act_d(hinv, fm.nodes[i])));
    return pairwise_sum(t);
}

cplx omega_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const Vec& h, const Vec& y,
                   const FiberResolution& res) {
    return omega_density(sys, f, eta, h, fiber_quadrature(sys, y, res));
}

}  // namespace mockrep
