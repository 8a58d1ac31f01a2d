#include "mockrep/representation.hpp"

#include <cmath>

namespace mockrep {

Field zero_field(int dim) {
    Field z;
    z.dim = dim;
    z.eval = [](const Vec&) { return cplx{0.0, 0.0}; };
    z.norm = 0.0;
    z.name = "zero";
    return z;
}

Field scaled(const Field& f, cplx c) {
    Field s = f;
    s.eval = [e = f.eval, c](const Vec& x) { return c * e(x); };
    if (f.norm) s.norm = std::abs(c) * *f.norm;
    s.name = f.name + "*c";
    if (f.tensor_eval)
        s.tensor_eval = [te = f.tensor_eval, c](const std::vector<double>& x1, const std::vector<double>& x2,
                                                std::vector<cplx>& out) {
            te(x1, x2, out);
            for (auto& v : out) v *= c;
        };
    return s;
}

void eval_tensor(const Field& f, const std::vector<double>& x1, const std::vector<double>& x2, std::vector<cplx>& out) {
    if (f.tensor_eval) {
        f.tensor_eval(x1, x2, out);
        return;
    }
    out.resize(x1.size() * x2.size());
    for (std::size_t j = 0; j < x2.size(); ++j)
        for (std::size_t i = 0; i < x1.size(); ++i) out[i + x1.size() * j] = f(vec({x1[i], x2[j]}));
}

std::optional<Box> transported_support(const SemidirectSystem& sys, const Vec& h, const Field& f) {
    if (!f.support) return std::nullopt;
    const Box& b = *f.support;
    const int d = b.dim();
    Vec lo = Vec::Constant(d, INFINITY), hi = Vec::Constant(d, -INFINITY);
    // Corners and edge midpoints; exact hull for the affine actions used here.
    const int per = 3;
    int total = 1;
    for (int i = 0; i < d; ++i) total *= per;
    for (int m = 0; m < total; ++m) {
        Vec p(d);
        int r = m;
        for (int i = 0; i < d; ++i) {
            const int k = r % per;
            r /= per;
            p[i] = b.lo[i] + 0.5 * k * (b.hi[i] - b.lo[i]);
        }
        const Vec q = sys.act_d(h, p);
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
    }
    return Box{lo, hi};
}

Field apply_rep(const SemidirectSystem& sys, const GroupElement& g, const Field& f) {
    Field out;
    out.dim = f.dim;
    out.norm = f.norm;
    out.name = "U_g " + f.name;
    out.support = transported_support(sys, g.h, f);
    const Vec hinv = sys.h_inverse(g.h);
    const double scale = 1.0 / std::sqrt(sys.beta(g.h));
    out.eval = [act = sys.act_d, phi = sys.phi, e = f.eval, a = g.a, hinv, scale](const Vec& x) {
        const double ph = -kTwoPi * phi(x).dot(a);
        return scale * cplx(std::cos(ph), std::sin(ph)) * e(act(hinv, x));
    };
    return out;
}

double homomorphism_residual(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2,
                             const Field& f, const std::vector<Vec>& probes) {
    if (probes.empty()) throw PreconditionError("homomorphism_residual: no probe points");
    const Field lhs = apply_rep(sys, compose(sys, g1, g2), f);
    const Field rhs = apply_rep(sys, g1, apply_rep(sys, g2, f));
    double r = 0.0;
    for (const Vec& x : probes) r = std::max(r, std::abs(lhs(x) - rhs(x)));
    return r;
}

double unitarity_residual(const SemidirectSystem& sys, const GroupElement& g, const Field& f, const QuadRule& quad) {
    if (!f.support) throw CoverageError("unitarity_residual: field has no support box");
    const auto moved = transported_support(sys, g.h, f);
    if (!quad.box.contains(*f.support) || !quad.box.contains(*moved))
        throw CoverageError("unitarity_residual: quadrature box does not cover the supports");
    const Field uf = apply_rep(sys, g, f);
    const double a = integrate(quad, [&](const Vec& x) { return std::norm(f(x)); });
    const double b = integrate(quad, [&](const Vec& x) { return std::norm(uf(x)); });
    return std::abs(a - b);
}

}  // namespace mockrep
