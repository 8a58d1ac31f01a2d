#include "mockrep/orbit.hpp"

#include <cmath>

#include "mockrep/parallel.hpp"

namespace mockrep {

const OrbitMetadata& orbit_meta(const SemidirectSystem& sys) {
    if (!sys.orbit_meta) throw UnsupportedSystem("system '" + sys.id + "' carries no orbit metadata");
    return *sys.orbit_meta;
}

namespace {

// Bounding box of g over a (2m+1)^dim grid of `b`, padded by 2% of its extent.
Box sampled_image(const Box& b, const std::function<Vec(const Vec&)>& g, int m = 8) {
    const int dim = b.dim();
    const int per = 2 * m + 1;
    int total = 1;
    for (int i = 0; i < dim; ++i) total *= per;
    Vec lo, hi;
    for (int k = 0; k < total; ++k) {
        Vec p(dim);
        int r = k;
        for (int i = 0; i < dim; ++i) {
            p[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * (r % per) / double(per - 1);
            r /= per;
        }
        const Vec q = g(p);
        if (k == 0) {
            lo = q;
            hi = q;
        } else {
            lo = lo.cwiseMin(q);
            hi = hi.cwiseMax(q);
        }
    }
    const Vec pad = 0.02 * (hi - lo);
    return {lo - pad, hi + pad};
}

double tau_integral(const OrbitMetadata& meta, int z, const Box& window, int points,
                    const std::function<double(const Vec&)>& g) {
    const QuadRule q = meta.tau_quadrature(z, points, window);
    return parallel_sum<double>(q.size(), [&](std::size_t i) { return q.w[i] * g(q.pts[i]); });
}

void check_label(const OrbitMetadata& meta, int z) {
    if (z < 0 || z >= meta.num_orbits) throw DomainError("orbit label out of range");
}

}  // namespace

std::optional<double> stabilizer_volume(const SemidirectSystem& sys, int z, const Field& probe,
                                        const StabilizerVolumeOptions& opt) {
    const OrbitMetadata& meta = orbit_meta(sys);
    check_label(meta, z);
    if (meta.stabilizer(z).kind == StabilizerKind::noncompact) return std::nullopt;
    if (!sys.h_rule) throw UnsupportedSystem("stabilizer_volume: system has no H quadrature");

    const Vec y0 = meta.origin(z);
    const QuadRule hq = sys.h_rule(opt.h_points);
    const QuadRule tq = meta.tau_quadrature(z, opt.tau_points, sys.y_box);
    auto value = [&](const Vec& y) {
        const cplx v = probe(y);
        if (!(v.real() > 0.0) || v.imag() != 0.0)
            throw PreconditionError("stabilizer_volume: probe must be strictly positive");
        return v.real();
    };
    for (const Vec& y : tq.pts) value(y);

    const std::vector<double> num_terms = parallel_map<double>(hq.size(), [&](std::size_t i) {
        const Vec& h = hq.pts[i];
        const double p = probe(sys.act_n(h, y0)).real();
        return hq.w[i] * sys.haar_density(h) * p / sys.alpha(h);
    });
    for (std::size_t i = 0; i < hq.size(); ++i)
        if (!(num_terms[i] >= 0.0)) throw PreconditionError("stabilizer_volume: probe must be strictly positive");
    const double num = pairwise_sum(num_terms);
    const double den =
        pairwise_sum(parallel_map<double>(tq.size(), [&](std::size_t i) { return tq.w[i] * value(tq.pts[i]); }));
    return num / den;
}

std::optional<double> stabilizer_volume_at(const SemidirectSystem& sys, const Vec& y, const Field& probe,
                                           const StabilizerVolumeOptions& opt) {
    const OrbitMetadata& meta = orbit_meta(sys);
    const auto v = stabilizer_volume(sys, meta.orbit_label(y), probe, opt);
    if (!v) return v;
    const Vec h = meta.section_h(y);
    return *v / (sys.delta_H(h) / sys.alpha(h));
}

double weil_residual(const SemidirectSystem& sys, int z, const Field& phi, const WeilOptions& opt) {
    const OrbitMetadata& meta = orbit_meta(sys);
    check_label(meta, z);
    if (!phi.support) throw PreconditionError("weil_residual: phi needs a support box on the H chart");
    const StabilizerInfo st = meta.stabilizer(z);
    if (st.kind == StabilizerKind::noncompact && !(opt.stabilizer_truncation && *opt.stabilizer_truncation > 0.0))
        throw ConfigError("weil_residual: noncompact stabilizer needs a truncation");

    const QuadRule hq = tensor_gauss(*phi.support, opt.h_points);
    const double lhs = parallel_sum<double>(hq.size(), [&](std::size_t i) {
        const Vec& h = hq.pts[i];
        return hq.w[i] * sys.haar_density(h) * phi(h).real() / sys.alpha(h);
    });

    Rule1D srule;
    if (st.kind == StabilizerKind::compact) {
        srule = st.periodic ? periodic_trapezoid(opt.stabilizer_points, st.param_lo, st.param_hi)
                            : gauss_legendre(opt.stabilizer_points, st.param_lo, st.param_hi);
    } else if (st.kind == StabilizerKind::noncompact) {
        const double T = *opt.stabilizer_truncation;
        srule = gauss_legendre(opt.stabilizer_points, -T, T);
    }
    auto fiber_over_stabilizer = [&](const Vec& y) {
        const Vec hy = meta.section_h(y);
        if (st.kind == StabilizerKind::trivial) return st.haar * phi(hy).real();
        std::vector<double> t(srule.size());
        for (std::size_t k = 0; k < srule.size(); ++k)
            t[k] = srule.w[k] * phi(sys.h_compose(hy, st.embed(srule.x[k]))).real();
        return st.haar * pairwise_sum(t);
    };
    const Vec y0 = meta.origin(z);
    const Box window = sampled_image(*phi.support, [&](const Vec& h) { return sys.act_n(h, y0); });
    const double rhs = tau_integral(meta, z, window, opt.tau_points, fiber_over_stabilizer);
    return std::abs(lhs - rhs);
}

double mackey_residual(const SemidirectSystem& sys, const Field& psi, int y_points, int tau_points) {
    const OrbitMetadata& meta = orbit_meta(sys);
    const QuadRule yq = tensor_gauss(sys.y_box, y_points);
    const double lhs = parallel_sum<double>(yq.size(), [&](std::size_t i) {
        const Vec& y = yq.pts[i];
        return (sys.domain_Y && !sys.domain_Y(y)) ? 0.0 : yq.w[i] * psi(y).real();
    });
    std::vector<double> parts(meta.num_orbits);
    for (int z = 0; z < meta.num_orbits; ++z)
        parts[z] = meta.lambda[z] * tau_integral(meta, z, sys.y_box, tau_points, [&](const Vec& y) {
                       return psi(y).real();
                   });
    return std::abs(lhs - pairwise_sum(parts));
}

double tau_invariance_residual(const SemidirectSystem& sys, int z, const Field& psi, const Vec& h, int tau_points) {
    const OrbitMetadata& meta = orbit_meta(sys);
    check_label(meta, z);
    const Box base = psi.support ? *psi.support : sys.y_box;
    const Box moved = sampled_image(base, [&](const Vec& y) { return sys.act_n(h, y); }, 1);
    const Vec hinv = sys.h_inverse(h);
    const double lhs =
        tau_integral(meta, z, moved, tau_points, [&](const Vec& y) { return psi(sys.act_n(hinv, y)).real(); });
    const double rhs = tau_integral(meta, z, base, tau_points, [&](const Vec& y) { return psi(y).real(); });
    return std::abs(lhs - rhs / sys.alpha(h));
}

double mu_z_residual(const SemidirectSystem& sys, int z, const Field& phi, const Vec& h, const MuOptions& opt) {
    const OrbitMetadata& meta = orbit_meta(sys);
    check_label(meta, z);
    const Vec hinv = sys.h_inverse(h);
    Box base_win = sys.y_box, moved_win = sys.y_box;
    if (phi.support) {
        base_win = sampled_image(*phi.support, sys.phi);
        moved_win = sampled_image(*transported_support(sys, h, phi), sys.phi);
    }
    auto mu_integral = [&](const Box& window, const std::function<double(const Vec&)>& g) {
        return tau_integral(meta, z, window, opt.tau_points, [&](const Vec& y) {
            const FiberMeasure fm = fiber_quadrature(sys, y, opt.fiber);
            std::vector<double> t(fm.size());
            for (std::size_t i = 0; i < fm.size(); ++i) t[i] = fm.weights[i] * g(fm.nodes[i]);
            return pairwise_sum(t);
        });
    };
    const double lhs = mu_integral(moved_win, [&](const Vec& x) { return phi(sys.act_d(hinv, x)).real(); });
    const double rhs = mu_integral(base_win, [&](const Vec& x) { return phi(x).real(); });
    return std::abs(lhs - sys.beta(h) * rhs);
}

double section_residual(const SemidirectSystem& sys, const Vec& y) {
    const OrbitMetadata& meta = orbit_meta(sys);
    const Vec o = meta.origin(meta.orbit_label(y));
    return (sys.act_n(meta.section_h(y), o) - y).norm();
}

}  // namespace mockrep
