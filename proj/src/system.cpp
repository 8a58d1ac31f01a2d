#include "mockrep/system.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mockrep {

double FiberMeasure::mass() const { return pairwise_sum(weights); }

Mat act_n_matrix(const SemidirectSystem& sys, const Vec& h) {
    Mat m(sys.n, sys.n);
    for (int k = 0; k < sys.n; ++k) {
        Vec e = Vec::Zero(sys.n);
        e[k] = 1.0;
        m.col(k) = sys.act_n(h, e);
    }
    return m;
}

Vec contragredient(const SemidirectSystem& sys, const Vec& h, const Vec& a) {
    // <h+[a], y> = <a, h^{-1}[y]>: transpose of the matrix of y -> h^{-1}[y].
    return act_n_matrix(sys, sys.h_inverse(h)).transpose() * a;
}

GroupElement identity(const SemidirectSystem& sys) { return {Vec::Zero(sys.n), sys.h_identity}; }

GroupElement compose(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2) {
    return {g1.a + contragredient(sys, g1.h, g2.a), sys.h_compose(g1.h, g2.h)};
}

GroupElement inverse(const SemidirectSystem& sys, const GroupElement& g) {
    Vec hi = sys.h_inverse(g.h);
    return {-contragredient(sys, hi, g.a), hi};
}

double haar_weight(const SemidirectSystem& sys, const GroupElement& g) {
    return sys.haar_density(g.h) / sys.alpha(g.h);
}

double modular_G(const SemidirectSystem& sys, const GroupElement& g) {
    return sys.delta_H(g.h) / sys.alpha(g.h);
}

double h_dist(const SemidirectSystem& sys, const Vec& h1, const Vec& h2) {
    if (sys.h_distance) return sys.h_distance(h1, h2);
    return (h1 - h2).norm();
}

double g_dist(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2) {
    return std::max((g1.a - g2.a).norm(), h_dist(sys, g1.h, g2.h));
}

double jphi_fd(const SemidirectSystem& sys, const Vec& x) {
    const double step = 1e-6 * (1.0 + x.norm());
    Mat D(sys.n, sys.d);
    for (int k = 0; k < sys.d; ++k) {
        Vec xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        D.col(k) = (sys.phi(xp) - sys.phi(xm)) / (2.0 * step);
    }
    const Mat g = D * D.transpose();
    return std::sqrt(std::max(0.0, g.determinant()));
}

double jphi(const SemidirectSystem& sys, const Vec& x) {
    return sys.jphi ? sys.jphi(x) : jphi_fd(sys, x);
}

bool ValidationReport::pass() const {
    return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.pass; });
}

const ValidationItem* ValidationReport::find(const std::string& name) const {
    for (const auto& i : items)
        if (i.name == name) return &i;
    return nullptr;
}

namespace {

std::string fmt_vec(const Vec& v) {
    std::ostringstream os;
    os.precision(6);
    os << "(";
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

struct Sampler {
    const SemidirectSystem& sys;
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> u01{0.0, 1.0};

    Vec uniform(int dim) {
        Vec u(dim);
        for (int i = 0; i < dim; ++i) u[i] = u01(rng);
        return u;
    }
    Vec h() { return sys.h_sample(uniform(sys.h_dim)); }
    Vec in_box(const Box& b) {
        Vec x(b.dim());
        for (int i = 0; i < b.dim(); ++i) x[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * u01(rng);
        return x;
    }
    Vec x() {
        for (;;) {
            Vec p = in_box(sys.x_box);
            if (!sys.domain_X || sys.domain_X(p)) return p;
        }
    }
    Vec y() { return in_box(Box{Vec::Constant(sys.n, -3.0), Vec::Constant(sys.n, 3.0)}); }
};

// Running maximum with the worst sample recorded.
struct Tracker {
    ValidationItem item;
    void add(double r, const std::string& where) {
        if (!std::isfinite(r) || r > item.max_residual) {
            item.max_residual = std::isfinite(r) ? r : INFINITY;
            item.worst_sample = where;
        }
    }
    ValidationItem done(double tol) {
        item.tolerance = tol;
        item.pass = item.max_residual <= tol;
        return item;
    }
};

// Compactly supported bump (1 - |x-c|^2/r^2)_+^8.
double bump(const Vec& x, const Vec& c, double r) {
    const double s = (x - c).squaredNorm() / (r * r);
    return s >= 1.0 ? 0.0 : std::pow(1.0 - s, 8);
}

// Bounding box of h.(ball(c,r)) from images of boundary samples, padded.
Box image_box(const SemidirectSystem& sys, const Vec& h, const Vec& c, double r) {
    Vec lo = Vec::Constant(sys.d, INFINITY), hi = Vec::Constant(sys.d, -INFINITY);
    auto take = [&](const Vec& p) {
        Vec q = sys.act_d(h, p);
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
    };
    if (sys.d == 1) {
        take(c - vec({r}));
        take(c + vec({r}));
    } else {
        const int m = 256;
        for (int k = 0; k < m; ++k) {
            Vec p = c;
            const double th = kTwoPi * k / m;
            p[0] += r * std::cos(th);
            p[1] += r * std::sin(th);
            take(p);
            if (sys.d > 2) {
                Vec q = c;
                q[sys.d - 1] += r * std::cos(th);
                q[0] += r * std::sin(th);
                take(q);
            }
        }
    }
    Vec pad = 0.02 * (hi - lo) + Vec::Constant(sys.d, 1e-12);
    return {lo - pad, hi + pad};
}

}  // namespace

ValidationReport validate_system(const SemidirectSystem& sys, int sample_budget, const ValidationOptions& opt) {
    if (sample_budget < 1) throw PreconditionError("validate_system: sample_budget must be >= 1");
    Sampler S{sys, std::mt19937_64(opt.seed)};

    Tracker phi_t{{"intertwining"}}, lin_t{{"act_n_linearity"}}, alpha_t{{"alpha_determinant"}},
        beta_t{{"beta_jacobian"}}, assoc_t{{"group_associativity"}}, ident_t{{"group_identity"}},
        inv_t{{"group_inverse"}}, char_t{{"alpha_character"}}, mod_t{{"modular_multiplicative"}};

    for (int s = 0; s < sample_budget; ++s) {
        const Vec h = S.h();
        const Vec x = S.x();

        {
            const Vec lhs = sys.phi(sys.act_d(h, x));
            const Vec rhs = sys.act_n(h, sys.phi(x));
            const double ref = std::max(sys.phi(x).norm(), rhs.norm());
            phi_t.add((lhs - rhs).norm() / (1.0 + ref), "h=" + fmt_vec(h) + " x=" + fmt_vec(x));
        }
        {
            const Vec y1 = S.y(), y2 = S.y();
            const double c = 4.0 * S.u01(S.rng) - 2.0;
            const Vec r = sys.act_n(h, y1 + c * y2) - sys.act_n(h, y1) - c * sys.act_n(h, y2);
            const double ref = sys.act_n(h, y1).norm() + std::abs(c) * sys.act_n(h, y2).norm();
            lin_t.add(r.norm() / (1.0 + ref), "h=" + fmt_vec(h));
        }
        {
            const double det = std::abs(act_n_matrix(sys, sys.h_inverse(h)).determinant());
            const double a = sys.alpha(h);
            alpha_t.add(std::abs(a - det) / (1.0 + a), "h=" + fmt_vec(h));
        }
        {
            const Vec h2 = S.h(), h3 = S.h();
            const Vec l = sys.h_compose(sys.h_compose(h, h2), h3);
            const Vec r = sys.h_compose(h, sys.h_compose(h2, h3));
            assoc_t.add(h_dist(sys, l, r) / (1.0 + l.norm()), "h=" + fmt_vec(h));
            const double a12 = sys.alpha(sys.h_compose(h, h2)), a1a2 = sys.alpha(h) * sys.alpha(h2);
            char_t.add(std::abs(a12 - a1a2) / a1a2, "h=" + fmt_vec(h));
            const GroupElement g1{S.in_box({Vec::Constant(sys.n, -2), Vec::Constant(sys.n, 2)}), h};
            const GroupElement g2{S.in_box({Vec::Constant(sys.n, -2), Vec::Constant(sys.n, 2)}), h2};
            const double m12 = modular_G(sys, compose(sys, g1, g2));
            const double m1m2 = modular_G(sys, g1) * modular_G(sys, g2);
            mod_t.add(std::abs(m12 - m1m2) / m1m2, "h=" + fmt_vec(h));
            const GroupElement g3{S.in_box({Vec::Constant(sys.n, -2), Vec::Constant(sys.n, 2)}), h3};
            const GroupElement gl = compose(sys, compose(sys, g1, g2), g3);
            const GroupElement gr = compose(sys, g1, compose(sys, g2, g3));
            assoc_t.add(g_dist(sys, gl, gr) / (1.0 + gl.a.norm() + gl.h.norm()), "g1.h=" + fmt_vec(h));
        }
        {
            const Vec e = sys.h_identity;
            ident_t.add(std::max(h_dist(sys, sys.h_compose(h, e), h), h_dist(sys, sys.h_compose(e, h), h)) /
                            (1.0 + h.norm()),
                        "h=" + fmt_vec(h));
            inv_t.add(std::max(h_dist(sys, sys.h_compose(h, sys.h_inverse(h)), e),
                               h_dist(sys, sys.h_compose(sys.h_inverse(h), h), e)) /
                          (1.0 + h.norm()),
                      "h=" + fmt_vec(h));
        }
    }

    // Constant Jacobian of h.x, tested on random compactly supported bumps. Each check is a
    // pair of d-dimensional quadratures, so the sample count is capped.
    const int bumps = std::min(sample_budget, 64);
    for (int s = 0; s < bumps; ++s) {
        const Vec h = S.h();
        const Vec c = S.x();
        const double r = 0.2 + 0.8 * S.u01(S.rng);
        const Vec hinv = sys.h_inverse(h);
        const Box hb = image_box(sys, h, c, r);
        const QuadRule ql = tensor_gauss(hb, opt.bump_points);
        const double lhs = integrate(ql, [&](const Vec& x) { return bump(sys.act_d(hinv, x), c, r); });
        const QuadRule qr = tensor_gauss({c.array() - r, c.array() + r}, opt.bump_points);
        const double rhs = integrate(qr, [&](const Vec& x) { return bump(x, c, r); });
        const double b = sys.beta(h);
        beta_t.add(std::abs(lhs - b * rhs) / (b * rhs), "h=" + fmt_vec(h) + " c=" + fmt_vec(c));
    }

    ValidationReport rep;
    rep.items = {phi_t.done(opt.tol),   lin_t.done(opt.tol),    alpha_t.done(opt.tol),
                 beta_t.done(opt.mc_tol), assoc_t.done(opt.tol), ident_t.done(opt.tol),
                 inv_t.done(opt.tol),   char_t.done(opt.tol),   mod_t.done(opt.tol)};
    return rep;
}

}  // namespace mockrep
