#include "mockrep/examples.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace mockrep {

namespace {

double wrap_angle(double th) {
    double r = std::fmod(th, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double angle_gap(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

Box box1(double lo, double hi) { return {vec({lo}), vec({hi})}; }
Box box2(double a, double b, double c, double d) { return {vec({a, c}), vec({b, d})}; }

// GL on the window clipped to (0, inf) or to (-inf, 0).
QuadRule half_line_rule(int points, const Box& window, bool positive) {
    const double lo = positive ? std::max(window.lo[0], 0.0) : window.lo[0];
    const double hi = positive ? window.hi[0] : std::min(window.hi[0], 0.0);
    QuadRule q;
    q.dim = 1;
    q.box = box1(lo, hi);
    if (!(hi > lo)) return q;
    const Rule1D r = gauss_legendre(points, lo, hi);
    for (std::size_t i = 0; i < r.size(); ++i) {
        q.pts.push_back(vec({r.x[i]}));
        q.w.push_back(r.w[i]);
    }
    return q;
}

double parse_gamma(const std::map<std::string, double>& params) {
    const auto it = params.find("gamma");
    const double g = it == params.end() ? 0.5 : it->second;
    if (!(g > 0.0) || !std::isfinite(g)) throw ParameterError("shearlet: gamma must be a positive number");
    return g;
}

void reject_unknown(const std::map<std::string, double>& params, const std::vector<std::string>& known,
                    const std::string& id) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const auto& n : known) ok = ok || n == k;
        if (!ok) throw ParameterError(id + ": unknown parameter '" + k + "'");
    }
}

// ---------------------------------------------------------------- wavelet1d

SemidirectSystem wavelet1d() {
    SemidirectSystem s;
    s.id = "wavelet1d";
    s.n = s.d = s.h_dim = 1;
    s.act_n = [](const Vec& h, const Vec& y) { return Vec(y / h[0]); };
    s.act_d = [](const Vec& h, const Vec& x) { return Vec(x / h[0]); };
    s.alpha = [](const Vec& h) { return h[0]; };
    s.beta = [](const Vec& h) { return 1.0 / h[0]; };
    s.delta_H = [](const Vec&) { return 1.0; };
    s.haar_density = [](const Vec& h) { return 1.0 / h[0]; };
    s.h_compose = [](const Vec& a, const Vec& b) { return vec({a[0] * b[0]}); };
    s.h_inverse = [](const Vec& h) { return vec({1.0 / h[0]}); };
    s.h_identity = vec({1.0});
    s.h_distance = [](const Vec& a, const Vec& b) { return std::abs(std::log(a[0] / b[0])); };
    s.phi = [](const Vec& x) { return x; };
    s.jphi = [](const Vec&) { return 1.0; };
    s.domain_X = [](const Vec& x) { return x[0] != 0.0; };
    s.domain_Y = [](const Vec& y) { return y[0] != 0.0; };
    s.fiber_kind = FiberKind::finite;
    s.fiber = [](const Vec& y, const FiberResolution&) {
        FiberMeasure fm;
        fm.y = y;
        fm.nodes = {y};
        fm.weights = {1.0};
        fm.chart_desc = "point {y}";
        return fm;
    };
    s.phi_degree = 1;
    s.linear_action = true;
    s.x_box = box1(-4, 4);
    s.y_box = box1(-40, 40);
    s.h_sample = [](const Vec& u) { return vec({std::exp(std::log(8.0) * (2.0 * u[0] - 1.0))}); };
    s.h_rule = [](int points) {
        const Rule1D r = log_gauss(points, 1e-2, 1e12);
        return tensor_rule({r});
    };

    OrbitMetadata m;
    m.num_orbits = 2;
    m.labels = {"+", "-"};
    m.orbit_label = [](const Vec& y) { return y[0] > 0.0 ? 0 : 1; };
    m.origin = [](int z) { return vec({z == 0 ? 1.0 : -1.0}); };
    m.section_h = [](const Vec& y) { return vec({1.0 / std::abs(y[0])}); };
    m.stabilizer = [](int) {
        StabilizerInfo st;
        st.kind = StabilizerKind::trivial;
        st.desc = "{e}";
        return st;
    };
    m.tau_quadrature = [](int z, int points, const Box& w) { return half_line_rule(points, w, z == 0); };
    m.lambda = {1.0, 1.0};
    s.orbit_meta = m;
    return s;
}

// ---------------------------------------------------------------- heisenberg

SemidirectSystem heisenberg() {
    SemidirectSystem s;
    s.id = "heisenberg";
    s.n = 2;
    s.d = 1;
    s.h_dim = 1;
    // h = q acts by translation; on the normal factor (p, t) -> (p - q t, t).
    s.act_n = [](const Vec& h, const Vec& y) { return vec({y[0] - h[0] * y[1], y[1]}); };
    s.act_d = [](const Vec& h, const Vec& x) { return vec({x[0] + h[0]}); };
    s.alpha = [](const Vec&) { return 1.0; };
    s.beta = [](const Vec&) { return 1.0; };
    s.delta_H = [](const Vec&) { return 1.0; };
    s.haar_density = [](const Vec&) { return 1.0; };
    s.h_compose = [](const Vec& a, const Vec& b) { return vec({a[0] + b[0]}); };
    s.h_inverse = [](const Vec& h) { return vec({-h[0]}); };
    s.h_identity = vec({0.0});
    s.phi = [](const Vec& x) { return vec({-x[0], 1.0}); };
    s.jphi = [](const Vec&) { return 0.0; };  // rank 1 < n everywhere
    s.domain_X = [](const Vec&) { return true; };
    s.x_box = box1(-4, 4);
    s.y_box = box2(-4, 4, -4, 4);
    s.h_sample = [](const Vec& u) { return vec({8.0 * u[0] - 4.0}); };
    return s;
}

// ---------------------------------------------------------------- shearlet

SemidirectSystem shearlet(double g) {
    SemidirectSystem s;
    s.id = "shearlet";
    s.params["gamma"] = g;
    s.n = s.d = s.h_dim = 2;
    // h = (l, t), t > 0. h[y] = (y1/t, -l y1/t + t^{-g} y2) and h.x = M x with
    // M = [[t^{-1/2}, 0], [-l t^{-1/2}, t^{1/2-g}]], so that Phi(h.x) = h[Phi(x)].
    s.act_n = [g](const Vec& h, const Vec& y) {
        const double l = h[0], t = h[1];
        return vec({y[0] / t, -l * y[0] / t + std::pow(t, -g) * y[1]});
    };
    s.act_d = [g](const Vec& h, const Vec& x) {
        const double l = h[0], t = h[1], r = 1.0 / std::sqrt(t);
        return vec({r * x[0], -l * r * x[0] + std::pow(t, 0.5 - g) * x[1]});
    };
    s.alpha = [g](const Vec& h) { return std::pow(h[1], 1.0 + g); };
    s.beta = [g](const Vec& h) { return std::pow(h[1], -g); };
    s.delta_H = [g](const Vec& h) { return std::pow(h[1], g - 1.0); };
    s.haar_density = [g](const Vec& h) { return std::pow(h[1], g - 2.0); };
    s.h_compose = [g](const Vec& a, const Vec& b) {
        return vec({a[0] + std::pow(a[1], 1.0 - g) * b[0], a[1] * b[1]});
    };
    s.h_inverse = [g](const Vec& h) { return vec({-h[0] * std::pow(h[1], g - 1.0), 1.0 / h[1]}); };
    s.h_identity = vec({0.0, 1.0});
    s.h_distance = [](const Vec& a, const Vec& b) {
        return std::max(std::abs(a[0] - b[0]), std::abs(std::log(a[1] / b[1])));
    };
    s.phi = [](const Vec& x) { return vec({-0.5 * x[0] * x[0], -0.5 * x[0] * x[1]}); };
    s.jphi = [](const Vec& x) { return 0.5 * x[0] * x[0]; };
    s.domain_X = [](const Vec& x) { return x[0] != 0.0; };
    s.domain_Y = [](const Vec& y) { return y[0] < 0.0; };
    s.fiber_kind = FiberKind::finite;
    s.fiber = [](const Vec& y, const FiberResolution&) {
        FiberMeasure fm;
        fm.y = y;
        const double x1 = std::sqrt(-2.0 * y[0]);
        const double w = 1.0 / (-y[0]);
        fm.nodes = {vec({x1, -2.0 * y[1] / x1}), vec({-x1, 2.0 * y[1] / x1})};
        fm.weights = {w, w};
        fm.chart_desc = "two points (+-sqrt(-2 y1), -2 y2 / x1)";
        return fm;
    };
    s.phi_degree = 2;
    s.linear_action = true;
    s.x_box = box2(-3, 3, -3, 3);
    s.y_box = box2(-40, 0, -40, 40);
    s.h_sample = [](const Vec& u) { return vec({4.0 * u[0] - 2.0, std::exp(std::log(4.0) * (2.0 * u[1] - 1.0))}); };
    // h[y0] = (-1/(2t), l/(2t)): for each t the shear range follows |y2| <= 40.
    s.h_rule = [](int points) {
        QuadRule q;
        q.dim = 2;
        const Rule1D tr = log_gauss(points, 1.0 / 80.0, 1e8);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const double t = tr.x[i];
            const Rule1D lr = gauss_legendre(points, -80.0 * t, 80.0 * t);
            for (std::size_t j = 0; j < lr.size(); ++j) {
                q.pts.push_back(vec({lr.x[j], t}));
                q.w.push_back(tr.w[i] * lr.w[j]);
            }
        }
        q.box = box2(-80e8, 80e8, 1.0 / 80.0, 1e8);
        return q;
    };

    OrbitMetadata m;
    m.num_orbits = 1;
    m.labels = {"y1<0"};
    m.orbit_label = [](const Vec&) { return 0; };
    m.origin = [](int) { return vec({-0.5, 0.0}); };
    m.section_h = [](const Vec& y) { return vec({-y[1] / y[0], -0.5 / y[0]}); };
    m.stabilizer = [](int) {
        StabilizerInfo st;
        st.kind = StabilizerKind::trivial;
        st.desc = "{e}";
        // alpha(h^{-1}) dh = 4 dy under h -> h[y0]
        st.haar = 4.0;
        return st;
    };
    m.tau_quadrature = [](int, int points, const Box& w) {
        const double hi1 = std::min(w.hi[0], 0.0);
        QuadRule q;
        q.dim = 2;
        q.box = box2(w.lo[0], hi1, w.lo[1], w.hi[1]);
        if (!(hi1 > w.lo[0])) return q;
        return tensor_gauss(q.box, points);
    };
    m.lambda = {1.0};
    s.orbit_meta = m;
    return s;
}

// ---------------------------------------------------------------- dilrot2d

SemidirectSystem dilrot2d() {
    SemidirectSystem s;
    s.id = "dilrot2d";
    s.n = 1;
    s.d = 2;
    s.h_dim = 2;
    // h = (t, theta): h.x = t R_theta x, h[y] = t^2 y.
    s.act_n = [](const Vec& h, const Vec& y) { return Vec(h[0] * h[0] * y); };
    s.act_d = [](const Vec& h, const Vec& x) {
        const double c = std::cos(h[1]), sn = std::sin(h[1]), t = h[0];
        return vec({t * (c * x[0] - sn * x[1]), t * (sn * x[0] + c * x[1])});
    };
    s.alpha = [](const Vec& h) { return 1.0 / (h[0] * h[0]); };
    s.beta = [](const Vec& h) { return h[0] * h[0]; };
    s.delta_H = [](const Vec&) { return 1.0; };
    s.haar_density = [](const Vec& h) { return 1.0 / (kTwoPi * h[0]); };
    s.h_compose = [](const Vec& a, const Vec& b) { return vec({a[0] * b[0], wrap_angle(a[1] + b[1])}); };
    s.h_inverse = [](const Vec& h) { return vec({1.0 / h[0], wrap_angle(-h[1])}); };
    s.h_identity = vec({1.0, 0.0});
    s.h_distance = [](const Vec& a, const Vec& b) {
        return std::max(std::abs(std::log(a[0] / b[0])), angle_gap(a[1], b[1]));
    };
    s.phi = [](const Vec& x) { return vec({x.squaredNorm()}); };
    s.jphi = [](const Vec& x) { return 2.0 * x.norm(); };
    s.domain_X = [](const Vec& x) { return x.squaredNorm() > 0.0; };
    s.domain_Y = [](const Vec& y) { return y[0] > 0.0; };
    s.fiber_kind = FiberKind::compact;
    s.fiber = [](const Vec& y, const FiberResolution& res) {
        FiberMeasure fm;
        fm.y = y;
        const double r = std::sqrt(y[0]);
        // arc length r dxi divided by J(Phi) = 2r
        const Rule1D a = periodic_trapezoid(res.points, 0.0, kTwoPi);
        for (std::size_t k = 0; k < a.size(); ++k) {
            fm.nodes.push_back(vec({r * std::cos(a.x[k]), r * std::sin(a.x[k])}));
            fm.weights.push_back(0.5 * a.w[k]);
        }
        fm.chart_desc = "circle radius sqrt(y), periodic trapezoid in the angle";
        return fm;
    };
    s.phi_degree = 2;
    s.linear_action = true;
    s.x_box = box2(-3, 3, -3, 3);
    s.y_box = box1(0, 60);
    s.h_sample = [](const Vec& u) { return vec({std::exp(std::log(4.0) * (2.0 * u[0] - 1.0)), kTwoPi * u[1]}); };
    s.h_rule = [](int points) {
        return tensor_rule({log_gauss(points, 1e-6, std::sqrt(60.0)), periodic_trapezoid(std::min(points, 64), 0.0, kTwoPi)});
    };

    OrbitMetadata m;
    m.num_orbits = 1;
    m.labels = {"y>0"};
    m.orbit_label = [](const Vec&) { return 0; };
    m.origin = [](int) { return vec({1.0}); };
    m.section_h = [](const Vec& y) { return vec({std::sqrt(y[0]), 0.0}); };
    m.stabilizer = [](int) {
        StabilizerInfo st;
        st.kind = StabilizerKind::compact;
        st.desc = "rotations T";
        st.embed = [](double th) { return vec({1.0, wrap_angle(th)}); };
        st.param_lo = 0.0;
        st.param_hi = kTwoPi;
        st.haar = 1.0 / (2.0 * kTwoPi);  // dtheta / 4pi
        st.periodic = true;
        return st;
    };
    m.tau_quadrature = [](int, int points, const Box& w) { return half_line_rule(points, w, true); };
    m.lambda = {1.0};
    s.orbit_meta = m;
    return s;
}

// ---------------------------------------------------------------- transdil2d

SemidirectSystem transdil2d() {
    SemidirectSystem s;
    s.id = "transdil2d";
    s.n = 1;
    s.d = 2;
    s.h_dim = 2;
    // h = (t, b), t != 0: h.x = (x1 + b, t x2), h[y] = t y.
    s.act_n = [](const Vec& h, const Vec& y) { return Vec(h[0] * y); };
    s.act_d = [](const Vec& h, const Vec& x) { return vec({x[0] + h[1], h[0] * x[1]}); };
    s.alpha = [](const Vec& h) { return 1.0 / std::abs(h[0]); };
    s.beta = [](const Vec& h) { return std::abs(h[0]); };
    s.delta_H = [](const Vec&) { return 1.0; };
    s.haar_density = [](const Vec& h) { return 1.0 / std::abs(h[0]); };
    s.h_compose = [](const Vec& a, const Vec& b) { return vec({a[0] * b[0], a[1] + b[1]}); };
    s.h_inverse = [](const Vec& h) { return vec({1.0 / h[0], -h[1]}); };
    s.h_identity = vec({1.0, 0.0});
    s.h_distance = [](const Vec& a, const Vec& b) {
        if ((a[0] > 0) != (b[0] > 0)) return std::numeric_limits<double>::infinity();
        return std::max(std::abs(std::log(a[0] / b[0])), std::abs(a[1] - b[1]));
    };
    s.phi = [](const Vec& x) { return vec({x[1]}); };
    s.jphi = [](const Vec&) { return 1.0; };
    s.domain_X = [](const Vec& x) { return x[1] != 0.0; };
    s.domain_Y = [](const Vec& y) { return y[0] != 0.0; };
    s.fiber_kind = FiberKind::unbounded;
    s.fiber = [](const Vec& y, const FiberResolution& res) {
        FiberMeasure fm;
        fm.y = y;
        const Rule1D r = gauss_legendre(res.points, -res.truncation, res.truncation);
        for (std::size_t k = 0; k < r.size(); ++k) {
            fm.nodes.push_back(vec({r.x[k], y[0]}));
            fm.weights.push_back(r.w[k]);
        }
        fm.chart_desc = "line x2 = y, Gauss-Legendre on |x1| <= R";
        return fm;
    };
    s.phi_degree = 1;
    s.linear_action = false;
    s.x_box = box2(-3, 3, -3, 3);
    s.y_box = box1(-40, 40);
    s.h_sample = [](const Vec& u) {
        const double v = 2.0 * u[0] - 1.0;
        const double t = std::exp(std::log(4.0) * (2.0 * std::abs(v) - 1.0));
        return vec({v < 0 ? -t : t, 4.0 * u[1] - 2.0});
    };
    s.h_rule = [](int points) {
        return tensor_rule({symmetric(log_gauss(points, 1e-6, 1e3)), gauss_legendre(points, -20.0, 20.0)});
    };

    OrbitMetadata m;
    m.num_orbits = 1;
    m.labels = {"y!=0"};
    m.orbit_label = [](const Vec&) { return 0; };
    m.origin = [](int) { return vec({1.0}); };
    m.section_h = [](const Vec& y) { return vec({y[0], 0.0}); };
    m.stabilizer = [](int) {
        StabilizerInfo st;
        st.kind = StabilizerKind::noncompact;
        st.desc = "translations {(1, b)} = R";
        st.embed = [](double b) { return vec({1.0, b}); };
        st.param_lo = -INFINITY;
        st.param_hi = INFINITY;
        st.haar = 1.0;  // db
        return st;
    };
    m.tau_quadrature = [](int, int points, const Box& w) {
        return join(half_line_rule(points, w, false), half_line_rule(points, w, true));
    };
    m.lambda = {1.0};
    s.orbit_meta = m;
    return s;
}

Field make_field(int dim, std::function<cplx(const Vec&)> f, Box support, std::optional<double> norm,
                 std::string name) {
    Field out;
    out.dim = dim;
    out.eval = std::move(f);
    out.support = std::move(support);
    out.norm = norm;
    out.name = std::move(name);
    return out;
}

}  // namespace

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids{"wavelet1d", "heisenberg", "shearlet", "dilrot2d", "transdil2d"};
    return ids;
}

SemidirectSystem build_example(const std::string& id, const std::map<std::string, double>& params) {
    if (id == "shearlet") {
        reject_unknown(params, {"gamma"}, id);
        return shearlet(parse_gamma(params));
    }
    reject_unknown(params, {}, id);
    if (id == "wavelet1d") return wavelet1d();
    if (id == "heisenberg") return heisenberg();
    if (id == "dilrot2d") return dilrot2d();
    if (id == "transdil2d") return transdil2d();
    throw ConfigError("unknown system '" + id + "'");
}

Field wavelet_eta() {
    return make_field(
        1, [](const Vec& x) { return cplx(2.0 * std::abs(x[0]) * std::exp(-x[0] * x[0]), 0.0); }, box1(-7, 7),
        std::sqrt(std::sqrt(kPi / 2.0)), "eta_wavelet");
}

Field heisenberg_gaussian() {
    return make_field(
        1, [](const Vec& x) { return cplx(std::pow(2.0, 0.25) * std::exp(-kPi * x[0] * x[0]), 0.0); }, box1(-4, 4),
        1.0, "gaussian_unit");
}

Field shearlet_indicator_eta(double gamma) {
    (void)gamma;  // the frequency-side construction does not involve gamma
    Field f = make_field(
        2,
        [](const Vec& x) {
            const double a = std::abs(x[0]);
            const bool in = a >= std::sqrt(2.0) && a <= 2.0 && x[1] <= 0.0 && x[1] >= -2.0 / a;
            return cplx(in ? a : 0.0, 0.0);
        },
        box2(-2, 2, -std::sqrt(2.0), 0), 2.0, "eta_shearlet_indicator");
    // Exact rule on the support: x1 in [sqrt2, 2] (both signs), x2 in [-2/|x1|, 0].
    QuadRule q;
    q.dim = 2;
    q.box = *f.support;
    const int m = 48;
    const Rule1D r1 = gauss_legendre(m, std::sqrt(2.0), 2.0);
    for (int sgn : {1, -1})
        for (std::size_t i = 0; i < r1.size(); ++i) {
            const double a = r1.x[i];
            const Rule1D r2 = gauss_legendre(m, -2.0 / a, 0.0);
            for (std::size_t j = 0; j < r2.size(); ++j) {
                q.pts.push_back(vec({sgn * a, r2.x[j]}));
                q.w.push_back(r1.w[i] * r2.w[j]);
            }
        }
    f.support_rule = std::move(q);
    return f;
}

Field dilrot_eta(int band) {
    const double c = 2.0 / std::sqrt(kPi);
    // |eta|^2 integrates to (2 band + 1) * 2pi * int 4 r^3 e^{-2r^2} / pi dr = 2 band + 1.
    return make_field(
        2,
        [c, band](const Vec& x) {
            const double r = x.norm();
            const double xi = std::atan2(x[1], x[0]);
            double d = 1.0;
            for (int k = 1; k <= band; ++k) d += 2.0 * std::cos(k * xi);
            return cplx(c * r * std::exp(-r * r) * d, 0.0);
        },
        box2(-7, 7, -7, 7), std::sqrt(2.0 * band + 1.0), "eta_dilrot_band" + std::to_string(band));
}

double transdil_sigma(double w) { return std::exp(-0.5 * w * w); }

double transdil_etahat(double y, double w) {
    const double s = transdil_sigma(w);
    return std::sqrt(std::abs(y) * std::exp(-y * y / (2.0 * s * s)) / (std::sqrt(kTwoPi) * s));
}

Field transdil_eta(double dw, double w_max) {
    // etahat is even in w, so the inverse transform is a cosine sum.
    const Rule1D r = trapezoid(static_cast<int>(std::lround(2.0 * w_max / dw)) + 1, -w_max, w_max);
    // ||eta||^2 = int int etahat^2 dy dw = int 2 s / sqrt(2 pi) dw = 2
    Field f = make_field(
        2,
        [r](const Vec& x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < r.size(); ++k)
                acc += r.w[k] * transdil_etahat(x[1], r.x[k]) * std::cos(kTwoPi * r.x[k] * x[0]);
            return cplx(acc, 0.0);
        },
        box2(-12, 12, -10, 10), std::sqrt(2.0), "eta_transdil");
    // Separable in (xi, w) x (y, w): one matrix product per grid.
    f.tensor_eval = [r](const std::vector<double>& x1, const std::vector<double>& x2, std::vector<cplx>& out) {
        const auto K = static_cast<Eigen::Index>(r.size());
        Eigen::MatrixXd C(static_cast<Eigen::Index>(x1.size()), K), E(K, static_cast<Eigen::Index>(x2.size()));
        for (Eigen::Index k = 0; k < K; ++k) {
            for (std::size_t i = 0; i < x1.size(); ++i)
                C(static_cast<Eigen::Index>(i), k) = r.w[k] * std::cos(kTwoPi * r.x[k] * x1[i]);
            for (std::size_t j = 0; j < x2.size(); ++j)
                E(k, static_cast<Eigen::Index>(j)) = transdil_etahat(x2[j], r.x[k]);
        }
        const Eigen::MatrixXd V = C * E;
        out.resize(x1.size() * x2.size());
        for (Eigen::Index j = 0; j < V.cols(); ++j)
            for (Eigen::Index i = 0; i < V.rows(); ++i) out[i + V.rows() * j] = cplx(V(i, j), 0.0);
    };
    return f;
}

Field example_field(const SemidirectSystem& sys, const std::string& name) {
    if (name == "zero") return zero_field(sys.d);
    if (name == "half_eta") return scaled(example_field(sys, "eta"), 0.5);
    if (name == "gaussian") {
        const double nrm = std::pow(kPi / 2.0, 0.25 * sys.d);
        const Box b{Vec::Constant(sys.d, -6.0), Vec::Constant(sys.d, 6.0)};
        return make_field(sys.d, [](const Vec& x) { return cplx(std::exp(-x.squaredNorm()), 0.0); }, b, nrm,
                          "gaussian");
    }
    const bool eta = name == "eta" || name == "paper";
    if (!eta && name != "test") throw ConfigError("unknown field '" + name + "'");

    if (sys.id == "wavelet1d") {
        if (eta) return wavelet_eta();
        // e^{-2(x-1)^2 + i x}
        return make_field(
            1, [](const Vec& x) { return std::exp(cplx(-2.0 * (x[0] - 1.0) * (x[0] - 1.0), x[0])); }, box1(-3.5, 5.5),
            std::pow(kPi / 4.0, 0.25), "test_wavelet");
    }
    if (sys.id == "heisenberg") return heisenberg_gaussian();
    if (sys.id == "shearlet") {
        if (eta) return shearlet_indicator_eta(sys.params.at("gamma"));
        const double w = 0.3;
        return make_field(
            2,
            [w](const Vec& x) {
                const double dx = x[0] - 1.5;
                return cplx(std::exp(-(dx * dx + x[1] * x[1]) / (2 * w * w)), 0.0);
            },
            box2(1.5 - 8 * w, 1.5 + 8 * w, -8 * w, 8 * w), std::sqrt(kPi * w * w), "test_shearlet");
    }
    if (sys.id == "dilrot2d") {
        if (eta) return dilrot_eta(4);
        // r^3 e^{-r^2/2} (1 + 0.5 cos xi + 0.3 sin 2 xi); odd radial profile, angular band 2.
        const double nrm = std::sqrt(3.0 * kTwoPi * (1.0 + 0.125 + 0.045));
        return make_field(
            2,
            [](const Vec& x) {
                const double r2 = x.squaredNorm();
                const double r = std::sqrt(r2);
                if (r == 0.0) return cplx(0.0, 0.0);
                const double c1 = x[0] / r, s1 = x[1] / r;
                const double ang = 1.0 + 0.5 * c1 + 0.3 * (2.0 * s1 * c1);
                return cplx(r2 * r * std::exp(-0.5 * r2) * ang, 0.0);
            },
            box2(-9, 9, -9, 9), nrm, "test_dilrot");
    }
    if (sys.id == "transdil2d") {
        if (eta) return transdil_eta();
        return make_field(
            2, [](const Vec& x) { return cplx(x[1] * std::exp(-0.5 * x.squaredNorm()), 0.0); }, box2(-9, 9, -9, 9),
            std::sqrt(kPi / 2.0), "test_transdil");
    }
    throw ConfigError("no fields for system '" + sys.id + "'");
}

}  // namespace mockrep
