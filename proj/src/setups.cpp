#include "mockrep/setups.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>

#include "mockrep/parallel.hpp"

namespace mockrep {

namespace {

const std::map<std::string, Settings>& defaults() {
    static const std::map<std::string, Settings> d = {
        {"wavelet1d",
         {{"a_half", 16.0}, {"a_step", 1.0 / 32.0}, {"t_lo", 1.0 / 64.0}, {"t_hi", 64.0}, {"t_count", 128},
          {"x_points", 2048}, {"eval_points", 512}, {"density_y_points", 1024}}},
        {"heisenberg",
         {{"p_half", 4.0}, {"p_step", 1.0 / 8.0}, {"t_max", 1.0}, {"t_step", 1.0 / 16.0}, {"q_half", 4.0},
          {"q_step", 1.0 / 8.0}, {"x_points", 256}, {"eval_points", 256}}},
        {"shearlet",
         {{"a_half", 24.0}, {"a_step", 0.25}, {"t_lo", 1.0 / 8.0}, {"t_hi", 32.0}, {"t_count", 48},
          {"l_half", 12.0}, {"l_step", 1.0 / 16.0}, {"node_factor", 1.6}, {"node_extra", 12}, {"eval_points", 64},
          {"eta_scale", 1.0}, {"density_y_points", 48}}},
        {"dilrot2d",
         {{"a_half", 2.0}, {"a_step", 1.0 / 128.0}, {"t_lo", 1.0 / 64.0}, {"t_hi", 64.0}, {"t_count", 64},
          {"theta_count", 20}, {"x_radial", 600}, {"x_angular", 32}, {"eval_radial", 200}, {"eval_angular", 32},
          {"density_y_points", 200}, {"density_fiber_points", 64}}},
        {"transdil2d",
         {{"a_half", 4.0}, {"a_step", 1.0 / 32.0}, {"t_lo", 1.0 / 16.0}, {"t_hi", 256.0}, {"t_count", 16},
          {"b_half", 6.0}, {"b_step", 0.25}, {"xi_points", 200}, {"y_top_points", 40}, {"y_min_points", 10},
          {"y_panels", 14}, {"eval_x2_points", 64}, {"density_y_points", 64}, {"density_fiber_points", 200}}},
    };
    return d;
}

double get(const Settings& s, const std::string& k) { return s.at(k); }
int geti(const Settings& s, const std::string& k) {
    const double v = s.at(k);
    if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("setting '" + k + "' must be a positive integer");
    return static_cast<int>(v);
}

Rule1D uniform_rule(double half, double step) {
    const UniformAxis ax = centered_axis(half, step);
    Rule1D r;
    for (int k = 0; k < ax.count; ++k) {
        r.x.push_back(ax.at(k));
        r.w.push_back(step);
    }
    return r;
}

const Box& need_support(const Field& f) {
    if (!f.support) throw ConfigError("setup: field '" + f.name + "' needs a support box");
    return *f.support;
}

Box box_of(double lo, double hi, int dim) { return {Vec::Constant(dim, lo), Vec::Constant(dim, hi)}; }

QuadRule gauss_box(const Box& b, int points) { return tensor_gauss(b, points); }

// Radial rule for polar_rule that is Gauss-Legendre in y = r^2 on [0, R^2]; polar_rule adds the factor r.
Rule1D radial_in_square(int n, double R) {
    Rule1D y = gauss_legendre(n, 0.0, R * R);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = std::sqrt(y.x[i]);
        y.w[i] = y.w[i] / (2.0 * r);
        y.x[i] = r;
    }
    return y;
}

// ---------------------------------------------------------------- shearlet

// Per-h rule over the frequency rectangles (one per sheet) of the indicator vector, clipped to
// the part that h moves into the significant window of f. Nodes are placed in y' = Phi(x') and
// mapped to the sheet point x' with weight dy'/|y'_1|.
struct ShearletRule {
    double gamma, scale2, A, kappa, extra;
    Box yw;  // significant window of f in y

    PreparedRule operator()(const Vec& h) const {
        const double l = h[0], t = h[1];
        PreparedRule out;
        QuadRule& q = out.rule;
        q.dim = 2;
        q.box = {vec({-2.0 * std::sqrt(scale2), -4.0}), vec({2.0 * std::sqrt(scale2), 4.0})};
        // y1 = y1'/t
        const double u_lo = std::max(-2.0 * scale2, t * yw.lo[0]);
        const double u_hi = std::min(-1.0 * scale2, t * yw.hi[0]);
        if (!(u_hi > u_lo)) return out;
        const int n1 = static_cast<int>(std::ceil(kappa * A * (u_hi - u_lo) / t)) + static_cast<int>(extra);
        const Rule1D r1 = gauss_legendre(n1, u_lo, u_hi);
        const double tg = std::pow(t, gamma), tmg = 1.0 / tg;
        for (int sheet : {1, -1}) {
            const double s_lo = sheet > 0 ? 0.0 : -scale2, s_hi = sheet > 0 ? scale2 : 0.0;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                const double u = r1.x[i];
                // y2 = -l u / t + t^{-gamma} v
                const double v_lo = std::max(s_lo, tg * (yw.lo[1] + l * u / t));
                const double v_hi = std::min(s_hi, tg * (yw.hi[1] + l * u / t));
                if (!(v_hi > v_lo)) continue;
                const int n2 = static_cast<int>(std::ceil(kappa * A * (v_hi - v_lo) * tmg)) + static_cast<int>(extra);
                const Rule1D r2 = gauss_legendre(n2, v_lo, v_hi);
                const double x1 = sheet * std::sqrt(-2.0 * u);
                for (std::size_t j = 0; j < r2.size(); ++j) {
                    q.pts.push_back(vec({x1, -2.0 * r2.x[j] / x1}));
                    q.w.push_back(r1.w[i] * r2.w[j] / (-u));
                }
            }
        }
        return out;
    }
};

// ---------------------------------------------------------------- transdil2d

// Analyzing-frame rules for the translation-dilation example. x' = (xi, y'); the y' nodes are
// graded toward 0 on [-W, W], W = min(eta's y extent, f's y extent / |t|), so that the phase
// t y' a stays resolved for every t. Eta is tabulated once per |t| on the tensor grid.
struct TransdilTables {
    Rule1D xi;
    std::vector<double> abs_t;
    std::vector<Rule1D> yr;
    std::vector<std::vector<cplx>> eta_conj;  // xi fastest
    std::unordered_map<double, std::size_t> index;
};

Rule1D graded_half(double W, int panels, int top, int minimum) {
    Rule1D out;
    double hi = W;
    for (int k = 0; k < panels; ++k) {
        const double lo = k + 1 == panels ? 0.0 : hi / 2.0;
        const int n = std::max(minimum, static_cast<int>(std::ceil(top / std::pow(2.0, k))) + 6);
        out = concat(gauss_legendre(n, lo, hi), out);
        hi = lo;
    }
    return out;
}

PreparedRule transdil_prepared(const TransdilTables& T, std::size_t k) {
    PreparedRule p;
    QuadRule& q = p.rule;
    q.dim = 2;
    const Rule1D& yr = T.yr[k];
    q.box = {vec({T.xi.x.front(), yr.x.front()}), vec({T.xi.x.back(), yr.x.back()})};
    q.pts.reserve(T.xi.size() * yr.size());
    for (std::size_t j = 0; j < yr.size(); ++j)
        for (std::size_t i = 0; i < T.xi.size(); ++i) {
            q.pts.push_back(vec({T.xi.x[i], yr.x[j]}));
            q.w.push_back(T.xi.w[i] * yr.w[j]);
        }
    p.eta_conj = T.eta_conj[k];
    return p;
}

void transdil_table_entry(TransdilTables& T, const Field& eta, std::size_t k, double W, const Settings& s) {
    const Rule1D half = graded_half(W, geti(s, "y_panels"), geti(s, "y_top_points"), geti(s, "y_min_points"));
    T.yr[k] = symmetric(half);
    std::vector<cplx> v;
    eval_tensor(eta, T.xi.x, T.yr[k].x, v);
    for (auto& z : v) z = std::conj(z);
    T.eta_conj[k] = std::move(v);
}

}  // namespace

EtaBatch transdil_lattice_batch(const Field& eta, const std::vector<double>& ts, double lo, double step, int count,
                                const std::vector<double>& x2) {
    if (!(step > 0.0) || count < 1 || x2.empty()) throw ConfigError("transdil_lattice_batch: empty lattice");
    struct Tables {
        double lo, step;
        int count;
        std::unordered_map<double, std::size_t> x2_index;
        std::unordered_map<double, std::vector<cplx>> by_t;  // [k + count * j]
    };
    auto T = std::make_shared<Tables>();
    T->lo = lo;
    T->step = step;
    T->count = count;
    for (std::size_t j = 0; j < x2.size(); ++j) T->x2_index.emplace(x2[j], j);
    std::vector<double> lattice(count);
    for (int k = 0; k < count; ++k) lattice[k] = lo + k * step;
    std::vector<std::vector<cplx>> tabs(ts.size());
    parallel_for(ts.size(), [&](std::size_t k) {
        std::vector<double> y(x2.size());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = x2[j] / ts[k];
        eval_tensor(eta, lattice, y, tabs[k]);
    });
    for (std::size_t k = 0; k < ts.size(); ++k) T->by_t[ts[k]] = std::move(tabs[k]);
    return [T, eta](const Vec& h, const std::vector<Vec>& pts, std::vector<cplx>& out) {
        out.resize(pts.size());
        const auto it = T->by_t.find(h[0]);
        for (std::size_t e = 0; e < pts.size(); ++e) {
            const Vec& x = pts[e];
            if (it != T->by_t.end()) {
                const auto jt = T->x2_index.find(x[1]);
                const double kf = (x[0] - h[1] - T->lo) / T->step;
                const long k = std::lround(kf);
                if (jt != T->x2_index.end() && std::abs(kf - k) < 1e-9 && k >= 0 && k < T->count) {
                    out[e] = it->second[static_cast<std::size_t>(k) + T->count * jt->second];
                    continue;
                }
            }
            out[e] = eta(vec({x[0] - h[1], x[1] / h[0]}));
        }
    };
}

CoareaSetup coarea_setup(const SemidirectSystem& sys, int points, int fiber_points, double radius) {
    if (points < 2 || fiber_points < 1 || !(radius > 0.0)) throw ConfigError("coarea_setup: bad resolution");
    const double R = radius;
    CoareaSetup c;
    if (sys.id == "dilrot2d") {
        c.xrule = polar_rule(gauss_legendre(points, 0.0, R), fiber_points);
        c.xrule.box = box_of(-R, R, 2);
        c.yrule = tensor_rule({gauss_legendre(points, 0.0, R * R)});
        c.yrule.box = box_of(0.0, R * R, 1);
        c.res = {fiber_points, 0.0};
        c.desc = "polar Gauss-Legendre x trapezoid; y Gauss-Legendre on [0, R^2]; circle fibers";
    } else if (sys.id == "transdil2d") {
        c.xrule = tensor_gauss(box_of(-R, R, 2), points);
        c.yrule = tensor_rule({gauss_legendre(points + points % 2, -R, R)});
        c.yrule.box = box_of(-R, R, 1);
        c.res = {fiber_points, R};
        c.desc = "tensor Gauss-Legendre on [-R, R]^2; y Gauss-Legendre; line fibers truncated at R";
    } else if (sys.id == "wavelet1d") {
        c.xrule = tensor_gauss(box_of(-R, R, 1), points + points % 2);
        c.yrule = c.xrule;
        c.desc = "Gauss-Legendre on [-R, R]; single-point fibers";
    } else if (sys.id == "shearlet") {
        c.xrule = tensor_gauss(box_of(-R, R, 2), points);
        // y1 = -s^2/2 with s = |x1| in (0, R]; for each s, |x2| <= R means |y2| <= s R / 2
        const Rule1D sr = gauss_legendre(points, 0.0, R);
        c.yrule.dim = 2;
        for (std::size_t i = 0; i < sr.size(); ++i) {
            const double s = sr.x[i];
            const Rule1D yr = gauss_legendre(points, -0.5 * s * R, 0.5 * s * R);
            for (std::size_t j = 0; j < yr.size(); ++j) {
                c.yrule.pts.push_back(vec({-0.5 * s * s, yr.x[j]}));
                c.yrule.w.push_back(s * sr.w[i] * yr.w[j]);
            }
        }
        c.yrule.box = Box{vec({-0.5 * R * R, -0.5 * R * R}), vec({0.0, 0.5 * R * R})};
        c.desc = "tensor Gauss-Legendre on [-R, R]^2; y in the coordinates (|x1|, y2); two-point fibers";
    } else {
        throw UnsupportedSystem("coarea_setup: system '" + sys.id + "' has no fibers to integrate over");
    }
    return c;
}

Box significant_y_window(const SemidirectSystem& sys, const Field& f, double rel, int per_axis) {
    const Box& b = need_support(f);
    const int dim = b.dim();
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(per_axis);
    std::vector<Vec> pts(total);
    for (std::size_t k = 0; k < total; ++k) {
        Vec p(dim);
        std::size_t r = k;
        for (int i = 0; i < dim; ++i) {
            p[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * static_cast<double>(r % per_axis) / (per_axis - 1);
            r /= per_axis;
        }
        pts[k] = p;
    }
    const std::vector<double> mag = parallel_map<double>(total, [&](std::size_t k) { return std::abs(f(pts[k])); });
    const double mx = *std::max_element(mag.begin(), mag.end());
    if (!(mx > 0.0)) throw PreconditionError("significant_y_window: field vanishes on its support grid");
    // Keep a one-cell margin around every significant sample.
    Vec cell(dim);
    for (int i = 0; i < dim; ++i) cell[i] = (b.hi[i] - b.lo[i]) / (per_axis - 1);
    Vec lo, hi;
    bool first = true;
    for (std::size_t k = 0; k < total; ++k) {
        if (mag[k] < rel * mx) continue;
        for (int c = 0; c < (1 << dim); ++c) {
            Vec p = pts[k];
            for (int i = 0; i < dim; ++i) p[i] += ((c >> i) & 1 ? 1.0 : -1.0) * cell[i];
            const Vec y = sys.phi(p);
            if (first) {
                lo = hi = y;
                first = false;
            } else {
                lo = lo.cwiseMin(y);
                hi = hi.cwiseMax(y);
            }
        }
    }
    return {lo, hi};
}

Settings default_settings(const std::string& system_id) {
    const auto it = defaults().find(system_id);
    if (it == defaults().end()) throw ConfigError("no default setup for system '" + system_id + "'");
    return it->second;
}

ExampleSetup example_setup(const SemidirectSystem& sys, const Field& f, const Field& eta, const Settings& overrides) {
    Settings s = default_settings(sys.id);
    for (const auto& [k, v] : overrides) {
        if (!s.count(k)) throw ConfigError("unknown setting '" + k + "' for " + sys.id);
        if (!std::isfinite(v)) throw ConfigError("setting '" + k + "' must be finite");
        s[k] = v;
    }
    ExampleSetup e;
    e.system_id = sys.id;
    e.f = f;
    e.eta = eta;
    e.settings = s;
    const Box& fs = need_support(f);

    if (sys.id == "wavelet1d") {
        HGrid h = make_hgrid(sys, {log_trapezoid(geti(s, "t_count"), get(s, "t_lo"), get(s, "t_hi"))},
                             "s log-trapezoid");
        e.grid = make_group_grid(sys, {centered_axis(get(s, "a_half"), get(s, "a_step"))}, h);
        e.inner = {Frame::ground, gauss_box(fs, geti(s, "x_points")), {}, {}, "Gauss-Legendre on supp f"};
        e.eval = gauss_box(fs, geti(s, "eval_points"));
        e.density_h = h;
        e.density_y = gauss_box(fs, geti(s, "density_y_points"));
        e.density_frame = Frame::ground;
    } else if (sys.id == "heisenberg") {
        const double tstep = get(s, "t_step");
        const int tcount = static_cast<int>(std::lround(get(s, "t_max") / tstep));
        if (tcount < 1) throw ConfigError("heisenberg: t_max must be at least one t_step");
        HGrid h = make_hgrid(sys, {uniform_rule(get(s, "q_half"), get(s, "q_step"))}, "q uniform");
        // Midpoints of [0, t_max]: the truncated energy is exactly proportional to t_max.
        e.grid = make_group_grid(sys, {centered_axis(get(s, "p_half"), get(s, "p_step")), {0.5 * tstep, tstep, tcount}},
                                 h);
        e.inner = {Frame::ground, gauss_box(fs, geti(s, "x_points")), {}, {}, "Gauss-Legendre on supp f"};
        e.eval = gauss_box(fs, geti(s, "eval_points"));
        e.density_h = h;
    } else if (sys.id == "dilrot2d") {
        HGrid h = make_hgrid(sys,
                             {log_trapezoid(geti(s, "t_count"), get(s, "t_lo"), get(s, "t_hi")),
                              periodic_trapezoid(geti(s, "theta_count"), 0.0, kTwoPi)},
                             "t log-trapezoid x theta periodic");
        e.grid = make_group_grid(sys, {centered_axis(get(s, "a_half"), get(s, "a_step"))}, h);
        // Disk through the corners of supp f.
        const double rmax = fs.lo.cwiseAbs().cwiseMax(fs.hi.cwiseAbs()).norm();
        e.inner = {Frame::ground, polar_rule(radial_in_square(geti(s, "x_radial"), rmax), geti(s, "x_angular")),
                   {}, {}, "polar rule, Gauss-Legendre in r^2 x trapezoid, on the disk around supp f"};
        e.inner.rule.box = {Vec::Constant(2, -rmax), Vec::Constant(2, rmax)};
        // The synthesis is periodic in y = r^2 with period 1/a_step, so errors are measured on the
        // inscribed disk only.
        const double rin = std::min(fs.lo.cwiseAbs().minCoeff(), fs.hi.cwiseAbs().minCoeff());
        e.eval = polar_rule(gauss_legendre(geti(s, "eval_radial"), 0.0, rin), geti(s, "eval_angular"));
        e.density_h = h;
        const Box& es = need_support(eta);
        const double er = std::max({-es.lo[0], es.hi[0], -es.lo[1], es.hi[1]});
        e.density_y = gauss_box({vec({0.0}), vec({er * er})}, geti(s, "density_y_points"));
        e.density_res = {geti(s, "density_fiber_points"), 0.0};
        e.density_frame = Frame::analyzing;
    } else if (sys.id == "transdil2d") {
        const Rule1D tpos = log_trapezoid(geti(s, "t_count"), get(s, "t_lo"), get(s, "t_hi"));
        const double bstep = get(s, "b_step");
        HGrid h = make_hgrid(sys, {symmetric(tpos), uniform_rule(get(s, "b_half"), bstep)},
                             "t log-trapezoid (both signs) x b uniform");
        e.grid = make_group_grid(sys, {centered_axis(get(s, "a_half"), get(s, "a_step"))}, h);
        const Box& es = need_support(eta);
        const double f_y = std::max(-fs.lo[1], fs.hi[1]);
        const double e_y = std::max(-es.lo[1], es.hi[1]);

        auto T = std::make_shared<TransdilTables>();
        T->xi = gauss_legendre(geti(s, "xi_points"), es.lo[0], es.hi[0]);
        T->abs_t = tpos.x;
        T->yr.resize(tpos.size());
        T->eta_conj.resize(tpos.size());
        for (std::size_t k = 0; k < tpos.size(); ++k) T->index[tpos.x[k]] = k;
        parallel_for(tpos.size(), [&](std::size_t k) {
            transdil_table_entry(*T, eta, k, std::min(e_y, f_y / tpos.x[k]), s);
        });
        const Settings sc = s;
        const Field eta_c = eta;
        e.inner.frame = Frame::analyzing;
        e.inner.desc = "per-|t| tensor rule: Gauss-Legendre in xi x graded Gauss-Legendre in y'";
        e.inner.per_h = [T, sc, eta_c, e_y, f_y](const Vec& hh) {
            const double at = std::abs(hh[0]);
            const auto it = T->index.find(at);
            if (it != T->index.end()) return transdil_prepared(*T, it->second);
            TransdilTables one;
            one.xi = T->xi;
            one.yr.resize(1);
            one.eta_conj.resize(1);
            transdil_table_entry(one, eta_c, 0, std::min(e_y, f_y / at), sc);
            return transdil_prepared(one, 0);
        };

        // Eval grid: x1 on the b lattice over supp f, x2 Gauss-Legendre.
        const double x1lo = bstep * std::floor(fs.lo[0] / bstep), x1hi = bstep * std::ceil(fs.hi[0] / bstep);
        const int n1 = static_cast<int>(std::lround((x1hi - x1lo) / bstep)) + 1;
        const Rule1D ex1 = trapezoid(n1, x1lo, x1hi);
        const Rule1D ex2 = gauss_legendre(geti(s, "eval_x2_points"), fs.lo[1], fs.hi[1]);
        e.eval = tensor_rule({ex1, ex2});
        e.eval.box = fs;

        const double bmax = get(s, "b_half");
        const int margin = static_cast<int>(std::ceil(bmax / bstep));
        std::vector<double> ts;
        for (const Vec& hn : h.nodes)
            if (std::find(ts.begin(), ts.end(), hn[0]) == ts.end()) ts.push_back(hn[0]);
        e.inner.eta_batch = transdil_lattice_batch(eta, ts, x1lo - bstep * margin, bstep, n1 + 2 * margin, ex2.x);

        e.density_h = h;
        e.density_y = tensor_rule({symmetric(log_gauss(geti(s, "density_y_points"), 1e-6, e_y))});
        e.density_y.box = {vec({-e_y}), vec({e_y})};
        e.density_res = {geti(s, "density_fiber_points"), std::max(-es.lo[0], es.hi[0])};
        e.density_frame = Frame::analyzing;
    } else if (sys.id == "shearlet") {
        const double gamma = sys.params.at("gamma");
        HGrid h = make_hgrid(sys,
                             {uniform_rule(get(s, "l_half"), get(s, "l_step")),
                              log_trapezoid(geti(s, "t_count"), get(s, "t_lo"), get(s, "t_hi"))},
                             "l uniform x t log-trapezoid");
        const UniformAxis a = centered_axis(get(s, "a_half"), get(s, "a_step"));
        e.grid = make_group_grid(sys, {a, a}, h);
        const double delta = get(s, "eta_scale");
        if (!(delta > 0.0)) throw ConfigError("eta_scale must be positive");
        ShearletRule rule{gamma, delta * delta, get(s, "a_half"), get(s, "node_factor"), get(s, "node_extra"),
                          significant_y_window(sys, f)};
        e.inner.frame = Frame::analyzing;
        e.inner.per_h = rule;
        e.inner.desc = "per-h Gauss-Legendre on the frequency rectangles clipped to the window of f";
        e.eval = gauss_box(fs, geti(s, "eval_points"));
        e.density_h = h;
        const int m = geti(s, "density_y_points");
        const double d2 = delta * delta;
        e.density_y = join(gauss_box({vec({-2.0 * d2, -d2}), vec({-d2, 0.0})}, m),
                           gauss_box({vec({-2.0 * d2, 0.0}), vec({-d2, d2})}, m));
        e.density_frame = Frame::analyzing;
    } else {
        throw ConfigError("no setup for system '" + sys.id + "'");
    }
    return e;
}

}  // namespace mockrep
