#include "mockrep/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "mockrep/parallel.hpp"

namespace mockrep {

UniformAxis centered_axis(double half_width, double step) {
    if (!(step > 0.0) || !(half_width >= 0.0)) throw ConfigError("centered_axis: need step > 0, half width >= 0");
    const int k = static_cast<int>(std::floor(half_width / step + 1e-9));
    return {-k * step, step, 2 * k + 1};
}

HGrid make_hgrid(const SemidirectSystem& sys, const std::vector<Rule1D>& chart_axes, std::string desc) {
    if (static_cast<int>(chart_axes.size()) != sys.h_dim) throw ConfigError("make_hgrid: one rule per chart axis");
    const QuadRule q = tensor_rule(chart_axes);
    HGrid g;
    g.desc = std::move(desc);
    for (std::size_t i = 0; i < q.size(); ++i) {
        g.nodes.push_back(q.pts[i]);
        g.weights.push_back(q.w[i] * sys.haar_density(q.pts[i]));
    }
    return g;
}

HGrid translate(const SemidirectSystem& sys, const HGrid& g, const Vec& h0) {
    HGrid out = g;
    for (auto& h : out.nodes) h = sys.h_compose(h0, h);
    out.desc = g.desc + " (left translated)";
    return out;
}

std::size_t GroupGrid::a_count() const {
    std::size_t c = 1;
    for (const auto& ax : a_axes) c *= static_cast<std::size_t>(ax.count);
    return c;
}

Vec GroupGrid::a_at(std::size_t ia) const {
    Vec a(static_cast<int>(a_axes.size()));
    for (std::size_t k = 0; k < a_axes.size(); ++k) {
        const auto n = static_cast<std::size_t>(a_axes[k].count);
        a[static_cast<int>(k)] = a_axes[k].at(static_cast<int>(ia % n));
        ia /= n;
    }
    return a;
}

GroupElement GroupGrid::node(std::size_t i) const { return {a_at(i % a_count()), h.nodes[i / a_count()]}; }

GroupGrid make_group_grid(const SemidirectSystem& sys, std::vector<UniformAxis> a_axes, HGrid h) {
    if (static_cast<int>(a_axes.size()) != sys.n) throw ConfigError("make_group_grid: one a-axis per dimension of R^n");
    GroupGrid g;
    g.a_axes = std::move(a_axes);
    g.h = std::move(h);
    for (const auto& ax : g.a_axes) {
        if (ax.count < 1 || !(ax.step > 0.0)) throw ConfigError("make_group_grid: empty a-axis");
        g.a_cell *= ax.step;
    }
    for (std::size_t i = 0; i < g.h.size(); ++i) {
        const double w = g.h.weights[i] / sys.alpha(g.h.nodes[i]);
        if (!(w > 0.0)) throw ConfigError("make_group_grid: Haar weights must be positive");
        g.h_factor.push_back(w);
    }
    std::string d;
    for (std::size_t k = 0; k < g.a_axes.size(); ++k)
        d += "a" + std::to_string(k + 1) + " in [" + std::to_string(g.a_axes[k].lo) + ", " +
             std::to_string(g.a_axes[k].hi()) + "] step " + std::to_string(g.a_axes[k].step) + "; ";
    g.truncation_desc = d + "h: " + g.h.desc;
    return g;
}

// ---------------------------------------------------------------- phase kernels

namespace {

// z_k = v e^{i w (lo + k step)}, by recurrence with an exact restart every 32 steps.
template <class F>
void rotate_along(cplx v, double w, const UniformAxis& ax, F&& visit) {
    const cplx r = std::polar(1.0, w * ax.step);
    cplx z;
    for (int k = 0; k < ax.count; ++k) {
        if ((k & 31) == 0) z = v * std::polar(1.0, w * ax.at(k));
        visit(k, z);
        z *= r;
    }
}

// Groups of indices whose first coordinates agree to 1e-13 relative; sorted by value.
std::vector<std::vector<std::size_t>> group_first(const std::vector<Vec>& phis, const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> order(idx);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return phis[a][0] < phis[b][0]; });
    std::vector<std::vector<std::size_t>> groups;
    double head = 0.0;
    for (std::size_t j : order) {
        const double p = phis[j][0];
        if (groups.empty() || std::abs(p - head) > 1e-13 * (1.0 + std::abs(head))) {
            groups.emplace_back();
            head = p;
        }
        groups.back().push_back(j);
    }
    return groups;
}

}  // namespace

void phase_sum(const std::vector<Vec>& phis, const std::vector<cplx>& v, const std::vector<UniformAxis>& axes,
               int sign, std::vector<cplx>& out) {
    std::size_t total = 1;
    for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.count);
    out.assign(total, cplx{0.0, 0.0});
    if (phis.empty()) return;
    const double s = sign * kTwoPi;
    std::vector<std::size_t> all(phis.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    if (axes.size() == 1) {
        for (const auto& g : group_first(phis, all)) {
            cplx acc{0.0, 0.0};
            for (std::size_t j : g) acc += v[j];
            rotate_along(acc, s * phis[g.front()][0], axes[0], [&](int k, cplx z) { out[k] += z; });
        }
        return;
    }
    if (axes.size() == 2) {
        const int n1 = axes[0].count, n2 = axes[1].count;
        std::vector<cplx> inner(n2), e1(n1);
        for (const auto& g : group_first(phis, all)) {
            std::fill(inner.begin(), inner.end(), cplx{0.0, 0.0});
            for (std::size_t j : g)
                rotate_along(v[j], s * phis[j][1], axes[1], [&](int k, cplx z) { inner[k] += z; });
            rotate_along(cplx{1.0, 0.0}, s * phis[g.front()][0], axes[0], [&](int k, cplx z) { e1[k] = z; });
            for (int k2 = 0; k2 < n2; ++k2) {
                const cplx c = inner[k2];
                cplx* row = out.data() + static_cast<std::size_t>(k2) * n1;
                for (int k1 = 0; k1 < n1; ++k1) row[k1] += e1[k1] * c;
            }
        }
        return;
    }
    // Direct evaluation for n > 2.
    for (std::size_t ia = 0; ia < total; ++ia) {
        std::size_t r = ia;
        Vec a(static_cast<int>(axes.size()));
        for (std::size_t k = 0; k < axes.size(); ++k) {
            a[static_cast<int>(k)] = axes[k].at(static_cast<int>(r % axes[k].count));
            r /= axes[k].count;
        }
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < phis.size(); ++j) acc += v[j] * std::polar(1.0, s * phis[j].dot(a));
        out[ia] = acc;
    }
}

void phase_eval(const std::vector<cplx>& c, const std::vector<UniformAxis>& axes, const std::vector<Vec>& phis,
                int sign, std::vector<cplx>& out) {
    out.assign(phis.size(), cplx{0.0, 0.0});
    if (phis.empty()) return;
    const double s = sign * kTwoPi;
    std::vector<std::size_t> all(phis.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    if (axes.size() == 1) {
        for (const auto& g : group_first(phis, all)) {
            cplx acc{0.0, 0.0};
            rotate_along(cplx{1.0, 0.0}, s * phis[g.front()][0], axes[0], [&](int k, cplx z) { acc += c[k] * z; });
            for (std::size_t j : g) out[j] = acc;
        }
        return;
    }
    if (axes.size() == 2) {
        const int n1 = axes[0].count, n2 = axes[1].count;
        std::vector<cplx> red(n2), e1(n1);
        for (const auto& g : group_first(phis, all)) {
            rotate_along(cplx{1.0, 0.0}, s * phis[g.front()][0], axes[0], [&](int k, cplx z) { e1[k] = z; });
            for (int k2 = 0; k2 < n2; ++k2) {
                const cplx* row = c.data() + static_cast<std::size_t>(k2) * n1;
                cplx acc{0.0, 0.0};
                for (int k1 = 0; k1 < n1; ++k1) acc += row[k1] * e1[k1];
                red[k2] = acc;
            }
            for (std::size_t j : g) {
                cplx acc{0.0, 0.0};
                rotate_along(cplx{1.0, 0.0}, s * phis[j][1], axes[1], [&](int k, cplx z) { acc += red[k] * z; });
                out[j] = acc;
            }
        }
        return;
    }
    std::size_t total = c.size();
    for (std::size_t j = 0; j < phis.size(); ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t ia = 0; ia < total; ++ia) {
            std::size_t r = ia;
            double dot = 0.0;
            for (std::size_t k = 0; k < axes.size(); ++k) {
                dot += phis[j][static_cast<int>(k)] * axes[k].at(static_cast<int>(r % axes[k].count));
                r /= axes[k].count;
            }
            acc += c[ia] * std::polar(1.0, s * dot);
        }
        out[j] = acc;
    }
}

// ---------------------------------------------------------------- coefficients

namespace {

// Values cached on a fixed inner rule.
struct InnerCache {
    const SemidirectSystem& sys;
    const Field& f;
    const Field& eta;
    const InnerRule& inner;
    std::vector<cplx> fixed;  // ground: f(x_j); analyzing: conj(eta(x'_j))
    std::vector<Vec> phi;     // Phi of the rule nodes

    InnerCache(const SemidirectSystem& s, const Field& f_, const Field& e_, const InnerRule& in)
        : sys(s), f(f_), eta(e_), inner(in) {
        if (inner.per_h) return;
        const QuadRule& q = inner.rule;
        if (q.size() == 0) throw CoverageError("analyze: empty inner-product rule");
        const Field& covered = inner.frame == Frame::ground ? f : eta;
        if (covered.support && !q.box.contains(*covered.support))
            throw CoverageError("analyze: inner-product rule does not cover the support of " + covered.name);
        fixed = parallel_map<cplx>(q.size(), [&](std::size_t j) {
            return inner.frame == Frame::ground ? f(q.pts[j]) : std::conj(eta(q.pts[j]));
        });
        phi = parallel_map<Vec>(q.size(), [&](std::size_t j) { return sys.phi(q.pts[j]); });
    }

    // Weighted integrand values and phase points for the node h.
    void integrand(const Vec& h, std::vector<Vec>& phis, std::vector<cplx>& v) const {
        phis.clear();
        v.clear();
        const double b = sys.beta(h);
        std::vector<Vec> pts_local;
        std::vector<double> w_local;
        const QuadRule* q = &inner.rule;
        PreparedRule built;
        const std::vector<cplx>* eta_c = &fixed;
        if (inner.per_h) {
            built = inner.per_h(h);
            q = &built.rule;
            if (inner.frame == Frame::analyzing) {
                if (built.eta_conj.empty()) {
                    built.eta_conj.resize(q->size());
                    for (std::size_t j = 0; j < q->size(); ++j) built.eta_conj[j] = std::conj(eta(q->pts[j]));
                } else if (built.eta_conj.size() != q->size()) {
                    throw ConfigError("analyze: prepared rule has mismatched eta values");
                }
                eta_c = &built.eta_conj;
            }
        }
        std::vector<cplx> raw(q->size());
        std::vector<Vec> ph(q->size());
        double vmax = 0.0;
        if (inner.frame == Frame::ground) {
            const Vec hinv = sys.h_inverse(h);
            const double sc = 1.0 / std::sqrt(b);
            for (std::size_t j = 0; j < q->size(); ++j) {
                const cplx fx = inner.per_h ? f(q->pts[j]) : fixed[j];
                raw[j] = fx == cplx{0.0, 0.0} ? fx : sc * q->w[j] * fx * std::conj(eta(sys.act_d(hinv, q->pts[j])));
                ph[j] = inner.per_h ? sys.phi(q->pts[j]) : phi[j];
                vmax = std::max(vmax, std::abs(raw[j]));
            }
        } else {
            const double sc = std::sqrt(b);
            for (std::size_t j = 0; j < q->size(); ++j) {
                const cplx ec = (*eta_c)[j];
                raw[j] = ec == cplx{0.0, 0.0} ? ec : sc * q->w[j] * f(sys.act_d(h, q->pts[j])) * ec;
                // Phi(h.x') = h[Phi(x')]
                ph[j] = sys.act_n(h, inner.per_h ? sys.phi(q->pts[j]) : phi[j]);
                vmax = std::max(vmax, std::abs(raw[j]));
            }
        }
        const double cut = 1e-16 * vmax;
        for (std::size_t j = 0; j < raw.size(); ++j)
            if (vmax > 0.0 && std::abs(raw[j]) > cut) {
                v.push_back(raw[j]);
                phis.push_back(ph[j]);
            }
    }

    void coefficients(const GroupGrid& grid, std::size_t ih, std::vector<cplx>& out) const {
        std::vector<Vec> phis;
        std::vector<cplx> v;
        integrand(grid.h.nodes[ih], phis, v);
        phase_sum(phis, v, grid.a_axes, +1, out);
    }
};

constexpr std::size_t kBlock = 8;

}  // namespace

Coefficients analyze(const SemidirectSystem& sys, const Field& f, const Field& eta, const GroupGrid& grid,
                     const InnerRule& inner) {
    const InnerCache cache(sys, f, eta, inner);
    Coefficients c;
    c.grid = grid;
    const std::size_t na = grid.a_count();
    c.values.assign(grid.size(), cplx{0.0, 0.0});
    parallel_for(grid.h.size(), [&](std::size_t ih) {
        std::vector<cplx> out;
        cache.coefficients(grid, ih, out);
        std::copy(out.begin(), out.end(), c.values.begin() + static_cast<std::ptrdiff_t>(ih * na));
    });
    return c;
}

double energy(const Coefficients& c) {
    const std::size_t na = c.grid.a_count();
    std::vector<double> per_h(c.grid.h.size());
    for (std::size_t ih = 0; ih < per_h.size(); ++ih) {
        std::vector<double> t(na);
        for (std::size_t ia = 0; ia < na; ++ia) t[ia] = std::norm(c.values[ih * na + ia]);
        per_h[ih] = c.grid.a_cell * c.grid.h_factor[ih] * pairwise_sum(t);
    }
    return pairwise_sum(per_h);
}

double energy_direct(const SemidirectSystem& sys, const Field& f, const Field& eta, const GroupGrid& grid,
                     const InnerRule& inner) {
    return energy_report(sys, f, eta, grid, inner).energy;
}

double energy_via_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const HGrid& hgrid,
                          const QuadRule& yrule, const FiberResolution& res, Frame frame) {
    struct Fib {
        double wy;
        FiberMeasure fm;
        std::vector<cplx> cached;  // f (ground) or conj eta (analyzing) at the nodes
    };
    std::vector<Fib> fibs;
    for (std::size_t k = 0; k < yrule.size(); ++k) {
        const Vec& y = yrule.pts[k];
        if (sys.domain_Y && !sys.domain_Y(y)) continue;
        Fib fb{yrule.w[k], fiber_quadrature(sys, y, res), {}};
        for (const Vec& x : fb.fm.nodes) fb.cached.push_back(frame == Frame::ground ? f(x) : std::conj(eta(x)));
        fibs.push_back(std::move(fb));
    }
    const std::vector<double> per_h = parallel_map<double>(hgrid.size(), [&](std::size_t ih) {
        const Vec& h = hgrid.nodes[ih];
        const Vec hinv = sys.h_inverse(h);
        std::vector<double> t(fibs.size());
        for (std::size_t k = 0; k < fibs.size(); ++k) {
            const Fib& fb = fibs[k];
            std::vector<cplx> u(fb.fm.size());
            for (std::size_t i = 0; i < fb.fm.size(); ++i) {
                const Vec& x = fb.fm.nodes[i];
                const cplx c = fb.cached[i];
                if (c == cplx{0.0, 0.0}) continue;
                u[i] = fb.fm.weights[i] * (frame == Frame::ground ? c * std::conj(eta(sys.act_d(hinv, x)))
                                                                  : f(sys.act_d(h, x)) * c);
            }
            t[k] = fb.wy * std::norm(pairwise_sum(u));
        }
        const double inner = pairwise_sum(t);
        const double ab = sys.alpha(h) * sys.beta(h);
        return hgrid.weights[ih] * (frame == Frame::ground ? inner / ab : sys.beta(h) * inner);
    });
    return pairwise_sum(per_h);
}

// ---------------------------------------------------------------- synthesis

namespace {

// Adds the contribution of H node ih to acc (indexed like points).
void synth_node(const SemidirectSystem& sys, const GroupGrid& grid, std::size_t ih, const cplx* cvals,
                const Field& eta, const EtaBatch& batch, const std::vector<Vec>& points, const std::vector<Vec>& phis,
                std::vector<cplx>& acc) {
    const Vec& h = grid.h.nodes[ih];
    std::vector<cplx> ev(points.size());
    if (batch) {
        batch(h, points, ev);
    } else {
        const Vec hinv = sys.h_inverse(h);
        for (std::size_t e = 0; e < points.size(); ++e) ev[e] = eta(sys.act_d(hinv, points[e]));
    }
    double emax = 0.0;
    for (const cplx& v : ev) emax = std::max(emax, std::abs(v));
    if (emax == 0.0) return;
    std::vector<std::size_t> live;
    std::vector<Vec> live_phi;
    for (std::size_t e = 0; e < points.size(); ++e)
        if (std::abs(ev[e]) > 1e-16 * emax) {
            live.push_back(e);
            live_phi.push_back(phis[e]);
        }
    const std::size_t na = grid.a_count();
    const double wh = grid.a_cell * grid.h_factor[ih] / std::sqrt(sys.beta(h));
    std::vector<cplx> d(cvals, cvals + na), s;
    for (auto& x : d) x *= wh;
    phase_eval(d, grid.a_axes, live_phi, -1, s);
    for (std::size_t k = 0; k < live.size(); ++k) acc[live[k]] += s[k] * ev[live[k]];
}

std::vector<cplx> sum_blocks(const std::vector<std::vector<cplx>>& blocks, std::size_t n) {
    std::vector<cplx> out(n);
    std::vector<cplx> col(blocks.size());
    for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t b = 0; b < blocks.size(); ++b) col[b] = blocks[b].empty() ? cplx{} : blocks[b][e];
        out[e] = pairwise_sum(col);
    }
    return out;
}

}  // namespace

std::vector<cplx> synthesize(const SemidirectSystem& sys, const Coefficients& coeffs, const Field& eta,
                             const std::vector<Vec>& points, const EtaBatch& batch) {
    const GroupGrid& grid = coeffs.grid;
    const std::vector<Vec> phis = parallel_map<Vec>(points.size(), [&](std::size_t e) { return sys.phi(points[e]); });
    const std::size_t nb = (grid.h.size() + kBlock - 1) / kBlock;
    std::vector<std::vector<cplx>> blocks(nb);
    parallel_for(nb, [&](std::size_t b) {
        std::vector<cplx> acc(points.size());
        for (std::size_t ih = b * kBlock; ih < std::min(grid.h.size(), (b + 1) * kBlock); ++ih)
            synth_node(sys, grid, ih, coeffs.values.data() + ih * grid.a_count(), eta, batch, points, phis, acc);
        blocks[b] = std::move(acc);
    });
    return sum_blocks(blocks, points.size());
}

// ---------------------------------------------------------------- reports

namespace {

ReproductionReport stream(const SemidirectSystem& sys, const Field& f, const Field& eta, const GroupGrid& grid,
                          const InnerRule& inner, const QuadRule* eval, const QuadRule* norm_rule) {
    const InnerCache cache(sys, f, eta, inner);
    const std::size_t nh = grid.h.size(), na = grid.a_count();
    const std::size_t nb = (nh + kBlock - 1) / kBlock;
    std::vector<Vec> phis;
    if (eval) phis = parallel_map<Vec>(eval->size(), [&](std::size_t e) { return sys.phi(eval->pts[e]); });
    std::vector<double> energies(nh);
    std::vector<std::vector<cplx>> blocks(nb);
    parallel_for(nb, [&](std::size_t b) {
        std::vector<cplx> acc(eval ? eval->size() : 0), c;
        for (std::size_t ih = b * kBlock; ih < std::min(nh, (b + 1) * kBlock); ++ih) {
            cache.coefficients(grid, ih, c);
            std::vector<double> t(na);
            for (std::size_t ia = 0; ia < na; ++ia) t[ia] = std::norm(c[ia]);
            energies[ih] = grid.a_cell * grid.h_factor[ih] * pairwise_sum(t);
            if (eval && energies[ih] > 0.0) synth_node(sys, grid, ih, c.data(), eta, inner.eta_batch, eval->pts, phis, acc);
        }
        blocks[b] = std::move(acc);
    });

    ReproductionReport r;
    r.energy = pairwise_sum(energies);
    if (f.norm) {
        r.norm_f = *f.norm;
    } else {
        const QuadRule* q = norm_rule ? norm_rule : eval;
        if (!q) throw PreconditionError("energy_report: field has no norm and no rule was given");
        r.norm_f = std::sqrt(integrate(*q, [&](const Vec& x) { return std::norm(f(x)); }));
    }
    r.energy_ratio = r.norm_f > 0.0 ? r.energy / (r.norm_f * r.norm_f) : 0.0;
    if (eval) {
        const std::vector<cplx> ft = sum_blocks(blocks, eval->size());
        std::vector<double> num(eval->size()), den(eval->size());
        for (std::size_t e = 0; e < eval->size(); ++e) {
            const cplx fx = f(eval->pts[e]);
            num[e] = eval->w[e] * std::norm(ft[e] - fx);
            den[e] = eval->w[e] * std::norm(fx);
        }
        const double dn = pairwise_sum(den);
        r.l2_error = dn > 0.0 ? std::sqrt(pairwise_sum(num) / dn) : 0.0;
    }
    return r;
}

}  // namespace

ReproductionReport reproduction_report(const SemidirectSystem& sys, const Field& f, const Field& eta,
                                       const GroupGrid& grid, const InnerRule& inner, const QuadRule& eval) {
    return stream(sys, f, eta, grid, inner, &eval, nullptr);
}

ReproductionReport energy_report(const SemidirectSystem& sys, const Field& f, const Field& eta,
                                 const GroupGrid& grid, const InnerRule& inner, const QuadRule* norm_rule) {
    return stream(sys, f, eta, grid, inner, nullptr, norm_rule);
}

void write_csv(std::ostream& os, const Coefficients& c) {
    const GroupGrid& g = c.grid;
    const int n = static_cast<int>(g.a_axes.size());
    const int m = g.h.nodes.empty() ? 0 : static_cast<int>(g.h.nodes[0].size());
    for (int i = 1; i <= n; ++i) os << "a_" << i << ",";
    for (int i = 1; i <= m; ++i) os << "h_" << i << ",";
    os << "re,im,weight\n";
    const auto old = os.precision(17);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const GroupElement e = g.node(i);
        for (int k = 0; k < n; ++k) os << e.a[k] << ",";
        for (int k = 0; k < m; ++k) os << e.h[k] << ",";
        os << c.values[i].real() << "," << c.values[i].imag() << "," << g.weight(i) << "\n";
    }
    os.precision(old);
}

}  // namespace mockrep
