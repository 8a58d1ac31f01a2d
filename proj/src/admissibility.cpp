#include "mockrep/admissibility.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "mockrep/coarea.hpp"
#include "mockrep/examples.hpp"
#include "mockrep/parallel.hpp"

namespace mockrep {

std::string to_string(DimRelation r) {
    switch (r) {
        case DimRelation::less: return "n<d";
        case DimRelation::equal: return "n=d";
        case DimRelation::greater: return "n>d";
    }
    return "?";
}

std::string to_string(StabilizerSummary s) {
    switch (s) {
        case StabilizerSummary::compact_ae: return "compact a.e.";
        case StabilizerSummary::noncompact: return "noncompact";
        case StabilizerSummary::mixed: return "mixed";
        case StabilizerSummary::unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::reproducing: return "REPRODUCING";
        case Conclusion::not_reproducing: return "NOT_REPRODUCING";
        case Conclusion::conditional: return "CONDITIONAL";
    }
    return "?";
}

namespace {

constexpr double kUnimodularTol = 1e-9;

Vec uniform_vec(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = u(rng);
    return v;
}

double modular_deviation(const SemidirectSystem& sys, int probes, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const Vec u = uniform_vec(rng, sys.h_dim);
        const Vec a = (uniform_vec(rng, sys.n).array() * 4.0 - 2.0).matrix();
        const Vec h = sys.h_sample ? sys.h_sample(u) : sys.h_identity;
        worst = std::max(worst, std::abs(modular_G(sys, {a, h}) - 1.0));
    }
    return worst;
}

StabilizerSummary summarize_stabilizers(const SemidirectSystem& sys) {
    if (!sys.orbit_meta || !sys.orbit_meta->stabilizer || sys.orbit_meta->num_orbits < 1)
        return StabilizerSummary::unknown;
    int compact = 0, noncompact = 0;
    for (int z = 0; z < sys.orbit_meta->num_orbits; ++z) {
        if (sys.orbit_meta->stabilizer(z).kind == StabilizerKind::noncompact)
            ++noncompact;
        else
            ++compact;
    }
    if (noncompact == 0) return StabilizerSummary::compact_ae;
    if (compact == 0) return StabilizerSummary::noncompact;
    return StabilizerSummary::mixed;
}

}  // namespace

Verdict classify(const SemidirectSystem& sys, int probe_budget, unsigned seed) {
    if (probe_budget < 100) throw PreconditionError("classify: probe_budget must be at least 100");
    Verdict v;
    v.probes = probe_budget;
    std::mt19937_64 rng(seed);
    v.max_modular_deviation = modular_deviation(sys, probe_budget, rng);
    v.unimodular = v.max_modular_deviation < kUnimodularTol;
    v.n_vs_d = sys.n < sys.d ? DimRelation::less : (sys.n == sys.d ? DimRelation::equal : DimRelation::greater);

    int critical = 0;
    const Box& xb = sys.x_box;
    for (int k = 0; k < probe_budget; ++k) {
        const Vec u = uniform_vec(rng, sys.d);
        const Vec x = (xb.lo.array() + u.array() * (xb.hi - xb.lo).array()).matrix();
        if (jphi(sys, x) < 1e-8) ++critical;
    }
    v.critical_fraction = static_cast<double>(critical) / probe_budget;
    v.stabilizers = summarize_stabilizers(sys);

    const bool compact = v.stabilizers == StabilizerSummary::compact_ae;
    auto conclude = [&](Conclusion c, const char* tag) {
        v.conclusion = c;
        v.cited.push_back(tag);
        return v;
    };
    if (v.n_vs_d == DimRelation::greater) return conclude(Conclusion::not_reproducing, "dimension-bound");
    if (v.critical_fraction > 0.0) return conclude(Conclusion::not_reproducing, "critical-set");
    if (sys.phi_degree && sys.linear_action && v.unimodular)
        return conclude(Conclusion::not_reproducing, "homogeneous-unimodular");
    if (v.stabilizers == StabilizerSummary::unknown) return conclude(Conclusion::conditional, "stabilizer-metadata");
    if (v.n_vs_d == DimRelation::equal)
        return conclude(!v.unimodular && compact ? Conclusion::reproducing : Conclusion::not_reproducing,
                        "equal-dimension");
    if (!v.unimodular && compact) return conclude(Conclusion::reproducing, "nonunimodular-compact");
    if (v.unimodular && compact) return conclude(Conclusion::not_reproducing, "unimodular-finiteness");
    return conclude(Conclusion::conditional, "stabilizer-metadata");
}

FinitenessReport finiteness_check(const SemidirectSystem& sys, int z) {
    if (!sys.orbit_meta || !sys.orbit_meta->stabilizer)
        throw PreconditionError("finiteness_check: system '" + sys.id + "' has no orbit metadata");
    if (z < 0 || z >= sys.orbit_meta->num_orbits) throw DomainError("finiteness_check: orbit label out of range");
    FinitenessReport r;
    r.fiber_finite = sys.fiber_kind == FiberKind::finite;
    r.stabilizer_compact = sys.orbit_meta->stabilizer(z).kind != StabilizerKind::noncompact;
    std::mt19937_64 rng(7u);
    r.unimodular = modular_deviation(sys, 200, rng) < kUnimodularTol;
    r.consistent = (!r.fiber_finite || r.stabilizer_compact) && (!(r.unimodular && r.stabilizer_compact) || r.fiber_finite);
    return r;
}

// ---------------------------------------------------------------- fiber criterion

double FiberCriterionResult::max_residual() const {
    double m = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i)
        if (!skipped[i]) m = std::max(m, residuals[i]);
    return m;
}

FiberCriterionResult fiber_criterion_residual(const SemidirectSystem& sys, const Field& eta, const FiberMeasure& fm,
                                              const std::vector<Field>& vectors, const HGrid& hgrid,
                                              const EtaBatch& batch) {
    const std::size_t m = fm.size(), nu = vectors.size();
    // weighted values w_k u(x_k), one row per vector
    std::vector<std::vector<cplx>> wu(nu, std::vector<cplx>(m));
    FiberCriterionResult r;
    r.residuals.assign(nu, std::numeric_limits<double>::quiet_NaN());
    r.skipped.assign(nu, false);
    r.norms2.assign(nu, 0.0);
    r.energies.assign(nu, 0.0);
    for (std::size_t i = 0; i < nu; ++i) {
        std::vector<double> n2(m);
        for (std::size_t k = 0; k < m; ++k) {
            const cplx v = vectors[i](fm.nodes[k]);
            wu[i][k] = fm.weights[k] * v;
            n2[k] = fm.weights[k] * std::norm(v);
        }
        r.norms2[i] = pairwise_sum(n2);
        r.skipped[i] = !(r.norms2[i] > 0.0);
    }

    // per H node: Haar mass / (alpha beta) * |<u, eta^h>|^2 for every u
    const auto per_h = parallel_map<std::vector<double>>(hgrid.size(), [&](std::size_t j) {
        const Vec& h = hgrid.nodes[j];
        std::vector<cplx> e(m);
        if (batch) {
            batch(h, fm.nodes, e);
        } else {
            const Vec hinv = sys.h_inverse(h);
            for (std::size_t k = 0; k < m; ++k) e[k] = eta(sys.act_d(hinv, fm.nodes[k]));
        }
        const double scale = hgrid.weights[j] / (sys.alpha(h) * sys.beta(h));
        std::vector<double> out(nu);
        for (std::size_t i = 0; i < nu; ++i) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += wu[i][k] * std::conj(e[k]);
            out[i] = scale * std::norm(s);
        }
        return out;
    });
    std::vector<double> col(hgrid.size());
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < col.size(); ++j) col[j] = per_h[j][i];
        r.energies[i] = pairwise_sum(col);
        if (!r.skipped[i]) r.residuals[i] = std::abs(r.norms2[i] - r.energies[i]) / r.norms2[i];
    }
    return r;
}

FiberCriterionResult fiber_criterion_residual(const SemidirectSystem& sys, const Field& eta, const Vec& y,
                                              const std::vector<Field>& vectors, const HGrid& hgrid,
                                              const FiberResolution& res, const EtaBatch& batch) {
    return fiber_criterion_residual(sys, eta, fiber_quadrature(sys, y, res), vectors, hgrid, batch);
}

std::vector<Field> fiber_test_vectors(const SemidirectSystem& sys, const FiberMeasure& fm, int count) {
    if (count < 1) throw ConfigError("fiber_test_vectors: count must be positive");
    std::vector<Field> out;
    if (sys.fiber_kind == FiberKind::finite) {
        std::mt19937_64 rng(99u);
        std::normal_distribution<double> g;
        const std::vector<Vec> nodes = fm.nodes;
        for (int i = 0; i < count; ++i) {
            std::vector<cplx> vals(nodes.size());
            for (auto& z : vals) z = {g(rng), g(rng)};
            Field u;
            u.dim = sys.d;
            u.name = "fiber values #" + std::to_string(i);
            u.eval = [nodes, vals](const Vec& x) {
                std::size_t best = 0;
                for (std::size_t k = 1; k < nodes.size(); ++k)
                    if ((nodes[k] - x).norm() < (nodes[best] - x).norm()) best = k;
                return vals[best];
            };
            out.push_back(std::move(u));
        }
    } else if (sys.fiber_kind == FiberKind::compact && sys.d == 2) {
        for (int i = 0; i < count; ++i) {
            const int k = (i % 2 == 0) ? -(i / 2) : (i + 1) / 2;  // 0, 1, -1, 2, -2, ...
            Field u;
            u.dim = 2;
            u.name = "angular mode " + std::to_string(k);
            u.eval = [k](const Vec& x) { return std::polar(1.0, k * std::atan2(x[1], x[0])); };
            out.push_back(std::move(u));
        }
    } else if (sys.fiber_kind == FiberKind::unbounded && sys.d == 2) {
        for (int i = 0; i < count; ++i) {
            Field u;
            u.dim = 2;
            u.name = "Hermite function " + std::to_string(i);
            // physicists' recurrence, scaled so that sum over k stays bounded
            u.eval = [i](const Vec& x) {
                const double s = x[0];
                double h0 = 1.0, h1 = 2.0 * s;
                if (i == 0) return cplx(std::exp(-0.5 * s * s));
                for (int k = 1; k < i; ++k) {
                    const double h2 = 2.0 * s * h1 - 2.0 * k * h0;
                    h0 = h1;
                    h1 = h2;
                }
                return cplx(h1 * std::exp(-0.5 * s * s) / std::sqrt(std::pow(2.0, i) * std::tgamma(i + 1.0)));
            };
            out.push_back(std::move(u));
        }
    } else {
        throw UnsupportedSystem("fiber_test_vectors: no default family for system '" + sys.id + "'");
    }
    return out;
}

Field transport_vector(const SemidirectSystem& sys, const Field& u, const Vec& h0) {
    Field out = u;
    const Vec hinv = sys.h_inverse(h0);
    const SemidirectSystem s = sys;
    out.eval = [s, hinv, u](const Vec& x) { return u(s.act_d(hinv, x)); };
    out.support.reset();
    out.support_rule.reset();
    out.tensor_eval = nullptr;
    out.name = u.name + " transported";
    return out;
}

// ---------------------------------------------------------------- dilations

Field dilation_transfer(const SemidirectSystem& sys, const Field& eta, double delta) {
    if (!sys.phi_degree || !sys.linear_action)
        throw UnsupportedSystem("dilation_transfer: system '" + sys.id +
                                "' does not declare a homogeneous Phi with a linear action");
    if (!(delta > 0.0)) throw ParameterError("dilation_transfer: delta must be positive");
    if (delta == 1.0) return eta;
    const double q = sys.n * *sys.phi_degree - sys.d;
    const double c = std::pow(delta, 0.5 * q);
    Field out = eta;
    out.eval = [eta, c, delta](const Vec& x) { return c * eta(Vec(x / delta)); };
    if (eta.support) out.support = Box{Vec(eta.support->lo * delta), Vec(eta.support->hi * delta)};
    if (eta.norm) out.norm = *eta.norm * std::pow(delta, 0.5 * sys.n * *sys.phi_degree);
    if (eta.support_rule) {
        QuadRule q2 = *eta.support_rule;
        const double wj = std::pow(delta, eta.dim);
        for (auto& p : q2.pts) p *= delta;
        for (auto& w : q2.w) w *= wj;
        q2.box = Box{Vec(q2.box.lo * delta), Vec(q2.box.hi * delta)};
        out.support_rule = std::move(q2);
    }
    if (eta.tensor_eval) {
        out.tensor_eval = [eta, c, delta](const std::vector<double>& x1, const std::vector<double>& x2,
                                          std::vector<cplx>& v) {
            std::vector<double> a(x1), b(x2);
            for (auto& s : a) s /= delta;
            for (auto& s : b) s /= delta;
            eta.tensor_eval(a, b, v);
            for (auto& z : v) z *= c;
        };
    }
    out.name = eta.name + " dilated";
    return out;
}

// ---------------------------------------------------------------- closed forms

double CriterionTerm::residual() const { return std::abs(value - target); }

std::map<std::string, double> CriterionReport::residuals() const {
    std::map<std::string, double> m;
    for (const auto& t : terms) m[t.name] = t.residual();
    return m;
}

namespace {

// Composite Gauss-Legendre in s = log t over [lo, hi]; weights integrate dt.
Rule1D log_panels(double lo, double hi, int panels, int n) {
    Rule1D r = gauss_legendre_panels(n, panels, std::log(lo), std::log(hi));
    for (std::size_t i = 0; i < r.size(); ++i) {
        r.x[i] = std::exp(r.x[i]);
        r.w[i] *= r.x[i];
    }
    return r;
}

double half_line_integral(const std::function<double(double)>& g) {
    // int_0^inf g(t) dt / t for integrands that are small below 1e-14 and above 60
    const Rule1D r = log_panels(1e-14, 60.0, 48, 24);
    return integrate(r, [&](double t) { return g(t) / t; });
}

template <class T>
const T& need(const CriterionInput& in, const std::string& id, const char* what) {
    if (const T* p = std::get_if<T>(&in)) return *p;
    throw PreconditionError("example_criterion: " + id + " expects " + what);
}

CriterionReport finish(CriterionReport r) {
    r.satisfied = true;
    for (const auto& t : r.terms) r.satisfied = r.satisfied && t.residual() <= t.tolerance;
    return r;
}

}  // namespace

CriterionReport example_criterion(const SemidirectSystem& sys, const CriterionInput& in) {
    CriterionReport r;
    r.example = sys.id;
    if (sys.id == "wavelet1d") {
        const Field& eta = need<Field>(in, sys.id, "a spatial field");
        const double plus = half_line_integral([&](double s) { return std::norm(eta(vec({s}))); });
        const double minus = half_line_integral([&](double s) { return std::norm(eta(vec({-s}))); });
        r.terms = {{"positive half-line", plus, 1.0, 1e-8}, {"negative half-line", minus, 1.0, 1e-8}};
    } else if (sys.id == "shearlet") {
        const Field& eta = need<Field>(in, sys.id, "a spatial field");
        QuadRule q;
        if (eta.support_rule)
            q = *eta.support_rule;
        else if (eta.support)
            q = tensor_gauss(*eta.support, 400);
        else
            throw PreconditionError("example_criterion: shearlet field needs a support rule or box");
        std::vector<double> s1, s2;
        std::vector<cplx> s3;
        for (std::size_t k = 0; k < q.size(); ++k) {
            const Vec& x = q.pts[k];
            if (x[0] == 0.0) continue;
            const double m = q.w[k] * 2.0 / std::pow(x[0], 4);
            const cplx v = eta(x);
            if (x[0] > 0.0) {
                s1.push_back(m * std::norm(v));
                s3.push_back(m * v * std::conj(eta(Vec(-x))));
            } else {
                s2.push_back(m * std::norm(v));
            }
        }
        r.terms = {{"shear1", pairwise_sum(s1), 0.5, 1e-8},
                   {"shear2", pairwise_sum(s2), 0.5, 1e-8},
                   {"shear3", std::abs(pairwise_sum(s3)), 0.0, 1e-12}};
    } else if (sys.id == "dilrot2d") {
        const AngularFourier& af = need<AngularFourier>(in, sys.id, "angular Fourier coefficients");
        if (af.band < 0 || !af.coeff) throw PreconditionError("example_criterion: empty angular Fourier data");
        for (int n = -af.band; n <= af.band; ++n) {
            const double v = half_line_integral([&](double t) { return std::norm(af.coeff(t, n)); });
            r.terms.push_back({"mode " + std::to_string(n), v, 1.0 / kPi, 1e-8});
        }
    } else if (sys.id == "transdil2d") {
        const PartialFourier& pf = need<PartialFourier>(in, sys.id, "partial Fourier values");
        if (pf.omegas.empty() || !pf.value) throw PreconditionError("example_criterion: empty partial Fourier data");
        for (double w : pf.omegas) {
            const double v = half_line_integral([&](double y) { return std::norm(pf.value(y, w)); }) +
                             half_line_integral([&](double y) { return std::norm(pf.value(-y, w)); });
            char name[48];
            std::snprintf(name, sizeof name, "omega %+.3f", w);
            r.terms.push_back({name, v, 1.0, 1e-6});
        }
    } else {
        throw UnsupportedSystem("example_criterion: no closed-form condition for system '" + sys.id + "'");
    }
    return finish(std::move(r));
}

AngularFourier dilrot_eta_fourier(int band) {
    AngularFourier af;
    af.band = band;
    af.coeff = [band](double t, int n) {
        if (std::abs(n) > band) return cplx(0.0);
        return cplx(2.0 * t * std::exp(-t * t) / std::sqrt(kPi));
    };
    return af;
}

PartialFourier transdil_eta_fourier() {
    PartialFourier pf;
    pf.value = [](double y, double w) { return cplx(transdil_etahat(y, w)); };
    for (int k = -8; k <= 8; ++k) pf.omegas.push_back(0.5 * k);
    return pf;
}

}  // namespace mockrep
