#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mockrep/coarea.hpp"
#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"

namespace mockrep {

// Uniform nodes lo + k*step, k = 0..count-1, each with weight `step`.
struct UniformAxis {
    double lo = 0.0;
    double step = 1.0;
    int count = 1;

    double at(int k) const { return lo + k * step; }
    double hi() const { return at(count - 1); }
};
// Symmetric axis on [-half_width, half_width] with the given step.
UniformAxis centered_axis(double half_width, double step);

// Nodes of H with their Haar masses (chart weight times haar_density).
struct HGrid {
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::string desc;

    std::size_t size() const { return nodes.size(); }
};
HGrid make_hgrid(const SemidirectSystem& sys, const std::vector<Rule1D>& chart_axes, std::string desc);
// Left translate h -> h0 h; Haar masses are unchanged.
HGrid translate(const SemidirectSystem& sys, const HGrid& g, const Vec& h0);

// Truncated region of G: a tensor grid of uniform axes in a times an H grid. The Haar weight of
// node (a, h) is prod(step) * (Haar mass of h) / alpha(h). Linear index = ih * a_count() + ia,
// with the first a-axis running fastest.
struct GroupGrid {
    std::vector<UniformAxis> a_axes;
    HGrid h;
    std::vector<double> h_factor;  // Haar mass / alpha, per H node
    double a_cell = 1.0;
    std::string truncation_desc;

    std::size_t a_count() const;
    std::size_t size() const { return a_count() * h.size(); }
    Vec a_at(std::size_t ia) const;
    GroupElement node(std::size_t i) const;
    double weight(std::size_t i) const { return a_cell * h_factor[i / a_count()]; }
};
GroupGrid make_group_grid(const SemidirectSystem& sys, std::vector<UniformAxis> a_axes, HGrid h);

// Rule for the inner products <f, U_g eta>.
//   ground:    sum_x w f(x) conj(U_g eta(x)) with the rule on the ground space
//   analyzing: after x = h.x', sum_x' w' beta^{1/2} f(h.x') conj(eta(x')) e^{2 pi i <Phi(h.x'),a>},
//              with a rule on the support of eta (fixed, or rebuilt per h by `per_h`)
enum class Frame { ground, analyzing };
// A rule for one h; `eta_conj` optionally carries conj(eta) at the nodes (analyzing frame).
struct PreparedRule {
    QuadRule rule;
    std::vector<cplx> eta_conj;
};
// Batch evaluation of x -> eta(h^{-1}.x) over a point set, used by the synthesis when set.
using EtaBatch = std::function<void(const Vec& h, const std::vector<Vec>& points, std::vector<cplx>& out)>;
struct InnerRule {
    Frame frame = Frame::ground;
    QuadRule rule;
    std::function<PreparedRule(const Vec& h)> per_h;
    EtaBatch eta_batch;
    std::string desc;
};

struct Coefficients {
    GroupGrid grid;
    std::vector<cplx> values;
};

Coefficients analyze(const SemidirectSystem& sys, const Field& f, const Field& eta, const GroupGrid& grid,
                     const InnerRule& inner);
double energy(const Coefficients& c);
double energy_direct(const SemidirectSystem& sys, const Field& f, const Field& eta, const GroupGrid& grid,
                     const InnerRule& inner);

// int_H int_Y |omega_h(y)|^2 dy dh / (alpha(h) beta(h)).
//   ground:    omega_h on the fixed Y rule
//   analyzing: y = h[y'] with y' on the Y rule, fibers transported from y' (weights alpha beta),
//              so the inner integrand is beta(h) |int f(h.x') conj(eta(x')) dnu_{y'}(x')|^2
double energy_via_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const HGrid& hgrid,
                          const QuadRule& yrule, const FiberResolution& res = {}, Frame frame = Frame::ground);

// f~(x) = sum_i weight_i c_i (U_{g_i} eta)(x) at each point.
std::vector<cplx> synthesize(const SemidirectSystem& sys, const Coefficients& coeffs, const Field& eta,
                             const std::vector<Vec>& points, const EtaBatch& batch = {});

struct ReproductionReport {
    double energy = 0.0;
    double norm_f = 0.0;
    double energy_ratio = 0.0;
    double l2_error = 0.0;
};
// `eval` is a rule on the ground space for the L2 error of the synthesis.
ReproductionReport reproduction_report(const SemidirectSystem& sys, const Field& f, const Field& eta,
                                       const GroupGrid& grid, const InnerRule& inner, const QuadRule& eval);
// The energy part only (no synthesis).
ReproductionReport energy_report(const SemidirectSystem& sys, const Field& f, const Field& eta,
                                 const GroupGrid& grid, const InnerRule& inner, const QuadRule* norm_rule = nullptr);

// CSV: header a_1..a_n,h_1..h_m,re,im,weight
void write_csv(std::ostream& os, const Coefficients& c);

// Phase sums on a tensor grid of a: out[ia] = sum_j v_j e^{sign 2 pi i <phi_j, a>}. Points sharing
// phi_1 bit-for-bit are summed together first when n = 2.
void phase_sum(const std::vector<Vec>& phis, const std::vector<cplx>& v, const std::vector<UniformAxis>& axes,
               int sign, std::vector<cplx>& out);
// Adjoint direction: out_j = sum_a c(a) e^{sign 2 pi i <phi_j, a>}.
void phase_eval(const std::vector<cplx>& c, const std::vector<UniformAxis>& axes, const std::vector<Vec>& phis,
                int sign, std::vector<cplx>& out);

}  // namespace mockrep
