#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mockrep/core.hpp"
#include "mockrep/quadrature.hpp"

namespace mockrep {

// A point (a, h) of G = R^n x| H, with h in the chart of H.
struct GroupElement {
    Vec a;
    Vec h;
};

// Quadrature for the fiber measure nu_y on Phi^{-1}(y): volume element divided by J(Phi).
struct FiberMeasure {
    Vec y;
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::string chart_desc;

    std::size_t size() const { return nodes.size(); }
    double mass() const;
};

struct FiberResolution {
    int points = 256;         // nodes along each fiber direction
    double truncation = 12.0; // radius for unbounded fibers; <= 0 means "none given"
};

enum class FiberKind { finite, compact, unbounded };

enum class StabilizerKind { trivial, compact, noncompact };

// Stabilizer H_z of an orbit origin, with a one-parameter chart s -> H_z when it is not trivial.
// `haar` is the constant density of the stabilizer's Haar measure in that chart, normalized so
// the Haar measure of H disintegrates over the orbit (for trivial stabilizers: the point mass).
struct StabilizerInfo {
    StabilizerKind kind = StabilizerKind::trivial;
    std::string desc;
    std::function<Vec(double)> embed;
    double param_lo = 0.0;
    double param_hi = 0.0;
    double haar = 1.0;
    bool periodic = false;
};

struct OrbitMetadata {
    int num_orbits = 1;
    std::vector<std::string> labels;
    std::function<int(const Vec&)> orbit_label;
    std::function<Vec(int)> origin;
    std::function<Vec(const Vec&)> section_h;  // h(y) with h(y)[origin(label(y))] = y
    std::function<StabilizerInfo(int)> stabilizer;
    // Quadrature realizing tau_z on the part of the orbit of label z inside `window`.
    std::function<QuadRule(int z, int points, const Box& window)> tau_quadrature;
    std::vector<double> lambda;  // weight of each label under the pseudo-image measure
};

struct SemidirectSystem {
    std::string id;
    std::map<std::string, double> params;

    int n = 1;
    int d = 1;
    int h_dim = 1;

    std::function<Vec(const Vec& h, const Vec& y)> act_n;  // h[y], linear in y
    std::function<Vec(const Vec& h, const Vec& x)> act_d;  // h.x
    std::function<double(const Vec& h)> alpha;
    std::function<double(const Vec& h)> beta;
    std::function<double(const Vec& h)> delta_H;
    std::function<double(const Vec& h)> haar_density;
    std::function<Vec(const Vec&, const Vec&)> h_compose;
    std::function<Vec(const Vec&)> h_inverse;
    Vec h_identity;
    // Distance in the chart, aware of periodic coordinates; defaults to Euclidean.
    std::function<double(const Vec&, const Vec&)> h_distance;

    std::function<Vec(const Vec& x)> phi;
    std::function<double(const Vec& x)> jphi;  // empty: finite differences
    std::function<bool(const Vec& x)> domain_X;
    std::function<bool(const Vec& y)> domain_Y;

    // Analytic fiber parametrization; empty when Phi is not a submersion onto an open set.
    std::function<FiberMeasure(const Vec& y, const FiberResolution&)> fiber;
    FiberKind fiber_kind = FiberKind::finite;

    std::optional<OrbitMetadata> orbit_meta;

    // Homogeneity of Phi (degree p) and linearity of h.x, used by dilation_transfer and
    // the unimodular no-go rule.
    std::optional<int> phi_degree;
    bool linear_action = false;

    // Chart quadrature (Lebesgue weights) for integrals over all of H of functions of h[y]
    // with y near the orbit origins; `points` is the resolution per axis.
    std::function<QuadRule(int points)> h_rule;

    // Sampling regions for validation and property checks.
    std::function<Vec(const Vec& u)> h_sample;  // [0,1]^h_dim -> chart
    Box x_box;
    Box y_box;  // truncated box containing the relevant part of Y
};

// ---- group operations ----

Mat act_n_matrix(const SemidirectSystem& sys, const Vec& h);
Vec contragredient(const SemidirectSystem& sys, const Vec& h, const Vec& a);
GroupElement identity(const SemidirectSystem& sys);
GroupElement compose(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const SemidirectSystem& sys, const GroupElement& g);
double haar_weight(const SemidirectSystem& sys, const GroupElement& g);
double modular_G(const SemidirectSystem& sys, const GroupElement& g);
double h_dist(const SemidirectSystem& sys, const Vec& h1, const Vec& h2);
double g_dist(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2);

// J(Phi)(x), analytic when supplied, else central differences with step 1e-6 (1 + |x|).
double jphi(const SemidirectSystem& sys, const Vec& x);
double jphi_fd(const SemidirectSystem& sys, const Vec& x);

// ---- validation ----

struct ValidationItem {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string worst_sample;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool pass() const;
    const ValidationItem* find(const std::string& name) const;
};

struct ValidationOptions {
    double tol = 1e-8;           // residuals are |diff| / (1 + |reference|)
    double mc_tol = 1e-5;        // bump-function Jacobian check
    unsigned seed = 12345;
    int bump_points = 96;        // Gauss-Legendre points per axis for each bump integral
};

ValidationReport validate_system(const SemidirectSystem& sys, int sample_budget,
                                 const ValidationOptions& opt = {});

}  // namespace mockrep
