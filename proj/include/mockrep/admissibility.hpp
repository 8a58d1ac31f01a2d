#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"
#include "mockrep/transform.hpp"

namespace mockrep {

// ---- structural classification ----

enum class DimRelation { less, equal, greater };
enum class StabilizerSummary { compact_ae, noncompact, mixed, unknown };
enum class Conclusion { reproducing, not_reproducing, conditional };

std::string to_string(DimRelation r);       // "n<d", "n=d", "n>d"
std::string to_string(StabilizerSummary s);  // "compact a.e.", "noncompact", "mixed", "unknown"
std::string to_string(Conclusion c);         // "REPRODUCING", "NOT_REPRODUCING", "CONDITIONAL"

struct Verdict {
    bool unimodular = false;
    double max_modular_deviation = 0.0;  // max |Delta_G - 1| over the probes
    DimRelation n_vs_d = DimRelation::equal;
    double critical_fraction = 0.0;
    StabilizerSummary stabilizers = StabilizerSummary::unknown;
    Conclusion conclusion = Conclusion::conditional;
    // Rules that fired, in order of evaluation:
    //   dimension-bound         n > d rules out reproducing
    //   critical-set            critical points of Phi of positive measure rule it out
    //   homogeneous-unimodular  homogeneous Phi, linear action and unimodular G rule it out
    //   equal-dimension         n = d: reproducing iff non-unimodular with compact stabilizers
    //   nonunimodular-compact   non-unimodular with compact stabilizers a.e. is reproducing
    //   unimodular-finiteness   unimodular with compact stabilizers needs finite fibers, so n = d
    //   stabilizer-metadata     stabilizers unknown or noncompact: undecided
    std::vector<std::string> cited;
    int probes = 0;
};

// Unimodularity from probe_budget random (a, h), critical fraction from probe_budget uniform
// points of x_box (J(Phi) < 1e-8). PreconditionError when probe_budget < 100.
Verdict classify(const SemidirectSystem& sys, int probe_budget = 1000, unsigned seed = 20240611u);

// ---- finite fibers against compact stabilizers ----

struct FinitenessReport {
    bool fiber_finite = false;
    bool stabilizer_compact = false;
    bool unimodular = false;
    bool consistent = false;  // (finite => compact) and (unimodular and compact => finite)
};
// PreconditionError when the system has no orbit metadata.
FinitenessReport finiteness_check(const SemidirectSystem& sys, int z);

// ---- fiber criterion ----

struct FiberCriterionResult {
    std::vector<double> residuals;  // NaN where skipped
    std::vector<bool> skipped;      // test vectors with zero norm on the fiber
    std::vector<double> norms2;     // ||u||^2 on the fiber
    std::vector<double> energies;   // int_H |<u, eta^h>|^2 dh / (alpha beta)
    double max_residual() const;    // over the non-skipped entries
};

// For each u: | ||u||^2 - int_H |<u, eta(h^{-1}.)>_{nu_y}|^2 dh / (alpha(h) beta(h)) | / ||u||^2, with
// the H integral on `hgrid`. `batch`, when set, evaluates eta(h^{-1}.x) over the fiber nodes.
FiberCriterionResult fiber_criterion_residual(const SemidirectSystem& sys, const Field& eta, const FiberMeasure& fiber,
                                              const std::vector<Field>& vectors, const HGrid& hgrid,
                                              const EtaBatch& batch = {});
FiberCriterionResult fiber_criterion_residual(const SemidirectSystem& sys, const Field& eta, const Vec& y,
                                              const std::vector<Field>& vectors, const HGrid& hgrid,
                                              const FiberResolution& res = {}, const EtaBatch& batch = {});

// Default test vectors on the fiber: fixed pseudo-random values on finite fibers, angular modes
// e^{ik theta}, k = -3..4, on circles, Hermite functions of x1 on line fibers x2 = y.
std::vector<Field> fiber_test_vectors(const SemidirectSystem& sys, const FiberMeasure& fiber, int count = 8);

// u(h0^{-1}.x): the test vector carried to the fiber over h0[y].
Field transport_vector(const SemidirectSystem& sys, const Field& u, const Vec& h0);

// ---- dilations ----

// x -> delta^{(n p - d)/2} eta(x / delta). UnsupportedSystem unless Phi is homogeneous of degree p
// and the action is linear; ParameterError for delta <= 0.
Field dilation_transfer(const SemidirectSystem& sys, const Field& eta, double delta);

// ---- closed-form conditions of the built-in examples ----

// Angular Fourier coefficients etahat(t, n) for |n| <= band (dilrot2d).
struct AngularFourier {
    std::function<cplx(double t, int n)> coeff;
    int band = 0;
};
// Partial Fourier transform etahat(y, w) in the first variable (transdil2d), checked at `omegas`.
struct PartialFourier {
    std::function<cplx(double y, double w)> value;
    std::vector<double> omegas;
};
using CriterionInput = std::variant<Field, AngularFourier, PartialFourier>;

struct CriterionTerm {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    double residual() const;
};
struct CriterionReport {
    std::string example;
    std::vector<CriterionTerm> terms;
    bool satisfied = false;
    std::map<std::string, double> residuals() const;
};

// wavelet1d and shearlet take a spatial Field, dilrot2d an AngularFourier, transdil2d a
// PartialFourier (PreconditionError otherwise). heisenberg raises UnsupportedSystem.
// shearlet uses the substitution x = h^{-1}.(+-1, 0), under which both half-plane integrals become
// int |eta(x)|^2 2 x1^{-4} dx; the field needs a support rule or a support box.
CriterionReport example_criterion(const SemidirectSystem& sys, const CriterionInput& eta);

// The built-in transforms: dilrot_eta coefficients 2 t e^{-t^2}/sqrt(pi) for |n| <= band, and the
// transdil2d vector on omegas -4, -3.5, ..., 4.
AngularFourier dilrot_eta_fourier(int band = 4);
PartialFourier transdil_eta_fourier();

}  // namespace mockrep
