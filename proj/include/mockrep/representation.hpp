#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mockrep/quadrature.hpp"
#include "mockrep/system.hpp"

namespace mockrep {

// Complex-valued function on R^d (or on Y, or on the H chart, depending on use).
struct Field {
    int dim = 1;
    std::function<cplx(const Vec&)> eval;
    std::optional<Box> support;        // region outside which |value| is negligible (< 1e-14 relative)
    std::optional<double> norm;        // analytic L2 norm when known
    std::optional<QuadRule> support_rule;  // exact quadrature over the support, for discontinuous fields
    std::string name;
    // Optional fast path for d = 2 on a tensor grid: out[i + x1.size() * j] = f(x1[i], x2[j]).
    std::function<void(const std::vector<double>& x1, const std::vector<double>& x2, std::vector<cplx>& out)>
        tensor_eval;

    cplx operator()(const Vec& x) const { return eval(x); }
};

Field zero_field(int dim);
Field scaled(const Field& f, cplx c);
// Values on the tensor grid x1 x x2 (uses tensor_eval when present).
void eval_tensor(const Field& f, const std::vector<double>& x1, const std::vector<double>& x2, std::vector<cplx>& out);

// x -> beta(h)^{-1/2} e^{-2 pi i <Phi(x), a>} f(h^{-1}.x), built by closure composition.
Field apply_rep(const SemidirectSystem& sys, const GroupElement& g, const Field& f);

// max over probes of |U_{g1 g2} f(x) - U_{g1} U_{g2} f(x)|
double homomorphism_residual(const SemidirectSystem& sys, const GroupElement& g1, const GroupElement& g2,
                             const Field& f, const std::vector<Vec>& probes);

// | |U_g f|^2 - |f|^2 | with the same rule on both sides; throws CoverageError when the support
// of f or of U_g f leaves the rule's box.
double unitarity_residual(const SemidirectSystem& sys, const GroupElement& g, const Field& f,
                          const QuadRule& quad);

// Support box of U_g f from the support of f (images of the box corners under h.).
std::optional<Box> transported_support(const SemidirectSystem& sys, const Vec& h, const Field& f);

}  // namespace mockrep
