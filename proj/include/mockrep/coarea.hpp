#pragma once

#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"

namespace mockrep {

// Nodes/weights for nu_y. Throws DomainError for y outside Y (or when Phi has no fibers of
// positive codimension to parametrize), ConfigError for an unbounded fiber without truncation.
FiberMeasure fiber_quadrature(const SemidirectSystem& sys, const Vec& y, const FiberResolution& res = {});

// Image of nu_y under x -> h.x, rescaled by alpha(h) beta(h): a quadrature for nu_{h[y]}.
FiberMeasure transport_fiber(const SemidirectSystem& sys, const FiberMeasure& fm, const Vec& h);

struct CoareaSides {
    double volume = 0.0;  // integral of f over X
    double fibered = 0.0; // integral over Y of the fiber integrals
    double residual() const { return std::abs(volume - fibered); }
};

// Both sides of the coarea identity; `xrule` integrates over X, `yrule` over Y.
CoareaSides coarea_sides(const SemidirectSystem& sys, const Field& f, const QuadRule& xrule, const QuadRule& yrule,
                         const FiberResolution& res = {});
double coarea_residual(const SemidirectSystem& sys, const Field& f, const QuadRule& xrule, const QuadRule& yrule,
                       const FiberResolution& res = {});

// | int phi(h^{-1}.x) dnu_{h[y]} - alpha(h) beta(h) int phi dnu_y |
double covariance_residual(const SemidirectSystem& sys, const Vec& y, const Vec& h, const Field& phi,
                           const FiberResolution& res = {});

// omega_h(y) = int f(x) conj(eta(h^{-1}.x)) dnu_y(x)
cplx omega_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const Vec& h, const Vec& y,
                   const FiberResolution& res = {});
cplx omega_density(const SemidirectSystem& sys, const Field& f, const Field& eta, const Vec& h,
                   const FiberMeasure& fm);

}  // namespace mockrep
