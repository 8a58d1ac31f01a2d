#pragma once

#include <map>
#include <string>
#include <vector>

#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"

namespace mockrep {

// wavelet1d, heisenberg, shearlet (param gamma > 0, default 1/2), dilrot2d, transdil2d.
const std::vector<std::string>& example_ids();
SemidirectSystem build_example(const std::string& id, const std::map<std::string, double>& params = {});

// Named fields on the ground space of a built-in system:
//   "gaussian"  e^{-|x|^2}
//   "test"      the example's reconstruction test field
//   "eta"       the example's admissible vector ("paper" is an alias)
//   "zero"      identically 0
// "half_eta" is 0.5 * eta. Unknown names raise ConfigError.
Field example_field(const SemidirectSystem& sys, const std::string& name);

// Admissible vectors (spatial form).
Field wavelet_eta();                       // 2|s| e^{-s^2}
Field heisenberg_gaussian();               // 2^{1/4} e^{-pi x^2}, unit norm
Field shearlet_indicator_eta(double gamma);  // sqrt2 on the frequency rectangles, mapped to x
Field dilrot_eta(int band = 4);            // (2 r e^{-r^2}/sqrt(pi)) * sum_{|n|<=band} e^{i n xi}
// Partial-Fourier vector with etahat(y, w) = (|y| e^{-y^2/(2 s^2)} / (sqrt(2 pi) s))^{1/2}, s = e^{-w^2/2};
// the inverse transform in w uses a trapezoid rule with step `dw` on [-w_max, w_max].
Field transdil_eta(double dw = 1.0 / 32.0, double w_max = 8.0);
double transdil_sigma(double w);
double transdil_etahat(double y, double w);

}  // namespace mockrep
