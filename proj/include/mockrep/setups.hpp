#pragma once

#include <map>
#include <string>

#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"
#include "mockrep/transform.hpp"

namespace mockrep {

// Numeric knobs of a setup, by name. Defaults depend on the example; unknown keys raise ConfigError.
using Settings = std::map<std::string, double>;

// Everything needed to run the transform of one example with given f and eta.
struct ExampleSetup {
    std::string system_id;
    Field f;
    Field eta;
    GroupGrid grid;
    InnerRule inner;
    QuadRule eval;  // ground-space rule for L2 errors of the synthesis
    // Energy through the Plancherel density (empty yrule when the system has no fibers).
    HGrid density_h;
    QuadRule density_y;
    FiberResolution density_res;
    Frame density_frame = Frame::ground;
    Settings settings;  // effective values
};

Settings default_settings(const std::string& system_id);
ExampleSetup example_setup(const SemidirectSystem& sys, const Field& f, const Field& eta,
                           const Settings& overrides = {});

// Bounding box of Phi over the points of f.support where |f| >= rel * max |f| (sampled on a grid).
Box significant_y_window(const SemidirectSystem& sys, const Field& f, double rel = 1e-9, int per_axis = 161);

// Rules for both sides of the coarea identity over the radius-R region of X: `points` nodes per
// main axis, `fiber_points` along fibers (or angular). UnsupportedSystem for systems without fibers.
struct CoareaSetup {
    QuadRule xrule;
    QuadRule yrule;
    FiberResolution res;
    std::string desc;
};
CoareaSetup coarea_setup(const SemidirectSystem& sys, int points, int fiber_points, double radius = 8.0);

// transdil2d only: x -> eta(h^{-1}.x) = eta(x1 - b, x2 / t), tabulated per t in `ts` for x1 - b on the
// lattice lo + k step (k < count) and x2 in `x2`. Other points are evaluated directly.
EtaBatch transdil_lattice_batch(const Field& eta, const std::vector<double>& ts, double lo, double step, int count,
                                const std::vector<double>& x2);

}  // namespace mockrep
