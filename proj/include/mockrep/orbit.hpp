#pragma once

#include <optional>

#include "mockrep/coarea.hpp"
#include "mockrep/representation.hpp"
#include "mockrep/system.hpp"

namespace mockrep {

const OrbitMetadata& orbit_meta(const SemidirectSystem& sys);

// Volume of the stabilizer of `y` from the Haar integral of a strictly positive probe on Y:
//   vol(H_y) = int_H probe(h[y]) alpha(h^{-1}) dh / int probe dtau_z.
// nullopt stands for an infinite volume (noncompact stabilizer).
struct StabilizerVolumeOptions {
    int h_points = 400;     // per chart axis
    int tau_points = 400;
};
std::optional<double> stabilizer_volume(const SemidirectSystem& sys, int z, const Field& probe,
                                        const StabilizerVolumeOptions& opt = {});
std::optional<double> stabilizer_volume_at(const SemidirectSystem& sys, const Vec& y, const Field& probe,
                                           const StabilizerVolumeOptions& opt = {});

// Weil disintegration of alpha(h^{-1}) dh over the orbit of origin(z):
//   | int_H phi(h) alpha(h^{-1}) dh - int_Y int_{H_z} phi(h(y) s) ds dtau_z(y) |.
// phi lives on the H chart and must carry a support box. Noncompact stabilizers need
// `stabilizer_truncation` (the parameter range [-T, T]).
struct WeilOptions {
    int h_points = 200;
    int tau_points = 400;
    int stabilizer_points = 128;
    std::optional<double> stabilizer_truncation;
};
double weil_residual(const SemidirectSystem& sys, int z, const Field& phi, const WeilOptions& opt = {});

// | int_Y psi dy - sum_z lambda_z int psi dtau_z |, the left side on the system's Y box.
double mackey_residual(const SemidirectSystem& sys, const Field& psi, int y_points = 400, int tau_points = 400);

// | int phi dtau_z composed with h^{-1}[.] - alpha(h)^{-1} int phi dtau_z |
double tau_invariance_residual(const SemidirectSystem& sys, int z, const Field& psi, const Vec& h,
                               int tau_points = 400);

// mu_z = int nu_y dtau_z(y); residual | int phi(h^{-1}.x) dmu_z - beta(h) int phi dmu_z |.
struct MuOptions {
    int tau_points = 400;
    FiberResolution fiber{};
};
double mu_z_residual(const SemidirectSystem& sys, int z, const Field& phi, const Vec& h, const MuOptions& opt = {});

// | h(y)[origin(label(y))] - y |
double section_residual(const SemidirectSystem& sys, const Vec& y);

}  // namespace mockrep
