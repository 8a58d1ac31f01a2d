#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "mockrep/coarea.hpp"
#include "mockrep/examples.hpp"
#include "mockrep/setups.hpp"

using namespace mockrep;
using testing_util::gaussian;

TEST_CASE("coarea sides agree with the Gaussian integral") {
    for (const std::string id : {"wavelet1d", "shearlet", "dilrot2d", "transdil2d"}) {
        CAPTURE(id);
        const SemidirectSystem s = build_example(id);
        const CoareaSetup c = coarea_setup(s, 64, 64);
        const CoareaSides sides = coarea_sides(s, gaussian(s.d), c.xrule, c.yrule, c.res);
        const double exact = std::pow(kPi, 0.5 * s.d);
        CHECK(std::abs(sides.volume - exact) < 1e-12);
        CHECK(std::abs(sides.fibered - exact) < 1e-12);
    }
    CHECK_THROWS_AS(coarea_setup(build_example("heisenberg"), 64, 64), UnsupportedSystem);
}

TEST_CASE("dilrot2d fibers are circles with mass pi") {
    const SemidirectSystem s = build_example("dilrot2d");
    const FiberMeasure fm = fiber_quadrature(s, vec({4.0}), {64, 0});
    CHECK(fm.size() == 64);
    // arc length 2 pi r over J(Phi) = 2 r
    CHECK(fm.mass() == doctest::Approx(kPi));
    for (const Vec& x : fm.nodes) CHECK(x.norm() == doctest::Approx(2.0));
}

TEST_CASE("shearlet fibers are two points weighted by 1 / J(Phi)") {
    const SemidirectSystem s = build_example("shearlet");
    const FiberMeasure fm = fiber_quadrature(s, vec({-0.5, 0.0}));
    REQUIRE(fm.size() == 2);
    CHECK(fm.nodes[0][0] == doctest::Approx(1.0));
    CHECK(fm.nodes[1][0] == doctest::Approx(-1.0));
    CHECK(fm.weights[0] == doctest::Approx(2.0));
}

TEST_CASE("fiber quadrature errors") {
    CHECK_THROWS_AS(fiber_quadrature(build_example("dilrot2d"), vec({-1.0})), DomainError);
    CHECK_THROWS_AS(fiber_quadrature(build_example("shearlet"), vec({0.5, 0.0})), DomainError);
    CHECK_THROWS_AS(fiber_quadrature(build_example("heisenberg"), vec({1.0, 1.0})), DomainError);
    CHECK_THROWS_AS(fiber_quadrature(build_example("transdil2d"), vec({1.0}), {64, 0.0}), ConfigError);
}

TEST_CASE("fiber covariance under H") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const std::string id : {"wavelet1d", "shearlet", "dilrot2d", "transdil2d"}) {
        CAPTURE(id);
        const SemidirectSystem s = build_example(id);
        for (int k = 0; k < 10; ++k) {
            Vec x(s.d), uh(s.h_dim);
            for (int i = 0; i < s.d; ++i) x[i] = 0.2 + 1.5 * u(rng);
            for (int i = 0; i < s.h_dim; ++i) uh[i] = u(rng);
            CHECK(covariance_residual(s, s.phi(x), s.h_sample(uh), gaussian(s.d), {128, 14.0}) < 1e-10);
        }
    }
}

TEST_CASE("transported fibers carry the alpha beta factor") {
    const SemidirectSystem s = build_example("dilrot2d");
    const FiberMeasure fm = fiber_quadrature(s, vec({1.0}), {32, 0});
    const Vec h = vec({2.0, 0.3});
    const FiberMeasure t = transport_fiber(s, fm, h);
    CHECK(t.y[0] == doctest::Approx(4.0));
    CHECK(t.mass() == doctest::Approx(fm.mass()));  // alpha beta = 1 here
    for (const Vec& x : t.nodes) CHECK(x.norm() == doctest::Approx(2.0));
}

TEST_CASE("omega density of Gaussians on a circle") {
    const SemidirectSystem s = build_example("dilrot2d");
    // f = eta = e^{-|x|^2}: omega_h(y) = int e^{-y} e^{-y / t^2} dnu_y = pi e^{-y (1 + t^-2)}
    const cplx w = omega_density(s, gaussian(2), gaussian(2), vec({2.0, 0.4}), vec({1.5}), {64, 0});
    CHECK(w.real() == doctest::Approx(kPi * std::exp(-1.5 * 1.25)).epsilon(1e-13));
    CHECK(std::abs(w.imag()) < 1e-14);
}
