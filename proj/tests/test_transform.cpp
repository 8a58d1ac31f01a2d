#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "mockrep/examples.hpp"
#include "mockrep/setups.hpp"
#include "mockrep/transform.hpp"

using namespace mockrep;

namespace {
ExampleSetup wavelet(const std::string& f, const std::string& eta, const Settings& ov = {}) {
    const SemidirectSystem s = build_example("wavelet1d");
    return example_setup(s, example_field(s, f), example_field(s, eta), ov);
}
}  // namespace

TEST_CASE("axes and grids") {
    const UniformAxis a = centered_axis(2.0, 0.5);
    CHECK(a.count == 9);
    CHECK(a.lo == doctest::Approx(-2.0));
    CHECK(a.hi() == doctest::Approx(2.0));
    const SemidirectSystem s = build_example("dilrot2d");
    const HGrid h = make_hgrid(s, {log_trapezoid(4, 0.5, 4.0), periodic_trapezoid(3, 0, kTwoPi)}, "test");
    CHECK(h.size() == 12);
    for (double w : h.weights) CHECK(w > 0.0);
    const GroupGrid g = make_group_grid(s, {a}, h);
    CHECK(g.size() == 9 * 12);
    // Haar weight of node (a, h): step * Haar mass / alpha
    CHECK(g.weight(10) == doctest::Approx(0.5 * h.weights[1] / s.alpha(h.nodes[1])));
    CHECK(g.node(10).a[0] == doctest::Approx(-1.5));
    const HGrid t = translate(s, h, vec({2.0, 0.0}));
    CHECK(t.nodes[0][0] == doctest::Approx(2.0 * h.nodes[0][0]));
}

TEST_CASE("wavelet1d energy and reconstruction") {
    const SemidirectSystem s = build_example("wavelet1d");
    const ExampleSetup e = wavelet("test", "eta");
    const ReproductionReport r = reproduction_report(s, e.f, e.eta, e.grid, e.inner, e.eval);
    CHECK(r.energy_ratio >= 0.99);
    CHECK(r.energy_ratio <= 1.01);
    CHECK(r.l2_error < 0.05);
    const double d = energy_via_density(s, e.f, e.eta, e.density_h, e.density_y, e.density_res, e.density_frame);
    CHECK(std::abs(d / r.energy - 1.0) < 0.02);
}

TEST_CASE("energy is quadratic in eta") {
    const SemidirectSystem s = build_example("wavelet1d");
    const ExampleSetup full = wavelet("test", "eta");
    const ExampleSetup half = wavelet("test", "half_eta");
    const double r1 = energy_report(s, full.f, full.eta, full.grid, full.inner).energy_ratio;
    const double r2 = energy_report(s, half.f, half.eta, half.grid, half.inner).energy_ratio;
    CHECK(r2 >= 0.245);
    CHECK(r2 <= 0.255);
    CHECK(r2 == doctest::Approx(0.25 * r1).epsilon(1e-12));
    const ExampleSetup zero = wavelet("test", "zero");
    CHECK(energy_direct(s, zero.f, zero.eta, zero.grid, zero.inner) == 0.0);
}

TEST_CASE("coefficients at the identity node are inner products") {
    const SemidirectSystem s = build_example("wavelet1d");
    const Field f = example_field(s, "test"), eta = example_field(s, "eta");
    HGrid h;
    h.nodes = {vec({1.0})};
    h.weights = {1.0};
    const GroupGrid g = make_group_grid(s, {UniformAxis{0.0, 1.0, 1}}, h);
    InnerRule inner;
    inner.rule = tensor_gauss({vec({-8.0}), vec({8.0})}, 400);
    const Coefficients c = analyze(s, f, eta, g, inner);
    const cplx direct = integrate_c(inner.rule, [&](const Vec& x) { return f(x) * std::conj(eta(x)); });
    CHECK(std::abs(c.values[0] - direct) < 1e-14);
}

TEST_CASE("truncation monotonicity") {
    const SemidirectSystem s = build_example("wavelet1d");
    const ExampleSetup small = wavelet("test", "eta", {{"t_lo", 0.25}, {"t_hi", 4.0}, {"t_count", 33}});
    const ExampleSetup large = wavelet("test", "eta", {{"t_lo", 0.25 / 4}, {"t_hi", 16.0}, {"t_count", 65}});
    // the larger log grid contains every node of the smaller one
    CHECK(energy_direct(s, small.f, small.eta, small.grid, small.inner) <=
          energy_direct(s, large.f, large.eta, large.grid, large.inner));
}

TEST_CASE("synthesis is linear in the coefficients") {
    const SemidirectSystem s = build_example("wavelet1d");
    const ExampleSetup e = wavelet("test", "eta", {{"t_count", 16}, {"a_half", 4.0}});
    Coefficients c1 = analyze(s, e.f, e.eta, e.grid, e.inner);
    Coefficients c2 = c1, c12 = c1;
    for (std::size_t i = 0; i < c1.values.size(); ++i) {
        c2.values[i] = cplx(std::sin(0.1 * i), 0.3);
        c12.values[i] = c1.values[i] + c2.values[i];
    }
    const std::vector<Vec> pts = {vec({-0.7}), vec({0.1}), vec({1.3})};
    const auto a = synthesize(s, c1, e.eta, pts), b = synthesize(s, c2, e.eta, pts), ab = synthesize(s, c12, e.eta, pts);
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(ab[k] - a[k] - b[k]) < 1e-12);
    for (auto& v : c1.values) v = 0.0;
    for (const cplx& v : synthesize(s, c1, e.eta, pts)) CHECK(v == cplx(0.0));
}

TEST_CASE("Heisenberg coefficients do not depend on the central variable") {
    const SemidirectSystem s = build_example("heisenberg");
    const ExampleSetup e = example_setup(s, example_field(s, "test"), example_field(s, "eta"),
                                         {{"p_half", 1.0}, {"q_half", 1.0}});
    const Coefficients c = analyze(s, e.f, e.eta, e.grid, e.inner);
    const std::size_t np = static_cast<std::size_t>(e.grid.a_axes[0].count);
    const std::size_t nt = static_cast<std::size_t>(e.grid.a_axes[1].count);
    double worst = 0.0;
    for (std::size_t ih = 0; ih < e.grid.h.size(); ++ih)
        for (std::size_t it = 1; it < nt; ++it)
            for (std::size_t ip = 0; ip < np; ++ip) {
                const std::size_t base = ih * e.grid.a_count() + ip;
                worst = std::max(worst, std::abs(std::abs(c.values[base + it * np]) - std::abs(c.values[base])));
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("Heisenberg energy grows linearly with the central truncation") {
    const SemidirectSystem s = build_example("heisenberg");
    std::vector<double> r;
    for (double T : {1.0, 2.0}) {
        const ExampleSetup e = example_setup(s, example_field(s, "test"), example_field(s, "eta"), {{"t_max", T}});
        r.push_back(energy_report(s, e.f, e.eta, e.grid, e.inner).energy_ratio);
    }
    CHECK(r[1] == doctest::Approx(2.0 * r[0]).epsilon(1e-10));
}

TEST_CASE("CSV export") {
    const SemidirectSystem s = build_example("dilrot2d");
    HGrid h = make_hgrid(s, {log_trapezoid(2, 0.5, 2.0), periodic_trapezoid(2, 0, kTwoPi)}, "tiny");
    Coefficients c{make_group_grid(s, {UniformAxis{0.0, 1.0, 2}}, h), std::vector<cplx>(8, cplx(1.0, -2.0))};
    std::ostringstream os;
    write_csv(os, c);
    const std::string text = os.str();
    CHECK(text.rfind("a_1,h_1,h_2,re,im,weight\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}

TEST_CASE("phase sums agree with direct evaluation") {
    std::vector<Vec> phis = {vec({0.3}), vec({-1.1}), vec({2.5})};
    std::vector<cplx> v = {cplx(1, 0), cplx(0, 2), cplx(-1, 1)};
    const std::vector<UniformAxis> axes = {UniformAxis{-1.0, 0.25, 9}};
    std::vector<cplx> out;
    phase_sum(phis, v, axes, -1, out);
    REQUIRE(out.size() == 9);
    for (int ia = 0; ia < 9; ++ia) {
        cplx d = 0.0;
        for (int j = 0; j < 3; ++j) d += v[j] * std::exp(cplx(0.0, -kTwoPi * phis[j][0] * axes[0].at(ia)));
        CHECK(std::abs(out[ia] - d) < 1e-13);
    }
}

TEST_CASE("setups reject unknown settings") {
    const SemidirectSystem s = build_example("wavelet1d");
    CHECK_THROWS_AS(example_setup(s, example_field(s, "test"), example_field(s, "eta"), {{"bogus", 1.0}}), ConfigError);
    CHECK(default_settings("shearlet").count("l_step") == 1);
}
