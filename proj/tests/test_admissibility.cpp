#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mockrep/admissibility.hpp"
#include "mockrep/coarea.hpp"
#include "mockrep/examples.hpp"

using namespace mockrep;

TEST_CASE("classification of the built-in systems") {
    const std::map<std::string, Conclusion> expected = {{"wavelet1d", Conclusion::reproducing},
                                                        {"heisenberg", Conclusion::not_reproducing},
                                                        {"shearlet", Conclusion::reproducing},
                                                        {"dilrot2d", Conclusion::reproducing},
                                                        {"transdil2d", Conclusion::conditional}};
    for (const auto& [id, c] : expected) {
        CAPTURE(id);
        const Verdict v = classify(build_example(id), 200);
        CHECK(v.conclusion == c);
        CHECK(v.cited.size() == 1);
    }
    const Verdict h = classify(build_example("heisenberg"), 100);
    CHECK(to_string(h.n_vs_d) == "n>d");
    CHECK(h.cited[0] == "dimension-bound");
    const Verdict s = classify(build_example("shearlet"), 100);
    CHECK_FALSE(s.unimodular);
    CHECK(s.critical_fraction == 0.0);
    CHECK(s.stabilizers == StabilizerSummary::compact_ae);
    const Verdict t = classify(build_example("transdil2d"), 100);
    CHECK(t.stabilizers == StabilizerSummary::noncompact);
    CHECK_THROWS_AS(classify(build_example("shearlet"), 99), PreconditionError);
}

TEST_CASE("homogeneous unimodular systems are ruled out") {
    // dilrot2d with a pure rotation group: alpha = beta = 1, Delta_G = 1
    SemidirectSystem s = build_example("dilrot2d");
    s.alpha = [](const Vec&) { return 1.0; };
    s.beta = [](const Vec&) { return 1.0; };
    s.h_sample = [](const Vec& u) { return vec({1.0, kTwoPi * u[1]}); };
    const Verdict v = classify(s, 100);
    CHECK(v.unimodular);
    CHECK(v.conclusion == Conclusion::not_reproducing);
    CHECK(v.cited[0] == "homogeneous-unimodular");
}

TEST_CASE("a critical set of positive measure is ruled out") {
    SemidirectSystem s = build_example("dilrot2d");
    s.jphi = [](const Vec& x) { return x[0] > 0.0 ? 2.0 * x.norm() : 0.0; };
    const Verdict v = classify(s, 400);
    CHECK(v.critical_fraction > 0.3);
    CHECK(v.conclusion == Conclusion::not_reproducing);
    CHECK(v.cited[0] == "critical-set");
}

TEST_CASE("finiteness consistency") {
    const FinitenessReport s = finiteness_check(build_example("shearlet"), 0);
    CHECK(s.fiber_finite);
    CHECK(s.stabilizer_compact);
    CHECK(s.consistent);
    const FinitenessReport d = finiteness_check(build_example("dilrot2d"), 0);
    CHECK_FALSE(d.fiber_finite);
    CHECK(d.stabilizer_compact);
    CHECK_FALSE(d.unimodular);
    CHECK(d.consistent);
    const FinitenessReport w = finiteness_check(build_example("wavelet1d"), 1);
    CHECK(w.consistent);
    CHECK_THROWS_AS(finiteness_check(build_example("heisenberg"), 0), PreconditionError);
}

TEST_CASE("closed-form criteria of the examples") {
    const CriterionReport w = example_criterion(build_example("wavelet1d"), wavelet_eta());
    CHECK(w.satisfied);
    for (const auto& t : w.terms) CHECK(t.value == doctest::Approx(1.0).epsilon(1e-10));

    const CriterionReport s = example_criterion(build_example("shearlet"), shearlet_indicator_eta(0.5));
    CHECK(s.satisfied);
    CHECK(s.residuals().at("shear1") <= 1e-8);
    CHECK(s.residuals().at("shear2") <= 1e-8);
    CHECK(s.residuals().at("shear3") <= 1e-12);

    const CriterionReport d = example_criterion(build_example("dilrot2d"), dilrot_eta_fourier(4));
    CHECK(d.satisfied);
    CHECK(d.terms.size() == 9);

    const CriterionReport t = example_criterion(build_example("transdil2d"), transdil_eta_fourier());
    CHECK(t.satisfied);
    for (const auto& term : t.terms) CHECK(term.residual() < 1e-6);
}

TEST_CASE("criteria detect a wrong normalization") {
    const CriterionReport w = example_criterion(build_example("wavelet1d"), scaled(wavelet_eta(), 0.5));
    CHECK_FALSE(w.satisfied);
    CHECK(w.terms[0].value == doctest::Approx(0.25).epsilon(1e-10));
    AngularFourier af = dilrot_eta_fourier(2);
    af.coeff = [](double t, int n) { return cplx(n == 0 ? 2.0 : 1.0) * t * std::exp(-t * t) / std::sqrt(kPi); };
    CHECK_FALSE(example_criterion(build_example("dilrot2d"), af).satisfied);
}

TEST_CASE("criterion input must match the example") {
    CHECK_THROWS_AS(example_criterion(build_example("dilrot2d"), dilrot_eta()), PreconditionError);
    CHECK_THROWS_AS(example_criterion(build_example("wavelet1d"), dilrot_eta_fourier()), PreconditionError);
    CHECK_THROWS_AS(example_criterion(build_example("transdil2d"), transdil_eta()), PreconditionError);
    CHECK_THROWS_AS(example_criterion(build_example("heisenberg"), heisenberg_gaussian()), UnsupportedSystem);
}

TEST_CASE("fiber criterion on the circle fibers of dilrot2d") {
    const SemidirectSystem s = build_example("dilrot2d");
    const HGrid h = make_hgrid(s, {log_gauss(200, 1e-3, 1e2), periodic_trapezoid(32, 0, kTwoPi)}, "t x theta");
    const FiberMeasure fm = fiber_quadrature(s, vec({1.0}), {64, 0});
    const auto us = fiber_test_vectors(s, fm, 8);
    REQUIRE(us.size() == 8);
    const FiberCriterionResult r = fiber_criterion_residual(s, dilrot_eta(4), fm, us, h);
    CHECK(r.max_residual() < 1e-2);

    const FiberCriterionResult z = fiber_criterion_residual(s, zero_field(2), fm, us, h);
    for (double v : z.residuals) CHECK(v == doctest::Approx(1.0));

    std::vector<Field> with_zero = {zero_field(2), us[0]};
    const FiberCriterionResult k = fiber_criterion_residual(s, dilrot_eta(4), fm, with_zero, h);
    CHECK(k.skipped[0]);
    CHECK(std::isnan(k.residuals[0]));
    CHECK_FALSE(k.skipped[1]);
}

TEST_CASE("fiber criterion is invariant along the orbit") {
    const SemidirectSystem s = build_example("dilrot2d");
    const HGrid h = make_hgrid(s, {log_gauss(120, 1e-3, 1e2), periodic_trapezoid(32, 0, kTwoPi)}, "t x theta");
    const FiberMeasure fm = fiber_quadrature(s, vec({1.0}), {64, 0});
    const auto us = fiber_test_vectors(s, fm, 4);
    const Vec h0 = vec({1.7, 0.9});
    std::vector<Field> moved;
    for (const Field& u : us) moved.push_back(transport_vector(s, u, h0));
    const auto a = fiber_criterion_residual(s, dilrot_eta(4), fm, us, h);
    const auto b = fiber_criterion_residual(s, dilrot_eta(4), transport_fiber(s, fm, h0), moved, translate(s, h, h0));
    for (std::size_t i = 0; i < us.size(); ++i) CHECK(std::abs(a.residuals[i] - b.residuals[i]) < 1e-10);
}

TEST_CASE("dilation transfer") {
    const SemidirectSystem s = build_example("shearlet");
    const Field eta = shearlet_indicator_eta(0.5);
    const Field same = dilation_transfer(s, eta, 1.0);
    const Vec x = vec({1.6, -0.4});
    CHECK(same(x) == eta(x));
    // q = n p - d = 2, so the prefactor at delta = 2 is 2
    const Field big = dilation_transfer(s, eta, 2.0);
    CHECK(std::abs(big(Vec(2.0 * x)) - 2.0 * eta(x)) < 1e-15);
    REQUIRE(big.support_rule);
    // the dilated indicator still satisfies the closed-form conditions
    CHECK(example_criterion(s, big).satisfied);
    CHECK(example_criterion(s, dilation_transfer(s, eta, 0.5)).satisfied);
    CHECK_THROWS_AS(dilation_transfer(build_example("transdil2d"), transdil_eta(), 2.0), UnsupportedSystem);
    CHECK_THROWS_AS(dilation_transfer(s, eta, 0.0), ParameterError);
}
