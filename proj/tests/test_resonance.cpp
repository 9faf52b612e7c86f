#include "doctest.h"

#include "tadecay/errors.hpp"
#include "tadecay/resonance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace tadecay;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

RationalTestFunction double_pole(cplx z0) { return RationalTestFunction(1.0, {{z0, 2}}); }

// Residue oracle for t < 0: close in the upper half-plane around the double
// pole z0 of 1/(E - z0)^2.
cplx upper_residue_value(cplx z0, cplx zr, double t) {
    const cplx d = z0 - zr;
    return cplx(0, 2 * kPi) * std::exp(cplx(0, -1) * z0 * t) * (cplx(0, -t) / d - 1.0 / (d * d));
}

} // namespace

TEST_CASE("ResonancePole and Duration validation") {
    CHECK_THROWS_AS(ResonancePole(10, 0), ValidationError);
    CHECK_THROWS_AS(ResonancePole(10, -1), ValidationError);
    ResonancePole p(10, 1);
    CHECK(p.z().imag() < 0);
    CHECK(p.residue() == cplx(1.0));
    CHECK_THROWS_AS(Duration(-1e-300), CausalityViolation);
    CHECK_THROWS_AS(Duration(-1), NegativeDuration);
    CHECK(Duration(0).value() == 0.0);
}

TEST_CASE("EnergyGrid invariants") {
    CHECK_THROWS(EnergyGrid({0, 1, 2}));
    CHECK_THROWS(EnergyGrid({0, 1, 2, 3, 4, 5, 7, 6}));
    CHECK(EnergyGrid::uniform(-200, 220, 1 << 14).is_uniform());
    CHECK_FALSE(EnergyGrid({0, 1, 2, 3, 4, 5, 6, 7.5}).is_uniform());
}

TEST_CASE("bw_amplitude examples") {
    ResonancePole p(10, 1);
    CHECK(std::abs(bw_amplitude(10, p) - cplx(0, -2.0)) < 1e-15);
    const double peak = std::norm(bw_amplitude(10, p));
    CHECK(std::norm(bw_amplitude(10.5, p)) == doctest::Approx(peak / 2).epsilon(1e-14));
    CHECK(std::norm(bw_amplitude(9.5, p)) == doctest::Approx(2.0).epsilon(1e-14));
    // 1/(2 + i/2) by real arithmetic: (2 - i/2)/(4 + 1/4)
    const cplx a = bw_amplitude(12, p);
    CHECK(a.real() == doctest::Approx(2.0 / 4.25).epsilon(1e-15));
    CHECK(a.imag() == doctest::Approx(-0.5 / 4.25).epsilon(1e-15));
    ResonancePole q(10, 1, cplx(0, 3));
    CHECK(std::abs(bw_amplitude(12, q) - cplx(0, 3) * a) < 1e-15);
}

TEST_CASE("gamow_density examples") {
    ResonancePole p(10, 0.7);
    const double g = p.gamma();
    for (double e : {-3.0, 9.0, 10.0, 10.35, 40.0}) {
        const double lorentz = (g / (2 * kPi)) / ((e - 10) * (e - 10) + g * g / 4);
        CHECK(std::norm(gamow_density(e, p)) == doctest::Approx(lorentz).epsilon(1e-14));
    }
    const cplx on = gamow_density(10, p);
    CHECK(std::abs(on - std::sqrt(2 / (kPi * g))) < 1e-14);
}

TEST_CASE("trapezoid of |gamow|^2 on e_r +- 200 Gamma plus the exterior Lorentzian mass is 1") {
    ResonancePole p(10, 1);
    const auto grid = EnergyGrid::uniform(10 - 200, 10 + 200, 1 << 14);
    const auto f = SampledWaveFunction::sample(grid, [&](double e) { return gamow_density(e, p); });
    // Closed form of the mass inside the window: (2/pi) atan(400).
    const double inside = 2 / kPi * std::atan(400.0);
    CHECK(std::abs(f.l2_norm_sq() - inside) < 1e-6);
    CHECK(std::abs(f.l2_norm_sq() + (1 - inside) - lorentzian_norm(p, Domain::FullLine)) < 1e-6);
}

TEST_CASE("lorentzian_norm") {
    CHECK(lorentzian_norm(ResonancePole(-5, 2), Domain::FullLine) == 1.0);
    ResonancePole p(10, 1);
    const double half = lorentzian_norm(p, Domain::HalfLine);
    // 1/2 + atan(20)/pi, evaluated independently with mpmath.
    CHECK(std::abs(half - 0.98409774874382362) < 1e-12);
    quad::LineIntegrand in;
    in.g = [&](cplx e) { return (p.gamma() / (2 * kPi)) / ((e - p.z()) * (e - std::conj(p.z()))); };
    in.singularities = {p.z(), std::conj(p.z())};
    in.scale = p.gamma();
    CHECK(std::abs(quad::fourier_halfline(in, 0.0, 0.0).value - half) < 1e-9);
    CHECK(lorentzian_norm(ResonancePole(1e9, 1), Domain::HalfLine) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(lorentzian_norm(ResonancePole(0, 1), Domain::HalfLine), ValidationError);
}

TEST_CASE("cauchy_pairing against the residue oracle") {
    ResonancePole p(10, 1);
    const cplx z0(5, 2);
    const auto test = double_pole(z0);
    const cplx oracle = cplx(0, -2 * kPi) / ((p.z() - z0) * (p.z() - z0));
    CHECK(rel(residue_pairing(test, p), oracle) < 1e-14);
    CHECK(rel(cauchy_pairing(test, p), oracle) < 1e-8);

    const cplx c(0.3, -2.2);
    CHECK(rel(cauchy_pairing(test * c, p), c * oracle) < 1e-8);

    const auto refl = double_pole(std::conj(p.z()));
    CHECK(rel(cauchy_pairing(refl, p), cplx(0, 2 * kPi / (p.gamma() * p.gamma()))) < 1e-8);

    CHECK_THROWS_AS(cauchy_pairing(double_pole({5, -2}), p), NonHardyTest);
}

TEST_CASE("cauchy_pairing linearity and conjugation symmetry") {
    ResonancePole p(3, 0.4);
    const auto t1 = double_pole({1, 1});
    const auto t2 = RationalTestFunction(cplx(0, 2), {{cplx(4, 0.3), 1}, {cplx(2, 2), 2}});
    const cplx lhs = cauchy_pairing(t1 * 2.0 + t2 * cplx(0, -1), p);
    const cplx rhs = 2.0 * cauchy_pairing(t1, p) + cplx(0, -1) * cauchy_pairing(t2, p);
    CHECK(std::abs(lhs - rhs) < 1e-9);
    const cplx orig = line_pairing(t2, p.z(), 0.0).value;
    const cplx mirrored = line_pairing(t2.conjugate(), std::conj(p.z()), 0.0).value;
    CHECK(std::abs(mirrored - std::conj(orig)) < 1e-9);
}

TEST_CASE("eigenvalue_defect") {
    ResonancePole p(10, 1);
    const auto t1 = double_pole({5, 2});
    const DefectReport d1 = eigenvalue_defect(t1, p);
    CHECK(d1.defect < 1e-8);
    CHECK(std::abs(d1.test_integral) < 1e-8);

    const auto sum = double_pole({5, 2}) + double_pole({12, 0.5}) * cplx(2, 1);
    CHECK(eigenvalue_defect(sum, p).defect < 1e-8);

    // Tightening the tolerance must not make the defect worse.
    // Below ~1e-13 the defect is pure rounding of three O(1) integrals, so
    // monotonicity is asserted above that floor.
    const double floor = 64 * std::numeric_limits<double>::epsilon() * std::abs(p.z() * cauchy_pairing(sum, p));
    double prev = 1.0;
    for (double tol : {1e-6, 5e-7, 2.5e-7, 1.25e-7, 6.25e-8, 1e-10, 5e-11}) {
        quad::Options opt;
        opt.abs_tol = tol;
        const double d = eigenvalue_defect(sum, p, opt).defect;
        CAPTURE(tol);
        CHECK(d <= std::max(prev, floor));
        prev = d;
    }
    CHECK_THROWS_AS(eigenvalue_defect(double_pole({5, -2}), p), NonHardyTest);
}

TEST_CASE("evolved_pairing exponential law and asymmetry") {
    ResonancePole p(10, 1);
    const cplx z0(10, 1);
    const auto test = double_pole(z0);
    const cplx c0 = cauchy_pairing(test, p);
    CHECK(std::abs(evolved_pairing(test, p, 0.0) - c0) < 1e-10);
    const double r1 = std::abs(evolved_pairing(test, p, 1.0)) / std::abs(c0);
    CHECK(std::abs(r1 - std::exp(-0.5)) < 1e-6);

    const cplx neg = evolved_pairing(test, p, -1.0);
    CHECK(rel(neg, upper_residue_value(z0, p.z(), -1.0)) < 1e-8);
    CHECK(std::abs(std::abs(neg) / std::abs(c0) - std::exp(-0.5)) > 0.1 * std::exp(-0.5));
}

TEST_CASE("property: exponential law modulus and phase for t in [0, 10]") {
    ResonancePole p(10, 1);
    const auto test = double_pole({10, 1});
    const cplx c0 = cauchy_pairing(test, p);
    for (int k = 0; k < 20; ++k) {
        const double t = 10.0 * k / 19.0;
        CAPTURE(t);
        const cplx v = evolved_pairing(test, p, t);
        CHECK(std::abs(std::abs(v) / std::abs(c0) - std::exp(-t / 2)) < 1e-6 * std::exp(-t / 2));
        const double dphase = std::arg(v / c0 * std::polar(1.0, 10.0 * t));
        CHECK(std::abs(dphase) < 1e-6);
    }
}

TEST_CASE("evolved_pairing respects hbar") {
    ResonancePole p(10, 1);
    const auto test = double_pole({10, 1});
    const Units si = Units::electron_volt_seconds();
    const cplx a = evolved_pairing(test, p, 2.0 * si.hbar, si);
    const cplx b = evolved_pairing(test, p, 2.0);
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("survival_probability") {
    ResonancePole p(10, 1);
    CHECK(std::abs(survival_probability(p, Duration(1), Domain::FullLine) - std::exp(-1.0)) < 1e-15);
    CHECK(survival_probability(p, Duration(0), Domain::FullLine) == 1.0);
    CHECK(std::abs(survival_probability(p, Duration(0), Domain::HalfLine) - 1.0) < 1e-9);
    // Oracle: mpmath quadosc of the truncated Lorentzian at 30 digits gives
    // 0.379141728000145...; the truncation shifts P by about 3% from e^-1.
    const double half = survival_probability(p, Duration(1), Domain::HalfLine);
    CHECK(std::abs(half - 0.37914172800014552) < 1e-9);
    CHECK(std::abs(half - std::exp(-1.0)) > 0.01 * std::exp(-1.0));
    CHECK_THROWS_AS(survival_probability(ResonancePole(-1, 1), Duration(1), Domain::HalfLine), ValidationError);
}

TEST_CASE("property: full-line survival closed form equals quadrature") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> er(-20, 20), gm(0.05, 3), tt(0, 5);
    quad::Options tight;
    tight.abs_tol = 1e-12;
    for (int i = 0; i < 12; ++i) {
        ResonancePole p(er(rng), gm(rng));
        const double t = tt(rng) / p.gamma();
        CAPTURE(p.e_r());
        CAPTURE(p.gamma());
        CAPTURE(t);
        const double closed = survival_probability(p, Duration(t), Domain::FullLine);
        const double numeric = survival_probability_quadrature(p, Duration(t), Domain::FullLine, {}, tight);
        CHECK(std::abs(numeric - closed) <= 1e-10 * closed);
    }
}

TEST_CASE("property: survival monotone on the full line, bounded on the half line") {
    ResonancePole p(4, 1.5);
    double prev = 2.0;
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.25 * k;
        const double full = survival_probability(p, Duration(t), Domain::FullLine);
        CHECK(full <= prev);
        prev = full;
        const double half = survival_probability(p, Duration(t), Domain::HalfLine);
        CHECK(half >= 0.0);
        CHECK(half <= 1.0 + 1e-9);
    }
}
