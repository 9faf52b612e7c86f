#include "doctest.h"

#include "tadecay/errors.hpp"
#include "tadecay/hardy.hpp"

#include <cmath>
#include <numbers>

using namespace tadecay;

namespace {

const ResonancePole kPole(10, 1);

EnergyGrid window(double half_width, std::size_t n) {
    return EnergyGrid::uniform(kPole.e_r() - half_width, kPole.e_r() + half_width, n);
}

SampledWaveFunction bw(const EnergyGrid& g) {
    return SampledWaveFunction::sample(g, [](double e) { return gamow_density(e, kPole); });
}

double l2(const std::vector<cplx>& a, const EnergyGrid& g) {
    return std::sqrt(SampledWaveFunction(g, a).l2_norm_sq());
}

std::vector<cplx> diff(const SampledWaveFunction& a, const SampledWaveFunction& b) {
    std::vector<cplx> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.values()[i] - b.values()[i];
    return d;
}

double rel_l2(const SampledWaveFunction& a, const SampledWaveFunction& ref) {
    return l2(diff(a, ref), a.grid()) / std::sqrt(ref.l2_norm_sq());
}

} // namespace

TEST_CASE("support profile of the Breit-Wigner density and its conjugate") {
    const auto g = window(200, 1 << 14);
    const auto f = bw(g);
    const SupportProfile sp = fourier_support_profile(f);
    CHECK(sp.mass_negative / sp.total < 1e-6);
    CHECK(std::abs(sp.mass_negative + sp.mass_nonnegative - sp.total) <= 1e-9 * sp.total);
    const SupportProfile sc = fourier_support_profile(f.conjugate());
    CHECK(sc.mass_nonnegative / sc.total < 1e-6);
    // Total is the grid norm plus the analytic tail of the carrier.
    CHECK(std::abs(sp.total - (sp.grid_norm_sq + sp.tail_correction)) <= 1e-9 * sp.total);
}

TEST_CASE("real Gaussian splits evenly and satisfies plain Parseval") {
    const auto g = EnergyGrid::uniform(-20, 20, 1 << 12);
    const auto f = SampledWaveFunction::sample(g, [](double e) { return cplx(std::exp(-e * e), 0); });
    const SupportProfile sp = fourier_support_profile(f);
    CHECK(std::abs(sp.mass_negative / sp.total - 0.5) < 1e-9);
    CHECK(std::abs(sp.mass_nonnegative / sp.total - 0.5) < 1e-9);
    CHECK(std::abs(sp.total - sp.grid_norm_sq) <= 1e-9 * sp.total);
    CHECK(std::abs(sp.total - std::sqrt(std::numbers::pi / 2)) < 1e-9);
}

TEST_CASE("input guards") {
    const auto g = window(200, 1 << 10);
    CHECK_THROWS_AS(fourier_support_profile(SampledWaveFunction::sample(g, [](double) { return cplx(1); })),
                    InsufficientDecay);
    std::vector<double> pts;
    for (int i = 0; i < 64; ++i) pts.push_back(i + 0.001 * i * i);
    const EnergyGrid nu(pts);
    CHECK_THROWS_AS(fourier_support_profile(SampledWaveFunction::sample(nu, [](double e) { return cplx(std::exp(-e)); })),
                    GridNotUniform);
    CHECK_THROWS_AS(hardy_classify(bw(g), 0.6), ValidationError);
}

TEST_CASE("hardy_classify examples") {
    const auto g = window(200, 1 << 14);
    const auto f = bw(g);
    const HardyClass c = hardy_classify(f);
    CHECK(c.kind == HardyKind::Lower);
    CHECK(c.leakage < 1e-6);
    CHECK(hardy_classify(f.conjugate()).kind == HardyKind::Upper);

    // Equal-norm lower and upper pole terms: 1/(E - z_R) has norm^2 2pi/Gamma,
    // sqrt(2)/(E - (e_r + i Gamma)) has norm^2 2 pi/(2 Gamma).
    const auto mixed = SampledWaveFunction::sample(g, [](double e) {
        return 1.0 / (e - kPole.z()) + std::sqrt(2.0) / (e - cplx(kPole.e_r(), kPole.gamma()));
    });
    const HardyClass m = hardy_classify(mixed);
    CHECK(m.kind == HardyKind::Neither);
    CHECK(std::abs(m.leakage - 0.5) < 1e-3);
}

TEST_CASE("classification is stable under grid refinement") {
    const double tol = 1e-4;
    const double a = hardy_classify(bw(window(200, 1 << 14)), tol).leakage;
    const double b = hardy_classify(bw(window(200, 1 << 15)), tol).leakage;
    CHECK(std::abs(a - b) < 10 * tol);
}

TEST_CASE("hardy_project examples") {
    const auto g = window(800, 1 << 16);
    const auto f = bw(g);
    const HardyParts parts = hardy_project(f);
    CHECK(std::sqrt(parts.upper.l2_norm_sq() / f.l2_norm_sq()) < 1e-6);

    std::vector<cplx> sum(f.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = parts.upper.values()[i] + parts.lower.values()[i];
    CHECK(rel_l2(SampledWaveFunction(g, sum), f) < 1e-9);
    CHECK(hardy_classify(parts.lower).kind == HardyKind::Lower);

    const cplx alpha(0.7, -1.3);
    std::vector<cplx> scaled(f.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = alpha * f.values()[i];
    const HardyParts ps = hardy_project(SampledWaveFunction(g, scaled));
    std::vector<cplx> expect(f.size());
    for (std::size_t i = 0; i < expect.size(); ++i) expect[i] = alpha * parts.lower.values()[i];
    CHECK(rel_l2(ps.lower, SampledWaveFunction(g, expect)) < 1e-12);
}

TEST_CASE("hardy_project recovers analytic lower and upper components") {
    const auto g = window(800, 1 << 16);
    const auto lo = SampledWaveFunction::sample(g, [](double e) { return 1.0 / (e - kPole.z()); });
    const auto up = SampledWaveFunction::sample(
        g, [](double e) { return std::sqrt(2.0) / (e - cplx(kPole.e_r(), kPole.gamma())); });
    std::vector<cplx> sum(lo.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = lo.values()[i] + up.values()[i];
    const HardyParts parts = hardy_project(SampledWaveFunction(g, sum));
    CHECK(rel_l2(parts.lower, lo) < 1e-6);
    CHECK(rel_l2(parts.upper, up) < 1e-6);
    CHECK(hardy_classify(parts.lower).kind == HardyKind::Lower);
    CHECK(hardy_classify(parts.upper).kind == HardyKind::Upper);
}

TEST_CASE("projected parts are orthogonal when both parts decay inside the window") {
    // exp(-E^2/8) exp(i t0 E) has a Gaussian transform centred on t0 with
    // width 1/2, so t0 = 5 is Lower and t0 = -4 is Upper to far below 1e-8.
    const auto g = EnergyGrid::uniform(-40, 40, 1 << 13);
    const auto f = SampledWaveFunction::sample(g, [](double e) {
        const double env = std::exp(-e * e / 8);
        return env * std::polar(1.0, 5 * e) + cplx(0, 0.7) * env * std::polar(1.0, -4 * e);
    });
    const HardyParts p = hardy_project(f);
    cplx ip = 0.0;
    const auto& u = p.upper.values();
    const auto& l = p.lower.values();
    const double h = g.spacing();
    for (std::size_t i = 0; i < u.size(); ++i) ip += std::conj(u[i]) * l[i] * h;
    CHECK(std::abs(ip) < 1e-8 * f.l2_norm_sq());
}

TEST_CASE("hilbert_transform examples") {
    const auto g = window(200, 1 << 14);
    const auto re = SampledWaveFunction::sample(g, [](double e) { return cplx((1.0 / (e - kPole.z())).real(), 0); });
    const auto im = SampledWaveFunction::sample(g, [](double e) { return cplx((1.0 / (e - kPole.z())).imag(), 0); });
    const auto h = hilbert_transform(re);
    CHECK(rel_l2(h, im) < 1e-5);
    const auto hh = hilbert_transform(h);
    std::vector<cplx> minus(re.size());
    for (std::size_t i = 0; i < minus.size(); ++i) minus[i] = -re.values()[i];
    CHECK(rel_l2(hh, SampledWaveFunction(g, minus)) < 1e-6);

    const auto zero = SampledWaveFunction::sample(g, [](double) { return cplx(0); });
    const auto hz = hilbert_transform(zero);
    for (const cplx& v : hz.values()) CHECK(v == cplx(0));
}

TEST_CASE("semigroup_multiplier examples and guards") {
    const auto g = window(200, 1 << 14);
    const auto f = bw(g);
    const EvolvedState id = semigroup_multiplier(f, 0.0, Guard::Enforce);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(id.f.values()[i] == f.values()[i]);

    const EvolvedState fwd = semigroup_multiplier(f, 5.0, Guard::Enforce);
    CHECK(fwd.lower_leakage < 1e-6);
    CHECK(hardy_classify(fwd.f).kind == HardyKind::Lower);

    const EvolvedState back = semigroup_multiplier(f, -5.0, Guard::Probe);
    CHECK(back.lower_leakage > 0.5);

    CHECK_THROWS_AS(semigroup_multiplier(f, -5.0, Guard::Enforce), CausalityViolation);
    CHECK_THROWS_AS(semigroup_multiplier(f.conjugate(), 1.0, Guard::Enforce), NotAStateFunction);
}

TEST_CASE("property: multiplier is unimodular and composes") {
    const auto g = window(200, 1 << 12);
    const auto f = bw(g);
    double peak = 0;
    for (const cplx& v : f.values()) peak = std::max(peak, std::abs(v));
    for (double t1 : {0.0, 0.3, 2.0}) {
        for (double t2 : {0.0, 1.7, 4.0}) {
            const auto a = semigroup_multiplier(semigroup_multiplier(f, t1, Guard::Enforce).f, t2, Guard::Enforce).f;
            const auto b = semigroup_multiplier(f, t1 + t2, Guard::Enforce).f;
            CHECK(std::abs(a.l2_norm_sq() - f.l2_norm_sq()) <= 1e-12 * f.l2_norm_sq());
            for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(std::abs(a.values()[i] - b.values()[i]) <= 1e-12 * peak);
        }
    }
}
