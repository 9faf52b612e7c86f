#include "tadecay/errors.hpp"
#include "tadecay/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tadecay {
namespace {

constexpr double kPi = std::numbers::pi;

void require_hardy(const RationalTestFunction& test) {
    if (test.half_plane() < 0)
        throw NonHardyTest("test function has poles in the lower half-plane");
}

double feature_scale(const RationalTestFunction& test, cplx z) {
    double s = std::abs(z.imag());
    for (const cplx& p : test.pole_locations()) s = std::min(s, std::abs(p.imag()));
    return s;
}

std::vector<cplx> singularities(const RationalTestFunction& test, cplx z) {
    std::vector<cplx> s = test.pole_locations();
    s.push_back(z);
    return s;
}

} // namespace

cplx bw_amplitude(double e, const ResonancePole& pole) { return pole.residue() / (e - pole.z()); }

cplx gamow_density(double e, const ResonancePole& pole) {
    return cplx(0.0, std::sqrt(pole.gamma() / (2.0 * kPi))) / (e - pole.z());
}

double lorentzian_norm(const ResonancePole& pole, Domain domain) {
    if (domain == Domain::FullLine) return 1.0;
    if (!(pole.e_r() > 0.0)) throw ValidationError("half-line support needs e_r > 0");
    return 0.5 + std::atan(2.0 * pole.e_r() / pole.gamma()) / kPi;
}

quad::Result line_pairing(const RationalTestFunction& test, cplx z, double t, Units units,
                          const quad::Options& opt) {
    if (!(units.hbar > 0.0)) throw ValidationError("hbar must be > 0");
    quad::LineIntegrand in;
    in.g = [test, z](cplx e) { return test(e) / (e - z); };
    in.singularities = singularities(test, z);
    in.scale = feature_scale(test, z);
    return quad::fourier_line(in, t / units.hbar, opt);
}

cplx residue_pairing(const RationalTestFunction& test, const ResonancePole& pole) {
    return cplx(0.0, -2.0 * kPi) * test(pole.z());
}

cplx cauchy_pairing(const RationalTestFunction& test, const ResonancePole& pole, const quad::Options& opt) {
    require_hardy(test);
    return line_pairing(test, pole.z(), 0.0, {}, opt).value;
}

DefectReport eigenvalue_defect(const RationalTestFunction& test, const ResonancePole& pole,
                               const quad::Options& opt) {
    require_hardy(test);
    const cplx z = pole.z();
    quad::LineIntegrand weighted;
    weighted.g = [test, z](cplx e) { return e * test(e) / (e - z); };
    weighted.singularities = singularities(test, z);
    weighted.scale = feature_scale(test, z);
    const cplx lhs = quad::fourier_line(weighted, 0.0, opt).value;

    quad::LineIntegrand plain;
    plain.g = [test](cplx e) { return test(e); };
    plain.singularities = test.pole_locations();
    plain.scale = weighted.scale;
    const cplx integral = quad::fourier_line(plain, 0.0, opt).value;

    const cplx pairing = line_pairing(test, z, 0.0, {}, opt).value;
    return {std::abs(lhs - z * pairing - integral), integral};
}

cplx evolved_pairing(const RationalTestFunction& test, const ResonancePole& pole, double t, Units units,
                     const quad::Options& opt) {
    require_hardy(test);
    if (!std::isfinite(t)) throw ValidationError("time must be finite");
    return line_pairing(test, pole.z(), t, units, opt).value;
}

double survival_probability(const ResonancePole& pole, Duration t, Domain domain, Units units,
                            const quad::Options& opt) {
    if (!(units.hbar > 0.0)) throw ValidationError("hbar must be > 0");
    if (domain == Domain::FullLine) return std::exp(-pole.gamma() * t.value() / units.hbar);
    return survival_probability_quadrature(pole, t, domain, units, opt);
}

double survival_probability_quadrature(const ResonancePole& pole, Duration t, Domain domain, Units units,
                                       const quad::Options& opt) {
    if (!(units.hbar > 0.0)) throw ValidationError("hbar must be > 0");
    const double norm = lorentzian_norm(pole, domain);
    const cplx z = pole.z();
    const double c = pole.gamma() / (2.0 * kPi);
    quad::LineIntegrand in;
    in.g = [z, c](cplx e) { return c / ((e - z) * (e - std::conj(z))); };
    in.singularities = {z, std::conj(z)};
    in.scale = pole.gamma();
    const double omega = t.value() / units.hbar;
    const cplx amp = domain == Domain::FullLine ? quad::fourier_line(in, omega, opt).value
                                                : quad::fourier_halfline(in, 0.0, omega, opt).value;
    return std::norm(amp) / (norm * norm);
}

} // namespace tadecay
