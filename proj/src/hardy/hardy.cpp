#include "tadecay/hardy.hpp"

#include "fft.hpp"
#include "tadecay/errors.hpp"
#include "tadecay/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tadecay {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail model q(E) = exp(i sigma (E - c)) [A/(E - w-) + B/(E - w+)] matched to f
// at both grid ends. Its transform is known in closed form, so the slowly
// decaying part of f never goes through the DFT; only r = f - q does, and r
// vanishes at the grid ends.
struct Carrier {
    double c = 0.0;
    double sigma = 0.0;
    cplx wm, wp;
    cplx a, b;
};

// Transform of one carrier term: coef * exp(-i w (t - sigma)) on [lo, hi].
struct TPiece {
    cplx coef;
    cplx w;
    double lo;
    double hi;
};

struct Prepared {
    std::vector<double> e;
    double h = 0.0;
    Carrier car;
    std::vector<cplx> q;
    std::vector<cplx> r;
    std::vector<TPiece> pieces;
    std::vector<cplx> phase_sigma; // exp(i E_n sigma)
};

double phase_slope(const std::vector<cplx>& f, std::size_t i, double h) {
    return std::arg(f[i + 1] * std::conj(f[i])) / h;
}

Carrier fit_carrier(const std::vector<double>& e, const std::vector<cplx>& f, double h) {
    const std::size_t n = e.size();
    Carrier car;
    car.c = 0.5 * (e.front() + e.back());
    const double half = 0.5 * (e.back() - e.front());
    const double beta = std::sqrt(h * half);
    car.wm = {car.c, -beta};
    car.wp = {car.c, beta};
    // Edge modulation from the phase slope, Richardson-extrapolated to remove
    // the 1/E^2 curvature of the phase.
    const std::size_t m = n / 4;
    const std::size_t probe[] = {0, 1, m, m + 1, n - 2 - m, n - 1 - m, n - 2, n - 1};
    bool usable = true;
    for (std::size_t i : probe) usable = usable && f[i] != cplx(0.0);
    if (usable) {
        const double sr = (4.0 * phase_slope(f, n - 2, h) - phase_slope(f, n - 2 - m, h)) / 3.0;
        const double sl = (4.0 * phase_slope(f, 0, h) - phase_slope(f, m, h)) / 3.0;
        car.sigma = 0.5 * (sr + sl);
    }
    const double e0 = e.front(), e1 = e.back();
    const cplx mod1 = std::polar(1.0, car.sigma * (e1 - car.c));
    const cplx mod0 = std::polar(1.0, car.sigma * (e0 - car.c));
    const cplx m11 = mod1 / (e1 - car.wm), m12 = mod1 / (e1 - car.wp);
    const cplx m21 = mod0 / (e0 - car.wm), m22 = mod0 / (e0 - car.wp);
    const cplx det = m11 * m22 - m12 * m21;
    car.a = (f.back() * m22 - m12 * f.front()) / det;
    car.b = (m11 * f.front() - m21 * f.back()) / det;
    return car;
}

void check_input(const SampledWaveFunction& f, const SpectralOptions& opt) {
    if (!f.grid().is_uniform()) throw GridNotUniform("spectral operations need a uniform grid");
    if (opt.padding < 1) throw ValidationError("padding factor must be >= 1");
    double peak = 0.0;
    for (const cplx& v : f.values()) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(f.values().front()), std::abs(f.values().back()));
    if (edge > opt.edge_ratio_max * peak)
        throw InsufficientDecay("samples at the grid ends are " + std::to_string(edge / peak) +
                                " of the peak; widen the grid");
}

bool is_zero(const SampledWaveFunction& f) {
    return std::all_of(f.values().begin(), f.values().end(), [](cplx v) { return v == cplx(0.0); });
}

Prepared prepare(const SampledWaveFunction& f) {
    Prepared p;
    p.e = f.grid().points();
    p.h = f.grid().spacing();
    const std::size_t n = p.e.size();
    p.car = fit_carrier(p.e, f.values(), p.h);
    std::vector<cplx> poles(n, cplx(0.0));
    kernels::add_pole(p.e.data(), n, p.car.a, p.car.wm, poles.data());
    kernels::add_pole(p.e.data(), n, p.car.b, p.car.wp, poles.data());
    p.q.resize(n);
    p.r.resize(n);
    p.phase_sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.q[i] = poles[i] * std::polar(1.0, p.car.sigma * (p.e[i] - p.car.c));
        p.r[i] = f.values()[i] - p.q[i];
        p.phase_sigma[i] = std::polar(1.0, p.e[i] * p.car.sigma);
    }
    const cplx shift = std::polar(1.0, -p.car.sigma * p.car.c);
    p.pieces = {{cplx(0.0, -1.0) * p.car.a * shift, p.car.wm, p.car.sigma, kInf},
                {cplx(0.0, 1.0) * p.car.b * shift, p.car.wp, -kInf, p.car.sigma}};
    return p;
}

// int_lo^hi |coef exp(-i w (t - sigma))|^2 dt
double piece_mass(const TPiece& pc, double sigma, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    const double g = 2.0 * pc.w.imag();
    auto prim = [&](double t) { return std::isinf(t) ? 0.0 : std::exp(g * (t - sigma)) / g; };
    return std::norm(pc.coef) * (prim(hi) - prim(lo));
}

// out_n += sgn * coef * exp(i E_n t) exp(-i w (t - sigma)) / (i (E_n - w)), t finite.
void add_primitive(const Prepared& p, const TPiece& pc, double t, double sgn, std::vector<cplx>& out) {
    if (std::isinf(t)) return;
    const std::size_t n = p.e.size();
    const cplx k = sgn * pc.coef * std::exp(cplx(0.0, -1.0) * pc.w * (t - p.car.sigma)) / cplx(0.0, 1.0);
    if (t == 0.0) {
        kernels::add_pole(p.e.data(), n, k, pc.w, out.data());
        return;
    }
    std::vector<cplx> v(n, cplx(0.0));
    kernels::add_pole(p.e.data(), n, k, pc.w, v.data());
    if (t == p.car.sigma) {
        kernels::mul(v.data(), p.phase_sigma.data(), v.data(), n);
    } else {
        for (std::size_t i = 0; i < n; ++i) v[i] *= std::polar(1.0, p.e[i] * t);
    }
    for (std::size_t i = 0; i < n; ++i) out[i] += v[i];
}

// Samples of int_lo^hi F_piece(t) exp(iE_n t) dt.
std::vector<cplx> piece_segment(const Prepared& p, const TPiece& pc, double lo, double hi) {
    std::vector<cplx> s(p.e.size(), cplx(0.0));
    if (lo < hi) {
        add_primitive(p, pc, hi, 1.0, s);
        add_primitive(p, pc, lo, -1.0, s);
    }
    return s;
}

double trapezoid_norm(const std::vector<cplx>& v, double h) {
    const double s = kernels::sum_norm(v.data(), v.size());
    return h * (s - 0.5 * (std::norm(v.front()) + std::norm(v.back())));
}

SupportProfile profile_prepared(const Prepared& p, const SampledWaveFunction& f, int padding) {
    const std::size_t n = p.e.size();
    const double h = p.h;
    const std::size_t len = detail::next_pow2(static_cast<std::size_t>(padding) * n);
    std::vector<cplx> buf(len, cplx(0.0));
    std::copy(p.r.begin(), p.r.end(), buf.begin());
    detail::fft(buf, -1);

    const double dt = 2.0 * kPi / (static_cast<double>(len) * h);
    const double scale = (h / (2.0 * kPi)) * (h / (2.0 * kPi));
    const double g0 = scale * std::norm(buf[0]);
    const double g1 = scale * std::norm(buf[1]);
    const double gm1 = scale * std::norm(buf[len - 1]);
    const double pos = scale * kernels::sum_norm(buf.data() + 1, len / 2 - 1);
    const double neg = scale * kernels::sum_norm(buf.data() + len / 2, len / 2);
    // The t = 0 sample is shared equally; the Euler-Maclaurin term corrects
    // the trapezoid rule at the split point.
    const double slope = (g1 - gm1) / (2.0 * dt);
    double mneg = 2.0 * kPi * (dt * (neg + 0.5 * g0) - dt * dt / 12.0 * slope);
    double mpos = 2.0 * kPi * (dt * (pos + 0.5 * g0) + dt * dt / 12.0 * slope);

    double carrier_full = 0.0;
    for (const TPiece& pc : p.pieces) {
        carrier_full += 2.0 * kPi * piece_mass(pc, p.car.sigma, pc.lo, pc.hi);
        for (int side = 0; side < 2; ++side) {
            const double lo = side == 0 ? std::max(pc.lo, -kInf) : std::max(pc.lo, 0.0);
            const double hi = side == 0 ? std::min(pc.hi, 0.0) : std::min(pc.hi, kInf);
            if (!(lo < hi)) continue;
            const double m = 2.0 * kPi * piece_mass(pc, p.car.sigma, lo, hi);
            const std::vector<cplx> seg = piece_segment(p, pc, lo, hi);
            const double x = 2.0 * h * kernels::dot_conj(p.r.data(), seg.data(), n).real();
            (side == 0 ? mneg : mpos) += m + x;
        }
    }
    SupportProfile out;
    out.mass_negative = std::max(0.0, mneg);
    out.mass_nonnegative = std::max(0.0, mpos);
    out.total = out.mass_negative + out.mass_nonnegative;
    out.grid_norm_sq = f.l2_norm_sq();
    out.tail_correction = carrier_full - trapezoid_norm(p.q, h);
    return out;
}

// Linear discrete Hilbert transform: (H r)_i = sum_n r_n 2/(pi (i - n)), i - n odd.
std::vector<cplx> discrete_hilbert(const std::vector<cplx>& r) {
    const std::size_t n = r.size();
    const std::size_t len = detail::next_pow2(3 * n);
    std::vector<cplx> a(len, cplx(0.0)), k(len, cplx(0.0));
    std::copy(r.begin(), r.end(), a.begin());
    for (std::size_t p = 0; p + 1 < 2 * n; ++p) {
        const long j = static_cast<long>(p) - static_cast<long>(n - 1);
        if (j % 2 != 0) k[p] = 2.0 / (kPi * static_cast<double>(j));
    }
    detail::fft(a, -1);
    detail::fft(k, -1);
    kernels::mul(a.data(), k.data(), a.data(), len);
    detail::fft(a, 1);
    std::vector<cplx> out(n);
    const double inv = 1.0 / static_cast<double>(len);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i + n - 1] * inv;
    return out;
}

std::vector<cplx> lower_part(const Prepared& p) {
    const std::size_t n = p.e.size();
    const std::vector<cplx> hr = discrete_hilbert(p.r);
    std::vector<cplx> lower(n);
    for (std::size_t i = 0; i < n; ++i) lower[i] = 0.5 * (p.r[i] + cplx(0.0, 1.0) * hr[i]);
    for (const TPiece& pc : p.pieces) {
        const double lo = std::max(pc.lo, 0.0);
        const std::vector<cplx> seg = piece_segment(p, pc, lo, pc.hi);
        for (std::size_t i = 0; i < n; ++i) lower[i] += seg[i];
    }
    return lower;
}

} // namespace

SupportProfile fourier_support_profile(const SampledWaveFunction& f, const SpectralOptions& opt) {
    check_input(f, opt);
    if (is_zero(f)) throw ValidationError("zero function has no support profile");
    return profile_prepared(prepare(f), f, opt.padding);
}

HardyClass hardy_classify(const SampledWaveFunction& f, double tol, const SpectralOptions& opt) {
    if (!(tol > 0.0 && tol < 0.5)) throw ValidationError("classification tolerance must be in (0, 0.5)");
    const SupportProfile sp = fourier_support_profile(f, opt);
    const double neg = sp.mass_negative / sp.total;
    const double pos = sp.mass_nonnegative / sp.total;
    if (neg < tol) return {HardyKind::Lower, neg};
    if (pos < tol) return {HardyKind::Upper, pos};
    return {HardyKind::Neither, std::min(neg, pos)};
}

HardyParts hardy_project(const SampledWaveFunction& f, const SpectralOptions& opt) {
    check_input(f, opt);
    if (is_zero(f)) return {f, f};
    const Prepared p = prepare(f);
    std::vector<cplx> lower = lower_part(p);
    std::vector<cplx> upper(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) upper[i] = f.values()[i] - lower[i];
    return {SampledWaveFunction(f.grid(), std::move(upper)), SampledWaveFunction(f.grid(), std::move(lower))};
}

SampledWaveFunction hilbert_transform(const SampledWaveFunction& f, const SpectralOptions& opt) {
    check_input(f, opt);
    if (is_zero(f)) return f;
    const Prepared p = prepare(f);
    const std::vector<cplx> lower = lower_part(p);
    std::vector<cplx> out(lower.size());
    // sign(t) = 2 P_lower - 1
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx(0.0, -1.0) * (2.0 * lower[i] - f.values()[i]);
    return SampledWaveFunction(f.grid(), std::move(out));
}

EvolvedState semigroup_multiplier(const SampledWaveFunction& f, double t, Guard guard, Units units,
                                  const SpectralOptions& opt) {
    if (!std::isfinite(t)) throw ValidationError("time must be finite");
    if (!(units.hbar > 0.0)) throw ValidationError("hbar must be > 0");
    if (guard == Guard::Enforce && t < 0.0)
        throw CausalityViolation("semigroup evolution is defined only for t >= 0; got t = " + std::to_string(t));
    const HardyClass cls = hardy_classify(f, 1e-4, opt);
    if (cls.kind != HardyKind::Lower)
        throw NotAStateFunction("input is not Lower at tolerance 1e-4 (leakage " + std::to_string(cls.leakage) + ")");
    const auto& e = f.grid().points();
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values()[i] * std::polar(1.0, e[i] * t / units.hbar);
    SampledWaveFunction out(f.grid(), std::move(v));
    const SupportProfile sp = fourier_support_profile(out, opt);
    return {std::move(out), sp.mass_negative / sp.total};
}

} // namespace tadecay
