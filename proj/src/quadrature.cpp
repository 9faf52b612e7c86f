#include "tadecay/quadrature.hpp"

#include "tadecay/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace tadecay::quad {
namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Interval {
    std::size_t piece;
    double a;
    double b;
    cplx value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

// QUADPACK qk15 with the usual error scaling, applied to the complex modulus.
void gk15(const std::function<cplx(double)>& f, Interval& iv) {
    const double c = 0.5 * (iv.a + iv.b);
    const double h = 0.5 * (iv.b - iv.a);
    const cplx fc = f(c);
    cplx kron = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    double resabs = std::abs(fc) * kWgk[7];
    cplx fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const cplx s = fv1[j] + fv2[j];
        kron += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    const cplx mean = kron * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    const double ah = std::abs(h);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((kron - gauss) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(err, 50.0 * kEps * resabs);
    iv.value = kron * h;
    iv.error = err;
}

bool bisectable(const Interval& iv) {
    const double mid = 0.5 * (iv.a + iv.b);
    const double span = std::max(std::abs(iv.a), std::abs(iv.b));
    return mid > iv.a && mid < iv.b && (iv.b - iv.a) > 1e3 * kEps * span;
}

double tangent_scale(const LineIntegrand& in) {
    if (!(in.scale > 0.0) || !std::isfinite(in.scale))
        throw ValidationError("quadrature scale must be positive and finite");
    return in.scale;
}

// Real-axis window enclosing every singularity with a margin, so the rotated
// tails see no singularity in their quadrants.
std::pair<double, double> window(const LineIntegrand& in) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double im = 0.0;
    for (const cplx& z : in.singularities) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
        im = std::max(im, std::abs(z.imag()));
    }
    if (in.singularities.empty()) lo = hi = 0.0;
    const double margin = 10.0 * std::max(in.scale, im);
    return {lo - margin, hi + margin};
}

// Adds real-axis pieces for [a, b], split at singularity positions and, when
// the oscillation is fast, at period boundaries.
void add_window(std::vector<Piece>& out, const LineIntegrand& in, double omega, double a, double b,
                std::vector<double> extra) {
    if (!(b > a)) return;
    const Analytic g = in.g;
    auto f = [g, omega](double e) { return g(cplx(e, 0.0)) * std::polar(1.0, -omega * e); };
    std::vector<double> cuts = std::move(extra);
    for (const cplx& z : in.singularities) cuts.push_back(z.real());
    if (std::abs(omega) * in.scale > 50.0) {
        const double period = 2.0 * std::numbers::pi / std::abs(omega);
        const double n = std::min(2e4, std::ceil((b - a) / period));
        const double step = (b - a) / n;
        for (double k = 1; k < n; ++k) cuts.push_back(a + k * step);
    }
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double prev = a;
    for (double x : cuts) {
        if (x <= prev) continue;
        if (x > b) break;
        out.push_back({f, prev, x});
        prev = x;
    }
}

// Tail from the real point x0 towards +inf (dir = +1) or -inf (dir = -1),
// rotated onto the vertical ray where exp(-i omega E) decays.
void add_rotated_tail(std::vector<Piece>& out, const Analytic& g, double omega, double x0, int dir,
                      double scale) {
    // omega > 0 decays for Im E < 0.
    const double sgn_im = omega > 0.0 ? -1.0 : 1.0;
    const cplx step(0.0, sgn_im);
    // int_{x0}^{+inf} = int over ray x0 + step*y; the ray towards -inf is the
    // same ray traversed with the opposite orientation.
    const double orient = dir > 0 ? 1.0 : -1.0;
    const double s = std::min(scale, 1.0 / std::abs(omega));
    auto f = [g, omega, x0, step, orient, s](double th) {
        const double c = std::cos(th);
        const double y = s * std::tan(th);
        const cplx e = x0 + step * y;
        return orient * step * s / (c * c) * g(e) * std::exp(cplx(0.0, -omega) * e);
    };
    out.push_back({f, 0.0, 0.5 * std::numbers::pi});
}

} // namespace

Result integrate_pieces(const std::vector<Piece>& pieces, const Options& opt) {
    if (!(opt.abs_tol >= 0.0) || !(opt.rel_tol >= 0.0) || (opt.abs_tol == 0.0 && opt.rel_tol == 0.0))
        throw ValidationError("quadrature tolerance must be positive");
    std::priority_queue<Interval> active;
    std::vector<Interval> done;
    std::size_t evals = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].b > pieces[i].a)) continue;
        Interval iv{i, pieces[i].a, pieces[i].b, {}, 0.0};
        gk15(pieces[i].f, iv);
        evals += 15;
        active.push(iv);
    }

    auto totals = [&](cplx& v, double& e) {
        // Summation order is fixed by sorting so results do not depend on
        // queue history.
        std::vector<Interval> all = done;
        auto q = active;
        while (!q.empty()) {
            all.push_back(q.top());
            q.pop();
        }
        std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) {
            return x.piece != y.piece ? x.piece < y.piece : x.a < y.a;
        });
        v = 0.0;
        e = 0.0;
        for (const Interval& iv : all) {
            v += iv.value;
            e += iv.error;
        }
    };

    cplx value;
    double error;
    totals(value, error);
    std::size_t since_resum = 0;
    while (!active.empty()) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
        if (error <= tol) break;
        if (evals + 30 > opt.max_evaluations)
            throw QuadratureFailure("quadrature did not converge within the evaluation budget",
                                    error, evals);
        Interval worst = active.top();
        active.pop();
        if (!bisectable(worst)) {
            done.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Interval l{worst.piece, worst.a, mid, {}, 0.0};
        Interval r{worst.piece, mid, worst.b, {}, 0.0};
        gk15(pieces[worst.piece].f, l);
        gk15(pieces[worst.piece].f, r);
        evals += 30;
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        active.push(l);
        active.push(r);
        if (++since_resum == 256) {
            totals(value, error);
            since_resum = 0;
        }
    }
    totals(value, error);
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (!(error <= tol) || !std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw QuadratureFailure("quadrature stalled at the resolution limit", error, evals);
    return {value, error, evals};
}

Result integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opt) {
    if (a == b) return {};
    if (a > b) {
        Result r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    return integrate_pieces({{f, a, b}}, opt);
}

Result fourier_line(const LineIntegrand& in, double omega, const Options& opt) {
    const double s = tangent_scale(in);
    std::vector<Piece> pieces;
    if (omega == 0.0) {
        const auto [lo, hi] = window(in);
        const double c = 0.5 * (lo + hi);
        const double width = std::max(s, 0.5 * (hi - lo));
        const Analytic g = in.g;
        auto f = [g, c, width](double th) {
            const double cs = std::cos(th);
            return g(cplx(c + width * std::tan(th), 0.0)) * (width / (cs * cs));
        };
        std::vector<double> cuts{-0.5 * std::numbers::pi, 0.5 * std::numbers::pi};
        for (const cplx& z : in.singularities) {
            const double th = std::atan((z.real() - c) / width);
            cuts.push_back(th);
            // Resolve the peak of width |Im z| around each singularity.
            const double w = std::max(std::abs(z.imag()), 1e-3 * s);
            cuts.push_back(std::atan((z.real() - w - c) / width));
            cuts.push_back(std::atan((z.real() + w - c) / width));
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({f, cuts[i], cuts[i + 1]});
        return integrate_pieces(pieces, opt);
    }
    const auto [lo, hi] = window(in);
    add_window(pieces, in, omega, lo, hi, {});
    add_rotated_tail(pieces, in.g, omega, hi, +1, std::max(s, hi - lo));
    add_rotated_tail(pieces, in.g, omega, lo, -1, std::max(s, hi - lo));
    return integrate_pieces(pieces, opt);
}

Result fourier_halfline(const LineIntegrand& in, double lower, double omega, const Options& opt) {
    const double s = tangent_scale(in);
    auto [lo, hi] = window(in);
    hi = std::max(hi, lower + 10.0 * s);
    // Geometric cuts approaching the endpoint.
    std::vector<double> near;
    const double reach = std::min(s, hi - lower);
    for (int k = 0; k <= 30; ++k) near.push_back(lower + reach * std::ldexp(1.0, -k));
    std::vector<Piece> pieces;
    if (omega == 0.0) {
        const double c = lower;
        const double width = std::max(s, hi - lower);
        const Analytic g = in.g;
        auto f = [g, c, width](double th) {
            const double cs = std::cos(th);
            return g(cplx(c + width * std::tan(th), 0.0)) * (width / (cs * cs));
        };
        std::vector<double> cuts{0.0, 0.5 * std::numbers::pi};
        for (double x : near) cuts.push_back(std::atan((x - c) / width));
        for (const cplx& z : in.singularities) {
            const double w = std::max(std::abs(z.imag()), 1e-3 * s);
            for (double x : {z.real() - w, z.real(), z.real() + w})
                if (x > lower) cuts.push_back(std::atan((x - c) / width));
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) pieces.push_back({f, cuts[i], cuts[i + 1]});
        return integrate_pieces(pieces, opt);
    }
    LineIntegrand clipped = in;
    clipped.singularities.clear();
    for (const cplx& z : in.singularities)
        if (z.real() > lower) clipped.singularities.push_back(z);
    add_window(pieces, clipped, omega, lower, hi, near);
    add_rotated_tail(pieces, in.g, omega, hi, +1, std::max(s, hi - lower));
    return integrate_pieces(pieces, opt);
}

} // namespace tadecay::quad
