#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace tadecay::quad {

using cplx = std::complex<double>;

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_evaluations = 1'000'000;
};

struct Result {
    cplx value;
    double error = 0.0;
    std::size_t evaluations = 0;
};

// Integrand on a finite parameter interval.
struct Piece {
    std::function<cplx(double)> f;
    double a;
    double b;
};

// Globally adaptive Gauss-Kronrod 7/15 over all pieces at once: the tolerance
// applies to the sum, and the worst interval anywhere is bisected next.
// Throws QuadratureFailure when the evaluation budget runs out.
Result integrate_pieces(const std::vector<Piece>& pieces, const Options& opt = {});

Result integrate(const std::function<cplx(double)>& f, double a, double b, const Options& opt = {});

using Analytic = std::function<cplx(cplx)>;

// Description of an integrand g that continues analytically off the real axis
// except at the listed singularities.
struct LineIntegrand {
    Analytic g;
    std::vector<cplx> singularities;
    double scale = 1.0; // typical width of features of g
};

// Integral over the real line of g(E) exp(-i omega E).
// omega == 0 uses the tangent map E = c + s tan(theta). Otherwise the central
// window is integrated on the real axis (split into periods when the
// oscillation is fast) and both tails are rotated onto vertical rays where the
// exponential decays.
Result fourier_line(const LineIntegrand& in, double omega, const Options& opt = {});

// Same on [lower, inf), with geometric refinement next to the endpoint.
Result fourier_halfline(const LineIntegrand& in, double lower, double omega, const Options& opt = {});

} // namespace tadecay::quad
