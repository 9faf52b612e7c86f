#include "tadecay/kernels.hpp"

namespace tadecay::kernels::scalar {

double sum_norm(const cplx* x, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept {
    const double wr = w.real(), wi = w.imag();
    const double cr = coef.real(), ci = coef.imag();
    for (std::size_t i = 0; i < n; ++i) {
        // 1/(d - i wi) = (d + i wi)/(d^2 + wi^2)
        const double d = e[i] - wr;
        const double den = d * d + wi * wi;
        const double ir = d / den, ii = wi / den;
        out[i] += cplx(cr * ir - ci * ii, cr * ii + ci * ir);
    }
}

std::size_t count_greater(const double* x, std::size_t n, double t) noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += x[i] > t ? 1 : 0;
    return c;
}

} // namespace tadecay::kernels::scalar
