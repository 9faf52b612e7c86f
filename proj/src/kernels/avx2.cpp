// Built with -mavx2 -mfma; only called after a runtime CPU check.
#include "tadecay/kernels.hpp"

#include <immintrin.h>

namespace tadecay::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Two complex numbers per register: [re0 im0 re1 im1].
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d are = _mm256_movedup_pd(a);
    const __m256d aim = _mm256_permute_pd(a, 0xF);
    const __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

} // namespace

double sum_norm(const cplx* x, std::size_t n) noexcept {
    const double* p = reinterpret_cast<const double*>(x);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        re = _mm256_fmadd_pd(va, vb, re);
        // lanes [ar*bi, ai*br]; the imaginary part is even minus odd lanes
        im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), im);
    }
    alignas(32) double r[4], m[4];
    _mm256_store_pd(r, re);
    _mm256_store_pd(m, im);
    double sre = (r[0] + r[1]) + (r[2] + r[3]);
    double sim = (m[0] - m[1]) + (m[2] - m[3]);
    for (; i < n; ++i) {
        sre += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        sim += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {sre, sim};
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(po + 2 * i, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept {
    const double wr = w.real(), wi = w.imag();
    const double cr = coef.real(), ci = coef.imag();
    const __m256d vwr = _mm256_set1_pd(wr), vwi = _mm256_set1_pd(wi);
    const __m256d vcr = _mm256_set1_pd(cr), vci = _mm256_set1_pd(ci);
    const __m256d wi2 = _mm256_mul_pd(vwi, vwi);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(e + i), vwr);
        const __m256d den = _mm256_fmadd_pd(d, d, wi2);
        const __m256d ir = _mm256_div_pd(d, den);
        const __m256d ii = _mm256_div_pd(vwi, den);
        const __m256d re = _mm256_fmsub_pd(vcr, ir, _mm256_mul_pd(vci, ii));
        const __m256d im = _mm256_fmadd_pd(vcr, ii, _mm256_mul_pd(vci, ir));
        // interleave [re0 re1 re2 re3], [im0 ...] into complex order
        const __m256d lo = _mm256_unpacklo_pd(re, im); // re0 im0 re2 im2
        const __m256d hi = _mm256_unpackhi_pd(re, im); // re1 im1 re3 im3
        const __m256d c01 = _mm256_permute2f128_pd(lo, hi, 0x20);
        const __m256d c23 = _mm256_permute2f128_pd(lo, hi, 0x31);
        _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(_mm256_loadu_pd(po + 2 * i), c01));
        _mm256_storeu_pd(po + 2 * i + 4, _mm256_add_pd(_mm256_loadu_pd(po + 2 * i + 4), c23));
    }
    for (; i < n; ++i) {
        const double d = e[i] - wr;
        const double den = d * d + wi * wi;
        const double ir = d / den, ii = wi / den;
        out[i] += cplx(cr * ir - ci * ii, cr * ii + ci * ir);
    }
}

std::size_t count_greater(const double* x, std::size_t n, double t) noexcept {
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t c = 0, i = 0;
    for (; i + 4 <= n; i += 4) {
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(x + i), vt, _CMP_GT_OQ));
        c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) c += x[i] > t ? 1 : 0;
    return c;
}

} // namespace tadecay::kernels::avx2
