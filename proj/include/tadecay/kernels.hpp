#pragma once

// Hot loops shared by the spectral and analysis code. Each kernel has a
// scalar reference and, on x86-64, an AVX2/FMA variant chosen at runtime.

#include <complex>
#include <cstddef>

namespace tadecay::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

bool isa_available(Isa isa) noexcept;
// Best available ISA, detected once.
Isa active_isa() noexcept;
const char* isa_name(Isa isa) noexcept;

// sum |x_i|^2
double sum_norm(const cplx* x, std::size_t n) noexcept;
// sum conj(a_i) b_i
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept;
// out_i = a_i b_i (out may alias a or b)
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
// out_i += coef / (e_i - w)
void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept;
// #{i : x_i > t}
std::size_t count_greater(const double* x, std::size_t n, double t) noexcept;

namespace scalar {
double sum_norm(const cplx* x, std::size_t n) noexcept;
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept;
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept;
std::size_t count_greater(const double* x, std::size_t n, double t) noexcept;
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define TADECAY_HAVE_AVX2_KERNELS 1
namespace avx2 {
double sum_norm(const cplx* x, std::size_t n) noexcept;
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept;
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept;
std::size_t count_greater(const double* x, std::size_t n, double t) noexcept;
} // namespace avx2
#else
#define TADECAY_HAVE_AVX2_KERNELS 0
#endif

} // namespace tadecay::kernels
