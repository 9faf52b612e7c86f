#include "tadecay/kernels.hpp"

namespace tadecay::kernels {
namespace {

struct Table {
    double (*sum_norm)(const cplx*, std::size_t) noexcept;
    cplx (*dot_conj)(const cplx*, const cplx*, std::size_t) noexcept;
    void (*mul)(const cplx*, const cplx*, cplx*, std::size_t) noexcept;
    void (*add_pole)(const double*, std::size_t, cplx, cplx, cplx*) noexcept;
    std::size_t (*count_greater)(const double*, std::size_t, double) noexcept;
};

Table make_table(Isa isa) {
#if TADECAY_HAVE_AVX2_KERNELS
    if (isa == Isa::Avx2)
        return {avx2::sum_norm, avx2::dot_conj, avx2::mul, avx2::add_pole, avx2::count_greater};
#endif
    (void)isa;
    return {scalar::sum_norm, scalar::dot_conj, scalar::mul, scalar::add_pole, scalar::count_greater};
}

const Table& table() {
    static const Table t = make_table(active_isa());
    return t;
}

} // namespace

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if TADECAY_HAVE_AVX2_KERNELS
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept {
    static const Isa isa = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double sum_norm(const cplx* x, std::size_t n) noexcept { return table().sum_norm(x, n); }
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept { return table().dot_conj(a, b, n); }
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept { table().mul(a, b, out, n); }
void add_pole(const double* e, std::size_t n, cplx coef, cplx w, cplx* out) noexcept {
    table().add_pole(e, n, coef, w, out);
}
std::size_t count_greater(const double* x, std::size_t n, double t) noexcept {
    return table().count_greater(x, n, t);
}

} // namespace tadecay::kernels
