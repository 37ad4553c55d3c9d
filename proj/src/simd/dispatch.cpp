// Runtime ISA selection.  The table is resolved once on first use; the
// ZEROMODE_SIMD environment variable forces a backend (used by the
// scalar-vs-vector equivalence tests).

#include "kernels_impl.hpp"

#include <cstdlib>
#include <cstring>

namespace zm::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa resolve() {
    const char* env = std::getenv("ZEROMODE_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
#ifdef ZM_HAVE_AVX2
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
#endif
        // "auto" or unrecognized value: fall through to detection
    }
#ifdef ZM_HAVE_AVX2
    if (cpu_has_avx2()) return Isa::avx2;
#endif
    return Isa::scalar;
}

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*nrm2sq)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scal)(double, double*, std::size_t);
    cplx (*zdotc)(const cplx*, const cplx*, std::size_t);
    double (*znrm2sq)(const cplx*, std::size_t);
    void (*zaxpy)(cplx, const cplx*, cplx*, std::size_t);
    void (*zrot)(double, double, cplx*, cplx*, std::size_t);
    void (*vexp)(const double*, double*, std::size_t);
    void (*stencil9)(const double*, double*, int, double, double, double);
};

constexpr Table kScalarTable = {
    scalar_impl::dot,    scalar_impl::nrm2sq, scalar_impl::axpy,
    scalar_impl::scal,   scalar_impl::zdotc,  scalar_impl::znrm2sq,
    scalar_impl::zaxpy,  scalar_impl::zrot,   scalar_impl::vexp,
    scalar_impl::stencil9};

#ifdef ZM_HAVE_AVX2
constexpr Table kAvx2Table = {
    avx2_impl::dot,    avx2_impl::nrm2sq, avx2_impl::axpy,
    avx2_impl::scal,   avx2_impl::zdotc,  avx2_impl::znrm2sq,
    avx2_impl::zaxpy,  avx2_impl::zrot,   avx2_impl::vexp,
    avx2_impl::stencil9};
#endif

Isa g_isa = resolve();

const Table& table() {
#ifdef ZM_HAVE_AVX2
    if (g_isa == Isa::avx2) return kAvx2Table;
#endif
    return kScalarTable;
}

} // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        default: return "scalar";
    }
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
double nrm2sq(const double* x, std::size_t n) { return table().nrm2sq(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void scal(double a, double* x, std::size_t n) { table().scal(a, x, n); }
cplx zdotc(const cplx* x, const cplx* y, std::size_t n) { return table().zdotc(x, y, n); }
double znrm2sq(const cplx* x, std::size_t n) { return table().znrm2sq(x, n); }
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) { table().zaxpy(a, x, y, n); }
void zrot(double c, double s, cplx* x, cplx* y, std::size_t n) { table().zrot(c, s, x, y, n); }
void vexp(const double* x, double* y, std::size_t n) { table().vexp(x, y, n); }
void stencil9(const double* in, double* out, int n, double c0, double c1, double c2) {
    table().stencil9(in, out, n, c0, c1, c2);
}

} // namespace zm::simd
