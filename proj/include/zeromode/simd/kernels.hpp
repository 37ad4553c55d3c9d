// Vectorized inner-loop kernels with runtime ISA dispatch.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant selected once at startup.  The environment variable
// ZEROMODE_SIMD=scalar|avx2|auto overrides auto-detection (the scalar path
// is the reference the vector paths are equivalence-tested against).

#pragma once

#include <complex>
#include <cstddef>

namespace zm::simd {

enum class Isa { scalar, avx2 };

// ISA resolved for this process (env override applied once, thread-safe).
Isa active_isa();
const char* isa_name(Isa isa);
bool cpu_has_avx2();

using cplx = std::complex<double>;

// --- real vectors -----------------------------------------------------------
double dot(const double* x, const double* y, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);   // y += a*x
void scal(double a, double* x, std::size_t n);

// --- complex vectors (interleaved re,im) ------------------------------------
cplx zdotc(const cplx* x, const cplx* y, std::size_t n);          // sum conj(x)*y
double znrm2sq(const cplx* x, std::size_t n);
void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n);        // y += a*x
// Real Givens rotation applied to a pair of complex vectors:
//   x' = c*x + s*y ;  y' = -s*x + c*y
void zrot(double c, double s, cplx* x, cplx* y, std::size_t n);

// --- elementwise exp --------------------------------------------------------
// y[i] = exp(x[i]); vector path is a polynomial expansion accurate to ~2 ulp.
void vexp(const double* x, double* y, std::size_t n);

// --- 2D grid stencils (n x n row-major, applied on interior points) ---------
// out[r,c] = c0*in[r,c] + c1*(in[r-1,c]+in[r+1,c]+in[r,c-1]+in[r,c+1])
//          + c2*(four diagonal neighbours)           for 1 <= r,c <= n-2.
// Boundary rows/cols of `out` are left untouched.
void stencil9(const double* in, double* out, int n, double c0, double c1, double c2);

} // namespace zm::simd
