// Shared declarations for the per-ISA kernel namespaces.  Each backend
// defines the same set of free functions; dispatch.cpp wires them into
// function-pointer tables.

#pragma once

#include "zeromode/simd/kernels.hpp"

namespace zm::simd::scalar_impl {
double dot(const double*, const double*, std::size_t);
double nrm2sq(const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scal(double, double*, std::size_t);
cplx zdotc(const cplx*, const cplx*, std::size_t);
double znrm2sq(const cplx*, std::size_t);
void zaxpy(cplx, const cplx*, cplx*, std::size_t);
void zrot(double, double, cplx*, cplx*, std::size_t);
void vexp(const double*, double*, std::size_t);
void stencil9(const double*, double*, int, double, double, double);
} // namespace zm::simd::scalar_impl

#ifdef ZM_HAVE_AVX2
namespace zm::simd::avx2_impl {
double dot(const double*, const double*, std::size_t);
double nrm2sq(const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scal(double, double*, std::size_t);
cplx zdotc(const cplx*, const cplx*, std::size_t);
double znrm2sq(const cplx*, std::size_t);
void zaxpy(cplx, const cplx*, cplx*, std::size_t);
void zrot(double, double, cplx*, cplx*, std::size_t);
void vexp(const double*, double*, std::size_t);
void stencil9(const double*, double*, int, double, double, double);
} // namespace zm::simd::avx2_impl
#endif
