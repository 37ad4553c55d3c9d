// Reference kernels.  Deliberately plain loops: these define the semantics
// the vector backends are tested against.

#include "kernels_impl.hpp"

#include <cmath>

namespace zm::simd::scalar_impl {

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cplx zdotc(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

double znrm2sq(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void zrot(double c, double s, cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[i], yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

void vexp(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void stencil9(const double* in, double* out, int n, double c0, double c1, double c2) {
    for (int r = 1; r < n - 1; ++r) {
        const double* up = in + (r - 1) * n;
        const double* mid = in + r * n;
        const double* dn = in + (r + 1) * n;
        double* o = out + r * n;
        for (int c = 1; c < n - 1; ++c) {
            o[c] = c0 * mid[c] + c1 * (mid[c - 1] + mid[c + 1] + up[c] + dn[c]) +
                   c2 * (up[c - 1] + up[c + 1] + dn[c - 1] + dn[c + 1]);
        }
    }
}

} // namespace zm::simd::scalar_impl
