// AVX2+FMA kernel backend.  This translation unit is the only one compiled
// with -mavx2 -mfma; it is reached exclusively through the dispatch table
// after a cpuid check, so no function here may be called on older hardware.

#include "kernels_impl.hpp"

#ifdef ZM_HAVE_AVX2

#include <immintrin.h>
#include <cmath>

namespace zm::simd::avx2_impl {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

// lanes (re,im,re,im) -> (im,re,im,re)
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

const __m256d kNegEven = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);  // flips lanes 0,2
const __m256d kNegOdd = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);   // flips lanes 1,3

} // namespace

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d a = _mm256_loadu_pd(x + i), b = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

cplx zdotc(const cplx* x, const cplx* y, std::size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        // imag: -xi*yr + xr*yi per pair
        __m256d xs = _mm256_xor_pd(swap_pairs(xv), kNegEven);
        acc_im = _mm256_fmadd_pd(xs, yv, acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

double znrm2sq(const cplx* x, std::size_t n) {
    return nrm2sq(reinterpret_cast<const double*>(x), 2 * n);
}

void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    // (-ai, +ai, -ai, +ai): pairs with the swapped x lanes
    const __m256d ai = _mm256_xor_pd(_mm256_set1_pd(a.imag()), kNegEven);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        yv = _mm256_add_pd(yv, _mm256_fmadd_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv))));
        _mm256_storeu_pd(yp + 2 * i, yv);
    }
    if (i < n) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
    }
}

void zrot(double c, double s, cplx* x, cplx* y, std::size_t n) {
    double* xp = reinterpret_cast<double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d cv = _mm256_set1_pd(c), sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        __m256d xn = _mm256_fmadd_pd(cv, xv, _mm256_mul_pd(sv, yv));
        __m256d yn = _mm256_fmsub_pd(cv, yv, _mm256_mul_pd(sv, xv));
        _mm256_storeu_pd(xp + 2 * i, xn);
        _mm256_storeu_pd(yp + 2 * i, yn);
    }
    for (; i < n; ++i) {
        const cplx xi = x[i], yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

namespace {

// exp(x) for |x| <= 708: n = round(x/ln2), exp(x) = 2^n * P(r), r = x - n*ln2
// with P a degree-13 Taylor evaluated by Horner/FMA; |r| <= ln2/2 keeps the
// truncation below 1 ulp.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);

    const double kInvFact[] = {
        1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
        1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
        1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        1.0 / 2.0};
    __m256d p = _mm256_set1_pd(kInvFact[0]);
    for (int t = 1; t < 12; ++t)
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[t]));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // scale by 2^k via the exponent field
    __m128i k32 = _mm256_cvtpd_epi32(k);
    __m256i k64 = _mm256_cvtepi32_epi64(k32);
    __m256i expo = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(expo));
}

} // namespace

void vexp(const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    const __m256d bound = _mm256_set1_pd(708.0);
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d absx = _mm256_andnot_pd(_mm256_set1_pd(-0.0), xv);
        if (_mm256_movemask_pd(_mm256_cmp_pd(absx, bound, _CMP_GT_OQ))) {
            for (int l = 0; l < 4; ++l) y[i + l] = std::exp(x[i + l]);
        } else {
            _mm256_storeu_pd(y + i, exp4(xv));
        }
    }
    for (; i < n; ++i) y[i] = std::exp(x[i]);
}

void stencil9(const double* in, double* out, int n, double c0, double c1, double c2) {
    const __m256d v0 = _mm256_set1_pd(c0), v1 = _mm256_set1_pd(c1), v2 = _mm256_set1_pd(c2);
    for (int r = 1; r < n - 1; ++r) {
        const double* up = in + (r - 1) * n;
        const double* mid = in + r * n;
        const double* dn = in + (r + 1) * n;
        double* o = out + r * n;
        int c = 1;
        for (; c + 4 <= n - 1; c += 4) {
            __m256d cross = _mm256_add_pd(
                _mm256_add_pd(_mm256_loadu_pd(mid + c - 1), _mm256_loadu_pd(mid + c + 1)),
                _mm256_add_pd(_mm256_loadu_pd(up + c), _mm256_loadu_pd(dn + c)));
            __m256d diag = _mm256_add_pd(
                _mm256_add_pd(_mm256_loadu_pd(up + c - 1), _mm256_loadu_pd(up + c + 1)),
                _mm256_add_pd(_mm256_loadu_pd(dn + c - 1), _mm256_loadu_pd(dn + c + 1)));
            __m256d res = _mm256_mul_pd(v0, _mm256_loadu_pd(mid + c));
            res = _mm256_fmadd_pd(v1, cross, res);
            res = _mm256_fmadd_pd(v2, diag, res);
            _mm256_storeu_pd(o + c, res);
        }
        for (; c < n - 1; ++c) {
            o[c] = c0 * mid[c] + c1 * (mid[c - 1] + mid[c + 1] + up[c] + dn[c]) +
                   c2 * (up[c - 1] + up[c + 1] + dn[c - 1] + dn[c + 1]);
        }
    }
}

} // namespace zm::simd::avx2_impl

#endif // ZM_HAVE_AVX2
