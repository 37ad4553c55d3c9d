#include "zeromode/eig.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/rng.hpp"
#include "zeromode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace zm::eig {

namespace {

// eigen-decomposition of a small real symmetric tridiagonal with vector
// accumulation (QL with implicit shifts, EISPACK tql2 pattern)
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& Z, int n) {
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 50) throw solver_failure("tql2 did not converge", std::abs(e[l]));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // accumulate the rotation into Z columns i, i+1
                for (int row = 0; row < n; ++row) {
                    const double zi = Z[std::size_t(row) * n + i];
                    const double zi1 = Z[std::size_t(row) * n + i + 1];
                    Z[std::size_t(row) * n + i + 1] = s * zi + c * zi1;
                    Z[std::size_t(row) * n + i] = c * zi - s * zi1;
                }
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending, permuting columns
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            for (int row = 0; row < n; ++row)
                std::swap(Z[std::size_t(row) * n + i], Z[std::size_t(row) * n + k]);
        }
    }
}

} // namespace

LanczosResult lanczos_lowest(const LinearOp& op, int dim, int n_want, int max_iter,
                             double tol) {
    if (dim <= 0) throw argument_error("lanczos: empty operator");
    max_iter = std::min(max_iter, dim);
    n_want = std::min(n_want, dim);

    std::vector<std::vector<cplx>> V;
    V.reserve(max_iter + 1);
    std::vector<double> alpha, beta;  // tridiagonal of the Krylov projection

    // deterministic start vector
    std::vector<cplx> v(dim), w(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = cplx(rng::uniform(0x5EEDull, 1, i, -1.0, 1.0),
                    rng::uniform(0x5EEDull, 2, i, -1.0, 1.0));
    {
        const double nn = std::sqrt(simd::znrm2sq(v.data(), dim));
        for (auto& x : v) x /= nn;
    }
    V.push_back(v);

    LanczosResult res;
    double opnorm = 1.0;

    for (int it = 0; it < max_iter; ++it) {
        op(V.back().data(), w.data());
        const cplx a = simd::zdotc(V.back().data(), w.data(), dim);
        alpha.push_back(a.real());
        simd::zaxpy(-a, V.back().data(), w.data(), dim);
        if (it > 0) simd::zaxpy(cplx(-beta.back()), V[it - 1].data(), w.data(), dim);
        // full re-orthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : V) {
                const cplx c = simd::zdotc(q.data(), w.data(), dim);
                simd::zaxpy(-c, q.data(), w.data(), dim);
            }
        const double b = std::sqrt(simd::znrm2sq(w.data(), dim));
        opnorm = std::max(opnorm, std::abs(alpha.back()) + (it > 0 ? beta.back() : 0.0) + b);

        const int m = static_cast<int>(alpha.size());
        const bool invariant = b < 1e-13 * opnorm;
        const bool have_enough = m >= std::min(dim, 2 * n_want + 10);

        if (invariant || it == max_iter - 1 || m == dim || (have_enough && m % 8 == 0)) {
            // Ritz extraction
            std::vector<double> d = alpha, e = beta;
            std::vector<double> Z(std::size_t(m) * m, 0.0);
            for (int i = 0; i < m; ++i) Z[std::size_t(i) * m + i] = 1.0;
            tql2(d, e, Z, m);
            // residual bound |b * last component|
            int converged = 0;
            double worst = 0.0;
            for (int j = 0; j < std::min(n_want, m); ++j) {
                const double rb = invariant ? 0.0 : std::abs(b * Z[std::size_t(m - 1) * m + j]);
                if (rb <= tol * opnorm)
                    ++converged;
                else
                    worst = std::max(worst, rb);
            }
            if (converged >= std::min(n_want, m) || invariant || it == max_iter - 1 ||
                m == dim) {
                const int keep = std::min(n_want, m);
                res.values.assign(d.begin(), d.begin() + keep);
                res.vectors.assign(keep, std::vector<cplx>(dim, 0.0));
                for (int j = 0; j < keep; ++j)
                    for (int i = 0; i < m; ++i)
                        simd::zaxpy(cplx(Z[std::size_t(i) * m + j]), V[i].data(),
                                    res.vectors[j].data(), dim);
                res.iterations = m;
                res.worst_residual = worst;
                if (!(converged >= keep || invariant) && it == max_iter - 1 && m < dim)
                    throw solver_failure("lanczos_lowest: not converged", worst);
                return res;
            }
        }
        if (invariant) break;
        for (auto& x : w) x /= b;
        beta.push_back(b);
        V.push_back(w);
    }
    throw solver_failure("lanczos_lowest: iteration budget exhausted", -1.0);
}

} // namespace zm::eig
