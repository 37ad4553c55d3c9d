#include "zeromode/eig.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zm::eig {

Tridiagonalization tridiagonalize(std::vector<cplx> A, int n) {
    Tridiagonalization T;
    T.n = n;
    T.d.assign(n, 0.0);
    T.e.assign(std::max(0, n - 1), 0.0);
    T.phase.assign(n, cplx(1.0, 0.0));

    std::vector<cplx> v(n), p(n), w(n), vbar(n), wbar(n);
    std::vector<cplx> beta(std::max(0, n - 1), cplx(0.0));  // complex subdiagonal

    for (int k = 0; k + 2 < n; ++k) {
        const int m = n - k - 1;  // trailing size
        cplx* colk = &A[std::size_t(k + 1) * n + k];  // x = A[k+1.., k], stride n

        double scale = 0.0;
        for (int i = 0; i < m; ++i) scale += std::abs(colk[std::size_t(i) * n]);
        if (scale == 0.0) {
            beta[k] = 0.0;
            continue;
        }
        double nrm2 = 0.0;
        for (int i = 0; i < m; ++i) nrm2 += std::norm(colk[std::size_t(i) * n]);
        const double nrm = std::sqrt(nrm2);
        const cplx x0 = colk[0];
        const cplx ph = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -ph * nrm;

        // v = normalize(x - alpha e1)
        for (int i = 0; i < m; ++i) v[i] = colk[std::size_t(i) * n];
        v[0] -= alpha;
        const double vn = std::sqrt(simd::znrm2sq(v.data(), m));
        if (vn < 1e-290) {
            beta[k] = alpha;
            continue;
        }
        for (int i = 0; i < m; ++i) v[i] /= vn;
        for (int i = 0; i < m; ++i) vbar[i] = std::conj(v[i]);

        // p = M v over the trailing block, rows k+1..n-1
        for (int i = 0; i < m; ++i) {
            const cplx* r = &A[std::size_t(k + 1 + i) * n + (k + 1)];
            p[i] = simd::zdotc(vbar.data(), r, m);  // sum_j M[i][j] v[j]
        }
        const cplx vp = simd::zdotc(v.data(), p.data(), m);  // v^dag p (real)
        for (int i = 0; i < m; ++i) w[i] = 2.0 * p[i] - 2.0 * vp.real() * v[i];
        for (int i = 0; i < m; ++i) wbar[i] = std::conj(w[i]);

        // M <- M - v w^dag - w v^dag   (row i: -= v_i wbar - w_i vbar)
        for (int i = 0; i < m; ++i) {
            cplx* r = &A[std::size_t(k + 1 + i) * n + (k + 1)];
            simd::zaxpy(-v[i], wbar.data(), r, m);
            simd::zaxpy(-w[i], vbar.data(), r, m);
        }

        beta[k] = alpha;
        // store the reflector in the annihilated column (and clear the row)
        for (int i = 0; i < m; ++i) colk[std::size_t(i) * n] = v[i];
        for (int i = 0; i < m; ++i) A[std::size_t(k) * n + (k + 1 + i)] = 0.0;
    }
    if (n >= 2) beta[n - 2] = A[std::size_t(n - 1) * n + (n - 2)];

    for (int i = 0; i < n; ++i) T.d[i] = A[std::size_t(i) * n + i].real();

    // diagonal phases make the subdiagonal real nonnegative
    for (int k = 0; k + 1 < n; ++k) {
        const double ab = std::abs(beta[k]);
        T.e[k] = ab;
        const cplx ph = (ab == 0.0) ? cplx(1.0) : beta[k] / ab;
        T.phase[k + 1] = T.phase[k] * ph;
    }
    T.reflectors = std::move(A);
    return T;
}

std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return {};
    e.push_back(0.0);  // e[i] couples i,i+1; sentinel at the end

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m == l) break;
            if (++iter > 50) throw solver_failure("tridiag QL did not converge", std::abs(e[l]));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, pshift = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= pshift;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - pshift;
                r = (d[i] - g) * s + 2.0 * c * b;
                pshift = s * r;
                d[i + 1] = g + pshift;
                g = c * r - b;
            }
            d[l] -= pshift;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int tridiag_count_below(const std::vector<double>& d, const std::vector<double>& e,
                        double x) {
    const int n = static_cast<int>(d.size());
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < n; ++i) {
        const double off = (i == 0) ? 0.0 : e[i - 1];
        q = (d[i] - x) - (i == 0 ? 0.0 : off * off / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<std::vector<double>> tridiag_eigenvectors(const std::vector<double>& d,
                                                      const std::vector<double>& e,
                                                      const std::vector<double>& lambdas) {
    const int n = static_cast<int>(d.size());
    double tnorm = 0.0;
    for (int i = 0; i < n; ++i) tnorm = std::max(tnorm, std::abs(d[i]));
    for (int i = 0; i + 1 < n; ++i) tnorm = std::max(tnorm, std::abs(e[i]));
    // grouping width: eigenvalues closer than this are orthogonalized as one
    // quasi-degenerate clump (their inverse iterations mix freely); the
    // member shifts are spread far more finely, just enough to keep the LU
    // factorizations distinct
    const double cluster_gap = std::max(1e-5 * tnorm, 1e-300);
    const double shift_spread = std::max(1e-11 * tnorm, 1e-300);

    std::vector<std::vector<double>> out;
    std::vector<std::size_t> cluster;  // indices into out
    double prev_lambda = 0.0;

    std::vector<double> dl(n), du(n), d2(n), rhs(n);
    std::vector<int> pivot(n);

    for (std::size_t idx = 0; idx < lambdas.size(); ++idx) {
        double lam = lambdas[idx];
        const bool same_cluster = idx > 0 && std::abs(lam - prev_lambda) <= cluster_gap;
        prev_lambda = lam;
        if (!same_cluster) cluster.clear();
        // spread shifts inside a cluster so the LU stays distinct
        lam += cluster.size() * shift_spread;

        // LU of (T - lam) with partial pivoting (band form, classic tinvit)
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0);
        for (int i = 0; i < n; ++i) a[i] = d[i] - lam;
        for (int i = 0; i + 1 < n; ++i) b[i] = e[i];
        // forward elimination on rows with pivoting between row i and i+1
        std::vector<double> l1(n, 0.0), u0(n, 0.0), u1(n, 0.0), u2(n, 0.0);
        std::vector<bool> swapped(n, false);
        {
            double ai = a[0], bi = b[0];
            for (int i = 0; i < n - 1; ++i) {
                const double sub = b[i];  // T[i+1, i]
                if (std::abs(sub) > std::abs(ai)) {
                    swapped[i] = true;
                    u0[i] = sub;
                    u1[i] = a[i + 1];
                    u2[i] = (i + 1 < n - 1) ? b[i + 1] : 0.0;
                    const double m = ai / sub;
                    l1[i] = m;
                    ai = bi - m * a[i + 1];
                    bi = (i + 1 < n - 1) ? -m * b[i + 1] : 0.0;
                } else {
                    if (ai == 0.0) ai = 1e-14 * (tnorm + 1.0);
                    u0[i] = ai;
                    u1[i] = bi;
                    u2[i] = 0.0;
                    const double m = sub / ai;
                    l1[i] = m;
                    ai = a[i + 1] - m * bi;
                    bi = (i + 1 < n - 1) ? b[i + 1] : 0.0;
                }
            }
            if (ai == 0.0) ai = 1e-14 * (tnorm + 1.0);
            u0[n - 1] = ai;
        }
        auto solve = [&](std::vector<double>& y) {
            // forward
            for (int i = 0; i < n - 1; ++i) {
                if (swapped[i]) std::swap(y[i], y[i + 1]);
                y[i + 1] -= l1[i] * y[i];
            }
            // back substitution
            y[n - 1] /= u0[n - 1];
            if (n >= 2) y[n - 2] = (y[n - 2] - u1[n - 2] * y[n - 1]) / u0[n - 2];
            for (int i = n - 3; i >= 0; --i)
                y[i] = (y[i] - u1[i] * y[i + 1] - u2[i] * y[i + 2]) / u0[i];
        };

        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = 1.0 / std::sqrt(double(n));
        for (int sweep = 0; sweep < 5; ++sweep) {
            solve(y);
            // orthogonalize within the cluster
            for (std::size_t ci : cluster) {
                const double proj = simd::dot(out[ci].data(), y.data(), n);
                simd::axpy(-proj, out[ci].data(), y.data(), n);
            }
            const double nn = std::sqrt(simd::nrm2sq(y.data(), n));
            if (nn == 0.0) {
                for (int i = 0; i < n; ++i) y[i] = (i % 2) ? 0.7 : -0.3;
                continue;
            }
            simd::scal(1.0 / nn, y.data(), n);
            if (sweep >= 2) break;  // three sweeps reach working accuracy
        }
        out.push_back(std::move(y));
        cluster.push_back(out.size() - 1);
    }
    return out;
}

std::vector<cplx> back_transform(const Tridiagonalization& T,
                                 const std::vector<double>& z) {
    const int n = T.n;
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = T.phase[i] * z[i];
    // apply reflectors in reverse order
    for (int k = n - 3; k >= 0; --k) {
        const int m = n - k - 1;
        const cplx* hv = &T.reflectors[std::size_t(k + 1) * n + k];  // stride n
        cplx dotp = 0.0;
        for (int i = 0; i < m; ++i) dotp += std::conj(hv[std::size_t(i) * n]) * v[k + 1 + i];
        dotp *= 2.0;
        for (int i = 0; i < m; ++i) v[k + 1 + i] -= dotp * hv[std::size_t(i) * n];
    }
    return v;
}

void normalize_phase(std::vector<cplx>& v) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best + 1e-15) {
            best = a;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const cplx ph = v[imax] / best;
    for (cplx& x : v) x /= ph;
}

DenseEig dense_eigensystem(std::vector<cplx> A, int n, int k_smallest_abs) {
    DenseEig out;
    Tridiagonalization T = tridiagonalize(std::move(A), n);
    out.eigenvalues = tridiag_eigenvalues(T.d, T.e);

    int k = std::min<int>(k_smallest_abs, n);
    if (k <= 0) return out;

    // pick the k eigenvalues of smallest |E| (ascending index into the sorted list)
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double fa = std::abs(out.eigenvalues[a]), fb = std::abs(out.eigenvalues[b]);
        if (fa != fb) return fa < fb;
        return out.eigenvalues[a] < out.eigenvalues[b];
    });
    // complete the trailing |E| shell: cutting through a degenerate group (or
    // between +E and -E partners) would leave the window subspace unpaired
    while (k < n) {
        const double cur = std::abs(out.eigenvalues[order[k - 1]]);
        const double nxt = std::abs(out.eigenvalues[order[k]]);
        if (nxt - cur > 1e-9 * (1.0 + cur)) break;
        ++k;
    }
    std::vector<int> chosen(order.begin(), order.begin() + k);
    std::sort(chosen.begin(), chosen.end());  // ascending eigenvalue order for tinvit
    std::vector<double> lams(k);
    for (int i = 0; i < k; ++i) lams[i] = out.eigenvalues[chosen[i]];

    auto zvecs = tridiag_eigenvectors(T.d, T.e, lams);
    std::vector<std::pair<double, std::vector<cplx>>> pairs(k);
    for (int i = 0; i < k; ++i) {
        auto v = back_transform(T, zvecs[i]);
        normalize_phase(v);
        pairs[i] = {lams[i], std::move(v)};
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        const double fa = std::abs(a.first), fb = std::abs(b.first);
        if (fa != fb) return fa < fb;
        return a.first < b.first;
    });
    for (auto& [val, vec] : pairs) {
        out.selected_values.push_back(val);
        out.selected_vectors.push_back(std::move(vec));
    }
    return out;
}

} // namespace zm::eig
