#include "zeromode/peierls.hpp"

#include "zeromode/errors.hpp"
#include "zeromode/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace zm {

namespace {

// 3-point Gauss nodes on [0,1]
constexpr double kG3x[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kG3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

} // namespace

double LatticeGauge::line_integral(double x1, double y1, double x2, double y2) const {
    // symmetric gauge: int (-B0 y/2 dx + B0 x/2 dy) along a segment is exact
    double theta = 0.5 * b0 * (x1 * y2 - y1 * x2);
    // pure-gauge mu = alpha x y: A = (-alpha x, alpha y)
    if (harmonic_xy != 0.0)
        theta += harmonic_xy * (0.5 * (x1 * x1 - x2 * x2) + 0.5 * (y2 * y2 - y1 * y1));

    const double dx = x2 - x1, dy = y2 - y1;
    for (const AzimuthalGauge& p : pieces) {
        // cross((r - c), d) is constant along the segment
        const double cross = (x1 - p.cx) * dy - (y1 - p.cy) * dx;
        if (cross == 0.0) continue;  // radial segment through the center
        auto rho = [&](double t) {
            return std::hypot(x1 - p.cx + t * dx, y1 - p.cy + t * dy);
        };
        // segment points where rho crosses a breakpoint circle
        std::vector<double> cuts;
        for (double rb : p.rho_breakpoints) {
            // |r1 - c + t d|^2 = rb^2, quadratic in t
            const double ax = x1 - p.cx, ay = y1 - p.cy;
            const double A = dx * dx + dy * dy;
            const double B = 2.0 * (ax * dx + ay * dy);
            const double C = ax * ax + ay * ay - rb * rb;
            const double disc = B * B - 4.0 * A * C;
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
                    if (t > 0.0 && t < 1.0) cuts.push_back(t);
            }
        }
        theta += cross * quad::integrate(
                             [&](double t) {
                                 const double r = rho(t);
                                 return p.A_theta(r) / r;
                             },
                             0.0, 1.0, 1e-13, 1e-16, cuts);
    }

    if (remainder) {
        const GaugePotential& G = *remainder;
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double x = x1 + kG3x[k] * dx, y = y1 + kG3x[k] * dy;
            acc += kG3w[k] * (grid_interp(G.grid, G.Ax, x, y) * dx +
                              grid_interp(G.grid, G.Ay, x, y) * dy);
        }
        theta += acc;
    }
    return theta;
}

LatticeGauge gauge_from_profile(const FieldProfile& profile) {
    LatticeGauge g;
    g.b0 = profile.B0;
    if (profile.kind == ProfileKind::antidot && profile.R > 0.0) {
        const double B0 = profile.B0, R = profile.R;
        g.pieces.push_back(AzimuthalGauge{
            0.0, 0.0,
            [B0, R](double rho) {
                return rho < R ? -0.5 * B0 * rho : -0.5 * B0 * R * R / rho;
            },
            {profile.R}});
    }
    for (const Bump& b : profile.bumps) {
        const double amp = b.amplitude, w = b.width;
        g.pieces.push_back(AzimuthalGauge{
            b.x, b.y,
            [amp, w](double rho) {
                if (rho <= 0.0) return 0.0;
                // enclosed flux / (2 pi rho); expm1 keeps small rho stable
                return -amp * w * w * std::expm1(-rho * rho / (2.0 * w * w)) / rho;
            },
            {}});
    }
    return g;
}

namespace {

SparseHamiltonian assemble_from_phases(const HoneycombPatch& patch,
                                       std::vector<double> phases,
                                       double lattice_constant) {
    SparseHamiltonian H;
    H.dim = static_cast<int>(patch.size());
    H.patch = std::make_shared<HoneycombPatch>(patch);
    H.lattice_constant = lattice_constant;
    H.bond_phase = std::move(phases);

    // CSR assembly: adjacency with values -exp(i theta) / conj
    std::vector<std::vector<std::pair<int, cplx>>> adj(H.dim);
    for (std::size_t k = 0; k < patch.bonds.size(); ++k) {
        const Bond& b = patch.bonds[k];
        const cplx v = -std::exp(cplx(0.0, H.bond_phase[k]));
        adj[b.a].push_back({b.b, v});
        adj[b.b].push_back({b.a, std::conj(v)});
    }
    H.row_ptr.assign(H.dim + 1, 0);
    for (int i = 0; i < H.dim; ++i) {
        std::sort(adj[i].begin(), adj[i].end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        H.row_ptr[i + 1] = H.row_ptr[i] + static_cast<int>(adj[i].size());
    }
    for (std::size_t k = 0; k < patch.bonds.size(); ++k)
        H.bond_index[{patch.bonds[k].a, patch.bonds[k].b}] = static_cast<int>(k);
    H.col_idx.resize(H.row_ptr[H.dim]);
    H.vals.resize(H.row_ptr[H.dim]);
    for (int i = 0; i < H.dim; ++i) {
        int w = H.row_ptr[i];
        for (const auto& [j, v] : adj[i]) {
            H.col_idx[w] = j;
            H.vals[w] = v;
            ++w;
        }
    }
    return H;
}

} // namespace

void SparseHamiltonian::matvec(const cplx* x, cplx* y) const {
    for (int i = 0; i < dim; ++i) {
        cplx acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += vals[k] * x[col_idx[k]];
        y[i] = acc;
    }
}

std::vector<cplx> SparseHamiltonian::dense() const {
    std::vector<cplx> M(static_cast<std::size_t>(dim) * dim, cplx(0.0));
    for (int i = 0; i < dim; ++i)
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            M[static_cast<std::size_t>(i) * dim + col_idx[k]] = vals[k];
    return M;
}

double SparseHamiltonian::plaquette_phase_sum(const Plaquette& p) const {
    // directed sum of theta around the loop; bond phases are stored A -> B
    // and the loop alternates A,B,A,B,... starting on A
    double sum = 0.0;
    for (int k = 0; k < 6; ++k) {
        const int u = p[k], v = p[(k + 1) % 6];
        const bool forward = patch->sites[u].sublattice == 0;  // A -> B traversal
        const int a = forward ? u : v, b = forward ? v : u;
        const auto it = bond_index.find({a, b});
        if (it == bond_index.end()) throw argument_error("plaquette_phase_sum: missing bond");
        const double theta = bond_phase[it->second];
        sum += forward ? theta : -theta;
    }
    return sum;
}

SparseHamiltonian peierls_hamiltonian(const HoneycombPatch& patch,
                                      const LatticeGauge& gauge,
                                      double lattice_constant) {
    if (!(lattice_constant > 0.0))
        throw argument_error("peierls_hamiltonian: lattice constant must be positive");
    std::vector<double> phases(patch.bonds.size());
    const double a = lattice_constant;
    for (std::size_t k = 0; k < patch.bonds.size(); ++k) {
        const Site& s1 = patch.sites[patch.bonds[k].a];
        const Site& s2 = patch.sites[patch.bonds[k].b];
        phases[k] = gauge.line_integral(a * s1.x, a * s1.y, a * s2.x, a * s2.y);
    }
    return assemble_from_phases(patch, std::move(phases), lattice_constant);
}

SparseHamiltonian peierls_hamiltonian(const HoneycombPatch& patch,
                                      const GaugePotential& gauge,
                                      double lattice_constant) {
    const double need = patch.extent() * lattice_constant;
    if (need > gauge.grid.L)
        throw coverage_error("peierls_hamiltonian: gauge grid does not cover the patch");
    LatticeGauge lg;
    lg.remainder = std::make_shared<GaugePotential>(gauge);
    return peierls_hamiltonian(patch, lg, lattice_constant);
}

} // namespace zm
