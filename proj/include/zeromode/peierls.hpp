// Peierls-substitution Hamiltonian on a honeycomb patch.
//
// Bond phases theta_ij = int A . dl are evaluated in continuum coordinates
// (site position times the lattice constant).  The closed-form gauge carries
// an exact symmetric-gauge part plus azimuthal pieces for the antidot hole
// and Gaussian bumps; a sampled GaugePotential can supply a remainder, which
// is integrated with 3-point Gauss quadrature of the interpolated samples.

#pragma once

#include "zeromode/field_profile.hpp"
#include "zeromode/gauge.hpp"
#include "zeromode/honeycomb.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace zm {

using cplx = std::complex<double>;

struct AzimuthalGauge {
    double cx = 0.0, cy = 0.0;
    std::function<double(double)> A_theta;  // azimuthal component vs rho
    std::vector<double> rho_breakpoints;    // kinks of A_theta
};

struct LatticeGauge {
    double b0 = 0.0;              // exact symmetric-gauge part
    double harmonic_xy = 0.0;     // pure-gauge piece from mu = alpha*x*y
    std::vector<AzimuthalGauge> pieces;
    std::shared_ptr<const GaugePotential> remainder;  // optional sampled part

    // line integral of A along the straight segment r1 -> r2
    double line_integral(double x1, double y1, double x2, double y2) const;
};

// Closed-form gauge realizing the profile's field (symmetric gauge at
// infinity, azimuthal corrections for the antidot hole and each bump).
LatticeGauge gauge_from_profile(const FieldProfile& profile);

struct SparseHamiltonian {
    int dim = 0;
    std::shared_ptr<const HoneycombPatch> patch;
    double lattice_constant = 1.0;
    std::vector<double> bond_phase;        // aligned with patch->bonds (A -> B)
    std::map<std::pair<int, int>, int> bond_index;  // (a,b) -> bond position
    // CSR of the full Hermitian matrix
    std::vector<int> row_ptr, col_idx;
    std::vector<cplx> vals;

    void matvec(const cplx* x, cplx* y) const;
    std::vector<cplx> dense() const;       // row-major dim x dim
    int signature(int site) const { return patch->sites[site].sublattice == 0 ? +1 : -1; }
    // directed phase sum around a plaquette (encloses the flux, Stokes)
    double plaquette_phase_sum(const Plaquette& p) const;
};

// t = 1 nearest-neighbour hopping with Peierls phases.
SparseHamiltonian peierls_hamiltonian(const HoneycombPatch& patch,
                                      const LatticeGauge& gauge,
                                      double lattice_constant = 1.0);

// Sampled-gauge variant; the patch (scaled to continuum units) must lie
// inside the sample grid, else a coverage_error is thrown.
SparseHamiltonian peierls_hamiltonian(const HoneycombPatch& patch,
                                      const GaugePotential& gauge,
                                      double lattice_constant = 1.0);

} // namespace zm
