// Analytic zero-energy spinors psi = f * exp(gamma*tau*lambda) built from the
// gauge scalar, plus norms, overlaps, residual checks and the counting rules.

#pragma once

#include "zeromode/flux.hpp"
#include "zeromode/gauge.hpp"
#include "zeromode/grid.hpp"
#include "zeromode/scalar_potential.hpp"

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace zm {

using cplx = std::complex<double>;

enum class Valley : int { K = +1, Kprime = -1 };
inline int tau(Valley v) { return static_cast<int>(v); }

// Continuous description of an analytic mode: polynomial factor times
// exp(s*lambda) with s = gamma*tau.  The paper's complex coordinate is
// z = i*x + y; the polynomial is z^j when s = -1 and conj(z)^j when s = +1,
// which is exactly the analyticity class annihilated by D1 + i*s*D2.
struct ModeContext {
    int j = 0;
    int gamma = 0;                  // +1: A component, -1: B component
    Valley valley = Valley::K;
    int s = 0;                      // gamma * tau
    std::shared_ptr<const ScalarPotential> lambda;

    double log_abs(double x, double y) const;
    cplx eval(double x, double y) const;
};

// Two-component spinor sampled on a grid.  Modes built by build_mode also
// carry the continuous context used by the quadrature-based operations.
struct SpinorField {
    Grid grid;
    std::vector<cplx> psiA;
    std::vector<cplx> psiB;
    Valley valley = Valley::K;
    std::shared_ptr<const ModeContext> context;  // null for ad-hoc fields

    const std::vector<cplx>& nonzero_component() const;
    bool component_is_A() const;
};

// psi_{A or B} = f * exp(gamma*tau*lambda) sampled on lambda's grid; the
// other component is identically zero.  Large exponents are evaluated in
// log space.  gamma = +1 selects the A component, -1 the B component.
SpinorField build_mode(int j, std::shared_ptr<const ScalarPotential> lambda,
                       int gamma, Valley valley);
SpinorField build_mode(int j, const ScalarPotential& lambda, int gamma, Valley valley);

// Relative grid 2-norm of [D1 + i s D2] psi over interior points (points
// within 3h of a lambda discontinuity ring are excluded; the FD truncation
// is not O(h^2) across the jump).  For an exact mode this is discretization
// error only.
double dirac_residual(const SpinorField& mode, const GaugePotential& A);

// Quadrature of |psi_A|^2 + |psi_B|^2 over the disk of the given radius.
double norm_squared(const SpinorField& mode, double radius);

// Sign rule: normalizable iff gamma * B0 < 0 (valley K convention).
bool normalizable(int gamma, double B0);

// j_max + 1 certified square-integrable basis modes (ratio test on the tail
// of the norm integral); the count is unbounded in j_max.
int count_modes_constant_asymptotics(double B0, int j_max);

// Aharonov-Casher counting for compactly supported flux: n per valley.
int count_modes_compact_flux(const FluxReport& flux);

// Valley-pseudospin entangled pair occupancy.
struct PairSlot {
    Valley valley;
    int gamma;  // +1 occupies A, -1 occupies B
};
struct ValleyPairState {
    int b0_sign = +1;
    int j = 0;
    std::array<PairSlot, 2> slots;    // weight 1/sqrt(2) each
    double weight = 0.0;
    std::shared_ptr<const ScalarPotential> lambda;  // null: occupancy only
};

ValleyPairState valley_pair_state(int b0_sign);
ValleyPairState valley_pair_state(int b0_sign, int j,
                                  std::shared_ptr<const ScalarPotential> lambda);

// Sesquilinear inner products over the disk of the given radius.
cplx overlap(const SpinorField& s1, const SpinorField& s2, double radius);
cplx overlap(const ValleyPairState& s1, const ValleyPairState& s2, double radius);

// Local single-particle disorder, block-diagonal in valley: the sampler
// returns the 2x2 sublattice matrix {U_AA, U_AB, U_BA, U_BB} at (x,y).
struct DisorderPotential {
    std::function<std::array<cplx, 4>(double, double)> sample;
};

cplx intervalley_matrix_element(const DisorderPotential& U, const ValleyPairState& s1,
                                const ValleyPairState& s2, double radius);

} // namespace zm
