// Hermitian eigensolvers.
//
// Dense path: Householder tridiagonalization (EISPACK htridi-style with a
// phase diagonal), implicit-shift QL for eigenvalues, Sturm-sequence counts
// as an independent cross-check, inverse iteration with cluster
// re-orthogonalization for selected eigenvectors, and the reflector
// back-transform.  Deterministic throughout.
//
// Iterative path: Lanczos with full re-orthogonalization for the lowest
// eigenpairs of a positive-semidefinite operator (used on the chiral blocks
// T^dag T / T T^dag of the lattice Hamiltonian).

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace zm::eig {

using cplx = std::complex<double>;

// --- dense path --------------------------------------------------------------

struct Tridiagonalization {
    int n = 0;
    std::vector<cplx> reflectors;  // n x n working copy, Householder vectors in columns
    std::vector<cplx> phase;       // diagonal unitary making the tridiagonal real
    std::vector<double> d;         // diagonal
    std::vector<double> e;         // subdiagonal, e[i] couples i and i+1 (size n-1)
};

// Reduces a full Hermitian matrix (row-major n x n, both triangles filled).
Tridiagonalization tridiagonalize(std::vector<cplx> A, int n);

// All eigenvalues of the real symmetric tridiagonal (ascending).
std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e);

// Number of eigenvalues strictly below x (Sturm/LDL sign count).
int tridiag_count_below(const std::vector<double>& d, const std::vector<double>& e,
                        double x);

// Eigenvectors of the tridiagonal for the given eigenvalues (inverse
// iteration; eigenvalues must be sorted ascending, clusters handled).
std::vector<std::vector<double>> tridiag_eigenvectors(const std::vector<double>& d,
                                                      const std::vector<double>& e,
                                                      const std::vector<double>& lambdas);

// Lift tridiagonal eigenvectors to eigenvectors of the original matrix.
std::vector<cplx> back_transform(const Tridiagonalization& T,
                                 const std::vector<double>& tridiag_vector);

// Convenience: full spectrum (ascending) plus eigenvectors for the k
// eigenvalues of smallest |E|.  Eigenvector phases are normalized so the
// largest-magnitude entry is real positive.
struct DenseEig {
    std::vector<double> eigenvalues;          // all, ascending
    std::vector<double> selected_values;      // k values sorted by |E|
    std::vector<std::vector<cplx>> selected_vectors;
};
DenseEig dense_eigensystem(std::vector<cplx> A, int n, int k_smallest_abs);

// --- iterative path ----------------------------------------------------------

using LinearOp = std::function<void(const cplx*, cplx*)>;

struct LanczosResult {
    std::vector<double> values;               // converged lowest Ritz values
    std::vector<std::vector<cplx>> vectors;   // matching Ritz vectors
    int iterations = 0;
    double worst_residual = 0.0;
};

// Lowest eigenpairs of a PSD operator by Lanczos with full
// re-orthogonalization; deterministic seeded start vector.
LanczosResult lanczos_lowest(const LinearOp& op, int dim, int n_want, int max_iter,
                             double tol);

void normalize_phase(std::vector<cplx>& v);

} // namespace zm::eig
