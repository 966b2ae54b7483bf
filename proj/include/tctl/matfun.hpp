#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "tctl/errors.hpp"

namespace tctl::matfun {

using Complex = std::complex<double>;

struct EigResult {
    Eigen::VectorXcd values;   // sorted: descending real part, ties by descending imag
    Eigen::MatrixXcd vectors;  // columns follow the value order
};

// Dense complex eigendecomposition (Hessenberg + shifted QR underneath).
EigResult eig(const Eigen::MatrixXcd& m);

// Eigenvalues only; cheaper when no vectors are needed.
Eigen::VectorXcd eig_values(const Eigen::MatrixXcd& m);

// Matrix exponential, scaling-and-squaring with Pade approximation.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

// Count of singular values above tol * sigma_max.
Eigen::Index rank(const Eigen::MatrixXcd& m, double tol = 1e-10);

// Reciprocal condition estimate sigma_min / sigma_max (0 for the zero matrix).
double rcond(const Eigen::MatrixXcd& m);

// Single-input pole placement via Ackermann's formula: returns the row gain
// k with eig(a - b k) equal to the desired set. The pair (a, b) must be
// controllable; complex entries of `desired` need not be conjugate-paired
// (the result is then complex).
Eigen::RowVectorXcd place_single_input(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                       const std::vector<Complex>& desired);

// Kalman controllability matrix [b, a b, ..., a^{depth-1} b].
Eigen::MatrixXcd kalman_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               Eigen::Index depth);

// Shared eigenvalue ordering: descending real part, ties by descending imag.
bool eigenvalue_order(const Complex& lhs, const Complex& rhs);

}  // namespace tctl::matfun
