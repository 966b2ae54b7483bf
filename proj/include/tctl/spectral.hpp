#pragma once

#include <Eigen/Dense>

#include <vector>

#include "tctl/tensor3.hpp"

namespace tctl {

//
// DFT-domain representation of a tensor: slice i holds
// D_i = sum_k T^(k) w^{(i-1)(k-1)} with w = e^{-2 pi i / n}, i.e. the
// diagonal blocks of the block-diagonalized bcirc. The forward transform is
// unnormalized; the inverse carries the 1/n factor.
//
struct SpectralForm {
    Index rows = 0, cols = 0, tubes = 0;
    std::vector<Eigen::MatrixXcd> slices;
    // set when the source tensor is real; slices then satisfy
    // slices[n-i] = conj(slices[i]) and from_spectral enforces a real result
    bool expect_real = false;
};

SpectralForm to_spectral(const Tensor3& t);
Tensor3 from_spectral(const SpectralForm& s);

// t-eigendecomposition a = p * d * pinv with f-diagonal d.
struct TEig {
    Tensor3 p;     // eigenmatrix tensor
    Tensor3 d;     // f-diagonal tensor of eigentuples
    Tensor3 pinv;
    // row i holds eig(D_i) sorted by descending real part, ties by
    // descending imaginary part (tubes x n)
    Eigen::MatrixXcd per_slice_eigenvalues;
};

// Requires every DFT slice to be diagonalizable: an eigenvector matrix with
// reciprocal condition below rcond_tol raises DefectiveSlice.
TEig teig(const Tensor3& a, double rcond_tol = 1e-10);

// Tube whose forward DFT lists the k-th eigenvalue of each DFT slice.
struct Eigentuple {
    TubalScalar tube;
    Eigen::VectorXcd spectrum;
};

std::vector<Eigentuple> eigentuples(const TEig& e);

// Same view built straight from a tubes x n eigenvalue table.
std::vector<Eigentuple> eigentuples(const Eigen::MatrixXcd& per_slice_eigenvalues);

// Number of DFT coefficients with magnitude above tol * max magnitude;
// zero iff the tube is zero.
int tubal_rank(const TubalScalar& a, double tol = 1e-10);

namespace detail {

// forward / inverse DFT of a tube (inverse applies 1/n)
void dft_forward(const std::vector<Complex>& in, std::vector<Complex>& out);
void dft_inverse(const std::vector<Complex>& in, std::vector<Complex>& out);

}  // namespace detail

}  // namespace tctl
