#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "tctl/errors.hpp"

namespace tctl {

using Complex = std::complex<double>;
using Index = Eigen::Index;

class TubalScalar;

//
// Dense third-order tensor over real or complex scalars.
//
// Storage is frontal-slice major: slice k occupies a contiguous
// rows x cols block (column-major), so slices map directly onto Eigen
// matrices and tube extraction is strided.
//
class Tensor3 {
  public:
    Tensor3() = default;

    // zero-filled tensor
    Tensor3(Index rows, Index cols, Index tubes)
        : rows_(rows), cols_(cols), tubes_(tubes),
          data_(static_cast<std::size_t>(rows * cols * tubes), Complex(0, 0)) {
        if (rows < 1 || cols < 1 || tubes < 1)
            throw ShapeMismatch("Tensor3: all dimensions must be positive");
    }

    static Tensor3 zeros(Index rows, Index cols, Index tubes) { return Tensor3(rows, cols, tubes); }

    // build from an ordered list of frontal slices (all same shape)
    static Tensor3 from_slices(const std::vector<Eigen::MatrixXd>& slices);
    static Tensor3 from_slices(const std::vector<Eigen::MatrixXcd>& slices);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index tubes() const { return tubes_; }
    Index size() const { return rows_ * cols_ * tubes_; }

    const Complex& operator()(Index r, Index c, Index k) const {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_ && k >= 0 && k < tubes_);
        return data_[idx(r, c, k)];
    }
    Complex& operator()(Index r, Index c, Index k) {
        assert(r >= 0 && r < rows_ && c >= 0 && c < cols_ && k >= 0 && k < tubes_);
        return data_[idx(r, c, k)];
    }

    // frontal slice k as a zero-copy Eigen view
    Eigen::Map<const Eigen::MatrixXcd> slice(Index k) const {
        assert(k >= 0 && k < tubes_);
        return {data_.data() + static_cast<std::size_t>(k * rows_ * cols_), rows_, cols_};
    }
    Eigen::MatrixXcd slice_matrix(Index k) const { return slice(k); }
    void set_slice(Index k, const Eigen::MatrixXcd& m);

    // lateral slice j as a rows x 1 x tubes tensor
    Tensor3 lateral_slice(Index j) const;

    // tube (r, c, :) as a tubal scalar
    TubalScalar tube(Index r, Index c) const;

    bool is_real() const;         // every imaginary part exactly zero
    bool all_finite() const;

    double norm() const;          // Frobenius over all entries
    double imag_norm() const;     // Frobenius of the imaginary parts
    void zero_imag();             // drop imaginary parts

    Tensor3& operator+=(const Tensor3& o);
    Tensor3& operator-=(const Tensor3& o);
    Tensor3& operator*=(Complex s);

    const std::vector<Complex>& data() const { return data_; }

  private:
    std::size_t idx(Index r, Index c, Index k) const {
        return static_cast<std::size_t>(k * rows_ * cols_ + c * rows_ + r);
    }

    Index rows_ = 0, cols_ = 0, tubes_ = 0;
    std::vector<Complex> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(Complex s, Tensor3 a);
Tensor3 operator*(double s, Tensor3 a);

//
// 1 x 1 x n tube; the scalar of the t-algebra's commutative ring.
//
class TubalScalar {
  public:
    TubalScalar() = default;
    explicit TubalScalar(Index tubes) : data_(static_cast<std::size_t>(tubes), Complex(0, 0)) {
        if (tubes < 1) throw ShapeMismatch("TubalScalar: length must be positive");
    }
    explicit TubalScalar(std::vector<Complex> values) : data_(std::move(values)) {
        if (data_.empty()) throw ShapeMismatch("TubalScalar: length must be positive");
    }
    static TubalScalar from_real(const std::vector<double>& values);

    // multiplicative identity e1 = (1, 0, ..., 0)
    static TubalScalar e1(Index tubes);

    Index tubes() const { return static_cast<Index>(data_.size()); }
    const Complex& operator[](Index k) const { return data_[static_cast<std::size_t>(k)]; }
    Complex& operator[](Index k) { return data_[static_cast<std::size_t>(k)]; }

    // lossless round trip with the 1 x 1 x n tensor view
    Tensor3 to_tensor() const;
    static TubalScalar from_tensor(const Tensor3& t);

    bool is_real() const;
    double norm() const;

    const std::vector<Complex>& data() const { return data_; }

  private:
    std::vector<Complex> data_;
};

// Block circulant expansion of a tensor: block (i, j) is frontal slice
// ((i - j) mod tubes) + 1 of the source.
struct BlockCirculant {
    Index block_rows = 0;   // rows of each block
    Index block_cols = 0;   // cols of each block
    Index tubes = 0;        // blocks per side
    Eigen::MatrixXcd data;  // (block_rows * tubes) x (block_cols * tubes)
};

BlockCirculant bcirc(const Tensor3& t);

// Stack frontal slices into a (rows * tubes) x cols block column.
Eigen::MatrixXcd matvec_unfold(const Tensor3& t);

// Inverse of matvec_unfold.
Tensor3 fold(const Eigen::MatrixXcd& m, Index rows, Index tubes);
Tensor3 fold(const Eigen::MatrixXd& m, Index rows, Index tubes);

// t-product: fold(bcirc(a) . matvec_unfold(b)), computed slice-wise in the
// DFT domain above the configured crossover tube length.
Tensor3 tprod(const Tensor3& a, const Tensor3& b);

// tube count at or above which tprod switches from direct circular
// convolution to the DFT-domain path
std::size_t tprod_fft_crossover();
void set_tprod_fft_crossover(std::size_t tubes);

// Transpose every frontal slice and reverse the order of slices 2..n.
Tensor3 ttranspose(const Tensor3& t);

// Conjugate variant of ttranspose.
Tensor3 tctranspose(const Tensor3& t);

// First frontal slice identity, remaining slices zero.
Tensor3 identity_tensor(Index m, Index tubes);

// Tensor inverse via per-slice spectral inversion. A DFT slice whose
// reciprocal condition estimate falls below rcond_cap is reported singular.
Tensor3 tinv(const Tensor3& a, double rcond_cap = 1e-12);

// Circular convolution of two tubes; commutative.
TubalScalar tubal_mult(const TubalScalar& a, const TubalScalar& b);

namespace detail {

// Imaginary residues below rel_tol * ||t|| are truncated to zero; larger
// residues are an internal-consistency failure.
void enforce_real(Tensor3& t, double rel_tol, const char* context);

void check_finite(const Tensor3& t, const char* context);

}  // namespace detail

}  // namespace tctl
