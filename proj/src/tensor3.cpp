#include "tctl/tensor3.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "tctl/matfun.hpp"
#include "tctl/spectral.hpp"

namespace tctl {

namespace {

std::atomic<std::size_t> g_tprod_fft_crossover{4};

void require(bool ok, const char* msg) {
    if (!ok) throw ShapeMismatch(msg);
}

}  // namespace

Tensor3 Tensor3::from_slices(const std::vector<Eigen::MatrixXd>& slices) {
    std::vector<Eigen::MatrixXcd> cs(slices.size());
    for (std::size_t k = 0; k < slices.size(); ++k) cs[k] = slices[k].cast<Complex>();
    return from_slices(cs);
}

Tensor3 Tensor3::from_slices(const std::vector<Eigen::MatrixXcd>& slices) {
    require(!slices.empty(), "from_slices: at least one frontal slice required");
    const Index r = slices[0].rows(), c = slices[0].cols();
    Tensor3 t(r, c, static_cast<Index>(slices.size()));
    for (std::size_t k = 0; k < slices.size(); ++k) {
        require(slices[k].rows() == r && slices[k].cols() == c,
                "from_slices: all frontal slices must share one shape");
        t.set_slice(static_cast<Index>(k), slices[k]);
    }
    return t;
}

void Tensor3::set_slice(Index k, const Eigen::MatrixXcd& m) {
    require(m.rows() == rows_ && m.cols() == cols_, "set_slice: slice shape mismatch");
    Eigen::Map<Eigen::MatrixXcd>(data_.data() + static_cast<std::size_t>(k * rows_ * cols_), rows_,
                                 cols_) = m;
}

Tensor3 Tensor3::lateral_slice(Index j) const {
    Tensor3 out(rows_, 1, tubes_);
    for (Index k = 0; k < tubes_; ++k)
        for (Index r = 0; r < rows_; ++r) out(r, 0, k) = (*this)(r, j, k);
    return out;
}

TubalScalar Tensor3::tube(Index r, Index c) const {
    std::vector<Complex> v(static_cast<std::size_t>(tubes_));
    for (Index k = 0; k < tubes_; ++k) v[static_cast<std::size_t>(k)] = (*this)(r, c, k);
    return TubalScalar(std::move(v));
}

bool Tensor3::is_real() const {
    for (const auto& z : data_)
        if (z.imag() != 0.0) return false;
    return true;
}

bool Tensor3::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double Tensor3::norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double Tensor3::imag_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += z.imag() * z.imag();
    return std::sqrt(s);
}

void Tensor3::zero_imag() {
    for (auto& z : data_) z = Complex(z.real(), 0.0);
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_ && tubes_ == o.tubes_, "tensor sum: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_ && tubes_ == o.tubes_,
            "tensor difference: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(Complex s, Tensor3 a) { return a *= s; }
Tensor3 operator*(double s, Tensor3 a) { return a *= Complex(s, 0.0); }

TubalScalar TubalScalar::from_real(const std::vector<double>& values) {
    std::vector<Complex> v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) v[i] = Complex(values[i], 0.0);
    return TubalScalar(std::move(v));
}

TubalScalar TubalScalar::e1(Index tubes) {
    TubalScalar t(tubes);
    t[0] = Complex(1.0, 0.0);
    return t;
}

Tensor3 TubalScalar::to_tensor() const {
    Tensor3 t(1, 1, tubes());
    for (Index k = 0; k < tubes(); ++k) t(0, 0, k) = data_[static_cast<std::size_t>(k)];
    return t;
}

TubalScalar TubalScalar::from_tensor(const Tensor3& t) {
    if (t.rows() != 1 || t.cols() != 1)
        throw ShapeMismatch("TubalScalar::from_tensor: tensor is not 1 x 1 x n");
    return t.tube(0, 0);
}

bool TubalScalar::is_real() const {
    for (const auto& z : data_)
        if (z.imag() != 0.0) return false;
    return true;
}

double TubalScalar::norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

BlockCirculant bcirc(const Tensor3& t) {
    const Index r = t.rows(), c = t.cols(), n = t.tubes();
    BlockCirculant out{r, c, n, Eigen::MatrixXcd(r * n, c * n)};
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const Index k = (i - j + n) % n;  // slice index of block (i, j)
            out.data.block(i * r, j * c, r, c) = t.slice(k);
        }
    return out;
}

Eigen::MatrixXcd matvec_unfold(const Tensor3& t) {
    Eigen::MatrixXcd m(t.rows() * t.tubes(), t.cols());
    for (Index k = 0; k < t.tubes(); ++k) m.block(k * t.rows(), 0, t.rows(), t.cols()) = t.slice(k);
    return m;
}

Tensor3 fold(const Eigen::MatrixXcd& m, Index rows, Index tubes) {
    if (rows < 1 || tubes < 1 || m.rows() != rows * tubes)
        throw ShapeMismatch("fold: matrix row count is not rows * tubes");
    Tensor3 t(rows, m.cols(), tubes);
    for (Index k = 0; k < tubes; ++k) t.set_slice(k, m.block(k * rows, 0, rows, m.cols()));
    return t;
}

Tensor3 fold(const Eigen::MatrixXd& m, Index rows, Index tubes) {
    return fold(Eigen::MatrixXcd(m.cast<Complex>()), rows, tubes);
}

std::size_t tprod_fft_crossover() { return g_tprod_fft_crossover.load(); }
void set_tprod_fft_crossover(std::size_t tubes) { g_tprod_fft_crossover.store(tubes); }

namespace {

// mod-n circular convolution of frontal slices
Tensor3 tprod_direct(const Tensor3& a, const Tensor3& b) {
    const Index n = a.tubes();
    Tensor3 out(a.rows(), b.cols(), n);
    for (Index j = 0; j < n; ++j) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(a.rows(), b.cols());
        for (Index k = 0; k < n; ++k) acc.noalias() += a.slice(((j - k) % n + n) % n) * b.slice(k);
        out.set_slice(j, acc);
    }
    return out;
}

Tensor3 tprod_fft(const Tensor3& a, const Tensor3& b) {
    SpectralForm sa = to_spectral(a);
    SpectralForm sb = to_spectral(b);
    SpectralForm sc;
    sc.rows = a.rows();
    sc.cols = b.cols();
    sc.tubes = a.tubes();
    sc.expect_real = sa.expect_real && sb.expect_real;
    sc.slices.resize(static_cast<std::size_t>(sc.tubes));
    for (std::size_t i = 0; i < sc.slices.size(); ++i) sc.slices[i] = sa.slices[i] * sb.slices[i];
    return from_spectral(sc);
}

}  // namespace

Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
    if (a.cols() != b.rows())
        throw ShapeMismatch("tprod: left cols (" + std::to_string(a.cols()) +
                            ") != right rows (" + std::to_string(b.rows()) + ")");
    if (a.tubes() != b.tubes()) throw ShapeMismatch("tprod: tube counts differ");
    if (static_cast<std::size_t>(a.tubes()) >= tprod_fft_crossover()) return tprod_fft(a, b);
    return tprod_direct(a, b);
}

Tensor3 ttranspose(const Tensor3& t) {
    const Index n = t.tubes();
    Tensor3 out(t.cols(), t.rows(), n);
    out.set_slice(0, t.slice(0).transpose());
    for (Index j = 1; j < n; ++j) out.set_slice(j, t.slice(n - j).transpose());
    return out;
}

Tensor3 tctranspose(const Tensor3& t) {
    const Index n = t.tubes();
    Tensor3 out(t.cols(), t.rows(), n);
    out.set_slice(0, t.slice(0).adjoint());
    for (Index j = 1; j < n; ++j) out.set_slice(j, t.slice(n - j).adjoint());
    return out;
}

Tensor3 identity_tensor(Index m, Index tubes) {
    Tensor3 t(m, m, tubes);
    for (Index i = 0; i < m; ++i) t(i, i, 0) = Complex(1.0, 0.0);
    return t;
}

Tensor3 tinv(const Tensor3& a, double rcond_cap) {
    if (a.rows() != a.cols()) throw NotSquare("tinv: tensor is not square in the first two modes");
    SpectralForm s = to_spectral(a);
    SpectralForm inv;
    inv.rows = a.rows();
    inv.cols = a.cols();
    inv.tubes = a.tubes();
    inv.expect_real = s.expect_real;
    inv.slices.resize(s.slices.size());
    for (std::size_t i = 0; i < s.slices.size(); ++i) {
        if (matfun::rcond(s.slices[i]) < rcond_cap)
            throw SingularTensor("tinv: DFT slice " + std::to_string(i + 1) + " is singular",
                                 static_cast<int>(i + 1));
        inv.slices[i] = s.slices[i].partialPivLu().inverse();
    }
    Tensor3 out = from_spectral(inv);
    detail::check_finite(out, "tinv");
    return out;
}

TubalScalar tubal_mult(const TubalScalar& a, const TubalScalar& b) {
    if (a.tubes() != b.tubes()) throw ShapeMismatch("tubal_mult: tube lengths differ");
    const Index n = a.tubes();
    TubalScalar out(n);
    for (Index j = 0; j < n; ++j) {
        Complex acc(0.0, 0.0);
        for (Index k = 0; k < n; ++k) acc += a[((j - k) % n + n) % n] * b[k];
        out[j] = acc;
    }
    return out;
}

namespace detail {

void enforce_real(Tensor3& t, double rel_tol, const char* context) {
    const double residue = t.imag_norm();
    if (residue <= rel_tol * t.norm()) {
        t.zero_imag();
        return;
    }
    throw ConsistencyError(std::string(context) + ": imaginary residue " +
                           std::to_string(residue) + " exceeds threshold for a real result");
}

void check_finite(const Tensor3& t, const char* context) {
    if (!t.all_finite())
        throw ConsistencyError(std::string(context) + ": result contains non-finite entries");
}

}  // namespace detail

}  // namespace tctl
