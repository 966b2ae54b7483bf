#include "tctl/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <string>

#include "tctl/matfun.hpp"
#include "tctl/parallel.hpp"

namespace tctl {

namespace detail {

void dft_forward(const std::vector<Complex>& in, std::vector<Complex>& out) {
    if (in.size() == 1) {
        out = in;
        return;
    }
    static thread_local Eigen::FFT<double> fft;
    fft.fwd(out, in);
}

void dft_inverse(const std::vector<Complex>& in, std::vector<Complex>& out) {
    if (in.size() == 1) {
        out = in;
        return;
    }
    static thread_local Eigen::FFT<double> fft;
    fft.inv(out, in);
}

}  // namespace detail

SpectralForm to_spectral(const Tensor3& t) {
    const Index n = t.tubes();
    SpectralForm s;
    s.rows = t.rows();
    s.cols = t.cols();
    s.tubes = n;
    s.expect_real = t.is_real();
    s.slices.assign(static_cast<std::size_t>(n), Eigen::MatrixXcd(t.rows(), t.cols()));

    std::vector<Complex> in(static_cast<std::size_t>(n)), out;
    for (Index c = 0; c < t.cols(); ++c)
        for (Index r = 0; r < t.rows(); ++r) {
            for (Index k = 0; k < n; ++k) in[static_cast<std::size_t>(k)] = t(r, c, k);
            detail::dft_forward(in, out);
            for (Index k = 0; k < n; ++k) s.slices[static_cast<std::size_t>(k)](r, c) = out[static_cast<std::size_t>(k)];
        }

    if (s.expect_real) {
        // real source: pin the conjugate symmetry exactly
        s.slices[0].imag().setZero();
        if (n % 2 == 0) s.slices[static_cast<std::size_t>(n / 2)].imag().setZero();
        for (Index i = 1; i < n - i; ++i)
            s.slices[static_cast<std::size_t>(n - i)] = s.slices[static_cast<std::size_t>(i)].conjugate();
    }
    return s;
}

Tensor3 from_spectral(const SpectralForm& s) {
    const Index n = s.tubes;
    if (n < 1 || s.slices.size() != static_cast<std::size_t>(n))
        throw ShapeMismatch("from_spectral: slice count does not match tube count");
    for (const auto& m : s.slices)
        if (m.rows() != s.rows || m.cols() != s.cols)
            throw ShapeMismatch("from_spectral: slice shape mismatch");

    Tensor3 t(s.rows, s.cols, n);
    std::vector<Complex> in(static_cast<std::size_t>(n)), out;
    for (Index c = 0; c < s.cols; ++c)
        for (Index r = 0; r < s.rows; ++r) {
            for (Index k = 0; k < n; ++k) in[static_cast<std::size_t>(k)] = s.slices[static_cast<std::size_t>(k)](r, c);
            detail::dft_inverse(in, out);
            for (Index k = 0; k < n; ++k) t(r, c, k) = out[static_cast<std::size_t>(k)];
        }

    if (s.expect_real) detail::enforce_real(t, 1e-9, "from_spectral");
    detail::check_finite(t, "from_spectral");
    return t;
}

TEig teig(const Tensor3& a, double rcond_tol) {
    if (a.rows() != a.cols()) throw NotSquare("teig: tensor is not square in the first two modes");
    const Index n = a.rows(), l = a.tubes();
    const SpectralForm s = to_spectral(a);

    std::vector<Eigen::MatrixXcd> p_slices(static_cast<std::size_t>(l));
    std::vector<Eigen::MatrixXcd> d_slices(static_cast<std::size_t>(l));
    std::vector<Eigen::MatrixXcd> pinv_slices(static_cast<std::size_t>(l));
    Eigen::MatrixXcd table(l, n);

    detail::parallel_for_slices(static_cast<std::size_t>(l), [&](std::size_t i) {
        const matfun::EigResult er = matfun::eig(s.slices[i]);
        if (matfun::rcond(er.vectors) < rcond_tol)
            throw DefectiveSlice("teig: DFT slice " + std::to_string(i + 1) +
                                     " is defective (ill-conditioned eigenvectors)",
                                 static_cast<int>(i + 1));
        p_slices[i] = er.vectors;
        d_slices[i] = er.values.asDiagonal();
        pinv_slices[i] = er.vectors.partialPivLu().inverse();
        table.row(static_cast<Index>(i)) = er.values.transpose();
    });

    auto assemble = [&](std::vector<Eigen::MatrixXcd>& slices) {
        SpectralForm f;
        f.rows = n;
        f.cols = n;
        f.tubes = l;
        f.expect_real = false;
        f.slices = std::move(slices);
        return from_spectral(f);
    };

    TEig e;
    e.p = assemble(p_slices);
    e.d = assemble(d_slices);
    e.pinv = assemble(pinv_slices);
    e.per_slice_eigenvalues = std::move(table);
    return e;
}

std::vector<Eigentuple> eigentuples(const TEig& e) { return eigentuples(e.per_slice_eigenvalues); }

std::vector<Eigentuple> eigentuples(const Eigen::MatrixXcd& per_slice_eigenvalues) {
    const Index l = per_slice_eigenvalues.rows();
    const Index n = per_slice_eigenvalues.cols();
    std::vector<Eigentuple> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<Complex> spectrum(static_cast<std::size_t>(l)), tube;
    for (Index k = 0; k < n; ++k) {
        for (Index i = 0; i < l; ++i)
            spectrum[static_cast<std::size_t>(i)] = per_slice_eigenvalues(i, k);
        detail::dft_inverse(spectrum, tube);
        Eigentuple t;
        t.tube = TubalScalar(tube);
        t.spectrum = Eigen::Map<const Eigen::VectorXcd>(spectrum.data(), l);
        out.push_back(std::move(t));
    }
    return out;
}

int tubal_rank(const TubalScalar& a, double tol) {
    std::vector<Complex> coeffs;
    detail::dft_forward(a.data(), coeffs);
    double max_mag = 0.0;
    for (const auto& z : coeffs) max_mag = std::max(max_mag, std::abs(z));
    if (max_mag == 0.0) return 0;
    int count = 0;
    for (const auto& z : coeffs)
        if (std::abs(z) > tol * max_mag) ++count;
    return count;
}

}  // namespace tctl
