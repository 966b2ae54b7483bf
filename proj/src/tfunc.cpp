#include "tctl/tfunc.hpp"

#include <cstdio>
#include <utility>

#include "tctl/matfun.hpp"
#include "tctl/parallel.hpp"
#include "tctl/spectral.hpp"

namespace tctl {

TensorFunction TensorFunction::identity() {
    return {"identity", [](const Eigen::MatrixXcd& m) { return m; }, true};
}

TensorFunction TensorFunction::exponential(double t) {
    char name[48];
    std::snprintf(name, sizeof(name), "exp(%gt)", t);
    return {name,
            [t](const Eigen::MatrixXcd& m) { return matfun::expm(Eigen::MatrixXcd(m * t)); },
            true};
}

TensorFunction TensorFunction::polynomial(std::vector<double> coeffs) {
    return {"polynomial", [coeffs = std::move(coeffs)](const Eigen::MatrixXcd& m) {
                const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
                Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
                for (std::size_t i = coeffs.size(); i-- > 0;) p = p * m + coeffs[i] * id;
                return p;
            },
            true};
}

TensorFunction TensorFunction::custom(
    std::string name, std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> evaluate,
    bool real_to_real) {
    return {std::move(name), std::move(evaluate), real_to_real};
}

namespace {

// f(D_i) for every spectral slice; for real sources with a conjugate
// equivariant f only the first half is evaluated, the rest is mirrored
std::vector<Eigen::MatrixXcd> evaluate_slices(const SpectralForm& s, const TensorFunction& f) {
    const Index n = s.tubes;
    std::vector<Eigen::MatrixXcd> out(static_cast<std::size_t>(n));
    const bool mirror = s.expect_real && f.real_to_real;
    const Index active = mirror ? n / 2 + 1 : n;

    detail::parallel_for_slices(static_cast<std::size_t>(active), [&](std::size_t i) {
        Eigen::MatrixXcd r = f.evaluate(s.slices[i]);
        if (r.rows() != s.rows || r.cols() != s.cols)
            throw ConsistencyError("tfun: evaluator changed the slice shape");
        out[i] = std::move(r);
    });
    if (mirror)
        for (Index i = 1; i < n - i; ++i)
            out[static_cast<std::size_t>(n - i)] = out[static_cast<std::size_t>(i)].conjugate();
    return out;
}

}  // namespace

Tensor3 tfun(const Tensor3& a, const TensorFunction& f) {
    if (a.rows() != a.cols()) throw NotSquare("tfun: tensor is not square in the first two modes");
    SpectralForm s = to_spectral(a);
    SpectralForm r;
    r.rows = s.rows;
    r.cols = s.cols;
    r.tubes = s.tubes;
    r.expect_real = s.expect_real && f.real_to_real;
    r.slices = evaluate_slices(s, f);
    Tensor3 out = from_spectral(r);
    detail::check_finite(out, "tfun");
    return out;
}

Tensor3 texp(const Tensor3& a, double t) { return tfun(a, TensorFunction::exponential(t)); }

Tensor3 tfun_apply(const Tensor3& a, const TensorFunction& f, const Tensor3& b) {
    if (a.rows() != a.cols())
        throw NotSquare("tfun_apply: tensor is not square in the first two modes");
    if (a.rows() != b.rows()) throw ShapeMismatch("tfun_apply: row counts differ");
    if (a.tubes() != b.tubes()) throw ShapeMismatch("tfun_apply: tube counts differ");

    SpectralForm sa = to_spectral(a);
    const SpectralForm sb = to_spectral(b);
    const std::vector<Eigen::MatrixXcd> fa = evaluate_slices(sa, f);

    SpectralForm r;
    r.rows = a.rows();
    r.cols = b.cols();
    r.tubes = a.tubes();
    r.expect_real = sa.expect_real && sb.expect_real && f.real_to_real;
    r.slices.resize(fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) r.slices[i] = fa[i] * sb.slices[i];
    Tensor3 out = from_spectral(r);
    detail::check_finite(out, "tfun_apply");
    return out;
}

}  // namespace tctl
