#include "tctl/matfun.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace tctl::matfun {

bool eigenvalue_order(const Complex& lhs, const Complex& rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
    return lhs.imag() > rhs.imag();
}

namespace {

void require_square(const Eigen::MatrixXcd& m, const char* who) {
    if (m.rows() != m.cols()) throw NotSquare(std::string(who) + ": matrix is not square");
}

void require_finite(const Eigen::MatrixXcd& m, const char* who) {
    if (!m.allFinite())
        throw OverflowError(std::string(who) + ": result exceeds representable range");
}

std::vector<Eigen::Index> sort_permutation(const Eigen::VectorXcd& values) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(values.size()));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eigenvalue_order(values(a), values(b));
    });
    return perm;
}

}  // namespace

EigResult eig(const Eigen::MatrixXcd& m) {
    require_square(m, "eig");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eig: QR iteration did not converge");

    const auto perm = sort_permutation(solver.eigenvalues());
    EigResult out;
    out.values.resize(m.rows());
    out.vectors.resize(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out.values(j) = solver.eigenvalues()(perm[static_cast<std::size_t>(j)]);
        out.vectors.col(j) = solver.eigenvectors().col(perm[static_cast<std::size_t>(j)]);
    }
    return out;
}

Eigen::VectorXcd eig_values(const Eigen::MatrixXcd& m) {
    require_square(m, "eig");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eig: QR iteration did not converge");
    const auto perm = sort_permutation(solver.eigenvalues());
    Eigen::VectorXcd values(m.rows());
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        values(j) = solver.eigenvalues()(perm[static_cast<std::size_t>(j)]);
    return values;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
    require_square(m, "expm");
    Eigen::MatrixXcd e = m.exp();
    require_finite(e, "expm");
    return e;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw NotSquare("expm: matrix is not square");
    Eigen::MatrixXd e = m.exp();
    if (!e.allFinite()) throw OverflowError("expm: result exceeds representable range");
    return e;
}

Eigen::Index rank(const Eigen::MatrixXcd& m, double tol) {
    if (tol < 0.0) throw Error("rank: tolerance must be non-negative");
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

double rcond(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0.0;
    return sv(sv.size() - 1) / sv(0);
}

Eigen::MatrixXcd kalman_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                               Eigen::Index depth) {
    require_square(a, "kalman_matrix");
    if (a.rows() != b.rows()) throw DimensionMismatch("kalman_matrix: row counts differ");
    const Eigen::Index q = b.cols();
    Eigen::MatrixXcd km(a.rows(), depth * q);
    Eigen::MatrixXcd block = b;
    for (Eigen::Index i = 0; i < depth; ++i) {
        km.middleCols(i * q, q) = block;
        if (i + 1 < depth) block = a * block;
    }
    return km;
}

Eigen::RowVectorXcd place_single_input(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                                       const std::vector<Complex>& desired) {
    require_square(a, "place_single_input");
    const Eigen::Index n = a.rows();
    if (b.size() != n) throw DimensionMismatch("place_single_input: b length != state dimension");
    if (static_cast<Eigen::Index>(desired.size()) != n)
        throw DimensionMismatch("place_single_input: need exactly n desired eigenvalues");

    const Eigen::MatrixXcd ctrb = kalman_matrix(a, b, n);
    if (rank(ctrb, 1e-10) < n)
        throw Uncontrollable("place_single_input: (a, b) pair is not controllable", 0);

    // desired monic characteristic polynomial, coefficients low to high
    std::vector<Complex> coeffs{Complex(1.0, 0.0)};
    for (const Complex& root : desired) {
        std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= root * coeffs[i];
        }
        coeffs = std::move(next);
    }

    // Horner evaluation of p(a)
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (std::size_t i = coeffs.size(); i-- > 0;) p = p * a + coeffs[i] * id;

    // Ackermann: k = e_n^T ctrb^{-1} p(a)
    Eigen::VectorXcd en = Eigen::VectorXcd::Zero(n);
    en(n - 1) = Complex(1.0, 0.0);
    const Eigen::VectorXcd z = ctrb.transpose().partialPivLu().solve(en);
    Eigen::RowVectorXcd k = z.transpose() * p;
    require_finite(k, "place_single_input");
    return k;
}

}  // namespace tctl::matfun
