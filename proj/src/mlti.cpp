#include "tctl/mlti.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "tctl/matfun.hpp"
#include "tctl/tfunc.hpp"

namespace tctl {

MltiSystem::MltiSystem(Tensor3 a_, Tensor3 b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a.rows() != a.cols())
        throw NotSquare("MltiSystem: dynamics tensor is not square in the first two modes");
    if (a.tubes() != b.tubes()) throw ShapeMismatch("MltiSystem: tube counts of a and b differ");
    if (a.rows() != b.rows()) throw ShapeMismatch("MltiSystem: row counts of a and b differ");
}

namespace {

void check_state_shape(const MltiSystem& sys, const Tensor3& x0, const char* who) {
    if (x0.rows() != sys.order() || x0.tubes() != sys.tubes())
        throw ShapeMismatch(std::string(who) + ": state shape incompatible with the system");
}

}  // namespace

Tensor3 zero_input_solution(const MltiSystem& sys, const Tensor3& x0, double t) {
    check_state_shape(sys, x0, "zero_input_solution");
    return tprod(texp(sys.a, t), x0);
}

std::vector<double> make_grid(double t_final, double step) {
    if (!(step > 0.0) || !(t_final >= 0.0))
        throw Error("make_grid: need step > 0 and t_final >= 0");
    std::vector<double> grid{0.0};
    for (std::size_t k = 1; static_cast<double>(k - 1) * step < t_final; ++k) {
        double t = static_cast<double>(k) * step;
        grid.push_back(t < t_final ? t : t_final);
        if (t >= t_final) break;
    }
    return grid;
}

Trajectory simulate(const MltiSystem& sys, const Tensor3& x0, const std::vector<Tensor3>& inputs,
                    const std::vector<double>& grid) {
    check_state_shape(sys, x0, "simulate");
    if (grid.empty() || grid.front() != 0.0)
        throw NonMonotoneGrid("simulate: time grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw NonMonotoneGrid("simulate: time grid must be strictly increasing");

    const bool forced = !inputs.empty();
    if (forced && inputs.size() != grid.size())
        throw ShapeMismatch("simulate: need one input sample per grid point");
    if (forced)
        for (const Tensor3& u : inputs)
            if (u.rows() != sys.inputs() || u.cols() != x0.cols() || u.tubes() != sys.tubes())
                throw ShapeMismatch("simulate: input sample shape incompatible with the system");

    const Index n = sys.order(), l = sys.tubes(), q = sys.inputs();
    const Index nl = n * l, ql = q * l;
    const Eigen::MatrixXcd ac = bcirc(sys.a).data;
    const Eigen::MatrixXcd bc = forced ? bcirc(sys.b).data : Eigen::MatrixXcd();
    const bool real_run = sys.a.is_real() && sys.b.is_real() && x0.is_real() &&
                          std::all_of(inputs.begin(), inputs.end(),
                                      [](const Tensor3& u) { return u.is_real(); });

    // exact zero-order-hold update per step length h:
    //   x+ = phi x + gamma u,  [phi gamma; 0 I] = expm([ac bc; 0 0] h)
    std::map<double, std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> cache;
    auto discretize = [&](double h) -> const std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>& {
        auto it = cache.find(h);
        if (it != cache.end()) return it->second;
        std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> phi_gamma;
        if (!forced) {
            phi_gamma.first = matfun::expm(Eigen::MatrixXcd(ac * h));
        } else {
            Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(nl + ql, nl + ql);
            aug.topLeftCorner(nl, nl) = ac * h;
            aug.topRightCorner(nl, ql) = bc * h;
            const Eigen::MatrixXcd e = matfun::expm(aug);
            phi_gamma.first = e.topLeftCorner(nl, nl);
            phi_gamma.second = e.topRightCorner(nl, ql);
        }
        return cache.emplace(h, std::move(phi_gamma)).first->second;
    };

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());
    if (forced) traj.inputs = inputs;

    Eigen::MatrixXcd xv = matvec_unfold(x0);
    traj.states.push_back(x0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const auto& [phi, gamma] = discretize(grid[k] - grid[k - 1]);
        if (forced)
            xv = phi * xv + gamma * matvec_unfold(inputs[k - 1]);
        else
            xv = phi * xv;
        Tensor3 state = fold(xv, n, l);
        if (real_run) detail::enforce_real(state, 1e-9, "simulate");
        detail::check_finite(state, "simulate");
        traj.states.push_back(std::move(state));
    }
    return traj;
}

Trajectory simulate_constant(const MltiSystem& sys, const Tensor3& x0, const Tensor3& u,
                             const std::vector<double>& grid) {
    return simulate(sys, x0, std::vector<Tensor3>(grid.size(), u), grid);
}

StabilityReport stability(const MltiSystem& sys) {
    const SpectralForm s = to_spectral(sys.a);
    const Index n = sys.order(), l = sys.tubes();

    StabilityReport report;
    report.per_slice_spectra.resize(l, n);
    for (Index i = 0; i < l; ++i)
        report.per_slice_spectra.row(i) =
            matfun::eig_values(s.slices[static_cast<std::size_t>(i)]).transpose();

    report.max_real_part = report.per_slice_spectra.real().maxCoeff();
    report.stable = report.max_real_part < 0.0;
    report.decay_rate = -report.max_real_part;
    report.eigentuples = eigentuples(report.per_slice_spectra);
    return report;
}

}  // namespace tctl
