#pragma once

#include <Eigen/Dense>

#include <vector>

#include "tctl/spectral.hpp"
#include "tctl/tensor3.hpp"

namespace tctl {

//
// Multilinear time-invariant system  dX/dt = a * X + b * U  over real
// third-order tensors; a is n x n x l, b is n x q x l.
//
struct MltiSystem {
    Tensor3 a;
    Tensor3 b;

    MltiSystem(Tensor3 a_, Tensor3 b_);

    Index order() const { return a.rows(); }   // n
    Index inputs() const { return b.cols(); }  // q
    Index tubes() const { return a.tubes(); }  // l
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Tensor3> states;
    std::vector<Tensor3> inputs;  // empty for zero-input runs
};

struct StabilityReport {
    bool stable = false;
    Eigen::MatrixXcd per_slice_spectra;    // tubes x n, sorted per slice
    double max_real_part = 0.0;
    double decay_rate = 0.0;               // -max_real_part
    std::vector<Eigentuple> eigentuples;   // inverse-DFT view of the spectra
};

// e^{a t} * x0
Tensor3 zero_input_solution(const MltiSystem& sys, const Tensor3& x0, double t);

// uniform grid 0, step, 2*step, ..., t_final (last point clamped to t_final)
std::vector<double> make_grid(double t_final, double step);

// Integrates dX/dt = a * X + b * U with U sampled-and-held on the grid:
// inputs[k] (shape q x s x l) is held on [t_k, t_{k+1}). An empty `inputs`
// means U = 0; otherwise one sample per grid point is required (the final
// sample is unused). Each step applies the exact zero-order-hold update
// obtained from an augmented matrix exponential.
Trajectory simulate(const MltiSystem& sys, const Tensor3& x0, const std::vector<Tensor3>& inputs,
                    const std::vector<double>& grid);

// Convenience: constant input held over the whole horizon.
Trajectory simulate_constant(const MltiSystem& sys, const Tensor3& x0, const Tensor3& u,
                             const std::vector<double>& grid);

// Stable iff every eigenvalue of every DFT slice has negative real part.
StabilityReport stability(const MltiSystem& sys);

}  // namespace tctl
