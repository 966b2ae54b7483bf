#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "tctl/mlti.hpp"
#include "tctl/tensor3.hpp"

namespace tctl {

enum class CtrbMode {
    PaperLiteral,  // rank of [MatVec(b), bcirc(a) MatVec(b), ...] up to power n-1
    LiftedKalman,  // rank of [bcirc(b), bcirc(a) bcirc(b), ...] up to power l*n-1
    PerSlice,      // Kalman rank of every (D_i, Bhat_i) pair
};

enum class BMode {
    Spectral,    // B_i = DFT slice of b
    FirstBlock,  // B_i = first block of MatVec(b), i.e. the first frontal slice
};

enum class Assembly {
    NormalizedIdft,  // gain tensor = inverse DFT of the per-slice gains (sound)
    PaperCompat,     // unnormalized forward DFT of the stacked per-slice gains
};

std::string to_string(CtrbMode m);
std::string to_string(BMode m);
std::string to_string(Assembly m);

struct SliceControllability {
    int slice = 0;  // 1-based
    Index kalman_rank = 0;
    bool controllable = false;
};

struct ControllabilityReport {
    CtrbMode mode = CtrbMode::PerSlice;
    Index rank = 0;      // aggregate rank (sum of slice ranks in per-slice mode)
    Index required = 0;
    bool controllable = false;
    std::vector<SliceControllability> per_slice;  // populated in per-slice mode
};

// Lateral concatenation [b, a*b, a^2*b, ..., a^{n-1}*b], shape n x (n q) x l.
Tensor3 ctrb_tensor(const MltiSystem& sys);

ControllabilityReport ctrb_check(const MltiSystem& sys, CtrbMode mode, double rank_tol = 1e-10);

struct FeedbackGain {
    Tensor3 k;  // q x n x l, real
    std::vector<Eigen::RowVectorXcd> per_slice_gains;      // K_i
    std::vector<std::vector<Complex>> desired_spectra;     // per slice
    BMode b_mode = BMode::Spectral;
    Assembly assembly = Assembly::NormalizedIdft;
};

// Places the eigenvalues of each DFT slice D_i via single-input pole
// placement and assembles the per-slice gains into a real gain tensor.
// Desired spectra must satisfy desired[mirror(i)] = conj(desired[i]) as
// multisets so the assembled tensor is real.
FeedbackGain design_feedback(const MltiSystem& sys,
                             const std::vector<std::vector<Complex>>& desired, BMode b_mode,
                             Assembly assembly);

// System with dynamics a - b * k and the same input map.
MltiSystem closed_loop(const MltiSystem& sys, const FeedbackGain& g);

// Assemble per-slice row gains into a gain tensor under the given convention.
Tensor3 assemble_gain(const std::vector<Eigen::RowVectorXcd>& per_slice_gains, Assembly assembly);

}  // namespace tctl
