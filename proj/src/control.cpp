#include "tctl/control.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "tctl/matfun.hpp"

namespace tctl {

std::string to_string(CtrbMode m) {
    switch (m) {
        case CtrbMode::PaperLiteral: return "paper-literal";
        case CtrbMode::LiftedKalman: return "lifted-kalman";
        case CtrbMode::PerSlice: return "per-slice";
    }
    return "?";
}

std::string to_string(BMode m) {
    return m == BMode::Spectral ? "spectral" : "first-block";
}

std::string to_string(Assembly m) {
    return m == Assembly::NormalizedIdft ? "normalized-idft" : "paper-compat";
}

Tensor3 ctrb_tensor(const MltiSystem& sys) {
    const Index n = sys.order(), q = sys.inputs(), l = sys.tubes();
    Tensor3 out(n, n * q, l);
    Tensor3 block = sys.b;
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < l; ++k)
            for (Index c = 0; c < q; ++c)
                for (Index r = 0; r < n; ++r) out(r, j * q + c, k) = block(r, c, k);
        if (j + 1 < n) block = tprod(sys.a, block);
    }
    return out;
}

ControllabilityReport ctrb_check(const MltiSystem& sys, CtrbMode mode, double rank_tol) {
    const Index n = sys.order(), l = sys.tubes();
    ControllabilityReport report;
    report.mode = mode;
    report.required = n * l;

    switch (mode) {
        case CtrbMode::PaperLiteral: {
            const Eigen::MatrixXcd m =
                matfun::kalman_matrix(bcirc(sys.a).data, matvec_unfold(sys.b), n);
            report.rank = matfun::rank(m, rank_tol);
            report.controllable = report.rank == report.required;
            break;
        }
        case CtrbMode::LiftedKalman: {
            const Eigen::MatrixXcd m =
                matfun::kalman_matrix(bcirc(sys.a).data, bcirc(sys.b).data, n * l);
            report.rank = matfun::rank(m, rank_tol);
            report.controllable = report.rank == report.required;
            break;
        }
        case CtrbMode::PerSlice: {
            const SpectralForm sa = to_spectral(sys.a);
            const SpectralForm sb = to_spectral(sys.b);
            report.rank = 0;
            report.controllable = true;
            for (Index i = 0; i < l; ++i) {
                const Index r = matfun::rank(
                    matfun::kalman_matrix(sa.slices[static_cast<std::size_t>(i)],
                                          sb.slices[static_cast<std::size_t>(i)], n),
                    rank_tol);
                report.per_slice.push_back({static_cast<int>(i + 1), r, r == n});
                report.rank += r;
                if (r != n) report.controllable = false;
            }
            break;
        }
    }
    return report;
}

namespace {

// true when lhs = conj(rhs) as multisets, within tol; pairing is by nearest
// remaining element so values that only differ by roundoff still match
bool conjugate_multisets(const std::vector<Complex>& lhs, std::vector<Complex> rhs, double tol) {
    if (lhs.size() != rhs.size()) return false;
    for (auto& z : rhs) z = std::conj(z);
    for (const Complex& z : lhs) {
        std::size_t best = rhs.size();
        double best_d = tol;
        for (std::size_t j = 0; j < rhs.size(); ++j) {
            const double d = std::abs(z - rhs[j]);
            if (d <= best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == rhs.size()) return false;
        rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return true;
}

// rewrite a conjugate-closed multiset with exact pairs: near-real values
// lose their imaginary dust, complex values are averaged with their partner
// and emitted adjacently, so downstream characteristic polynomials come out
// exactly real
std::vector<Complex> conjugate_canonicalize(const std::vector<Complex>& list) {
    std::vector<Complex> out;
    std::vector<bool> used(list.size(), false);
    for (std::size_t j = 0; j < list.size(); ++j) {
        if (used[j]) continue;
        const Complex z = list[j];
        used[j] = true;
        if (std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z))) {
            out.emplace_back(z.real(), 0.0);
            continue;
        }
        std::size_t partner = list.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(std::conj(z) - list[k]);
            if (d < best_d) {
                best_d = d;
                partner = k;
            }
        }
        if (partner == list.size()) return list;  // pre-check rules this out
        used[partner] = true;
        const Complex w = 0.5 * (z + std::conj(list[partner]));
        out.push_back(w);
        out.push_back(std::conj(w));
    }
    return out;
}

}  // namespace

Tensor3 assemble_gain(const std::vector<Eigen::RowVectorXcd>& per_slice_gains, Assembly assembly) {
    if (per_slice_gains.empty()) throw ShapeMismatch("assemble_gain: no per-slice gains");
    const Index l = static_cast<Index>(per_slice_gains.size());
    const Index n = per_slice_gains[0].cols();
    for (const auto& g : per_slice_gains)
        if (g.cols() != n) throw ShapeMismatch("assemble_gain: per-slice gain widths differ");

    Tensor3 k(1, n, l);
    try {
        if (assembly == Assembly::NormalizedIdft) {
            SpectralForm s;
            s.rows = 1;
            s.cols = n;
            s.tubes = l;
            s.expect_real = true;
            for (const auto& g : per_slice_gains) s.slices.emplace_back(g);
            k = from_spectral(s);
        } else {
            // stack the per-slice gains as frontal slices, then take the
            // unnormalized forward DFT along tubes (sum/difference for l = 2)
            Tensor3 stacked(1, n, l);
            for (Index i = 0; i < l; ++i)
                stacked.set_slice(i, per_slice_gains[static_cast<std::size_t>(i)]);
            const SpectralForm s = to_spectral(stacked);
            for (Index i = 0; i < l; ++i) k.set_slice(i, s.slices[static_cast<std::size_t>(i)]);
            detail::enforce_real(k, 1e-9, "assemble_gain");
        }
    } catch (const ConsistencyError&) {
        throw ConjugacyViolation("assemble_gain: per-slice gains do not assemble to a real tensor");
    }
    return k;
}

FeedbackGain design_feedback(const MltiSystem& sys,
                             const std::vector<std::vector<Complex>>& desired, BMode b_mode,
                             Assembly assembly) {
    const Index n = sys.order(), l = sys.tubes();
    if (sys.inputs() != 1)
        throw Unsupported("design_feedback: only single-input (q = 1) placement is supported");
    if (static_cast<Index>(desired.size()) != l)
        throw DimensionMismatch("design_feedback: need one desired spectrum per tube slice");
    for (const auto& d : desired)
        if (static_cast<Index>(d.size()) != n)
            throw DimensionMismatch("design_feedback: each desired spectrum needs n eigenvalues");

    // cross-slice conjugate symmetry so the assembled gain is real
    for (Index i = 0; i < l; ++i) {
        const Index mirror = (l - i) % l;
        if (!conjugate_multisets(desired[static_cast<std::size_t>(mirror)],
                                 desired[static_cast<std::size_t>(i)], 1e-9))
            throw ConjugacyViolation(
                "design_feedback: desired spectra of slices " + std::to_string(i + 1) + " and " +
                std::to_string(mirror + 1) + " are not conjugate-paired; gain would be complex");
    }

    // canonicalize so realness of the assembled gain is exact by
    // construction: self-mirror slices get exact conjugate pairs, mirror
    // slices get the exact conjugate of their partner
    std::vector<std::vector<Complex>> want = desired;
    for (Index i = 0; i < l; ++i) {
        const Index mirror = (l - i) % l;
        if (i == mirror) {
            want[static_cast<std::size_t>(i)] =
                conjugate_canonicalize(want[static_cast<std::size_t>(i)]);
        } else if (i < mirror) {
            auto& m = want[static_cast<std::size_t>(mirror)];
            m.clear();
            for (const Complex& z : want[static_cast<std::size_t>(i)]) m.push_back(std::conj(z));
        }
    }

    const SpectralForm sa = to_spectral(sys.a);
    const SpectralForm sb = to_spectral(sys.b);

    FeedbackGain g;
    g.desired_spectra = desired;
    g.b_mode = b_mode;
    g.assembly = assembly;
    g.per_slice_gains.resize(static_cast<std::size_t>(l));

    for (Index i = 0; i < l; ++i) {
        const Index mirror = (l - i) % l;
        if (i > mirror) {
            // exact conjugate of the already-placed partner slice
            g.per_slice_gains[static_cast<std::size_t>(i)] =
                g.per_slice_gains[static_cast<std::size_t>(mirror)].conjugate();
            continue;
        }
        const Eigen::VectorXcd bi = b_mode == BMode::Spectral
                                        ? Eigen::VectorXcd(sb.slices[static_cast<std::size_t>(i)].col(0))
                                        : Eigen::VectorXcd(sys.b.slice(0).col(0));
        try {
            g.per_slice_gains[static_cast<std::size_t>(i)] = matfun::place_single_input(
                sa.slices[static_cast<std::size_t>(i)], bi, want[static_cast<std::size_t>(i)]);
        } catch (const Uncontrollable&) {
            throw Uncontrollable("design_feedback: slice " + std::to_string(i + 1) +
                                     " is not controllable with the " + to_string(b_mode) +
                                     " input matrix",
                                 static_cast<int>(i + 1));
        }
    }

    g.k = assemble_gain(g.per_slice_gains, assembly);
    return g;
}

MltiSystem closed_loop(const MltiSystem& sys, const FeedbackGain& g) {
    if (g.k.rows() != sys.inputs() || g.k.cols() != sys.order() || g.k.tubes() != sys.tubes())
        throw ShapeMismatch("closed_loop: gain tensor shape incompatible with the system");
    return {sys.a - tprod(sys.b, g.k), sys.b};
}

}  // namespace tctl
