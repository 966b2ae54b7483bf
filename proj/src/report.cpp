#include "tctl/report.hpp"

#include <cstdio>
#include <sstream>

#include "tctl/matfun.hpp"
#include "tctl/tfunc.hpp"

namespace tctl::io {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return buf;
}

}  // namespace

void JsonWriter::element() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    element();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    element();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    element();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    element();
    out_ += fmt_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    element();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(Index v) {
    element();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    element();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    element();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        out_ += c;
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(Complex v) {
    element();
    out_ += '[';
    out_ += fmt_double(v.real());
    out_ += ',';
    out_ += fmt_double(v.imag());
    out_ += ']';
    return *this;
}

namespace {

void write_tensor(JsonWriter& w, const Tensor3& t) {
    w.begin_object();
    w.key("shape").begin_array().value(t.rows()).value(t.cols()).value(t.tubes()).end_array();
    w.key("slices").begin_array();
    for (Index k = 0; k < t.tubes(); ++k) {
        w.begin_array();
        for (Index r = 0; r < t.rows(); ++r) {
            w.begin_array();
            for (Index c = 0; c < t.cols(); ++c) {
                const Complex z = t(r, c, k);
                if (z.imag() == 0.0)
                    w.value(z.real());
                else
                    w.value(z);
            }
            w.end_array();
        }
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

void write_spectrum(JsonWriter& w, const Eigen::VectorXcd& values) {
    w.begin_array();
    for (Index j = 0; j < values.size(); ++j) w.value(values(j));
    w.end_array();
}

void write_eigentuples(JsonWriter& w, const std::vector<Eigentuple>& tuples) {
    w.begin_array();
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        w.begin_object();
        w.key("index").value(static_cast<int>(k + 1));
        w.key("tube").begin_array();
        for (Index i = 0; i < tuples[k].tube.tubes(); ++i) w.value(tuples[k].tube[i]);
        w.end_array();
        w.key("spectrum");
        write_spectrum(w, tuples[k].spectrum);
        w.end_object();
    }
    w.end_array();
}

void write_ctrb(JsonWriter& w, const ControllabilityReport& r) {
    w.begin_object();
    w.key("mode").value(to_string(r.mode));
    w.key("rank").value(r.rank);
    w.key("required").value(r.required);
    w.key("controllable").value(r.controllable);
    if (!r.per_slice.empty()) {
        w.key("perSlice").begin_array();
        for (const auto& s : r.per_slice) {
            w.begin_object();
            w.key("slice").value(s.slice);
            w.key("kalmanRank").value(s.kalman_rank);
            w.key("controllable").value(s.controllable);
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
}

void write_stability(JsonWriter& w, const StabilityReport& st) {
    w.begin_object();
    w.key("stable").value(st.stable);
    w.key("maxRealPart").value(st.max_real_part);
    w.key("decayRate").value(st.decay_rate);
    w.key("perSliceSpectra").begin_array();
    for (Index i = 0; i < st.per_slice_spectra.rows(); ++i) {
        w.begin_object();
        w.key("slice").value(static_cast<int>(i + 1));
        w.key("eigenvalues");
        write_spectrum(w, st.per_slice_spectra.row(i).transpose());
        w.end_object();
    }
    w.end_array();
    w.key("eigentuples");
    write_eigentuples(w, st.eigentuples);
    w.end_object();
}

void write_closed_loop_spectra(JsonWriter& w, const MltiSystem& cl) {
    const SpectralForm s = to_spectral(cl.a);
    w.begin_array();
    for (Index i = 0; i < cl.tubes(); ++i) {
        w.begin_object();
        w.key("slice").value(static_cast<int>(i + 1));
        w.key("eigenvalues");
        write_spectrum(w, matfun::eig_values(s.slices[static_cast<std::size_t>(i)]));
        w.end_object();
    }
    w.end_array();
}

void write_gain(JsonWriter& w, const FeedbackGain& g) {
    w.begin_object();
    w.key("bMode").value(to_string(g.b_mode));
    w.key("assembly").value(to_string(g.assembly));
    w.key("perSliceGains").begin_array();
    for (std::size_t i = 0; i < g.per_slice_gains.size(); ++i) {
        w.begin_object();
        w.key("slice").value(static_cast<int>(i + 1));
        w.key("gain");
        write_spectrum(w, g.per_slice_gains[i].transpose());
        w.end_object();
    }
    w.end_array();
    w.key("tensor");
    write_tensor(w, g.k);
    w.end_object();
}

}  // namespace

AnalyzeOutput run_analyze(const SystemFile& file, double tol) {
    const MltiSystem sys(file.a, file.b);
    const TEig e = teig(file.a);
    const std::vector<Eigentuple> tuples = eigentuples(e);
    const StabilityReport st = stability(sys);

    // reconstruction residual of p * d * pinv against the source
    const Tensor3 reconstructed = tprod(e.p, tprod(e.d, e.pinv));
    const double anorm = file.a.norm();
    const double recon_err = anorm > 0.0 ? (reconstructed - file.a).norm() / anorm : 0.0;
    const double imag_residue = reconstructed.imag_norm();

    JsonWriter w;
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("analyze");
    w.key("system").begin_object();
    w.key("n").value(sys.order());
    w.key("q").value(sys.inputs());
    w.key("tubes").value(sys.tubes());
    w.end_object();
    w.key("perSliceEigenvalues").begin_array();
    for (Index i = 0; i < e.per_slice_eigenvalues.rows(); ++i) {
        w.begin_object();
        w.key("slice").value(static_cast<int>(i + 1));
        w.key("eigenvalues");
        write_spectrum(w, e.per_slice_eigenvalues.row(i).transpose());
        w.end_object();
    }
    w.end_array();
    w.key("eigentuples");
    write_eigentuples(w, tuples);
    w.key("stability");
    write_stability(w, st);
    w.key("controllability").begin_array();
    for (CtrbMode mode : {CtrbMode::PaperLiteral, CtrbMode::LiftedKalman, CtrbMode::PerSlice})
        write_ctrb(w, ctrb_check(sys, mode, tol));
    w.end_array();
    w.key("diagnostics").begin_object();
    w.key("teigReconstructionError").value(recon_err);
    w.key("imaginaryResidue").value(imag_residue);
    w.key("rankTolerance").value(tol);
    w.end_object();
    w.end_object();

    return {w.str() + "\n", st.stable};
}

PlaceOutput run_place(const SystemFile& file, std::optional<BMode> b_mode_override,
                      std::optional<Assembly> assembly_override) {
    if (!file.design) throw ParseError("system file: field 'design': missing (required by place)");
    const MltiSystem sys(file.a, file.b);
    const BMode b_mode = b_mode_override.value_or(file.design->b_mode);
    const Assembly assembly = assembly_override.value_or(file.design->assembly);

    PlaceOutput out;
    out.gain = design_feedback(sys, file.design->desired, b_mode, assembly);
    const MltiSystem cl = closed_loop(sys, out.gain);

    JsonWriter w;
    w.begin_object();
    w.key("schema").value(1);
    w.key("command").value("place");
    w.key("desired").begin_array();
    for (const auto& list : file.design->desired) {
        w.begin_array();
        for (const Complex& z : list) w.value(z);
        w.end_array();
    }
    w.end_array();
    w.key("chosen").begin_object();
    w.key("gain");
    write_gain(w, out.gain);
    w.key("closedLoopSpectra");
    write_closed_loop_spectra(w, cl);
    w.end_object();

    // sound mode side by side (may fail, e.g. a spectrally uncontrollable slice)
    w.key("sound").begin_object();
    w.key("bMode").value(to_string(BMode::Spectral));
    w.key("assembly").value(to_string(Assembly::NormalizedIdft));
    if (b_mode == BMode::Spectral && assembly == Assembly::NormalizedIdft) {
        w.key("note").value("chosen mode is the sound mode");
    } else {
        try {
            const FeedbackGain sound =
                design_feedback(sys, file.design->desired, BMode::Spectral, Assembly::NormalizedIdft);
            w.key("gain");
            write_gain(w, sound);
            w.key("closedLoopSpectra");
            write_closed_loop_spectra(w, closed_loop(sys, sound));
        } catch (const Error& e) {
            w.key("error").value(e.what());
        }
    }
    w.end_object();
    w.end_object();
    out.report_json = w.str() + "\n";

    // gain output document: the tensor plus the per-slice design record
    JsonWriter g;
    g.begin_object();
    g.key("schema").value(1);
    g.key("k");
    write_tensor(g, out.gain.k);
    g.key("design");
    write_gain(g, out.gain);
    g.end_object();
    out.gains_json = g.str() + "\n";
    return out;
}

SimulateOutput run_simulate(const SystemFile& file, std::optional<double> t_final_override,
                            std::optional<double> step_override) {
    if (!file.simulate)
        throw ParseError("system file: field 'simulate': missing (required by simulate)");
    const SimulateSpec& spec = *file.simulate;
    const double t_final = t_final_override.value_or(spec.t_final);
    const double step = step_override.value_or(spec.step);

    MltiSystem sys(file.a, file.b);
    if (spec.feedback) {
        if (!file.k)
            throw ParseError("system file: field 'k': missing (required by simulate.feedback)");
        FeedbackGain g;
        g.k = *file.k;
        sys = closed_loop(sys, g);
    }

    const Tensor3 x0 = file.x0 ? *file.x0 : Tensor3::zeros(sys.order(), 1, sys.tubes());
    const std::vector<double> grid = make_grid(t_final, step);

    SimulateOutput out;
    switch (spec.input.kind) {
        case InputKind::Zero:
            out.trajectory = simulate(sys, x0, {}, grid);
            break;
        case InputKind::Constant:
            out.trajectory = simulate_constant(sys, x0, *spec.input.constant, grid);
            break;
        case InputKind::Samples:
            out.trajectory = simulate(sys, x0, spec.input.samples, grid);
            break;
    }
    out.csv = trajectory_csv(out.trajectory);
    out.plot_data = trajectory_plot_data(out.trajectory);
    return out;
}

std::string run_info(const SystemFile& file) {
    std::ostringstream s;
    s << "schema: " << file.schema << "\n";
    s << "a: " << file.a.rows() << " x " << file.a.cols() << " x " << file.a.tubes() << "\n";
    s << "b: " << file.b.rows() << " x " << file.b.cols() << " x " << file.b.tubes() << "\n";
    if (file.x0)
        s << "x0: " << file.x0->rows() << " x " << file.x0->cols() << " x " << file.x0->tubes()
          << "\n";
    if (file.k)
        s << "k: " << file.k->rows() << " x " << file.k->cols() << " x " << file.k->tubes() << "\n";
    if (file.design)
        s << "design: " << file.design->desired.size() << " desired spectra, bMode "
          << to_string(file.design->b_mode) << ", assembly " << to_string(file.design->assembly)
          << "\n";
    if (file.simulate)
        s << "simulate: tFinal " << file.simulate->t_final << ", step " << file.simulate->step
          << ", feedback " << (file.simulate->feedback ? "true" : "false") << "\n";
    return s.str();
}

std::string trajectory_csv(const Trajectory& t) {
    if (t.states.empty()) return "t\n";
    const Tensor3& first = t.states.front();
    std::string out = "t";
    for (Index r = 0; r < first.rows(); ++r)
        for (Index c = 0; c < first.cols(); ++c)
            for (Index k = 0; k < first.tubes(); ++k)
                out += ",x_" + std::to_string(r + 1) + "_" + std::to_string(c + 1) + "_" +
                       std::to_string(k + 1);
    out += "\n";
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        out += fmt_double(t.times[i]);
        const Tensor3& x = t.states[i];
        for (Index r = 0; r < x.rows(); ++r)
            for (Index c = 0; c < x.cols(); ++c)
                for (Index k = 0; k < x.tubes(); ++k) out += "," + fmt_double(x(r, c, k).real());
        out += "\n";
    }
    return out;
}

std::string trajectory_plot_data(const Trajectory& t) {
    if (t.states.empty()) return "# empty trajectory\n";
    const Tensor3& first = t.states.front();
    std::string out = "#";
    for (Index r = 0; r < first.rows(); ++r)
        for (Index c = 0; c < first.cols(); ++c)
            for (Index k = 0; k < first.tubes(); ++k)
                out += " t x_" + std::to_string(r + 1) + "_" + std::to_string(c + 1) + "_" +
                       std::to_string(k + 1);
    out += "\n";
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        const Tensor3& x = t.states[i];
        std::string line;
        for (Index r = 0; r < x.rows(); ++r)
            for (Index c = 0; c < x.cols(); ++c)
                for (Index k = 0; k < x.tubes(); ++k) {
                    if (!line.empty()) line += ' ';
                    line += fmt_double(t.times[i]) + " " + fmt_double(x(r, c, k).real());
                }
        out += line + "\n";
    }
    return out;
}

}  // namespace tctl::io
