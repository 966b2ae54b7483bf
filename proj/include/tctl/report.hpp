#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tctl/control.hpp"
#include "tctl/mlti.hpp"
#include "tctl/systemfile.hpp"

namespace tctl::io {

//
// Deterministic JSON writer for reports: insertion order preserved, doubles
// rendered with 15 significant digits in lowercase scientific notation, so
// two runs on the same input produce byte-identical documents.
//
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(Index v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& value(Complex v);  // [re, im]
    std::string str() const { return out_; }

  private:
    void element();
    std::string out_;
    std::vector<bool> first_;
    bool pending_key_ = false;
};

struct AnalyzeOutput {
    std::string report_json;
    bool stable = false;
};

// teig + eigentuples + stability + controllability in all three modes.
AnalyzeOutput run_analyze(const SystemFile& file, double tol = 1e-10);

struct PlaceOutput {
    std::string report_json;
    std::string gains_json;
    FeedbackGain gain;
};

// Feedback design in the requested mode, with the sound
// (spectral / normalized-idft) mode reported side by side.
PlaceOutput run_place(const SystemFile& file, std::optional<BMode> b_mode_override = {},
                      std::optional<Assembly> assembly_override = {});

struct SimulateOutput {
    std::string csv;
    std::string plot_data;
    Trajectory trajectory;
};

SimulateOutput run_simulate(const SystemFile& file, std::optional<double> t_final_override = {},
                            std::optional<double> step_override = {});

std::string run_info(const SystemFile& file);

// CSV: header "t,x_r_c_k,..." (1-based indices, row-major r, c, k order),
// one row per grid point.
std::string trajectory_csv(const Trajectory& t);

// Same series as (t, value) column pairs, whitespace separated.
std::string trajectory_plot_data(const Trajectory& t);

}  // namespace tctl::io
