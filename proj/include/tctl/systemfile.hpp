#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tctl/control.hpp"
#include "tctl/tensor3.hpp"

namespace tctl::io {

struct DesignSpec {
    std::vector<std::vector<Complex>> desired;  // per slice, [re, im] pairs in the file
    BMode b_mode = BMode::Spectral;
    Assembly assembly = Assembly::NormalizedIdft;
};

enum class InputKind { Zero, Constant, Samples };

struct InputSpec {
    InputKind kind = InputKind::Zero;
    std::optional<Tensor3> constant;
    std::vector<Tensor3> samples;  // one per grid point
};

struct SimulateSpec {
    double t_final = 1.0;
    double step = 0.01;
    InputSpec input;
    bool feedback = false;  // simulate the closed loop built from the file's gain tensor
};

//
// Declarative system description: tensors plus optional design and
// simulation blocks. Serialized as JSON with schema field "schema": 1;
// tensors are {"shape": [rows, cols, tubes], "slices": [row-major frontal
// slices]}; complex numbers are [re, im] pairs.
//
struct SystemFile {
    int schema = 1;
    Tensor3 a, b;
    std::optional<Tensor3> x0;
    std::optional<Tensor3> k;
    std::optional<DesignSpec> design;
    std::optional<SimulateSpec> simulate;
};

SystemFile parse_system_file(const std::string& text);
SystemFile load_system_file(const std::filesystem::path& path);

std::string serialize_system_file(const SystemFile& f);
void save_system_file(const SystemFile& f, const std::filesystem::path& path);

}  // namespace tctl::io
