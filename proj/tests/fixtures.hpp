#pragma once

#include <string>

namespace fixtures {

// the worked 2 x 2 x 2 example as a schema-1 system file, with design and
// simulation blocks matching the published scenario
inline std::string example_system_json() {
    return R"json({
  "schema": 1,
  "a": {"shape": [2, 2, 2], "slices": [[[-6, 5], [-10, 0]], [[0, 2], [8, 2]]]},
  "b": {"shape": [2, 1, 2], "slices": [[[1], [1]], [[1], [1]]]},
  "x0": {"shape": [2, 1, 2], "slices": [[[1], [2]], [[3], [4]]]},
  "design": {
    "desired": [[[-2, 5], [-2, -5]], [[-10, 10], [-10, -10]]],
    "bMode": "first-block",
    "assembly": "paper-compat"
  },
  "simulate": {"tFinal": 3.0, "step": 0.01, "input": {"kind": "zero"}}
})json";
}

inline std::string unstable_system_json() {
    return R"json({
  "schema": 1,
  "a": {"shape": [2, 2, 1], "slices": [[[1, 0], [0, 1]]]},
  "b": {"shape": [2, 1, 1], "slices": [[[1], [1]]]}
})json";
}

// four tube slices so per-slice work runs on the threaded path
inline std::string four_tube_system_json() {
    return R"json({
  "schema": 1,
  "a": {"shape": [2, 2, 4], "slices": [
    [[-3.0, 0.5], [0.2, -2.5]],
    [[0.3, -0.1], [0.4, 0.2]],
    [[0.1, 0.2], [-0.3, 0.1]],
    [[-0.2, 0.1], [0.05, -0.1]]
  ]},
  "b": {"shape": [2, 1, 4], "slices": [[[1], [0.5]], [[0.2], [-0.3]], [[0], [0.4]], [[-0.1], [0.25]]]}
})json";
}

}  // namespace fixtures
