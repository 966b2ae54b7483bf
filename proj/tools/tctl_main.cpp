// Batch front end for MLTI system analysis, feedback design and simulation.
//
// Exit codes: 0 ok, 1 usage/parse/numerical error, 2 valid but unstable.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tctl/report.hpp"
#include "tctl/systemfile.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tctl::Error("cannot write '" + path.string() + "'");
    out << content;
}

std::optional<tctl::BMode> parse_bmode(const std::string& s) {
    if (s.empty()) return {};
    if (s == "spectral") return tctl::BMode::Spectral;
    if (s == "first-block") return tctl::BMode::FirstBlock;
    throw CLI::ValidationError("--mode", "expected 'spectral' or 'first-block'");
}

std::optional<tctl::Assembly> parse_assembly(const std::string& s) {
    if (s.empty()) return {};
    if (s == "normalized-idft") return tctl::Assembly::NormalizedIdft;
    if (s == "paper-compat") return tctl::Assembly::PaperCompat;
    throw CLI::ValidationError("--assembly", "expected 'normalized-idft' or 'paper-compat'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"t-product tensor algebra and MLTI control toolkit"};
    app.require_subcommand(1);

    std::string input_file;
    std::string output_dir = ".";
    std::string mode_flag;
    std::string assembly_flag;
    double tol = 1e-10;
    std::optional<double> step_flag;
    std::optional<double> tfinal_flag;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", input_file, "system definition file")->required();
        cmd->add_option("--output-dir", output_dir, "directory for output files");
        cmd->add_option("--tol", tol, "rank / singularity tolerance");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "eigenstructure, stability, controllability");
    add_common(analyze);

    CLI::App* place = app.add_subcommand("place", "design state feedback gains");
    add_common(place);
    place->add_option("--mode", mode_flag, "input matrix mode: spectral | first-block");
    place->add_option("--assembly", assembly_flag,
                      "gain assembly: normalized-idft | paper-compat");

    CLI::App* simulate = app.add_subcommand("simulate", "integrate trajectories");
    add_common(simulate);
    simulate->add_option("--step", step_flag, "grid step override");
    simulate->add_option("--tfinal", tfinal_flag, "horizon override");

    CLI::App* info = app.add_subcommand("info", "describe a system file");
    add_common(info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const tctl::io::SystemFile file = tctl::io::load_system_file(input_file);
        const fs::path out_dir(output_dir);
        fs::create_directories(out_dir);

        if (analyze->parsed()) {
            const tctl::io::AnalyzeOutput out = tctl::io::run_analyze(file, tol);
            write_file(out_dir / "report.json", out.report_json);
            std::cout << "report: " << (out_dir / "report.json").string() << "\n";
            std::cout << (out.stable ? "system is stable\n" : "system is NOT stable\n");
            return out.stable ? 0 : 2;
        }
        if (place->parsed()) {
            const tctl::io::PlaceOutput out =
                tctl::io::run_place(file, parse_bmode(mode_flag), parse_assembly(assembly_flag));
            write_file(out_dir / "report.json", out.report_json);
            write_file(out_dir / "gains.json", out.gains_json);
            std::cout << "report: " << (out_dir / "report.json").string() << "\n";
            std::cout << "gains:  " << (out_dir / "gains.json").string() << "\n";
            return 0;
        }
        if (simulate->parsed()) {
            const tctl::io::SimulateOutput out = tctl::io::run_simulate(file, tfinal_flag, step_flag);
            write_file(out_dir / "trajectory.csv", out.csv);
            write_file(out_dir / "plot.dat", out.plot_data);
            std::cout << "trajectory: " << (out_dir / "trajectory.csv").string() << "\n";
            std::cout << "plot data:  " << (out_dir / "plot.dat").string() << "\n";
            return 0;
        }
        if (info->parsed()) {
            std::cout << tctl::io::run_info(file);
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const tctl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
