#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toeform::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kResolution = 3 };

struct RunConfig {
    std::string command;

    // Measure source: a file path or inline JSON text (exactly one).
    std::string measure_path;
    std::string measure_json;

    // Finite vector g as a JSON array of numbers or [re, im] pairs.
    std::string vector_json;
    // Adjoint input u(theta) = sum c e^{ik theta}, as a JSON array of [k, c] pairs.
    std::string u_json;

    std::size_t n_max = 64;
    std::vector<std::size_t> sizes{16, 64, 256};
    long k = 100;
    long l = 200;
    std::optional<double> r;
    long offset = 0;
    std::size_t levels = 8;
    std::optional<std::size_t> grid;
    std::optional<std::size_t> out_len;
    std::optional<std::size_t> tail_start;
    std::size_t steps = 20;
    std::size_t random_probes = 50;
    std::size_t bump_probes = 8;
    unsigned seed = 7;

    // Tolerance overrides; defaults match the library.
    double psd_factor = 1e-10;
    double nondecay_fraction = 0.5;
    double l2_tail_ratio = 1e-6;
    double ladder_tolerance = 1e-6;
    double membership_threshold = 1e-4;
    double bounded_relative = 0.05;
    double diverging_ratio = 1.2;

    std::string format = "json";
    std::string output_path;
    bool echo_measure = false;
};

struct RunResult {
    int exit_code = kOk;
    std::string report;  // serialized report; empty on error
    std::string error;   // message on failure
};

/// Commands accepted by run().
const std::vector<std::string>& commands();

/// Grid size used when --grid is absent: TOEFORM_GRID_SIZE if set, else 4096.
std::size_t default_grid_size();

/// Dispatches one command. When output_path is set the report is also written
/// there. Never throws.
RunResult run(const RunConfig& config);

}  // namespace toeform::cli
