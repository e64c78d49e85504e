#include <iostream>

#include <CLI11.hpp>

#include "toeform/cli.hpp"

int main(int argc, char** argv) {
    using toeform::cli::RunConfig;
    RunConfig c;
    CLI::App app{"Toeplitz and Hankel form diagnostics"};
    app.add_option("command", c.command, "coeffs | form | apply | spectrum | psd | classify | decay | witness | "
                                         "adjoint | closure | laurent | muckenhoupt | project | hankel-moments | "
                                         "hankel-form | hankel-classify")
        ->required();
    app.add_option("--measure", c.measure_path, "measure JSON file");
    app.add_option("--measure-json", c.measure_json, "inline measure JSON");
    app.add_option("--vector", c.vector_json, "finite vector g as JSON");
    app.add_option("--u", c.u_json, "adjoint input as JSON [k, c] pairs");
    app.add_option("--n-max", c.n_max, "coefficient cutoff, section order or moment count");
    app.add_option("--sizes", c.sizes, "section orders for spectrum")->delimiter(',');
    app.add_option("--k", c.k, "witness index k");
    app.add_option("--l", c.l, "witness index l");
    app.add_option("--r", c.r, "radius in (0, 1]");
    app.add_option("--offset", c.offset, "first index of a bilateral vector");
    app.add_option("--levels", c.levels, "Muckenhoupt levels");
    app.add_option("--grid", c.grid, "grid size (power of two)");
    app.add_option("--out-len", c.out_len, "output length for apply");
    app.add_option("--tail-start", c.tail_start, "tail start for decay");
    app.add_option("--steps", c.steps, "radial ladder steps");
    app.add_option("--random-probes", c.random_probes, "random probes for project");
    app.add_option("--bump-probes", c.bump_probes, "bump probes for project");
    app.add_option("--seed", c.seed, "probe seed");
    app.add_option("--psd-factor", c.psd_factor, "PSD pivot tolerance factor");
    app.add_option("--nondecay-fraction", c.nondecay_fraction, "decay window fraction");
    app.add_option("--l2-tail-ratio", c.l2_tail_ratio, "decay l2 tail ratio");
    app.add_option("--ladder-tolerance", c.ladder_tolerance, "radial ladder tolerance");
    app.add_option("--membership-threshold", c.membership_threshold, "adjoint tail threshold");
    app.add_option("--bounded-relative", c.bounded_relative, "Muckenhoupt bounded tolerance");
    app.add_option("--diverging-ratio", c.diverging_ratio, "Muckenhoupt diverging ratio");
    app.add_option("--format", c.format, "json or csv");
    app.add_option("-o,--output", c.output_path, "write the report here");
    app.add_flag("--echo-measure", c.echo_measure, "include the input measure in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return toeform::cli::kValidation;
    }

    const auto res = toeform::cli::run(c);
    if (res.exit_code != 0) {
        std::cerr << "error: " << res.error << '\n';
        return res.exit_code;
    }
    if (c.output_path.empty()) std::cout << res.report;
    return 0;
}
