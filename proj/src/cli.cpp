#include "toeform/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "toeform/closability.hpp"
#include "toeform/closure_weights.hpp"
#include "toeform/error.hpp"
#include "toeform/fft.hpp"
#include "toeform/hankel.hpp"
#include "toeform/json_io.hpp"

namespace toeform::cli {
namespace {

using io::json;

struct Report {
    json body;
    // Optional tabular form for --format csv.
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw PreconditionError(std::string(what) + " is not valid JSON: " + e.what());
    }
}

json load_measure_json(const RunConfig& c) {
    if (!c.measure_path.empty() && !c.measure_json.empty())
        throw PreconditionError("give either --measure or --measure-json, not both");
    if (!c.measure_json.empty()) return parse_text(c.measure_json, "inline measure");
    if (c.measure_path.empty()) throw PreconditionError("this command needs --measure or --measure-json");
    std::ifstream in(c.measure_path);
    if (!in) throw PreconditionError("cannot open measure file '" + c.measure_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), "measure file");
}

FiniteVector load_vector(const RunConfig& c) {
    if (c.vector_json.empty()) throw PreconditionError("this command needs --vector");
    auto g = io::vector_from_json(parse_text(c.vector_json, "--vector"));
    if (g.empty()) throw PreconditionError("--vector must not be empty");
    return g;
}

std::size_t grid_for(const RunConfig& c) {
    const std::size_t g = c.grid ? *c.grid : default_grid_size();
    if (!fft::is_pow2(g)) throw PreconditionError("grid size must be a power of two");
    return g;
}

json base_parameters(const RunConfig& c, std::size_t grid) {
    return {{"command", c.command}, {"grid_size", grid}};
}

Report coeffs_table_report(const CoeffSequence& t) {
    Report rep;
    json arr = json::array();
    rep.columns = {"n", "re", "im"};
    for (std::size_t n = 0; n <= t.cutoff(); ++n) {
        const cplx v = t.nonnegative()[n];
        arr.push_back(io::to_json(v));
        rep.rows.push_back({static_cast<double>(n), v.real(), v.imag()});
    }
    rep.body["result"] = {{"coefficients", arr}};
    return rep;
}

Report run_circle(const RunConfig& c) {
    const std::size_t grid = grid_for(c);
    const json mj = load_measure_json(c);
    const CircleMeasure measure = io::circle_measure_from_json(mj, grid);
    json params = base_parameters(c, measure.grid_size());
    Report rep;
    const auto& cmd = c.command;

    if (cmd == "coeffs") {
        params["n_max"] = c.n_max;
        rep = coeffs_table_report(coefficient_table(measure, c.n_max));
    } else if (cmd == "form") {
        const auto g = load_vector(c);
        const auto t = coefficient_table(measure, g.size() - 1);
        params["vector"] = io::to_json(std::span<const cplx>(g));
        rep.body["result"] = {{"form", quadratic_form_direct(t, g)}, {"norm_sq", norm_sq(g)}};
    } else if (cmd == "apply") {
        const auto g = load_vector(c);
        const std::size_t out_len = c.out_len.value_or(g.size());
        if (out_len == 0) throw PreconditionError("--out-len must be positive");
        const auto t = coefficient_table(measure, out_len + g.size() - 2);
        const auto tg = toeplitz_apply(t, g, out_len);
        params["vector"] = io::to_json(std::span<const cplx>(g));
        params["out_len"] = out_len;
        rep.body["result"] = {{"Tg", io::to_json(std::span<const cplx>(tg))}};
        rep.columns = {"n", "re", "im"};
        for (std::size_t n = 0; n < tg.size(); ++n)
            rep.rows.push_back({static_cast<double>(n), tg[n].real(), tg[n].imag()});
    } else if (cmd == "spectrum") {
        if (c.sizes.empty()) throw PreconditionError("--sizes must not be empty");
        std::size_t top = 0;
        for (auto n : c.sizes) top = std::max(top, n);
        if (top == 0) throw PreconditionError("section orders must be positive");
        const auto t = coefficient_table(measure, top - 1);
        const auto eig = min_eig_sweep(t, c.sizes);
        params["sizes"] = c.sizes;
        rep.body["result"] = {{"min_eigenvalues", eig}, {"gamma_floor", gamma_floor(measure)}};
        rep.columns = {"N", "lambda_min"};
        for (std::size_t i = 0; i < eig.size(); ++i) rep.rows.push_back({static_cast<double>(c.sizes[i]), eig[i]});
    } else if (cmd == "psd") {
        if (c.n_max == 0) throw PreconditionError("--n-max (section order) must be positive");
        const auto t = coefficient_table(measure, c.n_max - 1);
        params["order"] = c.n_max;
        params["psd_factor"] = c.psd_factor;
        rep.body["result"] = io::to_json(psd_check(t, c.n_max, c.psd_factor));
    } else if (cmd == "classify") {
        rep.body["result"] = io::to_json(classify_measure(measure));
    } else if (cmd == "decay") {
        const std::size_t s = c.tail_start.value_or(c.n_max / 4);
        const DecayThresholds th{c.nondecay_fraction, c.l2_tail_ratio, DecayThresholds{}.negligible_level};
        params["n_max"] = c.n_max;
        params["tail_start"] = s;
        params["nondecay_fraction"] = th.nondecay_fraction;
        params["l2_tail_ratio"] = th.l2_tail_ratio;
        params["negligible_level"] = th.negligible_level;
        rep.body["result"] = io::to_json(decay_diagnostics(coefficient_table(measure, c.n_max), s, th));
    } else if (cmd == "witness") {
        params["k"] = c.k;
        params["l"] = c.l;
        rep.body["result"] = io::to_json(nonclosability_witness(measure, c.k, c.l));
    } else if (cmd == "adjoint") {
        if (c.u_json.empty()) throw PreconditionError("adjoint needs --u");
        const json uj = parse_text(c.u_json, "--u");
        if (!uj.is_array()) throw PreconditionError("--u must be an array of [k, c] pairs");
        const std::size_t ug = measure.grid_size();
        std::vector<cplx> modes(ug);
        for (const auto& p : uj) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer())
                throw PreconditionError("--u entries are [k, c] pairs with integer k");
            const long k = p[0].get<long>();
            if (2 * std::abs(k) >= static_cast<long>(ug)) throw ResolutionError("mode of u is not resolved by the grid");
            const auto idx = static_cast<std::size_t>(k >= 0 ? k : static_cast<long>(ug) + k);
            modes[idx] += io::complex_from_json(p[1]);
        }
        const auto samples = fft::inverse(modes);
        params["u"] = uj;
        params["n_max"] = c.n_max;
        params["membership_threshold"] = c.membership_threshold;
        const auto res = adjoint_coefficients(samples, measure, c.n_max, c.membership_threshold);
        rep.body["result"] = io::to_json(res);
        rep.columns = {"n", "re", "im"};
        for (std::size_t n = 0; n < res.u.size(); ++n)
            rep.rows.push_back({static_cast<double>(n), res.u[n].real(), res.u[n].imag()});
    } else if (cmd == "closure") {
        const auto g = load_vector(c);
        params["vector"] = io::to_json(std::span<const cplx>(g));
        params["steps"] = c.steps;
        params["ladder_tolerance"] = c.ladder_tolerance;
        const auto ladder = closure_ladder(measure, g, c.steps, c.ladder_tolerance, measure.grid_size());
        json res = io::to_json(ladder);
        if (c.r) {
            params["r"] = *c.r;
            res["value_at_r"] = closed_form_eval(measure, g, *c.r, measure.grid_size());
        }
        res["direct_form"] = quadratic_form_direct(coefficient_table(measure, g.size() - 1), g);
        rep.body["result"] = res;
        rep.columns = {"radius", "value"};
        for (std::size_t i = 0; i < ladder.radii.size(); ++i) rep.rows.push_back({ladder.radii[i], ladder.values[i]});
    } else if (cmd == "laurent") {
        BilateralVector b{c.offset, load_vector(c)};
        params["vector"] = io::to_json(std::span<const cplx>(b.values));
        params["offset"] = c.offset;
        rep.body["result"] = {{"form", laurent_form_eval(measure, b, measure.grid_size())}, {"norm_sq", norm_sq(b.values)}};
    } else if (cmd == "muckenhoupt") {
        const std::size_t mg = c.grid ? grid_for(c) : std::size_t{1} << 14;
        const MuckenhouptThresholds th{c.bounded_relative, c.diverging_ratio};
        const auto r = muckenhoupt_estimate(measure, c.levels, mg, th);
        params["grid_size"] = r.grid_size;
        params["levels"] = c.levels;
        rep.body["result"] = io::to_json(r);
        rep.columns = {"level", "cells", "E"};
        for (std::size_t j = 0; j < r.estimates.size(); ++j)
            rep.rows.push_back({static_cast<double>(j), static_cast<double>(r.resolutions[j]), r.estimates[j]});
    } else if (cmd == "project") {
        if (!measure.ac()) throw PreconditionError("project needs an absolutely continuous weight");
        if (measure.has_singular_part()) throw PreconditionError("project weighs probes by the density alone");
        const std::size_t pg = measure.grid_size();
        const auto probes = projection_probes(pg, c.random_probes, c.bump_probes, c.seed);
        const auto w = measure.ac()->samples(pg, 0.5);
        const std::vector<double> ones(pg, 1.0);
        const auto weighted = survey_projection(probes, w);
        const auto plain = survey_projection(probes, ones);
        params["random_probes"] = c.random_probes;
        params["bump_probes"] = c.bump_probes;
        params["seed"] = c.seed;
        params["projection_noise"] = kProjectionNoise;
        rep.body["result"] = {{"weighted_ratios", weighted.ratios},
                              {"unweighted_ratios", plain.ratios},
                              {"weighted_max", weighted.max_ratio},
                              {"unweighted_max", plain.max_ratio}};
        rep.columns = {"probe", "weighted", "unweighted"};
        for (std::size_t i = 0; i < probes.size(); ++i)
            rep.rows.push_back({static_cast<double>(i), weighted.ratios[i], plain.ratios[i]});
    }
    if (c.echo_measure) rep.body["measure"] = mj;
    rep.body["parameters"] = params;
    return rep;
}

Report run_line(const RunConfig& c) {
    const json mj = load_measure_json(c);
    const LineMeasure measure = io::line_measure_from_json(mj);
    json params{{"command", c.command}, {"max_gauss_nodes", kMaxGaussNodes}};
    Report rep;
    if (c.command == "hankel-moments") {
        const auto q = power_moments(measure, c.n_max);
        params["n_max"] = c.n_max;
        rep.body["result"] = {{"moments", q}};
        rep.columns = {"n", "q"};
        for (std::size_t n = 0; n < q.size(); ++n) rep.rows.push_back({static_cast<double>(n), q[n]});
    } else if (c.command == "hankel-form") {
        const auto g = load_vector(c);
        const auto q = power_moments(measure, 2 * (g.size() - 1));
        params["vector"] = io::to_json(std::span<const cplx>(g));
        params["psd_factor"] = c.psd_factor;
        json res{{"form", hankel_form(q, g)}, {"norm_sq", norm_sq(g)}};
        res["section_psd"] = io::to_json(hankel_psd_check(q, g.size(), c.psd_factor));
        rep.body["result"] = res;
    } else {
        params["diagnostic_moments"] = c.n_max;
        params["endpoint_tolerance"] = kEndpointTolerance;
        rep.body["result"] = io::to_json(hankel_classify(measure, c.n_max));
    }
    if (c.echo_measure) rep.body["measure"] = mj;
    rep.body["parameters"] = params;
    return rep;
}

std::string format_csv(const Report& rep) {
    if (rep.columns.empty()) throw PreconditionError("this command has no tabular output; use --format json");
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < rep.columns.size(); ++i) os << (i ? "," : "") << rep.columns[i];
    os << '\n';
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

bool is_line_command(const std::string& cmd) { return cmd.rfind("hankel-", 0) == 0; }

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> list{
        "coeffs",  "form",    "apply",       "spectrum", "psd",           "classify",    "decay",       "witness",
        "adjoint", "closure", "laurent",     "muckenhoupt", "project", "hankel-moments", "hankel-form", "hankel-classify"};
    return list;
}

std::size_t default_grid_size() {
    const char* env = std::getenv("TOEFORM_GRID_SIZE");
    if (env == nullptr || *env == '\0') return kDefaultGridSize;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw PreconditionError("TOEFORM_GRID_SIZE must be a positive integer");
    return static_cast<std::size_t>(v);
}

RunResult run(const RunConfig& config) {
    RunResult out;
    try {
        const auto& cmds = commands();
        if (std::find(cmds.begin(), cmds.end(), config.command) == cmds.end())
            throw PreconditionError("unknown command '" + config.command + "'");
        if (config.format != "json" && config.format != "csv")
            throw PreconditionError("format must be json or csv");
        const Report rep = is_line_command(config.command) ? run_line(config) : run_circle(config);
        out.report = config.format == "csv" ? format_csv(rep) : rep.body.dump(2) + "\n";
        if (!config.output_path.empty()) {
            std::ofstream f(config.output_path, std::ios::binary);
            if (!f) throw PreconditionError("cannot write '" + config.output_path + "'");
            f << out.report;
        }
    } catch (const ResolutionError& e) {
        out = {kResolution, {}, e.what()};
    } catch (const NumericError& e) {
        out = {kResolution, {}, e.what()};
    } catch (const std::exception& e) {
        out = {kValidation, {}, e.what()};
    }
    return out;
}

}  // namespace toeform::cli
