#include "toeform/json_io.hpp"

#include "toeform/error.hpp"

namespace toeform::io {
namespace {

template <class E = InvalidMeasure>
const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw E(std::string("missing field '") + key + "'");
    return obj.at(key);
}

template <class E = InvalidMeasure>
double number(const json& j, const char* what) {
    if (!j.is_number()) throw E(std::string("'") + what + "' must be a number");
    return j.get<double>();
}

template <class E = InvalidMeasure>
void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    if (!obj.is_object()) throw E(std::string(where) + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw E("unknown field '" + key + "' in " + where);
    }
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidMeasure(std::string("'") + what + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

AcDensity density_from_json(const json& j, std::size_t grid_size) {
    const auto& kind = field(j, "kind");
    if (!kind.is_string()) throw InvalidMeasure("'kind' must be a string");
    const auto k = kind.get<std::string>();
    if (k == "builtin") {
        only_keys(j, {"kind", "name", "scale", "alpha"}, "builtin density");
        const auto& name_j = field(j, "name");
        if (!name_j.is_string()) throw InvalidMeasure("'name' must be a string");
        const auto name = name_j.get<std::string>();
        BuiltinDensity b;
        b.scale = j.contains("scale") ? number(j.at("scale"), "scale") : 1.0;
        if (name == "constant") {
            b.kind = BuiltinDensity::Kind::constant;
        } else if (name == "two_plus_two_cos" || name == "2+2cos") {
            b.kind = BuiltinDensity::Kind::two_plus_two_cos;
        } else if (name == "power") {
            b.kind = BuiltinDensity::Kind::power;
            b.alpha = number(field(j, "alpha"), "alpha");
        } else {
            throw InvalidMeasure("unknown builtin density '" + name + "'");
        }
        if (b.kind != BuiltinDensity::Kind::power && j.contains("alpha"))
            throw InvalidMeasure("'alpha' only applies to the power builtin");
        return AcDensity(b, grid_size);
    }
    if (k == "fourier") {
        only_keys(j, {"kind", "coeffs"}, "Fourier density");
        const auto& c = field(j, "coeffs");
        if (!c.is_array()) throw InvalidMeasure("'coeffs' must be an array");
        FourierDensity f;
        for (const auto& v : c) f.coeffs.push_back(complex_from_json(v));
        return AcDensity(std::move(f), grid_size);
    }
    if (k == "grid") {
        only_keys(j, {"kind", "samples"}, "grid density");
        return AcDensity(GridDensity{number_list(field(j, "samples"), "samples")}, grid_size);
    }
    throw InvalidMeasure("unknown density kind '" + k + "'");
}

json density_to_json(const AcDensity& d) {
    const auto& desc = d.descriptor();
    if (auto* b = std::get_if<BuiltinDensity>(&desc)) {
        json j{{"kind", "builtin"}, {"scale", b->scale}};
        switch (b->kind) {
            case BuiltinDensity::Kind::constant:
                j["name"] = "constant";
                break;
            case BuiltinDensity::Kind::two_plus_two_cos:
                j["name"] = "two_plus_two_cos";
                break;
            case BuiltinDensity::Kind::power:
                j["name"] = "power";
                j["alpha"] = b->alpha;
                break;
        }
        return j;
    }
    if (auto* f = std::get_if<FourierDensity>(&desc)) {
        json c = json::array();
        for (const auto& z : f->coeffs) c.push_back(to_json(z));
        return {{"kind", "fourier"}, {"coeffs", c}};
    }
    return {{"kind", "grid"}, {"samples", std::get<GridDensity>(desc).samples}};
}

}  // namespace

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw PreconditionError("complex values are numbers or [re, im] pairs");
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

FiniteVector vector_from_json(const json& j) {
    if (!j.is_array()) throw PreconditionError("vectors are JSON arrays");
    FiniteVector v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(complex_from_json(x));
    return v;
}

json to_json(std::span<const cplx> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

CircleMeasure circle_measure_from_json(const json& j, std::size_t grid_size) {
    only_keys(j, {"ac", "atoms", "cantor"}, "measure");
    std::optional<AcDensity> ac;
    if (j.contains("ac") && !j.at("ac").is_null()) ac = density_from_json(j.at("ac"), grid_size);
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw InvalidMeasure("'atoms' must be an array");
        for (const auto& a : j.at("atoms")) {
            only_keys(a, {"angle", "mass"}, "atom");
            atoms.push_back({number(field(a, "angle"), "angle"), number(field(a, "mass"), "mass")});
        }
    }
    double cantor = 0.0;
    if (j.contains("cantor")) {
        only_keys(j.at("cantor"), {"mass"}, "cantor");
        cantor = number(field(j.at("cantor"), "mass"), "mass");
    }
    return CircleMeasure(std::move(ac), std::move(atoms), cantor, grid_size);
}

json to_json(const CircleMeasure& m) {
    json j = json::object();
    if (m.ac()) j["ac"] = density_to_json(*m.ac());
    if (!m.atoms().empty()) {
        json a = json::array();
        for (const auto& x : m.atoms()) a.push_back({{"angle", x.angle}, {"mass", x.mass}});
        j["atoms"] = a;
    }
    if (m.cantor_mass() > 0.0) j["cantor"] = {{"mass", m.cantor_mass()}};
    return j;
}

LineMeasure line_measure_from_json(const json& j) {
    only_keys(j, {"ac", "atoms"}, "line measure");
    std::optional<LineDensity> ac;
    if (j.contains("ac") && !j.at("ac").is_null()) {
        const auto& d = j.at("ac");
        only_keys(d, {"a", "b", "samples"}, "line density");
        ac = LineDensity{number(field(d, "a"), "a"), number(field(d, "b"), "b"), number_list(field(d, "samples"), "samples")};
    }
    std::vector<LineAtom> atoms;
    if (j.contains("atoms")) {
        if (!j.at("atoms").is_array()) throw InvalidMeasure("'atoms' must be an array");
        for (const auto& a : j.at("atoms")) {
            only_keys(a, {"x", "mass"}, "line atom");
            atoms.push_back({number(field(a, "x"), "x"), number(field(a, "mass"), "mass")});
        }
    }
    return LineMeasure(std::move(ac), std::move(atoms));
}

json to_json(const LineMeasure& m) {
    json j = json::object();
    if (m.ac()) j["ac"] = {{"a", m.ac()->a}, {"b", m.ac()->b}, {"samples", m.ac()->samples}};
    if (!m.atoms().empty()) {
        json a = json::array();
        for (const auto& x : m.atoms()) a.push_back({{"x", x.x}, {"mass", x.mass}});
        j["atoms"] = a;
    }
    return j;
}

json to_json(const ClosabilityVerdict& v) {
    json ev;
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, SymbolEvidence>) {
                ev = {{"kind", "symbol"}, {"symbol", e.symbol}, {"gamma_floor", e.gamma_floor}};
            } else if constexpr (std::is_same_v<T, SingularEvidence>) {
                json atoms = json::array();
                for (const auto& a : e.atoms) atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
                ev = {{"kind", "singular"}, {"atoms", atoms}, {"cantor_mass", e.cantor_mass}};
            } else if constexpr (std::is_same_v<T, DecayEvidence>) {
                ev = {{"kind", "decay"},
                      {"cutoff", e.cutoff},
                      {"tail_start", e.tail_start},
                      {"t0_abs", e.t0_abs},
                      {"early_level", e.early_level},
                      {"window1_sup", e.window1_sup},
                      {"window2_sup", e.window2_sup},
                      {"tail_l2", e.tail_l2},
                      {"total_l2", e.total_l2},
                      {"nondecay_fraction", e.nondecay_fraction},
                      {"l2_tail_ratio", e.l2_tail_ratio}};
            } else {
                ev = {{"kind", "support"},
                      {"violations", e.violations},
                      {"support", {e.support_lo, e.support_hi}},
                      {"moment_diagnostic", e.moment_diagnostic},
                      {"moment_window_ratio", e.moment_window_ratio},
                      {"diagnostic_agrees", e.diagnostic_agrees}};
            }
        },
        v.evidence);
    return {{"status", to_string(v.status)}, {"evidence", ev}};
}

json to_json(const WitnessReport& w) {
    return {{"k", w.k},
            {"l", w.l},
            {"atom_angle", w.atom_angle},
            {"atom_mass", w.atom_mass},
            {"norm_sq_k", w.norm_sq_k},
            {"form_k", w.form_k},
            {"form_diff", w.form_diff}};
}

json to_json(const AdjointResult& a) {
    return {{"u", to_json(a.u)},
            {"tail_ratio", a.tail_ratio},
            {"membership_threshold", a.membership_threshold},
            {"plausibly_in_domain", a.plausibly_in_domain},
            {"membership_rule", "heuristic: last-quartile share of sum |u_n|^2 below threshold"}};
}

json to_json(const MuckenhouptReport& r) {
    return {{"estimates", r.estimates},
            {"resolutions", r.resolutions},
            {"arcs_scanned", r.arcs_scanned},
            {"ratios", r.ratios},
            {"verdict", r.verdict},
            {"grid_size", r.grid_size},
            {"thresholds",
             {{"bounded_relative", r.thresholds.bounded_relative},
              {"diverging_ratio", r.thresholds.diverging_ratio},
              {"diverging_levels", 3}}}};
}

json to_json(const RadialLadder& r) {
    return {{"radii", r.radii},
            {"values", r.values},
            {"relative_increments", r.relative_increments},
            {"stabilized", r.stabilized},
            {"tolerance", r.tolerance}};
}

json to_json(const PsdResult& p) {
    json j{{"psd", p.psd}, {"tolerance", p.tolerance}};
    if (p.certificate) {
        j["certificate"] = to_json(*p.certificate);
        j["certificate_value"] = p.certificate_value;
    }
    return j;
}

}  // namespace toeform::io
