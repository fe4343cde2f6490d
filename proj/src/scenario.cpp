#include "azhm/scenario.hpp"

#include "azhm/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace azhm::scenario {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) throw ValidationError(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    if (!parent.contains(key)) throw ValidationError(join(path, key), "missing required object");
    const json& v = parent.at(key);
    if (!v.is_object()) throw ValidationError(join(path, key), "expected an object");
    return v;
}

double get_number(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError(join(path, key), "missing required number");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(join(path, key), "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& path, std::optional<int> fallback) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError(join(path, key), "missing required integer");
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ValidationError(join(path, key), "expected an integer");
    auto x = v.get<long long>();
    if (x < -(1LL << 30) || x > (1LL << 30)) throw ValidationError(join(path, key), "integer out of range");
    return static_cast<int>(x);
}

spectra::SpectralModel parse_spec(const json& obj, const std::string& path) {
    if (!obj.contains("family") || !obj.at("family").is_string())
        throw ValidationError(join(path, "family"), "expected \"quasi_lorentzian\" or \"super_ohmic\"");
    auto family = obj.at("family").get<std::string>();
    if (family == "quasi_lorentzian") {
        reject_unknown(obj, path, {"family", "gamma0", "epsilon", "peaks"});
        spectra::QuasiLorentzianSpec q;
        q.gamma0 = get_number(obj, "gamma0", path, 1.0);
        q.epsilon = get_number(obj, "epsilon", path, 0.01);
        if (!obj.contains("peaks")) throw ValidationError(join(path, "peaks"), "missing required array");
        const json& peaks = obj.at("peaks");
        if (!peaks.is_array()) throw ValidationError(join(path, "peaks"), "expected an array");
        q.peaks.clear();
        for (std::size_t r = 0; r < peaks.size(); ++r) {
            std::string p = join(path, "peaks[" + std::to_string(r) + "]");
            const json& pk = peaks[r];
            if (!pk.is_object()) throw ValidationError(p, "expected an object");
            reject_unknown(pk, p, {"weight", "shift", "width"});
            q.peaks.push_back({get_number(pk, "weight", p, 1.0), get_number(pk, "shift", p, 0.0),
                               get_number(pk, "width", p, std::nullopt)});
        }
        return q;
    }
    if (family == "super_ohmic") {
        reject_unknown(obj, path, {"family", "gamma0", "epsilon", "s", "nu_bar", "delta"});
        spectra::SuperOhmicSpec s;
        s.gamma0 = get_number(obj, "gamma0", path, 1.0);
        s.epsilon = get_number(obj, "epsilon", path, 0.1);
        s.s = get_number(obj, "s", path, 2.0);
        s.nu_bar = get_number(obj, "nu_bar", path, 1.0);
        s.delta = get_number(obj, "delta", path, 0.1);
        return s;
    }
    throw ValidationError(join(path, "family"), "unknown family \"" + family + "\"");
}

json spec_to_json(const spectra::SpectralModel& model) {
    if (const auto* q = std::get_if<spectra::QuasiLorentzianSpec>(&model)) {
        json peaks = json::array();
        for (const auto& p : q->peaks) peaks.push_back({{"weight", p.weight}, {"shift", p.shift}, {"width", p.width}});
        return {{"family", "quasi_lorentzian"}, {"gamma0", q->gamma0}, {"epsilon", q->epsilon}, {"peaks", peaks}};
    }
    const auto& s = std::get<spectra::SuperOhmicSpec>(model);
    return {{"family", "super_ohmic"}, {"gamma0", s.gamma0}, {"epsilon", s.epsilon},
            {"s", s.s},                {"nu_bar", s.nu_bar}, {"delta", s.delta}};
}

// Re-throws a domain ValidationError under the scenario path.
template <class F>
void prefixed(const std::string& prefix, F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        std::string what = e.what();
        auto colon = what.find(": ");
        throw ValidationError(join(prefix, e.field()), colon == std::string::npos ? what : what.substr(colon + 2));
    }
}

} // namespace

std::vector<double> SweepGrid::grid() const {
    std::vector<double> g;
    if (points <= 0) return g;
    if (points == 1) return {delta_min};
    g.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g.push_back(i == points - 1 ? delta_max : delta_min + (delta_max - delta_min) * i / (points - 1));
    return g;
}

floquet::ModulationParams Scenario::modulation_at(double delta_s) const {
    auto m = modulation;
    m.delta_s = delta_s;
    return m;
}

spectra::SpectralFunction Scenario::hot(double delta_s) const {
    return {spectra::BathSide::Hot, hot_spec, beta_h, modulation.omega0, delta_s};
}

spectra::SpectralFunction Scenario::cold(double delta_s) const {
    return {spectra::BathSide::Cold, cold_spec, beta_c, modulation.omega0, delta_s};
}

void validate(const Scenario& s) {
    prefixed("modulation", [&] { floquet::validate(s.modulation); });
    if (!(s.beta_h >= 0.0)) throw ValidationError("beta_h", "must be >= 0");
    if (!(s.beta_c >= 0.0)) throw ValidationError("beta_c", "must be >= 0");
    prefixed("hot_spec", [&] { (void)s.hot(); });
    prefixed("cold_spec", [&] { (void)s.cold(); });
    prefixed("cycle", [&] { dynamics::validate(s.cycle); });
    prefixed("quad", [&] { response::validate(s.quad); });
    if (s.sweep) {
        const auto& g = *s.sweep;
        if (g.points < 0) throw ValidationError("sweep.points", "must be >= 0");
        if (!(g.delta_min > 0.0)) throw ValidationError("sweep.delta_min", "must be > 0");
        if (!(g.delta_max >= g.delta_min)) throw ValidationError("sweep.delta_max", "must be >= delta_min");
        if (!(g.delta_max < s.modulation.omega0)) throw ValidationError("sweep.delta_max", "must be < omega0");
        if (g.points > 0) {
            for (auto [key, d] : {std::pair{"sweep.delta_min", g.delta_min}, std::pair{"sweep.delta_max", g.delta_max}}) {
                try {
                    (void)s.hot(d);
                    (void)s.cold(d);
                } catch (const ValidationError& e) {
                    throw ValidationError(key, std::string("spectra invalid at this frequency (") + e.what() + ")");
                }
            }
        }
    }
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
    reject_unknown(doc, "", {"name", "modulation", "hot_spec", "cold_spec", "beta_h", "beta_c", "cycle", "quad", "sweep"});

    Scenario s;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw ValidationError("name", "expected a string");
        s.name = doc.at("name").get<std::string>();
    }

    const json& mod = require_object(doc, "modulation", "");
    reject_unknown(mod, "modulation", {"omega0", "lambda", "delta_s"});
    s.modulation.omega0 = get_number(mod, "omega0", "modulation", std::nullopt);
    s.modulation.lambda = get_number(mod, "lambda", "modulation", std::nullopt);
    s.modulation.delta_s = get_number(mod, "delta_s", "modulation", std::nullopt);
    prefixed("modulation", [&] { floquet::validate(s.modulation); });

    s.hot_spec = parse_spec(require_object(doc, "hot_spec", ""), "hot_spec");
    s.cold_spec = parse_spec(require_object(doc, "cold_spec", ""), "cold_spec");
    s.beta_h = get_number(doc, "beta_h", "", std::nullopt);
    s.beta_c = get_number(doc, "beta_c", "", std::nullopt);

    if (doc.contains("cycle")) {
        const json& c = require_object(doc, "cycle", "");
        reject_unknown(c, "cycle", {"n", "tbar", "cycles", "oversample"});
        dynamics::CycleConfig d;
        s.cycle.n = get_int(c, "n", "cycle", d.n);
        if (c.contains("tbar") && !c.at("tbar").is_null()) s.cycle.tbar = get_number(c, "tbar", "cycle", std::nullopt);
        s.cycle.cycles = get_int(c, "cycles", "cycle", d.cycles);
        s.cycle.oversample = get_int(c, "oversample", "cycle", d.oversample);
    }
    if (doc.contains("quad")) {
        const json& q = require_object(doc, "quad", "");
        reject_unknown(q, "quad", {"rel_tol", "abs_tol", "max_subdivisions", "oscillation_splitting"});
        response::QuadConfig d;
        s.quad.rel_tol = get_number(q, "rel_tol", "quad", d.rel_tol);
        s.quad.abs_tol = get_number(q, "abs_tol", "quad", d.abs_tol);
        s.quad.max_subdivisions = get_int(q, "max_subdivisions", "quad", d.max_subdivisions);
        if (q.contains("oscillation_splitting")) {
            if (!q.at("oscillation_splitting").is_boolean())
                throw ValidationError("quad.oscillation_splitting", "expected a boolean");
            s.quad.oscillation_splitting = q.at("oscillation_splitting").get<bool>();
        }
    }
    if (doc.contains("sweep")) {
        const json& g = require_object(doc, "sweep", "");
        reject_unknown(g, "sweep", {"delta_min", "delta_max", "points"});
        SweepGrid d;
        SweepGrid sg;
        sg.delta_min = get_number(g, "delta_min", "sweep", d.delta_min);
        sg.delta_max = get_number(g, "delta_max", "sweep", d.delta_max);
        sg.points = get_int(g, "points", "sweep", d.points);
        s.sweep = sg;
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::string& path_or_preset) {
    std::ifstream in(path_or_preset, std::ios::binary);
    if (!in) {
        if (is_preset(path_or_preset)) return parse_scenario(preset_text(path_or_preset));
        throw UsageError("cannot open scenario file '" + path_or_preset + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    json doc;
    if (!s.name.empty()) doc["name"] = s.name;
    doc["modulation"] = {{"omega0", s.modulation.omega0}, {"lambda", s.modulation.lambda}, {"delta_s", s.modulation.delta_s}};
    doc["hot_spec"] = spec_to_json(s.hot_spec);
    doc["cold_spec"] = spec_to_json(s.cold_spec);
    doc["beta_h"] = s.beta_h;
    doc["beta_c"] = s.beta_c;
    json c = {{"n", s.cycle.n}, {"cycles", s.cycle.cycles}, {"oversample", s.cycle.oversample}};
    if (s.cycle.tbar) c["tbar"] = *s.cycle.tbar;
    doc["cycle"] = c;
    doc["quad"] = {{"rel_tol", s.quad.rel_tol},
                   {"abs_tol", s.quad.abs_tol},
                   {"max_subdivisions", s.quad.max_subdivisions},
                   {"oscillation_splitting", s.quad.oscillation_splitting}};
    if (s.sweep)
        doc["sweep"] = {{"delta_min", s.sweep->delta_min}, {"delta_max", s.sweep->delta_max}, {"points", s.sweep->points}};
    return doc.dump(2) + "\n";
}

thermo::SweepInput sweep_input(const Scenario& s, const ScenarioSpectra& factory, thermo::SweepMode mode) {
    thermo::SweepInput in;
    in.spectra = &factory;
    in.omega0 = s.modulation.omega0;
    in.lambda = s.modulation.lambda;
    in.beta_h = s.beta_h;
    in.beta_c = s.beta_c;
    in.cycle = s.cycle;
    in.quad = s.quad;
    in.mode = mode;
    return in;
}

} // namespace azhm::scenario
