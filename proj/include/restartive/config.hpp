#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "restartive/harness.hpp"

namespace restartive {

using nlohmann::json;

namespace cfgdetail {

inline std::string type_name(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "bool";
    if (v.is_number()) return "number";
    if (v.is_null()) return "null";
    return "value";
}

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::runtime_error("config: " + msg);
}

inline void check_keys(const json& obj, const std::string& where,
                       std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional) {
    if (!obj.is_object()) fail(where + " must be an object, got " + type_name(obj));
    std::string missing;
    for (const char* k : required)
        if (!obj.contains(k)) missing += missing.empty() ? std::string(k) : ", " + std::string(k);
    if (!missing.empty()) {
        const bool plural = missing.find(',') != std::string::npos;
        fail("missing required key" + std::string(plural ? "s" : "") + ": " + missing
             + (where.empty() ? "" : " in " + where));
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known)
            fail("unknown key '" + it.key() + "'" + (where.empty() ? "" : " in " + where));
    }
}

inline double get_num(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) fail("key '" + key + "' in " + where + " must be a number, got " + type_name(v));
    return v.get<double>();
}

inline long get_long(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail("key '" + key + "' in " + where + " must be an integer, got " + type_name(v));
    return v.get<long>();
}

inline bool get_bool(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail("key '" + key + "' in " + where + " must be a bool, got " + type_name(v));
    return v.get<bool>();
}

inline std::string get_str(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_string()) fail("key '" + key + "' in " + where + " must be a string, got " + type_name(v));
    return v.get<std::string>();
}

} // namespace cfgdetail

inline FrequencyPlan frequency_from_json(const json& j, const std::string& where) {
    using namespace cfgdetail;
    if (!j.is_object()) fail(where + " must be an object");
    if (!j.contains("kind")) fail("missing required key: kind in " + where);
    const std::string kind = get_str(j, where, "kind");
    try {
        if (kind == "fixed") {
            check_keys(j, where, {"kind", "f"}, {});
            return FrequencyPlan::fixed(get_long(j, where, "f"));
        }
        if (kind == "linear" || kind == "exponential") {
            check_keys(j, where, {"kind", "f1", "r", "n_stages"}, {});
            const long f1 = get_long(j, where, "f1");
            const double r = get_num(j, where, "r");
            const int ns = static_cast<int>(get_long(j, where, "n_stages"));
            return kind == "linear" ? FrequencyPlan::linear(f1, r, ns)
                                    : FrequencyPlan::exponential(f1, r, ns);
        }
        if (kind == "piecewise") {
            check_keys(j, where, {"kind", "segments"}, {});
            const json& segs = j.at("segments");
            if (!segs.is_array() || segs.empty())
                fail("key 'segments' in " + where + " must be a non-empty array");
            std::vector<std::pair<long, long>> out;
            for (const auto& s : segs) {
                if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer()
                    || !s[1].is_number_integer())
                    fail("each segment in " + where + " must be an [iters, frequency] pair");
                out.emplace_back(s[0].get<long>(), s[1].get<long>());
            }
            return FrequencyPlan::piecewise(out);
        }
        if (kind == "decay_to_one") {
            check_keys(j, where, {"kind", "f_start", "span"}, {});
            return FrequencyPlan::decay_to_one(get_long(j, where, "f_start"),
                                               static_cast<int>(get_long(j, where, "span")));
        }
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    cfgdetail::fail("key 'kind' in " + where + " must be one of fixed, linear, exponential, piecewise, decay_to_one; got '" + kind + "'");
}

inline json frequency_to_json(const FrequencyPlan& p) {
    json j;
    switch (p.kind) {
    case FrequencyPlan::Kind::Fixed:
        j["kind"] = "fixed";
        j["f"] = p.f1;
        break;
    case FrequencyPlan::Kind::Linear:
    case FrequencyPlan::Kind::Exponential:
        j["kind"] = p.kind == FrequencyPlan::Kind::Linear ? "linear" : "exponential";
        j["f1"] = p.f1;
        j["r"] = p.r;
        j["n_stages"] = p.n_stages;
        break;
    case FrequencyPlan::Kind::Piecewise: {
        j["kind"] = "piecewise";
        json segs = json::array();
        for (const auto& [len, f] : p.segments) segs.push_back(json::array({len, f}));
        j["segments"] = segs;
        break;
    }
    case FrequencyPlan::Kind::DecayToOne:
        j["kind"] = "decay_to_one";
        j["f_start"] = p.f1;
        j["span"] = p.span;
        break;
    }
    return j;
}

inline MethodKind method_kind_from_name(const std::string& name, const std::string& where) {
    if (name == "gd" || name == "sgd") return MethodKind::GD;
    if (name == "hb") return MethodKind::HB;
    if (name == "cm" || name == "sgd_cm") return MethodKind::CM;
    if (name == "nag" || name == "nasgd") return MethodKind::NAG;
    if (name == "arnag" || name == "arsgd") return MethodKind::ARNAG;
    if (name == "sr" || name == "srnag" || name == "srsgd") return MethodKind::SR;
    cfgdetail::fail("key 'name' in " + where + " must be one of gd, sgd, hb, cm, nag, nasgd, arnag, arsgd, sr, srnag, srsgd; got '" + name + "'");
}

inline const char* method_canonical_name(MethodKind k) {
    switch (k) {
    case MethodKind::GD: return "gd";
    case MethodKind::HB: return "hb";
    case MethodKind::CM: return "cm";
    case MethodKind::NAG: return "nag";
    case MethodKind::ARNAG: return "arnag";
    case MethodKind::SR: return "sr";
    }
    return "gd";
}

inline MethodSpec method_from_json(const json& j, std::size_t index) {
    using namespace cfgdetail;
    const std::string where = "methods[" + std::to_string(index) + "]";
    if (!j.is_object()) fail(where + " must be an object");
    if (!j.contains("name")) fail("missing required key: name in " + where);
    const std::string name = get_str(j, where, "name");
    MethodSpec m;
    m.kind = method_kind_from_name(name, where);
    switch (m.kind) {
    case MethodKind::HB:
    case MethodKind::CM:
        check_keys(j, where, {"name"}, {"label", "mu"});
        if (j.contains("mu")) m.mu = get_num(j, where, "mu");
        if (!(m.mu >= 0.0 && m.mu < 1.0))
            fail("key 'mu' in " + where + " must be in [0, 1)");
        break;
    case MethodKind::SR:
        check_keys(j, where, {"name", "frequency"}, {"label"});
        m.frequency = frequency_from_json(j.at("frequency"), where + ".frequency");
        m.has_frequency = true;
        break;
    default:
        check_keys(j, where, {"name"}, {"label"});
        break;
    }
    if (j.contains("label")) {
        m.label = get_str(j, where, "label");
        if (m.label.empty()) fail("key 'label' in " + where + " must be non-empty");
    } else {
        m.label = name;
        for (auto& c : m.label) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return m;
}

inline json method_to_json(const MethodSpec& m) {
    json j;
    j["name"] = method_canonical_name(m.kind);
    j["label"] = m.label;
    if (m.kind == MethodKind::HB || m.kind == MethodKind::CM) j["mu"] = m.mu;
    if (m.kind == MethodKind::SR) j["frequency"] = frequency_to_json(m.frequency);
    return j;
}

inline SyntheticSpec synthetic_from_json(const json& j, const std::string& where,
                                         bool allow_lambda, double* lambda_out) {
    using namespace cfgdetail;
    SyntheticSpec s;
    if (allow_lambda)
        check_keys(j, where, {"kind", "n", "p", "classes"},
                   {"sigma", "nuisance_sigma", "data_seed", "lambda"});
    else
        check_keys(j, where, {"n", "p", "classes"}, {"sigma", "nuisance_sigma", "data_seed"});
    s.n = get_long(j, where, "n");
    s.p = get_long(j, where, "p");
    s.classes = get_long(j, where, "classes");
    if (j.contains("sigma")) s.sigma = get_num(j, where, "sigma");
    s.nuisance_sigma = j.contains("nuisance_sigma") ? get_num(j, where, "nuisance_sigma") : s.sigma;
    if (j.contains("data_seed")) s.data_seed = static_cast<uint64_t>(get_long(j, where, "data_seed"));
    if (s.n < 1 || s.classes < 1 || s.n < s.classes)
        fail(where + " needs n >= classes >= 1");
    if (s.p < 1) fail(where + " needs p >= 1");
    if (allow_lambda && j.contains("lambda")) *lambda_out = get_num(j, where, "lambda");
    return s;
}

inline ProblemSpec problem_from_json(const json& j) {
    using namespace cfgdetail;
    const std::string where = "problem";
    if (!j.is_object()) fail("problem must be an object");
    if (!j.contains("kind")) fail("missing required key: kind in problem");
    const std::string kind = get_str(j, where, "kind");
    ProblemSpec p;
    if (kind == "cycle_quadratic") {
        check_keys(j, where, {"kind", "d"}, {"project_b"});
        p.kind = ProblemSpec::Kind::CycleQuadratic;
        p.d = get_long(j, where, "d");
        if (p.d < 3) fail("key 'd' in problem must be >= 3 for cycle_quadratic");
        if (j.contains("project_b")) p.project_b = get_bool(j, where, "project_b");
        return p;
    }
    if (kind == "rosenbrock") {
        check_keys(j, where, {"kind", "d"}, {});
        p.kind = ProblemSpec::Kind::Rosenbrock;
        p.d = get_long(j, where, "d");
        if (p.d < 2 || p.d % 2 != 0) fail("key 'd' in problem must be even and >= 2 for rosenbrock");
        return p;
    }
    if (kind == "logreg_synthetic") {
        p.kind = ProblemSpec::Kind::LogregSynthetic;
        p.synthetic = synthetic_from_json(j, where, true, &p.lambda);
        return p;
    }
    if (kind == "logreg_mnist") {
        check_keys(j, where, {"kind", "fallback"}, {"lambda"});
        p.kind = ProblemSpec::Kind::LogregMnist;
        if (j.contains("lambda")) p.lambda = get_num(j, where, "lambda");
        p.synthetic = synthetic_from_json(j.at("fallback"), "problem.fallback", false, nullptr);
        return p;
    }
    fail("key 'kind' in problem must be one of cycle_quadratic, rosenbrock, logreg_synthetic, logreg_mnist; got '" + kind + "'");
}

inline json problem_to_json(const ProblemSpec& p) {
    json j;
    switch (p.kind) {
    case ProblemSpec::Kind::CycleQuadratic:
        j["kind"] = "cycle_quadratic";
        j["d"] = p.d;
        j["project_b"] = p.project_b;
        break;
    case ProblemSpec::Kind::Rosenbrock:
        j["kind"] = "rosenbrock";
        j["d"] = p.d;
        break;
    case ProblemSpec::Kind::LogregSynthetic:
    case ProblemSpec::Kind::LogregMnist: {
        json s;
        s["n"] = p.synthetic.n;
        s["p"] = p.synthetic.p;
        s["classes"] = p.synthetic.classes;
        s["sigma"] = p.synthetic.sigma;
        s["nuisance_sigma"] = p.synthetic.nuisance_sigma < 0.0 ? p.synthetic.sigma
                                                               : p.synthetic.nuisance_sigma;
        s["data_seed"] = p.synthetic.data_seed;
        if (p.kind == ProblemSpec::Kind::LogregSynthetic) {
            j = s;
            j["kind"] = "logreg_synthetic";
            j["lambda"] = p.lambda;
        } else {
            j["kind"] = "logreg_mnist";
            j["lambda"] = p.lambda;
            j["fallback"] = s;
        }
        break;
    }
    }
    return j;
}

inline OracleSpec oracle_from_json(const json& j) {
    using namespace cfgdetail;
    const std::string where = "oracle";
    if (!j.is_object()) fail("oracle must be an object");
    if (!j.contains("kind")) fail("missing required key: kind in oracle");
    const std::string kind = get_str(j, where, "kind");
    if (kind == "exact") {
        check_keys(j, where, {"kind"}, {});
        return OracleSpec::exact();
    }
    if (kind == "gaussian_constant") {
        check_keys(j, where, {"kind", "sigma"}, {});
        const double sigma = get_num(j, where, "sigma");
        if (sigma < 0.0) fail("key 'sigma' in oracle must be >= 0");
        return OracleSpec::gaussian_constant(sigma);
    }
    if (kind == "gaussian_decaying") {
        check_keys(j, where, {"kind", "sigma0", "period"}, {});
        const double sigma0 = get_num(j, where, "sigma0");
        const long period = get_long(j, where, "period");
        if (sigma0 < 0.0) fail("key 'sigma0' in oracle must be >= 0");
        if (period < 1) fail("key 'period' in oracle must be >= 1");
        return OracleSpec::gaussian_decaying(sigma0, period);
    }
    if (kind == "minibatch") {
        check_keys(j, where, {"kind", "batch_size"}, {});
        const long bs = get_long(j, where, "batch_size");
        if (bs < 1) fail("key 'batch_size' in oracle must be >= 1");
        return OracleSpec::minibatch(bs);
    }
    fail("key 'kind' in oracle must be one of exact, gaussian_constant, gaussian_decaying, minibatch; got '" + kind + "'");
}

inline json oracle_to_json(const OracleSpec& o) {
    json j;
    switch (o.kind) {
    case OracleKind::Exact:
        j["kind"] = "exact";
        break;
    case OracleKind::GaussianConstant:
        j["kind"] = "gaussian_constant";
        j["sigma"] = o.sigma;
        break;
    case OracleKind::GaussianDecaying:
        j["kind"] = "gaussian_decaying";
        j["sigma0"] = o.sigma0;
        j["period"] = o.period;
        break;
    case OracleKind::MiniBatch:
        j["kind"] = "minibatch";
        j["batch_size"] = o.batch_size;
        break;
    }
    return j;
}

inline json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.name;
    j["problem"] = problem_to_json(cfg.problem);
    j["oracle"] = oracle_to_json(cfg.oracle);
    json ms = json::array();
    for (const auto& m : cfg.methods) ms.push_back(method_to_json(m));
    j["methods"] = ms;
    json st = json::array();
    for (const auto& s : cfg.stages.stages) {
        json e;
        e["length"] = s.length;
        e["step_size"] = s.step_size;
        st.push_back(e);
    }
    j["stages"] = st;
    j["repeat_last_stage"] = cfg.stages.repeat_last;
    j["total_iters"] = cfg.total_iters > 0 ? cfg.total_iters : cfg.stages.total_length();
    j["seeds"] = cfg.seeds;
    j["record_every"] = cfg.record_every;
    return j;
}

inline ExperimentConfig config_from_json(const json& doc) {
    using namespace cfgdetail;
    check_keys(doc, "", {"problem", "oracle", "methods", "stages"},
               {"experiment", "repeat_last_stage", "total_iters", "seeds", "record_every"});
    ExperimentConfig cfg;
    if (doc.contains("experiment")) cfg.name = get_str(doc, "top level", "experiment");
    cfg.problem = problem_from_json(doc.at("problem"));
    cfg.oracle = oracle_from_json(doc.at("oracle"));

    const json& ms = doc.at("methods");
    if (!ms.is_array() || ms.empty()) fail("methods must be a non-empty array");
    for (std::size_t i = 0; i < ms.size(); ++i)
        cfg.methods.push_back(method_from_json(ms[i], i));
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.methods.size(); ++k)
            if (cfg.methods[i].label == cfg.methods[k].label)
                fail("duplicate method label '" + cfg.methods[i].label + "'");

    const json& st = doc.at("stages");
    if (!st.is_array() || st.empty()) fail("stages must be a non-empty array");
    for (std::size_t i = 0; i < st.size(); ++i) {
        const std::string where = "stages[" + std::to_string(i) + "]";
        check_keys(st[i], where, {"length", "step_size"}, {});
        StagePlan::Stage stage;
        stage.length = get_long(st[i], where, "length");
        stage.step_size = get_num(st[i], where, "step_size");
        if (stage.length < 1) fail("key 'length' in " + where + " must be >= 1");
        if (!(stage.step_size > 0.0) || !std::isfinite(stage.step_size))
            fail("key 'step_size' in " + where + " must be positive and finite");
        cfg.stages.stages.push_back(stage);
    }
    if (doc.contains("repeat_last_stage"))
        cfg.stages.repeat_last = get_bool(doc, "top level", "repeat_last_stage");

    if (doc.contains("total_iters")) {
        cfg.total_iters = get_long(doc, "top level", "total_iters");
        if (cfg.total_iters < 1) fail("key 'total_iters' must be >= 1");
    } else {
        cfg.total_iters = cfg.stages.total_length();
    }
    if (!cfg.stages.repeat_last && cfg.total_iters > cfg.stages.total_length())
        fail("total_iters " + std::to_string(cfg.total_iters)
             + " exceeds the stage plan length " + std::to_string(cfg.stages.total_length())
             + " (set repeat_last_stage to allow this)");

    if (doc.contains("seeds")) {
        const json& sd = doc.at("seeds");
        if (!sd.is_array() || sd.empty()) fail("seeds must be a non-empty array");
        cfg.seeds.clear();
        for (const auto& s : sd) {
            if (!s.is_number_integer() || s.get<long long>() < 0)
                fail("seeds must be non-negative integers");
            cfg.seeds.push_back(s.get<uint64_t>());
        }
    }
    if (doc.contains("record_every")) {
        cfg.record_every = get_long(doc, "top level", "record_every");
        if (cfg.record_every < 1) fail("key 'record_every' must be >= 1");
    }

    for (const auto& m : cfg.methods) {
        if (m.kind != MethodKind::SR) continue;
        const auto pk = m.frequency.kind;
        if ((pk == FrequencyPlan::Kind::Linear || pk == FrequencyPlan::Kind::Exponential)
            && m.frequency.n_stages < static_cast<int>(cfg.stages.stages.size()))
            fail("method '" + m.label + "' frequency covers " + std::to_string(m.frequency.n_stages)
                 + " stages but the step plan has " + std::to_string(cfg.stages.stages.size()));
    }
    cfg.resolved_json = config_to_json(cfg).dump(2) + "\n";
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    bool blank = true;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    json doc;
    if (blank) {
        doc = json::object();
    } else {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            cfgdetail::fail(std::string("invalid JSON: ") + e.what());
        }
    }
    return config_from_json(doc);
}

// In-place dotted-path override, e.g. "oracle.sigma=0.001" or
// "stages.0.step_size=5e-4".  Numeric components index arrays; the value text
// is parsed as JSON and falls back to a plain string.
inline void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        cfgdetail::fail("override '" + assignment + "' must look like key.path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    std::vector<std::string> tokens;
    std::string cur;
    for (char c : path) {
        if (c == '.') {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    tokens.push_back(cur);
    for (const auto& t : tokens)
        if (t.empty()) cfgdetail::fail("override path '" + path + "' has an empty component");

    json value = json::parse(value_text, nullptr, false);
    if (value.is_discarded()) value = value_text;

    json* node = &doc;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const bool last = i + 1 == tokens.size();
        const std::string& tok = tokens[i];
        if (node->is_array()) {
            bool numeric = !tok.empty();
            for (char c : tok)
                if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
            if (!numeric)
                cfgdetail::fail("override path '" + path + "': '" + tok
                                + "' must be an array index");
            const std::size_t idx = std::stoul(tok);
            if (idx >= node->size())
                cfgdetail::fail("override path '" + path + "': index " + tok
                                + " out of range (array has " + std::to_string(node->size())
                                + " entries)");
            if (last)
                (*node)[idx] = value;
            else
                node = &(*node)[idx];
        } else {
            if (!node->is_object())
                cfgdetail::fail("override path '" + path + "': cannot descend into a "
                                + cfgdetail::type_name(*node) + " at '" + tok + "'");
            if (last)
                (*node)[tok] = value;
            else {
                if (!node->contains(tok)) (*node)[tok] = json::object();
                node = &(*node)[tok];
            }
        }
    }
}

inline std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig3", "thm2"};
}

inline json preset_json(const std::string& name) {
    auto quad_methods = [](const char* nag_label, json frequency) {
        return json::array({json{{"name", "gd"}, {"label", "GD"}},
                            json{{"name", "cm"}, {"label", "CM"}, {"mu", 0.9}},
                            json{{"name", "nag"}, {"label", nag_label}},
                            json{{"name", "arnag"}, {"label", "ARNAG"}},
                            json{{"name", "sr"}, {"label", "SRNAG"}, {"frequency", frequency}}});
    };
    json quad_problem = {{"kind", "cycle_quadratic"}, {"d", 1000}, {"project_b", true}};
    json quad_stages = json::array({json{{"length", 50000}, {"step_size", 0.25}}});

    if (name == "fig2a") {
        return json{{"experiment", "fig2a"},
                    {"problem", quad_problem},
                    {"oracle", {{"kind", "exact"}}},
                    {"methods", quad_methods("NAG", json{{"kind", "fixed"}, {"f", 1000}})},
                    {"stages", quad_stages},
                    {"seeds", json::array({1})},
                    {"record_every", 10}};
    }
    if (name == "fig2b") {
        return json{{"experiment", "fig2b"},
                    {"problem", quad_problem},
                    {"oracle", {{"kind", "gaussian_constant"}, {"sigma", 0.001}}},
                    {"methods", quad_methods("NASGD", json{{"kind", "fixed"}, {"f", 200}})},
                    {"stages", quad_stages},
                    {"seeds", json::array({1, 2, 3, 4, 5})},
                    {"record_every", 10}};
    }
    if (name == "fig2c") {
        json freq = {{"kind", "piecewise"},
                     {"segments", json::array({json::array({10000, 200}),
                                               json::array({40000, 400})})}};
        return json{{"experiment", "fig2c"},
                    {"problem", quad_problem},
                    {"oracle", {{"kind", "gaussian_decaying"}, {"sigma0", 0.1}, {"period", 100}}},
                    {"methods", quad_methods("NASGD", freq)},
                    {"stages", quad_stages},
                    {"seeds", json::array({1, 2, 3, 4, 5})},
                    {"record_every", 10}};
    }
    if (name == "fig3") {
        json fallback = {{"n", 25600}, {"p", 32},           {"classes", 10},
                         {"sigma", 0.5}, {"nuisance_sigma", 10.0}, {"data_seed", 2026}};
        return json{
            {"experiment", "fig3"},
            {"problem", {{"kind", "logreg_mnist"}, {"lambda", 1e-4}, {"fallback", fallback}}},
            {"oracle", {{"kind", "minibatch"}, {"batch_size", 128}}},
            {"methods",
             json::array({json{{"name", "sgd"}, {"label", "SGD"}},
                          json{{"name", "cm"}, {"label", "SGD+CM"}, {"mu", 0.9}},
                          json{{"name", "nasgd"}, {"label", "NASGD"}},
                          json{{"name", "arsgd"}, {"label", "ARSGD"}},
                          json{{"name", "srsgd"},
                               {"label", "SRSGD"},
                               {"frequency", {{"kind", "fixed"}, {"f", 10}}}}})},
            {"stages", json::array({json{{"length", 4000}, {"step_size", 0.01}}})},
            {"seeds", json::array({1, 2, 3, 4, 5})},
            {"record_every", 10}};
    }
    if (name == "thm2") {
        return json{{"experiment", "thm2"},
                    {"problem", {{"kind", "rosenbrock"}, {"d", 10}}},
                    {"oracle", {{"kind", "gaussian_constant"}, {"sigma", 0.05}}},
                    {"methods",
                     json::array({json{{"name", "srsgd"},
                                       {"label", "SRSGD"},
                                       {"frequency", {{"kind", "fixed"}, {"f", 10}}}}})},
                    {"stages", json::array({json{{"length", 100000}, {"step_size", 0.001}}})},
                    {"seeds", json::array({1, 2, 3, 4, 5})},
                    {"record_every", 10}};
    }
    cfgdetail::fail("unknown preset '" + name + "'; available: fig2a, fig2b, fig2c, fig3, thm2");
}

inline ExperimentConfig preset(const std::string& name) {
    return config_from_json(preset_json(name));
}

} // namespace restartive
