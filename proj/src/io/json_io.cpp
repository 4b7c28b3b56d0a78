#include "cqedlab/io/json_io.hpp"

#include <cmath>

#include "cqedlab/core/errors.hpp"
#include "cqedlab/io/schemas.hpp"

namespace cqedlab {

namespace json_field {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const Json& object(const Json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
        throw ConfigError(join(path, key), "required field is missing");
    }
    if (!it->is_object()) {
        throw ConfigError(join(path, key), "expected an object");
    }
    return *it;
}

const Json* optional_object(const Json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
        return nullptr;
    }
    if (!it->is_object()) {
        throw ConfigError(join(path, key), "expected an object");
    }
    return &*it;
}

std::optional<double> optional_number(const Json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw ConfigError(join(path, key), "expected a number");
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(join(path, key), "expected a finite number");
    }
    return v;
}

double number(const Json& parent, const std::string& key, const std::string& path) {
    const auto v = optional_number(parent, key, path);
    if (!v) {
        throw ConfigError(join(path, key), "required field is missing");
    }
    return *v;
}

std::string string(const Json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
        throw ConfigError(join(path, key), "required field is missing");
    }
    if (!it->is_string()) {
        throw ConfigError(join(path, key), "expected a string");
    }
    return it->get<std::string>();
}

void expect_schema(const Json& doc, const std::string& schema, const std::string& path) {
    if (!doc.is_object()) {
        throw ConfigError(path, "expected a JSON object");
    }
    const std::string found = string(doc, "schema", path);
    if (found != schema) {
        throw ConfigError(join(path, "schema"), "expected \"" + schema + "\", found \"" + found + "\"");
    }
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(join(path, key), "unknown field");
        }
    }
}

}  // namespace json_field

namespace {

using namespace json_field;

void put_optional(Json& obj, const char* key, const std::optional<double>& v) {
    if (v) {
        obj[key] = *v;
    }
}

template <typename Validate>
void rethrow_as_config(const std::string& path, Validate&& validate) {
    try {
        validate();
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
}

}  // namespace

Json device_to_json(const DeviceModel& dev) {
    Json doc;
    doc["schema"] = schema::kDevice;
    doc["cavity"] = {{"f_bare", dev.cavity.f_bare_hz},
                     {"kappa", dev.cavity.kappa_hz},
                     {"s21_floor", dev.cavity.s21_floor}};
    Json qubits = Json::array();
    for (const auto& q : dev.qubits) {
        Json jq;
        jq["label"] = q.label;
        if (q.kind == QubitKind::squid) {
            jq["kind"] = "squid";
            jq["fq_max"] = q.frequency_hz;
        } else {
            jq["kind"] = "fixed";
            jq["fq"] = q.frequency_hz;
        }
        jq["g"] = q.g_hz;
        put_optional(jq, "t1", q.t1_s);
        put_optional(jq, "t2_star", q.t2_star_s);
        put_optional(jq, "ej_over_h", q.ej_over_h_hz);
        put_optional(jq, "ec_over_h", q.ec_over_h_hz);
        put_optional(jq, "junction_width", q.junction_width_um);
        qubits.push_back(std::move(jq));
    }
    doc["qubits"] = std::move(qubits);
    doc["power_ref_dbm"] = dev.power_ref_dbm;
    return doc;
}

DeviceModel device_from_json(const Json& doc, const std::string& path) {
    expect_schema(doc, schema::kDevice, path);
    reject_unknown(doc, {"schema", "cavity", "qubits", "power_ref_dbm", "notes"}, path);

    DeviceModel dev;
    const std::string cpath = join(path, "cavity");
    const Json& cavity = object(doc, "cavity", path);
    reject_unknown(cavity, {"f_bare", "kappa", "s21_floor"}, cpath);
    dev.cavity.f_bare_hz = number(cavity, "f_bare", cpath);
    dev.cavity.kappa_hz = number(cavity, "kappa", cpath);
    dev.cavity.s21_floor = optional_number(cavity, "s21_floor", cpath).value_or(0.1);
    rethrow_as_config(cpath, [&] { dev.cavity.validate(); });

    const auto qit = doc.find("qubits");
    const std::string qpath = join(path, "qubits");
    if (qit == doc.end()) {
        throw ConfigError(qpath, "required field is missing");
    }
    if (!qit->is_array() || qit->empty() || qit->size() > 2) {
        throw ConfigError(qpath, "expected an array of one or two qubits");
    }
    for (std::size_t i = 0; i < qit->size(); ++i) {
        const std::string p = qpath + "[" + std::to_string(i) + "]";
        const Json& jq = (*qit)[i];
        if (!jq.is_object()) {
            throw ConfigError(p, "expected an object");
        }
        reject_unknown(jq, {"label", "kind", "fq_max", "fq", "g", "t1", "t2_star", "ej_over_h", "ec_over_h",
                            "junction_width"},
                       p);
        QubitModel q;
        q.label = jq.contains("label") ? string(jq, "label", p) : "Q" + std::to_string(i + 1);
        const std::string kind = string(jq, "kind", p);
        if (kind == "squid") {
            q.kind = QubitKind::squid;
            q.frequency_hz = number(jq, "fq_max", p);
        } else if (kind == "fixed") {
            q.kind = QubitKind::fixed;
            q.frequency_hz = number(jq, "fq", p);
        } else {
            throw ConfigError(join(p, "kind"), "expected \"squid\" or \"fixed\"");
        }
        q.g_hz = number(jq, "g", p);
        q.t1_s = optional_number(jq, "t1", p);
        q.t2_star_s = optional_number(jq, "t2_star", p);
        q.ej_over_h_hz = optional_number(jq, "ej_over_h", p);
        q.ec_over_h_hz = optional_number(jq, "ec_over_h", p);
        q.junction_width_um = optional_number(jq, "junction_width", p);
        rethrow_as_config(p, [&] { q.validate(); });
        dev.qubits.push_back(std::move(q));
    }
    dev.power_ref_dbm = number(doc, "power_ref_dbm", path);
    rethrow_as_config(path, [&] { dev.validate(); });
    return dev;
}

Json fit_to_json(const FitResult& fit, const std::string& kind) {
    Json doc;
    doc["schema"] = schema::kFit;
    doc["kind"] = kind;
    doc["params"] = Json::object();
    for (const auto& [k, v] : fit.params) {
        doc["params"][k] = v;
    }
    doc["sigmas"] = Json::object();
    for (const auto& [k, v] : fit.sigmas) {
        doc["sigmas"][k] = v;
    }
    doc["residual_rms"] = fit.residual_rms;
    doc["converged"] = fit.converged;
    doc["iterations"] = fit.iterations;
    doc["warnings"] = fit.warnings;
    return doc;
}

FitResult fit_from_json(const Json& doc) {
    expect_schema(doc, schema::kFit, "");
    FitResult fit;
    for (const char* key : {"params", "sigmas"}) {
        const Json& obj = object(doc, key, "");
        auto& target = std::string(key) == "params" ? fit.params : fit.sigmas;
        for (const auto& [k, v] : obj.items()) {
            target[k] = number(obj, k, key);
        }
    }
    fit.residual_rms = number(doc, "residual_rms", "");
    if (!doc.contains("converged") || !doc["converged"].is_boolean()) {
        throw ConfigError("converged", "expected a boolean");
    }
    fit.converged = doc["converged"].get<bool>();
    fit.iterations = int(number(doc, "iterations", ""));
    if (doc.contains("warnings")) {
        fit.warnings = doc["warnings"].get<std::vector<std::string>>();
    }
    return fit;
}

}  // namespace cqedlab
