#pragma once

#include <initializer_list>
#include <optional>
#include <string>

#include <json.hpp>

#include "cqedlab/core/device.hpp"
#include "cqedlab/fit/result.hpp"

namespace cqedlab {

using Json = nlohmann::ordered_json;

// Field-checked accessors; violations throw ConfigError carrying the dotted path.
namespace json_field {

const Json& object(const Json& parent, const std::string& key, const std::string& path);
const Json* optional_object(const Json& parent, const std::string& key, const std::string& path);
double number(const Json& parent, const std::string& key, const std::string& path);
std::optional<double> optional_number(const Json& parent, const std::string& key, const std::string& path);
std::string string(const Json& parent, const std::string& key, const std::string& path);
void expect_schema(const Json& doc, const std::string& schema, const std::string& path);
void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path);
std::string join(const std::string& path, const std::string& key);

}  // namespace json_field

Json device_to_json(const DeviceModel& dev);

// `path` prefixes error locations, e.g. "device".
DeviceModel device_from_json(const Json& doc, const std::string& path = "");

Json fit_to_json(const FitResult& fit, const std::string& kind);
FitResult fit_from_json(const Json& doc);

}  // namespace cqedlab
