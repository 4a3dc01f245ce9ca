#include "lcfn/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lcfn {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string(what) + ": " + e.what());
  }
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) config_error(std::string("missing numeric key '") + key + "'");
  return j[key].get<double>();
}

std::string expression(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) config_error(std::string("missing expression key '") + key + "'");
  return j[key].get<std::string>();
}

GeneratorPtr generator_from(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) config_error("generator needs a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "triangular") {
    return share(Generator::triangular(number(j, "left"), number(j, "peak"), number(j, "right")));
  }
  if (kind == "piecewise-linear") {
    if (!j.contains("knots") || !j["knots"].is_array()) config_error("piecewise-linear generator needs \"knots\"");
    std::vector<Knot> knots;
    for (const auto& k : j["knots"]) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
        config_error("each knot is [x, mu]");
      }
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return share(Generator::piecewise_linear(std::move(knots)));
  }
  config_error("unknown generator kind '" + kind + "'");
}

const ParseOptions kWithEps{true};

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

GeneratorPtr generator_from_json(std::string_view text) { return generator_from(parse_json(text, "generator")); }

GeneratorPtr load_generator(const std::filesystem::path& path) { return generator_from_json(read_text(path)); }

Scenario scenario_from_json(std::string_view text, GeneratorPtr generator, const std::filesystem::path& origin) {
  const json j = parse_json(text, "scenario");
  if (!j.is_object()) config_error("scenario must be a JSON object");

  if (!generator) {
    if (!j.contains("gen")) config_error("scenario has no \"gen\" and no generator was given");
    if (j["gen"].is_string()) {
      generator = load_generator(origin.parent_path() / j["gen"].get<std::string>());
    } else {
      generator = generator_from(j["gen"]);
    }
  }

  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2 || !j["domain"][0].is_number() ||
      !j["domain"][1].is_number()) {
    config_error("scenario needs \"domain\": [a, b]");
  }
  const Interval<double> domain{j["domain"][0].get<double>(), j["domain"][1].get<double>()};

  const auto fuzzy = [&](const json& obj) {
    return FuzzyFn(RealExpr::parse(expression(obj, "r"), kWithEps), RealExpr::parse(expression(obj, "q"), kWithEps),
                   generator, domain);
  };

  Scenario s{j.value("name", origin.stem().string()), fuzzy(j), std::nullopt, std::nullopt, std::nullopt};
  if (j.contains("g")) s.g = fuzzy(j["g"]);
  if (j.contains("eps0")) s.eps0 = number(j, "eps0");
  if (j.contains("t0")) s.t0 = number(j, "t0");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, GeneratorPtr generator) {
  return scenario_from_json(read_text(path), std::move(generator), path);
}

HarnessConfig harness_from_json(std::string_view text) {
  const json j = parse_json(text, "harness config");
  if (!j.is_object()) config_error("harness config must be a JSON object");
  HarnessConfig c;
  if (j.contains("epsilon")) c.epsilon = number(j, "epsilon");
  if (j.contains("l")) c.l = static_cast<int>(number(j, "l"));
  if (j.contains("grid")) c.grid = static_cast<int>(number(j, "grid"));
  if (j.contains("k")) {
    if (!j["k"].is_array() || j["k"].empty()) config_error("\"k\" must be a nonempty array");
    c.k.clear();
    for (const auto& k : j["k"]) {
      if (!k.is_number_integer() || k.get<int>() < 1) config_error("\"k\" entries must be positive integers");
      c.k.push_back(k.get<int>());
    }
  }
  if (!(c.epsilon > 0.0) || c.l < 0 || c.grid < 1) config_error("harness needs epsilon > 0, l >= 0, grid >= 1");
  return c;
}

HarnessConfig load_harness(const std::filesystem::path& path) { return harness_from_json(read_text(path)); }

}  // namespace lcfn
