#ifndef LCFN_SCENARIO_HPP
#define LCFN_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "lcfn/calculus.hpp"
#include "lcfn/variational.hpp"

namespace lcfn {

/// `{"kind":"triangular","left":..,"peak":..,"right":..}` or
/// `{"kind":"piecewise-linear","knots":[[x,mu],...]}`.
GeneratorPtr generator_from_json(std::string_view text);
GeneratorPtr load_generator(const std::filesystem::path& path);

/// A named test case: f on [a, b], plus optional g, eps0, t0.
struct Scenario {
  std::string name;
  FuzzyFn f;
  std::optional<FuzzyFn> g;
  std::optional<double> eps0;
  std::optional<double> t0;
};

/// `{"gen":{...} | "path","domain":[a,b],"r":"expr","q":"expr",
///   "g":{"r":..,"q":..},"eps0":..,"t0":..,"name":..}`.
/// `generator` overrides "gen"; a string "gen" is resolved next to `origin`.
Scenario scenario_from_json(std::string_view text, GeneratorPtr generator = nullptr,
                            const std::filesystem::path& origin = {});
Scenario load_scenario(const std::filesystem::path& path, GeneratorPtr generator = nullptr);

/// `{"epsilon":0.2,"l":1,"k":[1,2,4,8,16],"grid":1024}`; missing keys keep defaults.
HarnessConfig harness_from_json(std::string_view text);
HarnessConfig load_harness(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);

}  // namespace lcfn

#endif  // LCFN_SCENARIO_HPP
