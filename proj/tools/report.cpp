#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace lcfn::cli {

namespace {

std::string verdict(bool passed) { return passed ? "pass" : "fail"; }

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_table(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

// Nested objects inside a record are flattened to `outer.inner` columns.
void flatten(const Json& obj, const std::string& prefix, Json& out) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      flatten(it.value(), key, out);
    } else {
      out[key] = it.value();
    }
  }
}

}  // namespace

Json envelope(const std::string& verb) {
  Json j;
  j["schema"] = 1;
  j["verb"] = verb;
  return j;
}

Json literal_json(const LcfnD& b) {
  return Json{{"r", b.r()}, {"q", b.q()}, {"center", center(b)}, {"class", std::string(to_string(classify(b)))}};
}

Json coords_json(const Eigen::Vector2d& v) { return Json{{"r", v[0]}, {"q", v[1]}}; }

Json to_json(const FtcReport& r) {
  Json spots = Json::array();
  for (const auto& s : r.spot_checks) spots.push_back({{"t", s.t}, {"residual", s.residual}});
  return Json{{"integral_of_derivative", literal_json(r.integral_of_derivative)},
              {"endpoint_difference", literal_json(r.endpoint_difference)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"spot_checks", spots},
              {"spot_tolerance", r.spot_tolerance},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const IbpReport& r) {
  return Json{{"lhs", literal_json(r.lhs)},
              {"rhs", literal_json(r.rhs)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const ProductRuleReport& r) {
  return Json{{"t", r.t},
              {"lhs", literal_json(r.lhs)},
              {"rhs", literal_json(r.rhs)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const SquareIntegralReport& r) {
  return Json{{"integral", literal_json(r.integral)},
              {"center", r.center},
              {"direct_center", r.direct_center},
              {"violation_fraction", r.violation_fraction},
              {"grid_points", r.grid_points},
              {"threshold", r.threshold},
              {"nonnegative", r.nonnegative},
              {"routes_agree", r.routes_agree},
              {"verdict", verdict(r.nonnegative && r.routes_agree)}};
}

Json to_json(const InterchangeReport& r) {
  return Json{{"eps0", r.eps0},
              {"derivative_of_integral", literal_json(r.derivative_of_integral)},
              {"integral_of_derivative", literal_json(r.integral_of_derivative)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const CriticalPoint& cp, const LocalOrderReport& local) {
  Json j{{"t_star", cp.t_star},
         {"center_d1", cp.center_d1},
         {"center_d2", cp.center_d2},
         {"verdict", std::string(to_string(cp.verdict))},
         {"kink_hit", cp.kink_hit}};
  Json l{{"checked", local.checked},
         {"passed", local.passed},
         {"samples", local.samples},
         {"violations", local.violations},
         {"out_of_neighborhood", local.out_of_neighborhood},
         {"note", local.note}};
  l["first_violation"] = local.first_violation ? Json(*local.first_violation) : Json(nullptr);
  j["local_order"] = l;
  return j;
}

Json to_json(const LagrangeWitness& w) {
  Json terms = Json::array();
  for (const auto& t : w.terms) {
    terms.push_back({{"k", t.k},
                     {"epsilon", t.epsilon},
                     {"normalization", t.eta.kernel.normalization()},
                     {"b_k", t.b_k},
                     {"b_k_collapsed", t.b_k_collapsed}});
  }
  const bool positive = !w.terms.empty() && w.terms.back().b_k > 0.0;
  return Json{{"t0", w.t0},
              {"limit", w.limit},
              {"limit_formula", "(r(t0) + a_m q(t0))^2"},
              {"records", terms},
              {"verdict", verdict(positive)}};
}

Json to_json(const LagrangeScanReport& r) {
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    recs.push_back({{"t0", rec.t0},
                    {"center", rec.center},
                    {"epsilon", rec.epsilon},
                    {"witness_applicable", rec.witness_applicable},
                    {"b_last", rec.b_last},
                    {"witness_ok", rec.witness_ok},
                    {"recovered", coords_json(rec.recovered)},
                    {"direct", coords_json(rec.direct)},
                    {"recovery_error", rec.recovery_error},
                    {"recovery_ok", rec.recovery_ok}});
  }
  return Json{{"records", recs},
              {"admissible_witnesses", r.admissible_witnesses},
              {"witness_failures", r.witness_failures},
              {"recovery_failures", r.recovery_failures},
              {"recovery_tolerance", r.recovery_tolerance},
              {"center_threshold", r.center_threshold},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const DbrForwardReport& r) {
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    recs.push_back({{"label", rec.label}, {"integral", literal_json(rec.integral)}, {"residual", rec.residual}});
  }
  return Json{{"records", recs},
              {"tolerance", r.tolerance},
              {"detection_threshold", r.detection_threshold},
              {"violation_detected", r.violation_detected},
              {"universe", r.universe},
              {"conclusion", r.passed ? "consistent with g' = f on the listed test functions"
                                      : "g' = f is refuted by the listed test functions"},
              {"verdict", verdict(r.passed)}};
}

Json to_json(const ReconstructionResult& r) {
  Json recs = Json::array();
  for (const auto& rec : r.grid) {
    recs.push_back({{"t", rec.t},
                    {"accumulated", coords_json(rec.accumulated.coords())},
                    {"g_tilde", coords_json(rec.g_tilde.coords())},
                    {"center_residual", rec.center_residual},
                    {"coordinate_residual", coords_json(rec.coordinate_residual)}});
  }
  return Json{{"u", literal_json(r.u)},
              {"records", recs},
              {"max_center_residual", r.max_center_residual},
              {"max_coordinate_residual", r.max_coordinate_residual},
              {"tolerance", r.tolerance},
              {"constant_modulo_zero_class", r.constant_modulo_zero_class},
              {"constant", r.constant},
              {"conclusion", r.constant_modulo_zero_class
                                 ? (r.constant ? "f - u vanishes on the grid" : "f - u lies in the zero class on the grid")
                                 : "f is not constant modulo the zero class"},
              {"verdict", r.constant_modulo_zero_class ? "consistent" : "inconsistent"}};
}

std::string render_text(const Json& doc) {
  std::ostringstream os;
  if (!doc.is_object()) {
    os << cell(doc) << '\n';
    return os.str();
  }
  std::size_t width = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.value().is_object()) {
      Json flat = Json::object();
      flatten(it.value(), it.key(), flat);
      for (auto f = flat.begin(); f != flat.end(); ++f) width = std::max(width, f.key().size());
    } else if (!is_table(it.value())) {
      width = std::max(width, it.key().size());
    }
  }
  const auto pair = [&](const std::string& key, const Json& v) {
    os << key << std::string(width - key.size() + 2, ' ') << cell(v) << '\n';
  };

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Json& v = it.value();
    if (is_table(v)) {
      os << it.key() << ":\n";
      std::vector<Json> rows;
      for (const auto& e : v) {
        Json flat = Json::object();
        flatten(e, "", flat);
        rows.push_back(flat);
      }
      std::vector<std::string> keys;
      for (auto k = rows.front().begin(); k != rows.front().end(); ++k) keys.push_back(k.key());
      std::vector<std::size_t> widths;
      for (const auto& k : keys) {
        std::size_t w = k.size();
        for (const auto& row : rows) w = std::max(w, cell(row.value(k, Json())).size());
        widths.push_back(w);
      }
      const auto line = [&](const auto& text_of) {
        os << ' ';
        for (std::size_t c = 0; c < keys.size(); ++c) {
          const std::string s = text_of(c);
          os << ' ' << s << std::string(widths[c] - s.size(), ' ');
        }
        os << '\n';
      };
      line([&](std::size_t c) { return keys[c]; });
      for (const auto& row : rows) line([&](std::size_t c) { return cell(row.value(keys[c], Json())); });
    } else if (v.is_object()) {
      Json flat = Json::object();
      flatten(v, it.key(), flat);
      for (auto f = flat.begin(); f != flat.end(); ++f) pair(f.key(), f.value());
    } else {
      pair(it.key(), v);
    }
  }
  return os.str();
}

std::string render_csv(const Json& doc) {
  if (!doc.is_object() || !doc.contains("records") || !is_table(doc["records"])) {
    throw Error(ErrorCode::ConfigError, "CSV output is only available for grid reports");
  }
  std::vector<Json> rows;
  for (const auto& e : doc["records"]) {
    Json flat = Json::object();
    flatten(e, "", flat);
    rows.push_back(flat);
  }
  std::ostringstream os;
  bool first = true;
  for (auto k = rows.front().begin(); k != rows.front().end(); ++k) {
    os << (first ? "" : ",") << k.key();
    first = false;
  }
  os << '\n';
  for (const auto& row : rows) {
    first = true;
    for (auto k = row.begin(); k != row.end(); ++k) {
      os << (first ? "" : ",") << cell(k.value());
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

std::string render(const Json& doc, Format format) {
  switch (format) {
    case Format::Json: return doc.dump(2) + "\n";
    case Format::Text: return render_text(doc);
    case Format::Csv: return render_csv(doc);
  }
  return {};
}

}  // namespace lcfn::cli
