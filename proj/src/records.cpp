// Copyright 2026 The srecrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "srecrit/records.hpp"

#include <charconv>
#include <cmath>

namespace srecrit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const SreEstimate& e) {
  nlohmann::json j;
  j["quantity"] = e.quantity;
  j["method"] = e.method;
  j["L"] = e.num_sites;
  j["lambda"] = std::isnan(e.coupling) ? nlohmann::json(nullptr) : nlohmann::json(e.coupling);
  j["alpha"] = e.alpha;
  j["region"] = e.region ? nlohmann::json(e.region->str()) : nlohmann::json(nullptr);
  j["value"] = e.value;
  j["std_error"] = e.std_error;
  j["seed"] = e.seed;
  j["samples"] = e.samples;
  j["diagnostics"] = e.diagnostics;
  j["flags"] = e.flags;
  return j;
}

SreEstimate estimate_from_json(const nlohmann::json& j) {
  SreEstimate e;
  e.quantity = j.at("quantity").get<std::string>();
  e.method = j.at("method").get<std::string>();
  e.num_sites = j.at("L").get<std::size_t>();
  if (!j.at("lambda").is_null()) e.coupling = j.at("lambda").get<double>();
  e.alpha = j.at("alpha").get<double>();
  if (!j.at("region").is_null()) e.region = RegionSpec::parse(j.at("region").get<std::string>());
  e.value = j.at("value").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.samples = j.at("samples").get<std::uint64_t>();
  e.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
  e.flags = j.at("flags").get<std::vector<std::string>>();
  return e;
}

nlohmann::json to_json(const FitResult& f) {
  nlohmann::json j;
  j["model"] = to_string(f.model);
  j["weighted"] = f.weighted;
  nlohmann::json params = nlohmann::json::object();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    params[f.names[i]] = {{"value", f.params[i]}, {"std_error", f.std_errors[i]}};
  }
  j["params"] = params;
  j["rss"] = f.rss;
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < f.window.size(); ++i) {
    pts.push_back({{"x", f.window[i].x}, {"y", f.window[i].y}, {"residual", f.residuals[i]}});
  }
  j["points"] = pts;
  return j;
}

void write_estimate_csv_row(std::ostream& out, const std::string& task, const SreEstimate& e,
                            const std::string& config_hash) {
  out << task << ',' << e.method << ',' << e.quantity << ',' << e.num_sites << ',' << format_double(e.coupling) << ','
      << format_double(e.alpha) << ',' << (e.region ? e.region->str() : "") << ',' << format_double(e.value) << ','
      << format_double(e.std_error) << ',' << e.seed << ',' << e.samples << ',' << config_hash << '\n';
}

void write_fit_csv_rows(std::ostream& out, const std::string& task, const std::string& quantity, double alpha,
                        double num_sites, const FitResult& f, const std::string& config_hash) {
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    out << task << ',' << to_string(f.model) << ',' << quantity << ',' << format_double(alpha) << ','
        << (num_sites > 0 ? format_double(num_sites) : "") << ',' << f.names[i] << ',' << format_double(f.params[i])
        << ',' << format_double(f.std_errors[i]) << ',' << format_double(f.rss) << ',' << f.window.size() << ','
        << config_hash << '\n';
  }
}

}  // namespace srecrit
