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
#ifndef SRECRIT_RECORDS_HPP_
#define SRECRIT_RECORDS_HPP_

#include "json.hpp"
#include <ostream>
#include <string>
#include <vector>

#include "srecrit/estimate.hpp"
#include "srecrit/fit.hpp"

namespace srecrit {

nlohmann::json to_json(const SreEstimate& e);
SreEstimate estimate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FitResult& f);

/// Frozen CSV column schema (version 1); see docs/csv_schema.md.
inline constexpr const char* kEstimateCsvHeader =
    "task,method,quantity,L,lambda,alpha,region,value,std_error,seed,samples,config_hash";
inline constexpr const char* kFitCsvHeader =
    "task,model,quantity,alpha,L,param,value,std_error,rss,points,config_hash";

void write_estimate_csv_row(std::ostream& out, const std::string& task, const SreEstimate& e,
                            const std::string& config_hash);
void write_fit_csv_rows(std::ostream& out, const std::string& task, const std::string& quantity, double alpha,
                        double num_sites, const FitResult& f, const std::string& config_hash);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace srecrit

#endif  // SRECRIT_RECORDS_HPP_
