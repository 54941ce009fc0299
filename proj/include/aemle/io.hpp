// Copyright 2026 The aemle Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "aemle/circuitsim.hpp"
#include "aemle/hwspec.hpp"
#include "aemle/integrate.hpp"
#include "aemle/model.hpp"
#include "aemle/sampler.hpp"
#include "aemle/survey.hpp"

namespace aemle {

/// Real number with 17 significant digits, '.' decimal point.
std::string format_real(double x);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

std::string read_text_file(const std::string& path);

/// {"kind": "...", "r": optional, "stages": [{"m": .., "shots": ..}]}.
/// A generated kind is kept only when the stages match it exactly.
nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

/// {"stages": [{"m": .., "shots": .., "hits": ..}]}.
nlohmann::json experiment_to_json(const ExperimentData& data);
ExperimentData experiment_from_json(const nlohmann::json& j);

/// {"n": .., "p": [...], "f": [...]} or the named form "sin2(b, n)".
nlohmann::json integrand_to_json(const IntegrandSpec& spec);
IntegrandSpec integrand_from_json(const nlohmann::json& j);
IntegrandSpec parse_named_integrand(const std::string& text);

/// [[re, im], ...].
nlohmann::json statevector_to_json(const StateVector& state);

nlohmann::json hwspec_to_json(const HardwareReport& report);

/// Column-named rows emitted as CSV, aligned text or a JSON array of objects.
/// Cells keep their JSON type; reals print with 17 significant digits.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  /// Throws DomainError when the row width differs from the column count.
  void add_row(std::vector<nlohmann::json> cells);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  void write_csv(std::ostream& os) const;
  void write_aligned(std::ostream& os) const;
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::json>> rows_;
};

Table trials_table(const TrialBatchResult& batch);
Table density_table(const std::vector<DensityResult>& results);
/// First row: "a\kappa" then κ values; each later row: a then ε_min values.
void write_contour_csv(std::ostream& os, const ContourGrid& grid);
void write_hwspec_csv(std::ostream& os, const HardwareReport& report);
void write_hwspec_table(std::ostream& os, const HardwareReport& report);

/// Parses a JSON document, rethrowing failures as ParseError.
nlohmann::json parse_json(const std::string& text);

}  // namespace aemle
