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

#include "aemle/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include "aemle/errors.hpp"

namespace aemle {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

const json& array_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw ParseError(std::string("field '") + key + "' must be an array");
  }
  return j.at(key);
}

}  // namespace

json schedule_to_json(const Schedule& schedule) {
  json j;
  j["kind"] = to_string(schedule.kind());
  if (schedule.base()) j["r"] = *schedule.base();
  json stages = json::array();
  for (const Stage& s : schedule.stages()) {
    stages.push_back({{"m", s.depth}, {"shots", s.shots}});
  }
  j["stages"] = std::move(stages);
  return j;
}

Schedule schedule_from_json(const json& j) {
  std::vector<Stage> stages;
  for (const json& s : array_field(j, "stages")) {
    stages.push_back(
        {field<std::int64_t>(s, "m"), field<std::int64_t>(s, "shots")});
  }
  Schedule explicit_schedule = Schedule::from_stages(stages);
  if (!j.contains("kind")) return explicit_schedule;
  const ScheduleKind kind = parse_schedule_kind(field<std::string>(j, "kind"));
  if (kind == ScheduleKind::Explicit || stages.empty()) {
    return explicit_schedule;
  }
  std::optional<double> r;
  if (j.contains("r")) r = field<double>(j, "r");
  const Schedule generated =
      make_schedule(kind, static_cast<int>(stages.size()) - 1,
                    stages.front().shots, r);
  if (!std::equal(generated.stages().begin(), generated.stages().end(),
                  stages.begin(), stages.end())) {
    throw ParseError("stages do not match schedule kind '" +
                     to_string(kind) + "'");
  }
  return generated;
}

json experiment_to_json(const ExperimentData& data) {
  json stages = json::array();
  for (const ExperimentStage& s : data.stages()) {
    stages.push_back({{"m", s.depth}, {"shots", s.shots}, {"hits", s.hits}});
  }
  return {{"stages", std::move(stages)}};
}

ExperimentData experiment_from_json(const json& j) {
  std::vector<ExperimentStage> stages;
  for (const json& s : array_field(j, "stages")) {
    stages.push_back({field<std::int64_t>(s, "m"),
                      field<std::int64_t>(s, "shots"),
                      field<std::int64_t>(s, "hits")});
  }
  return ExperimentData::from_stages(std::move(stages));
}

json integrand_to_json(const IntegrandSpec& spec) {
  return {{"n", spec.n()},
          {"p", std::vector<double>(spec.probabilities().begin(),
                                    spec.probabilities().end())},
          {"f", std::vector<double>(spec.values().begin(),
                                    spec.values().end())}};
}

IntegrandSpec parse_named_integrand(const std::string& text) {
  static const std::regex pattern(
      R"(\s*sin2\s*\(\s*([^,\s]+)\s*,\s*([0-9]+)\s*\)\s*)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw ParseError("unrecognised integrand '" + text +
                     "' (expected sin2(b, n))");
  }
  const std::string b_text = match[1].str();
  double b = 0.0;
  // b may be written as a plain number or as "<x>pi" / "<x>pi/<y>".
  static const std::regex pi_form(R"(([0-9.eE+-]*)\*?pi(?:/([0-9.eE+-]+))?)");
  std::smatch pm;
  try {
    if (std::regex_match(b_text, pm, pi_form)) {
      const double scale = pm[1].str().empty() ? 1.0 : std::stod(pm[1].str());
      const double div = pm[2].matched ? std::stod(pm[2].str()) : 1.0;
      b = scale * M_PI / div;
    } else {
      std::size_t used = 0;
      b = std::stod(b_text, &used);
      if (used != b_text.size()) throw std::invalid_argument(b_text);
    }
  } catch (const std::logic_error&) {
    throw ParseError("cannot read b from '" + b_text + "'");
  }
  const int n = std::stoi(match[2].str());
  return sin2_target(n, b).first;
}

IntegrandSpec integrand_from_json(const json& j) {
  if (j.is_string()) return parse_named_integrand(j.get<std::string>());
  return IntegrandSpec::make(field<int>(j, "n"),
                             field<std::vector<double>>(j, "p"),
                             field<std::vector<double>>(j, "f"));
}

json statevector_to_json(const StateVector& state) {
  json out = json::array();
  for (const auto& amp : state.amplitudes()) {
    out.push_back({amp.real(), amp.imag()});
  }
  return out;
}

json hwspec_to_json(const HardwareReport& r) {
  return {{"N_nq", r.n_nq},
          {"N_tnq", r.n_tnq},
          {"N_y", r.n_y},
          {"N_s", r.n_s},
          {"N_d", r.n_d},
          {"kappa_bar", r.kappa_bar},
          {"kappa_source", r.kappa_source},
          {"m_bar", r.m_bar},
          {"eps_s", r.eps_s},
          {"eps_d", r.eps_d},
          {"t_AA", r.t_aa},
          {"t_mbar", r.t_mbar},
          {"t_total", r.t_total},
          {"interval_reading", to_string(r.interval_reading)},
          {"t_total_per_shot", r.t_total_per_shot},
          {"t_total_per_mbar", r.t_total_per_mbar}};
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<json> cells) {
  if (cells.size() != columns_.size()) {
    throw DomainError("row has " + std::to_string(cells.size()) +
                      " cells, table has " + std::to_string(columns_.size()) +
                      " columns");
  }
  rows_.push_back(std::move(cells));
}

namespace {

std::string cell_text(const json& cell) {
  if (cell.is_number_float()) return format_real(cell.get<double>());
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_null()) return "nan";
  return cell.dump();
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    os << (c ? "," : "") << csv_field(columns_[c]);
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << csv_field(cell_text(row[c]));
    }
    os << '\n';
  }
}

void Table::write_aligned(std::ostream& os) const {
  std::vector<std::size_t> width(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = columns_[c].size();
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], cell_text(row[c]).size());
    }
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c ? "  " : "") << std::left
         << std::setw(c + 1 == cells.size() ? 0 : static_cast<int>(width[c]))
         << cells[c];
    }
    os << '\n';
  };
  line(columns_);
  for (const auto& row : rows_) {
    std::vector<std::string> cells;
    for (const json& cell : row) cells.push_back(cell_text(cell));
    line(cells);
  }
}

json Table::to_json() const {
  json out = json::array();
  for (const auto& row : rows_) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const json& cell = row[c];
      obj[columns_[c]] =
          cell.is_number_float() && !std::isfinite(cell.get<double>())
              ? json(nullptr)
              : cell;
    }
    out.push_back(std::move(obj));
  }
  return out;
}

Table trials_table(const TrialBatchResult& batch) {
  Table t({"M", "N_q", "rmse", "stderr", "mean_kappa_hat", "failed_trials",
           "cr_bound", "classical_bound"});
  for (const TrialRecord& r : batch.records) {
    t.add_row({r.M, r.n_queries, r.rmse, r.stderr_rmse, r.mean_kappa_hat,
               r.failed_trials, r.cr_bound, r.classical_bound});
  }
  return t;
}

Table density_table(const std::vector<DensityResult>& results) {
  Table t({"kappa", "density", "stderr", "samples", "threshold", "schedule"});
  for (const DensityResult& r : results) {
    t.add_row({r.kappa, r.density_percent, r.stderr_percent, r.samples,
               r.threshold, r.schedule_descriptor});
  }
  return t;
}

void write_contour_csv(std::ostream& os, const ContourGrid& grid) {
  os << "a\\kappa";
  for (double kappa : grid.kappa_values) os << ',' << format_real(kappa);
  os << '\n';
  for (std::size_t i = 0; i < grid.a_values.size(); ++i) {
    os << format_real(grid.a_values[i]);
    for (double eps : grid.epsilon_min[i]) os << ',' << format_real(eps);
    os << '\n';
  }
}

namespace {

struct ReportRow {
  std::string name;
  std::string formula;
  std::string value;
};

std::vector<ReportRow> report_rows(const HardwareReport& r) {
  return {
      {"N_nq", "ceil(log2(1/eps))", std::to_string(r.n_nq)},
      {"N_tnq", "2 N_nq N_int - 1", std::to_string(r.n_tnq)},
      {"N_y", "N_nq^2 N_int (N_int-1) / 2", std::to_string(r.n_y)},
      {"N_s", "2(N_nq N_int + 1 + 6 N_y) + 12 N_nq N_int - 15",
       std::to_string(r.n_s)},
      {"N_d", "16 N_y + 6 N_nq N_int - 5", std::to_string(r.n_d)},
      {"kappa_bar", r.kappa_source, format_real(r.kappa_bar)},
      {"m_bar", "(2m+1)(1-exp(-kappa)) <= 1", std::to_string(r.m_bar)},
      {"eps_s", "eps_d / ratio", format_real(r.eps_s)},
      {"eps_d", "exp(-kappa) = (1-eps_s)^N_s (1-eps_d)^N_d",
       format_real(r.eps_d)},
      {"t_AA", "t_s N_s + t_d N_d", format_real(r.t_aa)},
      {"t_mbar", "t_AA m_bar + t_m", format_real(r.t_mbar)},
      {"t_total", to_string(r.interval_reading), format_real(r.t_total)},
      {"t_total_per_shot", "t_i = factor (t_AA m_k + t_m)",
       format_real(r.t_total_per_shot)},
      {"t_total_per_mbar", "t_i = factor t_mbar",
       format_real(r.t_total_per_mbar)},
  };
}

}  // namespace

void write_hwspec_csv(std::ostream& os, const HardwareReport& report) {
  os << "quantity,formula,value\n";
  for (const ReportRow& row : report_rows(report)) {
    os << row.name << ',' << csv_field(row.formula) << ',' << row.value
       << '\n';
  }
}

void write_hwspec_table(std::ostream& os, const HardwareReport& report) {
  const std::vector<ReportRow> rows = report_rows(report);
  std::size_t w_name = 8;
  std::size_t w_formula = 7;
  for (const ReportRow& row : rows) {
    w_name = std::max(w_name, row.name.size());
    w_formula = std::max(w_formula, row.formula.size());
  }
  os << std::left << std::setw(static_cast<int>(w_name)) << "quantity"
     << "  " << std::setw(static_cast<int>(w_formula)) << "formula"
     << "  value\n";
  for (const ReportRow& row : rows) {
    os << std::left << std::setw(static_cast<int>(w_name)) << row.name << "  "
       << std::setw(static_cast<int>(w_formula)) << row.formula << "  "
       << row.value << '\n';
  }
}

}  // namespace aemle
