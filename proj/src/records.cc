// Copyright 2026 The RegTopK Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "regtopk/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "regtopk/errors.hpp"

namespace regtopk {
namespace {

constexpr const char* kHeader = "iter,loss,gap,comm_bits,grad_norm,accuracy";

std::string real17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string optional_real(const std::optional<double>& v) { return v ? real17(*v) : std::string(); }

std::optional<double> parse_optional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return std::stod(field);
}

}  // namespace

RecordFormat parse_record_format(const std::string& name) {
  if (name == "csv") return RecordFormat::kCsv;
  if (name == "json") return RecordFormat::kJson;
  throw ParameterError("unknown format '" + name + "'");
}

void emit_records(std::ostream& out, std::span<const IterationRecord> records,
                  RecordFormat format) {
  if (records.empty()) throw ParameterError("emit_records: no records");
  if (format == RecordFormat::kCsv) {
    out << kHeader << '\n';
    for (const auto& r : records) {
      out << r.t << ',' << real17(r.global_loss) << ',' << optional_real(r.optimality_gap) << ','
          << r.comm_bits_cum << ',' << real17(r.grad_norm) << ',' << optional_real(r.accuracy)
          << '\n';
    }
    return;
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json row;
    row["iter"] = r.t;
    row["loss"] = r.global_loss;
    row["gap"] = r.optimality_gap ? nlohmann::json(*r.optimality_gap) : nlohmann::json(nullptr);
    row["comm_bits"] = r.comm_bits_cum;
    row["grad_norm"] = r.grad_norm;
    row["accuracy"] = r.accuracy ? nlohmann::json(*r.accuracy) : nlohmann::json(nullptr);
    doc.push_back(std::move(row));
  }
  out << doc.dump() << '\n';
}

void emit_records(const std::string& path, std::span<const IterationRecord> records,
                  RecordFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  emit_records(out, records, format);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string format_records(std::span<const IterationRecord> records, RecordFormat format) {
  std::ostringstream out;
  emit_records(out, records, format);
  return out.str();
}

std::vector<IterationRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw IoError("records csv: bad header");
  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 6) throw IoError("records csv: expected 6 fields in '" + line + "'");
    IterationRecord r;
    r.t = std::stoll(fields[0]);
    r.global_loss = std::stod(fields[1]);
    r.optimality_gap = parse_optional(fields[2]);
    r.comm_bits_cum = std::stoull(fields[3]);
    r.grad_norm = std::stod(fields[4]);
    r.accuracy = parse_optional(fields[5]);
    records.push_back(r);
  }
  return records;
}

}  // namespace regtopk
