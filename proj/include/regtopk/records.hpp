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

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "regtopk/engine.hpp"

namespace regtopk {

enum class RecordFormat { kCsv, kJson };

RecordFormat parse_record_format(const std::string& name);

/// CSV: header `iter,loss,gap,comm_bits,grad_norm,accuracy`, one row per
/// record, reals at 17 significant digits, absent values as empty fields.
/// JSON: an array of objects with the same keys, absent values as null.
void emit_records(std::ostream& out, std::span<const IterationRecord> records, RecordFormat format);
void emit_records(const std::string& path, std::span<const IterationRecord> records,
                  RecordFormat format);
std::string format_records(std::span<const IterationRecord> records, RecordFormat format);

std::vector<IterationRecord> parse_records_csv(std::istream& in);

}  // namespace regtopk
