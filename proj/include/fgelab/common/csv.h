// Copyright 2026 The fgelab Authors.
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

#ifndef FGELAB_COMMON_CSV_H_
#define FGELAB_COMMON_CSV_H_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "fgelab/common/errors.h"

namespace fgelab {

// Minimal CSV writer: fixed header, one call per row. Doubles are written
// with 17 significant digits so files round-trip exactly.
class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  CsvWriter() = default;
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
      : header_(std::move(header)), out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    WriteCells(std::vector<Cell>(header_.begin(), header_.end()));
  }

  bool is_open() const { return out_.is_open(); }

  void Row(const std::vector<Cell>& cells) {
    Require(cells.size() == header_.size(), "CsvWriter: row width");
    WriteCells(cells);
  }

  static std::string Format(const Cell& cell) {
    if (const double* d = std::get_if<double>(&cell)) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", *d);
      return buf;
    }
    if (const long long* i = std::get_if<long long>(&cell)) {
      return std::to_string(*i);
    }
    return std::get<std::string>(cell);
  }

 private:
  void WriteCells(const std::vector<Cell>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << Format(cells[i]);
    }
    out_ << '\n';
    out_.flush();
  }

  std::vector<std::string> header_;
  std::ofstream out_;
};

}  // namespace fgelab

#endif  // FGELAB_COMMON_CSV_H_
