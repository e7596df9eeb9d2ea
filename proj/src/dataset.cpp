// Copyright 2026 The PACF Authors.
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

#include "pacf/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pacf/error.hpp"

namespace pacf {

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void validate_example(const Example& example) {
  if (example.label != 1 && example.label != -1) {
    throw InvalidArgument("label must be -1 or +1, got " +
                          std::to_string(example.label));
  }
  for (double v : example.features) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite feature value");
  }
  const double norm = euclidean_norm(example.features);
  if (norm > 1.0 + kUnitBallTolerance) {
    throw InvalidArgument("example outside the unit ball (norm " +
                          std::to_string(norm) + ")");
  }
}

LabeledDataset::LabeledDataset(std::vector<Example> examples)
    : examples_(std::move(examples)) {
  if (examples_.empty()) throw InvalidArgument("dataset is empty");
  dimension_ = examples_.front().dimension();
  if (dimension_ == 0) throw InvalidArgument("dataset dimension must be positive");
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    auto& e = examples_[i];
    if (e.dimension() != dimension_) {
      throw InvalidArgument("example " + std::to_string(i) +
                            " has dimension " + std::to_string(e.dimension()) +
                            ", expected " + std::to_string(dimension_));
    }
    validate_example(e);
    if (!e.source_row) e.source_row = i;
  }
}

std::vector<double> LabeledDataset::feature_matrix() const {
  std::vector<double> out;
  out.reserve(size() * dimension_);
  for (const auto& e : examples_) {
    out.insert(out.end(), e.features.begin(), e.features.end());
  }
  return out;
}

std::vector<double> LabeledDataset::targets() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& e : examples_) out.push_back(e.target());
  return out;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Example> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw InvalidArgument("subset index out of range");
    out.push_back(examples_[i]);
  }
  return LabeledDataset(std::move(out));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
      field.pop_back();
    }
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("line " + std::to_string(line_no) +
                          ": cannot parse number '" + text + "'");
  }
  return value;
}

}  // namespace

LabeledDataset parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("dataset CSV is empty");
  const auto header = split_fields(line);
  if (header.size() < 2 || header.back() != "y") {
    throw InvalidArgument("dataset CSV header must be x1,...,xn,y");
  }
  for (std::size_t i = 0; i + 1 < header.size(); ++i) {
    if (header[i] != "x" + std::to_string(i + 1)) {
      throw InvalidArgument("dataset CSV header must be x1,...,xn,y");
    }
  }
  const std::size_t dim = header.size() - 1;
  std::vector<Example> examples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() != dim + 1) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(dim + 1) + " fields");
    }
    Example e;
    e.features.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      e.features.push_back(parse_double(fields[i], line_no));
    }
    const double y = parse_double(fields[dim], line_no);
    if (y != 1.0 && y != -1.0) {
      throw InvalidArgument("line " + std::to_string(line_no) +
                            ": label must be -1 or 1");
    }
    e.label = y > 0 ? 1 : -1;
    examples.push_back(std::move(e));
  }
  return LabeledDataset(std::move(examples));
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open dataset file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_csv(buf.str());
}

std::string format_dataset_csv(const LabeledDataset& dataset) {
  std::string out;
  for (std::size_t i = 0; i < dataset.dimension(); ++i) {
    out += "x" + std::to_string(i + 1) + ",";
  }
  out += "y\n";
  char buf[40];
  for (const auto& e : dataset) {
    for (double v : e.features) {
      std::snprintf(buf, sizeof(buf), "%.17g,", v);
      out += buf;
    }
    out += e.label > 0 ? "1\n" : "-1\n";
  }
  return out;
}

void write_dataset_csv(const LabeledDataset& dataset,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write dataset file " + path.string());
  out << format_dataset_csv(dataset);
}

}  // namespace pacf
