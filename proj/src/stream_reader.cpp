// Copyright 2026 The streamex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamex/stream_reader.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace streamex {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
  throw DataError(path + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& token, const std::string& path, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(path, line, "cannot parse number '" + token + "'");
  if (!std::isfinite(value)) fail(path, line, "non-finite value '" + token + "'");
  return value;
}

std::optional<ClassLabel> parse_class_id(const std::string& token) {
  ClassLabel value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) return std::nullopt;
  return value;
}

bool is_skippable(const std::string& line, char comment) {
  return line.empty() || line.front() == comment;
}

}  // namespace

// Delimited text

DelimitedStreamReader::DelimitedStreamReader(const std::string& path, DelimitedOptions options)
    : path_(path), options_(std::move(options)) {
  for (std::size_t i = 0; i < options_.class_names.size(); ++i) {
    class_ids_.emplace(options_.class_names[i], static_cast<ClassLabel>(i));
  }
  rewind();
  if (options_.class_names.empty()) {
    // First pass: class count from the largest integer label.
    ClassLabel max_label = 0;
    while (const auto row = read_row()) max_label = std::max(max_label, row->label);
    classes_ = static_cast<std::size_t>(max_label) + 1;
    rewind();
  } else {
    classes_ = options_.class_names.size();
    rewind();
  }
}

void DelimitedStreamReader::rewind() {
  in_ = std::ifstream(path_);
  if (!in_) throw DataError("cannot open stream file '" + path_ + "'");
  line_ = 0;
  emitted_ = 0;
  if (options_.header) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!is_skippable(trim(raw), '#')) break;
    }
  }
}

std::optional<DelimitedStreamReader::Row> DelimitedStreamReader::read_row() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    const std::string text = trim(raw);
    if (is_skippable(text, '#')) continue;

    const auto fields = split(text, options_.delimiter);
    if (columns_ == 0) {
      if (fields.size() < 2) fail(path_, line_, "need at least one feature and a label");
      columns_ = fields.size();
      dims_ = columns_ - 1;
    }
    if (fields.size() != columns_) {
      fail(path_, line_, "expected " + std::to_string(columns_) + " fields, found " +
                             std::to_string(fields.size()));
    }
    const std::size_t label_col = options_.label_column.value_or(columns_ - 1);
    if (label_col >= columns_) fail(path_, line_, "label column out of range");

    Row row;
    row.features.reserve(dims_);
    for (std::size_t i = 0; i < columns_; ++i) {
      if (i == label_col) continue;
      row.features.push_back(parse_real(fields[i], path_, line_));
    }
    const std::string& token = fields[label_col];
    if (!class_ids_.empty()) {
      const auto it = class_ids_.find(token);
      if (it == class_ids_.end()) fail(path_, line_, "unknown class token '" + token + "'");
      row.label = it->second;
    } else {
      const auto id = parse_class_id(token);
      if (!id) fail(path_, line_, "unknown class token '" + token + "'");
      row.label = *id;
    }
    return row;
  }
  return std::nullopt;
}

std::optional<LabeledInstance> DelimitedStreamReader::next() {
  auto row = read_row();
  if (!row) return std::nullopt;
  LabeledInstance out;
  out.instance.features = std::move(row->features);
  out.instance.arrival_index = emitted_++;
  out.label = row->label;
  return out;
}

// Attribute-relation format

AttributeRelationReader::AttributeRelationReader(const std::string& path,
                                                 std::optional<std::size_t> label_column)
    : path_(path), in_(path) {
  if (!in_) throw DataError("cannot open stream file '" + path_ + "'");
  std::string raw;
  bool in_data = false;
  while (!in_data && std::getline(in_, raw)) {
    ++line_;
    const std::string text = trim(raw);
    if (is_skippable(text, '%')) continue;
    const std::string head = lower(text.substr(0, text.find_first_of(" \t")));
    if (head == "@relation") continue;
    if (head == "@data") {
      in_data = true;
      break;
    }
    if (head != "@attribute") fail(path_, line_, "unexpected header line '" + text + "'");

    std::string rest = trim(std::string_view(text).substr(head.size()));
    Attribute attr;
    std::size_t name_end;
    if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
      name_end = rest.find(rest.front(), 1);
      if (name_end == std::string::npos) fail(path_, line_, "unterminated attribute name");
      ++name_end;
    } else {
      name_end = rest.find_first_of(" \t");
      if (name_end == std::string::npos) fail(path_, line_, "attribute without a type");
    }
    attr.name = unquote(rest.substr(0, name_end));
    const std::string type = trim(std::string_view(rest).substr(name_end));
    if (!type.empty() && type.front() == '{') {
      const auto close = type.find('}');
      if (close == std::string::npos) fail(path_, line_, "unterminated nominal declaration");
      attr.nominal = true;
      for (auto& v : split(std::string_view(type).substr(1, close - 1), ',')) {
        attr.values.push_back(unquote(v));
      }
      if (attr.values.empty()) fail(path_, line_, "empty nominal declaration");
    } else {
      const std::string t = lower(type);
      if (t != "numeric" && t != "real" && t != "integer") {
        fail(path_, line_, "unsupported attribute type '" + type + "'");
      }
    }
    attributes_.push_back(std::move(attr));
  }
  if (!in_data) fail(path_, line_, "missing @data section");
  if (attributes_.size() < 2) fail(path_, line_, "need at least one feature and a class attribute");
  label_column_ = label_column.value_or(attributes_.size() - 1);
  if (label_column_ >= attributes_.size()) fail(path_, line_, "label column out of range");
  if (!attributes_[label_column_].nominal) {
    fail(path_, line_, "class attribute '" + attributes_[label_column_].name + "' is not nominal");
  }
}

std::optional<LabeledInstance> AttributeRelationReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    const std::string text = trim(raw);
    if (is_skippable(text, '%')) continue;
    const auto fields = split(text, ',');
    if (fields.size() != attributes_.size()) {
      fail(path_, line_, "expected " + std::to_string(attributes_.size()) + " fields, found " +
                             std::to_string(fields.size()));
    }
    LabeledInstance out;
    out.instance.features.reserve(attributes_.size() - 1);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const Attribute& attr = attributes_[i];
      const std::string token = unquote(fields[i]);
      if (token == "?") fail(path_, line_, "missing value for '" + attr.name + "'");
      if (attr.nominal) {
        const auto it = std::find(attr.values.begin(), attr.values.end(), token);
        if (it == attr.values.end()) {
          fail(path_, line_, (i == label_column_ ? "unknown class token '" : "unknown value '") +
                                 token + "' for '" + attr.name + "'");
        }
        const auto code = static_cast<std::size_t>(it - attr.values.begin());
        if (i == label_column_) {
          out.label = static_cast<ClassLabel>(code);
        } else {
          out.instance.features.push_back(static_cast<double>(code));
        }
      } else {
        out.instance.features.push_back(parse_real(token, path_, line_));
      }
    }
    out.instance.arrival_index = emitted_++;
    return out;
  }
  return std::nullopt;
}

std::unique_ptr<InstanceSource> open_stream_file(const std::string& path,
                                                 DelimitedOptions options) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && lower(path.substr(dot)) == ".arff") {
    return std::make_unique<AttributeRelationReader>(path, options.label_column);
  }
  return std::make_unique<DelimitedStreamReader>(path, std::move(options));
}

}  // namespace streamex
