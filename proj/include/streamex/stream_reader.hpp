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

#pragma once

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamex/streams.hpp"

namespace streamex {

struct DelimitedOptions {
  char delimiter = ',';
  // Zero-based label column; the last column when unset.
  std::optional<std::size_t> label_column;
  // Skip the first non-comment line.
  bool header = false;
  // Declared class tokens, mapped to ids in order. When empty, labels must
  // be non-negative integers and the class count is found by a first pass
  // over the file.
  std::vector<std::string> class_names;
};

// Delimited-text stream file. Lines starting with '#' and blank lines are
// skipped. The feature count is taken from the first data row; every later
// row must match it.
class DelimitedStreamReader final : public InstanceSource {
 public:
  DelimitedStreamReader(const std::string& path, DelimitedOptions options = {});

  std::optional<LabeledInstance> next() override;
  std::size_t dims() const override { return dims_; }
  std::size_t num_classes() const override { return classes_; }

 private:
  struct Row {
    std::vector<double> features;
    ClassLabel label;
  };
  std::optional<Row> read_row();
  void rewind();

  std::string path_;
  DelimitedOptions options_;
  std::ifstream in_;
  std::size_t line_ = 0;
  std::size_t columns_ = 0;
  std::size_t dims_ = 0;
  std::size_t classes_ = 0;
  std::uint64_t emitted_ = 0;
  std::unordered_map<std::string, ClassLabel> class_ids_;
};

// Attribute-relation header format: @relation / @attribute / @data sections
// (keywords case-insensitive). Numeric attributes are parsed as reals;
// nominal attributes are coded by declaration order. The class attribute
// (the last one unless label_column says otherwise) must be nominal.
class AttributeRelationReader final : public InstanceSource {
 public:
  explicit AttributeRelationReader(const std::string& path,
                                   std::optional<std::size_t> label_column = {});

  std::optional<LabeledInstance> next() override;
  std::size_t dims() const override { return attributes_.size() - 1; }
  std::size_t num_classes() const override { return attributes_[label_column_].values.size(); }

  const std::vector<std::string>& class_names() const { return attributes_[label_column_].values; }

 private:
  struct Attribute {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values;
  };

  std::string path_;
  std::ifstream in_;
  std::size_t line_ = 0;
  std::vector<Attribute> attributes_;
  std::size_t label_column_ = 0;
  std::uint64_t emitted_ = 0;
};

// Picks the reader by extension (".arff" selects the attribute-relation
// reader, anything else the delimited reader).
std::unique_ptr<InstanceSource> open_stream_file(const std::string& path,
                                                 DelimitedOptions options = {});

}  // namespace streamex
