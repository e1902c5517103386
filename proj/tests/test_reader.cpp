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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "streamex/stream_reader.hpp"

using namespace streamex;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "streamex_reader_tests";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << text;
  return path;
}

// Drains a source, returning the message of the DataError it throws.
std::string drain_error(const std::string& path, DelimitedOptions options = {}) {
  try {
    auto src = open_stream_file(path, options);
    while (src->next()) {
    }
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("comma-separated numeric file") {
  const auto path = write_temp("ok.csv", "0.1,0.2,0\n0.3,0.4,1\n0.5,0.6,2\n");
  DelimitedStreamReader r(path);
  CHECK(r.dims() == 2);
  CHECK(r.num_classes() == 3);
  int n = 0;
  while (auto ex = r.next()) {
    CHECK(ex->instance.arrival_index == static_cast<std::uint64_t>(n));
    CHECK(ex->label == static_cast<ClassLabel>(n));
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("header, comments and declared classes") {
  const auto path = write_temp("named.csv", "# comment\nx;y;class\n1;2;no\n\n3;4;yes\n");
  DelimitedOptions o;
  o.delimiter = ';';
  o.header = true;
  o.class_names = {"no", "yes"};
  DelimitedStreamReader r(path, o);
  CHECK(r.num_classes() == 2);
  auto a = r.next();
  auto b = r.next();
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->label == 0);
  CHECK(b->label == 1);
  CHECK(b->features()[1] == 4.0);
  CHECK_FALSE(r.next().has_value());
}

TEST_CASE("label column in the middle") {
  const auto path = write_temp("mid.csv", "1,0,2\n3,1,4\n");
  DelimitedOptions o;
  o.label_column = 1;
  DelimitedStreamReader r(path, o);
  auto ex = r.next();
  REQUIRE(ex.has_value());
  CHECK(ex->features()[0] == 1.0);
  CHECK(ex->features()[1] == 2.0);
  CHECK(ex->label == 0);
}

TEST_CASE("ragged row names line 2") {
  const auto path = write_temp("ragged.csv", "0.1,0.2,0\n0.3,1\n0.5,0.6,1\n");
  const auto msg = drain_error(path);
  CHECK(msg.find(":2:") != std::string::npos);
}

TEST_CASE("unknown class token and bad numbers are reported") {
  DelimitedOptions o;
  o.class_names = {"a", "b"};
  CHECK(drain_error(write_temp("cls.csv", "1,a\n2,c\n"), o).find(":2:") != std::string::npos);
  CHECK(drain_error(write_temp("num.csv", "1,0\nx,1\n")).find(":2:") != std::string::npos);
  CHECK_THROWS_AS(DelimitedStreamReader("/nonexistent/file.csv"), DataError);
}

TEST_CASE("attribute-relation file maps nominal classes in declaration order") {
  const auto path = write_temp("weather.arff",
                               "% weather\n@RELATION w\n@attribute temp numeric\n"
                               "@Attribute outlook {sunny, rainy}\n@attribute play {a,b}\n\n"
                               "@DATA\n20.5,rainy,b\n18,sunny,a\n");
  AttributeRelationReader r(path);
  CHECK(r.dims() == 2);
  CHECK(r.num_classes() == 2);
  CHECK(r.class_names() == std::vector<std::string>{"a", "b"});
  auto first = r.next();
  REQUIRE(first.has_value());
  CHECK(first->features()[0] == 20.5);
  CHECK(first->features()[1] == 1.0);
  CHECK(first->label == 1);
  auto second = r.next();
  REQUIRE(second.has_value());
  CHECK(second->label == 0);
  CHECK_FALSE(r.next().has_value());
}

TEST_CASE("attribute-relation errors") {
  const auto missing = write_temp("missing.arff",
                                  "@relation r\n@attribute x numeric\n@attribute c {p,q}\n@data\n?,p\n");
  CHECK(drain_error(missing).find(":5:") != std::string::npos);
  const auto numeric_class = write_temp("numclass.arff",
                                        "@relation r\n@attribute x numeric\n@attribute c numeric\n@data\n1,2\n");
  CHECK_FALSE(drain_error(numeric_class).empty());
  const auto bad_token = write_temp("badtok.arff",
                                    "@relation r\n@attribute x numeric\n@attribute c {p,q}\n@data\n1,p\n2,z\n");
  CHECK(drain_error(bad_token).find(":6:") != std::string::npos);
}
