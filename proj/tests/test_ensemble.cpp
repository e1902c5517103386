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

#include <memory>
#include <vector>

#include "streamex/ensemble.hpp"
#include "streamex/learners.hpp"
#include "streamex/rng.hpp"

using namespace streamex;

namespace {

// Predicts a fixed class; counts its updates.
class Fixed final : public Classifier {
 public:
  Fixed(ClassLabel label, int* updates) : label_(label), updates_(updates) {}
  void update(const LabeledInstance&) override { ++*updates_; }
  Distribution predict(std::span<const double>) const override {
    Distribution d(2, 0.0);
    d[label_] = 1.0;
    return d;
  }
  std::unique_ptr<Classifier> clone() const override { return std::make_unique<Fixed>(*this); }
  std::size_t num_classes() const override { return 2; }
  std::string name() const override { return "fixed"; }

 private:
  ClassLabel label_;
  int* updates_;
};

}  // namespace

TEST_CASE("gate: ties and fresh state prefer the standard learner") {
  ElevationGate fresh(0.05, 0.002);
  CHECK_FALSE(fresh.prefers_risky());
  ElevationGate tie(0.05, 0.002);
  tie.observe(0.3, 0.3);
  CHECK_FALSE(tie.prefers_risky());
  ElevationGate better(0.05, 0.002);
  for (int i = 0; i < 10; ++i) better.observe(i == 0 ? 1.0 : 0.0, i < 3 ? 1.0 : 0.0);
  CHECK(better.risky_error().mean() == doctest::Approx(0.1));
  CHECK(better.standard_error().mean() == doctest::Approx(0.3));
  CHECK(better.prefers_risky());
}

TEST_CASE("gate: constant 0.9 versus 0.1 elevates exactly once, replacing risky") {
  ElevationGate gate(0.05, 0.002);
  int elevations = 0;
  std::optional<Slot> first;
  // Errors belong to the learners: once the risky slot holds a copy of the
  // standard learner, it errs like it.
  double risky = 0.9;
  const double standard = 0.1;
  for (int i = 0; i < 500; ++i) {
    gate.observe(risky, standard);
    if (const auto slot = gate.try_elevate()) {
      ++elevations;
      if (!first) first = slot;
      if (*slot == Slot::kRisky) risky = standard;
    }
  }
  CHECK(elevations == 1);
  REQUIRE(first.has_value());
  CHECK(*first == Slot::kRisky);
}

TEST_CASE("gate: alpha zero never elevates") {
  ElevationGate gate(0.0, 0.002);
  for (int i = 0; i < 500; ++i) {
    gate.observe(0.9, 0.1);
    CHECK_FALSE(gate.try_elevate().has_value());
  }
}

TEST_CASE("gate: no elevation during the initial cooldown") {
  ElevationGate gate(0.05, 0.002, 30);
  for (int i = 0; i < 29; ++i) {
    gate.observe(1.0, 0.0);
    CHECK_FALSE(gate.try_elevate().has_value());
  }
  gate.observe(1.0, 0.0);
  CHECK(gate.try_elevate().has_value());
}

TEST_CASE("ensemble: unlabeled instances change nothing") {
  int ru = 0;
  EnsembleOptions eo;
  eo.mode = EnsembleMode::kElevating;
  PairedEnsemble e(std::make_unique<Fixed>(0, &ru), 0.5, {.kind = QueryKind::kRandom, .budget = 0.0}, {}, eo, Rng(1));
  for (int i = 0; i < 100; ++i) {
    const auto out = e.process(Instance{{0.0}, static_cast<std::uint64_t>(i)}, [](const Instance&) { return 1u; });
    CHECK_FALSE(out.queried);
  }
  CHECK(ru == 0);
  CHECK(e.gate().risky_error().width() == 0);
  CHECK(e.update_count() == 0);
}

TEST_CASE("ensemble: both learners see every labeled instance") {
  int updates = 0;
  ExploitOptions xo;
  xo.strategy.kind = ExploitKind::kSingleExposition;
  xo.lambda_max = 3;
  xo.dynamic_intensity = false;
  PairedEnsemble e(std::make_unique<Fixed>(0, &updates), 1.0, {.kind = QueryKind::kRandom, .budget = 1.0}, xo, {}, Rng(2));
  const auto out = e.process(Instance{{0.0}, 0}, [](const Instance&) { return 1u; });
  CHECK(out.queried);
  CHECK(out.updates == 5);  // risky: 1 + 3 replays, standard: 1
  CHECK(updates == 5);
  CHECK(e.risky_labels() == 1);
  CHECK(e.standard_labels() == 1);
  CHECK(e.gate().risky_error().width() == 1);
  CHECK(e.gate().standard_error().width() == 1);
}

TEST_CASE("ensemble: switching mode never replaces") {
  Rng data(3);
  ExploitOptions xo;
  xo.strategy.kind = ExploitKind::kSingleExposition;
  xo.lambda_max = 10;
  PairedEnsemble e(std::make_unique<SgdLinear>(2, 2), 0.3, {.kind = QueryKind::kRandVar, .budget = 0.3}, xo, {}, Rng(3));
  for (int i = 0; i < 20000; ++i) {
    Instance x{{data.uniform(), data.uniform()}, static_cast<std::uint64_t>(i)};
    const ClassLabel y = (x.features[0] > 0.5) != (i >= 10000) ? 1 : 0;
    e.observe_truth(x, y);
    e.process(x, [y](const Instance&) { return y; });
  }
  CHECK(e.elevations().total == 0);
  CHECK(e.budget().spending() <= 0.3 + 1.0 / 20000);
}

TEST_CASE("ensemble: elevating mode clones the better learner") {
  Rng data(4);
  ExploitOptions xo;
  xo.strategy.kind = ExploitKind::kSingleExposition;
  xo.lambda_max = 200;
  xo.dynamic_intensity = false;
  EnsembleOptions eo;
  eo.mode = EnsembleMode::kElevating;
  eo.track_truth = true;
  PairedEnsemble e(std::make_unique<SgdLinear>(2, 2), 1.0, {.kind = QueryKind::kRandom, .budget = 1.0}, xo, eo, Rng(4));
  for (int i = 0; i < 5000; ++i) {
    Instance x{{data.uniform(), data.uniform()}, static_cast<std::uint64_t>(i)};
    const ClassLabel y = x.features[0] + x.features[1] > 1.0 ? 1 : 0;
    e.observe_truth(x, y);
    e.process(x, [y](const Instance&) { return y; });
  }
  const auto& s = e.elevations();
  CHECK(s.total == s.replaced_risky + s.replaced_standard);
  CHECK(s.true_positive + s.false_positive == s.total);
}
