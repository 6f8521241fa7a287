// Copyright 2026 The cavq Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cavq/circuit.hpp"
#include "cavq/topology.hpp"
#include "cavq/transpile.hpp"

namespace cavq {

// Integer nanoseconds throughout, so busy and idle intervals tile exactly.
using Nanos = std::int64_t;

struct GateTimes {
  Nanos single_qubit = 40;
  Nanos cx = 100;
  Nanos swap_io = 100;
  Nanos measure = 0;

  // A composite SWAP runs as three back-to-back CX.
  Nanos lattice_swap() const noexcept { return 3 * cx; }
  Nanos duration(const Gate& g) const;
  void validate() const;
};

struct ScheduledEvent {
  Gate gate;
  std::size_t index = 0;  // position in the source gate list
  Nanos start = 0;
  Nanos duration = 0;
  Nanos end() const noexcept { return start + duration; }
};

struct IdleGap {
  Nanos start = 0;
  Nanos length = 0;
  bool operator==(const IdleGap&) const = default;
};

struct Schedule {
  std::vector<ScheduledEvent> events;  // by start time, then source order
  Nanos makespan = 0;
  std::vector<ResourceClass> resource_class;
  std::vector<std::size_t> initial_placement;
  std::vector<std::size_t> final_placement;
  // First instant each resource holds live state; -1 if never.
  std::vector<Nanos> live_from;

  std::size_t num_resources() const noexcept { return resource_class.size(); }
};

// Each gate starts once all of its operands are free. Measurements take no
// time and are placed at the makespan.
Schedule asap_schedule(const PhysicalCircuit& pc, const GateTimes& gt = {});

struct IdleReport {
  std::vector<std::vector<IdleGap>> gaps;  // per resource
  std::vector<Nanos> total;                // per resource
  Nanos sum = 0;
};

// Gaps are the parts of [live_from, makespan] not covered by a gate.
IdleReport idle_report(const Schedule& s);

}  // namespace cavq
