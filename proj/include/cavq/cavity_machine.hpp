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
#include <deque>
#include <vector>

#include "cavq/circuit.hpp"
#include "cavq/partition.hpp"
#include "cavq/pauli.hpp"
#include "cavq/topology.hpp"

namespace cavq {

// Tracks logical qubits as they move between cavity modes and transmons and
// emits the physical gates needed to execute logical operations.
//
// A qubit is fetched onto its cavity's transmon when a gate needs it and
// stays there until another qubit of the same cavity displaces it or the
// caller releases it. Single-qubit gates on a qubit parked in a mode are
// queued and replayed the next time it is fetched.
class CavityMachine {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  CavityMachine(const Topology& topo, const Groupings& groups);

  void gate1(std::size_t q, GateKind kind, double angle = 0.0);
  void cx(std::size_t control, std::size_t target);
  void touch(std::size_t q);
  void measure(std::size_t q);

  // Parks every qubit currently on a transmon back in a mode.
  void release_all();
  // Flushes queued gates and releases.
  void finish();

  // Runs exp(-i theta c P) with the cavity-aware entangler, then releases.
  void run_term(const PauliTerm& term, double theta);

  void exchange(std::size_t a, std::size_t b);
  void move(std::size_t q, std::size_t cavity);
  void apply_plan(const RelocationPlan& plan);

  const Groupings& groupings() const noexcept { return groups_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::vector<Gate> take_gates() { return std::move(gates_); }
  std::vector<std::size_t> placement() const { return loc_; }
  std::size_t location(std::size_t q) const { return loc_.at(q); }
  bool on_transmon(std::size_t q) const;

 private:
  void emit(Gate g);
  void fetch(std::size_t q);
  void stash(std::size_t q);
  void clear_transmon(std::size_t t);
  void transmon_swap(std::size_t ta, std::size_t tb);
  std::vector<std::size_t> transmon_path(std::size_t ta, std::size_t tb) const;
  std::size_t free_mode(std::size_t cavity, std::size_t prefer) const;

  const Topology& topo_;
  Groupings groups_;
  std::vector<std::size_t> loc_;       // logical -> resource
  std::vector<std::size_t> home_;      // logical -> preferred mode resource
  std::vector<std::size_t> occupant_;  // resource -> logical or kNone
  std::vector<std::deque<Gate>> queued_;
  std::vector<Gate> gates_;
};

}  // namespace cavq
