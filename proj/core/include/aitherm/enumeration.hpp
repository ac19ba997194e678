// Dovetailed enumeration of a universal machine's domain: round-robin over
// candidate programs in canonical order with growing step grants. Fully
// deterministic given the schedule, so checkpoints are bit-exact.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aitherm/bitstring.hpp"
#include "aitherm/spectrum.hpp"

namespace aitherm {

class Machine;

enum class ScheduleKind { doubling, linear };

std::string schedule_name(ScheduleKind k);
ScheduleKind schedule_from_name(const std::string& name);

// Steps granted to each candidate during round k (k >= 1).
std::uint64_t schedule_grant(ScheduleKind k, std::uint64_t round);

struct DiscoveredProgram {
  BitString program;
  BitString output;
  std::uint64_t cost = 0;
};

// Round k visits every candidate of length <= k in canonical order. A
// candidate in the machine's domain with halting cost c is discovered during
// the first round where c fits the grant; revisits are charged only for the
// incremental grant, so total accounting matches a paused-and-resumed
// simulation. Discovered sets grow monotonically with budget and stay
// prefix-free (they are subsets of the prefix-free Dom U).
class EnumerationState {
 public:
  explicit EnumerationState(ScheduleKind schedule = ScheduleKind::doubling)
      : schedule_(schedule) {}

  ScheduleKind schedule() const { return schedule_; }
  std::uint64_t budget() const { return budget_; }          // total steps granted
  std::uint64_t spent() const { return spent_; }
  const std::vector<DiscoveredProgram>& discovered() const { return discovered_; }

  PrefixSet discovered_set() const;
  LengthSpectrum discovered_spectrum() const;

  struct Cursor {
    std::uint64_t round = 1;
    std::uint64_t len = 1;
    std::uint64_t lex = 0;
  };
  const Cursor& cursor() const { return cursor_; }

  // Exact state injection for checkpoint loading; trusts the caller.
  static EnumerationState restore(ScheduleKind schedule, std::uint64_t budget,
                                  std::uint64_t spent, Cursor cursor,
                                  std::vector<DiscoveredProgram> discovered);

 private:
  friend EnumerationState enumerate_domain(const Machine& m, EnumerationState state,
                                           std::uint64_t extra_steps);

  ScheduleKind schedule_;
  std::uint64_t budget_ = 0;
  std::uint64_t spent_ = 0;
  Cursor cursor_;
  std::vector<DiscoveredProgram> discovered_;  // in discovery order
};

// Grants extra_steps more simulation steps and advances the dovetailer until
// the next candidate's charge no longer fits. Requires a universal machine.
EnumerationState enumerate_domain(const Machine& m, EnumerationState state,
                                  std::uint64_t extra_steps);

}  // namespace aitherm
