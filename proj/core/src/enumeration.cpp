#include "aitherm/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "aitherm/errors.hpp"
#include "aitherm/machine.hpp"
#include "aitherm/universal.hpp"

namespace aitherm {

std::string schedule_name(ScheduleKind k) {
  return k == ScheduleKind::doubling ? "doubling" : "linear";
}

ScheduleKind schedule_from_name(const std::string& name) {
  if (name == "doubling") return ScheduleKind::doubling;
  if (name == "linear") return ScheduleKind::linear;
  throw SpecParseError("unknown schedule: " + name);
}

std::uint64_t schedule_grant(ScheduleKind k, std::uint64_t round) {
  if (k == ScheduleKind::doubling) {
    if (round >= 62) return std::uint64_t(1) << 62;
    return std::uint64_t(1) << round;
  }
  return 64 * round;
}

PrefixSet EnumerationState::discovered_set() const {
  std::vector<BitString> programs;
  programs.reserve(discovered_.size());
  for (const auto& d : discovered_) programs.push_back(d.program);
  return PrefixSet(std::move(programs));
}

LengthSpectrum EnumerationState::discovered_spectrum() const {
  std::map<std::uint64_t, BigInt> entries;
  for (const auto& d : discovered_) entries[d.program.length()] += 1;
  return LengthSpectrum::finite(std::move(entries));
}

EnumerationState EnumerationState::restore(ScheduleKind schedule, std::uint64_t budget,
                                           std::uint64_t spent, Cursor cursor,
                                           std::vector<DiscoveredProgram> discovered) {
  EnumerationState s(schedule);
  s.budget_ = budget;
  s.spent_ = spent;
  s.cursor_ = cursor;
  s.discovered_ = std::move(discovered);
  return s;
}

EnumerationState enumerate_domain(const Machine& m, EnumerationState state,
                                  std::uint64_t extra_steps) {
  if (m.kind() != Machine::Kind::universal)
    throw InvalidMachine("enumerate_domain: requires a universal machine");
  state.budget_ += extra_steps;

  auto& cur = state.cursor_;
  while (true) {
    if (cur.round > 48) throw Error("enumerate_domain: budget beyond supported rounds");
    const std::uint64_t grant = schedule_grant(state.schedule_, cur.round);
    const std::uint64_t prev_grant =
        cur.round > 1 ? schedule_grant(state.schedule_, cur.round - 1) : 0;

    for (; cur.len <= cur.round; ++cur.len, cur.lex = 0) {
      const std::uint64_t count = std::uint64_t(1) << cur.len;
      for (; cur.lex < count; ++cur.lex) {
        const BitString q = nth_string_of_length(cur.len, cur.lex);
        const bool fresh = cur.len == cur.round;  // first round this length appears
        std::uint64_t charge = 0;
        bool discovers = false;
        RunOutcome outcome;

        // Probe with the full grant; honest accounting below only charges the
        // increment over what earlier rounds already granted this candidate.
        outcome = run(m, q, grant);
        if (outcome.status == RunStatus::not_in_domain) {
          charge = fresh ? cur.len : 0;  // decoding reads the whole string once
        } else if (outcome.status == RunStatus::halted) {
          const std::uint64_t already = fresh ? 0 : prev_grant;
          if (outcome.steps_used <= already) {
            charge = 0;  // discovered in an earlier round
          } else {
            charge = outcome.steps_used - already;
            discovers = true;
          }
        } else {  // still running at this grant
          const std::uint64_t already = fresh ? 0 : prev_grant;
          charge = grant - already;
        }

        if (charge > 0) {
          if (state.spent_ + charge > state.budget_) return state;  // pause here, bit-exact
          state.spent_ += charge;
        }
        if (discovers) {
          state.discovered_.push_back({q, outcome.output, outcome.steps_used});
        }
      }
    }
    ++cur.round;
    cur.len = 1;
    cur.lex = 0;
  }
}

}  // namespace aitherm
