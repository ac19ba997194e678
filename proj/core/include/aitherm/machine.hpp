// Machines: finite tables, spectrum-only (virtual) machines, and the bundled
// budget-bounded universal machine, plus execution and the program-size
// complexity probe.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "aitherm/bitstring.hpp"
#include "aitherm/enumeration.hpp"
#include "aitherm/spectrum.hpp"

namespace aitherm {

struct CanonicalLess {
  bool operator()(const BitString& a, const BitString& b) const { return canonical_less(a, b); }
};
using Table = std::map<BitString, BitString, CanonicalLess>;

class Machine {
 public:
  enum class Kind { table, spectrum, universal };

  // Keys must be nonempty (lambda programs are rejected by design), prefix-free
  // and at least one is required: a computer's domain is a nonempty prefix-free set.
  static Machine table(std::string name, Table mapping);
  // Virtual machine: only the spectrum, no outputs. Must be nonempty.
  static Machine spectrum_only(std::string name, LengthSpectrum spectrum);
  // The bundled universal machine, enumerated up to `budget` steps so that a
  // finite discovered snapshot (a certified lower-bound domain) is attached.
  static Machine universal(std::uint64_t budget,
                           ScheduleKind schedule = ScheduleKind::doubling);
  // Rebuild from a previously serialized enumeration state (no re-run).
  static Machine universal_from_state(EnumerationState state);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::string describe() const;

  const Table& table_mapping() const;
  PrefixSet domain() const;  // table: keys; universal: discovered snapshot

  // Table machines: exact spectrum of the domain. Spectrum machines: as
  // given. Universal machines: the discovered snapshot's spectrum, which only
  // lower-bounds the true Z (the domain is r.e., not decidable).
  const LengthSpectrum& spectrum() const { return spectrum_; }
  bool spectrum_is_lower_bound() const { return kind_ == Kind::universal; }

  const EnumerationState& enumeration() const;  // universal only

 private:
  Machine() = default;

  Kind kind_ = Kind::table;
  std::string name_;
  Table mapping_;
  LengthSpectrum spectrum_;
  std::optional<EnumerationState> enumeration_;
};

// Catalog: B (two-level table), O (all-ones spectrum), heavy_tail(a,b)
// (spectrum floor(2^n/(a n^b)), Kraft-certified, divergent for every T > 1),
// U (bundled universal machine at a default budget).
Machine builtin_B();
Machine builtin_O();
Machine builtin_heavy_tail(std::uint64_t a = 2, std::uint64_t b = 2);
Machine builtin_U(std::uint64_t budget = 1u << 16,
                  ScheduleKind schedule = ScheduleKind::doubling);
// Dispatch by name: "B", "O", "U", "heavy_tail" or "heavy_tail:a:b".
Machine builtin(const std::string& name);

enum class RunStatus { halted, no_halt_within_budget, not_in_domain };

struct RunOutcome {
  RunStatus status = RunStatus::not_in_domain;
  BitString output;             // meaningful when halted
  std::uint64_t steps_used = 0; // halting cost when halted
};

// Table machines answer immediately (steps is ignored); universal machines
// simulate at most `steps` and never assert divergence. Spectrum machines
// have no executable presentation: everything is not_in_domain.
RunOutcome run(const Machine& m, const BitString& p, std::uint64_t steps);

// Least |p| <= max_len with run(m, p, steps) halting with output s, searched
// in canonical order; nullopt when no program is found in the window.
// Nonincreasing in both max_len and steps.
std::optional<std::uint64_t> complexity_upper(const Machine& m, const BitString& s,
                                              std::uint64_t max_len, std::uint64_t steps);

enum class Tristate { no, yes, unknown };
std::string tristate_name(Tristate t);

struct PredicateReport {
  Tristate physically_reasonable = Tristate::unknown;  // two domain lengths differ
  Tristate computable_measure = Tristate::unknown;     // Kraft sum certified computable
};

PredicateReport check_predicates(const Machine& m);

}  // namespace aitherm
