#include "aitherm/machine.hpp"

#include <algorithm>
#include <vector>

#include "aitherm/errors.hpp"
#include "aitherm/rules.hpp"
#include "aitherm/universal.hpp"

namespace aitherm {

Machine Machine::table(std::string name, Table mapping) {
  if (mapping.empty()) throw EmptyDomain("a computer's domain must be nonempty");
  std::vector<BitString> keys;
  keys.reserve(mapping.size());
  for (const auto& [k, v] : mapping) {
    if (k.empty())
      throw InvalidMachine("the empty string is rejected as a program (weight-1 degenerate)");
    keys.push_back(k);
  }
  if (!is_prefix_free(keys)) throw InvalidMachine("table keys must be prefix-free");
  Machine m;
  m.kind_ = Kind::table;
  m.name_ = std::move(name);
  m.spectrum_ = spectrum_of(PrefixSet(keys));
  m.mapping_ = std::move(mapping);
  return m;
}

Machine Machine::spectrum_only(std::string name, LengthSpectrum spectrum) {
  if (!spectrum.first_nonzero())
    throw EmptyDomain("spectrum machine has an empty domain");
  Machine m;
  m.kind_ = Kind::spectrum;
  m.name_ = std::move(name);
  m.spectrum_ = std::move(spectrum);
  return m;
}

Machine Machine::universal(std::uint64_t budget, ScheduleKind schedule) {
  Machine m;
  m.kind_ = Kind::universal;
  m.name_ = "U";
  m.enumeration_ = enumerate_domain(m, EnumerationState(schedule), budget);
  m.spectrum_ = m.enumeration_->discovered_spectrum();
  return m;
}

Machine Machine::universal_from_state(EnumerationState state) {
  Machine m;
  m.kind_ = Kind::universal;
  m.name_ = "U";
  m.enumeration_ = std::move(state);
  m.spectrum_ = m.enumeration_->discovered_spectrum();
  return m;
}

std::string Machine::describe() const {
  switch (kind_) {
    case Kind::table:
      return name_ + " (table, " + std::to_string(mapping_.size()) + " programs)";
    case Kind::spectrum:
      return name_ + " (spectrum: " +
             (spectrum_.is_finite() ? "finite" : spectrum_.rule()->formula()) + ")";
    case Kind::universal:
      return name_ + "[budget=" + std::to_string(enumeration_->budget()) +
             ", schedule=" + schedule_name(enumeration_->schedule()) + "]";
  }
  return name_;
}

const Table& Machine::table_mapping() const {
  if (kind_ != Kind::table) throw Error("table_mapping: not a table machine");
  return mapping_;
}

PrefixSet Machine::domain() const {
  if (kind_ == Kind::table) {
    std::vector<BitString> keys;
    for (const auto& [k, v] : mapping_) keys.push_back(k);
    return PrefixSet(std::move(keys));
  }
  if (kind_ == Kind::universal) return enumeration_->discovered_set();
  throw Error("domain: spectrum machines have no explicit string domain");
}

const EnumerationState& Machine::enumeration() const {
  if (kind_ != Kind::universal) throw Error("enumeration: not a universal machine");
  return *enumeration_;
}

Machine builtin_B() {
  Table t;
  t[BitString("1")] = BitString();
  t[BitString("01")] = BitString("0");
  return Machine::table("B", std::move(t));
}

Machine builtin_O() {
  return Machine::spectrum_only(
      "O", LengthSpectrum::from_rule(std::make_shared<OnesRule>()));
}

Machine builtin_heavy_tail(std::uint64_t a, std::uint64_t b) {
  auto name = "heavy_tail(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return Machine::spectrum_only(
      std::move(name),
      LengthSpectrum::from_rule(std::make_shared<FloorPowOverPolyRule>(a, b)));
}

Machine builtin_U(std::uint64_t budget, ScheduleKind schedule) {
  return Machine::universal(budget, schedule);
}

Machine builtin(const std::string& name) {
  if (name == "B") return builtin_B();
  if (name == "O") return builtin_O();
  if (name == "U") return builtin_U();
  if (name == "heavy_tail") return builtin_heavy_tail();
  const std::string prefix = "heavy_tail:";
  if (name.rfind(prefix, 0) == 0) {
    const auto rest = name.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw UnknownMachine(name);
    try {
      return builtin_heavy_tail(std::stoull(rest.substr(0, colon)),
                                std::stoull(rest.substr(colon + 1)));
    } catch (const std::invalid_argument&) {
      throw UnknownMachine(name);
    } catch (const std::out_of_range&) {
      throw UnknownMachine(name);
    }
  }
  throw UnknownMachine(name);
}

RunOutcome run(const Machine& m, const BitString& p, std::uint64_t steps) {
  switch (m.kind()) {
    case Machine::Kind::table: {
      const auto it = m.table_mapping().find(p);
      if (it == m.table_mapping().end()) return {RunStatus::not_in_domain, {}, 0};
      return {RunStatus::halted, it->second, p.length()};
    }
    case Machine::Kind::spectrum:
      return {RunStatus::not_in_domain, {}, 0};  // virtual machine: no executable table
    case Machine::Kind::universal: {
      const auto decoded = decode_universal_program(p);
      if (!decoded) return {RunStatus::not_in_domain, {}, 0};
      const auto& sim = bundled_simulators()[decoded->first - 1];
      const auto result = sim->evaluate(decoded->second);
      if (!result) return {RunStatus::not_in_domain, {}, 0};
      const std::uint64_t cost = decoded->first + result->cost;  // index prefix is read too
      if (cost > steps) return {RunStatus::no_halt_within_budget, {}, 0};
      return {RunStatus::halted, result->output, cost};
    }
  }
  return {RunStatus::not_in_domain, {}, 0};
}

std::optional<std::uint64_t> complexity_upper(const Machine& m, const BitString& s,
                                              std::uint64_t max_len, std::uint64_t steps) {
  if (m.kind() == Machine::Kind::table) {
    for (const auto& [p, out] : m.table_mapping()) {  // canonical key order
      if (p.length() > max_len) break;
      if (out == s) return p.length();
    }
    return std::nullopt;
  }
  if (m.kind() == Machine::Kind::spectrum) return std::nullopt;
  if (max_len > 30) throw Error("complexity_upper: max_len too large for exhaustive search");
  for (std::uint64_t len = 1; len <= max_len; ++len) {
    for (std::uint64_t lex = 0; lex < (std::uint64_t(1) << len); ++lex) {
      const BitString p = nth_string_of_length(len, lex);
      const RunOutcome r = run(m, p, steps);
      if (r.status == RunStatus::halted && r.output == s) return len;
    }
  }
  return std::nullopt;
}

std::string tristate_name(Tristate t) {
  switch (t) {
    case Tristate::no: return "no";
    case Tristate::yes: return "yes";
    case Tristate::unknown: return "unknown";
  }
  return "?";
}

PredicateReport check_predicates(const Machine& m) {
  PredicateReport r;
  const LengthSpectrum& spec = m.spectrum();
  const auto first = spec.first_nonzero();
  const auto second = first ? spec.next_nonzero(*first) : std::nullopt;
  switch (m.kind()) {
    case Machine::Kind::table:
      // decidable: the whole domain is in hand
      r.physically_reasonable = second ? Tristate::yes : Tristate::no;
      r.computable_measure = Tristate::yes;  // finite Kraft sum, exact
      break;
    case Machine::Kind::spectrum:
      if (spec.is_finite()) {
        r.physically_reasonable = second ? Tristate::yes : Tristate::no;
        r.computable_measure = Tristate::yes;
      } else {
        // rule spectra: a second populated length decides; the scan window
        // cannot refute existence beyond it
        r.physically_reasonable = second ? Tristate::yes : Tristate::unknown;
        r.computable_measure =
            spec.rule()->majorant() || spec.rule()->kraft_certified_by_construction()
                ? Tristate::yes
                : Tristate::unknown;
      }
      break;
    case Machine::Kind::universal:
      // true once two discovered lengths differ, else unknown-yet
      r.physically_reasonable = second ? Tristate::yes : Tristate::unknown;
      r.computable_measure = Tristate::unknown;
      break;
  }
  return r;
}

}  // namespace aitherm
