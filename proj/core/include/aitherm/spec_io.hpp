// External interfaces: the machine-spec text format (JSON with kind in
// {table, spectrum, universal, composite}; bit-strings as ASCII 0/1 words),
// bit-exact enumeration checkpoints, and the CSV formats of the CLI.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aitherm/compose.hpp"
#include "aitherm/machine.hpp"
#include "aitherm/randomness.hpp"
#include "aitherm/temperature.hpp"
#include "aitherm/thermo.hpp"

namespace aitherm {

// A resolved machine: either a plain machine or a composite.
class MachineRef {
 public:
  explicit MachineRef(Machine m) : value_(std::move(m)) {}
  explicit MachineRef(CompositeMachine m) : value_(std::move(m)) {}

  bool is_composite() const { return std::holds_alternative<CompositeMachine>(value_); }
  const Machine& machine() const;
  const CompositeMachine& composite() const;

  const LengthSpectrum& spectrum() const;
  bool spectrum_is_lower_bound() const;
  std::string describe() const;

 private:
  std::variant<Machine, CompositeMachine> value_;
};

// Builtin catalog name ("B", "O", "U", "heavy_tail", "heavy_tail:a:b") or a
// path to a machine-spec file.
MachineRef resolve_machine(const std::string& name_or_path);

MachineRef parse_machine_spec(const std::string& text);
MachineRef load_machine_spec(const std::string& path);
std::string machine_spec_text(const MachineRef& m);

// Enumeration checkpoints: (schedule, budget, spent, cursor, discovered list
// with outputs), deterministic bytes.
std::string checkpoint_text(const EnumerationState& state);
EnumerationState parse_checkpoint(const std::string& text);
EnumerationState load_checkpoint(const std::string& path);

// Sweep CSV: header T_num,T_den,quantity,lo,hi,tail_bound,trunc_len; one row
// per (T, quantity), sorted by T then quantity letter; deterministic bytes.
struct SweepRow {
  Temperature T;
  char quantity;
  std::string lo, hi, tail_bound;
  std::uint64_t trunc_len = 0;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Profile CSV: n,h_upper,ratio_num,ratio_den (empty fields for NotFound rows).
std::string profile_csv(const CompressionProfile& profile);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace aitherm
