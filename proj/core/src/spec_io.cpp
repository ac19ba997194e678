#include "aitherm/spec_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aitherm/errors.hpp"
#include "aitherm/rules.hpp"

namespace aitherm {

using ordered_json = nlohmann::ordered_json;

namespace {

BigRational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    const BigInt den(text.substr(slash + 1));
    if (den.is_zero()) throw SpecParseError("zero denominator: " + text);
    return BigRational(BigInt(text.substr(0, slash)), den);
  } catch (const std::exception& e) {
    throw SpecParseError("cannot parse rational '" + text + "': " + e.what());
  }
}

std::string rational_text(const BigRational& q) {
  const BigInt num = numerator(q), den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt parse_bigint_field(const ordered_json& j) {
  if (j.is_number_unsigned() || j.is_number_integer())
    return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw SpecParseError("expected an integer or integer string");
}

ordered_json machine_to_json(const Machine& m);

Machine machine_from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::string name = j.value("name", kind);
  if (kind == "table") {
    Table t;
    for (const auto& [p, out] : j.at("table").items())
      t[BitString(p)] = BitString(out.get<std::string>());
    return Machine::table(name, std::move(t));
  }
  if (kind == "spectrum") {
    if (j.contains("entries")) {
      std::map<std::uint64_t, BigInt> entries;
      for (const auto& [n, m] : j.at("entries").items())
        entries[std::stoull(n)] = parse_bigint_field(m);
      return Machine::spectrum_only(name, LengthSpectrum::finite(std::move(entries)));
    }
    const auto& rule = j.at("rule");
    const std::string rule_name = rule.at("name").get<std::string>();
    std::shared_ptr<const SpectrumRule> r;
    if (rule_name == "ones") {
      r = std::make_shared<OnesRule>();
    } else if (rule_name == "floor_pow_over_poly") {
      r = std::make_shared<FloorPowOverPolyRule>(rule.at("a").get<std::uint64_t>(),
                                                 rule.at("b").get<std::uint64_t>());
    } else {
      throw SpecParseError("unknown rule formula: " + rule_name);
    }
    // A serialized majorant is documentation; it must agree with the rule's
    // own certified one (we never trust looser user-supplied bounds).
    if (j.contains("tail_majorant")) {
      const auto& tm = j.at("tail_majorant");
      const auto own = r->majorant();
      if (!own || parse_rational(tm.at("c").get<std::string>()) != own->c ||
          parse_rational(tm.at("g").get<std::string>()) != own->g ||
          tm.at("d").get<std::int64_t>() != own->d)
        throw SpecParseError("tail_majorant does not match the named rule's certified bound");
    }
    return Machine::spectrum_only(name, LengthSpectrum::from_rule(std::move(r)));
  }
  if (kind == "universal") {
    const auto budget = j.value("budget", std::uint64_t{1} << 16);
    const auto schedule = schedule_from_name(j.value("schedule", std::string("doubling")));
    return Machine::universal(budget, schedule);
  }
  throw SpecParseError("unknown machine kind: " + kind);
}

MachineRef ref_from_json(const ordered_json& j) {
  if (j.at("kind").get<std::string>() == "composite") {
    std::vector<Machine> factors;
    for (const auto& f : j.at("factors")) {
      if (f.is_string()) {
        factors.push_back(builtin(f.get<std::string>()));
      } else {
        factors.push_back(machine_from_json(f));
      }
    }
    return MachineRef(CompositeMachine(std::move(factors)));
  }
  return MachineRef(machine_from_json(j));
}

ordered_json machine_to_json(const Machine& m) {
  ordered_json j;
  switch (m.kind()) {
    case Machine::Kind::table: {
      j["kind"] = "table";
      j["name"] = m.name();
      ordered_json table = ordered_json::object();
      for (const auto& [p, out] : m.table_mapping()) table[p.str()] = out.str();
      j["table"] = std::move(table);
      break;
    }
    case Machine::Kind::spectrum: {
      j["kind"] = "spectrum";
      j["name"] = m.name();
      const LengthSpectrum& s = m.spectrum();
      if (s.is_finite()) {
        ordered_json entries = ordered_json::object();
        for (const auto& [n, cnt] : s.finite_entries()) entries[std::to_string(n)] = cnt.str();
        j["entries"] = std::move(entries);
      } else {
        ordered_json rule;
        if (dynamic_cast<const OnesRule*>(s.rule().get())) {
          rule["name"] = "ones";
        } else if (const auto* fp = dynamic_cast<const FloorPowOverPolyRule*>(s.rule().get())) {
          rule["name"] = "floor_pow_over_poly";
          rule["a"] = fp->a();
          rule["b"] = fp->b();
        } else {
          throw IoError("cannot serialize spectrum rule: " + s.rule()->formula());
        }
        j["rule"] = std::move(rule);
        if (const auto maj = s.rule()->majorant()) {
          ordered_json tm;
          tm["c"] = rational_text(maj->c);
          tm["g"] = rational_text(maj->g);
          tm["d"] = maj->d;
          tm["n0"] = maj->n0;
          j["tail_majorant"] = std::move(tm);
        }
      }
      break;
    }
    case Machine::Kind::universal: {
      j["kind"] = "universal";
      j["name"] = m.name();
      j["budget"] = m.enumeration().budget();
      j["schedule"] = schedule_name(m.enumeration().schedule());
      break;
    }
  }
  return j;
}

}  // namespace

const Machine& MachineRef::machine() const {
  if (is_composite()) throw Error("MachineRef: expected a plain machine, got a composite");
  return std::get<Machine>(value_);
}

const CompositeMachine& MachineRef::composite() const {
  if (!is_composite()) throw Error("MachineRef: not a composite");
  return std::get<CompositeMachine>(value_);
}

const LengthSpectrum& MachineRef::spectrum() const {
  return is_composite() ? std::get<CompositeMachine>(value_).spectrum()
                        : std::get<Machine>(value_).spectrum();
}

bool MachineRef::spectrum_is_lower_bound() const {
  return is_composite() ? std::get<CompositeMachine>(value_).spectrum_is_lower_bound()
                        : std::get<Machine>(value_).spectrum_is_lower_bound();
}

std::string MachineRef::describe() const {
  return is_composite() ? std::get<CompositeMachine>(value_).describe()
                        : std::get<Machine>(value_).describe();
}

MachineRef resolve_machine(const std::string& name_or_path) {
  const bool looks_like_path = name_or_path.find('/') != std::string::npos ||
                               name_or_path.size() > 5 &&
                                   name_or_path.substr(name_or_path.size() - 5) == ".json";
  if (looks_like_path || std::filesystem::exists(name_or_path))
    return load_machine_spec(name_or_path);
  return MachineRef(builtin(name_or_path));
}

MachineRef parse_machine_spec(const std::string& text) {
  try {
    return ref_from_json(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(std::string("machine spec: ") + e.what());
  }
}

MachineRef load_machine_spec(const std::string& path) {
  try {
    return parse_machine_spec(read_file(path));
  } catch (const SpecParseError& e) {
    throw SpecParseError(path + ": " + e.what());
  }
}

std::string machine_spec_text(const MachineRef& m) {
  ordered_json j;
  if (m.is_composite()) {
    j["kind"] = "composite";
    j["name"] = m.describe();
    ordered_json factors = ordered_json::array();
    for (const auto& f : m.composite().factors()) factors.push_back(machine_to_json(f));
    j["factors"] = std::move(factors);
  } else {
    j = machine_to_json(m.machine());
  }
  return j.dump(2) + "\n";
}

std::string checkpoint_text(const EnumerationState& state) {
  ordered_json j;
  j["format"] = "aitherm-checkpoint-v1";
  j["machine"] = "U";
  j["schedule"] = schedule_name(state.schedule());
  j["budget"] = state.budget();
  j["spent"] = state.spent();
  j["cursor"] = {{"round", state.cursor().round},
                 {"len", state.cursor().len},
                 {"lex", state.cursor().lex}};
  ordered_json discovered = ordered_json::array();
  for (const auto& d : state.discovered()) {
    discovered.push_back(
        {{"p", d.program.str()}, {"out", d.output.str()}, {"cost", d.cost}});
  }
  j["discovered"] = std::move(discovered);
  return j.dump(2) + "\n";
}

EnumerationState parse_checkpoint(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    if (j.value("format", "") != "aitherm-checkpoint-v1")
      throw SpecParseError("not an aitherm checkpoint");
    EnumerationState::Cursor cursor{j.at("cursor").at("round").get<std::uint64_t>(),
                                    j.at("cursor").at("len").get<std::uint64_t>(),
                                    j.at("cursor").at("lex").get<std::uint64_t>()};
    std::vector<DiscoveredProgram> discovered;
    for (const auto& d : j.at("discovered")) {
      discovered.push_back({BitString(d.at("p").get<std::string>()),
                            BitString(d.at("out").get<std::string>()),
                            d.at("cost").get<std::uint64_t>()});
    }
    return EnumerationState::restore(schedule_from_name(j.at("schedule").get<std::string>()),
                                     j.at("budget").get<std::uint64_t>(),
                                     j.at("spent").get<std::uint64_t>(), cursor,
                                     std::move(discovered));
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(std::string("checkpoint: ") + e.what());
  }
}

EnumerationState load_checkpoint(const std::string& path) {
  return parse_checkpoint(read_file(path));
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "T_num,T_den,quantity,lo,hi,tail_bound,trunc_len\n";
  for (const auto& r : rows) {
    out << numerator(r.T.value()).str() << ',' << denominator(r.T.value()).str() << ','
        << r.quantity << ',' << r.lo << ',' << r.hi << ',' << r.tail_bound << ','
        << r.trunc_len << '\n';
  }
  return out.str();
}

std::string profile_csv(const CompressionProfile& profile) {
  std::ostringstream out;
  out << "n,h_upper,ratio_num,ratio_den\n";
  for (const auto& row : profile.rows) {
    out << row.n << ',';
    if (row.h_upper) {
      const auto ratio = *row.ratio();
      out << *row.h_upper << ',' << numerator(ratio).str() << ',' << denominator(ratio).str();
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace aitherm
