// aitherm: evaluate AIT thermodynamic quantities with validated error
// bounds, sweep temperatures to CSV, compose machines, drive the dovetailed
// enumeration of the bundled universal machine, and run program-size
// complexity profiles.
//
// Exit codes: 0 success, 1 usage, 2 computation certificate failure, 3 I/O.
#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "aitherm/compose.hpp"
#include "aitherm/machine.hpp"
#include "aitherm/randomness.hpp"
#include "aitherm/spec_io.hpp"
#include "aitherm/thermo.hpp"

namespace {

using namespace aitherm;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Dyadic parse_eps(const std::string& text) {
  try {
    if (text.rfind("2^", 0) == 0) {
      const long long e = std::stoll(text.substr(2));
      return Dyadic::power_of_two(e);
    }
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Dyadic(BigInt(text), 0);
    const BigRational q(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    if (q <= 0) throw UsageError("--eps must be positive");
    // tighten to the largest dyadic below q
    const std::int64_t bits =
        static_cast<std::int64_t>(boost::multiprecision::msb(denominator(q))) + 8;
    const Dyadic d = Dyadic::from_rational_floor(q, bits);
    if (d.sign() <= 0) throw UsageError("--eps too small to represent");
    return d;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("cannot parse --eps '" + text + "' (use 2^-k or num/den)");
  }
}

Temperature parse_temperature(const std::string& text) {
  try {
    return Temperature::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

BigRational parse_plain_rational(const std::string& text, const char* what) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "' (use num/den)");
  }
}

// Trim a long exact decimal for display, rounding in the stated direction so
// printed lower bounds stay lower bounds and upper bounds stay upper bounds.
std::string trim_decimal(const std::string& dec, bool round_up, std::size_t digits = 18) {
  const bool neg = !dec.empty() && dec[0] == '-';
  std::string mag = neg ? dec.substr(1) : dec;
  const std::size_t dot = mag.find('.');
  if (dot == std::string::npos || mag.size() - dot - 1 <= digits) return dec;
  std::string cut = mag.substr(0, dot + 1 + digits);
  const bool bump = (round_up != neg);  // away from zero exactly when needed
  if (bump) {
    std::size_t i = cut.size();
    while (i-- > 0) {
      if (cut[i] == '.') continue;
      if (cut[i] != '9') {
        ++cut[i];
        break;
      }
      cut[i] = '0';
      if (i == 0) cut.insert(cut.begin(), '1');
    }
  } else {
    cut += "...";
  }
  return (neg ? "-" : "") + cut;
}

std::string bound_label(const QuantityResult& r, char letter) {
  std::string s(1, letter);
  s += " = " + r.enclosure.to_display_string();
  s += "  [trunc_len=" + std::to_string(r.truncation_length) +
       ", err<=" + r.enclosure.width().to_upper_science_string() + "]";
  return s;
}

// Truncated-prefix finite spectrum for uncertified reports.
LengthSpectrum truncate_spectrum(const LengthSpectrum& spec, std::uint64_t L) {
  std::map<std::uint64_t, BigInt> entries;
  for (std::uint64_t n = 1; n <= L; ++n) {
    const BigInt m = spec.multiplicity(n);
    if (!m.is_zero()) entries[n] = m;
  }
  return LengthSpectrum::finite(std::move(entries));
}

int cmd_eval(const std::string& machine_arg, const std::string& t_arg, const Dyadic& eps,
             bool require_enclosure, const std::string& diverge_above,
             std::uint64_t length_budget) {
  const MachineRef m = resolve_machine(machine_arg);
  const Temperature T = parse_temperature(t_arg);
  std::cout << "machine: " << m.describe() << "\n";
  std::cout << "T = " << T.str() << " (zone: "
            << (T.zone() == TempZone::sub_unit
                    ? "sub_unit"
                    : T.zone() == TempZone::unit ? "unit" : "super_unit")
            << ")\n";

  if (!diverge_above.empty()) {
    if (T.zone() != TempZone::super_unit)
      throw UsageError("--diverge-above requires T > 1");
    const BigRational M = parse_plain_rational(diverge_above, "--diverge-above");
    const auto outcome = detect_divergence(m.spectrum(), T, M, length_budget);
    switch (outcome.kind) {
      case DivergenceOutcome::Kind::crossed: {
        const Interval at = partial_Z(m.spectrum(), T, outcome.length, eps);
        std::cout << "divergence: partial Z exceeds " << diverge_above
                  << " at truncation length L = " << outcome.length
                  << " (certified lower bound " << trim_decimal(at.lo().to_decimal_string(), false)
                  << ")\n";
        break;
      }
      case DivergenceOutcome::Kind::certified_convergent:
        std::cout << "divergence: BudgetExhausted -- the series is certified convergent: "
                  << "Z(" << T.str() << ") <= "
                  << trim_decimal(outcome.certificate->to_decimal_string(), true)
                  << " never exceeds " << diverge_above << "\n";
        break;
      case DivergenceOutcome::Kind::budget_exhausted:
        std::cout << "divergence: BudgetExhausted -- no crossing within length budget "
                  << length_budget << " and no convergence certificate\n";
        break;
    }
    return 0;
  }

  const Precision prec(eps);
  const bool snapshot = m.spectrum_is_lower_bound();
  try {
    const ThermoReport r = eval_all(m.spectrum(), T, prec);
    if (snapshot) {
      std::cout << "mode: lower-bound domain snapshot (enumeration budget-bounded)\n"
                << "  Z is a certified lower bound of the full machine's Z; F an upper\n"
                << "  bound; E and S are exact values of the discovered sub-domain.\n";
    } else {
      std::cout << "mode: enclosure (width target " << eps.to_upper_science_string() << ")\n";
    }
    std::cout << bound_label(r.Z, 'Z') << "\n"
              << bound_label(r.F, 'F') << "\n"
              << bound_label(r.E, 'E') << "\n"
              << bound_label(r.S, 'S') << "\n";
    return 0;
  } catch (const NoConvergenceCertificate& e) {
    if (require_enclosure) throw;
    std::cout << "mode: lower bound (no convergence certificate: " << e.what() << ")\n";
  } catch (const PrecisionError& e) {
    if (require_enclosure) throw;
    std::cout << "mode: lower bound (certified width unreachable: " << e.what() << ")\n";
  }
  // Uncertified fallback: report the truncated-domain values, labeled.
  const LengthSpectrum trunc = truncate_spectrum(m.spectrum(), length_budget);
  const ThermoReport r = eval_all(trunc, T, prec);
  std::cout << "truncated domain at L = " << length_budget << ":\n";
  std::cout << "Z >= " << trim_decimal(r.Z.enclosure.lo().to_decimal_string(), false)
            << " (lower bound)\n";
  std::cout << "F <= " << trim_decimal(r.F.enclosure.hi().to_decimal_string(), true)
            << " (upper bound, from the Z lower bound)\n";
  std::cout << "E = " << r.E.enclosure.to_display_string()
            << " (truncated-domain value, no certificate)\n";
  std::cout << "S = " << r.S.enclosure.to_display_string()
            << " (truncated-domain value, no certificate)\n";
  return 0;
}

int cmd_sweep(const std::string& machine_arg, const std::string& grid_arg,
              const std::string& quantities, const Dyadic& eps, const std::string& out,
              const std::string& divergence_m, std::uint64_t length_budget, unsigned jobs) {
  const MachineRef m = resolve_machine(machine_arg);
  // parse and sort the grid
  std::vector<Temperature> grid;
  std::string token;
  std::istringstream stream(grid_arg);
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) grid.push_back(parse_temperature(token));
  }
  std::sort(grid.begin(), grid.end());
  const bool divergence_mode = !divergence_m.empty();
  for (const auto& T : grid) {
    if (divergence_mode && T.zone() != TempZone::super_unit)
      throw UsageError("divergence sweeps require every grid temperature > 1");
    if (!divergence_mode && T.zone() != TempZone::sub_unit)
      throw UsageError("enclosure sweeps require grid temperatures strictly inside (0,1)");
  }
  std::string letters = quantities.empty() ? "EFSZ" : quantities;
  std::sort(letters.begin(), letters.end());
  for (char c : letters)
    if (std::string("EFSZ").find(c) == std::string::npos)
      throw UsageError("--quantities must be a subset of ZFES");

  std::vector<SweepRow> rows;
  if (divergence_mode) {
    const BigRational M = parse_plain_rational(divergence_m, "--divergence-M");
    for (const auto& T : grid) {
      const auto outcome = detect_divergence(m.spectrum(), T, M, length_budget);
      SweepRow row{T, 'Z', "", "", "", outcome.length};
      if (outcome.kind == DivergenceOutcome::Kind::crossed) {
        row.lo = partial_Z(m.spectrum(), T, outcome.length, eps).lo().to_decimal_string();
      } else if (outcome.kind == DivergenceOutcome::Kind::certified_convergent) {
        row.hi = outcome.certificate->to_decimal_string();
        row.trunc_len = 0;
      }
      rows.push_back(std::move(row));
    }
  } else {
    struct Task {
      Temperature T;
      char letter;
    };
    std::vector<Task> tasks;
    for (const auto& T : grid)
      for (char c : letters) tasks.push_back({T, c});
    const Precision prec(eps);
    const auto worker = [&](const Task& t) {
      const Quantity q = t.letter == 'Z'   ? Quantity::Z
                         : t.letter == 'F' ? Quantity::F
                         : t.letter == 'E' ? Quantity::E
                                           : Quantity::S;
      const QuantityResult r = eval_quantity(q, m.spectrum(), t.T, prec);
      return SweepRow{t.T, t.letter, r.enclosure.lo().to_decimal_string(),
                      r.enclosure.hi().to_decimal_string(),
                      r.tail_bound.to_decimal_string(), r.truncation_length};
    };
    rows.resize(tasks.size(), SweepRow{Temperature(BigRational(1, 2)), 'Z', "", "", "", 0});
    if (jobs <= 1) {
      for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = worker(tasks[i]);
    } else {
      std::vector<std::future<void>> futures;
      std::atomic<std::size_t> next{0};
      for (unsigned w = 0; w < jobs; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
          for (std::size_t i = next++; i < tasks.size(); i = next++) rows[i] = worker(tasks[i]);
        }));
      }
      for (auto& f : futures) f.get();
    }
  }
  const std::string csv = sweep_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  }
  return 0;
}

int cmd_compose(const std::vector<std::string>& factor_args, const std::string& out) {
  std::vector<Machine> factors;
  for (const auto& arg : factor_args) {
    const MachineRef ref = resolve_machine(arg);
    if (ref.is_composite()) {
      for (const auto& f : ref.composite().factors()) factors.push_back(f);
    } else {
      factors.push_back(ref.machine());
    }
  }
  const CompositeMachine comp(std::move(factors));
  const std::string text = machine_spec_text(MachineRef(comp));
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << "wrote composite spec (" << comp.factors().size() << " factors) to " << out
              << "\n";
  }
  return 0;
}

int cmd_enumerate(std::uint64_t budget, const std::string& resume,
                  const std::string& schedule, const std::string& out) {
  EnumerationState state = resume.empty()
                               ? EnumerationState(schedule_from_name(schedule))
                               : load_checkpoint(resume);
  const Machine u = Machine::universal(0, state.schedule());
  state = enumerate_domain(u, state, budget);
  const std::string text = checkpoint_text(state);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << "budget " << state.budget() << " (spent " << state.spent() << "): "
              << state.discovered().size() << " programs discovered; checkpoint at " << out
              << "\n";
  }
  return 0;
}

int cmd_complexity(const std::string& machine_arg, const std::string& target_bits,
                   const std::string& target_real, std::uint64_t n_max, std::uint64_t max_len,
                   std::uint64_t steps, const std::string& out) {
  const MachineRef ref = resolve_machine(machine_arg);
  if (ref.is_composite()) throw UsageError("complexity probes need an executable machine");
  const Machine& m = ref.machine();
  if (!target_bits.empty()) {
    // the empty output word is spelled "lambda" on the command line
    const BitString target = target_bits == "lambda" ? BitString() : BitString(target_bits);
    const auto h = complexity_upper(m, target, max_len, steps);
    if (h) {
      std::cout << "h_upper(" << target_bits << ") = " << *h
                << "  (max_len=" << max_len << ", steps=" << steps << ")\n";
    } else {
      std::cout << "NotFound: no program of length <= " << max_len << " producing the target "
                << "within " << steps << " steps\n";
    }
    return 0;
  }
  const RealSource alpha =
      RealSource::rational(parse_plain_rational(target_real, "--target-real"));
  const CompressionProfile profile = compression_profile(m, alpha, n_max, max_len, steps);
  const std::string csv = profile_csv(profile);
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
    std::cout << "wrote " << profile.rows.size() << " rows to " << out << "\n";
  }
  return 0;
}

int cmd_probe(const std::string& machine_arg, const std::string& target_real,
              const std::string& t_arg, std::uint64_t n_max, std::uint64_t max_len,
              std::uint64_t steps) {
  const MachineRef ref = resolve_machine(machine_arg);
  if (ref.is_composite()) throw UsageError("probe needs an executable machine");
  const BigRational T = parse_plain_rational(t_arg, "--T");
  if (T < 0 || T > 1) throw UsageError("probe: --T must lie in [0, 1]");
  const RealSource alpha =
      RealSource::rational(parse_plain_rational(target_real, "--target-real"));
  const CompressionProfile profile =
      compression_profile(ref.machine(), alpha, n_max, max_len, steps);
  const auto deficiency = deficiency_probe(profile, T);
  std::cout << profile_csv(profile);
  if (deficiency) {
    std::cout << "deficiency_probe(T=" << t_arg << ") = " << numerator(*deficiency).str() << "/"
              << denominator(*deficiency).str()
              << "  (max of T*n - h_upper; descriptive statistic only)\n";
  } else {
    std::cout << "deficiency_probe(T=" << t_arg
              << ") = undefined (a profile row has no program found)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aitherm: validated thermodynamic quantities of prefix-free machines"};
  app.require_subcommand(1);

  std::string eps_text = "2^-30";
  app.add_option("--eps", eps_text, "target enclosure width (2^-k or num/den)")
      ->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate Z, F, E, S at one temperature");
  std::string eval_machine, eval_T, eval_diverge;
  bool eval_require = false;
  std::uint64_t eval_length_budget = 512;
  eval->add_option("machine", eval_machine, "builtin name or spec file")->required();
  eval->add_option("--T", eval_T, "temperature as num/den")->required();
  eval->add_flag("--require-enclosure", eval_require,
                 "fail (exit 2) instead of printing labeled lower bounds");
  eval->add_option("--diverge-above", eval_diverge,
                   "report the least L with certified partial Z > M (requires T > 1)");
  eval->add_option("--length-budget", eval_length_budget,
                   "truncation length for divergence scans and uncertified reports");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a temperature grid into CSV");
  std::string sweep_machine, sweep_grid, sweep_quantities = "ZFES", sweep_out, sweep_M;
  std::uint64_t sweep_length_budget = 2048;
  unsigned sweep_jobs = 1;
  sweep->add_option("machine", sweep_machine)->required();
  sweep->add_option("--grid", sweep_grid, "comma-separated rationals, e.g. 1/4,1/2,3/4")
      ->required();
  sweep->add_option("--quantities", sweep_quantities, "subset of ZFES");
  sweep->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");
  sweep->add_option("--divergence-M", sweep_M, "divergence mode: threshold M (grid must be > 1)");
  sweep->add_option("--length-budget", sweep_length_budget);
  sweep->add_option("--jobs", sweep_jobs, "concurrent evaluations");

  // compose
  auto* comp = app.add_subcommand("compose", "compose machines and write the composite spec");
  std::vector<std::string> compose_factors;
  std::string compose_out;
  comp->add_option("factors", compose_factors, "machines, in order")->required()->expected(-1);
  comp->add_option("--out", compose_out, "output spec path (stdout if omitted)");

  // enumerate
  auto* enu = app.add_subcommand("enumerate", "dovetail the universal machine's domain");
  std::uint64_t enum_budget = 0;
  std::string enum_resume, enum_schedule = "doubling", enum_out;
  enu->add_option("--budget", enum_budget, "extra simulation steps to grant")->required();
  enu->add_option("--resume", enum_resume, "checkpoint to continue from");
  enu->add_option("--schedule", enum_schedule, "doubling | linear");
  enu->add_option("--out", enum_out, "checkpoint output path (stdout if omitted)");

  // complexity
  auto* cplx = app.add_subcommand("complexity", "program-size complexity probes");
  std::string cplx_machine, cplx_bits, cplx_real, cplx_out;
  std::uint64_t cplx_nmax = 16, cplx_maxlen = 12, cplx_steps = 100000;
  cplx->add_option("machine", cplx_machine)->required();
  cplx->add_option("--target-bits", cplx_bits, "a single bit-string target");
  cplx->add_option("--target-real", cplx_real, "profile the prefixes of this rational");
  cplx->add_option("--n-max", cplx_nmax, "profile rows (prefix lengths)");
  cplx->add_option("--max-len", cplx_maxlen, "program search window");
  cplx->add_option("--budget", cplx_steps, "simulation steps per candidate");
  cplx->add_option("--out", cplx_out, "profile CSV path (stdout if omitted)");

  // probe
  auto* probe = app.add_subcommand("probe", "compression profile plus deficiency statistic");
  std::string probe_machine, probe_real, probe_T;
  std::uint64_t probe_nmax = 16, probe_maxlen = 12, probe_steps = 100000;
  probe->add_option("machine", probe_machine)->required();
  probe->add_option("--target-real", probe_real)->required();
  probe->add_option("--T", probe_T, "rate parameter in [0,1]")->required();
  probe->add_option("--n-max", probe_nmax);
  probe->add_option("--max-len", probe_maxlen);
  probe->add_option("--budget", probe_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Dyadic eps = parse_eps(eps_text);
    if (eval->parsed())
      return cmd_eval(eval_machine, eval_T, eps, eval_require, eval_diverge,
                      eval_length_budget);
    if (sweep->parsed())
      return cmd_sweep(sweep_machine, sweep_grid, sweep_quantities, eps, sweep_out, sweep_M,
                       sweep_length_budget, sweep_jobs);
    if (comp->parsed()) return cmd_compose(compose_factors, compose_out);
    if (enu->parsed()) return cmd_enumerate(enum_budget, enum_resume, enum_schedule, enum_out);
    if (cplx->parsed()) {
      if (cplx_bits.empty() == cplx_real.empty())
        throw UsageError("complexity: give exactly one of --target-bits / --target-real");
      return cmd_complexity(cplx_machine, cplx_bits, cplx_real, cplx_nmax, cplx_maxlen,
                            cplx_steps, cplx_out);
    }
    if (probe->parsed())
      return cmd_probe(probe_machine, probe_real, probe_T, probe_nmax, probe_maxlen,
                       probe_steps);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownMachine& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
