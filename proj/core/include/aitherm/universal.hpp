// The bundled universal machine's simulator registry.
//
// U(0^(i-1) 1 p) = M_i(p) over the fixed list below. The unary index prefix
// keeps Dom U prefix-free: two programs with the same index inherit
// prefix-freeness from Dom M_i, and different indices already differ within
// the prefix. U simulates every listed machine with constant overhead i, so
// it is optimal by construction relative to the enumerated family (see the
// project README for the two-line argument).
//
// Registry (1-based):
//   M_1  slow mirror: p = 0^l 1 s with |s| = l, output s, cost 2^|p|
//   M_2  mirror:      same domain and outputs, cost |p|
//   M_3  the two-level table {1 -> lambda, 01 -> 0}
//   M_4  the table {1 -> lambda, 01 -> 0, 001 -> 00}
// M_1 before M_2 makes shorter programs slower: larger step budgets can
// lower program-size upper bounds, never raise them.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aitherm/bitstring.hpp"

namespace aitherm {

struct SimOutcome {
  BitString output;
  std::uint64_t cost = 0;  // simulation steps to halt
};

class Simulator {
 public:
  virtual ~Simulator() = default;
  virtual std::string name() const = 0;
  // nullopt iff p is outside this simulator's (decidable) domain.
  virtual std::optional<SimOutcome> evaluate(const BitString& p) const = 0;
};

const std::vector<std::shared_ptr<const Simulator>>& bundled_simulators();

// Split 0^(i-1) 1 p -> (i, p); nullopt if q has no '1' or i exceeds the
// registry (then q is not in Dom U).
std::optional<std::pair<std::size_t, BitString>> decode_universal_program(const BitString& q);

}  // namespace aitherm
