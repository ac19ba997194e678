#include "aitherm/universal.hpp"

#include <limits>
#include <map>

namespace aitherm {

namespace {

// p = 0^l 1 s with |s| = l: the self-delimiting mirror encoding.
std::optional<BitString> decode_mirror(const BitString& p) {
  std::size_t l = 0;
  while (l < p.length() && p.bit(l) == '0') ++l;
  if (l == p.length()) return std::nullopt;      // no separator
  const std::size_t payload = p.length() - l - 1;
  if (payload != l) return std::nullopt;         // wrong payload length
  return BitString(p.str().substr(l + 1));
}

class MirrorSimulator final : public Simulator {
 public:
  explicit MirrorSimulator(bool slow) : slow_(slow) {}
  std::string name() const override { return slow_ ? "slow_mirror" : "mirror"; }
  std::optional<SimOutcome> evaluate(const BitString& p) const override {
    const auto s = decode_mirror(p);
    if (!s) return std::nullopt;
    std::uint64_t cost;
    if (slow_) {
      cost = p.length() >= 62 ? (std::numeric_limits<std::uint64_t>::max() / 2)
                              : (std::uint64_t(1) << p.length());
    } else {
      cost = p.length();
    }
    return SimOutcome{*s, cost};
  }

 private:
  bool slow_;
};

class TableSimulator final : public Simulator {
 public:
  TableSimulator(std::string name, std::map<std::string, std::string> table)
      : name_(std::move(name)), table_(std::move(table)) {}
  std::string name() const override { return name_; }
  std::optional<SimOutcome> evaluate(const BitString& p) const override {
    const auto it = table_.find(p.str());
    if (it == table_.end()) return std::nullopt;
    return SimOutcome{BitString(it->second), p.length()};
  }

 private:
  std::string name_;
  std::map<std::string, std::string> table_;
};

}  // namespace

const std::vector<std::shared_ptr<const Simulator>>& bundled_simulators() {
  static const std::vector<std::shared_ptr<const Simulator>> registry = {
      std::make_shared<MirrorSimulator>(true),
      std::make_shared<MirrorSimulator>(false),
      std::make_shared<TableSimulator>("two_level",
                                       std::map<std::string, std::string>{{"1", ""}, {"01", "0"}}),
      std::make_shared<TableSimulator>(
          "three_level",
          std::map<std::string, std::string>{{"1", ""}, {"01", "0"}, {"001", "00"}}),
  };
  return registry;
}

std::optional<std::pair<std::size_t, BitString>> decode_universal_program(const BitString& q) {
  std::size_t zeros = 0;
  while (zeros < q.length() && q.bit(zeros) == '0') ++zeros;
  if (zeros == q.length()) return std::nullopt;  // all zeros: no index separator
  const std::size_t index = zeros + 1;
  if (index > bundled_simulators().size()) return std::nullopt;
  return std::make_pair(index, BitString(q.str().substr(index)));
}

}  // namespace aitherm
