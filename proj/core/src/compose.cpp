#include "aitherm/compose.hpp"

#include <algorithm>

#include "aitherm/errors.hpp"

namespace aitherm {

namespace {

std::optional<Dyadic> product_bound(const std::optional<Dyadic>& a,
                                    const std::optional<Dyadic>& b, std::int64_t sig) {
  if (!a || !b) return std::nullopt;
  return (*a * *b).round_sig_up(sig);
}

}  // namespace

ConvolutionRule::ConvolutionRule(LengthSpectrum left, LengthSpectrum right)
    : left_(std::move(left)), right_(std::move(right)) {
  memo_.resize(2);  // m(1) = 0: a concatenation has length >= 2
}

void ConvolutionRule::ensure_prefix(std::uint64_t n) const {
  if (memo_.size() > n) return;
  const std::uint64_t target = std::max<std::uint64_t>(n + 1, memo_.size() * 2);
  for (std::uint64_t k = memo_.size(); k < target; ++k) {
    BigInt sum = 0;
    for (std::uint64_t i = 1; i + 1 <= k; ++i) {
      const BigInt a = left_.multiplicity(i);
      if (a.is_zero()) continue;
      const BigInt b = right_.multiplicity(k - i);
      if (b.is_zero()) continue;
      sum += a * b;
    }
    memo_.push_back(std::move(sum));
  }
}

BigInt ConvolutionRule::multiplicity(std::uint64_t n) const {
  if (n < 2) return 0;
  if (n > (1u << 20)) throw Error("convolution: length out of supported range");
  std::lock_guard<std::mutex> lock(mu_);
  ensure_prefix(n);
  return memo_[n];
}

std::string ConvolutionRule::formula() const {
  const auto side = [](const LengthSpectrum& s) {
    return s.is_finite() ? std::string("finite") : s.rule()->formula();
  };
  return "convolution[" + side(left_) + " (*) " + side(right_) + "]";
}

std::optional<Dyadic> ConvolutionRule::tail_upper(const BigRational& theta, std::uint64_t L,
                                                  std::int64_t bits) const {
  const std::uint64_t h = (L + 1) / 2;  // i + j >= L forces max(i, j) >= h
  const std::int64_t sig = bits + 16;
  const auto wa = left_.tail_upper(theta, h, bits);
  const auto wb = right_.tail_upper(theta, h, bits);
  const auto va = left_.total_upper(theta, bits);
  const auto vb = right_.total_upper(theta, bits);
  const auto t1 = product_bound(wa, vb, sig);
  const auto t2 = product_bound(va, wb, sig);
  if (!t1 || !t2) return std::nullopt;
  return *t1 + *t2;
}

std::optional<Dyadic> ConvolutionRule::weighted_tail_upper(const BigRational& theta,
                                                           std::uint64_t L,
                                                           std::int64_t bits) const {
  const std::uint64_t h = (L + 1) / 2;
  const std::int64_t sig = bits + 16;
  const auto wa = left_.tail_upper(theta, h, bits);
  const auto wb = right_.tail_upper(theta, h, bits);
  const auto va = left_.total_upper(theta, bits);
  const auto vb = right_.total_upper(theta, bits);
  const auto na = left_.weighted_tail_upper(theta, h, bits);
  const auto nb = right_.weighted_tail_upper(theta, h, bits);
  const auto nva = left_.weighted_total_upper(theta, bits);
  const auto nvb = right_.weighted_total_upper(theta, bits);
  const auto t1 = product_bound(na, vb, sig);
  const auto t2 = product_bound(wa, nvb, sig);
  const auto t3 = product_bound(nva, wb, sig);
  const auto t4 = product_bound(va, nb, sig);
  if (!t1 || !t2 || !t3 || !t4) return std::nullopt;
  return *t1 + *t2 + *t3 + *t4;
}

std::optional<Dyadic> ConvolutionRule::total_upper(const BigRational& theta,
                                                   std::int64_t bits) const {
  // V_ab <= V_a V_b: upper summation over the product index set.
  return product_bound(left_.total_upper(theta, bits), right_.total_upper(theta, bits),
                       bits + 16);
}

std::optional<Dyadic> ConvolutionRule::weighted_total_upper(const BigRational& theta,
                                                            std::int64_t bits) const {
  const std::int64_t sig = bits + 16;
  const auto t1 = product_bound(left_.weighted_total_upper(theta, bits),
                                right_.total_upper(theta, bits), sig);
  const auto t2 = product_bound(left_.total_upper(theta, bits),
                                right_.weighted_total_upper(theta, bits), sig);
  if (!t1 || !t2) return std::nullopt;
  return *t1 + *t2;
}

LengthSpectrum convolve_spectra(const LengthSpectrum& a, const LengthSpectrum& b) {
  if (a.is_finite() && b.is_finite()) {
    std::map<std::uint64_t, BigInt> out;
    for (const auto& [i, ma] : a.finite_entries())
      for (const auto& [j, mb] : b.finite_entries()) out[i + j] += ma * mb;
    return LengthSpectrum::finite(std::move(out));
  }
  return LengthSpectrum::from_rule(std::make_shared<ConvolutionRule>(a, b));
}

CompositeMachine::CompositeMachine(std::vector<Machine> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw EmptyDomain("compose: at least one factor required");
  for (const auto& f : factors_) {
    if (!f.spectrum().first_nonzero())
      throw EmptyDomain("compose: factor '" + f.name() + "' has an empty domain" +
                        (f.kind() == Machine::Kind::universal ? " (no programs discovered yet)"
                                                              : ""));
  }
  spectrum_ = factors_.front().spectrum();
  for (std::size_t i = 1; i < factors_.size(); ++i)
    spectrum_ = convolve_spectra(spectrum_, factors_[i].spectrum());
}

bool CompositeMachine::spectrum_is_lower_bound() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Machine& m) { return m.spectrum_is_lower_bound(); });
}

std::string CompositeMachine::describe() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " (o) ";
    s += factors_[i].name();
  }
  return s;
}

bool CompositeMachine::materializable() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Machine& m) {
    return m.kind() != Machine::Kind::spectrum;
  });
}

PrefixSet CompositeMachine::materialize_domain(std::size_t cap) const {
  if (!materializable())
    throw Error("materialize: a spectrum-only factor has no explicit domain");
  std::vector<BitString> acc = {BitString()};
  for (const auto& f : factors_) {
    const PrefixSet dom = f.domain();
    if (acc.size() * dom.size() > cap)
      throw Error("materialize: composite domain exceeds cap");
    std::vector<BitString> next;
    next.reserve(acc.size() * dom.size());
    for (const auto& head : acc)
      for (const auto& p : dom.members()) next.push_back(head + p);
    acc = std::move(next);
  }
  return PrefixSet(std::move(acc));
}

Table CompositeMachine::materialize_table(std::size_t cap) const {
  const Machine& first = factors_.front();
  if (first.kind() == Machine::Kind::spectrum)
    throw Error("materialize_table: factor 1 has no outputs");
  // output of p1 p2 ... pN is C1(p1)
  std::vector<std::pair<BitString, BitString>> heads;
  if (first.kind() == Machine::Kind::table) {
    for (const auto& [p, out] : first.table_mapping()) heads.emplace_back(p, out);
  } else {
    for (const auto& d : first.enumeration().discovered()) heads.emplace_back(d.program, d.output);
  }
  std::vector<std::pair<BitString, BitString>> acc;
  for (auto& h : heads) acc.push_back(std::move(h));
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    const PrefixSet dom = factors_[i].domain();
    if (acc.size() * dom.size() > cap) throw Error("materialize: composite domain exceeds cap");
    std::vector<std::pair<BitString, BitString>> next;
    next.reserve(acc.size() * dom.size());
    for (const auto& [head, out] : acc)
      for (const auto& p : dom.members()) next.emplace_back(head + p, out);
    acc = std::move(next);
  }
  Table t;
  for (auto& [p, out] : acc) t[p] = out;
  return t;
}

CompositeMachine compose(std::vector<Machine> machines) {
  return CompositeMachine(std::move(machines));
}

CompositeMachine power(const Machine& m, std::uint64_t n) {
  if (n < 1) throw Error("power: n >= 1 required");
  std::vector<Machine> factors(n, m);
  return CompositeMachine(std::move(factors));
}

CompositeMachine vn_family(const Machine& v, const Machine& c, std::uint64_t n) {
  if (n < 1) throw Error("vn_family: n >= 1 required");
  const PredicateReport pred = check_predicates(c);
  if (pred.physically_reasonable != Tristate::yes)
    throw PredicateFailed("vn_family: '" + c.name() + "' is not certified physically reasonable (" +
                          tristate_name(pred.physically_reasonable) + ")");
  if (pred.computable_measure != Tristate::yes)
    throw PredicateFailed("vn_family: '" + c.name() +
                          "' is not certified a computable measure machine (" +
                          tristate_name(pred.computable_measure) + ")");
  if (!v.spectrum().first_nonzero())
    throw EmptyDomain("vn_family: v has an empty domain");
  std::vector<Machine> factors;
  factors.reserve(n + 1);
  factors.push_back(v);
  for (std::uint64_t i = 0; i < n; ++i) factors.push_back(c);
  return CompositeMachine(std::move(factors));
}

}  // namespace aitherm
