#include "aitherm/bitstring.hpp"

#include <algorithm>

namespace aitherm {

bool is_prefix_free(std::span<const BitString> strings) {
  if (strings.size() < 2) return true;
  std::vector<std::string> sorted;
  sorted.reserve(strings.size());
  for (const auto& s : strings) sorted.push_back(s.str());
  std::sort(sorted.begin(), sorted.end());
  // After a plain lexicographic sort, any prefix pair appears adjacent:
  // everything between a string and its extension shares that prefix.
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const std::string& a = sorted[i];
    const std::string& b = sorted[i + 1];
    if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) return false;
  }
  return true;
}

BitString nth_string_of_length(std::size_t len, std::uint64_t lex_index) {
  std::string s(len, '0');
  for (std::size_t i = 0; i < len; ++i) {
    if ((lex_index >> (len - 1 - i)) & 1u) s[i] = '1';
  }
  return BitString(s);
}

PrefixSet::PrefixSet(std::vector<BitString> members) : members_(std::move(members)) {
  if (!is_prefix_free(members_))
    throw NotPrefixFree("PrefixSet: members are not prefix-free (or contain duplicates)");
  std::sort(members_.begin(), members_.end(), canonical_less);
}

}  // namespace aitherm
