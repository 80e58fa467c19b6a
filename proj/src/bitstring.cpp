#include "qkd/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace qkd {

BitString::BitString(std::size_t n) : words_((n + 63) / 64, 0), n_(n) {}

void BitString::set(std::size_t i, bool b) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (b)
    words_[i >> 6] |= mask;
  else
    words_[i >> 6] &= ~mask;
}

void BitString::push_back(bool b) {
  if ((n_ & 63) == 0) words_.push_back(0);
  ++n_;
  set(n_ - 1, b);
}

void BitString::append(const BitString& other) {
  if ((n_ & 63) == 0) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
    n_ += other.n_;
    return;
  }
  for (std::size_t i = 0; i < other.n_; ++i) push_back(other.get(i));
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitString BitString::from_string(const std::string& s) {
  BitString b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitString: expected '0' or '1'");
  }
  return b;
}

}  // namespace qkd
