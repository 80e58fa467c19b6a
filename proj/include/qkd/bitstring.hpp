#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qkd {

/// Bit sequence packed little-endian into 64-bit words; bits past size() are zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool b);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void push_back(bool b);
  void append(const BitString& other);

  std::size_t popcount() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  std::string to_string() const;  // '0'/'1' characters
  static BitString from_string(const std::string& s);

  bool operator==(const BitString& o) const { return n_ == o.n_ && words_ == o.words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
};

}  // namespace qkd
