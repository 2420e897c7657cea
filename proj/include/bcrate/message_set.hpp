#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcrate {

inline constexpr int kMaxMessages = 64;

/// Subset of messages [0, 64) stored as a bitmask.
class MessageSet {
 public:
  constexpr MessageSet() = default;
  constexpr explicit MessageSet(std::uint64_t bits) : bits_(bits) {}
  MessageSet(std::initializer_list<int> elements) {
    for (int e : elements) insert(e);
  }

  static constexpr MessageSet full(int n) {
    return MessageSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr MessageSet singleton(int e) { return MessageSet(std::uint64_t{1} << e); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  void insert(int e) {
    if (e < 0 || e >= kMaxMessages) throw std::out_of_range("message index out of range");
    bits_ |= std::uint64_t{1} << e;
  }
  constexpr void erase(int e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr bool subset_of(MessageSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(MessageSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr MessageSet operator|(MessageSet o) const { return MessageSet(bits_ | o.bits_); }
  constexpr MessageSet operator&(MessageSet o) const { return MessageSet(bits_ & o.bits_); }
  constexpr MessageSet operator-(MessageSet o) const { return MessageSet(bits_ & ~o.bits_); }
  constexpr MessageSet& operator|=(MessageSet o) { bits_ |= o.bits_; return *this; }
  constexpr MessageSet& operator&=(MessageSet o) { bits_ &= o.bits_; return *this; }
  constexpr MessageSet& operator-=(MessageSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const MessageSet&) const = default;
  constexpr auto operator<=>(const MessageSet&) const = default;

  /// Smallest element; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// "{0,2,5}".
inline std::string to_string(MessageSet s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

}  // namespace bcrate
