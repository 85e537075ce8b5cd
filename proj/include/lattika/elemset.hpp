#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace lattika {

/// Position of an element inside its lattice. Labels exist only for I/O.
using Elem = std::size_t;

inline constexpr std::size_t kMaxElements = 64;

/// A subset of a lattice's elements as a 64-bit membership word.
class ElemSet {
 public:
  using word_type = std::uint64_t;

  constexpr ElemSet() = default;
  constexpr explicit ElemSet(word_type bits) : bits_(bits) {}

  static constexpr ElemSet singleton(Elem e) { return ElemSet(word_type{1} << e); }
  static constexpr ElemSet full(std::size_t n) {
    return ElemSet(n >= 64 ? ~word_type{0} : (word_type{1} << n) - 1);
  }

  constexpr word_type bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Elem e) const { return (bits_ >> e) & 1u; }
  constexpr Elem first() const { return static_cast<Elem>(std::countr_zero(bits_)); }

  constexpr void insert(Elem e) { bits_ |= word_type{1} << e; }
  constexpr void erase(Elem e) { bits_ &= ~(word_type{1} << e); }

  constexpr bool subset_of(ElemSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(ElemSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr ElemSet operator|(ElemSet o) const { return ElemSet(bits_ | o.bits_); }
  constexpr ElemSet operator&(ElemSet o) const { return ElemSet(bits_ & o.bits_); }
  constexpr ElemSet minus(ElemSet o) const { return ElemSet(bits_ & ~o.bits_); }
  constexpr ElemSet& operator|=(ElemSet o) { bits_ |= o.bits_; return *this; }
  constexpr ElemSet& operator&=(ElemSet o) { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const ElemSet&) const = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;
    using pointer = const Elem*;
    using reference = Elem;

    constexpr iterator() = default;
    constexpr explicit iterator(word_type rest) : rest_(rest) {}
    constexpr Elem operator*() const { return static_cast<Elem>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;

   private:
    word_type rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Elem> to_vector() const { return {begin(), end()}; }

 private:
  word_type bits_ = 0;
};

/// Canonical enumeration order: smaller sets first, ties by numeric value.
constexpr bool canonical_less(ElemSet a, ElemSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() < b.bits();
}

}  // namespace lattika
