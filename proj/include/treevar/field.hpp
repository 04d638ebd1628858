#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace treevar {

using Elem = std::uint32_t;

bool is_prime(std::uint64_t value);

/// Integers modulo a prime p < 2^31. Products are reduced in 64-bit arithmetic.
class PrimeField {
 public:
  /// Throws NotPrime.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t order() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  Elem add(Elem a, Elem b) const noexcept {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// a - b * c
  Elem sub_mul(Elem a, Elem b, Elem c) const noexcept { return sub(a, mul(b, c)); }
  Elem inv(Elem a) const;
  Elem from_int(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

 private:
  std::uint32_t p_;
};

/// GF(q) for q in {2, 3, 4, 5}, table driven. GF(4) = GF(2)[w]/(w^2 + w + 1),
/// with element a + b*w encoded as a + 2b.
class SmallField {
 public:
  /// Throws BadRange for unsupported q.
  explicit SmallField(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return q_ == 4 ? 2 : q_; }

  Elem add(Elem a, Elem b) const noexcept { return add_[a * 5 + b]; }
  Elem sub(Elem a, Elem b) const noexcept { return add_[a * 5 + neg_[b]]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * 5 + b]; }
  Elem sub_mul(Elem a, Elem b, Elem c) const noexcept { return sub(a, mul(b, c)); }
  Elem inv(Elem a) const;

  /// Generator of the multiplicative group.
  Elem primitive() const noexcept { return primitive_; }
  /// Basis of GF(q) over its prime field.
  std::vector<Elem> additive_basis() const;

 private:
  std::uint32_t q_;
  Elem primitive_ = 1;
  std::array<Elem, 25> add_{};
  std::array<Elem, 25> mul_{};
  std::array<Elem, 5> neg_{};
};

}  // namespace treevar
