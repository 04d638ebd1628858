#include "treevar/field.hpp"

#include "treevar/error.hpp"

namespace treevar {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) {
    throw Error(ErrorKind::BadRange, "prime must be below 2^31");
  }
}

Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::BadRange, "inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Elem>(result);
}

SmallField::SmallField(std::uint32_t q) : q_(q) {
  if (q != 2 && q != 3 && q != 4 && q != 5) {
    throw Error(ErrorKind::BadRange, "field size must be one of 2, 3, 4, 5");
  }
  for (Elem a = 0; a < q; ++a) {
    for (Elem b = 0; b < q; ++b) {
      if (q == 4) {
        add_[a * 5 + b] = a ^ b;
        // (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
        const Elem a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        const Elem c0 = (a0 & b0) ^ (a1 & b1);
        const Elem c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        mul_[a * 5 + b] = c0 | (c1 << 1);
      } else {
        add_[a * 5 + b] = (a + b) % q;
        mul_[a * 5 + b] = (a * b) % q;
      }
    }
    neg_[a] = q == 4 ? a : (q - a) % q;
  }
  primitive_ = q == 2 ? 1 : 2;  // 2 generates GF(3)^*, GF(5)^*, and w generates GF(4)^*
}

Elem SmallField::inv(Elem a) const {
  for (Elem b = 1; b < q_; ++b) {
    if (mul(a, b) == 1) return b;
  }
  throw Error(ErrorKind::BadRange, "inverse of zero");
}

std::vector<Elem> SmallField::additive_basis() const {
  if (q_ == 4) return {1, 2};
  return {1};
}

}  // namespace treevar
