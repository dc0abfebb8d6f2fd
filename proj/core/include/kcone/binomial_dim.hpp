#pragma once

// Dimensions that depend on the transcendence degree r of the coefficient
// field, kept as finite sums sum_p c_p * binom(r, p).

#include <cstdint>
#include <string>
#include <vector>

namespace kcone {

// binom(n, k) for n >= 0; 0 when k < 0, k > n or n < 0.
std::int64_t binom(long n, long k);

class BinomialCombination {
 public:
  BinomialCombination() = default;
  explicit BinomialCombination(std::vector<std::int64_t> coeffs);

  static BinomialCombination constant(std::int64_t c) { return term(0, c); }
  // c * binom(r, p); zero when p < 0.
  static BinomialCombination term(long p, std::int64_t c);

  // Coefficients c_0, c_1, ... with no trailing zeros.
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  std::int64_t evaluate(long r) const;

  BinomialCombination& operator+=(const BinomialCombination& other);
  friend BinomialCombination operator+(BinomialCombination a, const BinomialCombination& b) {
    return a += b;
  }
  BinomialCombination scaled(std::int64_t c) const;

  // "0", "3", "binom(r,2) + 2*binom(r,1)", highest p first.
  std::string to_string() const;

  friend bool operator==(const BinomialCombination&, const BinomialCombination&) = default;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
};

struct TransDeg {
  bool symbolic = true;
  long value = 0;

  static TransDeg symbolic_r() { return {}; }
  static TransDeg numeric(long r) { return {false, r}; }
};

}  // namespace kcone
