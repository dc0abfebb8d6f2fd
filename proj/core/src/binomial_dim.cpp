#include "kcone/binomial_dim.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace kcone {

std::int64_t binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  if (!out.fits_slong_p()) throw std::overflow_error("binomial coefficient overflows");
  return out.get_si();
}

BinomialCombination::BinomialCombination(std::vector<std::int64_t> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

BinomialCombination BinomialCombination::term(long p, std::int64_t c) {
  if (p < 0 || c == 0) return {};
  std::vector<std::int64_t> v(static_cast<std::size_t>(p) + 1, 0);
  v.back() = c;
  return BinomialCombination(std::move(v));
}

void BinomialCombination::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t BinomialCombination::evaluate(long r) const {
  std::int64_t total = 0;
  for (std::size_t p = 0; p < coeffs_.size(); ++p) {
    total += coeffs_[p] * binom(r, static_cast<long>(p));
  }
  return total;
}

BinomialCombination& BinomialCombination::operator+=(const BinomialCombination& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t p = 0; p < other.coeffs_.size(); ++p) coeffs_[p] += other.coeffs_[p];
  trim();
  return *this;
}

BinomialCombination BinomialCombination::scaled(std::int64_t c) const {
  std::vector<std::int64_t> v = coeffs_;
  for (auto& x : v) x *= c;
  return BinomialCombination(std::move(v));
}

std::string BinomialCombination::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    std::string piece;
    const std::int64_t mag = c < 0 ? -c : c;
    if (i == 0) {
      piece = std::to_string(mag);
    } else {
      piece = (mag == 1 ? "" : std::to_string(mag) + "*") + "binom(r," + std::to_string(i) + ")";
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + piece;
    } else {
      out += (c < 0 ? " - " : " + ") + piece;
    }
  }
  return out;
}

}  // namespace kcone
