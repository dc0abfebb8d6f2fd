#pragma once

// Polynomial rings Q[x_0..x_N] with the standard grading, homogeneous
// polynomials, and the text parser for them.

#include "kcone/exact_matrix.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kcone {

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Graded reverse lexicographic comparison on monomials of equal length.
// Returns <0, 0, >0 as a is smaller, equal, larger than b.
int grevlex_compare(const Exponents& a, const Exponents& b);

struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return grevlex_compare(a, b) > 0;
  }
};

// All exponent vectors of total degree t in nvars variables, in decreasing
// grevlex order (so the first column of a degree piece is the largest
// monomial).
std::vector<Exponents> monomials_of_degree(std::size_t nvars, int t);

// Number of monomials of degree t in nvars variables; 0 for t < 0.
std::size_t monomial_count(std::size_t nvars, int t);

class RingContext {
 public:
  // Throws InvalidInput on fewer than two variables or duplicate names.
  explicit RingContext(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  long index_of(std::string_view name) const;

  friend bool operator==(const RingContext& a, const RingContext& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const RingContext>;

RingPtr make_ring(std::vector<std::string> names);

// Terms keyed by exponent vector, largest monomial first; no zero coefficient.
using TermMap = std::map<Exponents, Scalar, GrevlexGreater>;

// Homogeneous polynomial. Construction checks homogeneity.
class HPoly {
 public:
  HPoly(RingPtr ring, int degree);  // the zero form of the given degree
  HPoly(RingPtr ring, TermMap terms);  // degree read off the terms; throws if mixed

  static HPoly monomial(RingPtr ring, const Exponents& e, Scalar coeff = 1);

  const RingContext& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  HPoly derivative(std::size_t var) const;
  HPoly operator*(const HPoly& other) const;
  HPoly operator+(const HPoly& other) const;
  HPoly operator-(const HPoly& other) const;
  HPoly scaled(const Scalar& c) const;

  // Substitute x_i -> sum_j m[i][j] x_j (linear change of coordinates).
  HPoly linear_substitution(const std::vector<std::vector<Scalar>>& m) const;

  std::string to_string() const;

  friend bool operator==(const HPoly& a, const HPoly& b) {
    return *a.ring_ == *b.ring_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  RingPtr ring_;
  int degree_ = 0;
  TermMap terms_;
};

// Parses an arithmetic expression in the ring's variables: integer or
// rational literals (3, -2/5), + - * ^, parentheses, optional '*' between
// factors, whitespace ignored. Throws ParseError (position-reported) on bad
// syntax or unknown variables and InvalidInput on non-homogeneous results.
HPoly parse_homogeneous(std::string_view text, const RingPtr& ring);

}  // namespace kcone
