#pragma once

// Graded pieces of the Kähler forms Omega^j_{R/Q}, the de Rham differential
// between them, and the torsion (vertex-supported) subspaces.
//
// (Omega^j)_t is presented as R_{t-j} (x) Lambda^j Q^{N+1} modulo the span of
// m * dg ^ dx_I' for generators g, (j-1)-subsets I' and m in R. Ambient
// coordinates are (subset index, standard monomial index) flattened
// subset-major.

#include "kcone/exact_matrix.hpp"
#include "kcone/graded_ring.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace kcone {

using Subset = std::vector<std::size_t>;

// Increasing subsets of {0..n-1} of size k, in lexicographic order.
std::vector<Subset> subsets_of_size(std::size_t n, std::size_t k);

struct FormsPiece {
  std::size_t j = 0;
  int t = 0;
  std::size_t block = 0;             // dim R_{t-j}
  std::vector<Subset> subsets;       // the j-subsets, lexicographic
  std::map<Subset, std::size_t> subset_index;
  std::size_t ambient_dim = 0;       // subsets.size() * block
  std::size_t relation_rows = 0;     // relation generators before reduction
  ReducedRowSpace relations;         // RREF of the relation span
  std::size_t dimension = 0;         // ambient_dim - rank(relations)

  // Basis element b is the ambient unit vector at relations.free_columns()[b].
  std::size_t representative_column(std::size_t b) const {
    return relations.free_columns()[b];
  }
  std::size_t column(std::size_t subset, std::size_t monomial) const {
    return subset * block + monomial;
  }
  // Coordinates in the quotient basis of an ambient vector.
  Vector coordinates(const Vector& ambient) const;
  SparseRow coordinates(const SparseRow& ambient) const;
};

struct TorsionPiece {
  std::size_t dimension = 0;
  std::vector<Vector> basis;  // in FormsPiece basis coordinates
  int exponent = 0;           // E at which the kernel stabilized
};

struct TorsionReport {
  std::size_t j = 0;
  std::map<int, std::size_t> dims;
  int exponent = 0;  // largest E used across the window
  bool verified_stable = false;

  std::size_t total() const;
};

class FormsComplex {
 public:
  // `exponent_cap` bounds E in the torsion computation; 0 makes every torsion
  // query fail with StabilizationError.
  explicit FormsComplex(const GradedQuotient& q, int exponent_cap = 16);

  FormsComplex(const FormsComplex&) = delete;
  FormsComplex& operator=(const FormsComplex&) = delete;

  const GradedQuotient& quotient() const { return q_; }
  std::size_t num_vars() const { return q_.num_vars(); }
  int exponent_cap() const { return cap_; }

  // Memoized; safe to call concurrently. j = 0 gives R_t with no relations;
  // j > N+1 or t < j gives the zero piece.
  const FormsPiece& piece(std::size_t j, int t) const;

  // d: (Omega^j)_t -> (Omega^{j+1})_t in quotient-basis coordinates
  // (rows: target basis, columns: source basis).
  ExactMatrix de_rham_matrix(std::size_t j, int t) const;

  // Multiplication by a monomial u of degree e: (Omega^j)_t -> (Omega^j)_{t+e}.
  ExactMatrix multiplication_matrix(std::size_t j, int t, const Exponents& u) const;

  // Kernel of omega -> (x_0^E omega, ..., x_N^E omega), E raised from 1 until
  // two consecutive kernels have equal dimension.
  const TorsionPiece& torsion_piece(std::size_t j, int t) const;

  // verified_stable holds iff the last three degrees of the window carry no torsion.
  TorsionReport torsion_report(std::size_t j, int t_min, int t_max) const;

  // Rank of d restricted to (tors Omega^j)_t. Throws std::logic_error if the
  // image leaves tors Omega^{j+1}.
  std::size_t torsion_d_rank(std::size_t j, int t) const;

  // dim (tors Omega^j / d tors Omega^{j-1})_t; j = 0 gives dim (tors R)_t.
  std::size_t torsion_quotient_dim(std::size_t j, int t) const;

 private:
  std::unique_ptr<FormsPiece> build_piece(std::size_t j, int t) const;
  std::unique_ptr<TorsionPiece> build_torsion(std::size_t j, int t) const;
  // Images of the basis of (Omega^j)_t under omega -> (x_k^e omega)_k.
  std::vector<SparseRow> stacked_images(std::size_t j, int t, int e) const;
  SparseRow multiply_basis_element(std::size_t j, int t, std::size_t b, const Exponents& u) const;

  template <class T>
  struct Slot {
    std::once_flag once;
    std::unique_ptr<T> value;
  };
  template <class T>
  const T& memo(std::map<std::pair<std::size_t, int>, std::unique_ptr<Slot<T>>>& slots,
                std::size_t j, int t, std::unique_ptr<T> (FormsComplex::*build)(std::size_t, int)
                                          const) const;

  const GradedQuotient& q_;
  int cap_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, int>, std::unique_ptr<Slot<FormsPiece>>> pieces_;
  mutable std::map<std::pair<std::size_t, int>, std::unique_ptr<Slot<TorsionPiece>>> torsion_;
};

}  // namespace kcone
