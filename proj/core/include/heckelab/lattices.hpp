#pragma once

// Positive-definite quadratic lattices of rank 2 and 4 given by exact Gram
// matrices. The discriminant is always the Gram determinant
// q(e)q(f) - q(e,f)^2 (never b^2 - 4ac).

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "heckelab/rational.hpp"

namespace heckelab {

class GramForm {
 public:
  // Row-major rank x rank symmetric matrix; throws ValidationError unless
  // rank is 2 or 4 and the form is positive definite.
  GramForm(int rank, std::vector<ExactRational> entries);

  static GramForm binary(ExactRational qe, ExactRational qef, ExactRational qf);
  static GramForm diagonal(int rank, ExactRational scale);

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] const ExactRational& at(int i, int j) const { return g_[static_cast<std::size_t>(i * rank_ + j)]; }
  [[nodiscard]] const std::vector<ExactRational>& entries() const { return g_; }
  [[nodiscard]] ExactRational disc() const;
  // q(v) for an integer coordinate vector of length rank.
  [[nodiscard]] ExactRational value(const std::vector<std::int64_t>& v) const;

  friend bool operator==(const GramForm&, const GramForm&) = default;

 private:
  int rank_;
  std::vector<ExactRational> g_;
};

ExactRational determinant(int n, std::vector<ExactRational> m);

// Gauss-Lagrange reduction: q(e) <= q(f) and 2|q(e,f)| <= q(e).
GramForm lagrange_reduce(const GramForm& form);
bool is_lagrange_reduced(const GramForm& form);

// Integers N <= n with q(l) = N for some lattice vector l.
std::set<std::int64_t> represented_values(const GramForm& form, std::int64_t n);

// 1 + 8 sqrt(n) + 16 n / sqrt(disc)
double counting_bound(std::int64_t n, const ExactRational& disc);

// |{v : q(v) = N}|
std::uint64_t fiber_count(const GramForm& form, std::int64_t N);

// |{v : q(v) <= N}|, zero vector included.
std::uint64_t ball_count(const GramForm& form, std::int64_t N);

// counts[k] = |{v : q(v) = k}| for k = 0..n (integer values only).
std::vector<std::uint64_t> fiber_histogram(const GramForm& form, std::int64_t n);

struct DenseFiberSet {
  std::vector<std::int64_t> members;  // {N <= n : fiber_count(N) >= eps1 N}
  double chain_lhs = 0;               // eps1 |B| (|B| + 1) / 2
  std::uint64_t ball = 0;             // ball_count(form, max B), 0 if B empty
  bool chain_holds = true;
};

DenseFiberSet dense_fiber_set(const GramForm& form, double eps1, std::int64_t n);

// Binary form a x^2 + b xy + c y^2.
struct BinaryForm {
  std::int64_t a, b, c;
  [[nodiscard]] std::int64_t discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

// Reduced primitive forms of a negative discriminant (one per proper ideal class).
std::vector<BinaryForm> reduced_primitive_forms(std::int64_t disc);

// End(C/O) as the norm form of the order of discriminant f^2 d_K.
GramForm end_lattice(std::int64_t fundamental_disc, std::int64_t conductor);

// Hom(C/O, C/a) = a with q(lambda) = N(lambda)/N(a), for the proper ideal a
// given by its primitive form.
GramForm hom_lattice(std::int64_t fundamental_disc, std::int64_t conductor, const BinaryForm& ideal);

struct HomDiscReport {
  ExactRational end_disc;
  ExactRational hom_disc;
  bool holds = false;   // |disc End| >= |disc Hom|
  bool strict = false;  // ... with strict inequality
};

// Compares Gram determinants of End(E) and Hom(E, E') for E = C/O, E' = C/a.
// ideal defaults to the principal class. Throws ValidationError on bad
// discriminants and DomainError ("unsupported configuration") on non-proper ideals.
HomDiscReport ideal_hom_disc_check(std::int64_t fundamental_disc, std::int64_t conductor,
                                   std::optional<BinaryForm> ideal = std::nullopt);

struct HomCountRow {
  BinaryForm ideal;
  std::size_t represented;  // |{N <= n represented by Hom}|
  double bound;             // counting_bound(n, disc End)
};

// Represented-degree counts of every Hom lattice of the order against the bound.
std::vector<HomCountRow> hom_representation_check(std::int64_t fundamental_disc, std::int64_t conductor,
                                                  std::int64_t n);

}  // namespace heckelab
