#include "heckelab/lattices.hpp"

#include <cmath>
#include <numeric>

#include "heckelab/arith.hpp"
#include "heckelab/error.hpp"
#include "heckelab/parallel.hpp"

namespace heckelab {

namespace {

std::vector<ExactRational> minor(const std::vector<ExactRational>& m, int n, int k) {
  std::vector<ExactRational> out;
  out.reserve(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.push_back(m[static_cast<std::size_t>(i * n + j)]);
  return out;
}

// Exact inverse by Gauss-Jordan elimination.
std::vector<ExactRational> inverse(int n, std::vector<ExactRational> m) {
  std::vector<ExactRational> inv(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1;
  auto at = [n](std::vector<ExactRational>& v, int i, int j) -> ExactRational& {
    return v[static_cast<std::size_t>(i * n + j)];
  };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && at(m, piv, col) == 0) ++piv;
    if (piv == n) throw DomainError("singular Gram matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(at(m, col, j), at(m, piv, j));
      std::swap(at(inv, col, j), at(inv, piv, j));
    }
    const ExactRational p = at(m, col, col);
    for (int j = 0; j < n; ++j) {
      at(m, col, j) = at(m, col, j) / p;
      at(inv, col, j) = at(inv, col, j) / p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || at(m, i, col) == 0) continue;
      const ExactRational f = at(m, i, col);
      for (int j = 0; j < n; ++j) {
        at(m, i, j) -= f * at(m, col, j);
        at(inv, i, j) -= f * at(inv, col, j);
      }
    }
  }
  return inv;
}

// Gram matrix scaled to integers: q(v) = qint(v) / scale.
struct IntegerGram {
  int rank;
  std::int64_t scale;
  std::vector<std::int64_t> g;
};

IntegerGram integerize(const GramForm& form) {
  std::int64_t l = 1;
  for (const ExactRational& e : form.entries()) l = std::lcm(l, e.den());
  IntegerGram ig{form.rank(), l, {}};
  for (const ExactRational& e : form.entries()) ig.g.push_back((e * ExactRational(l)).num());
  return ig;
}

// Coordinate bounds |v_i| <= sqrt(N (G^-1)_ii), exact.
std::vector<std::int64_t> box_bounds(const GramForm& form, std::int64_t N) {
  const int n = form.rank();
  const std::vector<ExactRational> inv = inverse(n, form.entries());
  std::vector<std::int64_t> b;
  for (int i = 0; i < n; ++i) {
    const ExactRational x = inv[static_cast<std::size_t>(i * n + i)] * ExactRational(N);
    b.push_back(isqrt(x.num() / x.den()));
  }
  return b;
}

// Histogram of integer values q(v) <= N over the box, one partial histogram
// per outer coordinate, merged in order.
std::vector<std::uint64_t> enumerate_histogram(const GramForm& form, std::int64_t N) {
  if (N < 0) return {};
  const IntegerGram ig = integerize(form);
  const std::vector<std::int64_t> b = box_bounds(form, N);
  const int n = ig.rank;
  const __int128 limit = static_cast<__int128>(N) * ig.scale;
  const std::size_t outer = static_cast<std::size_t>(2 * b[0] + 1);
  auto partials = ordered_map(outer, [&](std::size_t idx) {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(N) + 1, 0);
    std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
    v[0] = static_cast<std::int64_t>(idx) - b[0];
    for (int i = 1; i < n; ++i) v[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
    for (;;) {
      __int128 q = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          q += static_cast<__int128>(ig.g[static_cast<std::size_t>(i * n + j)]) * v[static_cast<std::size_t>(i)] *
               v[static_cast<std::size_t>(j)];
      if (q <= limit && q % ig.scale == 0) ++hist[static_cast<std::size_t>(q / ig.scale)];
      int k = n - 1;
      while (k >= 1 && v[static_cast<std::size_t>(k)] == b[static_cast<std::size_t>(k)]) {
        v[static_cast<std::size_t>(k)] = -b[static_cast<std::size_t>(k)];
        --k;
      }
      if (k < 1) break;
      ++v[static_cast<std::size_t>(k)];
    }
    return hist;
  });
  std::vector<std::uint64_t> total(static_cast<std::size_t>(N) + 1, 0);
  for (const auto& h : partials)
    for (std::size_t i = 0; i < h.size(); ++i) total[i] += h[i];
  return total;
}

}  // namespace

ExactRational determinant(int n, std::vector<ExactRational> m) {
  ExactRational det = 1;
  auto at = [n, &m](int i, int j) -> ExactRational& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(at(col, j), at(piv, j));
      det = -det;
    }
    det *= at(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (at(i, col) == 0) continue;
      const ExactRational f = at(i, col) / at(col, col);
      for (int j = col; j < n; ++j) at(i, j) -= f * at(col, j);
    }
  }
  return det;
}

GramForm::GramForm(int rank, std::vector<ExactRational> entries) : rank_(rank), g_(std::move(entries)) {
  if (rank_ != 2 && rank_ != 4) throw ValidationError("GramForm: rank must be 2 or 4");
  if (g_.size() != static_cast<std::size_t>(rank_ * rank_))
    throw ValidationError("GramForm: expected rank*rank entries");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < i; ++j)
      if (at(i, j) != at(j, i)) throw ValidationError("GramForm: matrix is not symmetric");
  for (int k = 1; k <= rank_; ++k)
    if (determinant(k, minor(g_, rank_, k)) <= 0) throw ValidationError("GramForm: not positive definite");
}

GramForm GramForm::binary(ExactRational qe, ExactRational qef, ExactRational qf) {
  return GramForm(2, {qe, qef, qef, qf});
}

GramForm GramForm::diagonal(int rank, ExactRational scale) {
  std::vector<ExactRational> g(static_cast<std::size_t>(rank * rank), 0);
  for (int i = 0; i < rank; ++i) g[static_cast<std::size_t>(i * rank + i)] = scale;
  return GramForm(rank, std::move(g));
}

ExactRational GramForm::disc() const { return determinant(rank_, g_); }

ExactRational GramForm::value(const std::vector<std::int64_t>& v) const {
  if (v.size() != static_cast<std::size_t>(rank_)) throw ValidationError("GramForm::value: wrong vector length");
  ExactRational q = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      q += at(i, j) * ExactRational(v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
  return q;
}

bool is_lagrange_reduced(const GramForm& form) {
  if (form.rank() != 2) return false;
  const ExactRational a = form.at(0, 0), b = form.at(0, 1), c = form.at(1, 1);
  return a <= c && abs(b) * ExactRational(2) <= a;
}

GramForm lagrange_reduce(const GramForm& form) {
  if (form.rank() != 2) throw ValidationError("lagrange_reduce: rank must be 2");
  ExactRational a = form.at(0, 0), b = form.at(0, 1), c = form.at(1, 1);
  for (;;) {
    if (c < a) {
      std::swap(a, c);
    }
    if (abs(b) * ExactRational(2) <= a) break;
    // f <- f - m e with m the nearest integer to b/a.
    const ExactRational ratio = b / a;
    const ExactRational shifted = ratio + ExactRational(1, 2);
    std::int64_t m = shifted.num() / shifted.den();
    if (shifted.num() < 0 && shifted.num() % shifted.den() != 0) --m;
    const ExactRational mm(m);
    c = c - ExactRational(2) * mm * b + mm * mm * a;
    b = b - mm * a;
  }
  return GramForm::binary(a, b, c);
}

std::set<std::int64_t> represented_values(const GramForm& form, std::int64_t n) {
  if (form.rank() != 2) throw ValidationError("represented_values: rank must be 2");
  std::set<std::int64_t> out;
  if (n < 1) return out;
  const GramForm r = lagrange_reduce(form);
  const IntegerGram ig = integerize(r);
  const std::int64_t A = ig.g[0], B = ig.g[1], C = ig.g[3];
  // For a reduced form q(x e + y f) >= (x^2 q(e) + y^2 q(f)) / 2.
  const ExactRational xb = ExactRational(2 * n) / r.at(0, 0);
  const ExactRational yb = ExactRational(2 * n) / r.at(1, 1);
  const std::int64_t xmax = isqrt(xb.num() / xb.den());
  const std::int64_t ymax = isqrt(yb.num() / yb.den());
  const __int128 limit = static_cast<__int128>(n) * ig.scale;
  for (std::int64_t x = -xmax; x <= xmax; ++x) {
    for (std::int64_t y = -ymax; y <= ymax; ++y) {
      if (x == 0 && y == 0) continue;
      const __int128 q = static_cast<__int128>(A) * x * x + static_cast<__int128>(2 * B) * x * y +
                         static_cast<__int128>(C) * y * y;
      if (q <= limit && q % ig.scale == 0) out.insert(static_cast<std::int64_t>(q / ig.scale));
    }
  }
  return out;
}

double counting_bound(std::int64_t n, const ExactRational& disc) {
  if (disc.sign() <= 0) throw DomainError("counting_bound: disc must be > 0");
  const double nn = static_cast<double>(n);
  return 1.0 + 8.0 * std::sqrt(nn) + 16.0 * nn / std::sqrt(disc.to_double());
}

std::vector<std::uint64_t> fiber_histogram(const GramForm& form, std::int64_t n) {
  return enumerate_histogram(form, n);
}

std::uint64_t fiber_count(const GramForm& form, std::int64_t N) {
  if (N < 0) return 0;
  return enumerate_histogram(form, N)[static_cast<std::size_t>(N)];
}

std::uint64_t ball_count(const GramForm& form, std::int64_t N) {
  if (N < 0) return 0;
  // Non-integer values below N also count here, so enumerate on the scaled form.
  const IntegerGram ig = integerize(form);
  const GramForm scaled(form.rank(), [&] {
    std::vector<ExactRational> g;
    for (std::int64_t x : ig.g) g.emplace_back(x);
    return g;
  }());
  const std::vector<std::uint64_t> h = enumerate_histogram(scaled, N * ig.scale);
  std::uint64_t total = 0;
  for (std::uint64_t c : h) total += c;
  return total;
}

DenseFiberSet dense_fiber_set(const GramForm& form, double eps1, std::int64_t n) {
  if (!(eps1 > 0)) throw DomainError("dense_fiber_set: eps1 must be > 0");
  DenseFiberSet out;
  if (n < 1) return out;
  const std::vector<std::uint64_t> h = enumerate_histogram(form, n);
  for (std::int64_t N = 1; N <= n; ++N)
    if (static_cast<double>(h[static_cast<std::size_t>(N)]) >= eps1 * static_cast<double>(N))
      out.members.push_back(N);
  if (out.members.empty()) return out;
  const double size = static_cast<double>(out.members.size());
  out.chain_lhs = eps1 * size * (size + 1.0) / 2.0;
  out.ball = ball_count(form, out.members.back());
  out.chain_holds = out.chain_lhs <= static_cast<double>(out.ball);
  return out;
}

std::vector<BinaryForm> reduced_primitive_forms(std::int64_t disc) {
  if (disc >= 0 || (mod(disc, 4) != 0 && mod(disc, 4) != 1))
    throw ValidationError("reduced_primitive_forms: need a negative discriminant");
  std::vector<BinaryForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -disc; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (mod(b - disc, 2) != 0) continue;
      const std::int64_t num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

namespace {

std::int64_t order_discriminant(std::int64_t fundamental_disc, std::int64_t conductor) {
  if (fundamental_disc >= 0 || !is_fundamental_discriminant(fundamental_disc))
    throw ValidationError("not a negative fundamental discriminant: " + std::to_string(fundamental_disc));
  if (conductor < 1) throw ValidationError("conductor must be >= 1");
  return conductor * conductor * fundamental_disc;
}

GramForm form_lattice(const BinaryForm& f) {
  return GramForm::binary(ExactRational(f.a), ExactRational(f.b, 2), ExactRational(f.c));
}

}  // namespace

GramForm end_lattice(std::int64_t fundamental_disc, std::int64_t conductor) {
  const std::int64_t D = order_discriminant(fundamental_disc, conductor);
  const std::int64_t b0 = mod(D, 2);
  return form_lattice({1, b0, (b0 * b0 - D) / 4});
}

GramForm hom_lattice(std::int64_t fundamental_disc, std::int64_t conductor, const BinaryForm& ideal) {
  const std::int64_t D = order_discriminant(fundamental_disc, conductor);
  if (ideal.a <= 0 || ideal.discriminant() != D)
    throw ValidationError("ideal form does not have the order's discriminant");
  if (std::gcd(std::gcd(ideal.a, ideal.b), ideal.c) != 1)
    throw DomainError("unsupported configuration: ideal is not proper for the order (form not primitive)");
  return form_lattice(ideal);
}

HomDiscReport ideal_hom_disc_check(std::int64_t fundamental_disc, std::int64_t conductor,
                                   std::optional<BinaryForm> ideal) {
  const GramForm end = end_lattice(fundamental_disc, conductor);
  const std::int64_t D = order_discriminant(fundamental_disc, conductor);
  const BinaryForm a = ideal.value_or(BinaryForm{1, mod(D, 2), (mod(D, 2) - D) / 4});
  const GramForm hom = hom_lattice(fundamental_disc, conductor, a);
  HomDiscReport r{end.disc(), hom.disc(), false, false};
  r.holds = abs(r.end_disc) >= abs(r.hom_disc);
  r.strict = abs(r.end_disc) > abs(r.hom_disc);
  return r;
}

std::vector<HomCountRow> hom_representation_check(std::int64_t fundamental_disc, std::int64_t conductor,
                                                  std::int64_t n) {
  const std::int64_t D = order_discriminant(fundamental_disc, conductor);
  const ExactRational end_disc = end_lattice(fundamental_disc, conductor).disc();
  std::vector<HomCountRow> rows;
  for (const BinaryForm& f : reduced_primitive_forms(D)) {
    const GramForm hom = hom_lattice(fundamental_disc, conductor, f);
    rows.push_back({f, represented_values(hom, n).size(), counting_bound(n, end_disc)});
  }
  return rows;
}

}  // namespace heckelab
