#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/rational.hpp"

namespace commitlearn {

using Point = std::vector<Rational>;
using Matrix = std::vector<Point>;

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Point unit_vector(std::size_t m, std::size_t i) {
  Point e(m, Rational(0));
  e[i] = 1;
  return e;
}

// ---------------------------------------------------------------------------
// Exact linear algebra
// ---------------------------------------------------------------------------

/// Solves A x = b for square A with fraction-free (Bareiss) elimination on
/// integer-scaled rows. Returns nullopt when A is singular.
inline std::optional<Point> solve_square_system(const Matrix& a, std::span<const Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_square_system: size mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("solve_square_system: matrix is not square");
  }

  // Augmented integer matrix: each row multiplied by the lcm of its denominators.
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    BigInt scale = 1;
    for (const auto& q : a[i]) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.denominator().get_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), b[i].denominator().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].numerator() * (scale / a[i][j].denominator());
    m[i][n] = b[i].numerator() * (scale / b[i].denominator());
  }

  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  Point x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) s -= Rational(m[ii][j]) * x[j];
    x[ii] = s / Rational(m[ii][ii]);
  }
  return x;
}

/// Row-reduces a copy of the matrix; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_reduce(Matrix& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = Rational(1) / rows[r][c];
    for (auto& q : rows[r]) q *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(std::span<const Point> vectors) {
  Matrix rows(vectors.begin(), vectors.end());
  return row_reduce(rows).size();
}

inline bool linearly_independent(std::span<const Point> vectors) {
  return rank(vectors) == vectors.size();
}

/// Maximum number of affinely independent points in the set.
inline std::size_t affine_rank(std::span<const Point> points) {
  if (points.empty()) return 0;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Point d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(diffs) + 1;
}

// ---------------------------------------------------------------------------
// Hyperplanes and halfspaces
// ---------------------------------------------------------------------------

enum class HyperplaneKind { separating, boundary, leader_separating };

/// {p : coefficients . p = offset}, kept in canonical form: scaled so the
/// first nonzero coefficient is +1. The kind is descriptive and does not take
/// part in equality.
class Hyperplane {
 public:
  Hyperplane(Point coefficients, Rational offset, HyperplaneKind kind = HyperplaneKind::separating)
      : coefficients_(std::move(coefficients)), offset_(std::move(offset)), kind_(kind) {
    scale_ = normalize();
  }

  static Hyperplane boundary(std::size_t m, std::size_t i) {
    return Hyperplane(unit_vector(m, i), Rational(0), HyperplaneKind::boundary);
  }

  const Point& coefficients() const { return coefficients_; }
  const Rational& offset() const { return offset_; }
  HyperplaneKind kind() const { return kind_; }
  std::size_t dimension() const { return coefficients_.size(); }

  /// Sign of the factor that was applied while canonicalizing (+1 or -1).
  int normalization_sign() const { return scale_.sign(); }

  /// coefficients . p - offset
  Rational evaluate(std::span<const Rational> p) const { return dot(coefficients_, p) - offset_; }
  bool contains(std::span<const Rational> p) const { return evaluate(p).is_zero(); }

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.coefficients_ == b.coefficients_ && a.offset_ == b.offset_;
  }
  friend auto operator<=>(const Hyperplane& a, const Hyperplane& b) {
    if (auto c = a.coefficients_ <=> b.coefficients_; c != 0) return c;
    return a.offset_ <=> b.offset_;
  }

 private:
  Rational normalize() {
    auto lead = std::find_if(coefficients_.begin(), coefficients_.end(),
                             [](const Rational& q) { return !q.is_zero(); });
    if (lead == coefficients_.end()) throw degenerate_geometry("hyperplane with all-zero coefficients");
    Rational factor = Rational(1) / *lead;
    for (auto& q : coefficients_) q *= factor;
    offset_ *= factor;
    return factor;
  }

  Point coefficients_;
  Rational offset_;
  HyperplaneKind kind_;
  Rational scale_;
};

enum class Side { at_least, at_most };

/// {p : c . p >= offset} or {p : c . p <= offset} over a canonical hyperplane.
class Halfspace {
 public:
  Halfspace(Hyperplane plane, Side side) : plane_(std::move(plane)), side_(side) {}

  /// {p : coefficients . p >= offset}, canonicalized.
  static Halfspace at_least(Point coefficients, Rational offset,
                            HyperplaneKind kind = HyperplaneKind::separating) {
    Hyperplane h(std::move(coefficients), std::move(offset), kind);
    return Halfspace(h, h.normalization_sign() > 0 ? Side::at_least : Side::at_most);
  }

  const Hyperplane& plane() const { return plane_; }
  Side side() const { return side_; }

  /// Signed distance-like slack: >= 0 exactly on the feasible side.
  Rational slack(std::span<const Rational> p) const {
    Rational v = plane_.evaluate(p);
    return side_ == Side::at_least ? v : -v;
  }
  bool contains(std::span<const Rational> p) const { return slack(p).sign() >= 0; }
  bool strictly_contains(std::span<const Rational> p) const { return slack(p).sign() > 0; }

  /// Closure of the complement.
  Halfspace reversed() const { return Halfspace(plane_, side_ == Side::at_least ? Side::at_most : Side::at_least); }

  /// Coefficients of the equivalent ">= offset" form.
  Point inward_normal() const {
    Point c = plane_.coefficients();
    if (side_ == Side::at_most) for (auto& q : c) q = -q;
    return c;
  }

  friend bool operator==(const Halfspace& a, const Halfspace& b) {
    return a.side_ == b.side_ && a.plane_ == b.plane_;
  }

 private:
  Hyperplane plane_;
  Side side_;
};

// ---------------------------------------------------------------------------
// Polytopes inside the simplex
// ---------------------------------------------------------------------------

/// Intersection of the simplex {p >= 0, sum p = 1} with extra halfspaces and,
/// optionally, extra equalities (used for simplex facets). The vertex set is
/// computed lazily and cached; a polytope is not safe to share across threads
/// until vertices() has been called once.
class Polytope {
 public:
  static Polytope simplex(std::size_t m) {
    Polytope p(m);
    for (std::size_t i = 0; i < m; ++i) p.constraints_.emplace_back(Hyperplane::boundary(m, i), Side::at_least);
    return p;
  }

  /// H_i intersected with the simplex: the facet where p_i = 0.
  static Polytope simplex_facet(std::size_t m, std::size_t i) {
    Polytope p = simplex(m);
    p.equalities_.push_back(Hyperplane::boundary(m, i));
    return p;
  }

  std::size_t ambient_dimension() const { return m_; }
  // Temporaries hand out copies so range-for over a temporary cannot dangle.
  const std::vector<Halfspace>& constraints() const& { return constraints_; }
  std::vector<Halfspace> constraints() const&& { return constraints_; }
  const std::vector<Hyperplane>& equalities() const& { return equalities_; }
  std::vector<Hyperplane> equalities() const&& { return equalities_; }

  /// Dimension the polytope has when it is not degenerate.
  std::size_t full_dimension() const { return m_ - 1 - equalities_.size(); }

  /// If the polytope is a simplex facet, the coordinate that is fixed to zero.
  std::optional<std::size_t> facet_index() const {
    if (equalities_.size() != 1 || equalities_.front().kind() != HyperplaneKind::boundary) return std::nullopt;
    const auto& c = equalities_.front().coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_zero()) return i;
    }
    return std::nullopt;
  }

  bool has_constraint(const Halfspace& h) const {
    return std::find(constraints_.begin(), constraints_.end(), h) != constraints_.end();
  }

  /// New polytope with the halfspace appended; exact duplicates are skipped.
  Polytope intersect(const Halfspace& h) const {
    if (h.plane().dimension() != m_) throw std::invalid_argument("halfspace dimension mismatch");
    Polytope out(m_);
    out.constraints_ = constraints_;
    out.equalities_ = equalities_;
    if (!has_constraint(h)) out.constraints_.push_back(h);
    return out;
  }

  bool contains(std::span<const Rational> p) const {
    Rational s;
    for (const auto& q : p) s += q;
    if (s != Rational(1)) return false;
    for (const auto& e : equalities_) {
      if (!e.contains(p)) return false;
    }
    return std::all_of(constraints_.begin(), constraints_.end(), [&](const Halfspace& h) { return h.contains(p); });
  }

  /// Relative interior: every constraint that is not tight on the whole
  /// polytope holds strictly.
  bool relative_interior_contains(std::span<const Rational> p) const {
    if (!contains(p)) return false;
    for (const auto& h : constraints_) {
      if (h.strictly_contains(p)) continue;
      if (!is_implicit_equality(h)) return false;
    }
    return true;
  }

  /// Tight on every vertex (e.g. p_i >= 0 on the facet p_i = 0).
  bool is_implicit_equality(const Halfspace& h) const {
    const auto& vs = vertices();
    return !vs.empty() && std::all_of(vs.begin(), vs.end(), [&](const Point& v) { return h.slack(v).is_zero(); });
  }

  const std::vector<Point>& vertices() const&;
  std::vector<Point> vertices() const&& { return vertices(); }

  /// Has full_dimension()+1 affinely independent vertices.
  bool is_full_dimensional() const {
    const auto& vs = vertices();
    return affine_rank(vs) == full_dimension() + 1;
  }

  /// Same polytope with duplicate and non-facet-defining constraints removed.
  Polytope irredundant() const {
    Polytope out(m_);
    out.equalities_ = equalities_;
    const auto& vs = vertices();
    for (const auto& h : constraints_) {
      if (out.has_constraint(h)) continue;
      std::vector<Point> tight;
      for (const auto& v : vs) {
        if (h.slack(v).is_zero()) tight.push_back(v);
      }
      if (!is_implicit_equality(h) && affine_rank(tight) == full_dimension()) out.constraints_.push_back(h);
    }
    out.vertices_ = vertices_;
    return out;
  }

 private:
  explicit Polytope(std::size_t m) : m_(m) {}

  std::size_t m_;
  std::vector<Halfspace> constraints_;
  std::vector<Hyperplane> equalities_;
  mutable std::optional<std::vector<Point>> vertices_;
};

inline Polytope intersect_halfspace(const Polytope& p, const Halfspace& h) { return p.intersect(h); }

/// Largest vertex bit-complexity allowed for regions cut by payoff-derived
/// hyperplanes when payoffs have bit-complexity L.
inline std::size_t vertex_bit_bound(std::size_t payoff_bits, std::size_t m) { return 9 * payoff_bits * m * m; }

/// All vertices of P in discovery order: constraint subsets are visited in
/// lexicographic index order and each vertex is kept at its first occurrence.
/// A vertex is the unique solution of sum p = 1, the equalities, and a subset
/// of tight constraints. With payoff_bits set, each vertex is checked against
/// the 9 L m^2 bound.
inline std::vector<Point> enumerate_vertices(const Polytope& poly,
                                             std::optional<std::size_t> payoff_bits = std::nullopt) {
  const std::size_t m = poly.ambient_dimension();
  const auto& cons = poly.constraints();
  const auto& eqs = poly.equalities();
  if (eqs.size() + 1 > m) return {};
  const std::size_t pick = m - 1 - eqs.size();

  std::vector<Point> out;
  std::set<Point> seen;
  std::vector<std::size_t> idx(pick);
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  Matrix a(m, Point(m));
  Point b(m);
  auto feasible = [&](const Point& x) {
    return std::all_of(cons.begin(), cons.end(), [&](const Halfspace& h) { return h.contains(x); });
  };
  auto try_subset = [&]() {
    std::fill(a[0].begin(), a[0].end(), Rational(1));
    b[0] = 1;
    std::size_t r = 1;
    for (const auto& e : eqs) {
      a[r] = e.coefficients();
      b[r] = e.offset();
      ++r;
    }
    for (std::size_t k : idx) {
      a[r] = cons[k].plane().coefficients();
      b[r] = cons[k].plane().offset();
      ++r;
    }
    if (auto x = solve_square_system(a, b); x && feasible(*x) && seen.insert(*x).second) out.push_back(std::move(*x));
  };

  if (pick > cons.size()) return {};
  if (pick == 0) {
    try_subset();
  } else {
    // Iterate all pick-subsets of the constraint indices in lexicographic order.
    while (true) {
      try_subset();
      std::size_t i = pick;
      while (i > 0 && idx[i - 1] == cons.size() - pick + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < pick; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  if (payoff_bits) {
    const std::size_t bound = vertex_bit_bound(*payoff_bits, m);
    for (const auto& v : out) {
      if (bit_complexity(v).value > bound) {
        throw assertion_violation("vertex bit-complexity " + std::to_string(bit_complexity(v).value) +
                                  " exceeds 9Lm^2 = " + std::to_string(bound));
      }
    }
  }
  return out;
}

inline const std::vector<Point>& Polytope::vertices() const& {
  if (!vertices_) vertices_ = enumerate_vertices(*this);
  return *vertices_;
}

/// Homogeneous hyperplane {p : c . p = 0} through m-1 points of R^m, i.e. the
/// one-dimensional null space of the matrix whose rows are the points.
/// Returns nullopt when the points do not determine a unique hyperplane.
inline std::optional<Hyperplane> hyperplane_from_points(std::span<const Point> points, std::size_t m) {
  Matrix rows(points.begin(), points.end());
  for (const auto& r : rows) {
    if (r.size() != m) throw std::invalid_argument("hyperplane_from_points: dimension mismatch");
  }
  auto pivots = row_reduce(rows);
  if (pivots.size() != m - 1) return std::nullopt;

  std::vector<bool> is_pivot(m, false);
  for (auto c : pivots) is_pivot[c] = true;
  const std::size_t free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());

  Point c(m, Rational(0));
  c[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = -rows[r][free_col];
  return Hyperplane(std::move(c), Rational(0), HyperplaneKind::separating);
}

}  // namespace commitlearn
