#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "commitlearn/errors.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/rational.hpp"

namespace commitlearn {

/// How best-response regions are defined when follower actions can be
/// equivalent (identical follower payoff columns).
enum class Mode { standard, equivalent_actions };

/// A leader mixed strategy: nonnegative exact probabilities summing to one.
class MixedStrategy {
 public:
  explicit MixedStrategy(Point probabilities) : p_(std::move(probabilities)) {
    Rational s;
    for (const auto& q : p_) {
      if (q.sign() < 0) throw domain_error("mixed strategy with a negative probability");
      s += q;
    }
    if (p_.empty() || s != Rational(1)) throw domain_error("mixed strategy does not sum to one");
  }

  static MixedStrategy pure(std::size_t m, std::size_t i) { return MixedStrategy(unit_vector(m, i)); }
  static MixedStrategy uniform(std::size_t m) {
    return MixedStrategy(Point(m, Rational(BigInt(1), BigInt(static_cast<unsigned long>(m)))));
  }

  const Point& probabilities() const { return p_; }
  std::span<const Rational> span() const { return p_; }
  std::size_t size() const { return p_.size(); }
  const Rational& operator[](std::size_t i) const { return p_[i]; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
  friend auto operator<=>(const MixedStrategy& a, const MixedStrategy& b) { return a.p_ <=> b.p_; }

 private:
  Point p_;
};

/// A strategy written over one positive common denominator: p_i = weights_i / scale.
/// Not necessarily in lowest terms; this is the representation queries are
/// evaluated on, so points produced inside a search never need reducing.
struct ScaledStrategy {
  std::vector<BigInt> weights;
  BigInt scale;

  static ScaledStrategy from(const MixedStrategy& p) {
    ScaledStrategy s;
    s.scale = common_denominator(p.span());
    s.weights.reserve(p.size());
    for (const auto& q : p.probabilities()) s.weights.push_back(q.numerator() * (s.scale / q.denominator()));
    return s;
  }

  MixedStrategy reduce() const {
    Point p;
    p.reserve(weights.size());
    for (const auto& w : weights) p.emplace_back(w, scale);
    return MixedStrategy(std::move(p));
  }
};

/// Leader and follower payoff matrices (rows: leader actions, columns:
/// follower actions), all exact rationals in [0, 1].
class GameInstance {
 public:
  GameInstance(Matrix leader, Matrix follower) : leader_(std::move(leader)), follower_(std::move(follower)) {
    m_ = leader_.size();
    if (m_ == 0 || follower_.size() != m_) throw domain_error("payoff matrices need the same positive row count");
    n_ = leader_.front().size();
    if (n_ == 0) throw domain_error("game needs at least one follower action");
    for (std::size_t i = 0; i < m_; ++i) {
      if (leader_[i].size() != n_ || follower_[i].size() != n_) throw domain_error("ragged payoff matrix");
      for (std::size_t j = 0; j < n_; ++j) {
        check_entry(leader_[i][j], "leader", i, j);
        check_entry(follower_[i][j], "follower", i, j);
        follower_bits_ = std::max(follower_bits_, bit_complexity(follower_[i][j]).value);
        leader_bits_ = std::max(leader_bits_, bit_complexity(leader_[i][j]).value);
      }
    }
    scale(follower_, follower_int_, follower_den_);
    scale(leader_, leader_int_, leader_den_);
  }

  std::size_t leader_actions() const { return m_; }
  std::size_t follower_actions() const { return n_; }
  const Matrix& leader() const { return leader_; }
  const Matrix& follower() const { return follower_; }
  const Rational& leader_payoff(std::size_t i, std::size_t j) const { return leader_[i][j]; }
  const Rational& follower_payoff(std::size_t i, std::size_t j) const { return follower_[i][j]; }

  /// L: the largest entry bit-complexity of the follower matrix, or of both
  /// matrices in equivalent-actions mode.
  std::size_t payoff_bits(Mode mode = Mode::standard) const {
    return mode == Mode::standard ? follower_bits_ : std::max(follower_bits_, leader_bits_);
  }

  /// Payoffs multiplied by the common denominator of their matrix, row-major.
  const std::vector<BigInt>& follower_integers() const { return follower_int_; }
  const std::vector<BigInt>& leader_integers() const { return leader_int_; }

  Point follower_column(std::size_t j) const { return column(follower_, j); }
  Point leader_column(std::size_t j) const { return column(leader_, j); }

  /// Follower payoff columns j and k coincide.
  bool equivalent(std::size_t j, std::size_t k) const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (follower_[i][j] != follower_[i][k]) return false;
    }
    return true;
  }

  friend bool operator==(const GameInstance& a, const GameInstance& b) {
    return a.leader_ == b.leader_ && a.follower_ == b.follower_;
  }

 private:
  static void check_entry(const Rational& q, const char* who, std::size_t i, std::size_t j) {
    if (q.sign() < 0 || q > Rational(1)) {
      throw domain_error(std::string(who) + " payoff at (" + std::to_string(i) + "," + std::to_string(j) +
                         ") = " + q.str() + " is outside [0,1]");
    }
  }

  static Point column(const Matrix& a, std::size_t j) {
    Point c;
    for (const auto& row : a) c.push_back(row[j]);
    return c;
  }

  void scale(const Matrix& a, std::vector<BigInt>& out, BigInt& den) const {
    den = 1;
    for (const auto& row : a) {
      for (const auto& q : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.denominator().get_mpz_t());
    }
    out.clear();
    for (const auto& row : a) {
      for (const auto& q : row) out.push_back(q.numerator() * (den / q.denominator()));
    }
  }

  Matrix leader_;
  Matrix follower_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t follower_bits_ = 0;
  std::size_t leader_bits_ = 0;
  std::vector<BigInt> follower_int_;
  std::vector<BigInt> leader_int_;
  BigInt follower_den_;
  BigInt leader_den_;
};

}  // namespace commitlearn
