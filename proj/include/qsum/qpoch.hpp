#pragma once

#include <limits>
#include <vector>

#include "qsum/scalar.hpp"

namespace qsum {

// Truncation control for infinite products and series tails.
struct TailConfig {
  double eps_tail = 1e-14;  // relative tail tolerance
  int max_factors = 10000;  // hard cap on product factors / series terms
  int window = 5;           // consecutive small terms required to stop
};

// A q-shifted-factorial value with explicit bookkeeping of vanishing
// factors: the represented value is reg * 0^ord, so ord > 0 is a zero of
// that order, ord < 0 a pole.  Keeping the order separate from the regular
// part lets the engineered zero/pole pairs of the specialization checks
// cancel exactly instead of producing 0 * inf.
template <typename T>
struct QPochValue {
  T reg{1};
  int ord = 0;

  bool is_regular() const { return ord == 0; }
  bool is_zero() const { return ord > 0; }
  bool is_pole() const { return ord < 0; }
  int multiplicity() const { return ord < 0 ? -ord : ord; }

  // Collapses the tag: zeros evaluate to 0, poles have no finite value.
  T value() const {
    if (ord > 0) return T(0);
    if (ord < 0) throw pole_error("QPochValue: pole has no finite value");
    return reg;
  }

  QPochValue& operator*=(const QPochValue& o) {
    reg = reg * o.reg;
    ord += o.ord;
    return *this;
  }
  QPochValue& operator/=(const QPochValue& o) {
    reg = reg / o.reg;
    ord -= o.ord;
    return *this;
  }
  friend QPochValue operator*(QPochValue a, const QPochValue& b) { return a *= b; }
  friend QPochValue operator/(QPochValue a, const QPochValue& b) { return a /= b; }

  QPochValue& scale(const T& s) {
    reg = reg * s;
    return *this;
  }
};

// (1 - x), tagged when it vanishes (exactly in rational mode, within
// kZeroEps relative in floating mode).
template <typename T>
QPochValue<T> one_minus(const T& x) {
  T f = T(1) - x;
  if (near_zero(f, 1.0 + abs_approx(x))) return QPochValue<T>{T(1), 1};
  return QPochValue<T>{f, 0};
}

// Difference u - v tagged against cancellation, used for Vandermonde factors.
template <typename T>
QPochValue<T> diff_tagged(const T& u, const T& v) {
  T d = u - v;
  if (near_zero(d, abs_approx(u) + abs_approx(v))) return QPochValue<T>{T(1), 1};
  return QPochValue<T>{d, 0};
}

// (a;q)_k for finite integer k:
//   k >= 0:  prod_{j=0}^{k-1} (1 - a q^j)
//   k <  0:  1 / prod_{j=1}^{-k} (1 - a q^{-j}), a pole when a factor vanishes.
template <typename T>
QPochValue<T> qpoch(const T& a, const T& q, long k) {
  QPochValue<T> p;
  if (k >= 0) {
    T qp(1);
    for (long j = 0; j < k; ++j) {
      p *= one_minus<T>(a * qp);
      qp = qp * q;
    }
  } else {
    if (near_zero(q, 1.0)) throw domain_error("qpoch: q = 0 with negative order");
    T qinv = T(1) / q;
    T qp = qinv;
    for (long j = 1; j <= -k; ++j) {
      p /= one_minus<T>(a * qp);
      qp = qp * qinv;
    }
  }
  return p;
}

// (a1,...,am;q)_k
template <typename T>
QPochValue<T> qpoch_list(const std::vector<T>& as, const T& q, long k) {
  QPochValue<T> p;
  for (const T& a : as) p *= qpoch(a, q, k);
  return p;
}

// One-step update (a;q)_k -> (a;q)_{k+1} = (a;q)_k * (1 - a q^k).
template <typename T>
QPochValue<T> qpoch_shift(const QPochValue<T>& p, const T& a, const T& q, long k) {
  return p * one_minus<T>(a * pow_int(q, k));
}

// Very-well-poised term (1 - a q^{2k}) / (1 - a); no square roots involved.
template <typename T>
T vwp_factor(const T& a, const T& q, long k) {
  T den = T(1) - a;
  if (near_zero(den, 1.0 + abs_approx(a))) throw domain_error("vwp_factor: a = 1");
  return (T(1) - a * pow_int(q, 2 * k)) / den;
}

// (a;q)_infinity, truncated once the geometric bound
//   |a q^J| / ((1 - |q|)(1 - |a q^J|))
// on |log remainder| drops below eps_tail.  *rel_est receives the bound at
// the stopping point (also when the factor cap, not the bound, stopped the
// product, which keeps the reported estimate sound).
inline QPochValue<Complex> qpoch_inf(const Complex& a, const Complex& q,
                                     const TailConfig& cfg, double* rel_est = nullptr) {
  double qa = std::abs(q);
  if (qa >= 1.0) throw domain_error("qpoch_inf: |q| >= 1");
  QPochValue<Complex> p;
  Complex qp(1);
  double bound = std::numeric_limits<double>::infinity();
  int j = 0;
  for (; j < cfg.max_factors; ++j) {
    double m = std::abs(a) * std::abs(qp);
    if (m < 1.0) {
      bound = m / ((1.0 - qa) * (1.0 - m));
      if (bound <= cfg.eps_tail) break;
    }
    p *= one_minus<Complex>(a * qp);
    qp *= q;
  }
  if (rel_est) *rel_est = bound;
  if (j >= cfg.max_factors && bound > std::sqrt(cfg.eps_tail))
    throw domain_error("qpoch_inf: factor cap reached before tail bound");
  return p;
}

inline QPochValue<Rational> qpoch_inf(const Rational&, const Rational&, const TailConfig&,
                                      double* = nullptr) {
  throw domain_error("unsupported-operation: infinite q-product in exact mode");
}

// Running product of (x;q)_inf^{+-1} factors with an accumulated relative
// truncation estimate; the building block of every closed-form side.
class InfProductAccum {
 public:
  explicit InfProductAccum(Complex q, const TailConfig& cfg) : q_(q), cfg_(cfg) {}

  InfProductAccum& mul(const Complex& x) {
    double est = 0;
    val_ *= qpoch_inf(x, q_, cfg_, &est);
    rel_est_ += est;
    return *this;
  }
  InfProductAccum& div(const Complex& x) {
    double est = 0;
    val_ /= qpoch_inf(x, q_, cfg_, &est);
    rel_est_ += est;
    return *this;
  }
  InfProductAccum& mul_factor(const QPochValue<Complex>& f) {
    val_ *= f;
    return *this;
  }

  const QPochValue<Complex>& tagged() const { return val_; }
  double rel_est() const { return rel_est_; }

 private:
  Complex q_;
  TailConfig cfg_;
  QPochValue<Complex> val_;
  double rel_est_ = 0;
};

// Incremental two-sided table of (x;q)_n, one multiplication per new entry.
template <typename T>
class PochTable {
 public:
  PochTable() = default;
  PochTable(T x, T q) : x_(std::move(x)), q_(std::move(q)) {
    pos_.push_back(QPochValue<T>{});  // (x;q)_0 = 1
  }

  void ensure(long lo, long hi) {
    while (long(pos_.size()) <= hi) {
      long n = long(pos_.size()) - 1;  // extend to n+1
      pos_.push_back(pos_.back() * one_minus<T>(x_ * qpow_pos_));
      qpow_pos_ = qpow_pos_ * q_;
      (void)n;
    }
    while (long(neg_.size()) < -lo) {
      qpow_neg_ = qpow_neg_ * qinv();
      const QPochValue<T>& prev = neg_.empty() ? pos_[0] : neg_.back();
      neg_.push_back(prev / one_minus<T>(x_ * qpow_neg_));
    }
  }

  const QPochValue<T>& at(long n) const {
    return n >= 0 ? pos_[size_t(n)] : neg_[size_t(-n - 1)];
  }

 private:
  T qinv() {
    if (!have_qinv_) {
      qinv_ = T(1) / q_;
      have_qinv_ = true;
    }
    return qinv_;
  }

  T x_{}, q_{};
  T qinv_{};
  bool have_qinv_ = false;
  std::vector<QPochValue<T>> pos_;
  std::vector<QPochValue<T>> neg_;
  T qpow_pos_{1};  // q^{pos_.size()-1}
  T qpow_neg_{1};  // q^{-neg_.size()}
};

// Two-sided table of plain powers x^n.
template <typename T>
class PowTable {
 public:
  PowTable() = default;
  explicit PowTable(T x) : x_(std::move(x)) { pos_.push_back(T(1)); }

  void ensure(long lo, long hi) {
    while (long(pos_.size()) <= hi) pos_.push_back(pos_.back() * x_);
    while (long(neg_.size()) < -lo) {
      if (!have_xinv_) {
        if (near_zero(x_, 1.0)) throw pole_error("PowTable: negative power of zero");
        xinv_ = T(1) / x_;
        have_xinv_ = true;
      }
      neg_.push_back((neg_.empty() ? pos_[0] : neg_.back()) * xinv_);
    }
  }

  const T& at(long n) const { return n >= 0 ? pos_[size_t(n)] : neg_[size_t(-n - 1)]; }

 private:
  T x_{}, xinv_{};
  bool have_xinv_ = false;
  std::vector<T> pos_, neg_;
};

}  // namespace qsum
