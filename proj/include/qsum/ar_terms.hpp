#pragma once

#include <span>
#include <vector>

#include "qsum/lattice.hpp"
#include "qsum/params.hpp"
#include "qsum/qpoch.hpp"

// Summand assembly for the r-dimensional series.  Each class owns
// incremental q-Pochhammer tables (one multiplication per new index) so a
// lattice term costs O(r^2) lookups; the *_direct free functions evaluate
// the same summand from scratch per term and serve as the slow reference
// implementation for tests and benchmarks.

namespace qsum {

namespace detail {

template <typename T>
QPochValue<T> vandermonde_ratio(const std::vector<T>& z, std::span<const long> k,
                                const PowTable<T>& qp, const std::vector<QPochValue<T>>& den) {
  const long r = long(z.size());
  QPochValue<T> t;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      t *= diff_tagged(z[size_t(i)] * qp.at(k[size_t(i)]), z[size_t(j)] * qp.at(k[size_t(j)]));
      t /= den[size_t(i * r + j)];
    }
  return t;
}

template <typename T>
std::vector<QPochValue<T>> pair_denominators(const std::vector<T>& z) {
  const long r = long(z.size());
  std::vector<QPochValue<T>> den(size_t(r * r));
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      QPochValue<T> d = diff_tagged(z[size_t(i)], z[size_t(j)]);
      if (d.is_zero()) throw domain_error("coincident z parameters");
      den[size_t(i * r + j)] = d;
    }
  return den;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// r-dimensional 6Phi5 summand

template <typename T>
class Phi65rTerm {
 public:
  explicit Phi65rTerm(const Phi65rParams<T>& p) : p_(p), r_(p.r()), qp_(p.q), wp_(p.w) {
    if (long(p.b.size()) != r_) throw domain_error("parameter list sizes disagree with r");
    vand_den_ = detail::pair_denominators(p.z);
    tab_b_.reserve(size_t(r_ * r_));
    tab_q_.reserve(size_t(r_ * r_));
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        tab_b_.emplace_back(p.b[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q);
        tab_q_.emplace_back(p.q * p.z[size_t(i)] / p.z[size_t(j)], p.q);
      }
    for (long i = 0; i < r_; ++i) {
      const T& zi = p.z[size_t(i)];
      tab_az_.emplace_back(p.a * zi, p.q);
      tab_cz_.emplace_back(p.c * zi, p.q);
      tab_azqb_.emplace_back(p.a * zi * p.q / p.b[size_t(i)], p.q);
      tab_azqd_.emplace_back(p.a * zi * p.q / p.d, p.q);
      vwp_den_.push_back(one_minus<T>(p.a * zi));
      if (vwp_den_.back().is_zero()) throw domain_error("a z_i = 1 (special parameter pole)");
    }
    dd_ = PochTable<T>(p.d, p.q);
    aqc_ = PochTable<T>(p.a * p.q / p.c, p.q);
  }

  void prepare(long smax) {
    for (auto& t : tab_b_) t.ensure(0, smax);
    for (auto& t : tab_q_) t.ensure(0, smax);
    for (auto& t : tab_az_) t.ensure(0, smax);
    for (auto& t : tab_cz_) t.ensure(0, smax);
    for (auto& t : tab_azqb_) t.ensure(0, smax);
    for (auto& t : tab_azqd_) t.ensure(0, smax);
    dd_.ensure(0, smax);
    aqc_.ensure(0, smax);
    qp_.ensure(0, 2 * smax);
    wp_.ensure(0, smax);
  }

  QPochValue<T> term(std::span<const long> k) const {
    long K = 0;
    for (long i = 0; i < r_; ++i) K += k[size_t(i)];
    QPochValue<T> t = detail::vandermonde_ratio(p_.z, k, qp_, vand_den_);
    for (long i = 0; i < r_; ++i) {
      t *= one_minus<T>(p_.a * p_.z[size_t(i)] * qp_.at(k[size_t(i)] + K));
      t /= vwp_den_[size_t(i)];
    }
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        size_t ij = size_t(i * r_ + j);
        t *= tab_b_[ij].at(k[size_t(i)]);
        t /= tab_q_[ij].at(k[size_t(i)]);
      }
    for (long i = 0; i < r_; ++i) {
      t *= tab_az_[size_t(i)].at(K);
      t *= tab_cz_[size_t(i)].at(k[size_t(i)]);
      t /= tab_azqb_[size_t(i)].at(K);
      t /= tab_azqd_[size_t(i)].at(k[size_t(i)]);
    }
    t *= dd_.at(K);
    t /= aqc_.at(K);
    t.scale(wp_.at(K));
    return t;
  }

 private:
  Phi65rParams<T> p_;
  long r_;
  PowTable<T> qp_, wp_;
  std::vector<PochTable<T>> tab_b_, tab_q_, tab_az_, tab_cz_, tab_azqb_, tab_azqd_;
  PochTable<T> dd_, aqc_;
  std::vector<QPochValue<T>> vwp_den_, vand_den_;
};

// Direct per-term evaluation of the same summand (reference path).
template <typename T>
QPochValue<T> term_6Phi5r(const Phi65rParams<T>& p, std::span<const long> k) {
  const long r = p.r();
  long K = 0;
  for (long i = 0; i < r; ++i) K += k[size_t(i)];
  QPochValue<T> t;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      t *= diff_tagged(p.z[size_t(i)] * pow_int(p.q, k[size_t(i)]),
                       p.z[size_t(j)] * pow_int(p.q, k[size_t(j)]));
      t /= diff_tagged(p.z[size_t(i)], p.z[size_t(j)]);
    }
  for (long i = 0; i < r; ++i) {
    t *= one_minus<T>(p.a * p.z[size_t(i)] * pow_int(p.q, k[size_t(i)] + K));
    t /= one_minus<T>(p.a * p.z[size_t(i)]);
  }
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      t *= qpoch<T>(p.b[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q, k[size_t(i)]);
      t /= qpoch<T>(p.q * p.z[size_t(i)] / p.z[size_t(j)], p.q, k[size_t(i)]);
    }
  for (long i = 0; i < r; ++i) {
    const T& zi = p.z[size_t(i)];
    t *= qpoch<T>(p.a * zi, p.q, K);
    t *= qpoch<T>(p.c * zi, p.q, k[size_t(i)]);
    t /= qpoch<T>(p.a * zi * p.q / p.b[size_t(i)], p.q, K);
    t /= qpoch<T>(p.a * zi * p.q / p.d, p.q, k[size_t(i)]);
  }
  t *= qpoch<T>(p.d, p.q, K);
  t /= qpoch<T>(p.a * p.q / p.c, p.q, K);
  t.scale(pow_int(p.w, K));
  return t;
}

// ---------------------------------------------------------------------------
// Unilateral r-dimensional 8phi7 summand (b_i -> a case; p.b unused)

template <typename T>
class P88Term {
 public:
  explicit P88Term(const ArParams<T>& p) : p_(p), r_(p.r()), qp_(p.q) {
    if (long(p.e.size()) != r_) throw domain_error("parameter list sizes disagree with r");
    wp_ = PowTable<T>(p.a / (p.E() * p.f * p.g));
    vand_den_ = detail::pair_denominators(p.z);
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        tab_e_.emplace_back(p.e[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q);
        tab_q_.emplace_back(p.q * p.z[size_t(i)] / p.z[size_t(j)], p.q);
      }
    for (long i = 0; i < r_; ++i) {
      const T& zi = p.z[size_t(i)];
      tab_az_.emplace_back(p.a * zi, p.q);
      tab_fz_.emplace_back(p.f * zi, p.q);
      tab_azqe_.emplace_back(p.a * zi * p.q / p.e[size_t(i)], p.q);
      tab_azqg_.emplace_back(p.a * zi * p.q / p.g, p.q);
      vwp_den_.push_back(one_minus<T>(p.a * zi));
      if (vwp_den_.back().is_zero()) throw domain_error("a z_i = 1 (special parameter pole)");
    }
    gg_ = PochTable<T>(p.g, p.q);
    aqf_ = PochTable<T>(p.a * p.q / p.f, p.q);
    if (!near_zero(p.c, 1.0)) {
      cq_den_ = one_minus<T>(p.c / p.q);
      for (long i = 0; i < r_; ++i)
        czi_den_.push_back(one_minus<T>(p.a * p.z[size_t(i)] * p.q / p.c));
    }
  }

  void prepare(long smax) {
    for (auto& t : tab_e_) t.ensure(0, smax);
    for (auto& t : tab_q_) t.ensure(0, smax);
    for (auto& t : tab_az_) t.ensure(0, smax);
    for (auto& t : tab_fz_) t.ensure(0, smax);
    for (auto& t : tab_azqe_) t.ensure(0, smax);
    for (auto& t : tab_azqg_) t.ensure(0, smax);
    gg_.ensure(0, smax);
    aqf_.ensure(0, smax);
    qp_.ensure(-1, 2 * smax + 1);
    wp_.ensure(0, smax);
  }

  // Everything except the c-block, argument (a/Efg)^{|k|}.
  QPochValue<T> base(std::span<const long> k) const {
    long K = 0;
    for (long i = 0; i < r_; ++i) K += k[size_t(i)];
    QPochValue<T> t = detail::vandermonde_ratio(p_.z, k, qp_, vand_den_);
    for (long i = 0; i < r_; ++i) {
      t *= one_minus<T>(p_.a * p_.z[size_t(i)] * qp_.at(k[size_t(i)] + K));
      t /= vwp_den_[size_t(i)];
    }
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        size_t ij = size_t(i * r_ + j);
        t *= tab_e_[ij].at(k[size_t(i)]);
        t /= tab_q_[ij].at(k[size_t(i)]);
      }
    for (long i = 0; i < r_; ++i) {
      t *= tab_az_[size_t(i)].at(K);
      t *= tab_fz_[size_t(i)].at(k[size_t(i)]);
      t /= tab_azqe_[size_t(i)].at(K);
      t /= tab_azqg_[size_t(i)].at(k[size_t(i)]);
    }
    t *= gg_.at(K);
    t /= aqf_.at(K);
    t.scale(wp_.at(K));
    return t;
  }

  // (1 - c q^{|k|-1})/(1 - c/q) prod_i (1 - a z_i q^{k_i+1}/c)/(1 - a z_i q/c)
  QPochValue<T> cblock(std::span<const long> k) const {
    long K = 0;
    for (long i = 0; i < r_; ++i) K += k[size_t(i)];
    QPochValue<T> t = one_minus<T>(p_.c * qp_.at(K - 1));
    t /= cq_den_;
    for (long i = 0; i < r_; ++i) {
      t *= one_minus<T>(p_.a * p_.z[size_t(i)] * qp_.at(k[size_t(i)] + 1) / p_.c);
      t /= czi_den_[size_t(i)];
    }
    return t;
  }

  // l-th partial-fraction correction of the c-block:
  //   (1 - a z_l q^{|k|}) prod_i (1 - q^{k_i} z_i/z_l)
  //   / ((1 - c/q)(1 - a z_l q/c) prod_{i != l} (1 - z_i/z_l))
  QPochValue<T> corr(long l, std::span<const long> k) const {
    long K = 0;
    for (long i = 0; i < r_; ++i) K += k[size_t(i)];
    QPochValue<T> t = one_minus<T>(p_.a * p_.z[size_t(l)] * qp_.at(K));
    for (long i = 0; i < r_; ++i)
      t *= one_minus<T>(qp_.at(k[size_t(i)]) * p_.z[size_t(i)] / p_.z[size_t(l)]);
    t /= cq_den_;
    t /= czi_den_[size_t(l)];
    for (long i = 0; i < r_; ++i)
      if (i != l) t /= one_minus<T>(p_.z[size_t(i)] / p_.z[size_t(l)]);
    return t;
  }

  const T& qpow(long n) const { return qp_.at(n); }

 private:
  ArParams<T> p_;
  long r_;
  PowTable<T> qp_, wp_;
  std::vector<PochTable<T>> tab_e_, tab_q_, tab_az_, tab_fz_, tab_azqe_, tab_azqg_;
  PochTable<T> gg_, aqf_;
  std::vector<QPochValue<T>> vwp_den_, vand_den_, czi_den_;
  QPochValue<T> cq_den_;
};

template <typename T>
QPochValue<T> term_p88(const ArParams<T>& p, std::span<const long> k) {
  const long r = p.r();
  long K = 0;
  for (long i = 0; i < r; ++i) K += k[size_t(i)];
  QPochValue<T> t;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      t *= diff_tagged(p.z[size_t(i)] * pow_int(p.q, k[size_t(i)]),
                       p.z[size_t(j)] * pow_int(p.q, k[size_t(j)]));
      t /= diff_tagged(p.z[size_t(i)], p.z[size_t(j)]);
    }
  for (long i = 0; i < r; ++i) {
    t *= one_minus<T>(p.a * p.z[size_t(i)] * pow_int(p.q, k[size_t(i)] + K));
    t /= one_minus<T>(p.a * p.z[size_t(i)]);
  }
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      t *= qpoch<T>(p.e[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q, k[size_t(i)]);
      t /= qpoch<T>(p.q * p.z[size_t(i)] / p.z[size_t(j)], p.q, k[size_t(i)]);
    }
  for (long i = 0; i < r; ++i) {
    const T& zi = p.z[size_t(i)];
    t *= qpoch<T>(p.a * zi, p.q, K);
    t *= qpoch<T>(p.f * zi, p.q, k[size_t(i)]);
    t /= qpoch<T>(p.a * zi * p.q / p.e[size_t(i)], p.q, K);
    t /= qpoch<T>(p.a * zi * p.q / p.g, p.q, k[size_t(i)]);
  }
  t *= qpoch<T>(p.g, p.q, K);
  t /= qpoch<T>(p.a * p.q / p.f, p.q, K);
  t *= one_minus<T>(p.c * pow_int(p.q, K - 1));
  t /= one_minus<T>(p.c / p.q);
  for (long i = 0; i < r; ++i) {
    t *= one_minus<T>(p.a * p.z[size_t(i)] * pow_int(p.q, k[size_t(i)] + 1) / p.c);
    t /= one_minus<T>(p.a * p.z[size_t(i)] * p.q / p.c);
  }
  t.scale(pow_int(p.a / (p.E() * p.f * p.g), K));
  return t;
}

// ---------------------------------------------------------------------------
// Bilateral r-dimensional 8psi8 summand

template <typename T>
class M88Term {
 public:
  // c_limit replaces the c-block by its c -> 0 limit q^{|k|}.
  M88Term(const ArParams<T>& p, bool c_limit = false)
      : p_(p), r_(p.r()), c_limit_(c_limit), qp_(p.q) {
    if (long(p.b.size()) != r_ || long(p.e.size()) != r_)
      throw domain_error("parameter list sizes disagree with r");
    wp_ = PowTable<T>(pow_int(p.a, r_ + 1) / (p.B() * p.E() * p.f * p.g));
    vand_den_ = detail::pair_denominators(p.z);
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        tab_e_.emplace_back(p.e[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q);
        tab_ab_.emplace_back(p.a * p.z[size_t(i)] * p.q / (p.b[size_t(j)] * p.z[size_t(j)]), p.q);
      }
    for (long i = 0; i < r_; ++i) {
      const T& zi = p.z[size_t(i)];
      tab_bz_.emplace_back(p.b[size_t(i)] * zi, p.q);
      tab_fz_.emplace_back(p.f * zi, p.q);
      tab_azqe_.emplace_back(p.a * zi * p.q / p.e[size_t(i)], p.q);
      tab_azqg_.emplace_back(p.a * zi * p.q / p.g, p.q);
      vwp_den_.push_back(one_minus<T>(p.a * zi));
      if (vwp_den_.back().is_zero()) throw domain_error("a z_i = 1 (special parameter pole)");
    }
    gg_ = PochTable<T>(p.g, p.q);
    aqf_ = PochTable<T>(p.a * p.q / p.f, p.q);
    if (!c_limit_) {
      if (near_zero(p.c, 1.0)) throw domain_error("c = 0: use the c -> 0 limit evaluator");
      cq_den_ = one_minus<T>(p.c / p.q);
      for (long i = 0; i < r_; ++i)
        czi_den_.push_back(one_minus<T>(p.a * p.z[size_t(i)] * p.q / p.c));
    }
  }

  void prepare(const LatticeBox& box) {
    long min_lo = box.lo[0], max_hi = box.hi[0];
    for (long i = 0; i < r_; ++i) {
      min_lo = std::min(min_lo, box.lo[size_t(i)]);
      max_hi = std::max(max_hi, box.hi[size_t(i)]);
    }
    const long slo = box.sum_lo(), shi = box.sum_hi();
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        size_t ij = size_t(i * r_ + j);
        tab_e_[ij].ensure(box.lo[size_t(i)], box.hi[size_t(i)]);
        tab_ab_[ij].ensure(box.lo[size_t(i)], box.hi[size_t(i)]);
      }
    for (long i = 0; i < r_; ++i) {
      tab_bz_[size_t(i)].ensure(slo, shi);
      tab_azqe_[size_t(i)].ensure(slo, shi);
      tab_fz_[size_t(i)].ensure(box.lo[size_t(i)], box.hi[size_t(i)]);
      tab_azqg_[size_t(i)].ensure(box.lo[size_t(i)], box.hi[size_t(i)]);
    }
    gg_.ensure(slo, shi);
    aqf_.ensure(slo, shi);
    qp_.ensure(slo + min_lo - 1, shi + max_hi + 1);
    wp_.ensure(slo, shi);
  }

  QPochValue<T> term(std::span<const long> k) const {
    long K = 0;
    for (long i = 0; i < r_; ++i) K += k[size_t(i)];
    QPochValue<T> t = detail::vandermonde_ratio(p_.z, k, qp_, vand_den_);
    for (long i = 0; i < r_; ++i) {
      t *= one_minus<T>(p_.a * p_.z[size_t(i)] * qp_.at(k[size_t(i)] + K));
      t /= vwp_den_[size_t(i)];
    }
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) {
        size_t ij = size_t(i * r_ + j);
        t *= tab_e_[ij].at(k[size_t(i)]);
        t /= tab_ab_[ij].at(k[size_t(i)]);
      }
    for (long i = 0; i < r_; ++i) {
      t *= tab_bz_[size_t(i)].at(K);
      t *= tab_fz_[size_t(i)].at(k[size_t(i)]);
      t /= tab_azqe_[size_t(i)].at(K);
      t /= tab_azqg_[size_t(i)].at(k[size_t(i)]);
    }
    t *= gg_.at(K);
    t /= aqf_.at(K);
    if (c_limit_) {
      t.scale(qp_.at(K));
    } else {
      t *= one_minus<T>(p_.c * qp_.at(K - 1));
      t /= cq_den_;
      for (long i = 0; i < r_; ++i) {
        t *= one_minus<T>(p_.a * p_.z[size_t(i)] * qp_.at(k[size_t(i)] + 1) / p_.c);
        t /= czi_den_[size_t(i)];
      }
    }
    t.scale(wp_.at(K));
    return t;
  }

 private:
  ArParams<T> p_;
  long r_;
  bool c_limit_;
  PowTable<T> qp_, wp_;
  std::vector<PochTable<T>> tab_e_, tab_ab_, tab_bz_, tab_fz_, tab_azqe_, tab_azqg_;
  PochTable<T> gg_, aqf_;
  std::vector<QPochValue<T>> vwp_den_, vand_den_, czi_den_;
  QPochValue<T> cq_den_;
};

template <typename T>
QPochValue<T> term_m88(const ArParams<T>& p, std::span<const long> k, bool c_limit = false) {
  const long r = p.r();
  long K = 0;
  for (long i = 0; i < r; ++i) K += k[size_t(i)];
  QPochValue<T> t;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      t *= diff_tagged(p.z[size_t(i)] * pow_int(p.q, k[size_t(i)]),
                       p.z[size_t(j)] * pow_int(p.q, k[size_t(j)]));
      t /= diff_tagged(p.z[size_t(i)], p.z[size_t(j)]);
    }
  for (long i = 0; i < r; ++i) {
    t *= one_minus<T>(p.a * p.z[size_t(i)] * pow_int(p.q, k[size_t(i)] + K));
    t /= one_minus<T>(p.a * p.z[size_t(i)]);
  }
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      t *= qpoch<T>(p.e[size_t(j)] * p.z[size_t(i)] / p.z[size_t(j)], p.q, k[size_t(i)]);
      t /= qpoch<T>(p.a * p.z[size_t(i)] * p.q / (p.b[size_t(j)] * p.z[size_t(j)]), p.q,
                    k[size_t(i)]);
    }
  for (long i = 0; i < r; ++i) {
    const T& zi = p.z[size_t(i)];
    t *= qpoch<T>(p.b[size_t(i)] * zi, p.q, K);
    t *= qpoch<T>(p.f * zi, p.q, k[size_t(i)]);
    t /= qpoch<T>(p.a * zi * p.q / p.e[size_t(i)], p.q, K);
    t /= qpoch<T>(p.a * zi * p.q / p.g, p.q, k[size_t(i)]);
  }
  t *= qpoch<T>(p.g, p.q, K);
  t /= qpoch<T>(p.a * p.q / p.f, p.q, K);
  if (c_limit) {
    t.scale(pow_int(p.q, K));
  } else {
    t *= one_minus<T>(p.c * pow_int(p.q, K - 1));
    t /= one_minus<T>(p.c / p.q);
    for (long i = 0; i < r; ++i) {
      t *= one_minus<T>(p.a * p.z[size_t(i)] * pow_int(p.q, k[size_t(i)] + 1) / p.c);
      t /= one_minus<T>(p.a * p.z[size_t(i)] * p.q / p.c);
    }
  }
  t.scale(pow_int(pow_int(p.a, r + 1) / (p.B() * p.E() * p.f * p.g), K));
  return t;
}

// Weyl-denominator-type factor prod_{i<j} (z_i q^{k_i} - z_j q^{k_j})/(z_i - z_j).
template <typename T>
T vandermonde_factor(const std::vector<T>& z, std::span<const long> k, const T& q) {
  const long r = long(z.size());
  QPochValue<T> t;
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      QPochValue<T> den = diff_tagged(z[size_t(i)], z[size_t(j)]);
      if (den.is_zero()) throw domain_error("coincident z parameters");
      t *= diff_tagged(z[size_t(i)] * pow_int(q, k[size_t(i)]),
                       z[size_t(j)] * pow_int(q, k[size_t(j)]));
      t /= den;
    }
  return t.value();
}

}  // namespace qsum
