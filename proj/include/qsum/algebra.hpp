#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qsum/params.hpp"
#include "qsum/qpoch.hpp"

// Purely rational identities used by the derivations.  Everything here is
// templated so the same formulas run in complex doubles and, where the
// identity is rational, in exact arithmetic (where residuals must be
// exactly zero).

namespace qsum {

namespace detail {

// Reciprocal of (1 - x) with a pole check.
template <typename T>
T inv_one_minus(const T& x, const char* what) {
  QPochValue<T> f = one_minus(x);
  if (f.is_zero()) throw pole_error(std::string(what) + ": factor 1 - x vanishes");
  return T(1) / f.reg;
}

template <typename T>
void require_nonzero(const T& x, const char* what) {
  if (near_zero(x, 1.0)) throw pole_error(std::string(what) + ": value vanishes");
}

}  // namespace detail

// Decomposition of the c-dependent term ratio of the unilateral 8phi7:
//   (1-cq^{k-1})(1-aq^{k+1}/c) / ((1-c/q)(1-aq/c))
//     = q^k + (1-aq^k)(1-q^k) / ((1-c/q)(1-aq/c))
template <typename T>
T pbz2_residual(const T& a, const T& c, const T& q, long k) {
  detail::require_nonzero(c, "pbz2");
  detail::require_nonzero(q, "pbz2");
  T den = detail::inv_one_minus<T>(c / q, "pbz2") * detail::inv_one_minus<T>(a * q / c, "pbz2");
  T qk = pow_int(q, k);
  T lhs = (T(1) - c * qk / q) * (T(1) - a * q * qk / c) * den;
  T rhs = qk + (T(1) - a * qk) * (T(1) - qk) * den;
  return lhs - rhs;
}

// Partial fraction decomposition
//   prod_i (1-t z_i y_i)/(1-t z_i)
//     = Y + sum_l prod_i (1-y_i z_i/z_l) / ((1-t z_l) prod_{i!=l} (1-z_i/z_l))
template <typename T>
T pfd_residual(const PartialFractionInput<T>& in) {
  const long r = in.r();
  T lhs(1);
  for (long i = 0; i < r; ++i)
    lhs = lhs * (T(1) - in.t * in.z[i] * in.y[i]) *
          detail::inv_one_minus<T>(in.t * in.z[i], "pfd");
  T rhs = in.Y();
  for (long l = 0; l < r; ++l) {
    T num(1);
    for (long i = 0; i < r; ++i) num = num * (T(1) - in.y[i] * in.z[i] / in.z[l]);
    T den = T(1) - in.t * in.z[l];
    for (long i = 0; i < r; ++i)
      if (i != l) den = den * (T(1) - in.z[i] / in.z[l]);
    detail::require_nonzero(den, "pfd");
    rhs = rhs + num / den;
  }
  return lhs - rhs;
}

// The inner step of the u-extension: 1 - Y = sum_l prod_i (1-y_i z_i/z_l) /
// prod_{i!=l} (1-z_i/z_l)  (the t = 0 case of the decomposition above).
template <typename T>
T pfd_t0_residual(const PartialFractionInput<T>& in) {
  const long r = in.r();
  T rhs(0);
  for (long l = 0; l < r; ++l) {
    T num(1);
    for (long i = 0; i < r; ++i) num = num * (T(1) - in.y[i] * in.z[i] / in.z[l]);
    T den(1);
    for (long i = 0; i < r; ++i)
      if (i != l) den = den * (T(1) - in.z[i] / in.z[l]);
    detail::require_nonzero(den, "pfd-t0");
    rhs = rhs + num / den;
  }
  return (T(1) - in.Y()) - rhs;
}

// u-extension of the partial fraction decomposition:
//   (1-uY)/(1-u) prod_i (1-t z_i y_i)/(1-t z_i)
//     = Y + sum_l (1-uY t z_l) prod_i (1-y_i z_i/z_l)
//           / ((1-u)(1-t z_l) prod_{i!=l} (1-z_i/z_l))
template <typename T>
T lemma_pbz_residual(const PartialFractionInput<T>& in) {
  const long r = in.r();
  const T Y = in.Y();
  T inv_u = detail::inv_one_minus<T>(in.u, "lemma-pbz");
  T lhs = (T(1) - in.u * Y) * inv_u;
  for (long i = 0; i < r; ++i)
    lhs = lhs * (T(1) - in.t * in.z[i] * in.y[i]) *
          detail::inv_one_minus<T>(in.t * in.z[i], "lemma-pbz");
  T rhs = Y;
  for (long l = 0; l < r; ++l) {
    T num = (T(1) - in.u * Y * in.t * in.z[l]);
    for (long i = 0; i < r; ++i) num = num * (T(1) - in.y[i] * in.z[i] / in.z[l]);
    T den = (T(1) - in.u) * (T(1) - in.t * in.z[l]);
    for (long i = 0; i < r; ++i)
      if (i != l) den = den * (T(1) - in.z[i] / in.z[l]);
    detail::require_nonzero(den, "lemma-pbz");
    rhs = rhs + num / den;
  }
  return lhs - rhs;
}

enum class PbzVariant { c_split, e_product };

// The two instances of the u-extension used in the derivations, rewritten
// exactly as displayed.  The c-split instance (t -> aq/c, u -> c/q,
// y_i -> q^{k_i}) expands the c-block of the r-dimensional summand; the
// e-product instance (t -> c/aq, u -> aq/cEf, y_i -> e_i, z_i -> 1/z_i)
// collapses the sum over l in the combined product form.
template <typename T>
T lemma_pbz_rewritten_residual(const ArParams<T>& p, PbzVariant variant,
                               std::span<const long> k = {}) {
  const long r = p.r();
  if (variant == PbzVariant::c_split) {
    long K = 0;
    for (long i = 0; i < r; ++i) K += k[size_t(i)];
    detail::require_nonzero(p.c, "c-split");
    T inv_cq = detail::inv_one_minus<T>(p.c / p.q, "c-split");
    T lhs = (T(1) - p.c * pow_int(p.q, K - 1)) * inv_cq;
    for (long i = 0; i < r; ++i)
      lhs = lhs * (T(1) - p.a * p.z[i] * pow_int(p.q, k[size_t(i)] + 1) / p.c) *
            detail::inv_one_minus<T>(p.a * p.z[i] * p.q / p.c, "c-split");
    T rhs = pow_int(p.q, K);
    for (long l = 0; l < r; ++l) {
      T num = T(1) - p.a * p.z[l] * pow_int(p.q, K);
      for (long i = 0; i < r; ++i)
        num = num * (T(1) - pow_int(p.q, k[size_t(i)]) * p.z[i] / p.z[l]);
      T den = (T(1) - p.c / p.q) * (T(1) - p.a * p.z[l] * p.q / p.c);
      for (long i = 0; i < r; ++i)
        if (i != l) den = den * (T(1) - p.z[i] / p.z[l]);
      detail::require_nonzero(den, "c-split");
      rhs = rhs + num / den;
    }
    return lhs - rhs;
  }

  // e_product:
  //   sum_l (1-f z_l) prod_i (1-e_i z_l/z_i)
  //         / ((1-cEf/aq)(1-a z_l q/c) prod_{i!=l} (1-z_l/z_i))
  //     = 1 - (1-cf/aq)/(1-cEf/aq) prod_i (1-c e_i/a z_i q)/(1-c/a z_i q)
  const T E = p.E();
  detail::require_nonzero(p.c, "e-product");
  T lhs(0);
  for (long l = 0; l < r; ++l) {
    T num = T(1) - p.f * p.z[l];
    for (long i = 0; i < r; ++i) num = num * (T(1) - p.e[i] * p.z[l] / p.z[i]);
    T den = (T(1) - p.c * E * p.f / (p.a * p.q)) * (T(1) - p.a * p.z[l] * p.q / p.c);
    for (long i = 0; i < r; ++i)
      if (i != l) den = den * (T(1) - p.z[l] / p.z[i]);
    detail::require_nonzero(den, "e-product");
    lhs = lhs + num / den;
  }
  T prod(1);
  for (long i = 0; i < r; ++i)
    prod = prod * (T(1) - p.c * p.e[i] / (p.a * p.z[i] * p.q)) *
           detail::inv_one_minus<T>(p.c / (p.a * p.z[i] * p.q), "e-product");
  T rhs = T(1) - (T(1) - p.c * p.f / (p.a * p.q)) *
                     detail::inv_one_minus<T>(p.c * E * p.f / (p.a * p.q), "e-product") * prod;
  return lhs - rhs;
}

// One-dimensional prefactor identity connecting the combined product form
// with the final closed form of the unilateral 8phi7 summation:
//   (1 - (1-e)(1-f)(1-g)/((1-c/q)(1-aq/c)(1-efg/a))) (1-a/efg)/(1-a/ef)
//     = (1 - (1-1/g)(1-cf/aq)(1-ce/aq)/((1-c/gq)(1-ef/a)(1-c/aq)))
//       (1-c/gq)/(1-c/q)
template <typename T>
T prefactor_1d_residual(const T& a, const T& c, const T& e, const T& f, const T& g, const T& q) {
  detail::require_nonzero(c, "prefactor-1d");
  detail::require_nonzero(g, "prefactor-1d");
  T lhs = (T(1) - (T(1) - e) * (T(1) - f) * (T(1) - g) *
                      detail::inv_one_minus<T>(c / q, "prefactor-1d") *
                      detail::inv_one_minus<T>(a * q / c, "prefactor-1d") *
                      detail::inv_one_minus<T>(e * f * g / a, "prefactor-1d")) *
          (T(1) - a / (e * f * g)) * detail::inv_one_minus<T>(a / (e * f), "prefactor-1d");
  T rhs = (T(1) - (T(1) - T(1) / g) * (T(1) - c * f / (a * q)) * (T(1) - c * e / (a * q)) *
                      detail::inv_one_minus<T>(c / (g * q), "prefactor-1d") *
                      detail::inv_one_minus<T>(e * f / a, "prefactor-1d") *
                      detail::inv_one_minus<T>(c / (a * q), "prefactor-1d")) *
          (T(1) - c / (g * q)) * detail::inv_one_minus<T>(c / q, "prefactor-1d");
  return lhs - rhs;
}

// r-dimensional prefactor identity closing the unilateral derivation:
//   1 - (1-g)(1-cEf/aq)/((1-c/q)(1-Efg/a))
//     = (1-c/gq)(1-a/Ef)/((1-c/q)(1-a/Efg))
template <typename T>
T prefactor_rd_residual(const ArParams<T>& p) {
  const T E = p.E();
  detail::require_nonzero(p.c, "prefactor-rd");
  detail::require_nonzero(p.g, "prefactor-rd");
  T lhs = T(1) - (T(1) - p.g) * (T(1) - p.c * E * p.f / (p.a * p.q)) *
                     detail::inv_one_minus<T>(p.c / p.q, "prefactor-rd") *
                     detail::inv_one_minus<T>(E * p.f * p.g / p.a, "prefactor-rd");
  T rhs = (T(1) - p.c / (p.g * p.q)) * (T(1) - p.a / (E * p.f)) *
          detail::inv_one_minus<T>(p.c / p.q, "prefactor-rd") *
          detail::inv_one_minus<T>(p.a / (E * p.f * p.g), "prefactor-rd");
  return lhs - rhs;
}

// Product rearrangement for shifted Vandermonde indices:
//   prod_{i,j} (q z_i/z_j;q)_{m_j-m_i}
//     = (-1)^{(r-1)|m|} q^{-C(|m|+1,2) + r sum_i C(m_i+1,2)}
//       prod_i z_i^{|m|-r m_i}
//       prod_{i<j} (z_i q^{-m_i} - z_j q^{-m_j}) / (z_i - z_j)
template <typename T>
T lemma312_residual(const std::vector<T>& z, const std::vector<long>& m, const T& q) {
  const long r = long(z.size());
  long msum = 0;
  for (long mi : m) msum += mi;

  QPochValue<T> lhs;
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j)
      lhs *= qpoch<T>(q * z[i] / z[j], q, m[size_t(j)] - m[size_t(i)]);

  long exponent = -binom2(msum + 1);
  for (long mi : m) exponent += r * binom2(mi + 1);
  T rhs = scalar_from_int((r - 1) * msum % 2 == 0 ? 1 : -1, q) * pow_int(q, exponent);
  for (long i = 0; i < r; ++i) rhs = rhs * pow_int(z[i], msum - r * m[size_t(i)]);
  for (long i = 0; i < r; ++i)
    for (long j = i + 1; j < r; ++j) {
      T den = z[i] - z[j];
      detail::require_nonzero(den, "lemma312");
      rhs = rhs * (z[i] * pow_int(q, -m[size_t(i)]) - z[j] * pow_int(q, -m[size_t(j)])) / den;
    }
  return lhs.value() - rhs;
}

// The two product identities used to normalize the shifted bilateral sum:
//  (i)  prod_{i,j} (e_j z_i/z_j;q)_{-m_i}
//         = (-1)^{r|m|} E^{-|m|} q^{r sum_i C(m_i+1,2)} prod_i z_i^{|m|-r m_i}
//           prod_{i,j} (z_i q/e_i z_j;q)_{m_j}^{-1}
//  (ii) prod_{i,j} (q^{1+m_j} z_i/z_j;q)_{-m_i}^{-1}
//         = prod_{i,j} (q z_i/z_j;q)_{m_j} / (q z_i/z_j;q)_{m_j-m_i}
template <typename T>
std::pair<T, T> e_product_residuals(const ArParams<T>& p, const std::vector<long>& m) {
  const long r = p.r();
  long msum = 0;
  for (long mi : m) msum += mi;

  QPochValue<T> lhs1;
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j)
      lhs1 *= qpoch<T>(p.e[j] * p.z[i] / p.z[j], p.q, -m[size_t(i)]);
  long expo = 0;
  for (long mi : m) expo += r * binom2(mi + 1);
  QPochValue<T> rhs1{scalar_from_int(r * msum % 2 == 0 ? 1 : -1, p.q) *
                         pow_int(p.E(), -msum) * pow_int(p.q, expo),
                     0};
  for (long i = 0; i < r; ++i) rhs1.reg = rhs1.reg * pow_int(p.z[i], msum - r * m[size_t(i)]);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j)
      rhs1 /= qpoch<T>(p.z[i] * p.q / (p.e[i] * p.z[j]), p.q, m[size_t(j)]);

  QPochValue<T> lhs2;
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j)
      lhs2 /= qpoch<T>(pow_int(p.q, 1 + m[size_t(j)]) * p.z[i] / p.z[j], p.q, -m[size_t(i)]);
  QPochValue<T> rhs2;
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j)
      rhs2 *= qpoch<T>(p.q * p.z[i] / p.z[j], p.q, m[size_t(j)]) /
              qpoch<T>(p.q * p.z[i] / p.z[j], p.q, m[size_t(j)] - m[size_t(i)]);

  return {lhs1.value() - rhs1.value(), lhs2.value() - rhs2.value()};
}

// Rational equivalence of the two printed closed forms of the bilateral
// summation: with A1, A2 the bracket-times-prefactor parts, the product
// sides differ exactly by (1-a/ef)/(1-a^2/befg), so the forms agree iff
//   A1 (1 - a^2/befg) = A2 (1 - a/ef).
template <typename T>
T shukla_form_equivalence_residual(const T& a, const T& b, const T& c, const T& e, const T& f,
                                   const T& g, const T& q) {
  T A1 = (T(1) - (T(1) - b * e / a) * (T(1) - b * f / a) * (T(1) - b * g / a) *
                     detail::inv_one_minus<T>(b * q / c, "form-equivalence") *
                     detail::inv_one_minus<T>(b * c / (a * q), "form-equivalence") *
                     detail::inv_one_minus<T>(b * e * f * g / (a * a), "form-equivalence")) *
         (T(1) - c / (b * q)) * (T(1) - b * c / (a * q));
  T A2 = (T(1) - (T(1) - a / (b * g)) * (T(1) - c * f / (a * q)) * (T(1) - c * e / (a * q)) *
                     detail::inv_one_minus<T>(c / (g * q), "form-equivalence") *
                     detail::inv_one_minus<T>(e * f / a, "form-equivalence") *
                     detail::inv_one_minus<T>(c / (b * q), "form-equivalence")) *
         (T(1) - c / (b * q)) * (T(1) - c / (g * q));
  return A1 * (T(1) - a * a / (b * e * f * g)) - A2 * (T(1) - a / (e * f));
}

}  // namespace qsum
