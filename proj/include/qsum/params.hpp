#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "qsum/scalar.hpp"

namespace qsum {

// Rogers' nonterminating very-well-poised 6phi5 summation parameters.
struct Rogers65Params {
  Complex a, b, c, d, q;
};

// Parameter set shared by the unilateral 8phi7 and both bilateral 8psi8
// forms (b is ignored by the unilateral operations).
struct ShuklaParams {
  Complex a, b, c, e, f, g, q;
};

// r-dimensional 6Phi5 series: a; b_1..b_r; c, d; z_1..z_r; argument w.
template <typename T>
struct Phi65rParams {
  T a;
  std::vector<T> b;
  T c, d;
  std::vector<T> z;
  T q;
  T w;

  long r() const { return long(z.size()); }
  T B() const {
    T p(1);
    for (const T& x : b) p = p * x;
    return p;
  }
};

// Full parameter set of the bilateral r-dimensional 8psi8 summation
// (and of its unilateral b_i -> a special case, which ignores b).
template <typename T>
struct ArParams {
  T a;
  std::vector<T> b;
  T c;
  std::vector<T> e;
  T f, g;
  std::vector<T> z;
  T q;

  long r() const { return long(z.size()); }
  T B() const {
    T p(1);
    for (const T& x : b) p = p * x;
    return p;
  }
  T E() const {
    T p(1);
    for (const T& x : e) p = p * x;
    return p;
  }
};

// Inputs of the partial fraction decomposition and its u-extension.
template <typename T>
struct PartialFractionInput {
  T t, u;
  std::vector<T> y;
  std::vector<T> z;

  long r() const { return long(z.size()); }
  T Y() const {
    T p(1);
    for (const T& x : y) p = p * x;
    return p;
  }
};

// Inclusive per-axis bounds of a truncation region in Z^r.
struct LatticeBox {
  std::vector<long> lo, hi;

  long axes() const { return long(lo.size()); }
  long cells() const {
    long n = 1;
    for (size_t i = 0; i < lo.size(); ++i) n *= hi[i] - lo[i] + 1;
    return n;
  }
  long sum_lo() const { return std::accumulate(lo.begin(), lo.end(), 0L); }
  long sum_hi() const { return std::accumulate(hi.begin(), hi.end(), 0L); }

  static LatticeBox cube(long r, long lo, long hi) {
    return LatticeBox{std::vector<long>(size_t(r), lo), std::vector<long>(size_t(r), hi)};
  }
};

}  // namespace qsum
