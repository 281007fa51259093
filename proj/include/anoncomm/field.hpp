#ifndef ANONCOMM_FIELD_HPP
#define ANONCOMM_FIELD_HPP

#include <array>
#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "anoncomm/common.hpp"

namespace anoncomm {

// Desk-scale enumeration only; larger primes are deliberately unsupported.
inline constexpr std::array<std::uint32_t, 6> kSupportedPrimes{2, 3, 5, 7, 11, 13};

inline bool is_supported_prime(std::uint32_t p) {
  return std::find(kSupportedPrimes.begin(), kSupportedPrimes.end(), p) !=
         kSupportedPrimes.end();
}

inline void require_supported_prime(std::uint32_t p) {
  if (!is_supported_prime(p))
    throw Error("unsupported field modulus " + std::to_string(p) +
                " (supported primes: 2,3,5,7,11,13)");
}

/// One residue of F_p; the modulus travels with the value.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {
    require_supported_prime(p);
    if (value_ >= p_) throw Error("field element out of range");
  }

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    a.check_same(b);
    return FieldElement((a.value_ + b.value_) % a.p_, a.p_);
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    a.check_same(b);
    return FieldElement((a.value_ + a.p_ - b.value_) % a.p_, a.p_);
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    a.check_same(b);
    return FieldElement((a.value_ * b.value_) % a.p_, a.p_);
  }
  FieldElement operator-() const { return FieldElement((p_ - value_) % p_, p_); }

  FieldElement inverse() const {
    if (value_ == 0) throw Error("inverse of zero");
    // p <= 13, scan is fine
    for (std::uint32_t x = 1; x < p_; ++x)
      if ((x * value_) % p_ == 1) return FieldElement(x, p_);
    throw Error("no inverse found (modulus not prime?)");
  }

  bool operator==(const FieldElement& o) const {
    return value_ == o.value_ && p_ == o.p_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check_same(const FieldElement& o) const {
    if (p_ != o.p_) throw Error("field modulus mismatch");
  }
  std::uint32_t value_;
  std::uint32_t p_;
};

/// Fixed-length vector of F_p symbols sharing one modulus. Symbols are kept
/// as raw residues for speed; the modulus is a single class member.
class SymbolVector {
 public:
  SymbolVector() : p_(2) {}
  SymbolVector(std::vector<std::uint32_t> elems, std::uint32_t p)
      : elems_(std::move(elems)), p_(p) {
    require_supported_prime(p);
    for (auto v : elems_)
      if (v >= p_) throw Error("symbol out of range for modulus");
  }
  SymbolVector(std::initializer_list<std::uint32_t> elems, std::uint32_t p)
      : SymbolVector(std::vector<std::uint32_t>(elems), p) {}

  static SymbolVector zero(std::size_t len, std::uint32_t p) {
    return SymbolVector(std::vector<std::uint32_t>(len, 0), p);
  }

  std::size_t size() const { return elems_.size(); }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<std::uint32_t>& elems() const { return elems_; }

  bool operator==(const SymbolVector& o) const {
    return p_ == o.p_ && elems_ == o.elems_;
  }
  bool operator!=(const SymbolVector& o) const { return !(*this == o); }

  SymbolVector slice(std::size_t begin, std::size_t len) const {
    if (begin + len > elems_.size()) throw Error("slice out of range");
    return SymbolVector(
        std::vector<std::uint32_t>(elems_.begin() + begin, elems_.begin() + begin + len),
        p_);
  }

 private:
  std::vector<std::uint32_t> elems_;
  std::uint32_t p_;
};

inline SymbolVector vec_add(const SymbolVector& x, const SymbolVector& y) {
  if (x.modulus() != y.modulus()) throw Error("vec_add: modulus mismatch");
  if (x.size() != y.size()) throw Error("vec_add: length mismatch");
  std::vector<std::uint32_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + y[i]) % x.modulus();
  return SymbolVector(std::move(out), x.modulus());
}

inline SymbolVector scale(FieldElement c, const SymbolVector& v) {
  if (c.modulus() != v.modulus()) throw Error("scale: modulus mismatch");
  std::vector<std::uint32_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (c.value() * v[i]) % v.modulus();
  return SymbolVector(std::move(out), v.modulus());
}

/// Row-major matrix over F_p with explicit (rows, cols). The flat layout lets
/// the search module enumerate matrices as mixed-radix integers.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    require_supported_prime(p);
  }
  Matrix(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> data,
         std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(std::move(data)) {
    require_supported_prime(p);
    if (data_.size() != rows * cols) throw Error("matrix data size mismatch");
    for (auto v : data_)
      if (v >= p_) throw Error("matrix entry out of range");
  }

  static Matrix identity(std::size_t n, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.p_ != b.p_) throw Error("matrix modulus mismatch");
    if (a.cols_ != b.rows_) throw Error("matrix dimension mismatch");
    Matrix out(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint32_t aik = a.at(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out.at(i, j) = (out.at(i, j) + aik * b.at(k, j)) % a.p_;
      }
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

inline SymbolVector mat_apply(const Matrix& m, const SymbolVector& v) {
  if (m.modulus() != v.modulus()) throw Error("mat_apply: modulus mismatch");
  if (m.cols() != v.size()) throw Error("mat_apply: dimension mismatch");
  std::vector<std::uint32_t> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m.at(r, c) * v[c];
    out[r] = static_cast<std::uint32_t>(acc % m.modulus());
  }
  return SymbolVector(std::move(out), m.modulus());
}

/// Rank over F_p by Gaussian elimination.
inline std::size_t rank(Matrix m) {
  const std::uint32_t p = m.modulus();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
    const std::uint32_t inv = FieldElement(m.at(r, c), p).inverse().value();
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = (m.at(r, j) * inv) % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const std::uint32_t f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = (m.at(i, j) + (p - f) * m.at(r, j)) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace anoncomm

#endif  // ANONCOMM_FIELD_HPP
