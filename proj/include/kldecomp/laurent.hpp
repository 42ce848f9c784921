#ifndef KLDECOMP_LAURENT_HPP
#define KLDECOMP_LAURENT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kld {

using bigint = boost::multiprecision::cpp_int;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of Z[q, q^-1], stored densely from the lowest nonzero exponent.
// Both ends of the coefficient vector are nonzero unless the polynomial is 0.
template <class C>
class basic_laurent {
 public:
  using coeff_type = C;

  basic_laurent() = default;
  basic_laurent(C constant) { set_monomial(std::move(constant), 0); }  // NOLINT
  basic_laurent(int constant) : basic_laurent(C(constant)) {}         // NOLINT

  static basic_laurent monomial(C c, int exponent) {
    basic_laurent p;
    p.set_monomial(std::move(c), exponent);
    return p;
  }
  static basic_laurent q(int exponent = 1) { return monomial(C(1), exponent); }

  bool is_zero() const { return c_.empty(); }
  int low_degree() const { return lo_; }
  int high_degree() const { return lo_ + static_cast<int>(c_.size()) - 1; }

  C coeff(int exponent) const {
    const long i = static_cast<long>(exponent) - lo_;
    if (i < 0 || i >= static_cast<long>(c_.size())) return C(0);
    return c_[static_cast<std::size_t>(i)];
  }

  // Calls f(exponent, coeff) for every nonzero term, ascending.
  template <class F>
  void for_each_term(F&& f) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) f(lo_ + static_cast<int>(i), c_[i]);
  }

  std::size_t term_count() const {
    return static_cast<std::size_t>(
        std::count_if(c_.begin(), c_.end(), [](const C& x) { return x != 0; }));
  }

  // Multiplication by q^k.
  basic_laurent shifted(int k) const {
    basic_laurent r = *this;
    if (!r.c_.empty()) r.lo_ += k;
    return r;
  }

  basic_laurent& operator+=(const basic_laurent& b) { return axpy(C(1), b); }
  basic_laurent& operator-=(const basic_laurent& b) { return axpy(C(-1), b); }

  // this += k * b
  basic_laurent& axpy(const C& k, const basic_laurent& b) {
    if (b.c_.empty() || k == 0) return *this;
    if (c_.empty()) {
      lo_ = b.lo_;
      c_.assign(b.c_.size(), C(0));
    }
    const int lo = std::min(lo_, b.lo_);
    const int hi = std::max(high_degree(), b.high_degree());
    if (lo < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), C(0));
      lo_ = lo;
    }
    if (hi > high_degree()) c_.resize(static_cast<std::size_t>(hi - lo_ + 1), C(0));
    const std::size_t off = static_cast<std::size_t>(b.lo_ - lo_);
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      if (k == 1)
        c_[off + i] += b.c_[i];
      else
        c_[off + i] += k * b.c_[i];
    }
    trim();
    return *this;
  }

  basic_laurent& operator*=(const C& k) {
    if (k == 0) {
      c_.clear();
      lo_ = 0;
    } else {
      for (auto& x : c_) x *= k;
    }
    return *this;
  }

  friend basic_laurent operator+(basic_laurent a, const basic_laurent& b) { return a += b; }
  friend basic_laurent operator-(basic_laurent a, const basic_laurent& b) { return a -= b; }
  friend basic_laurent operator-(basic_laurent a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend basic_laurent operator*(basic_laurent a, const C& k) { return a *= k; }
  friend basic_laurent operator*(const C& k, basic_laurent a) { return a *= k; }

  friend basic_laurent operator*(const basic_laurent& a, const basic_laurent& b) {
    basic_laurent r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  basic_laurent& operator*=(const basic_laurent& b) { return *this = *this * b; }

  friend bool operator==(const basic_laurent& a, const basic_laurent& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }

  // q -> q^-1
  basic_laurent bar() const {
    basic_laurent r;
    if (c_.empty()) return r;
    r.lo_ = -high_degree();
    r.c_.assign(c_.rbegin(), c_.rend());
    return r;
  }

  // q -> -q^-1
  basic_laurent koszul_twist() const {
    basic_laurent r = bar();
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if ((r.lo_ + static_cast<int>(i)) % 2 != 0) r.c_[i] = -r.c_[i];
    return r;
  }

  // q -> -q
  basic_laurent negate_variable() const {
    basic_laurent r = *this;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if ((r.lo_ + static_cast<int>(i)) % 2 != 0) r.c_[i] = -r.c_[i];
    return r;
  }

  C eval_one() const {
    C s(0);
    for (const auto& x : c_) s += x;
    return s;
  }

  // Terms with exponent > 0 only.
  basic_laurent positive_part() const {
    basic_laurent r;
    for_each_term([&](int k, const C& c) {
      if (k > 0) r.axpy(C(1), monomial(c, k));
    });
    return r;
  }

  bool all_coefficients_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const C& x) { return x >= 0; });
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for_each_term([&](int k, const C& c) {
      const bool neg = c < 0;
      const C mag = neg ? C(-c) : c;
      if (neg)
        out += '-';
      else if (!out.empty())
        out += '+';
      const bool unit = (mag == 1);
      if (!unit || k == 0) out += to_dec(mag);
      if (k == 0) return;
      out += 'q';
      if (k != 1) {
        out += '^';
        out += std::to_string(k);
      }
    });
    return out;
  }

  // Accepts the canonical form plus optional whitespace and '*' between
  // coefficient and q; repeated exponents are summed.
  static basic_laurent parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw parse_error("empty polynomial");
    basic_laurent r;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (!first) {
        throw parse_error("expected '+' or '-' in \"" + s + "\"");
      }
      first = false;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      const bool had_digits = j > i;
      C c = had_digits ? C(s.substr(i, j - i)) : C(1);
      i = j;
      int k = 0;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || s[i] != 'q') throw parse_error("dangling '*' in \"" + s + "\"");
      }
      if (i < s.size() && s[i] == 'q') {
        ++i;
        k = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::size_t e0 = i;
          if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
          std::size_t e1 = i;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
          if (i == e1) throw parse_error("missing exponent in \"" + s + "\"");
          k = std::stoi(s.substr(e0, i - e0));
        }
      } else if (!had_digits) {
        throw parse_error("malformed term in \"" + s + "\"");
      }
      if (sign < 0) c = -c;
      r.axpy(C(1), monomial(c, k));
    }
    return r;
  }

 private:
  void set_monomial(C c, int exponent) {
    c_.clear();
    lo_ = 0;
    if (c == 0) return;
    lo_ = exponent;
    c_.push_back(std::move(c));
  }

  void trim() {
    std::size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    std::size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    c_.resize(e);
    if (b > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(b));
      lo_ += static_cast<int>(b);
    }
  }

  static std::string to_dec(const C& x) {
    if constexpr (std::is_integral_v<C>)
      return std::to_string(x);
    else
      return x.str();
  }

  int lo_ = 0;
  std::vector<C> c_;
};

using LaurentPoly = basic_laurent<bigint>;

template <class C>
basic_laurent<C> bar(const basic_laurent<C>& p) { return p.bar(); }
template <class C>
basic_laurent<C> koszul_twist(const basic_laurent<C>& p) { return p.koszul_twist(); }
template <class C>
C eval_one(const basic_laurent<C>& p) { return p.eval_one(); }

template <class C>
std::string to_string(const basic_laurent<C>& p) { return p.str(); }

inline LaurentPoly parse_poly(std::string_view s) { return LaurentPoly::parse(s); }

// (-q)^k
inline LaurentPoly neg_q_pow(int k) { return LaurentPoly::monomial(bigint(k % 2 ? -1 : 1), k); }

inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace kld

#endif  // KLDECOMP_LAURENT_HPP
