#include "lascap/rational.hpp"

#include <cctype>

#include "lascap/errors.hpp"

namespace lascap {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(Integer(std::string(num)), d);
  } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    auto whole = s.substr(0, dot_pos);
    auto frac = s.substr(dot_pos + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    out = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    out = Rational(Integer(std::string(s)));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_nearest(const Rational& q) {
  Rational half(1, 2);
  return q >= 0 ? floor_of(q + half) : Integer(-floor_of(Rational(-q) + half));
}

Rational round_dyadic(const Rational& q, unsigned bits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Rational scaled = q * scale + Rational(1, 2);
  Rational out(floor_of(scaled), scale);
  out.canonicalize();
  return out;
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  require(q >= 0, "sqrt of negative rational");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Integer radicand = floor_of(q * scale * scale);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Rational out(root, scale);
  out.canonicalize();
  return out;
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  Rational lo = sqrt_lower(q, bits);
  if (lo * lo == q) return lo;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Rational out = lo + Rational(1, scale);
  out.canonicalize();
  return out;
}

Integer ceil_sqrt(const Integer& n) {
  require(n >= 0, "sqrt of negative integer");
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root < n) root += 1;
  return root;
}

Rational dot(const RatVector& a, const RatVector& b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

Rational norm2_squared(const RatVector& a) {
  Rational s = 0;
  for (const auto& x : a) s += x * x;
  return s;
}

Rational max_abs(const RatVector& a) {
  Rational m = 0;
  for (const auto& x : a)
    if (abs(x) > m) m = abs(x);
  return m;
}

}  // namespace lascap
