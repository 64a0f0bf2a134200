#include "mixmaster/surd.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace mixmaster::surd {

namespace {

BigInt isqrt(const BigInt& n) {
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

bool is_square(const BigInt& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Splits D into (c, d) with D = c^2 * d and d square-free.
std::pair<BigInt, BigInt> split_square(BigInt D) {
  BigInt c = 1;
  for (unsigned long f = 2; f <= 100000 && BigInt(f) * f <= D; ++f) {
    BigInt ff = BigInt(f) * f;
    while (D % ff == 0) {
      D /= ff;
      c *= f;
    }
  }
  if (D > 1 && is_square(D)) {
    BigInt s = isqrt(D);
    c *= s;
    D = 1;
  }
  return {c, D};
}

BigInt common_d(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.is_rational()) return b.D();
  if (b.is_rational()) return a.D();
  if (a.D() != b.D()) {
    throw SurdError("surds live in different quadratic fields: sqrt(" + a.D().get_str() +
                    ") vs sqrt(" + b.D().get_str() + ")");
  }
  return a.D();
}

// floor((P + sqrt(N)) / Q) for non-square N and Q != 0.
BigInt floor_pq(const BigInt& P, const BigInt& N, const BigInt& Q) {
  BigInt s = isqrt(N);
  if (Q > 0) return fdiv(P + s, Q);
  return fdiv(-P - s - 1, -Q);
}

}  // namespace

QuadraticSurd::QuadraticSurd(long value) : p_(value) {}

QuadraticSurd QuadraticSurd::make(BigInt p, BigInt q, BigInt r, BigInt D) {
  if (r == 0) throw SurdError("zero denominator");
  if (D < 0) throw SurdError("negative radicand");
  QuadraticSurd out;
  out.p_ = std::move(p);
  out.q_ = std::move(q);
  out.r_ = std::move(r);
  if (D == 0) {
    out.q_ = 0;
    D = 1;
  }
  auto [c, d] = split_square(D);
  out.q_ *= c;
  out.D_ = d;
  if (out.D_ == 1) {
    out.p_ += out.q_;
    out.q_ = 0;
  }
  out.normalize();
  return out;
}

QuadraticSurd QuadraticSurd::rational(BigInt numerator, BigInt denominator) {
  return make(std::move(numerator), 0, std::move(denominator), 1);
}

QuadraticSurd QuadraticSurd::sqrt_of(BigInt D) { return make(0, 1, 1, std::move(D)); }

void QuadraticSurd::normalize() {
  if (q_ == 0) D_ = 1;
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  BigInt g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

int QuadraticSurd::sign() const {
  int sp = sgn(p_);
  int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // opposite signs: compare p^2 with q^2 D
  BigInt lhs = p_ * p_;
  BigInt rhs = q_ * q_ * D_;
  if (lhs > rhs) return sp;
  if (lhs < rhs) return sq;
  return 0;
}

QuadraticSurd QuadraticSurd::conjugate() const {
  QuadraticSurd out = *this;
  out.q_ = -out.q_;
  return out;
}

QuadraticSurd QuadraticSurd::reciprocal() const {
  if (is_zero()) throw SurdError("division by zero");
  BigInt norm = p_ * p_ - q_ * q_ * D_;
  return make(r_ * p_, -r_ * q_, norm, D_);
}

BigInt QuadraticSurd::floor() const {
  BigInt s;
  if (q_ >= 0) {
    s = isqrt(q_ * q_ * D_);
  } else {
    BigInt t = q_ * q_ * D_;
    s = -isqrt(t);
    if (!is_square(t)) s -= 1;
  }
  return fdiv(p_ + s, r_);
}

template <class Float>
Float QuadraticSurd::to_float() const {
  if (is_zero()) return Float(0);
  const int bits = std::numeric_limits<Float>::digits;
  const bool negative = sign() < 0;
  QuadraticSurd a = negative ? -*this : *this;

  long estimate = static_cast<long>(mpz_sizeinbase(BigInt(abs(a.p_) + abs(a.q_) * (a.D_ + 1)).get_mpz_t(), 2)) -
                  static_cast<long>(mpz_sizeinbase(a.r_.get_mpz_t(), 2));
  long k = bits + 8 - estimate;
  BigInt N;
  QuadraticSurd scaled;
  for (;;) {
    BigInt pow = 1;
    pow <<= static_cast<mp_bitcnt_t>(std::labs(k));
    scaled = k >= 0 ? a * QuadraticSurd::rational(pow) : a / QuadraticSurd::rational(pow);
    N = scaled.floor();
    if (static_cast<long>(mpz_sizeinbase(N.get_mpz_t(), 2)) >= bits + 3 && N > 0) break;
    k += bits;
  }
  const bool sticky = !(scaled - QuadraticSurd::rational(N)).is_zero();
  const long len = static_cast<long>(mpz_sizeinbase(N.get_mpz_t(), 2));
  const long drop = len - bits;
  BigInt m = N >> static_cast<mp_bitcnt_t>(drop);
  BigInt rem = N - (m << static_cast<mp_bitcnt_t>(drop));
  BigInt half = BigInt(1) << static_cast<mp_bitcnt_t>(drop - 1);
  if (rem > half || (rem == half && (sticky || mpz_odd_p(m.get_mpz_t())))) m += 1;

  // m < 2^(bits+1), so it fits in an unsigned 64-bit mantissa after a shift.
  Float mant = 0;
  {
    BigInt hi = m >> 32;
    BigInt lo = m - (hi << 32);
    mant = static_cast<Float>(hi.get_ui()) * Float(4294967296.0) + static_cast<Float>(lo.get_ui());
  }
  Float value = std::ldexp(mant, static_cast<int>(drop - k));
  return negative ? -value : value;
}

double QuadraticSurd::to_double() const { return to_float<double>(); }
long double QuadraticSurd::to_long_double() const { return to_float<long double>(); }

std::string QuadraticSurd::str() const {
  if (q_ == 0) {
    if (r_ == 1) return p_.get_str();
    return p_.get_str() + "/" + r_.get_str();
  }
  std::string num;
  if (p_ != 0) num = p_.get_str();
  BigInt aq = abs(q_);
  std::string term = (aq == 1 ? "" : aq.get_str() + "*") + "sqrt(" + D_.get_str() + ")";
  if (q_ < 0) {
    num += "-" + term;
  } else {
    num += (p_ != 0 ? "+" : "") + term;
  }
  if (r_ == 1) return num;
  if (p_ == 0) return num + "/" + r_.get_str();
  return "(" + num + ")/" + r_.get_str();
}

QuadraticSurd QuadraticSurd::operator-() const {
  QuadraticSurd out = *this;
  out.p_ = -out.p_;
  out.q_ = -out.q_;
  return out;
}

QuadraticSurd& QuadraticSurd::operator+=(const QuadraticSurd& rhs) {
  BigInt D = common_d(*this, rhs);
  *this = make(p_ * rhs.r_ + rhs.p_ * r_, q_ * rhs.r_ + rhs.q_ * r_, r_ * rhs.r_, D);
  return *this;
}

QuadraticSurd& QuadraticSurd::operator-=(const QuadraticSurd& rhs) { return *this += -rhs; }

QuadraticSurd& QuadraticSurd::operator*=(const QuadraticSurd& rhs) {
  BigInt D = common_d(*this, rhs);
  *this = make(p_ * rhs.p_ + q_ * rhs.q_ * D, p_ * rhs.q_ + q_ * rhs.p_, r_ * rhs.r_, D);
  return *this;
}

QuadraticSurd& QuadraticSurd::operator/=(const QuadraticSurd& rhs) {
  common_d(*this, rhs);
  return *this *= rhs.reciprocal();
}

bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
  return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && a.D_ == b.D_;
}

std::strong_ordering operator<=>(const QuadraticSurd& a, const QuadraticSurd& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadraticSurd surd_add(const QuadraticSurd& a, const QuadraticSurd& b) { return a + b; }
QuadraticSurd surd_sub(const QuadraticSurd& a, const QuadraticSurd& b) { return a - b; }
QuadraticSurd surd_mul(const QuadraticSurd& a, const QuadraticSurd& b) { return a * b; }
QuadraticSurd surd_div(const QuadraticSurd& a, const QuadraticSurd& b) { return a / b; }
double surd_to_float(const QuadraticSurd& a) { return a.to_double(); }

QuadraticSurd MinimalPolynomial::evaluate(const QuadraticSurd& x) const {
  return QuadraticSurd::rational(c0) + QuadraticSurd::rational(c1) * x +
         QuadraticSurd::rational(c2) * x * x;
}

MinimalPolynomial minimal_polynomial(const QuadraticSurd& a) {
  if (a.is_rational()) {
    throw SurdError("rational value " + a.str() + " has no quadratic minimal polynomial");
  }
  BigInt c2 = a.r() * a.r();
  BigInt c1 = -2 * a.p() * a.r();
  BigInt c0 = a.p() * a.p() - a.q() * a.q() * a.D();
  BigInt g = gcd(gcd(c0, c1), c2);
  return {c0 / g, c1 / g, c2 / g};
}

void PeriodicCF::validate() const {
  if (period.empty()) throw SurdError("continued fraction period must be nonempty");
  for (auto d : prefix) {
    if (d < 1) throw SurdError("continued fraction digits must be >= 1");
  }
  for (auto d : period) {
    if (d < 1) throw SurdError("continued fraction digits must be >= 1");
  }
}

QuadraticSurd cf_to_surd(const PeriodicCF& cf) {
  cf.validate();
  // convergents h/k of the period: x = (h_n x + h_{n-1}) / (k_n x + k_{n-1})
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (auto d : cf.period) {
    BigInt h = BigInt(static_cast<long>(d)) * h1 + h2;
    BigInt k = BigInt(static_cast<long>(d)) * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  // k_n x^2 + (k_{n-1} - h_n) x - h_{n-1} = 0, positive root
  BigInt b = k2 - h1;
  BigInt disc = b * b + 4 * k1 * h2;
  QuadraticSurd x = QuadraticSurd::make(-b, 1, 2 * k1, disc);
  for (auto it = cf.prefix.rbegin(); it != cf.prefix.rend(); ++it) {
    x = QuadraticSurd(static_cast<long>(*it)) + x.reciprocal();
  }
  return x;
}

PeriodicCF surd_to_cf(const QuadraticSurd& a) {
  if (a.is_rational()) throw SurdError("rational value " + a.str() + " has a finite expansion");
  if (a < QuadraticSurd(1)) throw SurdError("expansion requires a value greater than 1");

  BigInt P = a.p(), Q = a.r(), N = a.q() * a.q() * a.D();
  if (a.q() < 0) {
    P = -P;
    Q = -Q;
  }
  if ((N - P * P) % Q != 0) {
    BigInt aq = abs(Q);
    P *= aq;
    N *= Q * Q;
    Q *= aq;
  }

  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<std::int64_t> digits;
  for (;;) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      PeriodicCF out;
      out.prefix.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
      out.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
      return out;
    }
    seen.emplace(key, digits.size());
    BigInt d = floor_pq(P, N, Q);
    if (!d.fits_slong_p()) throw SurdError("continued fraction digit exceeds 64 bits");
    digits.push_back(d.get_si());
    P = d * Q - P;
    Q = (N - P * P) / Q;
  }
}

std::vector<BigInt> cf_digits(const QuadraticSurd& a, std::size_t n) {
  std::vector<BigInt> out;
  QuadraticSurd x = a;
  while (out.size() < n) {
    BigInt d = x.floor();
    out.push_back(d);
    x -= QuadraticSurd::rational(d);
    if (x.is_zero()) break;
    x = x.reciprocal();
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::int64_t> parse_digit_list(std::string_view s, std::string_view whole) {
  std::vector<std::int64_t> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string_view item = trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos));
    if (item.empty() || item.find_first_not_of("0123456789") != std::string_view::npos) {
      throw SurdError("malformed continued fraction '" + std::string(whole) + "'");
    }
    out.push_back(std::stoll(std::string(item)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

BigInt parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string text(s);
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  BigInt out;
  if (text.empty() || out.set_str(text, 10) != 0) {
    throw SurdError("malformed number '" + std::string(whole) + "'");
  }
  return out;
}

// Small recursive-descent reader for "(p+q*sqrt(D))/r" and its shortened forms.
class SurdReader {
 public:
  explicit SurdReader(std::string_view text) : text_(text) {}

  QuadraticSurd read() {
    QuadraticSurd value;
    skip();
    if (peek() == '(') {
      ++pos_;
      value = sum();
      expect(')');
    } else {
      value = sum();
    }
    skip();
    if (peek() == '/') {
      ++pos_;
      value /= QuadraticSurd::rational(integer());
    }
    skip();
    if (pos_ != text_.size()) fail();
    return value;
  }

 private:
  QuadraticSurd sum() {
    QuadraticSurd total;
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = text_[pos_++] == '-' ? -1 : 1;
    total = term();
    if (sign < 0) total = -total;
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      QuadraticSurd t = term();
      total = c == '+' ? total + t : total - t;
    }
    return total;
  }

  QuadraticSurd term() {
    skip();
    if (starts_with_sqrt()) return radical();
    BigInt coeff = integer();
    skip();
    if (peek() == '*') {
      ++pos_;
      skip();
      if (!starts_with_sqrt()) fail();
      return QuadraticSurd::rational(coeff) * radical();
    }
    return QuadraticSurd::rational(coeff);
  }

  bool starts_with_sqrt() const { return text_.substr(pos_, 5) == "sqrt("; }

  QuadraticSurd radical() {
    pos_ += 5;
    BigInt D = integer();
    expect(')');
    return QuadraticSurd::sqrt_of(D);
  }

  BigInt integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail();
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail();
    ++pos_;
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  [[noreturn]] void fail() const { throw SurdError("malformed surd '" + std::string(text_) + "'"); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PeriodicCF parse_cf(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw SurdError("continued fraction must look like [prefix;period], got '" + std::string(text) + "'");
  }
  s = s.substr(1, s.size() - 2);
  std::size_t semi = s.find(';');
  if (semi == std::string_view::npos) {
    throw SurdError("continued fraction '" + std::string(text) + "' needs ';' between prefix and period");
  }
  PeriodicCF cf;
  cf.prefix = parse_digit_list(s.substr(0, semi), text);
  cf.period = parse_digit_list(s.substr(semi + 1), text);
  cf.validate();
  return cf;
}

std::string format_cf(const PeriodicCF& cf) {
  std::string out = "[";
  for (std::size_t i = 0; i < cf.prefix.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(cf.prefix[i]);
  }
  out += ";";
  for (std::size_t i = 0; i < cf.period.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(cf.period[i]);
  }
  return out + "]";
}

QuadraticSurd parse_surd(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw SurdError("empty value");
  if (s.front() == '[') return cf_to_surd(parse_cf(s));
  if (s.find("sqrt") != std::string_view::npos) return SurdReader(s).read();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw SurdError("zero denominator in '" + std::string(text) + "'");
    return QuadraticSurd::rational(parse_int(s.substr(0, slash), text), den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw SurdError("malformed number '" + std::string(text) + "'");
    }
    bool negative = !whole.empty() && whole.front() == '-';
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string ws(whole);
    if (ws.empty() || ws == "-" || ws == "+") ws += "0";
    BigInt w = parse_int(ws, text);
    BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac));
    BigInt num = abs(w) * scale + f;
    if (negative) num = -num;
    return QuadraticSurd::rational(num, scale);
  }
  return QuadraticSurd::rational(parse_int(s, text));
}

}  // namespace mixmaster::surd
