#include "mchain/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "mchain/errors.hpp"

namespace mchain {

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational pow(const Rational& base, unsigned exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

Integer pow(const Integer& base, unsigned exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational pow2(long k) {
  Rational out(1);
  if (k >= 0) {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return out;
}

bool fits_int64(const Integer& x) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return x >= lo && x <= hi;
}

std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw Error("integer does not fit in 64 bits: " + x.get_str());
  if (x.fits_slong_p()) return x.get_si();
  return std::stoll(x.get_str());
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty integer in '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') i = 1;
  if (i == text.size()) throw ParseError("bad integer in '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw ParseError("bad integer in '" + std::string(whole) + "'");
    }
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    Integer ev = parse_integer(text.substr(e + 1), text);
    if (!ev.fits_slong_p() || abs(ev) > 100000) throw ParseError("exponent out of range");
    exp10 = ev.get_si();
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.') {
      if (seen_point) throw ParseError("bad decimal '" + std::string(text) + "'");
      seen_point = true;
      continue;
    }
    if ((c == '-' || c == '+') && i == 0) {
      digits.push_back(c);
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("bad number '" + std::string(text) + "'");
    }
    digits.push_back(c);
    if (seen_point) ++frac_digits;
  }
  Rational r(parse_integer(digits, text));
  long shift = exp10 - frac_digits;
  Integer p10 = pow(Integer(10), static_cast<unsigned>(shift >= 0 ? shift : -shift));
  if (shift >= 0) {
    r *= p10;
  } else {
    r /= p10;
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const Rational& x, int significant, Rounding dir) {
  significant = std::max(significant, 1);
  if (x == 0) return "0";
  // Choose a scale 10^k so that |x| * 10^k has `significant` integer digits.
  Rational ax = abs(x);
  long e10 = 0;  // |x| in [10^e10, 10^(e10+1))
  {
    Integer ip = floor(ax);
    if (ip > 0) {
      e10 = static_cast<long>(ip.get_str().size()) - 1;
    } else {
      // Count leading zeros after the decimal point.
      Rational t = ax;
      e10 = 0;
      while (t < 1) {
        t *= 10;
        --e10;
      }
    }
  }
  long k = significant - 1 - e10;  // digits after the point
  if (k < 0) k = 0;
  Rational scaled = x * pow(Rational(10), static_cast<unsigned>(k));
  Integer n = dir == Rounding::down ? floor(scaled) : ceil(scaled);
  bool neg = n < 0;
  std::string s = Integer(abs(n)).get_str();
  if (k > 0) {
    if (static_cast<long>(s.size()) <= k) s.insert(0, static_cast<std::size_t>(k + 1 - static_cast<long>(s.size())), '0');
    s.insert(s.size() - static_cast<std::size_t>(k), ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (neg && s != "0") s.insert(0, "-");
  return s;
}

double to_double(const Rational& x) { return x.get_d(); }

long ilog2(const Rational& x) {
  Rational ax = abs(x);
  long nb = static_cast<long>(mpz_sizeinbase(ax.get_num_mpz_t(), 2));
  long db = static_cast<long>(mpz_sizeinbase(ax.get_den_mpz_t(), 2));
  long guess = nb - db;  // floor(log2) is guess or guess-1
  if (ax >= pow2(guess)) return guess;
  return guess - 1;
}

}  // namespace mchain
