#include "wbrst/scalar/big_rational.hpp"

#include <cctype>

namespace wbrst {

BigRational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-') throw MathError("malformed rational '" + text + "'");
  BigInteger n(num), d(den);
  if (d == 0) throw MathError("zero denominator in '" + text + "'");
  BigRational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational binomial(const BigRational& top, long k) {
  if (k < 0) return 0;
  BigRational r = 1;
  for (long i = 0; i < k; ++i) r *= (top - i) / BigRational(i + 1);
  return r;
}

BigRational factorial(long n) {
  BigRational r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace wbrst
