#include "wbrst/scalar/coeff_parser.hpp"

#include <cctype>

namespace wbrst {
namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::map<std::string, RF>& defs) : s_(s), defs_(defs) {}

  RF parse() {
    RF v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const std::string& s_;
  const std::map<std::string, RF>& defs_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw MathError("bad coefficient '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RF expr() {
    RF v = term();
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  RF term() {
    RF v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        RF d = unary();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  RF unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RF power() {
    RF base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer exponent expected");
    int e = std::stoi(s_.substr(start, pos_ - start));
    if (neg && base.is_zero()) fail("zero to a negative power");
    return base.pow(neg ? -e : e);
  }

  RF atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RF v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RF(BigRational(BigInteger(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = defs_.find(name);
      if (it != defs_.end()) return it->second;
      return RF::param(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

RF parse_coefficient(const std::string& text, const std::map<std::string, RF>& defs) {
  return Parser(text, defs).parse();
}

}  // namespace wbrst
