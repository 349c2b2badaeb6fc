#include "wbrst/ope/algebra_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "wbrst/ope/engine.hpp"

namespace wbrst::ope {
namespace {

struct Value {
  bool scalar = true;
  RF s;
  FieldExpr f;

  FieldExpr as_field() const { return scalar ? FieldExpr::unit(s) : f; }
};

Value scalar_value(RF s) { return Value{true, std::move(s), {}}; }
Value field_value(FieldExpr f) { return Value{false, RF(), std::move(f)}; }

class ExprParser {
 public:
  ExprParser(const OpeAlgebra& alg, const std::map<std::string, RF>& defs, OpeEngine* engine, std::string text)
      : alg_(alg), defs_(defs), engine_(engine), text_(std::move(text)) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + text_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  const OpeAlgebra& alg_;
  const std::map<std::string, RF>& defs_;
  OpeEngine* engine_;
  std::string text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw AlgebraParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  OpeEngine& engine() {
    if (!engine_) fail("field operation not allowed here");
    return *engine_;
  }

  Value add(const Value& a, const Value& b, bool minus) {
    if (a.scalar && b.scalar) return scalar_value(minus ? a.s - b.s : a.s + b.s);
    FieldExpr r = a.as_field();
    r.add_scaled(b.as_field(), RF(minus ? -1 : 1));
    return field_value(std::move(r));
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+'))
        v = add(v, term(), false);
      else if (accept('-'))
        v = add(v, term(), true);
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) {
        Value w = unary();
        if (!v.scalar && !w.scalar) fail("product of two fields; use N(x,y)");
        if (v.scalar && w.scalar)
          v = scalar_value(v.s * w.s);
        else if (v.scalar)
          v = field_value(w.f * v.s);
        else
          v = field_value(v.f * w.s);
      } else if (accept('/')) {
        Value w = unary();
        if (!w.scalar) fail("division by a field");
        if (w.s.is_zero()) fail("division by zero");
        if (v.scalar)
          v = scalar_value(v.s / w.s);
        else
          v = field_value(v.f * (RF(1) / w.s));
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      if (v.scalar) return scalar_value(-v.s);
      return field_value(-v.f);
    }
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (!accept('^')) return base;
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (!base.scalar) fail("power of a field");
    int e = std::stoi(text_.substr(start, pos_ - start));
    return scalar_value(base.s.pow(neg ? -e : e));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Value atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return scalar_value(RF(BigRational(BigInteger(text_.substr(start, pos_ - start)))));
    }
    if (!std::isalpha(static_cast<unsigned char>(ch)) && ch != '_') fail("unexpected '" + std::string(1, ch) + "'");
    std::string name = identifier();
    if (name == "one") return field_value(FieldExpr::unit());
    if (name == "N") {
      expect('(');
      Value x = expr();
      expect(',');
      Value y = expr();
      expect(')');
      if (x.scalar && y.scalar) return scalar_value(x.s * y.s);
      return field_value(engine().normal_product(x.as_field(), y.as_field()));
    }
    if (name[0] == 'D' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
      int k = name.size() == 1 ? 1 : std::stoi(name.substr(1));
      expect('(');
      Value x = expr();
      expect(')');
      if (x.scalar) return scalar_value(RF());
      if (x.f.size() == 1 && x.f.terms().begin()->first.size() == 1) {
        const auto& [m, c] = *x.f.terms().begin();
        return field_value(FieldExpr::monomial({m[0] + static_cast<Factor>(k)}, c));
      }
      return field_value(engine().derivative(x.f, k));
    }
    if (auto g = alg_.find(name)) return field_value(FieldExpr::monomial({make_factor(*g, 0)}));
    if (auto it = defs_.find(name); it != defs_.end()) return scalar_value(it->second);
    for (const auto& p : alg_.params)
      if (p == name) return scalar_value(RF::param(name));
    fail("unknown name '" + name + "'");
  }
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::map<std::string, RF> def_map(const OpeAlgebra& a) {
  std::map<std::string, RF> m;
  for (const auto& [k, v] : a.defs) m[k] = v;
  return m;
}

bool valid_name(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

struct OpeLine {
  int line;
  std::string a, b, body;
};

}  // namespace

FieldExpr parse_field_expr(const OpeAlgebra& a, const std::string& text) {
  OpeEngine engine(a);
  auto defs = def_map(a);
  return ExprParser(a, defs, &engine, text).parse().as_field();
}

OpeAlgebra parse_algebra(const std::string& text) {
  OpeAlgebra alg;
  std::map<std::string, RF> defs;
  std::vector<OpeLine> opes;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto err = [&](const std::string& msg) { return AlgebraParseError("line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "algebra") {
      ls >> alg.name;
    } else if (kw == "param") {
      std::string p;
      while (ls >> p) {
        if (!valid_name(p)) throw err("bad parameter name '" + p + "'");
        alg.params.push_back(p);
      }
    } else if (kw == "def") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw err("def without '='");
      std::string name = trim(line.substr(3, eq - 3));
      if (!valid_name(name) || defs.count(name) || alg.find(name)) throw err("bad or duplicate def name '" + name + "'");
      Value v = ExprParser(alg, defs, nullptr, line.substr(eq + 1)).parse();
      if (!v.scalar) throw err("def '" + name + "' is not a scalar");
      defs[name] = v.s;
      alg.defs.emplace_back(name, v.s);
    } else if (kw == "field") {
      GeneratorDecl g;
      ls >> g.name;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw err("expected key=value, got '" + kv + "'");
        std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        try {
          if (k == "weight")
            g.weight = parse_rational(v);
          else if (k == "parity" && (v == "even" || v == "odd"))
            g.odd = v == "odd";
          else if (k == "ghost")
            g.ghost = std::stoi(v);
          else
            throw err("unknown field attribute '" + kv + "'");
        } catch (const AlgebraParseError&) {
          throw;
        } catch (const std::exception& e) {
          throw err("bad value in '" + kv + "': " + e.what());
        }
      }
      if (!valid_name(g.name) || defs.count(g.name)) throw err("bad field name '" + g.name + "'");
      try {
        alg.add_generator(g);
      } catch (const std::invalid_argument& e) {
        throw err(e.what());
      }
    } else if (kw == "regular_by_default") {
      alg.regular_by_default = true;
    } else if (kw == "ope") {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw err("ope without ':'");
      std::istringstream names(line.substr(3, colon - 3));
      OpeLine o{lineno, "", "", trim(line.substr(colon + 1))};
      std::string extra;
      if (!(names >> o.a >> o.b) || (names >> extra)) throw err("ope needs exactly two field names");
      opes.push_back(o);
    } else {
      throw err("unknown directive '" + kw + "'");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& o : opes) {
    lineno = o.line;
    auto ia = alg.find(o.a), ib = alg.find(o.b);
    if (!ia || !ib) throw err("unknown field in ope " + o.a + " " + o.b);
    if (!seen.insert({std::min(*ia, *ib), std::max(*ia, *ib)}).second) throw err("duplicate ope for " + o.a + " " + o.b);
    if (o.body == "regular") {
      alg.set_regular(o.a, o.b);
      continue;
    }
    PoleSeries poles;
    OpeEngine engine(alg);
    for (const auto& entry : split(o.body, ';')) {
      auto arrow = entry.find("->");
      if (arrow == std::string::npos) throw err("pole entry without '->': '" + entry + "'");
      int n = 0;
      try {
        std::size_t used = 0;
        std::string ns = trim(entry.substr(0, arrow));
        n = std::stoi(ns, &used);
        if (used != ns.size()) throw std::invalid_argument(ns);
      } catch (const std::exception&) {
        throw err("bad pole order in '" + entry + "'");
      }
      if (n < 1) throw err("pole order must be at least 1");
      if (poles.count(n)) throw err("pole " + std::to_string(n) + " given twice");
      try {
        poles[n] = ExprParser(alg, defs, &engine, entry.substr(arrow + 2)).parse().as_field();
      } catch (const AlgebraParseError& e) {
        throw err(e.what());
      } catch (const TableGap& e) {
        throw err(e.what());
      }
    }
    alg.set_ope(o.a, o.b, std::move(poles));
  }
  return alg;
}

OpeAlgebra load_algebra(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw AlgebraParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_algebra(ss.str());
}

std::string print_algebra(const OpeAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << (a.name.empty() ? "unnamed" : a.name) << "\n";
  for (const auto& p : a.params) out << "param " << p << "\n";
  for (const auto& [k, v] : a.defs) out << "def " << k << " = " << v.str() << "\n";
  for (const auto& g : a.generators())
    out << "field " << g.name << " weight=" << g.weight.get_str() << " parity=" << (g.odd ? "odd" : "even")
        << " ghost=" << g.ghost << "\n";
  if (a.regular_by_default) out << "regular_by_default\n";
  for (const auto& [k, poles] : a.table()) {
    out << "ope " << a.generator(k.first).name << " " << a.generator(k.second).name << " :";
    bool first = true;
    for (auto it = poles.rbegin(); it != poles.rend(); ++it) {
      out << (first ? " " : " ; ") << it->first << " -> " << a.expr_str(it->second);
      first = false;
    }
    out << "\n";
  }
  for (const auto& [x, y] : a.regular_pairs())
    out << "ope " << a.generator(x).name << " " << a.generator(y).name << " : regular\n";
  return out.str();
}

bool same_algebra(const OpeAlgebra& a, const OpeAlgebra& b) {
  if (a.name != b.name || a.params != b.params || a.defs != b.defs || a.regular_by_default != b.regular_by_default)
    return false;
  if (a.generators().size() != b.generators().size()) return false;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    const auto &x = a.generators()[i], &y = b.generators()[i];
    if (x.name != y.name || x.weight != y.weight || x.odd != y.odd || x.ghost != y.ghost) return false;
  }
  return a.table() == b.table() && a.regular_pairs() == b.regular_pairs();
}

}  // namespace wbrst::ope
