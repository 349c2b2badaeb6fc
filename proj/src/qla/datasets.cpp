#include "wbrst/qla/datasets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wbrst/scalar/coeff_parser.hpp"

namespace wbrst::qla {

QlaFile so3() {
  QlaFile f;
  f.name = "so3";
  f.data.n = 3;
  f.data.parities = {0, 0, 0};
  f.data.sigma = super_permutation(f.data.parities);
  f.data.c = Tensor(3, 1, 2);
  const int eps[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : eps) {
    f.data.c.at({p[2]}, {p[0], p[1]}) = RF(1);
    f.data.c.at({p[2]}, {p[1], p[0]}) = RF(-1);
  }
  f.phi = f.data.sigma;
  f.phi_mode = "superperm";
  return f;
}

QlaFile super_ef() {
  QlaFile f;
  f.name = "super_ef";
  f.data.n = 2;
  f.data.parities = {0, 1};
  f.data.sigma = super_permutation(f.data.parities);
  f.data.c = Tensor(2, 1, 2);
  f.data.c.at({1}, {0, 1}) = RF(1);
  f.data.c.at({1}, {1, 0}) = RF(-1);
  f.phi = lie_super_twist(f.data.parities).first;
  f.phi_mode = "liesuper";
  return f;
}

QlaFile lyubashenko() {
  QlaFile f;
  f.name = "lyubashenko";
  f.data.n = 2;
  f.data.parities = {0, 0};
  f.data.sigma = Tensor(2, 2, 2);
  auto swap = [](int i) { return 1 - i; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) f.data.sigma.at({swap(j), swap(i)}, {i, j}) = RF(1);
  f.data.c = Tensor(2, 1, 2);
  f.phi = f.data.sigma;
  f.phi_mode = "sigma";
  return f;
}

std::vector<QlaFile> bundled_qla() { return {so3(), super_ef(), lyubashenko()}; }

namespace {

[[noreturn]] void fail(int line, const std::string& why) {
  throw std::runtime_error("qla line " + std::to_string(line) + ": " + why);
}

std::vector<int> read_indices(std::istringstream& in, int count, int n, int line) {
  std::vector<int> idx;
  for (int k = 0; k < count; ++k) {
    int v;
    if (!(in >> v)) fail(line, "expected " + std::to_string(count) + " indices");
    if (v < 1 || v > n) fail(line, "index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    idx.push_back(v - 1);
  }
  return idx;
}

RF read_value(std::istringstream& in, int line) {
  std::string eq;
  if (!(in >> eq) || eq != "=") fail(line, "expected '='");
  std::string rest;
  std::getline(in, rest);
  try {
    return parse_coefficient(rest);
  } catch (const MathError& e) {
    fail(line, e.what());
  }
}

}  // namespace

QlaFile parse_qla(const std::string& text) {
  QlaFile f;
  std::istringstream lines(text);
  std::string raw;
  int line = 0;
  std::string sigma_mode = "explicit";
  f.phi_mode = "";
  struct Entry {
    std::string kind;
    std::vector<int> idx;
    RF value;
  };
  std::vector<Entry> entries;
  while (std::getline(lines, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream in(raw);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "name") {
      in >> f.name;
    } else if (key == "dim") {
      if (!(in >> f.data.n) || f.data.n < 1) fail(line, "dim must be a positive integer");
    } else if (key == "parities") {
      std::string p;
      while (in >> p) {
        if (p == "0" || p == "even")
          f.data.parities.push_back(0);
        else if (p == "1" || p == "odd")
          f.data.parities.push_back(1);
        else
          fail(line, "bad parity '" + p + "'");
      }
    } else if (key == "sigma" || key == "c" || key == "phi") {
      if (f.data.n == 0) fail(line, "dim must come first");
      std::string peek;
      std::streampos pos = in.tellg();
      in >> peek;
      if (peek == "=") {
        std::string mode;
        in >> mode;
        if (key == "sigma") {
          if (mode != "superperm") fail(line, "sigma mode must be superperm");
          sigma_mode = mode;
        } else if (key == "phi") {
          if (mode != "superperm" && mode != "liesuper" && mode != "sigma" && mode != "explicit")
            fail(line, "unknown phi mode '" + mode + "'");
          f.phi_mode = mode;
        } else {
          fail(line, "c takes explicit entries");
        }
        continue;
      }
      in.clear();
      in.seekg(pos);
      int count = key == "c" ? 3 : 4;
      auto idx = read_indices(in, count, f.data.n, line);
      entries.push_back({key, idx, read_value(in, line)});
    } else {
      fail(line, "unknown statement '" + key + "'");
    }
  }
  int n = f.data.n;
  if (n == 0) throw std::runtime_error("qla: missing dim");
  if (f.data.parities.empty()) f.data.parities.assign(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(f.data.parities.size()) != n) throw std::runtime_error("qla: parities length differs from dim");
  f.data.sigma = sigma_mode == "superperm" ? super_permutation(f.data.parities) : Tensor(n, 2, 2);
  f.data.c = Tensor(n, 1, 2);
  Tensor phi(n, 2, 2);
  for (const auto& e : entries) {
    const auto& i = e.idx;
    if (e.kind == "sigma") {
      if (sigma_mode == "superperm") throw std::runtime_error("qla: explicit sigma entries with sigma = superperm");
      f.data.sigma.at({i[0], i[1]}, {i[2], i[3]}) = e.value;
    } else if (e.kind == "c") {
      f.data.c.at({i[2]}, {i[0], i[1]}) = e.value;
    } else {
      phi.at({i[0], i[1]}, {i[2], i[3]}) = e.value;
    }
  }
  if (f.phi_mode.empty()) f.phi_mode = "superperm";
  if (f.phi_mode == "superperm")
    f.phi = super_permutation(f.data.parities);
  else if (f.phi_mode == "liesuper")
    f.phi = lie_super_twist(f.data.parities).first;
  else if (f.phi_mode == "sigma")
    f.phi = f.data.sigma;
  else
    f.phi = phi;
  return f;
}

QlaFile load_qla(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_qla(ss.str());
}

std::string write_qla(const QlaFile& f) {
  std::ostringstream os;
  int n = f.data.n;
  if (!f.name.empty()) os << "name " << f.name << "\n";
  os << "dim " << n << "\nparities";
  for (int p : f.data.parities) os << " " << p;
  os << "\n";
  auto dump = [&](const std::string& key, const Tensor& t) {
    for (std::size_t u = 0; u < t.upper_size(); ++u)
      for (std::size_t l = 0; l < t.lower_size(); ++l) {
        const RF& v = t(u, l);
        if (v.is_zero()) continue;
        auto up = t.digits(u, t.up()), low = t.digits(l, t.low());
        os << key;
        if (key == "c") {
          os << " " << low[0] + 1 << " " << low[1] + 1 << " " << up[0] + 1;
        } else {
          for (int x : up) os << " " << x + 1;
          for (int x : low) os << " " << x + 1;
        }
        os << " = " << v.str() << "\n";
      }
  };
  dump("sigma", f.data.sigma);
  dump("c", f.data.c);
  os << "phi = explicit\n";
  dump("phi", f.phi);
  return os.str();
}

}  // namespace wbrst::qla
