#include "wbrst/oracle/mode_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

namespace wbrst::oracle {
namespace {

long to_half(const BigRational& q, const char* what) {
  BigRational t = q * 2;
  if (t.get_den() != 1) throw MathError(std::string(what) + " " + to_string(q) + " is not a half-integer");
  if (!t.get_num().fits_slong_p()) throw MathError(std::string(what) + " out of range");
  return t.get_num().get_si();
}

BigRational from_half(long h) {
  BigRational q(h, 2);
  q.canonicalize();
  return q;
}

void add_into(FockVector& acc, const FockVector& v, const BigRational& c) {
  if (c == 0) return;
  for (const auto& [s, x] : v) {
    auto& slot = acc[s];
    slot += c * x;
    if (slot == 0) acc.erase(s);
  }
}

BigRational to_rational(const RF& c) {
  if (!c.is_constant()) throw MathError("mode oracle needs numeric coefficients, got " + c.str());
  return c.constant_value();
}

}  // namespace

int FockState::size() const {
  return __builtin_popcountll(static_cast<unsigned long long>(bits)) +
         __builtin_popcountll(static_cast<unsigned long long>(bits >> 64));
}

namespace {

int popcount_below(unsigned __int128 bits, int id) {
  unsigned __int128 mask = (static_cast<unsigned __int128>(1) << id) - 1;
  return FockState{bits & mask}.size();
}

}  // namespace

FockSpace::FockSpace(std::vector<BcSystem> systems) : systems_(std::move(systems)) {
  for (const auto& s : systems_) {
    long l2 = to_half(s.lambda, "bc weight");
    lambda2_.push_back(l2);
    // c creators c_{lambda-1-k} have level 1 - lambda + k.
    for (long lev = 2 - l2; lev < 0; lev += 2) min_level2_ += lev;
    // b creators b_{-lambda-k} have level lambda + k.
    for (long lev = l2; lev < 0; lev += 2) min_level2_ += lev;
  }
  for (int g = -kGhostRange; g <= kGhostRange; ++g) min_by_ghost_.push_back(compute_min_level2(g));
}

int FockSpace::id_of(std::size_t system, bool is_b, long k) const {
  long id = (k * static_cast<long>(systems_.size()) + static_cast<long>(system)) * 2 + (is_b ? 0 : 1);
  if (id >= 128) throw MathError("Fock slice needs more than 128 creation operators; lower the level");
  return static_cast<int>(id);
}

long FockSpace::level2_of(int id) const {
  bool is_b = id % 2 == 0;
  long rest = id / 2;
  auto n = static_cast<long>(systems_.size());
  long k = rest / n;
  long l2 = lambda2_[static_cast<std::size_t>(rest % n)];
  return (is_b ? l2 : 2 - l2) + 2 * k;
}

long FockSpace::level2(const FockState& s) const {
  long t = 0;
  for (unsigned __int128 b = s.bits; b != 0; b &= b - 1) {
    auto lo = static_cast<unsigned long long>(b);
    int id = lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<unsigned long long>(b >> 64));
    t += level2_of(id);
  }
  return t;
}

int FockSpace::ghost(const FockState& s) const {
  int g = 0;
  for (unsigned __int128 b = s.bits; b != 0; b &= b - 1) {
    auto lo = static_cast<unsigned long long>(b);
    int id = lo != 0 ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<unsigned long long>(b >> 64));
    g += id % 2 == 0 ? -1 : 1;
  }
  return g;
}

BigRational FockSpace::min_level() const { return from_half(min_level2_); }
BigRational FockSpace::level(const FockState& s) const { return from_half(level2(s)); }

long FockSpace::min_level2(int ghost) const {
  auto idx = static_cast<std::size_t>(ghost + kGhostRange);
  if (ghost >= -kGhostRange && ghost <= kGhostRange) return min_by_ghost_[idx];
  return compute_min_level2(ghost);
}

long FockSpace::compute_min_level2(int ghost) const {
  // Cheapest creators of each kind, merged over systems.
  auto cheapest = [&](bool is_b, std::size_t count) {
    std::vector<long> lv;
    for (std::size_t s = 0; s < systems_.size(); ++s)
      for (std::size_t k = 0; k < count; ++k)
        lv.push_back((is_b ? lambda2_[s] : 2 - lambda2_[s]) + 2 * static_cast<long>(k));
    std::sort(lv.begin(), lv.end());
    lv.resize(count);
    std::vector<long> prefix{0};
    for (long x : lv) prefix.push_back(prefix.back() + x);
    return prefix;
  };
  std::size_t cap = static_cast<std::size_t>(std::abs(ghost)) + 4 * systems_.size() + 8;
  auto bp = cheapest(true, cap), cp = cheapest(false, cap);
  long best = std::numeric_limits<long>::max();
  for (std::size_t nb = 0; nb < cap; ++nb) {
    long nc = static_cast<long>(nb) + ghost;
    if (nc < 0 || static_cast<std::size_t>(nc) >= cap) continue;
    best = std::min(best, bp[nb] + cp[static_cast<std::size_t>(nc)]);
  }
  return best;
}

std::vector<FockState> FockSpace::slice(const BigRational& L) const {
  long cap = to_half(L, "level");
  if (cap < min_level2_) return {};
  // Creation operators that can occur: level at most cap - min_level.
  std::vector<int> ids;
  for (std::size_t s = 0; s < systems_.size(); ++s)
    for (bool is_b : {true, false})
      for (long k = 0;; ++k) {
        long lev = (is_b ? lambda2_[s] : 2 - lambda2_[s]) + 2 * k;
        if (lev > cap - min_level2_) break;
        ids.push_back(id_of(s, is_b, k));
      }
  std::sort(ids.begin(), ids.end());
  std::vector<long> neg_suffix(ids.size() + 1, 0);
  for (std::size_t i = ids.size(); i-- > 0;) neg_suffix[i] = neg_suffix[i + 1] + std::min(0L, level2_of(ids[i]));
  std::vector<FockState> out;
  auto dfs = [&](auto&& self, std::size_t i, long lev, unsigned __int128 bits) -> void {
    if (lev + neg_suffix[i] > cap) return;
    if (i == ids.size()) {
      out.push_back({bits});
      return;
    }
    self(self, i + 1, lev, bits);
    self(self, i + 1, lev + level2_of(ids[i]), bits | (static_cast<unsigned __int128>(1) << ids[i]));
  };
  dfs(dfs, 0, 0, 0);
  std::vector<std::pair<long, FockState>> keyed;
  for (const auto& st : out) keyed.emplace_back(level2(st), st);
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = keyed[i].second;
  return out;
}

std::string FockSpace::state_str(const FockState& s) const {
  std::ostringstream o;
  auto n = static_cast<long>(systems_.size());
  for (int id = 127; id >= 0; --id) {
    if (!((s.bits >> id) & 1)) continue;
    bool is_b = id % 2 == 0;
    long rest = id / 2, k = rest / n;
    const auto& sys = systems_[static_cast<std::size_t>(rest % n)];
    BigRational mode = is_b ? BigRational(-sys.lambda - k) : BigRational(sys.lambda - 1 - k);
    o << (is_b ? sys.b : sys.c) << "[" << to_string(mode) << "] ";
  }
  o << "|0>";
  return o.str();
}

FockVector FockSpace::apply(std::size_t system, bool is_b, const BigRational& m, const FockState& s) const {
  long m2 = to_half(m, "mode");
  long l2 = lambda2_.at(system);
  long shift = is_b ? m2 + l2 : m2 + 2 - l2;
  if (shift % 2 != 0) throw MathError("mode " + to_string(m) + " is not in the mode lattice of the field");
  bool create;
  int id;
  if (is_b) {
    create = m2 <= -l2;
    id = create ? id_of(system, true, (-l2 - m2) / 2) : id_of(system, false, (l2 - 2 + m2) / 2);
  } else {
    create = m2 <= l2 - 2;
    id = create ? id_of(system, false, (l2 - 2 - m2) / 2) : id_of(system, true, (m2 - l2) / 2);
  }
  unsigned __int128 bit = static_cast<unsigned __int128>(1) << id;
  bool present = (s.bits & bit) != 0;
  if (create == present) return {};
  // Operators above the bit act after it; moving past them costs a sign each.
  int above = s.size() - popcount_below(s.bits, id) - (present ? 1 : 0);
  BigRational sign = above % 2 == 0 ? 1 : -1;
  return {{FockState{s.bits ^ bit}, sign}};
}

std::vector<BcSystem> free_systems(const OpeAlgebra& a) {
  const auto& gens = a.generators();
  std::vector<BcSystem> out;
  std::set<std::pair<int, int>> bc;
  for (const auto& [key, poles] : a.table()) {
    auto [i, j] = key;
    const auto& gi = a.generator(i);
    const auto& gj = a.generator(j);
    bool unit = poles.size() == 1 && poles.begin()->first == 1 && poles.begin()->second == FieldExpr::unit();
    if (!unit || !gi.odd || !gj.odd || gi.ghost + gj.ghost != 0 || gi.ghost == 0)
      throw NotFreeSector("OPE " + gi.name + " " + gj.name + " is not a canonical bc pairing");
    int b = gi.ghost < 0 ? i : j, c = gi.ghost < 0 ? j : i;
    if (a.generator(c).weight != 1 - a.generator(b).weight)
      throw NotFreeSector(a.generator(b).name + " and " + a.generator(c).name + " have weights that do not add to 1");
    bc.insert({b, c});
  }
  std::set<int> used;
  for (auto [b, c] : bc) {
    if (!used.insert(b).second || !used.insert(c).second)
      throw NotFreeSector(a.generator(b).name + " or " + a.generator(c).name + " is paired twice");
    out.push_back({a.generator(b).name, a.generator(c).name, a.generator(b).weight});
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!used.count(static_cast<int>(i))) throw NotFreeSector(gens[i].name + " is not part of a bc pair");
  if (!a.regular_by_default) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i; j < gens.size(); ++j) {
        auto ii = static_cast<int>(i), jj = static_cast<int>(j);
        if (bc.count({ii, jj}) || bc.count({jj, ii})) continue;
        if (!a.declared_regular(ii, jj) && !a.declared_regular(jj, ii))
          throw NotFreeSector("OPE " + gens[i].name + " " + gens[j].name + " is not declared");
      }
  }
  return out;
}

namespace {

std::vector<BcSystem> select_systems(const OpeAlgebra& a, const std::vector<std::string>& b_fields) {
  std::vector<BcSystem> all = free_systems(a), out;
  for (const auto& s : all)
    if (std::find(b_fields.begin(), b_fields.end(), s.b) != b_fields.end()) out.push_back(s);
  if (out.size() != b_fields.size()) throw std::invalid_argument("unknown b field in system selection");
  return out;
}

std::vector<std::string> all_b_fields(const OpeAlgebra& a) {
  std::vector<std::string> out;
  for (const auto& s : free_systems(a)) out.push_back(s.b);
  return out;
}

}  // namespace

ModeOracle::ModeOracle(const OpeAlgebra& free_sector) : ModeOracle(free_sector, all_b_fields(free_sector)) {}

ModeOracle::ModeOracle(const OpeAlgebra& free_sector, const std::vector<std::string>& b_fields)
    : alg_(free_sector), fock_(select_systems(free_sector, b_fields)) {
  gen_mode_.assign(alg_.generators().size(), {std::size_t(-1), false});
  const auto& sys = fock_.systems();
  for (std::size_t s = 0; s < sys.size(); ++s) {
    gen_mode_[static_cast<std::size_t>(alg_.index(sys[s].b))] = {s, true};
    gen_mode_[static_cast<std::size_t>(alg_.index(sys[s].c))] = {s, false};
  }
}

std::size_t ModeOracle::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = std::hash<int>()(k.mono);
  h = h * 1000003u ^ std::hash<long>()(k.mode2);
  h = h * 1000003u ^ std::hash<unsigned long long>()(static_cast<unsigned long long>(k.bits));
  h = h * 1000003u ^ std::hash<unsigned long long>()(static_cast<unsigned long long>(k.bits >> 64));
  return h;
}

int ModeOracle::intern(const Monomial& m) {
  auto [it, fresh] = mono_ids_.emplace(m, static_cast<int>(monos_.size()));
  if (fresh) {
    for (auto f : m)
      if (gen_mode_[static_cast<std::size_t>(ope::factor_gen(f))].first == std::size_t(-1))
        throw std::invalid_argument(alg_.generator(ope::factor_gen(f)).name + " is outside this oracle's Fock space");
    monos_.push_back(m);
  }
  return it->second;
}

ope::Grading ModeOracle::grading_of(const FieldExpr& x) const {
  if (x.is_zero()) return {};
  auto g = alg_.grading(x);
  if (!g) throw std::invalid_argument("mode oracle needs a homogeneous field: " + alg_.expr_str(x));
  return *g;
}

const FockVector& ModeOracle::apply_mono(int id, long mode2, const FockState& s) {
  Key key{id, mode2, s.bits};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  FockVector out;
  const Monomial mono = monos_[static_cast<std::size_t>(id)];
  if (mono.empty()) {
    if (mode2 == 0) out[s] = 1;
  } else {
    ope::Factor a = mono[0];
    int gen = ope::factor_gen(a);
    int d = ope::factor_deriv(a);
    BigRational h_gen = alg_.generator(gen).weight;
    long ha2 = to_half(h_gen + d, "weight");
    if (mono.size() == 1) {
      // (d^k X)_m = prod_{i<k} -(m + h_X + i) X_m
      BigRational m = from_half(mode2), coeff = 1;
      for (int i = 0; i < d; ++i) coeff *= -(m + h_gen + i);
      if (coeff != 0) {
        auto [sys, is_b] = gen_mode_[static_cast<std::size_t>(gen)];
        add_into(out, fock_.apply(sys, is_b, m, s), coeff);
      }
    } else {
      int rest = intern(Monomial(mono.begin() + 1, mono.end()));
      int single = intern(Monomial{a});
      long lev2 = fock_.level2(s), min2 = fock_.min_level2();
      // N(A,R)_m = sum_{p <= -h_A} A_p R_{m-p} + sign sum_{p > -h_A} R_{m-p} A_p
      for (long j2 = 0; lev2 - (mode2 + ha2 + j2) >= min2; j2 += 2) {
        FockVector r = apply_mono(rest, mode2 + ha2 + j2, s);
        for (const auto& [t, c] : r) add_into(out, apply_mono(single, -ha2 - j2, t), c);
      }
      bool rest_odd = alg_.odd(monos_[static_cast<std::size_t>(rest)]);
      BigRational sign = rest_odd && alg_.generator(gen).odd ? -1 : 1;
      for (long j2 = 2; lev2 + ha2 - j2 >= min2; j2 += 2) {
        FockVector r = apply_mono(single, -ha2 + j2, s);
        for (const auto& [t, c] : r) add_into(out, apply_mono(rest, mode2 + ha2 - j2, t), sign * c);
      }
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

ModeOracle::ExprId ModeOracle::intern(const FieldExpr& x) {
  std::vector<std::pair<int, BigRational>> terms;
  for (const auto& [mono, c] : x.terms()) terms.emplace_back(intern(mono), to_rational(c));
  std::sort(terms.begin(), terms.end());
  auto it = expr_ids_.find(terms);
  if (it != expr_ids_.end()) return it->second;
  auto id = static_cast<ExprId>(exprs_.size());
  exprs_.push_back({terms, grading_of(x)});
  expr_ids_.emplace(std::move(terms), id);
  return id;
}

const FockVector& ModeOracle::apply(ExprId x, long mode2, const FockState& s) {
  Key key{x, mode2, s.bits};
  if (auto it = expr_memo_.find(key); it != expr_memo_.end()) return it->second;
  FockVector out;
  for (const auto& [mono, c] : exprs_[static_cast<std::size_t>(x)].terms) add_into(out, apply_mono(mono, mode2, s), c);
  return expr_memo_.emplace(key, std::move(out)).first->second;
}

FockVector ModeOracle::apply(const FieldExpr& x, const BigRational& m, const FockState& s) {
  return apply(intern(x), to_half(m, "mode"), s);
}

FockVector ModeOracle::apply(const FieldExpr& x, const BigRational& m, const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v) add_into(out, apply(x, m, s), c);
  return out;
}

ModeMatrix ModeOracle::field_modes(const FieldExpr& x, const BigRational& m, const BigRational& L) {
  ModeMatrix out{m, {}};
  for (const auto& s : fock_.slice(L))
    for (const auto& [t, c] : apply(x, m, s)) out.entries[{t, s}] = c;
  return out;
}

int ModeOracle::max_pole(const FieldExpr& a, const FieldExpr& b) const {
  ope::Grading ga = grading_of(a), gb = grading_of(b);
  BigRational top = ga.weight + gb.weight - from_half(fock_.min_level2(ga.ghost + gb.ghost));
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
  return static_cast<int>(f.get_si());
}

std::map<int, FockVector> ModeOracle::poles_on(const FieldExpr& a, const FieldExpr& b, const BigRational& N,
                                               const FockState& s) {
  return poles_on(intern(a), intern(b), max_pole(a, b), to_half(N, "mode"), s);
}

std::map<int, FockVector> ModeOracle::poles_on(ExprId a, ExprId b, int top, long n2, const FockState& s) {
  const ope::Grading& ga = grading(a);
  BigRational sign = ga.odd && grading(b).odd ? -1 : 1;
  long ha2 = to_half(ga.weight, "weight");
  // With p_t = 1 - h_A + t the coefficient matrix is C(t, j), unit lower triangular.
  std::vector<FockVector> x;
  for (int t = 0; t < top; ++t) {
    long p2 = 2 - ha2 + 2 * t;
    FockVector v;
    for (const auto& [u, c] : apply(b, n2 - p2, s)) add_into(v, apply(a, p2, u), c);
    for (const auto& [u, c] : apply(a, p2, s)) add_into(v, apply(b, n2 - p2, u), -sign * c);
    for (int j = 0; j < t; ++j) add_into(v, x[static_cast<std::size_t>(j)], -binomial(BigRational(t), j));
    x.push_back(std::move(v));
  }
  std::map<int, FockVector> out;
  for (int j = 0; j < top; ++j) out[j + 1] = std::move(x[static_cast<std::size_t>(j)]);
  return out;
}

std::map<int, ModeMatrix> ModeOracle::ope_from_modes(const FieldExpr& a, const FieldExpr& b, const BigRational& N,
                                                     const BigRational& L) {
  std::map<int, ModeMatrix> out;
  for (int n = 1; n <= max_pole(a, b); ++n) out[n].mode = N;
  for (const auto& s : fock_.slice(L))
    for (const auto& [n, v] : poles_on(a, b, N, s))
      for (const auto& [t, c] : v) out[n].entries[{t, s}] = c;
  return out;
}

namespace {

std::vector<std::string> systems_used(const OpeAlgebra& a, const std::vector<BcSystem>& all,
                                      const std::vector<const FieldExpr*>& xs) {
  std::set<int> gens;
  for (const auto* x : xs)
    for (const auto& [m, c] : x->terms())
      for (auto f : m) gens.insert(ope::factor_gen(f));
  std::vector<std::string> out;
  for (const auto& s : all)
    if (gens.count(a.index(s.b)) || gens.count(a.index(s.c))) out.push_back(s.b);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

namespace {

// Splits x by the set of bc systems each term touches.
std::map<std::vector<std::string>, FieldExpr> split_by_systems(const OpeAlgebra& a, const std::vector<BcSystem>& all,
                                                               const FieldExpr& x) {
  std::map<std::vector<std::string>, FieldExpr> out;
  for (const auto& [m, c] : x.terms()) {
    FieldExpr term = FieldExpr::monomial(m, c);
    out[systems_used(a, all, {&term})].add(m, c);
  }
  return out;
}

}  // namespace

CrosscheckReport crosscheck(const OpeAlgebra& a, const std::vector<std::pair<FieldExpr, FieldExpr>>& pairs,
                            const BigRational& L, ope::RuleSet rules) {
  auto systems = free_systems(a);
  ope::OpeEngine engine(a, 4000, rules);
  // One oracle per set of systems; systems a component pair does not touch
  // are spectators and are left out of its Fock space.
  std::map<std::vector<std::string>, ModeOracle> oracles;
  long cap2 = to_half(L, "level");
  CrosscheckReport rep;
  auto compare = [&](std::size_t k, const FieldExpr& x, const FieldExpr& y) {
    ope::PoleSeries poles = engine.ope(x, y);
    auto sx = systems_used(a, systems, {&x}), sy = systems_used(a, systems, {&y});
    std::vector<std::string> shared;
    std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(shared));
    if (shared.empty() && !sx.empty() && !sy.empty()) {
      // Modes of different systems graded-commute on the tensor product, so
      // every pole the oracle could produce is zero.
      if (!poles.empty()) {
        rep.pass = false;
        rep.first_mismatch = Mismatch{k, poles.begin()->first, 0, "disjoint systems", "nonzero engine pole", 0, 0};
      }
      return;
    }
    std::vector<const FieldExpr*> involved{&x, &y};
    for (const auto& [n, e] : poles) involved.push_back(&e);
    auto used = systems_used(a, systems, involved);
    if (used.empty()) used.push_back(systems.front().b);
    auto it = oracles.find(used);
    if (it == oracles.end()) it = oracles.emplace(used, ModeOracle(a, used)).first;
    ModeOracle& oracle = it->second;
    const FockSpace& fock = oracle.fock();
    int top = oracle.max_pole(x, y);
    if (!poles.empty()) top = std::max(top, poles.rbegin()->first);
    auto ix = oracle.intern(x), iy = oracle.intern(y);
    std::map<int, ModeOracle::ExprId> pole_ids;
    for (const auto& [n, e] : poles) pole_ids[n] = oracle.intern(e);
    ope::Grading gx = oracle.grading(ix), gy = oracle.grading(iy);
    long hsum2 = to_half(gx.weight + gy.weight, "weight");
    for (const auto& s : fock.slice(L)) {
      long lev2 = fock.level2(s);
      // Modes N that keep the image inside the slice and above the lowest
      // level of its ghost number.
      long lo = lev2 - cap2, hi = lev2 - fock.min_level2(fock.ghost(s) + gx.ghost + gy.ghost);
      if (((lo + hsum2) % 2 + 2) % 2 != 0) ++lo;
      for (long n2 = lo; n2 <= hi; n2 += 2) {
        auto want = oracle.poles_on(ix, iy, top, n2, s);
        for (int n = 1; n <= top; ++n) {
          auto pit = pole_ids.find(n);
          FockVector got = pit == pole_ids.end() ? FockVector{} : oracle.apply(pit->second, n2, s);
          const FockVector& exp = want[n];
          std::set<FockState> targets;
          for (const auto& [t, c] : got) targets.insert(t);
          for (const auto& [t, c] : exp) targets.insert(t);
          for (const auto& t : targets) {
            auto gi = got.find(t);
            auto ei = exp.find(t);
            BigRational gv = gi == got.end() ? BigRational(0) : gi->second;
            BigRational ev = ei == exp.end() ? BigRational(0) : ei->second;
            ++rep.matrix_elements;
            if (gv != ev) {
              rep.pass = false;
              rep.first_mismatch = Mismatch{k, n, from_half(n2), fock.state_str(s), fock.state_str(t), gv, ev};
              return;
            }
          }
        }
      }
    }
  };
  for (std::size_t k = 0; k < pairs.size() && rep.pass; ++k) {
    const auto& [x, y] = pairs[k];
    ++rep.pairs;
    auto xs = split_by_systems(a, systems, x), ys = split_by_systems(a, systems, y);
    if (xs.size() == 1 && ys.size() == 1) {
      compare(k, x, y);
      continue;
    }
    // Components are compared separately; the engine must be bilinear over them.
    ope::PoleSeries whole = engine.ope(x, y), sum;
    for (const auto& [sx, px] : xs)
      for (const auto& [sy, py] : ys)
        for (const auto& [n, e] : engine.ope(px, py)) sum[n] += e;
    std::erase_if(sum, [](const auto& kv) { return kv.second.is_zero(); });
    if (!ope::poles_equal(whole, sum)) {
      rep.pass = false;
      rep.first_mismatch = Mismatch{k, 0, 0, "sum of components", "whole pair", 0, 0};
      break;
    }
    for (const auto& [sx, px] : xs)
      for (const auto& [sy, py] : ys)
        if (rep.pass) compare(k, px, py);
  }
  return rep;
}

namespace {

FieldExpr stress_tensor(ope::OpeEngine& e, const BcSystem& s) {
  RF lam(s.lambda);
  return e.normal_product(e.f(s.b), e.f(s.c, 1)) * -lam - e.normal_product(e.f(s.b, 1), e.f(s.c)) * (lam - RF(1));
}

}  // namespace

std::vector<std::pair<FieldExpr, FieldExpr>> standard_pairs(const OpeAlgebra& a) {
  auto systems = free_systems(a);
  ope::OpeEngine e(a);
  std::vector<FieldExpr> gens, composites;
  for (const auto& g : a.generators()) gens.push_back(e.f(g.name));
  FieldExpr total;
  for (const auto& s : systems) {
    composites.push_back(e.normal_product(e.f(s.b), e.f(s.c)));
    FieldExpr t = stress_tensor(e, s);
    composites.push_back(t);
    total += t;
  }
  if (systems.size() > 1) composites.push_back(total);
  std::vector<std::pair<FieldExpr, FieldExpr>> out;
  for (const auto& x : gens)
    for (const auto& y : gens) out.emplace_back(x, y);
  for (const auto& g : a.generators())
    for (const auto& y : gens) out.emplace_back(e.f(g.name, 1), y);
  for (const auto& x : composites) {
    for (const auto& y : gens) {
      out.emplace_back(x, y);
      out.emplace_back(y, x);
    }
    for (const auto& y : composites) out.emplace_back(x, y);
  }
  return out;
}

BigRational oracle_central_charge(const BigRational& lambda, const BigRational& L) {
  OpeAlgebra a;
  a.name = "bc";
  a.regular_by_default = true;
  a.add_generator({"b", lambda, true, -1});
  a.add_generator({"c", 1 - lambda, true, 1});
  a.set_ope("b", "c", {{1, FieldExpr::unit()}});
  ModeOracle oracle(a);
  ope::OpeEngine e(a);
  FieldExpr t = stress_tensor(e, oracle.fock().systems()[0]);
  std::optional<BigRational> half;
  for (const auto& s : oracle.fock().slice(L)) {
    FockVector v = oracle.poles_on(t, t, 0, s)[4];
    if (v.size() != 1 || v.begin()->first != s) throw MathError("[TT]_4 zero mode is not a multiple of the identity");
    if (half && *half != v.begin()->second) throw MathError("[TT]_4 zero mode is not a multiple of the identity");
    half = v.begin()->second;
  }
  if (!half) throw MathError("empty Fock slice");
  return 2 * *half;
}

}  // namespace wbrst::oracle
