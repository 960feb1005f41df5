#include "groups/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "exact/error.hpp"
#include "findim/analysis.hpp"

namespace strata::groups {

namespace {

std::string perm_name(const std::vector<int>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i] + 1);
  return s + "]";
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
  const auto n = static_cast<int>(table_.size());
  if (n == 0) fail(ErrorCode::ValidationError, "group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::ValidationError, "group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) fail(ErrorCode::ValidationError, "group table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) fail(ErrorCode::ValidationError, "group table has no identity");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (mul(g, h) == identity_ && mul(h, g) == identity_) {
        inverse_[static_cast<std::size_t>(g)] = h;
        break;
      }
    if (inverse_[static_cast<std::size_t>(g)] < 0) fail(ErrorCode::ValidationError, "element " + std::to_string(g) + " has no inverse");
  }
  auto assoc = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      fail(ErrorCode::ValidationError,
           "associativity fails on (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 48) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 gen(0xa550c);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int s = 0; s < 10000; ++s) assoc(d(gen), d(gen), d(gen));
  }
  if (names_.empty())
    for (int g = 0; g < n; ++g) names_.push_back(g == identity_ ? "e" : "g" + std::to_string(g));
  if (static_cast<int>(names_.size()) != n) fail(ErrorCode::ValidationError, "wrong number of element names");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({{0}}, {"e"}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorCode::ValidationError, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(a == 0 ? "e" : "c" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) fail(ErrorCode::ValidationError, "no generators");
  const std::size_t n = generators[0].size();
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  for (const auto& g : generators) {
    std::vector<int> s = g;
    std::sort(s.begin(), s.end());
    if (s != id) fail(ErrorCode::ValidationError, "generator is not a permutation of 0.." + std::to_string(n - 1));
  }
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
  };
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : generators) {
      auto c = compose(elems[k], g);
      if (index.emplace(c, static_cast<int>(elems.size())).second) {
        elems.push_back(c);
        if (elems.size() > 5040) fail(ErrorCode::GroupTooLarge, "permutation group exceeds 5040 elements");
      }
    }
  std::sort(elems.begin() + 1, elems.end());
  index.clear();
  for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> t(elems.size(), std::vector<int>(elems.size()));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    names.push_back(a == 0 ? "e" : perm_name(elems[a]));
    for (std::size_t b = 0; b < elems.size(); ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  }
  FiniteGroup g(std::move(t), std::move(names));
  g.perms_ = std::move(elems);
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 7) fail(ErrorCode::GroupTooLarge, "symmetric groups are supported for 1 <= n <= 7");
  std::vector<std::vector<int>> gens;
  std::vector<int> id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
  gens.push_back(id);
  for (int i = 0; i + 1 < n; ++i) {
    auto s = id;
    std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
    gens.push_back(s);
  }
  return from_permutations(gens);
}

FiniteGroup FiniteGroup::klein_four() {
  std::vector<std::vector<int>> perms{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = a ^ b;
  FiniteGroup g(std::move(t), {"e", "e1", "e2", "e3"});
  g.perms_ = std::move(perms);
  return g;
}

FiniteGroup FiniteGroup::quaternion() {
  // index = 2*u + s with u in {1,i,j,k} and sign bit s
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  std::vector<std::string> names;
  const char* units[4] = {"1", "i", "j", "k"};
  for (int a = 0; a < 8; ++a) {
    names.push_back(std::string(a % 2 ? "-" : "") + units[a / 2]);
    for (int b = 0; b < 8; ++b) {
      int u = unit_mul[a / 2][b / 2];
      int s = (a % 2) ^ (b % 2) ^ sign_mul[a / 2][b / 2];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * u + s;
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

int FiniteGroup::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::centralizer(int g) const {
  std::vector<int> c;
  for (int h = 0; h < static_cast<int>(order()); ++h)
    if (mul(g, h) == mul(h, g)) c.push_back(h);
  return c;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& subset) const {
  if (subset.empty()) return false;
  std::vector<bool> in(order(), false);
  for (int x : subset) {
    if (x < 0 || x >= static_cast<int>(order())) return false;
    in[static_cast<std::size_t>(x)] = true;
  }
  for (int a : subset)
    for (int b : subset)
      if (!in[static_cast<std::size_t>(mul(a, b))]) return false;
  return true;
}

std::vector<int> FiniteGroup::generated(const std::vector<int>& gens) const {
  std::vector<bool> in(order(), false);
  std::vector<int> elems{identity_};
  in[static_cast<std::size_t>(identity_)] = true;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int g : gens) {
      int x = mul(elems[k], g);
      if (!in[static_cast<std::size_t>(x)]) {
        in[static_cast<std::size_t>(x)] = true;
        elems.push_back(x);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<int>> FiniteGroup::all_subgroups() const {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier{generated({})};
  seen.insert(frontier[0]);
  for (std::size_t k = 0; k < frontier.size(); ++k) {
    const auto h = frontier[k];
    std::vector<bool> in(order(), false);
    for (int x : h) in[static_cast<std::size_t>(x)] = true;
    for (int g = 0; g < static_cast<int>(order()); ++g) {
      if (in[static_cast<std::size_t>(g)]) continue;
      auto gens = h;
      gens.push_back(g);
      auto bigger = generated(gens);
      if (seen.insert(bigger).second) frontier.push_back(bigger);
    }
  }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<int> FiniteGroup::conjugate_subgroup(int g, const std::vector<int>& h) const {
  std::vector<int> out;
  for (int x : h) out.push_back(conj(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> FiniteGroup::normalizer(const std::vector<int>& h) const {
  std::vector<int> sorted = h;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(order()); ++g)
    if (conjugate_subgroup(g, sorted) == sorted) out.push_back(g);
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  const auto n = static_cast<int>(g.order());
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::vector<ConjugacyClass> out;
  auto add = [&](int x) {
    ConjugacyClass c;
    std::set<int> members;
    for (int h = 0; h < n; ++h) members.insert(g.conj(h, x));
    c.members.assign(members.begin(), members.end());
    c.rep = c.members.front();
    for (int m : c.members) done[static_cast<std::size_t>(m)] = true;
    out.push_back(std::move(c));
  };
  add(g.identity());
  for (int x = 0; x < n; ++x)
    if (!done[static_cast<std::size_t>(x)]) add(x);
  return out;
}

Subgroup make_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!g.is_subgroup(sorted)) fail(ErrorCode::NotASubgroup, "element subset is not closed under multiplication");
  std::map<int, int> local;
  for (std::size_t k = 0; k < sorted.size(); ++k) local[sorted[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> t(sorted.size(), std::vector<int>(sorted.size()));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    names.push_back(g.name(sorted[a]));
    for (std::size_t b = 0; b < sorted.size(); ++b) t[a][b] = local.at(g.mul(sorted[a], sorted[b]));
  }
  return {FiniteGroup(std::move(t), std::move(names)), sorted};
}

CharacterTable character_table(const FiniteGroup& g) {
  CharacterTable t;
  t.classes = conjugacy_classes(g);
  const std::size_t r = t.classes.size();
  const auto n = static_cast<std::int64_t>(g.order());
  std::vector<std::size_t> class_of(g.order());
  for (std::size_t c = 0; c < r; ++c)
    for (int m : t.classes[c].members) class_of[static_cast<std::size_t>(m)] = c;
  // class algebra: K_a K_b = sum_c #{x in C_a : x^-1 z_c in C_b} K_c
  findim::FinDimAlgebra ca(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      std::vector<std::int64_t> counts(r, 0);
      for (std::size_t c = 0; c < r; ++c) {
        int z = t.classes[c].rep;
        for (int x : t.classes[a].members)
          if (class_of[static_cast<std::size_t>(g.mul(g.inv(x), z))] == b) ++counts[c];
      }
      findim::FinDimAlgebra::Sparse s;
      for (std::size_t c = 0; c < r; ++c)
        if (counts[c]) s.emplace_back(c, GQ(counts[c]));
      ca.set_product(a, b, std::move(s));
    }
  std::vector<exact::GQVec> idempotents;
  try {
    std::vector<exact::GQVec> basis;
    for (std::size_t c = 0; c < r; ++c) basis.push_back(ca.basis(c));
    idempotents = findim::split_commutative(ca, basis);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SplitFieldError) fail(ErrorCode::CharFieldError, "character values do not lie in Q(i)");
    throw;
  }
  if (idempotents.size() != r) fail(ErrorCode::CharFieldError, "class algebra did not split into linear factors over Q(i)");
  struct Row {
    std::size_t dim;
    bool trivial;
    std::vector<GQ> values;
  };
  std::vector<Row> rows;
  for (const auto& e : idempotents) {
    // e = (chi(1)/|G|) sum_g chi(g^-1) g, so the identity coefficient is chi(1)^2/|G|
    GQ sq = e[0] * GQ(n);
    if (!sq.is_real() || sq.re().get_den() != 1 || sgn(sq.re()) <= 0)
      fail(ErrorCode::CharFieldError, "idempotent does not come from an irreducible character");
    long v = sq.re().get_num().get_si();
    auto d = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
    if (d * d != v) fail(ErrorCode::CharFieldError, "degree is not an integer");
    Row row{static_cast<std::size_t>(d), true, {}};
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t cinv = class_of[static_cast<std::size_t>(g.inv(t.classes[c].rep))];
      GQ val = e[cinv] * GQ(n) / GQ(static_cast<std::int64_t>(d));
      if (!val.is_one()) row.trivial = false;
      row.values.push_back(val);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.trivial != b.trivial) return a.trivial;
    return a.values < b.values;
  });
  for (auto& row : rows) {
    t.dims.push_back(row.dim);
    t.characters.push_back(std::move(row.values));
  }
  return t;
}

bool check_orthogonality(const FiniteGroup& g, const CharacterTable& t) {
  const auto n = static_cast<std::int64_t>(g.order());
  for (std::size_t a = 0; a < t.characters.size(); ++a)
    for (std::size_t b = 0; b < t.characters.size(); ++b) {
      GQ s(0);
      for (std::size_t c = 0; c < t.classes.size(); ++c)
        s += GQ(static_cast<std::int64_t>(t.classes[c].members.size())) * t.characters[a][c] * t.characters[b][c].conj();
      if (!(s == GQ(a == b ? n : 0))) return false;
    }
  std::size_t sq = 0;
  for (auto d : t.dims) sq += d * d;
  return sq == g.order();
}

}  // namespace strata::groups
