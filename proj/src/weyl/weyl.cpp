#include "weyl/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "exact/error.hpp"

namespace strata::weyl {

Perm perm_identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

IntVec perm_apply(const Perm& w, const IntVec& lambda) {
  IntVec r(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) r[static_cast<std::size_t>(w[i])] = lambda[i];
  return r;
}

RootSystemSpec RootSystemSpec::make(Family family, int n) {
  if (n < 2 || n > 5) fail(ErrorCode::ValidationError, "type A rank must satisfy 2 <= n <= 5");
  RootSystemSpec s;
  s.family = family;
  s.n = n;
  s.lattice.rank = n;
  if (family == Family::SL) s.lattice.kernel = IntVec(static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      IntVec a(static_cast<std::size_t>(n), 0);
      a[static_cast<std::size_t>(i)] = 1;
      a[static_cast<std::size_t>(j)] = -1;
      s.positive_roots.push_back(a);
    }
  return s;
}

RootSystemSpec RootSystemSpec::parse(std::string_view name) {
  std::string s(name);
  Family family;
  if (s.rfind("A_GL", 0) == 0) {
    family = Family::GL;
  } else if (s.rfind("A_SL", 0) == 0) {
    family = Family::SL;
  } else {
    fail(ErrorCode::ParseError, "unknown root system '" + s + "' (expected A_GL:n or A_SL:n)");
  }
  std::string rest = s.substr(4);
  if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) rest.erase(0, 1);
  if (!rest.empty() && rest.back() == ')') rest.pop_back();
  if (rest.size() != 1 || rest[0] < '0' || rest[0] > '9') fail(ErrorCode::ParseError, "bad rank in '" + s + "'");
  return make(family, rest[0] - '0');
}

std::string RootSystemSpec::name() const {
  return std::string(family == Family::GL ? "A_GL:" : "A_SL:") + std::to_string(n);
}

struct AffineWeyl::Cache {
  std::mutex mu;
  std::map<Element, int> length;
  std::vector<std::vector<Element>> layers;
};

AffineWeyl::AffineWeyl(RootSystemSpec spec, int max_radius)
    : spec_(std::move(spec)), max_radius_(max_radius), cache_(std::make_shared<Cache>()) {
  const int n = spec_.n;
  const auto un = static_cast<std::size_t>(n);
  // s0 = t_theta s_theta with theta = e_1 - e_n
  IntVec theta(un, 0);
  theta[0] = 1;
  theta[un - 1] = -1;
  Perm s_theta = perm_identity(n);
  std::swap(s_theta[0], s_theta[un - 1]);
  generators_.push_back(make(theta, s_theta));
  for (int i = 1; i < n; ++i) {
    Perm p = perm_identity(n);
    std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
    generators_.push_back(make(IntVec(un, 0), p));
  }

  // omega = (e_1, w) for the permutation w making conjugation preserve the generators
  IntVec e1(un, 0);
  e1[0] = 1;
  Perm w = perm_identity(n);
  bool found = false;
  do {
    Element x = make(e1, w);
    Element xi = invert(x);
    bool ok = true;
    for (const auto& s : generators_) {
      Element c = compose(compose(x, s), xi);
      if (std::find(generators_.begin(), generators_.end(), c) == generators_.end()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      omega_ = x;
      found = true;
      break;
    }
  } while (std::next_permutation(w.begin(), w.end()));
  if (!found) fail(ErrorCode::ValidationError, "no length-zero generator found");
  omega_inv_ = invert(omega_);
  cache_->layers.push_back({identity()});
  cache_->length.emplace(identity(), 0);
}

Element AffineWeyl::identity() const { return make(IntVec(static_cast<std::size_t>(spec_.n), 0), perm_identity(spec_.n)); }

Element AffineWeyl::simple(int i) const {
  if (i < 0 || i >= spec_.n) fail(ErrorCode::ValidationError, "simple generator index out of range");
  return generators_[static_cast<std::size_t>(i)];
}

Element AffineWeyl::omega_power(std::int64_t a) const {
  Element r = identity();
  const Element& step = a >= 0 ? omega_ : omega_inv_;
  for (std::int64_t k = 0; k < (a >= 0 ? a : -a); ++k) r = compose(r, step);
  return r;
}

Element AffineWeyl::make(IntVec translation, Perm perm) const {
  Element x{spec_.lattice.canonical(translation), std::move(perm)};
  check(x);
  return x;
}

void AffineWeyl::check(const Element& x) const {
  const auto un = static_cast<std::size_t>(spec_.n);
  if (x.translation.size() != un || x.perm.size() != un)
    fail(ErrorCode::SpecMismatch, "element does not belong to " + spec_.name());
  std::vector<bool> seen(un, false);
  for (int p : x.perm) {
    if (p < 0 || p >= spec_.n || seen[static_cast<std::size_t>(p)])
      fail(ErrorCode::SpecMismatch, "finite part is not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  if (!spec_.lattice.is_canonical(x.translation)) fail(ErrorCode::SpecMismatch, "translation not canonical");
}

Element AffineWeyl::compose(const Element& x, const Element& y) const {
  check(x);
  check(y);
  return {spec_.lattice.canonical(exact::vec_add(x.translation, perm_apply(x.perm, y.translation))),
          perm_compose(x.perm, y.perm)};
}

Element AffineWeyl::invert(const Element& x) const {
  check(x);
  Perm wi = perm_inverse(x.perm);
  return {spec_.lattice.canonical(exact::vec_neg(perm_apply(wi, x.translation))), wi};
}

std::int64_t AffineWeyl::omega_class(const Element& x) const {
  std::int64_t s = 0;
  for (auto v : x.translation) s = exact::checked_add(s, v);
  return spec_.family == Family::SL ? exact::floor_mod(s, spec_.n) : s;
}

Element AffineWeyl::coxeter_part(const Element& x) const { return compose(omega_power(-omega_class(x)), x); }

void AffineWeyl::grow_to(int radius) const {
  std::lock_guard lock(cache_->mu);
  auto& layers = cache_->layers;
  while (static_cast<int>(layers.size()) <= radius) {
    const int k = static_cast<int>(layers.size());
    std::vector<Element> next;
    for (const auto& x : layers.back())
      for (const auto& s : generators_) {
        Element y = compose(x, s);
        if (cache_->length.emplace(y, k).second) next.push_back(std::move(y));
      }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }
}

std::optional<int> AffineWeyl::cached_length(const Element& y, int up_to) const {
  grow_to(up_to);
  std::lock_guard lock(cache_->mu);
  auto it = cache_->length.find(y);
  if (it == cache_->length.end()) return std::nullopt;
  return it->second;
}

int AffineWeyl::length(const Element& x) const {
  Element y = coxeter_part(x);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->length.find(y);
    if (it != cache_->length.end()) return it->second;
  }
  // Grow one layer at a time so small elements never pay for the full ball.
  for (int r = 1; r <= max_radius_; ++r)
    if (auto len = cached_length(y, r)) return *len;
  fail(ErrorCode::BallExceeded, element_str(x) + " has length beyond radius " + std::to_string(max_radius_));
}

int AffineWeyl::closed_form_length(const Element& x) const {
  check(x);
  Perm wi = perm_inverse(x.perm);
  std::int64_t total = 0;
  for (int i = 0; i < spec_.n; ++i)
    for (int j = i + 1; j < spec_.n; ++j) {
      std::int64_t a = x.translation[static_cast<std::size_t>(i)] - x.translation[static_cast<std::size_t>(j)];
      bool stays_positive = wi[static_cast<std::size_t>(i)] < wi[static_cast<std::size_t>(j)];
      total += stays_positive ? std::abs(a) : std::abs(a - 1);
    }
  return static_cast<int>(total);
}

ReducedWord AffineWeyl::reduced_word(const Element& x, DescentRule rule) const {
  ReducedWord rw;
  rw.omega_power = omega_class(x);
  Element y = coxeter_part(x);
  int len = length(y);
  std::vector<int> reversed;
  while (len > 0) {
    int chosen = -1;
    for (int i = 0; i < spec_.n; ++i) {
      if (length(compose(y, generators_[static_cast<std::size_t>(i)])) == len - 1) {
        chosen = i;
        if (rule == DescentRule::Lowest) break;
      }
    }
    if (chosen < 0) fail(ErrorCode::ValidationError, "no descent found; length cache inconsistent");
    reversed.push_back(chosen);
    y = compose(y, generators_[static_cast<std::size_t>(chosen)]);
    --len;
  }
  rw.word.assign(reversed.rbegin(), reversed.rend());
  return rw;
}

Element AffineWeyl::from_word(const ReducedWord& w) const {
  Element x = omega_power(w.omega_power);
  for (int i : w.word) x = compose(x, simple(i));
  return x;
}

std::vector<Element> AffineWeyl::ball(int radius) const {
  if (radius < 0 || radius > max_radius_)
    fail(ErrorCode::RadiusTooLarge, "radius " + std::to_string(radius) + " exceeds maximum " + std::to_string(max_radius_));
  grow_to(radius);
  std::vector<std::int64_t> window;
  if (spec_.family == Family::SL) {
    for (int a = 0; a < spec_.n; ++a) window.push_back(a);
  } else {
    window = {-1, 0, 1};
  }
  std::vector<Element> out;
  std::vector<Element> coxeter;
  {
    std::lock_guard lock(cache_->mu);
    for (int k = 0; k <= radius; ++k)
      coxeter.insert(coxeter.end(), cache_->layers[static_cast<std::size_t>(k)].begin(),
                     cache_->layers[static_cast<std::size_t>(k)].end());
  }
  for (auto a : window) {
    Element w = omega_power(a);
    for (const auto& y : coxeter) out.push_back(compose(w, y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> AffineWeyl::sphere(int k) const {
  if (k < 0 || k > max_radius_) fail(ErrorCode::RadiusTooLarge, "sphere radius exceeds maximum");
  grow_to(k);
  std::lock_guard lock(cache_->mu);
  return cache_->layers[static_cast<std::size_t>(k)];
}

std::string element_str(const Element& x) {
  std::string s = "([";
  for (std::size_t i = 0; i < x.translation.size(); ++i) s += (i ? "," : "") + std::to_string(x.translation[i]);
  s += "];[";
  for (std::size_t i = 0; i < x.perm.size(); ++i) s += (i ? "," : "") + std::to_string(x.perm[i] + 1);
  return s + "])";
}

}  // namespace strata::weyl
