#include "findim/fiber.hpp"

#include <algorithm>

#include "exact/error.hpp"

namespace strata::findim {

namespace {

std::optional<GQMatrix> invert(const GQMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<GQVec> cols;
  for (std::size_t k = 0; k < n; ++k) {
    auto x = exact::solve(m, exact::unit_vec(n, k));
    if (!x) return std::nullopt;
    cols.push_back(*x);
  }
  return GQMatrix::from_columns(cols, n);
}

// kind of the product of an entry of kind a with an entry of kind b
EntryKind product_kind(EntryKind a, EntryKind b) {
  using K = EntryKind;
  if (a == K::Zero || b == K::Zero) return K::Zero;
  if (a == K::QuotientY || b == K::QuotientY) {
    if (a == K::IdealY || b == K::IdealY) return K::Zero;
    return K::QuotientY;
  }
  if (a == K::Unit && b == K::Unit) return K::Unit;
  return K::IdealY;
}

bool kind_within(EntryKind inner, EntryKind outer) {
  using K = EntryKind;
  if (inner == K::Zero) return true;
  if (inner == K::IdealY) return outer == K::IdealY || outer == K::Unit;
  return inner == outer;
}

std::string entry_str(const PatternAlgebra& a, std::size_t e) {
  auto [b, r, s] = a.entry(e);
  return "block " + std::to_string(b + 1) + " entry (" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")";
}

}  // namespace

void BaseVariety::require(const std::vector<GQ>& p) const {
  if (static_cast<int>(p.size()) != dim)
    fail(ErrorCode::PointOffBase, "point has " + std::to_string(p.size()) + " coordinates, base has dimension " + std::to_string(dim));
  if (kind == Kind::Torus)
    for (const auto& x : p)
      if (x.is_zero()) fail(ErrorCode::PointOffBase, "torus point with a zero coordinate");
}

bool LinearSubvariety::contains(const std::vector<GQ>& p) const {
  for (std::size_t j = 0; j < normals.size(); ++j) {
    if (normals[j].size() != p.size()) fail(ErrorCode::PointOffBase, "subvariety equation has the wrong length");
    GQ s(0);
    for (std::size_t k = 0; k < p.size(); ++k) s += normals[j][k] * p[k];
    if (!(s == values[j])) return false;
  }
  return true;
}

std::string entry_kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::Zero: return "0";
    case EntryKind::Unit: return "O";
    case EntryKind::IdealY: return "I_Y";
    case EntryKind::QuotientY: return "O_Y";
  }
  return "?";
}

EntryKind parse_entry_kind(const std::string& s) {
  if (s == "0") return EntryKind::Zero;
  if (s == "O") return EntryKind::Unit;
  if (s == "I_Y") return EntryKind::IdealY;
  if (s == "O_Y") return EntryKind::QuotientY;
  fail(ErrorCode::ValidationError, "unknown pattern entry '" + s + "' (expected 0, O, I_Y or O_Y)");
}

bool entry_present(EntryKind k, bool p_in_y) {
  switch (k) {
    case EntryKind::Zero: return false;
    case EntryKind::Unit: return true;
    case EntryKind::IdealY: return !p_in_y;
    case EntryKind::QuotientY: return p_in_y;
  }
  return false;
}

std::size_t PatternAlgebra::entry_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.n * b.n;
  return n;
}

std::tuple<std::size_t, std::size_t, std::size_t> PatternAlgebra::entry(std::size_t e) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t sq = blocks[b].n * blocks[b].n;
    if (e < sq) return {b, e / blocks[b].n, e % blocks[b].n};
    e -= sq;
  }
  fail(ErrorCode::ValidationError, "pattern entry index out of range");
}

std::size_t PatternAlgebra::entry_index(std::size_t block, std::size_t r, std::size_t s) const {
  std::size_t off = 0;
  for (std::size_t b = 0; b < block; ++b) off += blocks[b].n * blocks[b].n;
  return off + r * blocks[block].n + s;
}

EntryKind PatternAlgebra::kind(std::size_t e) const {
  auto [b, r, s] = entry(e);
  return blocks[b].at(r, s);
}

void PatternAlgebra::validate() const {
  if (base.dim < 1) fail(ErrorCode::ValidationError, "base dimension must be positive");
  if (y.normals.size() != y.values.size()) fail(ErrorCode::ValidationError, "subvariety equations and values differ in number");
  for (const auto& nrm : y.normals)
    if (static_cast<int>(nrm.size()) != base.dim) fail(ErrorCode::ValidationError, "subvariety equation has the wrong length");
  if (blocks.empty()) fail(ErrorCode::ValidationError, "pattern has no blocks");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    if (blk.n == 0 || blk.entries.size() != blk.n * blk.n)
      fail(ErrorCode::ValidationError, "block " + std::to_string(b + 1) + " is not a square pattern");
    for (std::size_t r = 0; r < blk.n; ++r)
      for (std::size_t s = 0; s < blk.n; ++s)
        for (std::size_t t = 0; t < blk.n; ++t)
          if (!kind_within(product_kind(blk.at(r, s), blk.at(s, t)), blk.at(r, t)))
            fail(ErrorCode::ValidationError, "pattern is not closed under multiplication in block " + std::to_string(b + 1) +
                                                 " at (" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")*(" +
                                                 std::to_string(s + 1) + "," + std::to_string(t + 1) + ")");
  }
}

void validate_ideal(const PatternAlgebra& a, const IdealPattern& ideal) {
  if (ideal.entries.size() != a.entry_count()) fail(ErrorCode::ValidationError, "ideal pattern has the wrong shape");
  for (std::size_t e = 0; e < ideal.entries.size(); ++e)
    if (!kind_within(ideal.entries[e], a.kind(e)))
      fail(ErrorCode::ValidationError, "ideal is not contained in the algebra at " + entry_str(a, e));
  std::size_t off = 0;
  for (const auto& blk : a.blocks) {
    auto j = [&](std::size_t r, std::size_t s) { return ideal.entries[off + r * blk.n + s]; };
    for (std::size_t r = 0; r < blk.n; ++r)
      for (std::size_t s = 0; s < blk.n; ++s)
        for (std::size_t t = 0; t < blk.n; ++t)
          if (!kind_within(product_kind(blk.at(r, s), j(s, t)), j(r, t)) ||
              !kind_within(product_kind(j(r, s), blk.at(s, t)), j(r, t)))
            fail(ErrorCode::ValidationError, "pattern is not a two-sided ideal at " + entry_str(a, off + r * blk.n + t));
    off += blk.n * blk.n;
  }
}

PatternFiber pattern_fiber(const PatternAlgebra& a, const std::vector<GQ>& p) {
  a.base.require(p);
  const bool in_y = a.y.contains(p);
  const std::size_t ne = a.entry_count();
  PatternFiber f;
  f.basis_of_entry.resize(ne);
  std::size_t d = 0;
  for (std::size_t e = 0; e < ne; ++e)
    if (entry_present(a.kind(e), in_y)) f.basis_of_entry[e] = d++;
  f.algebra = FinDimAlgebra(d);
  std::vector<std::string> labels;
  bool unital = true;
  GQVec diag(d);
  for (std::size_t b = 0; b < a.blocks.size(); ++b) {
    const std::size_t n = a.blocks[b].n;
    for (std::size_t r = 0; r < n; ++r) {
      if (auto i = f.basis_of_entry[a.entry_index(b, r, r)]) diag[*i] = GQ(1);
      for (std::size_t s = 0; s < n; ++s) {
        auto x = f.basis_of_entry[a.entry_index(b, r, s)];
        if (!x) {
          if (r == s) {
            for (std::size_t t = 0; t < n; ++t)
              if (f.basis_of_entry[a.entry_index(b, r, t)] || f.basis_of_entry[a.entry_index(b, t, r)]) unital = false;
          }
          continue;
        }
        labels.push_back("E" + std::to_string(b + 1) + "." + std::to_string(r + 1) + std::to_string(s + 1));
        for (std::size_t t = 0; t < n; ++t) {
          auto y = f.basis_of_entry[a.entry_index(b, s, t)];
          if (!y) continue;
          auto z = f.basis_of_entry[a.entry_index(b, r, t)];
          if (!z) fail(ErrorCode::ValidationError, "pattern fiber is not closed under multiplication");
          f.algebra.set_product(*x, *y, FinDimAlgebra::Sparse{{*z, GQ(1)}});
        }
      }
    }
  }
  f.algebra.set_labels(labels);
  if (unital) f.algebra.set_unit(diag);
  std::vector<GQVec> marked;
  for (const auto& c : p) {
    GQVec m = diag;
    for (auto& x : m) x *= c;
    marked.push_back(std::move(m));
  }
  f.algebra.set_marked_central(std::move(marked));
  return f;
}

Subspace ideal_fiber(const PatternAlgebra& a, const PatternFiber& f, const IdealPattern& ideal, const std::vector<GQ>& p) {
  const bool in_y = a.y.contains(p);
  Subspace s(f.algebra.dim());
  for (std::size_t e = 0; e < ideal.entries.size(); ++e)
    if (f.basis_of_entry[e] && entry_present(ideal.entries[e], in_y)) s.insert(f.algebra.basis(*f.basis_of_entry[e]));
  return s;
}

AlgebraMap pattern_map_fiber(const PatternAlgebra& a, const PatternFiber& fa, const PatternAlgebra& b,
                             const PatternFiber& fb, const PatternMap& f) {
  if (f.images.size() != a.entry_count()) fail(ErrorCode::ValidationError, "pattern map must give an image for every source entry");
  AlgebraMap m;
  m.images.assign(fa.algebra.dim(), GQVec(fb.algebra.dim()));
  for (std::size_t e = 0; e < f.images.size(); ++e) {
    if (!fa.basis_of_entry[e]) continue;
    GQVec& img = m.images[*fa.basis_of_entry[e]];
    for (const auto& [t, c] : f.images[e]) {
      if (t >= b.entry_count()) fail(ErrorCode::ValidationError, "pattern map target entry out of range");
      if (auto i = fb.basis_of_entry[t]) img[*i] += c;
    }
  }
  return m;
}

Coefficient Coefficient::m2_rho() {
  Coefficient c;
  c.name = "M2-rho";
  c.n = 2;
  c.rho = groups::rho_quaternion_matrices();
  return c;
}

Coefficient Coefficient::by_name(const std::string& name) {
  if (name == "scalar") return scalar();
  if (name == "M2-rho") return m2_rho();
  fail(ErrorCode::ValidationError, "unknown coefficient block '" + name + "' (expected scalar or M2-rho)");
}

void CrossedProduct::validate() const {
  if (!action) fail(ErrorCode::ValidationError, "crossed product without an action");
  const auto& g = action->group();
  if (coefficient.n > 1) {
    if (coefficient.rho.size() != g.order())
      fail(ErrorCode::ValidationError, "coefficient block " + coefficient.name + " needs one matrix per group element");
    for (const auto& m : coefficient.rho)
      if (m.rows() != coefficient.n || m.cols() != coefficient.n || !invert(m))
        fail(ErrorCode::ValidationError, "coefficient block " + coefficient.name + " has a non-invertible matrix");
    groups::cocycle_from_projective(g, coefficient.rho);
  }
  if (cocycle) {
    std::string w;
    if (!groups::verify_cocycle(g, *cocycle, &w)) fail(ErrorCode::InvalidCocycle, w);
  }
}

FinDimAlgebra crossed_product_fiber(const CrossedProduct& cp, const std::vector<GQ>& p) {
  const auto& action = *cp.action;
  if (static_cast<int>(p.size()) != action.rank())
    fail(ErrorCode::PointOffBase, "point has " + std::to_string(p.size()) + " coordinates, torus has rank " + std::to_string(action.rank()));
  try {
    lattice::require_on_torus(action, p);
  } catch (const Error& e) {
    fail(ErrorCode::PointOffBase, e.what());
  }
  const auto& g = action.group();
  const std::size_t ng = g.order();
  std::vector<std::vector<GQ>> orbit;
  for (std::size_t h = 0; h < ng; ++h) {
    auto q = lattice::act(action, static_cast<int>(h), p);
    if (std::find(orbit.begin(), orbit.end(), q) == orbit.end()) orbit.push_back(std::move(q));
  }
  std::sort(orbit.begin(), orbit.end());
  const std::size_t n = cp.coefficient.n, c2 = n * n, no = orbit.size();
  const std::size_t dim = no * c2 * ng;
  if (dim > kMaxDim)
    fail(ErrorCode::OrbitTooLarge, "fiber dimension " + std::to_string(dim) + " exceeds 128 (orbit size " + std::to_string(no) + ")");

  // orbit permutation of each group element
  std::vector<std::vector<std::size_t>> moves(ng, std::vector<std::size_t>(no));
  for (std::size_t h = 0; h < ng; ++h)
    for (std::size_t i = 0; i < no; ++i) {
      auto q = lattice::act(action, static_cast<int>(h), orbit[i]);
      moves[h][i] = static_cast<std::size_t>(std::find(orbit.begin(), orbit.end(), q) - orbit.begin());
    }
  std::vector<GQMatrix> rho, rho_inv;
  if (n > 1)
    for (const auto& m : cp.coefficient.rho) {
      rho.push_back(m);
      rho_inv.push_back(*invert(m));
    }
  auto idx = [&](std::size_t i, std::size_t a, std::size_t b, std::size_t h) { return ((i * n + a) * n + b) * ng + h; };
  auto cocycle = [&](std::size_t x, std::size_t y) {
    return cp.cocycle ? (*cp.cocycle)(static_cast<int>(x), static_cast<int>(y)) : GQ(1);
  };

  FinDimAlgebra alg(dim);
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t x = 0; x < ng; ++x)
          for (std::size_t j = 0; j < no; ++j) {
            if (moves[x][j] != i) continue;
            for (std::size_t c = 0; c < n; ++c)
              for (std::size_t d = 0; d < n; ++d)
                for (std::size_t y = 0; y < ng; ++y) {
                  const std::size_t xy = static_cast<std::size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)));
                  const GQ k = cocycle(x, y);
                  FinDimAlgebra::Sparse prod;
                  // E_ab * rho_x E_cd rho_x^-1 = sum_f rho_x[b,c] rho_x^-1[d,f] E_af
                  for (std::size_t f = 0; f < n; ++f) {
                    GQ coeff = n > 1 ? rho[x](b, c) * rho_inv[x](d, f) * k : k;
                    if (!coeff.is_zero()) prod.emplace_back(idx(i, a, f, xy), coeff);
                  }
                  alg.set_product(idx(i, a, b, x), idx(j, c, d, y), std::move(prod));
                }
          }
  GQVec unit(dim);
  const auto e = static_cast<std::size_t>(g.identity());
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t a = 0; a < n; ++a) unit[idx(i, a, a, e)] = cocycle(e, e).inverse();
  alg.set_unit(unit);
  // power sums of each coordinate over the orbit: invariant functions, scalar on the fiber
  std::vector<GQVec> marked;
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t k = 1; k <= no; ++k) {
      GQ s(0);
      for (const auto& q : orbit) s += q[j].pow(static_cast<std::int64_t>(k));
      GQVec m = unit;
      for (auto& v : m) v *= s;
      marked.push_back(std::move(m));
    }
  alg.set_marked_central(std::move(marked));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t x = 0; x < ng; ++x) {
          std::string l = "d" + std::to_string(i + 1);
          if (n > 1) l += "E" + std::to_string(a + 1) + std::to_string(b + 1);
          labels.push_back(l + "u" + g.name(static_cast<int>(x)));
        }
  alg.set_labels(std::move(labels));
  return alg;
}

std::string FiberDescriptor::kind() const {
  if (const auto* cp = std::get_if<CrossedProduct>(&body)) return cp->cocycle ? "twisted_crossed_product" : "crossed_product";
  if (std::holds_alternative<PatternAlgebra>(body)) return "matrix_ideal_pattern";
  return "structure_constants";
}

void FiberDescriptor::validate() const {
  if (const auto* cp = std::get_if<CrossedProduct>(&body)) {
    cp->validate();
  } else if (const auto* pa = std::get_if<PatternAlgebra>(&body)) {
    pa->validate();
  } else {
    const auto& a = std::get<ConstantAlgebra>(body).algebra;
    std::string w;
    if (!a.is_associative(&w)) fail(ErrorCode::ValidationError, w);
    if (!a.unit_ok()) fail(ErrorCode::ValidationError, "declared unit is not a two-sided identity");
    if (!a.marked_central_ok(&w)) fail(ErrorCode::ValidationError, w);
  }
}

FinDimAlgebra build_fiber(const FiberDescriptor& desc, const std::vector<GQ>& p) {
  desc.validate();
  if (const auto* cp = std::get_if<CrossedProduct>(&desc.body)) return crossed_product_fiber(*cp, p);
  if (const auto* pa = std::get_if<PatternAlgebra>(&desc.body)) return pattern_fiber(*pa, p).algebra;
  return std::get<ConstantAlgebra>(desc.body).algebra;
}

}  // namespace strata::findim
