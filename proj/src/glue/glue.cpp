#include "glue/glue.hpp"

#include <algorithm>

#include "exact/error.hpp"
#include "lattice/snf.hpp"

namespace strata::glue {

using exact::GQMatrix;
using exact::GQVec;
using exact::IntMatrix;

namespace {

struct LinearSolution {
  GQVec x0;
  std::vector<GQVec> directions;
};

std::optional<LinearSolution> solve_linear(const LinearSubvariety& l, std::size_t n) {
  if (l.normals.empty()) {
    LinearSolution s{GQVec(n), {}};
    for (std::size_t j = 0; j < n; ++j) s.directions.push_back(exact::unit_vec(n, j));
    return s;
  }
  GQMatrix a = GQMatrix::from_rows(l.normals, n);
  auto x0 = exact::solve(a, GQVec(l.values.begin(), l.values.end()));
  if (!x0) return std::nullopt;
  return LinearSolution{*x0, exact::nullspace(a)};
}

GQ dot(const GQVec& a, const GQVec& b) {
  GQ s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// relations of a coset together with the kernel characters of the base
Coset augmented(const Base& base, const Coset& c) {
  const std::size_t n = static_cast<std::size_t>(base.dim);
  IntMatrix r(n, c.relations.cols() + base.kernels.size());
  std::vector<GQ> v = c.values;
  for (std::size_t j = 0; j < c.relations.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) r(i, j) = c.relations(i, j);
  for (std::size_t k = 0; k < base.kernels.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) r(i, c.relations.cols() + k) = base.kernels[k][i];
    v.emplace_back(1);
  }
  return {r, v};
}

GQ value_of(const Coset& c, const IntVec& coeffs) {
  GQ out(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) out *= c.values[k].pow(coeffs[k]);
  return out;
}

// the coset is nonempty: every integer relation among the characters holds for the values
bool consistent(const Coset& c) {
  for (const auto& v : c.values)
    if (v.is_zero()) return false;
  if (c.relations.cols() == 0) return true;
  auto f = lattice::smith_normal_form(c.relations);
  for (std::size_t j = f.rank; j < c.relations.cols(); ++j)
    if (!value_of(c, f.v.col(j)).is_one()) return false;
  return true;
}

// integer coefficients expressing lambda in the column lattice of r
std::optional<IntVec> in_lattice(const IntMatrix& r, const IntVec& lambda) {
  if (r.cols() == 0) {
    if (std::all_of(lambda.begin(), lambda.end(), [](std::int64_t x) { return x == 0; })) return IntVec{};
    return std::nullopt;
  }
  auto f = lattice::smith_normal_form(r);
  IntVec w = f.u.apply(lambda);
  IntVec y(r.cols(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < f.rank) {
      if (w[i] % f.d(i, i) != 0) return std::nullopt;
      y[i] = w[i] / f.d(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return f.v.apply(y);
}

bool coset_within(const Base& base, const Coset& inner, const Coset& outer) {
  Coset a = augmented(base, inner);
  if (!consistent(a)) return true;
  for (std::size_t j = 0; j < outer.relations.cols(); ++j) {
    auto c = in_lattice(a.relations, outer.relations.col(j));
    if (!c || !(value_of(a, *c) == outer.values[j])) return false;
  }
  return true;
}

bool linear_within(const LinearSubvariety& inner, const Piece& outer, std::size_t n) {
  auto s = solve_linear(inner, n);
  if (!s) return true;
  if (const auto* q = std::get_if<LinearSubvariety>(&outer)) {
    for (std::size_t k = 0; k < q->normals.size(); ++k) {
      if (!(dot(q->normals[k], s->x0) == q->values[k])) return false;
      for (const auto& d : s->directions)
        if (!dot(q->normals[k], d).is_zero()) return false;
    }
    return true;
  }
  if (const auto* q = std::get_if<PointSet>(&outer))
    return s->directions.empty() && std::find(q->points.begin(), q->points.end(), s->x0) != q->points.end();
  return false;
}

Coset stack(const Coset& a, const Coset& b) {
  const std::size_t n = a.relations.rows();
  IntMatrix r(n, a.relations.cols() + b.relations.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.relations.cols(); ++j) r(i, j) = a.relations(i, j);
    for (std::size_t j = 0; j < b.relations.cols(); ++j) r(i, a.relations.cols() + j) = b.relations(i, j);
  }
  std::vector<GQ> v = a.values;
  v.insert(v.end(), b.values.begin(), b.values.end());
  return {r, v};
}

std::string linear_str(const LinearSubvariety& l) {
  std::string out;
  for (std::size_t k = 0; k < l.normals.size(); ++k) {
    std::string lhs;
    for (std::size_t j = 0; j < l.normals[k].size(); ++j) {
      const GQ& c = l.normals[k][j];
      if (c.is_zero()) continue;
      if (!lhs.empty()) lhs += " + ";
      lhs += (c.is_one() ? "" : "(" + c.str() + ")*") + "x" + std::to_string(j + 1);
    }
    out += (out.empty() ? "" : ", ") + (lhs.empty() ? "0" : lhs) + " = " + l.values[k].str();
  }
  return out.empty() ? "everything" : out;
}

std::string point_str(const std::vector<GQ>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].str();
  return s + ")";
}

void check_piece(const Base& base, const Piece& p, const std::string& what) {
  const auto n = static_cast<std::size_t>(base.dim);
  if (const auto* c = std::get_if<Coset>(&p)) {
    if (base.kind != Base::Kind::Torus) fail(ErrorCode::LocusOffBase, what + ": a torus coset over an affine base");
    if (c->relations.rows() != n || c->values.size() != c->relations.cols())
      fail(ErrorCode::LocusOffBase, what + ": coset has the wrong shape");
  } else if (const auto* l = std::get_if<LinearSubvariety>(&p)) {
    if (base.kind != Base::Kind::Affine) fail(ErrorCode::LocusOffBase, what + ": a linear subvariety over a torus base");
    if (l->normals.size() != l->values.size()) fail(ErrorCode::LocusOffBase, what + ": equations and values differ in number");
    for (const auto& a : l->normals)
      if (a.size() != n) fail(ErrorCode::LocusOffBase, what + ": equation has the wrong length");
  } else {
    Base bare = base;
    bare.support.reset();
    for (const auto& q : std::get<PointSet>(p).points)
      if (!bare.on_base(q)) fail(ErrorCode::LocusOffBase, what + ": point " + point_str(q) + " is not on the base");
  }
}

void check_locus(const Base& base, const Locus& l, const std::string& what) {
  for (const auto& p : l.pieces) check_piece(base, p, what);
}

bool in_doubled(const Doubling& d, const std::vector<GQ>& x) { return d.locus.contains(x) && !d.minus.contains(x); }

Piece lift(const Base& factor, const Piece& p, std::size_t offset, std::size_t total) {
  const auto n = static_cast<std::size_t>(factor.dim);
  if (const auto* c = std::get_if<Coset>(&p)) {
    IntMatrix r(total, c->relations.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c->relations.cols(); ++j) r(offset + i, j) = c->relations(i, j);
    return Coset{r, c->values};
  }
  if (const auto* l = std::get_if<LinearSubvariety>(&p)) {
    LinearSubvariety out;
    for (std::size_t k = 0; k < l->normals.size(); ++k) {
      GQVec a(total);
      for (std::size_t i = 0; i < n; ++i) a[offset + i] = l->normals[k][i];
      out.normals.push_back(std::move(a));
      out.values.push_back(l->values[k]);
    }
    return out;
  }
  // a point of one factor becomes a coordinate slice of the product
  fail(ErrorCode::UnsupportedDescriptor, "point lists cannot be lifted to a product; give the locus by equations");
}

bool irreducible_piece_meets_closure(const Base& base, const Piece& p, const Locus& minus, const std::vector<GQ>& x) {
  if (const auto* ps = std::get_if<PointSet>(&p)) {
    for (const auto& q : ps->points)
      if (q == x && !minus.contains(q)) return true;
    return false;
  }
  return piece_contains(p, x) && !piece_within(base, p, minus);
}

Base product_base(const ProductSpace& s) {
  if (s.factors.empty()) fail(ErrorCode::UnsupportedDescriptor, "empty product");
  Base b;
  b.kind = s.factors[0].base.kind;
  b.dim = s.dim();
  std::size_t off = 0;
  for (const auto& f : s.factors) {
    if (f.base.kind != b.kind) fail(ErrorCode::UnsupportedDescriptor, "products must have factors of one kind");
    for (const auto& k : f.base.kernels) {
      IntVec v(static_cast<std::size_t>(b.dim), 0);
      std::copy(k.begin(), k.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
      b.kernels.push_back(std::move(v));
    }
    off += static_cast<std::size_t>(f.base.dim);
  }
  return b;
}

Piece whole_piece(const Base& base) {
  if (base.kind == Base::Kind::Affine) return LinearSubvariety{};
  return Coset{IntMatrix(static_cast<std::size_t>(base.dim), 0), {}};
}

bool piece_nonempty(const Base& base, const Piece& p) {
  if (const auto* ps = std::get_if<PointSet>(&p)) return !ps->points.empty();
  if (const auto* l = std::get_if<LinearSubvariety>(&p)) return solve_linear(*l, static_cast<std::size_t>(base.dim)).has_value();
  return consistent(augmented(base, std::get<Coset>(p)));
}

std::size_t piece_components(const Base& base, const Piece& p) {
  if (!piece_nonempty(base, p)) return 0;
  if (const auto* ps = std::get_if<PointSet>(&p)) return ps->points.size();
  if (std::holds_alternative<LinearSubvariety>(p)) return 1;
  Coset a = augmented(base, std::get<Coset>(p));
  if (a.relations.cols() == 0) return 1;
  std::size_t k = 1;
  for (auto t : lattice::quotient_invariants(a.relations).torsion) k *= static_cast<std::size_t>(t);
  return k;
}

}  // namespace

bool piece_contains(const Piece& p, const std::vector<GQ>& x) {
  if (const auto* c = std::get_if<Coset>(&p)) return c->relations.rows() == x.size() && c->contains(x);
  if (const auto* l = std::get_if<LinearSubvariety>(&p)) {
    for (const auto& a : l->normals)
      if (a.size() != x.size()) return false;
    return l->contains(x);
  }
  const auto& pts = std::get<PointSet>(p).points;
  return std::find(pts.begin(), pts.end(), x) != pts.end();
}

bool piece_within(const Base& base, const Piece& inner, const Locus& outer) {
  if (const auto* ps = std::get_if<PointSet>(&inner)) {
    for (const auto& q : ps->points)
      if (!outer.contains(q)) return false;
    return true;
  }
  const auto n = static_cast<std::size_t>(base.dim);
  for (const auto& q : outer.pieces) {
    if (const auto* l = std::get_if<LinearSubvariety>(&inner)) {
      if (linear_within(*l, q, n)) return true;
    } else if (const auto* c = std::get_if<Coset>(&q)) {
      if (coset_within(base, std::get<Coset>(inner), *c)) return true;
    }
  }
  return false;
}

bool pieces_meet(const Base& base, const Piece& a, const Piece& b) {
  if (const auto* ps = std::get_if<PointSet>(&a)) {
    for (const auto& q : ps->points)
      if (piece_contains(b, q)) return true;
    return false;
  }
  if (std::holds_alternative<PointSet>(b)) return pieces_meet(base, b, a);
  if (const auto* la = std::get_if<LinearSubvariety>(&a)) {
    const auto* lb = std::get_if<LinearSubvariety>(&b);
    if (!lb) return false;
    LinearSubvariety s = *la;
    s.normals.insert(s.normals.end(), lb->normals.begin(), lb->normals.end());
    s.values.insert(s.values.end(), lb->values.begin(), lb->values.end());
    return solve_linear(s, static_cast<std::size_t>(base.dim)).has_value();
  }
  const auto* cb = std::get_if<Coset>(&b);
  if (!cb) return false;
  return consistent(augmented(base, stack(std::get<Coset>(a), *cb)));
}

bool Locus::contains(const std::vector<GQ>& p) const {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Piece& q) { return piece_contains(q, p); });
}

std::string Locus::str() const {
  if (pieces.empty()) return "{}";
  std::string out;
  for (const auto& p : pieces) {
    std::string s;
    if (const auto* c = std::get_if<Coset>(&p)) {
      for (const auto& e : c->equations()) s += (s.empty() ? "" : ", ") + e;
      if (s.empty()) s = "everything";
    } else if (const auto* l = std::get_if<LinearSubvariety>(&p)) {
      s = linear_str(*l);
    } else {
      for (const auto& q : std::get<PointSet>(p).points) s += (s.empty() ? "" : ", ") + point_str(q);
    }
    out += (out.empty() ? "" : " U ") + ("{" + s + "}");
  }
  return out;
}

bool Base::on_base(const std::vector<GQ>& p) const {
  if (static_cast<int>(p.size()) != dim) return false;
  if (kind == Kind::Torus) {
    for (const auto& x : p)
      if (x.is_zero()) return false;
    for (const auto& k : kernels)
      if (!exact::character_value(k, p).is_one()) return false;
  }
  return !support || support->contains(p);
}

void Base::require(const std::vector<GQ>& p) const {
  if (!on_base(p)) fail(ErrorCode::PointOffBase, "point " + point_str(p) + " is not on the base");
}

std::size_t GluedSpace::copies() const {
  std::size_t n = 1;
  for (const auto& d : doubling) n += d.extra;
  return n;
}

std::size_t GluedSpace::doubling_of(std::size_t copy) const {
  std::size_t c = 1;
  for (std::size_t k = 0; k < doubling.size(); ++k) {
    if (copy < c + doubling[k].extra) return k;
    c += doubling[k].extra;
  }
  fail(ErrorCode::ValidationError, "copy index " + std::to_string(copy) + " out of range");
}

int ProductSpace::dim() const {
  int n = 0;
  for (const auto& f : factors) n += f.base.dim;
  return n;
}

GluedSpace build_glued(Base base, std::vector<Doubling> doubling) {
  if (base.dim < 1) fail(ErrorCode::LocusOffBase, "base dimension must be positive");
  for (const auto& k : base.kernels)
    if (static_cast<int>(k.size()) != base.dim) fail(ErrorCode::LocusOffBase, "kernel character has the wrong length");
  if (!base.kernels.empty() && base.kind != Base::Kind::Torus) fail(ErrorCode::LocusOffBase, "kernel characters need a torus base");
  if (base.support) check_locus(base, *base.support, "support");
  for (std::size_t k = 0; k < doubling.size(); ++k) {
    if (doubling[k].extra == 0) fail(ErrorCode::LocusOffBase, "doubling " + std::to_string(k + 1) + " adds no copies");
    check_locus(base, doubling[k].locus, "doubling " + std::to_string(k + 1));
    check_locus(base, doubling[k].minus, "doubling " + std::to_string(k + 1) + " minus");
  }
  return {std::move(base), std::move(doubling)};
}

std::size_t multiplicity_at(const GluedSpace& s, const std::vector<GQ>& x) {
  s.base.require(x);
  std::size_t delta = 1;
  for (const auto& d : s.doubling)
    if (in_doubled(d, x)) delta += d.extra;
  return delta;
}

bool is_valid_point(const GluedSpace& s, const GluedPoint& p) {
  if (!s.base.on_base(p.x) || p.copy >= s.copies()) return false;
  return p.copy == 0 || in_doubled(s.doubling[s.doubling_of(p.copy)], p.x);
}

bool closure_contains(const ProductSpace& s, const ProductSet& set, const ProductPoint& candidate) {
  const Base base = product_base(s);
  const std::size_t nf = s.factors.size();
  const auto total = static_cast<std::size_t>(base.dim);
  if (candidate.copies.size() != nf || candidate.x.size() != total)
    fail(ErrorCode::PointOffBase, "candidate does not match the product shape");
  check_locus(base, set.locus, "set");
  check_locus(base, set.minus, "set minus");

  std::vector<std::size_t> offset(nf);
  std::vector<std::vector<GQ>> xs(nf);
  for (std::size_t i = 0, off = 0; i < nf; ++i) {
    offset[i] = off;
    const auto n = static_cast<std::size_t>(s.factors[i].base.dim);
    xs[i].assign(candidate.x.begin() + static_cast<std::ptrdiff_t>(off), candidate.x.begin() + static_cast<std::ptrdiff_t>(off + n));
    off += n;
    if (!is_valid_point(s.factors[i], {candidate.copies[i], xs[i]}))
      fail(ErrorCode::PointOffBase, "candidate copy " + std::to_string(candidate.copies[i]) + " does not exist over " + point_str(xs[i]));
  }
  for (const auto& c : set.charts) {
    if (c.size() != nf) fail(ErrorCode::UnsupportedDescriptor, "set chart does not name one copy per factor");
    for (std::size_t i = 0; i < nf; ++i)
      if (c[i] >= s.factors[i].copies()) fail(ErrorCode::UnsupportedDescriptor, "set chart names a missing copy");
  }

  // charts of each factor containing the candidate
  std::vector<std::vector<std::size_t>> options(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const auto& f = s.factors[i];
    if (candidate.copies[i] > 0) {
      options[i] = {candidate.copies[i]};
      continue;
    }
    options[i] = {0};
    for (std::size_t k = 1; k < f.copies(); ++k)
      if (!in_doubled(f.doubling[f.doubling_of(k)], xs[i])) options[i].push_back(k);
  }
  // locus on which chart k of factor i differs from the base sheet
  auto doubled_locus = [&](std::size_t i, std::size_t k, Locus& out) {
    if (k == 0) return;
    const auto& d = s.factors[i].doubling[s.factors[i].doubling_of(k)];
    if (!d.minus.empty())
      fail(ErrorCode::UnsupportedDescriptor, "closure across a doubling with excluded points is not a locus-minus-locus set");
    for (const auto& p : d.locus.pieces) out.pieces.push_back(lift(s.factors[i].base, p, offset[i], total));
  };

  std::vector<std::size_t> pick(nf, 0);
  while (true) {
    std::vector<std::size_t> chart(nf);
    for (std::size_t i = 0; i < nf; ++i) chart[i] = options[i][pick[i]];
    for (const auto& c : set.charts) {
      Locus removed = set.minus;
      for (std::size_t i = 0; i < nf; ++i)
        if (c[i] != chart[i]) {
          doubled_locus(i, c[i], removed);
          doubled_locus(i, chart[i], removed);
        }
      for (const auto& p : set.locus.pieces)
        if (irreducible_piece_meets_closure(base, p, removed, candidate.x)) return true;
    }
    std::size_t i = 0;
    while (i < nf && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == nf) break;
  }
  return false;
}

bool closure_contains(const GluedSpace& s, const SetDescriptor& set, const GluedPoint& candidate) {
  ProductSpace ps{{s}};
  ProductSet pset;
  for (auto c : set.charts) pset.charts.push_back({c});
  pset.locus = set.locus;
  pset.minus = set.minus;
  return closure_contains(ps, pset, ProductPoint{{candidate.copy}, candidate.x});
}

ModelInvariants model_invariants(const SpaceModel& m) {
  ModelInvariants inv;
  for (const auto& part : m.parts) {
    const Base& b = part.base;
    std::vector<Piece> support = b.support ? b.support->pieces : std::vector<Piece>{whole_piece(b)};
    std::size_t comps = 0;
    for (const auto& p : support) comps += piece_components(b, p);
    inv.components += comps;
    for (const auto& d : part.doubling) {
      bool meets = false, covers = d.minus.empty();
      for (const auto& p : support) {
        bool hit = false;
        for (const auto& q : d.locus.pieces)
          if (pieces_meet(b, p, q) && (d.minus.empty() || !piece_within(b, q, d.minus))) hit = true;
        meets = meets || hit;
        if (!piece_within(b, p, d.locus)) covers = false;
      }
      if (covers) {
        // a copy of the whole space glued along nothing
        inv.components += d.extra * comps;
      } else if (meets) {
        inv.non_separated_pair = true;
        inv.multiplicity_profile.push_back(1 + d.extra);
      }
    }
  }
  std::sort(inv.multiplicity_profile.begin(), inv.multiplicity_profile.end());
  return inv;
}

Comparison distinguishing_invariants(const SpaceModel& a, const SpaceModel& b) {
  Comparison c{model_invariants(a), model_invariants(b), {}, {}};
  if (c.first.components != c.second.components) c.differing.push_back("components");
  if (c.first.non_separated_pair != c.second.non_separated_pair) c.differing.push_back("non-separated pair");
  if (c.first.multiplicity_profile != c.second.multiplicity_profile) c.differing.push_back("multiplicity profile");
  c.verdict = c.differing.empty() ? "indistinguishable at this resolution" : "not homeomorphic";
  return c;
}

GluedSpace from_theta(const exquo::ExtendedQuotient& eq, const std::vector<exquo::DoublingInstruction>& data) {
  Base b;
  b.kind = Base::Kind::Torus;
  b.dim = eq.action->rank();
  if (eq.action->kernel()) b.kernels.push_back(*eq.action->kernel());
  b.note = "quotient by a group of order " + std::to_string(eq.action->group().order());
  std::vector<Doubling> ds;
  for (const auto& ins : data) {
    Doubling d;
    for (const auto& c : ins.locus) d.locus.pieces.emplace_back(c);
    for (const auto& c : ins.minus) d.minus.pieces.emplace_back(c);
    ds.push_back(std::move(d));
  }
  return build_glued(std::move(b), std::move(ds));
}

}  // namespace strata::glue
