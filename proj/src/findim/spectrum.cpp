#include "findim/spectrum.hpp"

#include <algorithm>

#include "exact/error.hpp"

namespace strata::findim {

namespace {

std::string dims_str(const std::vector<std::size_t>& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "}";
}

// One layer of the check; returns false and fills the witness on failure.
bool check_layer(const FinDimAlgebra& a, const FinDimAlgebra& b, const AlgebraMap& f, const std::string& label,
                 SpectrumReport& rep) {
  Structure sa = analyze(a);
  Structure sb = analyze(b);
  std::vector<std::size_t> da, db;
  for (const auto& blk : sa.blocks) da.push_back(blk.n);
  for (const auto& blk : sb.blocks) db.push_back(blk.n);
  rep.source_blocks.push_back(da);
  rep.target_blocks.push_back(db);
  std::vector<GQVec> images;
  for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(sb.to_semisimple->coords(f.images[i]));
  std::vector<std::size_t> assignment;
  std::vector<bool> hit(sa.blocks.size(), false);
  for (std::size_t j = 0; j < sb.blocks.size(); ++j) {
    std::vector<GQVec> cols;
    for (const auto& im : images) cols.push_back(sb.semisimple.mul(im, sb.blocks[j].idempotent));
    Subspace pre = Subspace::span(a.dim(), exact::nullspace(GQMatrix::from_columns(cols, sb.semisimple.dim())));
    std::vector<std::size_t> over;
    for (std::size_t i = 0; i < sa.primitive_ideals.size(); ++i)
      if (sa.primitive_ideals[i].contains(pre)) over.push_back(i);
    if (over.size() != 1) {
      rep.witness = label + ": preimage of target primitive " + std::to_string(j) + " (block size " +
                    std::to_string(db[j]) + ") lies in " + std::to_string(over.size()) +
                    " source primitives; source blocks " + dims_str(da) + ", target blocks " + dims_str(db);
      return false;
    }
    if (hit[over[0]]) {
      rep.witness = label + ": two target primitives pull back to source primitive " + std::to_string(over[0]);
      return false;
    }
    hit[over[0]] = true;
    assignment.push_back(over[0]);
  }
  rep.assignment.push_back(assignment);
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (!hit[i]) {
      rep.witness = label + ": source primitive " + std::to_string(i) + " (block size " + std::to_string(da[i]) +
                    ") is not reached; source blocks " + dims_str(da) + ", target blocks " + dims_str(db);
      return false;
    }
  return true;
}

}  // namespace

GQVec AlgebraMap::apply(const GQVec& v) const {
  if (images.empty()) return {};
  GQVec out(images[0].size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) exact::axpy(out, v[i], images.at(i));
  return out;
}

AlgebraMap AlgebraMap::identity(std::size_t dim) {
  AlgebraMap f;
  for (std::size_t i = 0; i < dim; ++i) f.images.push_back(exact::unit_vec(dim, i));
  return f;
}

void require_morphism(const FinDimAlgebra& a, const FinDimAlgebra& b, const AlgebraMap& f) {
  if (f.images.size() != a.dim()) fail(ErrorCode::NotAMorphism, "map must give one image per source basis element");
  for (const auto& im : f.images)
    if (im.size() != b.dim()) fail(ErrorCode::NotAMorphism, "image vector has wrong length");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      GQVec lhs(b.dim());
      for (const auto& [k, c] : a.product(i, j)) exact::axpy(lhs, c, f.images[k]);
      if (!(lhs == b.mul(f.images[i], f.images[j])))
        fail(ErrorCode::NotAMorphism,
             "f(b" + std::to_string(i) + " b" + std::to_string(j) + ") != f(b" + std::to_string(i) + ") f(b" +
                 std::to_string(j) + ")");
    }
}

void require_filtration(const FinDimAlgebra& a, const Filtration& filt) {
  if (filt.chain.empty()) fail(ErrorCode::ValidationError, "filtration is empty");
  for (std::size_t j = 0; j < filt.chain.size(); ++j) {
    const Subspace& s = filt.chain[j];
    if (s.ambient() != a.dim()) fail(ErrorCode::ValidationError, "filtration ideal has wrong ambient dimension");
    if (!is_two_sided_ideal(a, s)) fail(ErrorCode::ValidationError, "filtration member " + std::to_string(j + 1) + " is not a two-sided ideal");
    if (j > 0 && !s.contains(filt.chain[j - 1])) fail(ErrorCode::ValidationError, "filtration is not increasing");
  }
  if (filt.chain.back().dim() != a.dim()) fail(ErrorCode::ValidationError, "filtration does not end at the whole algebra");
}

SpectrumReport verify_spectrum_preserving(const FinDimAlgebra& a, const FinDimAlgebra& b, const AlgebraMap& f,
                                          const std::optional<Filtration>& filt_a,
                                          const std::optional<Filtration>& filt_b) {
  require_morphism(a, b, f);
  SpectrumReport rep;
  if (filt_a.has_value() != filt_b.has_value())
    fail(ErrorCode::FiltrationNotRespected, "filtrations must be given on both sides or neither");
  if (!filt_a) {
    rep.preserving = check_layer(a, b, f, "whole algebra", rep);
    return rep;
  }
  require_filtration(a, *filt_a);
  require_filtration(b, *filt_b);
  if (filt_a->chain.size() != filt_b->chain.size())
    fail(ErrorCode::FiltrationNotRespected, "filtrations have different lengths");
  const std::size_t r = filt_a->chain.size();
  for (std::size_t j = 0; j < r; ++j)
    for (const auto& v : filt_a->chain[j].basis())
      if (!filt_b->chain[j].contains(f.apply(v)))
        fail(ErrorCode::FiltrationNotRespected, "f(I_" + std::to_string(j + 1) + ") is not inside J_" + std::to_string(j + 1));
  for (std::size_t j = 0; j < r; ++j) {
    Subspace lower_a = j ? filt_a->chain[j - 1] : Subspace(a.dim());
    Subspace lower_b = j ? filt_b->chain[j - 1] : Subspace(b.dim());
    QuotientMap qa(filt_a->chain[j], lower_a), qb(filt_b->chain[j], lower_b);
    FinDimAlgebra sa = subquotient(a, qa), sb = subquotient(b, qb);
    AlgebraMap induced;
    for (std::size_t x = 0; x < qa.dim(); ++x) induced.images.push_back(qb.coords(f.apply(qa.lift(exact::unit_vec(qa.dim(), x)))));
    if (!check_layer(sa, sb, induced, "layer " + std::to_string(j + 1), rep)) return rep;
  }
  rep.preserving = true;
  return rep;
}

bool diag_embedding_check(const FinDimAlgebra& a, std::size_t n, SpectrumReport* report) {
  if (n == 0) fail(ErrorCode::ValidationError, "matrix size must be positive");
  FinDimAlgebra m = FinDimAlgebra::matrices_over(a, n);
  const std::size_t d = a.dim();
  AlgebraMap f;
  for (std::size_t i = 0; i < d; ++i) {
    GQVec v(m.dim());
    for (std::size_t r = 0; r < n; ++r) v[(r * n + r) * d + i] = GQ(1);
    f.images.push_back(std::move(v));
  }
  SpectrumReport rep = verify_spectrum_preserving(a, m, f);
  bool ok = rep.preserving;
  if (ok) {
    // block J of A must correspond to a block of size n*|J|
    const auto& src = rep.source_blocks[0];
    const auto& tgt = rep.target_blocks[0];
    for (std::size_t j = 0; j < tgt.size(); ++j)
      if (tgt[j] != n * src[rep.assignment[0][j]]) {
        ok = false;
        rep.preserving = false;
        rep.witness = "block sizes do not scale by n";
      }
  }
  if (report) *report = std::move(rep);
  return ok;
}

}  // namespace strata::findim
