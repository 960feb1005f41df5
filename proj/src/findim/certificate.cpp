#include "findim/certificate.hpp"

#include <future>

#include "exact/error.hpp"

namespace strata::findim {

namespace {

std::string point_str(const std::vector<GQ>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].str();
  return s + ")";
}

const PatternAlgebra& as_pattern(const FiberDescriptor& d, const std::string& name) {
  const auto* p = std::get_if<PatternAlgebra>(&d.body);
  if (!p) fail(ErrorCode::UnsupportedDescriptor, "algebra '" + name + "' is not a matrix ideal pattern");
  return *p;
}

const FiberDescriptor& lookup(const EquivalenceCertificate& cert, const std::string& name) {
  auto it = cert.algebras.find(name);
  if (it == cert.algebras.end()) fail(ErrorCode::ValidationError, "certificate names unknown algebra '" + name + "'");
  return it->second;
}

PatternElement normalized(const PatternElement& x) {
  PatternElement out;
  for (const auto& [e, f] : x)
    if (!f.is_zero()) out.emplace(e, f);
  return out;
}

void check_element_shape(const PatternAlgebra& a, const PatternElement& x, const std::string& what) {
  const exact::LatticeSpec lat{a.base.dim, std::nullopt};
  for (const auto& [e, f] : x) {
    if (e >= a.entry_count()) fail(ErrorCode::ValidationError, what + ": entry index out of range");
    if (!(f.lattice() == lat)) fail(ErrorCode::ValidationError, what + ": polynomial over the wrong number of variables");
    if (!f.is_zero() && a.kind(e) == EntryKind::Zero) fail(ErrorCode::ValidationError, what + ": nonzero value in a zero entry");
    if (a.base.kind == BaseVariety::Kind::Affine)
      for (const auto& [lambda, c] : f.terms())
        for (auto v : lambda)
          if (v < 0) fail(ErrorCode::ValidationError, what + ": negative exponent on an affine base");
  }
}

PatternElement evaluate_t(const PatternLaurent& x, const GQ& t) {
  PatternElement out;
  for (const auto& [k, el] : x) {
    GQ w = t.pow(k);
    for (const auto& [e, f] : el) {
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(e, f.scaled(w));
      else
        it->second += f.scaled(w);
    }
  }
  return normalized(out);
}

std::vector<std::string> check_morphism_at(const EquivalenceCertificate& cert, const MorphismStep& st,
                                           const std::vector<GQ>& p) {
  const auto& da = lookup(cert, st.source());
  const auto& db = lookup(cert, st.target());
  try {
    FinDimAlgebra fa, fb;
    AlgebraMap f;
    std::optional<Filtration> filt_a, filt_b;
    if (!st.map) {
      fa = build_fiber(da, p);
      fb = build_fiber(db, p);
      if (fa.dim() != fb.dim()) return {"identity step between algebras of different fiber dimension"};
      f = AlgebraMap::identity(fa.dim());
    } else {
      const auto& pa = as_pattern(da, st.source());
      const auto& pb = as_pattern(db, st.target());
      PatternFiber xa = pattern_fiber(pa, p), xb = pattern_fiber(pb, p);
      f = pattern_map_fiber(pa, xa, pb, xb, *st.map);
      if (st.filtration_source && st.filtration_target) {
        filt_a.emplace();
        filt_b.emplace();
        for (const auto& i : *st.filtration_source) filt_a->chain.push_back(ideal_fiber(pa, xa, i, p));
        for (const auto& j : *st.filtration_target) filt_b->chain.push_back(ideal_fiber(pb, xb, j, p));
      } else if (st.filtration_source || st.filtration_target) {
        return {"filtrations must be given on both sides or neither"};
      }
      fa = std::move(xa.algebra);
      fb = std::move(xb.algebra);
    }
    SpectrumReport rep = verify_spectrum_preserving(fa, fb, f, filt_a, filt_b);
    if (!rep.preserving) return {"at " + point_str(p) + ": " + rep.witness};
  } catch (const Error& e) {
    return {"at " + point_str(p) + ": " + e.what()};
  }
  return {};
}

std::vector<std::string> check_variation_global(const EquivalenceCertificate& cert, const VariationStep& st) {
  std::vector<std::string> out;
  try {
    const auto& a = as_pattern(lookup(cert, st.algebra), st.algebra);
    const auto n = static_cast<std::size_t>(a.base.dim);
    if (st.psi.size() != n || st.action_zeta.size() != n || st.action_eta.size() != n)
      return {"Psi and both k-actions need one image per base coordinate"};
    if (st.zeta.is_zero() || st.eta.is_zero()) return {"zeta and eta must be nonzero"};
    for (std::size_t j = 0; j < n; ++j) {
      const std::string gen = "z" + std::to_string(j + 1);
      for (const auto& [k, el] : st.psi[j]) {
        check_element_shape(a, el, "Psi(" + gen + ")");
        std::string w;
        if (!is_central(a, el, &w)) out.push_back("Psi(" + gen + ") coefficient of t^" + std::to_string(k) + " is not central: " + w);
      }
      check_element_shape(a, st.action_zeta[j], "declared action at zeta");
      check_element_shape(a, st.action_eta[j], "declared action at eta");
      if (!(evaluate_t(st.psi[j], st.zeta) == normalized(st.action_zeta[j])))
        out.push_back("ev(zeta) of Psi(" + gen + ") differs from the declared action");
      if (!(evaluate_t(st.psi[j], st.eta) == normalized(st.action_eta[j])))
        out.push_back("ev(eta) of Psi(" + gen + ") differs from the declared action");
    }
  } catch (const Error& e) {
    out.push_back(e.what());
  }
  return out;
}

std::vector<std::string> check_variation_at(const EquivalenceCertificate& cert, const VariationStep& st,
                                            const std::vector<GQ>& p) {
  try {
    const auto& a = as_pattern(lookup(cert, st.algebra), st.algebra);
    PatternFiber f = pattern_fiber(a, p);
    const bool in_y = a.y.contains(p);
    for (std::size_t j = 0; j < st.psi.size(); ++j)
      for (const GQ& t : {st.zeta, st.eta}) {
        PatternElement x = evaluate_t(st.psi[j], t);
        for (const auto& [e, g] : x)
          if (a.kind(e) == EntryKind::IdealY && in_y && !g.eval(p).is_zero())
            return {"at " + point_str(p) + ": an I_Y entry of Psi(z" + std::to_string(j + 1) + ") does not vanish on Y"};
        if (a.base.kind == BaseVariety::Kind::Torus && f.algebra.unit()) {
          GQVec v = evaluate_element(a, f, x, p);
          if (exact::rank(f.algebra.left_matrix(v)) != f.algebra.dim())
            return {"at " + point_str(p) + ": the image of z" + std::to_string(j + 1) + " at t = " + t.str() + " is not invertible"};
        }
      }
  } catch (const Error& e) {
    return {"at " + point_str(p) + ": " + e.what()};
  }
  return {};
}

}  // namespace

GQVec evaluate_element(const PatternAlgebra& a, const PatternFiber& f, const PatternElement& x, const std::vector<GQ>& p) {
  GQVec v(f.algebra.dim());
  for (const auto& [e, g] : x) {
    if (e >= a.entry_count()) fail(ErrorCode::ValidationError, "entry index out of range");
    if (auto i = f.basis_of_entry[e]) v[*i] += g.eval(p);
  }
  return v;
}

bool is_central(const PatternAlgebra& a, const PatternElement& x, std::string* witness) {
  const exact::LatticeSpec lat{a.base.dim, std::nullopt};
  auto value = [&](std::size_t e) {
    auto it = x.find(e);
    return it == x.end() ? exact::TorusLaurent(lat) : it->second;
  };
  for (std::size_t b = 0; b < a.blocks.size(); ++b) {
    const std::size_t n = a.blocks[b].n;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        if (a.blocks[b].at(r, s) == EntryKind::Zero) continue;
        // [X, E_rs] has (q,t) entry [t = s] X_qr - [q = r] X_st
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t t = 0; t < n; ++t) {
            exact::TorusLaurent c(lat);
            if (t == s) c += value(a.entry_index(b, q, r));
            if (q == r) c -= value(a.entry_index(b, s, t));
            if (!c.is_zero()) {
              if (witness)
                *witness = "fails to commute with E" + std::to_string(b + 1) + "." + std::to_string(r + 1) + std::to_string(s + 1);
              return false;
            }
          }
      }
  }
  return true;
}

CertificateReport verify_certificate(const EquivalenceCertificate& cert, const std::vector<std::vector<GQ>>& samples) {
  CertificateReport rep;
  // the chain must connect start to end
  std::string at = cert.start;
  for (std::size_t k = 0; k < cert.steps.size() && rep.chain_error.empty(); ++k) {
    std::string l, r;
    if (const auto* m = std::get_if<MorphismStep>(&cert.steps[k])) {
      l = m->left;
      r = m->right;
    } else {
      l = r = std::get<VariationStep>(cert.steps[k]).algebra;
    }
    if (l != at) rep.chain_error = "step " + std::to_string(k + 1) + " starts at '" + l + "' but the chain is at '" + at + "'";
    if (!cert.algebras.count(l) || !cert.algebras.count(r))
      rep.chain_error = "step " + std::to_string(k + 1) + " names an unknown algebra";
    at = r;
  }
  if (rep.chain_error.empty() && at != cert.end) rep.chain_error = "chain ends at '" + at + "', expected '" + cert.end + "'";
  if (rep.chain_error.empty() && !cert.algebras.count(cert.start)) rep.chain_error = "unknown start algebra '" + cert.start + "'";
  if (!rep.chain_error.empty()) return rep;

  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    StepVerdict v;
    v.index = k;
    if (const auto* m = std::get_if<MorphismStep>(&cert.steps[k])) {
      v.kind = "morphism";
      v.description = m->source() + " -> " + m->target() + (m->filtration_source ? " with filtrations" : "");
    } else {
      const auto& st = std::get<VariationStep>(cert.steps[k]);
      v.kind = "variation";
      v.description = st.algebra + " at zeta = " + st.zeta.str() + ", eta = " + st.eta.str();
      v.failures = check_variation_global(cert, st);
    }
    rep.steps.push_back(std::move(v));
  }

  std::vector<std::future<std::vector<std::string>>> jobs;
  for (std::size_t k = 0; k < cert.steps.size(); ++k)
    for (const auto& p : samples)
      jobs.push_back(std::async(std::launch::async, [&cert, &p, k] {
        if (const auto* m = std::get_if<MorphismStep>(&cert.steps[k])) return check_morphism_at(cert, *m, p);
        return check_variation_at(cert, std::get<VariationStep>(cert.steps[k]), p);
      }));
  std::size_t job = 0;
  for (std::size_t k = 0; k < cert.steps.size(); ++k)
    for (std::size_t s = 0; s < samples.size(); ++s) {
      auto f = jobs[job++].get();
      rep.steps[k].samples_checked++;
      rep.steps[k].failures.insert(rep.steps[k].failures.end(), f.begin(), f.end());
    }
  rep.accepted = true;
  for (auto& v : rep.steps) {
    v.ok = v.failures.empty();
    rep.accepted = rep.accepted && v.ok;
  }
  return rep;
}

}  // namespace strata::findim
