#include "pwsnf/series.hpp"

#include "pwsnf/errors.hpp"

namespace pwsnf {

XYSeries xy_from_poly(const Poly& f) {
  XYSeries s;
  for (auto& [k, c] : f.xy_coefficients())
    if (!c.is_zero()) s.emplace(k, std::move(c));
  return s;
}

Poly xy_to_poly(const XYSeries& s, const Ring& r) { return Poly::from_xy(r, s); }

Poly xy_coeff(const XYSeries& s, int i, int j) {
  auto it = s.find({i, j});
  return it == s.end() ? Poly() : it->second;
}

void xy_add_into(XYSeries& acc, const XYSeries& s, const Poly& scale) {
  const bool unit = scale.is_constant() && scale.constant_value().is_one();
  for (const auto& [k, c] : s) {
    Poly v = unit ? c : c * scale;
    auto it = acc.find(k);
    if (it == acc.end()) {
      if (!v.is_zero()) acc.emplace(k, std::move(v));
      continue;
    }
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

XYSeries xy_scaled(const XYSeries& s, const Poly& c) {
  XYSeries out;
  xy_add_into(out, s, c);
  return out;
}

XYSeries xy_truncate(const XYSeries& s, Weights w, int cap) {
  XYSeries out;
  for (const auto& [k, c] : s)
    if (w.of(k.first, k.second) <= cap) out.emplace(k, c);
  return out;
}

XYSeries xy_mul(const XYSeries& a, const XYSeries& b, Weights w, int cap) {
  XYSeries out;
  for (const auto& [ka, ca] : a) {
    int wa = w.of(ka.first, ka.second);
    for (const auto& [kb, cb] : b) {
      if (wa + w.of(kb.first, kb.second) > cap) continue;
      Poly p = ca * cb;
      if (p.is_zero()) continue;
      std::pair<int, int> k{ka.first + kb.first, ka.second + kb.second};
      auto it = out.find(k);
      if (it == out.end()) {
        out.emplace(k, std::move(p));
      } else {
        it->second += p;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

XYSeries xy_dx(const XYSeries& s) {
  XYSeries out;
  for (const auto& [k, c] : s)
    if (k.first > 0) out.emplace(std::make_pair(k.first - 1, k.second), c.scaled(k.first));
  return out;
}

XYSeries xy_dy(const XYSeries& s) {
  XYSeries out;
  for (const auto& [k, c] : s)
    if (k.second > 0) out.emplace(std::make_pair(k.first, k.second - 1), c.scaled(k.second));
  return out;
}

XYSeries xy_component(const XYSeries& s, Weights w, int k) {
  XYSeries out;
  for (const auto& [key, c] : s)
    if (w.of(key.first, key.second) == k) out.emplace(key, c);
  return out;
}

namespace {

// F(u + g(u)) by Taylor expansion: sum_{s,t} d^s_x d^t_y F * g1^s g2^t / (s! t!).
XYSeries compose(const XYSeries& F, const XYSeries& g1, const XYSeries& g2, Weights w, int cap) {
  XYSeries out;
  XYSeries Gs{{{0, 0}, Poly(1)}};
  XYSeries Ds = F;
  for (int s = 0;; ++s) {
    if (s > 0) {
      Gs = xy_scaled(xy_mul(Gs, g1, w, cap), Poly(Rational(1, s)));
      Ds = xy_dx(Ds);
    }
    if (Gs.empty() || Ds.empty()) break;
    XYSeries Gst = Gs, Dst = Ds;
    for (int t = 0;; ++t) {
      if (t > 0) {
        Gst = xy_scaled(xy_mul(Gst, g2, w, cap), Poly(Rational(1, t)));
        Dst = xy_dy(Dst);
      }
      if (Gst.empty() || Dst.empty()) break;
      xy_add_into(out, xy_mul(Dst, Gst, w, cap));
    }
  }
  return out;
}

}  // namespace

VectorField near_identity_transform(const VectorField& F, const VectorField& g, Weights w, int capX, int capY) {
  VectorField v{compose(F.X, g.X, g.Y, w, capX), compose(F.Y, g.X, g.Y, w, capY)};
  VectorField result = v;
  const XYSeries g1x = xy_dx(g.X), g1y = xy_dy(g.X), g2x = xy_dx(g.Y), g2y = xy_dy(g.Y);
  // Neumann series for (I + Dg)^{-1}; each pass raises the weighted degree.
  for (int iter = 0;; ++iter) {
    if (iter > capX + capY + 4) throw Error("near-identity inversion did not terminate");
    XYSeries nx = xy_mul(g1x, v.X, w, capX);
    xy_add_into(nx, xy_mul(g1y, v.Y, w, capX));
    XYSeries ny = xy_mul(g2x, v.X, w, capY);
    xy_add_into(ny, xy_mul(g2y, v.Y, w, capY));
    if (nx.empty() && ny.empty()) break;
    v.X = xy_scaled(nx, Poly(-1));
    v.Y = xy_scaled(ny, Poly(-1));
    xy_add_into(result.X, v.X);
    xy_add_into(result.Y, v.Y);
  }
  return result;
}

}  // namespace pwsnf
