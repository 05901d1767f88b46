#include "evanskit/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace evanskit {

Contour Contour::rectangle(double lambda1, double lambda2, double delta) {
  Contour c;
  c.kind = Kind::Rectangle;
  c.lambda1 = lambda1;
  c.lambda2 = lambda2;
  c.delta = delta;
  c.validate();
  return c;
}

Contour Contour::circle(cplx center, double radius) {
  Contour c;
  c.kind = Kind::Circle;
  c.center = center;
  c.radius = radius;
  c.validate();
  return c;
}

void Contour::validate() const {
  if (kind == Kind::Rectangle) {
    if (!(lambda1 < lambda2)) throw PreconditionError("contour: need lambda1 < lambda2");
    if (!(delta > 0)) throw PreconditionError("contour: need delta > 0");
  } else if (!(radius > 0)) {
    throw PreconditionError("contour: need radius > 0");
  }
  if (initialSamples < 4) throw PreconditionError("contour: need at least 4 initial samples");
}

namespace {

constexpr double kOnSpectrumTol = 1e-10;

struct Segment {
  cplx a, b;        // straight segment, or
  bool arc = false; // arc of the circle between angles a.real() and b.real()
};

struct Walker {
  const ScalarFunction& f;
  const Contour& c;
  std::size_t samples = 0;
  double scale = 0;
  double minModulus = std::numeric_limits<double>::infinity();

  cplx point(const Segment& s, double t) const {
    if (s.arc) {
      const double th = s.a.real() + t * (s.b.real() - s.a.real());
      return c.center + c.radius * cplx(std::cos(th), std::sin(th));
    }
    return s.a + t * (s.b - s.a);
  }

  cplx eval(cplx z) {
    ++samples;
    const cplx v = f(z);
    const double m = std::abs(v);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw OnSpectrum("winding: non-finite value on the contour at " + format_complex(z), z);
    minModulus = std::min(minModulus, m);
    return v;
  }

  void check(cplx z, cplx v) const {
    if (std::abs(v) < kOnSpectrumTol * scale)
      throw OnSpectrum("winding: function vanishes on the contour at " + format_complex(z), z);
  }

  double refine(const Segment& s, double t0, cplx f0, double t1, cplx f1, std::size_t depth) {
    const double jump = std::arg(f1 / f0);
    if (std::abs(jump) <= kPi / 2) return jump;
    if (depth >= c.maxRefineDepth)
      throw ContourResolutionError("winding: phase still jumps by " + std::to_string(jump) +
                                   " after " + std::to_string(depth) + " bisections near " +
                                   format_complex(point(s, t0)));
    const double tm = 0.5 * (t0 + t1);
    const cplx zm = point(s, tm);
    const cplx fm = eval(zm);
    check(zm, fm);
    return refine(s, t0, f0, tm, fm, depth + 1) + refine(s, tm, fm, t1, f1, depth + 1);
  }
};

std::vector<Segment> segments_of(const Contour& c) {
  if (c.kind == Contour::Kind::Circle) {
    // four quarter arcs keep the bookkeeping identical to the rectangle
    std::vector<Segment> s;
    for (int q = 0; q < 4; ++q) s.push_back({q * kPi / 2, (q + 1) * kPi / 2, true});
    return s;
  }
  const cplx p1(c.lambda1, -c.delta), p2(c.lambda2, -c.delta), p3(c.lambda2, c.delta),
      p4(c.lambda1, c.delta);
  return {{p1, p2}, {p2, p3}, {p3, p4}, {p4, p1}};
}

double segment_length(const Contour& c, const Segment& s) {
  return s.arc ? c.radius * (s.b.real() - s.a.real()) : std::abs(s.b - s.a);
}

}  // namespace

WindingResult winding(const ScalarFunction& f, const Contour& c) {
  c.validate();
  const auto segs = segments_of(c);
  double perimeter = 0;
  for (const auto& s : segs) perimeter += segment_length(c, s);

  Walker w{f, c};
  // samples per segment proportional to length, corners evaluated on both sides
  std::vector<std::vector<double>> ts(segs.size());
  std::vector<std::vector<cplx>> vs(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto m = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(c.initialSamples * segment_length(c, segs[i]) /
                                              perimeter)));
    for (std::size_t j = 0; j <= m; ++j) {
      const double t = double(j) / double(m);
      ts[i].push_back(t);
      vs[i].push_back(w.eval(w.point(segs[i], t)));
    }
  }
  for (const auto& v : vs)
    for (const cplx z : v) w.scale = std::max(w.scale, std::abs(z));
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = 0; j < ts[i].size(); ++j) w.check(w.point(segs[i], ts[i][j]), vs[i][j]);

  double total = 0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ts[i].size(); ++j)
      total += w.refine(segs[i], ts[i][j], vs[i][j], ts[i][j + 1], vs[i][j + 1], 0);

  const double turns = total / (2 * kPi);
  const long n = std::lround(turns);
  if (std::abs(turns - n) * 2 * kPi > 1e-6)
    throw ContourResolutionError("winding: phase sum is not a multiple of 2 pi");
  return {n, w.samples, w.minModulus};
}

long multiplicity_at(const ScalarFunction& f, cplx lambda0, double epsilon) {
  return winding(f, Contour::circle(lambda0, epsilon)).winding;
}

CountResult count_eigs(const ScalarFunction& evans, double lambda1, double lambda2, double delta,
                       const CountOptions& opts) {
  double d = delta;
  for (int attempt = 0;; ++attempt) {
    Contour c = Contour::rectangle(lambda1, lambda2, d);
    c.initialSamples = opts.initialSamples;
    c.maxRefineDepth = opts.maxRefineDepth;
    try {
      const WindingResult r = winding(evans, c);
      return {r.winding, d, r};
    } catch (const SpectrumError& e) {
      if (e.lambda().imag() == 0.0 || attempt >= opts.maxDeltaHalvings) throw;
      d *= 0.5;
    }
  }
}

}  // namespace evanskit
