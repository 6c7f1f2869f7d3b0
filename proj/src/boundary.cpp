#include "bshadow/boundary.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "bshadow/errors.hpp"

namespace bshadow {

namespace {

void require_free_for_exact(const GroupContext& ctx, const BoundaryPoint& x) {
  if (x.exact && !ctx.free_mode())
    throw MalformedInput("exact boundary data requires free reduction");
}

bool is_reduced(const GeneratorAlphabet& alph, const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == alph.inverse(w[i])) return false;
  return true;
}

void append_reduced(const GeneratorAlphabet& alph, Word& out, const Word& tail) {
  for (Gen s : tail) {
    if (!out.empty() && s == alph.inverse(out.back()))
      out.pop_back();
    else
      out.push_back(s);
  }
}

Word primitive_root(const Word& p) {
  const int n = static_cast<int>(p.size());
  for (int d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (int i = d; i < n && repeats; ++i) repeats = p[i] == p[i - d];
    if (repeats) return Word(p.begin(), p.begin() + d);
  }
  return p;
}

BoundaryPoint canonical_exact(const GroupContext& ctx, Word prefix, Word period) {
  const GeneratorAlphabet& alph = ctx.alphabet();
  if (!ctx.free_mode())
    throw MalformedInput("exact boundary data requires free reduction");
  if (period.empty()) throw MalformedInput("empty period");
  if (!is_reduced(alph, prefix) || !is_reduced(alph, period))
    throw MalformedInput("boundary word not reduced");
  if (period.front() == alph.inverse(period.back()))
    throw MalformedInput("period seam not reduced");
  if (!prefix.empty() && period.front() == alph.inverse(prefix.back()))
    throw MalformedInput("prefix-period seam not reduced");
  period = primitive_root(period);
  // absorbing trailing period letters into the cycle shortens the prefix and
  // rotates the period; the fixpoint is the canonical form
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    period.insert(period.begin(), period.back());
    period.pop_back();
  }
  BoundaryPoint x;
  x.exact = true;
  x.prefix = std::move(prefix);
  x.period = std::move(period);
  return x;
}

void check_window_params(int l, int D, const HyperbolicityCertificate& cert) {
  if (l <= 8 * cert.delta)
    throw HypothesisViolated("window depth", "l must exceed 8 delta");
  if (D < 2 * cert.delta)
    throw HypothesisViolated("closeness allowance", "D must be at least 2 delta");
}

}  // namespace

BoundaryPoint exact_point(const GroupContext& ctx, std::string_view prefix,
                          std::string_view period) {
  return canonical_exact(ctx, ctx.alphabet().parse(prefix), ctx.alphabet().parse(period));
}

BoundaryPoint exact_point(const GroupContext& ctx, Word prefix, Word period) {
  return canonical_exact(ctx, std::move(prefix), std::move(period));
}

BoundaryPoint truncated_point(const GroupContext& ctx, const Segment& ray_values) {
  if (ray_values.values.empty()) throw MalformedInput("empty ray");
  ctx.validate_segment(ray_values);
  if (ray_values.values.front() != kIdentity)
    throw MalformedInput("truncated boundary rays start at the identity");
  if (ctx.dist(ray_values.values.front(), ray_values.values.back()) != ray_values.size() - 1)
    throw MalformedInput("stored ray is not geodesic");
  BoundaryPoint x;
  x.exact = false;
  x.ray.values = ray_values;
  x.ray.values.start = 1;
  return x;
}

Gen letter_at(const BoundaryPoint& x, int i) {
  if (!x.exact) throw MalformedInput("letters exist only for exact points");
  if (i < 0) throw MalformedInput("negative letter index");
  const int np = static_cast<int>(x.prefix.size());
  if (i < np) return x.prefix[i];
  return x.period[(i - np) % x.period.size()];
}

Elt point_at_depth(const GroupContext& ctx, const BoundaryPoint& x, int depth) {
  if (depth < 0) throw MalformedInput("negative depth");
  if (x.exact) {
    require_free_for_exact(ctx, x);
    Word w;
    w.reserve(depth);
    for (int i = 0; i < depth; ++i) w.push_back(letter_at(x, i));
    return ctx.of_word(w);
  }
  if (depth + 1 > x.ray.depth())
    throw InsufficientDepth("depth " + std::to_string(depth) +
                            " beyond the stored ray depth " +
                            std::to_string(x.ray.depth() - 1));
  return x.ray.at(depth + 1);
}

int point_depth(const BoundaryPoint& x) {
  return x.exact ? kUnbounded : x.ray.depth() - 1;
}

bool same_point(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x.exact != y.exact) return false;
  if (x.exact) return x.prefix == y.prefix && x.period == y.period;
  return x.ray.values.values == y.ray.values.values;
}

std::vector<BoundaryPoint> sample_boundary(const GroupContext& ctx, int depth) {
  if (depth < 1) throw MalformedInput("sampling depth must be positive");
  std::vector<BoundaryPoint> out;
  for (Elt g : ctx.ball(depth)) {
    if (ctx.length(g) != depth) continue;
    if (ctx.free_mode()) {
      Word w = ctx.word(g);
      out.push_back(canonical_exact(ctx, std::move(w), Word{ctx.last_letter(g)}));
    } else {
      out.push_back(truncated_point(ctx, ctx.geodesics(kIdentity, g, 1).geodesics.front()));
    }
  }
  return out;
}

DSG dsg_toward(const GroupContext& ctx, const BoundaryPoint& x, int radius) {
  if (radius < 0) throw MalformedInput("negative radius");
  if (!x.exact) return dsg_from_ray(ctx, x.ray, x.ray.depth() - radius);
  require_free_for_exact(ctx, x);
  DSG m;
  m.radius = radius;
  for (Elt g : ctx.ball(radius)) {
    Word w = ctx.word(g);
    bool below_word = true;
    for (size_t i = 0; i < w.size() && below_word; ++i)
      below_word = w[i] == letter_at(x, static_cast<int>(i));
    m.assignment[g] = below_word ? letter_at(x, static_cast<int>(w.size()))
                                 : ctx.alphabet().inverse(ctx.last_letter(g));
  }
  return m;
}

Ray ray_from_dsg(const GroupContext& ctx, const DSG& m, Elt g, int depth) {
  if (depth < 1) throw MalformedInput("depth must be positive");
  Ray c;
  c.values.start = 1;
  c.values.values.reserve(depth);
  c.values.values.push_back(g);
  Elt cur = g;
  for (int i = 1; i < depth; ++i) {
    auto it = m.assignment.find(cur);
    if (it == m.assignment.end())
      throw DepthExceedsSupport("orbit left the field support at position " +
                                std::to_string(i));
    cur = ctx.step(cur, it->second);
    c.values.values.push_back(cur);
  }
  if (ctx.dist(g, cur) != depth - 1)
    throw PropositionViolated("field orbit is not geodesic");
  return c;
}

DSG dsg_from_ray(const GroupContext& ctx, const Ray& c, int depth_budget) {
  if (c.depth() < 1 || c.basepoint() != kIdentity)
    throw HypothesisViolated("identity basepoint", "ray must start at the identity");
  if (depth_budget < 1 || depth_budget > c.depth())
    throw MalformedInput("depth budget must lie in [1, ray depth]");
  const int r = c.depth() - depth_budget;
  const int first = r + 2;  // strictly outside the support ball
  if (depth_budget - first + 1 < 2)
    throw InsufficientDepth("need two sample positions beyond the support ball");

  std::vector<Elt> ball = ctx.ball(r);
  std::unordered_map<Elt, Gen> prev;
  bool have_prev = false;
  bool last_agree = true;
  for (int n = first; n <= depth_budget; ++n) {
    Elt inv_cn = ctx.inverse(c.at(n));
    std::unordered_map<Elt, Gen> cur;
    cur.reserve(ball.size());
    for (Elt g : ball) {
      Elt h = ctx.mul(inv_cn, g);
      cur[g] = ctx.alphabet().inverse(ctx.last_letter(h));
    }
    if (have_prev) last_agree = cur == prev;
    prev = std::move(cur);
    have_prev = true;
  }
  DSG out;
  out.radius = r;
  out.assignment = std::move(prev);
  out.stabilized = last_agree;
  return out;
}

DSG translate_dsg(const GroupContext& ctx, Elt g, const DSG& m) {
  const int lg = ctx.length(g);
  if (lg > m.radius)
    throw InsufficientSupport("translation length exceeds the field support");
  DSG out;
  out.radius = m.radius - lg;
  out.stabilized = m.stabilized;
  Elt inv_g = ctx.inverse(g);
  for (Elt e : ctx.ball(out.radius)) {
    Elt u = ctx.mul(inv_g, e);
    auto it = m.assignment.find(u);
    if (it == m.assignment.end())
      throw InsufficientSupport("translated lookup left the field support");
    out.assignment[e] = it->second;
  }
  return out;
}

void check_dsg_axioms(const GroupContext& ctx, const DSG& m,
                      const HyperbolicityCertificate& cert) {
  std::vector<Elt> ball = ctx.ball(m.radius);
  std::vector<std::vector<Elt>> orbits(ball.size());
  for (size_t bi = 0; bi < ball.size(); ++bi) {
    const Elt g = ball[bi];
    std::vector<Elt>& path = orbits[bi];
    path.push_back(g);
    Elt cur = g;
    while (true) {
      auto it = m.assignment.find(cur);
      if (it == m.assignment.end()) break;
      Elt next = ctx.try_step(cur, it->second);
      if (next < 0) break;  // cannot certify past the working support
      path.push_back(next);
      const int k = static_cast<int>(path.size()) - 1;
      if (ctx.dist_capped(g, next, k) != k)
        throw PropositionViolated("orbit of " + ctx.word_str(g) + " is not geodesic");
      cur = next;
    }
  }
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t j = i + 1; j < ball.size(); ++j) {
      const int bound = ctx.dist(ball[i], ball[j]) + 4 * cert.delta;
      const size_t window = std::min(orbits[i].size(), orbits[j].size());
      for (size_t t = 0; t < window; ++t)
        if (ctx.dist_capped(orbits[i][t], orbits[j][t], bound) > bound)
          throw PropositionViolated("orbits of " + ctx.word_str(ball[i]) + " and " +
                                    ctx.word_str(ball[j]) + " drift apart at step " +
                                    std::to_string(t));
    }
}

bool neighborhood_contains(const GroupContext& ctx, const DSG& m_prime, const DSG& m,
                           int l, int D, const HyperbolicityCertificate& cert) {
  check_window_params(l, D, cert);
  if (m.radius < l || m_prime.radius < l)
    throw InsufficientSupport("field support does not cover the comparison window");
  Ray a = ray_from_dsg(ctx, m, kIdentity, l + 1);
  Ray b = ray_from_dsg(ctx, m_prime, kIdentity, l + 1);
  for (int i = 1; i <= l + 1; ++i)
    if (ctx.dist_capped(a.at(i), b.at(i), D) > D) return false;
  return true;
}

bool translated_membership(const GroupContext& ctx, Elt g, const DSG& m,
                           const DSG& m_prime, int l, int D,
                           const HyperbolicityCertificate& cert) {
  check_window_params(l, D, cert);
  if (m_prime.radius < l)
    throw InsufficientSupport("field support does not cover the comparison window");
  Elt inv_g = ctx.inverse(g);
  if (m.assignment.find(inv_g) == m.assignment.end())
    throw InsufficientSupport("translated basepoint outside the field support");
  Ray c = [&] {
    try {
      return ray_from_dsg(ctx, m, inv_g, l + 1);
    } catch (const DepthExceedsSupport&) {
      throw InsufficientSupport("translated orbit left the field support");
    }
  }();
  Ray c_prime = ray_from_dsg(ctx, m_prime, kIdentity, l + 1);
  for (int i = 1; i <= l + 1; ++i)
    if (ctx.dist_capped(ctx.mul(g, c.at(i)), c_prime.at(i), D) > D) return false;
  return true;
}

bool point_neighborhood_contains(const GroupContext& ctx, const BoundaryPoint& y,
                                 const BoundaryPoint& x, int l,
                                 const HyperbolicityCertificate& cert) {
  if (l < 0) throw MalformedInput("negative window depth");
  require_free_for_exact(ctx, y);
  require_free_for_exact(ctx, x);
  const int D = 2 * cert.delta;
  for (int i = 1; i <= l; ++i) {
    Elt a = point_at_depth(ctx, y, i);
    Elt b = point_at_depth(ctx, x, i);
    if (ctx.dist_capped(a, b, D) > D) return false;
  }
  return true;
}

Cover cover_for_l(const GroupContext& ctx, int l, const HyperbolicityCertificate& cert) {
  if (l <= 8 * cert.delta)
    throw HypothesisViolated("window depth", "l must exceed 8 delta");
  const int l_prime = fellow_travel_upgrade(l, 4 * cert.delta, 0, cert);
  Cover cover;
  cover.kind = "U-cover";
  cover.certified_depth = l_prime;
  for (const BoundaryPoint& s : sample_boundary(ctx, l_prime)) {
    bool covered = false;
    for (const Cover::Element& e : cover.elements)
      if (point_neighborhood_contains(ctx, s, e.center, e.l, cert)) {
        covered = true;
        break;
      }
    if (!covered) cover.elements.push_back({s, l_prime});
  }
  return cover;
}

int lebesgue_l(const GroupContext& ctx, const Cover& cover,
               const HyperbolicityCertificate& cert, int sample_depth) {
  if (sample_depth < 1) throw MalformedInput("sampling depth must be positive");
  if (cover.elements.empty()) throw MalformedInput("empty cover");
  std::vector<BoundaryPoint> samples = sample_boundary(ctx, sample_depth);
  const int n = static_cast<int>(samples.size());
  const int ne = static_cast<int>(cover.elements.size());
  const int mask_words = (ne + 63) / 64;
  std::vector<uint64_t> mask(static_cast<size_t>(n) * mask_words, 0);
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < ne; ++e)
      if (point_neighborhood_contains(ctx, samples[i], cover.elements[e].center,
                                      cover.elements[e].l, cert))
        mask[static_cast<size_t>(i) * mask_words + e / 64] |= uint64_t{1} << (e % 64);

  const int D = 2 * cert.delta;
  std::vector<std::vector<Elt>> pts(n);
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= sample_depth; ++d)
      pts[i].push_back(point_at_depth(ctx, samples[i], d));

  // agree[i][j] = deepest window on which the two sample rays stay 2delta-close
  std::vector<int> agree(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int a = 0;
      while (a < sample_depth && ctx.dist_capped(pts[i][a], pts[j][a], D) <= D) ++a;
      agree[static_cast<size_t>(i) * n + j] = a;
    }

  for (int l = 8 * cert.delta + 1; l <= sample_depth; ++l) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) {
        if (agree[static_cast<size_t>(i) * n + j] < l) continue;
        bool shared = false;
        for (int w = 0; w < mask_words && !shared; ++w)
          shared = (mask[static_cast<size_t>(i) * mask_words + w] &
                    mask[static_cast<size_t>(j) * mask_words + w]) != 0;
        ok = shared;
      }
    if (ok) return l;
  }
  throw NotFoundWithinDepth("no shared-element window depth up to " +
                            std::to_string(sample_depth));
}

BoundaryPoint act(const GroupContext& ctx, Elt g, const BoundaryPoint& x) {
  if (x.exact) {
    require_free_for_exact(ctx, x);
    const GeneratorAlphabet& alph = ctx.alphabet();
    Word folded = ctx.word(g);
    const int budget = static_cast<int>(folded.size() + x.prefix.size());
    append_reduced(alph, folded, x.prefix);
    // enough period copies that at least two survive every cancellation
    const int copies = budget / static_cast<int>(x.period.size()) + 2;
    for (int k = 0; k < copies; ++k) append_reduced(alph, folded, x.period);
    return canonical_exact(ctx, std::move(folded), x.period);
  }
  const int out_depth = x.ray.depth() - ctx.length(g);
  if (out_depth < 1)
    throw InsufficientDepth("stored ray too shallow for this translation");
  Elt target = ctx.mul(g, x.ray.at(out_depth));
  return truncated_point(ctx, ctx.geodesics(kIdentity, target, 1).geodesics.front());
}

}  // namespace bshadow
