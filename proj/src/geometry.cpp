#include "bshadow/geometry.hpp"

#include <algorithm>
#include <climits>
#include <utility>

#include "bshadow/errors.hpp"
#include "bshadow/rng.hpp"

namespace bshadow {

namespace {

void validate_params(const QuasiGeodesicParams& p) {
  if (p.lambda_num < 1 || p.lambda_den < 1 || p.lambda_num > p.lambda_den)
    throw MalformedInput("lambda must be a rational in (0, 1]");
  if (p.eps < 0) throw MalformedInput("eps must be non-negative");
  if (p.k && *p.k < 1) throw MalformedInput("window length must be positive");
}

void require_in_ball(const GroupContext& ctx, int radius) {
  if (radius < 0) throw MalformedInput("radius must be non-negative");
  if (radius > ctx.certified_radius())
    throw OutOfCertifiedBall("radius " + std::to_string(radius) +
                             " exceeds the certified radius " +
                             std::to_string(ctx.certified_radius()));
}

// min distance from p to the point set, saturated at cap: returns
// min(true minimum, cap), scanning no pair past the running best.
int dist_to_points(const GroupContext& ctx, Elt p, const std::vector<Elt>& pts,
                   int cap) {
  int best = cap;
  for (Elt q : pts) {
    if (q == p) return 0;
    if (best <= 1) continue;  // can only improve via a q == p hit now
    int d = (best == INT_MAX) ? ctx.dist(p, q) : ctx.dist_capped(p, q, best - 1);
    best = std::min(best, d);
  }
  return best;
}

// min distance from p to the union of two point sets, saturated at cap
int point_defect(const GroupContext& ctx, Elt p, const std::vector<Elt>& o1,
                 const std::vector<Elt>& o2, int cap) {
  int m = dist_to_points(ctx, p, o1, cap);
  if (m > 0) m = dist_to_points(ctx, p, o2, m);
  return m;
}

// max over points of `side` of the distance to o1 plus o2.  fast_cap bounds
// the cheap first scan; points exceeding it are re-measured exactly.
int side_defect(const GroupContext& ctx, const std::vector<Elt>& side,
                const std::vector<Elt>& o1, const std::vector<Elt>& o2,
                int fast_cap) {
  int worst = 0;
  for (Elt p : side) {
    int m = point_defect(ctx, p, o1, o2, fast_cap + 1);
    if (m == fast_cap + 1) m = point_defect(ctx, p, o1, o2, INT_MAX);
    worst = std::max(worst, m);
  }
  return worst;
}

// depth of the longest common prefix of the normal forms (the meet in a tree)
int meet_depth(const GroupContext& ctx, Elt u, Elt v) {
  int lu = ctx.length(u), lv = ctx.length(v);
  int depth = std::min(lu, lv);
  while (lu > lv) u = ctx.parent(u), --lu;
  while (lv > lu) v = ctx.parent(v), --lv;
  while (u != v) u = ctx.parent(u), v = ctx.parent(v), --depth;
  return depth;
}

int hausdorff_points(const GroupContext& ctx, const std::vector<Elt>& a,
                     const std::vector<Elt>& b) {
  int worst = 0;
  for (Elt p : a) worst = std::max(worst, dist_to_points(ctx, p, b, INT_MAX));
  for (Elt q : b) worst = std::max(worst, dist_to_points(ctx, q, a, INT_MAX));
  return worst;
}

// Depth-first enumeration of quasi-geodesic paths from the identity with
// values in ball(radius).  The window `k` limits which pairs constrain a
// path (INT_MAX for a global constraint); `visit` runs on every surviving
// extension and sees the whole path.  Tracks the worst global lower-bound
// defect (a numerator over lambda_den) across surviving paths.
struct QgSearch {
  const GroupContext& ctx;
  long long lambda_num, lambda_den, eps;
  int k;
  int radius;
  int max_len;
  long long node_budget;

  long long nodes = 0;
  long long worst_defect_num = 0;
  bool exhaustive = true;

  template <typename Visit>
  void run(Visit&& visit) {
    std::vector<Elt> path{kIdentity};
    std::vector<Gen> next_sym{0};
    const int nsym = ctx.num_symbols();
    while (!path.empty()) {
      if (next_sym.back() >= nsym) {
        path.pop_back();
        next_sym.pop_back();
        continue;
      }
      Gen s = next_sym.back()++;
      if (static_cast<int>(path.size()) - 1 >= max_len) {
        exhaustive = false;
        path.pop_back();
        next_sym.pop_back();
        continue;
      }
      if (nodes >= node_budget) {
        exhaustive = false;
        break;
      }
      Elt nxt = ctx.try_step(path.back(), s);
      if (nxt < 0 || ctx.length(nxt) > radius) continue;
      int j = static_cast<int>(path.size());
      bool ok = true;
      long long local_worst = 0;
      for (int i = j - 1; i >= 0; --i) {
        int gap = j - i;
        int d = ctx.dist_capped(path[i], nxt, gap);
        if (gap <= k && (d > gap || lambda_num * gap - eps * lambda_den >
                                        static_cast<long long>(d) * lambda_den)) {
          ok = false;
          break;
        }
        local_worst = std::max(
            local_worst, lambda_num * gap - static_cast<long long>(d) * lambda_den);
      }
      if (!ok) continue;
      ++nodes;
      worst_defect_num = std::max(worst_defect_num, local_worst);
      path.push_back(nxt);
      next_sym.push_back(0);
      visit(path);
    }
  }
};

// Geodesic ray from the identity through `stem`, extended outward to
// `length` edges: ShortLex-least steps without an rng, seeded uniform picks
// with one.
std::vector<Elt> ray_points(const GroupContext& ctx, Elt stem, int length,
                            SplitMix64* rng) {
  GeodesicEnum ge = ctx.geodesics(kIdentity, stem, 1);
  std::vector<Elt> pts = ge.geodesics.front().values;
  const int nsym = ctx.num_symbols();
  while (static_cast<int>(pts.size()) - 1 < length) {
    Elt cur = pts.back();
    int cl = ctx.length(cur);
    Elt pick = -1;
    int outward = 0;
    for (Gen s = 0; s < nsym; ++s) {
      Elt nxt = ctx.try_step(cur, s);
      if (nxt < 0 || ctx.length(nxt) != cl + 1) continue;
      ++outward;
      if (!rng) {
        pick = nxt;
        break;
      }
      if (rng->below(outward) == 0) pick = nxt;
    }
    if (pick < 0) break;
    pts.push_back(pick);
  }
  return pts;
}

}  // namespace

HyperbolicityCertificate certify_delta(const GroupContext& ctx, int radius,
                                       int geodesic_cap) {
  require_in_ball(ctx, radius);
  if (geodesic_cap < 1) throw MalformedInput("geodesic cap must be positive");
  HyperbolicityCertificate cert;
  cert.radius_certified = radius;
  std::vector<Elt> b = ctx.ball(radius);
  const int n = static_cast<int>(b.size());

  if (ctx.free_mode()) {
    // In a tree every geodesic triangle is a tripod, so each side lies inside
    // the union of the other two.  Verifying the tripod identity
    // d(u, v) = |u| + |v| - 2 |meet| for every pair certifies delta = 0.
    for (int ui = 0; ui < n; ++ui) {
      for (int vi = ui; vi < n; ++vi) {
        Elt u = b[ui], v = b[vi];
        int claim = ctx.length(u) + ctx.length(v) - 2 * meet_depth(ctx, u, v);
        if (ctx.dist_capped(u, v, claim) != claim)
          throw PropositionViolated("tripod identity failed for " +
                                    ctx.word_str(u) + ", " + ctx.word_str(v));
        ++cert.triangles_checked;
      }
    }
    cert.delta = 0;
    return cert;
  }

  int delta = 0;
  std::vector<GeodesicEnum> to_id(n);
  for (int ui = 0; ui < n; ++ui) {
    to_id[ui] = ctx.geodesics(kIdentity, b[ui], geodesic_cap);
    if (to_id[ui].truncated) cert.exhaustive = false;
  }
  for (int ui = 0; ui < n; ++ui) {
    for (int vi = ui; vi < n; ++vi) {
      Elt u = b[ui], v = b[vi];
      const GeodesicEnum& ga = to_id[ui];
      const GeodesicEnum& gb = to_id[vi];
      GeodesicEnum gc = ctx.geodesics(u, v, geodesic_cap);
      if (gc.truncated) cert.exhaustive = false;
      for (const Segment& sa : ga.geodesics) {
        for (const Segment& sb : gb.geodesics) {
          for (const Segment& sc : gc.geodesics) {
            int f = side_defect(ctx, sc.values, sa.values, sb.values, delta);
            f = std::max(f, side_defect(ctx, sa.values, sb.values, sc.values, delta));
            f = std::max(f, side_defect(ctx, sb.values, sa.values, sc.values, delta));
            if (f > delta) {
              delta = f;
              cert.witness = ctx.word_str(u) + "|" + ctx.word_str(v);
            }
            ++cert.triangles_checked;
          }
        }
      }
    }
  }
  cert.delta = delta;
  // Side points can sit up to delta deeper than the ball; if their exact
  // distances could need geodesics past the support, rim inflation cannot be
  // ruled out and the measured defects may overshoot.
  if (radius + 2 * delta > ctx.support_radius()) cert.exhaustive = false;
  return cert;
}

QuasiGeodesicReport is_quasi_geodesic(const GroupContext& ctx, const Segment& c,
                                      const QuasiGeodesicParams& params) {
  validate_params(params);
  ctx.validate_segment(c);
  const int n = c.size();
  const long long ln = params.lambda_num, ld = params.lambda_den;
  const long long eps = params.eps;
  for (int i = 0; i < n; ++i) {
    int j_hi = params.k ? std::min(n - 1, i + *params.k) : n - 1;
    for (int j = i + 1; j <= j_hi; ++j) {
      int gap = j - i;
      int d = ctx.dist_capped(c.values[i], c.values[j], gap);
      if (d > gap || ln * gap - eps * ld > static_cast<long long>(d) * ld)
        return {false, i, j};
    }
  }
  return {};
}

LocalToGlobalResult local_to_global(const GroupContext& ctx,
                                    const QuasiGeodesicParams& local, int radius,
                                    const HyperbolicityCertificate& cert,
                                    long long node_budget) {
  validate_params(local);
  require_in_ball(ctx, radius);
  if (!local.k) throw NoValidWindow("local parameters carry no window length");
  if (*local.k <= 8 * cert.delta)
    throw NoValidWindow("window " + std::to_string(*local.k) +
                        " does not exceed 8 * delta = " +
                        std::to_string(8 * cert.delta));

  QgSearch search{ctx,    local.lambda_num, local.lambda_den, local.eps,
                  *local.k, radius,         4 * radius,       node_budget};
  search.run([](const std::vector<Elt>&) {});

  LocalToGlobalResult res;
  res.global.lambda_num = local.lambda_num;
  res.global.lambda_den = local.lambda_den;
  res.global.eps = static_cast<int>(
      search.worst_defect_num <= 0
          ? 0
          : (search.worst_defect_num + local.lambda_den - 1) / local.lambda_den);
  res.paths_checked = search.nodes;
  res.exhaustive = search.exhaustive;
  return res;
}

MorseConstant certify_morse(const GroupContext& ctx,
                            const QuasiGeodesicParams& params, int radius,
                            long long node_budget, int geodesic_cap) {
  validate_params(params);
  require_in_ball(ctx, radius);
  if (geodesic_cap < 1) throw MalformedInput("geodesic cap must be positive");

  MorseConstant mc;
  mc.params = params;
  mc.params.k.reset();  // paths are constrained globally
  mc.radius_certified = radius;

  QgSearch search{ctx,     params.lambda_num, params.lambda_den, params.eps,
                  INT_MAX, radius,            4 * radius,        node_budget};
  int K = 0;
  bool geodesics_truncated = false;
  search.run([&](const std::vector<Elt>& path) {
    GeodesicEnum ge = ctx.geodesics(kIdentity, path.back(), geodesic_cap);
    if (ge.truncated) geodesics_truncated = true;
    for (const Segment& g : ge.geodesics)
      K = std::max(K, hausdorff_points(ctx, path, g.values));
  });
  mc.K = K;
  mc.paths_checked = search.nodes;
  mc.exhaustive = search.exhaustive && !geodesics_truncated;
  return mc;
}

int hausdorff_distance(const GroupContext& ctx, const Segment& p,
                       const Segment& q) {
  ctx.validate_segment(p);
  ctx.validate_segment(q);
  return hausdorff_points(ctx, p.values, q.values);
}

ClosenessReport check_closeness(const GroupContext& ctx, const Segment& c,
                                const Segment& c_prime,
                                const HyperbolicityCertificate& cert) {
  ctx.validate_segment(c);
  ctx.validate_segment(c_prime);
  if (c.size() != c_prime.size())
    throw HypothesisViolated("matching domains",
                             std::to_string(c.size()) + " vs " +
                                 std::to_string(c_prime.size()) + " points");
  auto require_geodesic = [&](const Segment& s, const char* name) {
    if (ctx.dist(s.front(), s.back()) != s.size() - 1)
      throw HypothesisViolated("geodesic input",
                               std::string(name) + " from " +
                                   ctx.word_str(s.front()) + " to " +
                                   ctx.word_str(s.back()) + " is not geodesic");
  };
  require_geodesic(c, "first path");
  require_geodesic(c_prime, "second path");

  ClosenessReport rep;
  const int R = c.size();  // positions 1..R
  rep.D = ctx.dist(c.front(), c_prime.front());
  rep.T = ctx.dist(c.back(), c_prime.back());
  const int bound = rep.D + 4 * cert.delta;
  const int t_hi = R - rep.T - 2 * cert.delta;  // inclusive, 1-based
  for (int t = 1; t <= std::min(R, t_hi); ++t) {
    int d = ctx.dist(c.values[t - 1], c_prime.values[t - 1]);
    if (d > bound)
      throw PropositionViolated("closeness bound failed at position " +
                                std::to_string(t) + ": " + std::to_string(d) +
                                " > " + std::to_string(bound));
    rep.max_distance = std::max(rep.max_distance, d);
    ++rep.positions_checked;
  }
  return rep;
}

int fellow_travel_upgrade(int l_target, int D, int K_context,
                          const HyperbolicityCertificate& cert) {
  if (l_target < 0 || K_context < 0)
    throw MalformedInput("agreement length and Morse constant must be non-negative");
  if (D < 2 * cert.delta)
    throw HypothesisViolated("closeness threshold",
                             std::to_string(D) + " < 2 * delta = " +
                                 std::to_string(2 * cert.delta));
  return l_target + D + cert.delta;
}

DivergenceScan classify_divergence(const GroupContext& ctx, int delta1,
                                   int jump_target, int radius,
                                   const DivergenceOptions& opt) {
  require_in_ball(ctx, radius);
  if (delta1 < 0 || jump_target <= delta1)
    throw MalformedInput("jump target must exceed the separation level");
  if (opt.stem_radius < 0 || opt.stem_radius > radius)
    throw MalformedInput("stem radius must lie in [0, radius]");
  if (opt.pair_budget < 1) throw MalformedInput("pair budget must be positive");

  DivergenceScan sc;
  sc.delta1 = delta1;
  sc.jump_target = jump_target;
  sc.radius = radius;

  std::vector<std::vector<Elt>> rays;
  for (Elt stem : ctx.ball(opt.stem_radius)) {
    if (ctx.length(stem) != opt.stem_radius) continue;
    rays.push_back(ray_points(ctx, stem, radius, nullptr));
    for (int v = 0; v < opt.tails_per_stem; ++v) {
      SplitMix64 rng(derive_seed(opt.seed, ctx.word_str(stem) + "/" + std::to_string(v)));
      rays.push_back(ray_points(ctx, stem, radius, &rng));
    }
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  const long long nrays = static_cast<long long>(rays.size());
  const long long total = nrays * (nrays - 1) / 2;
  const long long stride =
      std::max<long long>(1, (total + opt.pair_budget - 1) / opt.pair_budget);

  struct Exceeding {
    int t0 = 0;
    std::vector<int> e;  // e(t) for t in [t0, radius]
    int ray_a = 0, ray_b = 0;
  };
  std::vector<Exceeding> exceeding;

  long long pair_index = 0;
  for (size_t a = 0; a < rays.size(); ++a) {
    for (size_t b = a + 1; b < rays.size(); ++b) {
      if (pair_index++ % stride != 0) continue;
      ++sc.pairs_checked;
      const std::vector<Elt>& ca = rays[a];
      const std::vector<Elt>& cb = rays[b];
      int t0 = -1;
      std::vector<int> tail;
      bool dipped = false, reached = false;
      for (int t = 0; t < static_cast<int>(ca.size()); ++t) {
        int e = dist_to_points(ctx, ca[t], cb, INT_MAX);
        if (t0 < 0) {
          if (e > delta1) {
            t0 = t;
            tail.push_back(e);
          }
        } else {
          tail.push_back(e);
          if (e <= delta1) dipped = true;
          if (e > jump_target) reached = true;
        }
      }
      if (t0 < 0) {
        ++sc.pairs_asymptotic;
        continue;
      }
      if (dipped) ++sc.pairs_dipped;
      if (reached)
        ++sc.pairs_jumped;
      else
        ++sc.pairs_window_limited;
      exceeding.push_back(Exceeding{t0, std::move(tail), static_cast<int>(a),
                                    static_cast<int>(b)});
    }
  }

  // delta2 = smallest s with e(t0 + s) > jump_target for every exceeding pair
  // whose window still contains t0 + s
  for (int s = 0; s <= radius && !sc.delta2; ++s) {
    bool universal = true, any_room = false;
    for (const Exceeding& ex : exceeding) {
      if (s >= static_cast<int>(ex.e.size())) continue;
      any_room = true;
      if (ex.e[s] <= jump_target) {
        universal = false;
        sc.witness = ctx.word_str(rays[ex.ray_a].back()) + "|" +
                     ctx.word_str(rays[ex.ray_b].back());
        break;
      }
    }
    if (universal && any_room) sc.delta2 = s;
    if (!any_room) break;
  }
  return sc;
}

DivergenceConstants divergence_constants(const GroupContext& ctx, int D, int C,
                                         const QuasiGeodesicParams& params,
                                         int radius,
                                         const HyperbolicityCertificate& cert,
                                         const DivergenceOptions& opt) {
  validate_params(params);
  if (D < 0 || C < 0)
    throw MalformedInput("closeness threshold and gap must be non-negative");
  int K = opt.morse_K ? *opt.morse_K
                      : certify_morse(ctx, params, std::min(radius, 4)).K;
  const int delta1 = 2 * K + (D + 4 * cert.delta);
  const int target = delta1 + C + 10 * cert.delta;

  DivergenceScan sc = classify_divergence(ctx, delta1, target, radius, opt);
  if (sc.pairs_dipped > 0)
    throw PropositionViolated(
        "a diverging ray pair fell back below the separation level: " + sc.witness);
  if (!sc.delta2)
    throw InsufficientRadius("no uniform jump length certifies at radius " +
                                 std::to_string(radius),
                             sc.witness);

  DivergenceConstants dc;
  dc.delta1 = delta1;
  dc.delta2 = *sc.delta2;
  dc.D = D;
  dc.C = C;
  dc.radius_certified = radius;
  dc.pairs_checked = sc.pairs_checked;
  dc.pairs_asymptotic = sc.pairs_asymptotic;
  dc.pairs_jumped = sc.pairs_jumped;
  dc.pairs_window_limited = sc.pairs_window_limited;
  return dc;
}

Segment glue(const GroupContext& ctx, const Segment& c1, const Segment& c2,
             int n, const HyperbolicityCertificate& cert,
             bool relax_depth_premise) {
  ctx.validate_segment(c1);
  ctx.validate_segment(c2);
  const int n2 = c1.size() - 1;
  auto fail = [](const std::string& which, const std::string& detail) {
    throw HypothesisViolated(which, detail);
  };
  if (ctx.dist(c1.front(), c1.back()) != n2)
    fail("geodesic input", "first path is not geodesic");
  if (ctx.dist(c2.front(), c2.back()) != c2.size() - 1)
    fail("geodesic input", "second path is not geodesic");
  if (n < 1 || n > n2)
    fail("overlap depth",
         std::to_string(n) + " outside [1, " + std::to_string(n2) + "]");
  if (!relax_depth_premise && n <= 8 * cert.delta)
    fail("overlap depth", std::to_string(n) + " <= 8 * delta = " +
                              std::to_string(8 * cert.delta));
  if (n2 - n <= n)
    fail("remainder length", "n2 - n = " + std::to_string(n2 - n) +
                                 " must exceed n = " + std::to_string(n));
  if (c2.size() < n + 1)
    fail("overlap window", "second path has " + std::to_string(c2.size()) +
                               " points, needs " + std::to_string(n + 1));
  if (c1.values[n] != c2.values[0])
    fail("shared corner", ctx.word_str(c1.values[n]) + " vs " +
                              ctx.word_str(c2.values[0]));
  const int close = 2 * cert.delta;
  for (int i = 0; i <= n; ++i) {
    int d = ctx.dist_capped(c1.values[n + i], c2.values[i], close);
    if (d > close)
      fail("overlap closeness", "positions " + std::to_string(n + i) + "/" +
                                    std::to_string(i) + " are " +
                                    std::to_string(d) + " > 2 * delta apart");
  }

  Segment out;
  out.start = c1.start;
  out.values.assign(c1.values.begin(), c1.values.begin() + n + 1);
  out.values.insert(out.values.end(), c2.values.begin() + 1, c2.values.end());

  QuasiGeodesicParams concl;
  concl.eps = 2 * cert.delta;
  concl.k = n;
  QuasiGeodesicReport rep = is_quasi_geodesic(ctx, out, concl);
  if (!rep.ok)
    throw PropositionViolated("glued path fails the local quasi-geodesic bound at (" +
                              std::to_string(rep.bad_i) + ", " +
                              std::to_string(rep.bad_j) + ")");
  return out;
}

}  // namespace bshadow
