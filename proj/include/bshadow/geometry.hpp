#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bshadow/group.hpp"

namespace bshadow {

// Certified thinness bound for geodesic triangles with one vertex at the
// identity and the other two anywhere in ball(radius_certified).  By left
// invariance this family measures every triangle whose translate to the
// identity fits in the ball.  `exhaustive` is false when a geodesic
// multiplicity cap truncated some side family (the true delta may be larger
// than reported) or when the support pad of a ball context cannot rule out
// rim-inflated side distances (the measured defects may overshoot the true
// ones).
struct HyperbolicityCertificate {
  int delta = 0;
  int radius_certified = 0;
  std::string method = "exhaustive-thin-triangles";
  long long triangles_checked = 0;
  bool exhaustive = true;
  std::string witness;  // "u|v" for a triangle realizing delta
};

// Quasi-geodesic parameters (lambda, eps) with lambda = lambda_num/lambda_den
// a rational in (0, 1].  When `k` is present, path checks are restricted to
// index pairs at distance at most k (a k-local check); otherwise every pair
// is checked.
struct QuasiGeodesicParams {
  int lambda_num = 1;
  int lambda_den = 1;
  int eps = 0;
  std::optional<int> k;
};

// First failure of the two-sided bound
//   lambda * |i - j| - eps  <=  d(c(i), c(j))  <=  |i - j|
// over the checked index pairs.  Indices are relative to the segment front.
struct QuasiGeodesicReport {
  bool ok = true;
  int bad_i = -1;
  int bad_j = -1;
};

// Largest Hausdorff distance between any (lambda, eps) quasi-geodesic path
// from the identity inside ball(radius_certified) and any geodesic joining
// its endpoints.  `exhaustive` is false when the path or geodesic budget
// truncated the search; K is then a certified lower bound.
struct MorseConstant {
  int K = 0;
  QuasiGeodesicParams params;
  int radius_certified = 0;
  long long paths_checked = 0;
  bool exhaustive = true;
};

// Promotion of a k-local quasi-geodesic bound to a global one, discovered by
// enumerating every surviving k-local path and measuring its worst global
// defect.  `exhaustive` is false when the node budget or the length guard
// stopped the enumeration early.
struct LocalToGlobalResult {
  QuasiGeodesicParams global;
  long long paths_checked = 0;
  bool exhaustive = true;
};

// Divergence thresholds for geodesic rays from the identity.
//   delta1 = 2K + (D + 4 delta)   separation level that forces divergence
//   delta2                        uniform jump length: every scanned ray pair
//                                 first exceeding delta1 at t0 exceeds
//                                 delta1 + C + 10 delta at t0 + delta2
struct DivergenceConstants {
  int delta1 = 0;
  int delta2 = 0;
  int D = 0;
  int C = 0;
  int radius_certified = 0;
  long long pairs_checked = 0;
  long long pairs_asymptotic = 0;      // never exceed delta1 in the window
  long long pairs_jumped = 0;          // exceed delta1 and reach the jump target
  long long pairs_window_limited = 0;  // exceed delta1 too close to the window end
};

// Classification of scanned ray pairs without committing to a delta2.  Used
// directly when the jump target is out of reach of the certified ball; the
// trichotomy (bounded, jumped, window-limited) must still hold pairwise.
struct DivergenceScan {
  int delta1 = 0;
  int jump_target = 0;
  int radius = 0;
  long long pairs_checked = 0;
  long long pairs_asymptotic = 0;
  long long pairs_jumped = 0;
  long long pairs_window_limited = 0;
  long long pairs_dipped = 0;  // fell back below delta1 after exceeding it; must stay 0
  std::optional<int> delta2;   // smallest uniform jump length, when one certifies
  std::string witness;         // "u|v" ray pair blocking delta2, when none does
};

struct DivergenceOptions {
  long long pair_budget = 20000;
  unsigned long long seed = 1;
  int stem_radius = 3;         // stems enumerate the sphere of this radius exhaustively
  int tails_per_stem = 2;      // extra seeded ray extensions per stem
  std::optional<int> morse_K;  // skip the internal certify_morse call
};

// Pointwise comparison of two equal-length geodesics.  With D the distance
// between start points and T the distance between end points, the distance at
// every position t with t <= R - T - 2 delta (positions counted from 1 out of
// R) stays at most D + 4 delta; a violation is an implementation bug and
// throws PropositionViolated.  max_distance is the largest value witnessed
// over the checked prefix, -1 when the prefix is empty.
struct ClosenessReport {
  int D = 0;
  int T = 0;
  int positions_checked = 0;
  int max_distance = -1;
};

// Minimal thinness constant over all geodesic triangles (1, u, v) with u, v
// in ball(radius), every geodesic choice per side up to geodesic_cap.
// Monotone in radius.  Free contexts certify delta = 0 by verifying the
// tripod identity d(u, v) = |u| + |v| - 2 |meet(u, v)| for every pair.
HyperbolicityCertificate certify_delta(const GroupContext& ctx, int radius,
                                       int geodesic_cap = 8);

// Checks the two-sided quasi-geodesic bound on an edge path.  Scans pairs in
// lexicographic order (i, then j) and reports the first violation.
QuasiGeodesicReport is_quasi_geodesic(const GroupContext& ctx, const Segment& c,
                                      const QuasiGeodesicParams& params);

// Enumerates every k-local (lambda, eps) quasi-geodesic path from the
// identity with values in ball(radius) and returns (lambda, eps') where eps'
// is the worst global defect witnessed.  Requires params.k present and
// k > 8 delta (NoValidWindow otherwise).
LocalToGlobalResult local_to_global(const GroupContext& ctx,
                                    const QuasiGeodesicParams& local, int radius,
                                    const HyperbolicityCertificate& cert,
                                    long long node_budget = 4000000);

// Enumerates every (lambda, eps) quasi-geodesic path from the identity with
// values in ball(radius); K is the largest Hausdorff distance from a path to
// any geodesic joining its endpoints.  params.k is ignored: paths are
// constrained globally.
MorseConstant certify_morse(const GroupContext& ctx,
                            const QuasiGeodesicParams& params, int radius,
                            long long node_budget = 4000000,
                            int geodesic_cap = 8);

// Symmetric Hausdorff distance between the point sets of two segments.
int hausdorff_distance(const GroupContext& ctx, const Segment& p,
                       const Segment& q);

// See ClosenessReport.  Both segments must be geodesic edge paths of the same
// length (HypothesisViolated otherwise).
ClosenessReport check_closeness(const GroupContext& ctx, const Segment& c,
                                const Segment& c_prime,
                                const HyperbolicityCertificate& cert);

// Upgrades an agreement length: rays within D of each other at some time
// agree to within 2 delta up to l = l_target + D + delta steps before it.
// Requires D >= 2 delta and K_context >= 0.
int fellow_travel_upgrade(int l_target, int D, int K_context,
                          const HyperbolicityCertificate& cert);

// Ray-pair scan at an explicit separation level and jump target.  Rays are
// geodesic paths from the identity of length `radius`: one ShortLex-least
// extension per stem on the sphere of stem_radius, plus seeded variants.
DivergenceScan classify_divergence(const GroupContext& ctx, int delta1,
                                   int jump_target, int radius,
                                   const DivergenceOptions& opt = {});

// Derives delta1 = 2K + (D + 4 delta) and the uniform jump length delta2 for
// target delta1 + C + 10 delta from a ray-pair scan.  Throws
// InsufficientRadius (with a witness pair) when no delta2 certifies inside
// the window, including when no scanned pair ever exceeds delta1.
DivergenceConstants divergence_constants(const GroupContext& ctx, int D, int C,
                                         const QuasiGeodesicParams& params,
                                         int radius,
                                         const HyperbolicityCertificate& cert,
                                         const DivergenceOptions& opt = {});

// Concatenates two geodesics that agree to within 2 delta along an overlap
// window: c1 on [0, n2] and c2 starting at c1(n), with n2 - n > n and
// d(c1(n+i), c2(m1+i)) <= 2 delta for 0 <= i <= n.  The result takes c1 up
// to n and continues along c2; it must pass the n-local (1, 2 delta) check
// (PropositionViolated otherwise).  The depth premise n > 8 delta can be
// relaxed for windows too deep for the certified ball; every other premise
// stays mandatory.  Throws HypothesisViolated naming the failed premise.
Segment glue(const GroupContext& ctx, const Segment& c1, const Segment& c2,
             int n, const HyperbolicityCertificate& cert,
             bool relax_depth_premise = false);

}  // namespace bshadow
