#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bshadow/geometry.hpp"
#include "bshadow/group.hpp"

namespace bshadow {

/**
 * Geodesic ray data: points are indexed from 1 and position i sits at
 * distance i - 1 from the basepoint, so position i + 1 is "depth i" when the
 * basepoint is the identity.
 */
struct Ray {
  Segment values;  // values.start == 1

  int depth() const { return values.size(); }
  Elt basepoint() const { return values.values.front(); }
  Elt at(int i) const { return values.at(i); }  // i in [1, depth()]
};

/**
 * A point at infinity.
 *
 * Exact mode (free contexts only) stores an eventually periodic infinite
 * reduced word as prefix + repeating period. Construction canonicalizes to
 * the shortest prefix and a primitive period, so equal points have equal
 * fields. Truncated mode stores a finite geodesic ray from the identity;
 * every consumer certifies only up to the stored depth.
 */
struct BoundaryPoint {
  bool exact = true;
  Word prefix;  // exact mode, possibly empty
  Word period;  // exact mode, nonempty and primitive
  Ray ray;      // truncated mode
};

/**
 * A steering field on a ball: assigns to each element the generator to walk
 * next, so that iterated steps trace geodesics heading toward one boundary
 * point. Validity on the support (checked by check_dsg_axioms): every orbit
 * is geodesic, and orbits from g and h fellow-travel within d(g,h) + 4 delta.
 * `stabilized` is false when a construction hit its sampling budget before
 * the field settled.
 */
struct DSG {
  std::unordered_map<Elt, Gen> assignment;
  int radius = 0;
  bool stabilized = true;
};

/**
 * A finite list of boundary neighborhoods N_center^l. `certified_depth` is
 * the sampling depth at which coverage was established; loaded covers carry
 * whatever depth the producer recorded.
 */
struct Cover {
  struct Element {
    BoundaryPoint center;
    int l = 0;
  };
  std::vector<Element> elements;
  std::string kind = "U-cover";  // "U-cover" | "V-cover"
  int certified_depth = 0;
};

// Exact-mode constructor: parses both words, validates reducedness including
// across the periodic seam, and canonicalizes. Requires a free context.
// Throws MalformedInput.
BoundaryPoint exact_point(const GroupContext& ctx, std::string_view prefix,
                          std::string_view period);

// Word-level exact constructor with the same validation.
BoundaryPoint exact_point(const GroupContext& ctx, Word prefix, Word period);

// Truncated-mode constructor: the segment must be a geodesic starting at the
// identity; points are re-indexed from 1. Throws MalformedInput.
BoundaryPoint truncated_point(const GroupContext& ctx, const Segment& ray_values);

// i-th letter (0-based) of the infinite word of an exact point.
Gen letter_at(const BoundaryPoint& x, int i);

// The element at the given distance from the identity along the point's ray.
// Truncated points throw InsufficientDepth past their stored depth.
Elt point_at_depth(const GroupContext& ctx, const BoundaryPoint& x, int depth);

// Largest depth point_at_depth accepts; kUnbounded for exact points.
int point_depth(const BoundaryPoint& x);

// Representation equality: canonical fields for exact points, pointwise ray
// equality for truncated ones. Mixed modes compare unequal.
bool same_point(const BoundaryPoint& x, const BoundaryPoint& y);

// All boundary points obtained by extending each depth-`depth` sphere element:
// exact mode repeats the last letter forever, truncated mode keeps the
// geodesic to the element as the stored ray. One point per sphere element, in
// ShortLex order.
std::vector<BoundaryPoint> sample_boundary(const GroupContext& ctx, int depth);

// The field that pulls every element of ball(radius) toward x. Exact mode is
// computed directly: step along x's word when below it, step back otherwise.
// Truncated mode reconstructs the field from the stored ray.
DSG dsg_toward(const GroupContext& ctx, const BoundaryPoint& x, int radius);

// Iterates g, g m(g), g m(g) m(g m(g)), ... for `depth` points, checking the
// result is geodesic. Throws DepthExceedsSupport when an iterate leaves the
// field's support, PropositionViolated when the orbit is not geodesic.
Ray ray_from_dsg(const GroupContext& ctx, const DSG& m, Elt g, int depth);

/**
 * Reconstructs a steering field from a geodesic ray based at the identity:
 * for each sample point c(n) the toward-identity step field of the ShortLex
 * structure is re-rooted at c(n), and the pointwise limit over the ball is
 * returned. The support radius is c.depth() - depth_budget, and samples run
 * from just outside the support up to position depth_budget; if the sampled
 * fields still disagree at the budget, the last one is returned with
 * `stabilized` false. Free contexts always stabilize. Throws
 * InsufficientDepth when fewer than two sample positions exist.
 */
DSG dsg_from_ray(const GroupContext& ctx, const Ray& c, int depth_budget);

// The left action on steering fields: (g . m)(h) = m(g^{-1} h), with support
// shrunk by the length of g. Throws InsufficientSupport when g is longer
// than m's support radius.
DSG translate_dsg(const GroupContext& ctx, Elt g, const DSG& m);

// Verifies both validity conditions on the whole support ball; throws
// PropositionViolated naming the failing orbit or pair.
void check_dsg_axioms(const GroupContext& ctx, const DSG& m,
                      const HyperbolicityCertificate& cert);

// True iff the orbits of the identity under both fields stay within D at
// every depth i <= l. Requires l > 8 delta, D >= 2 delta, and both supports
// covering depth l (InsufficientSupport otherwise).
bool neighborhood_contains(const GroupContext& ctx, const DSG& m_prime, const DSG& m,
                           int l, int D, const HyperbolicityCertificate& cert);

// Evaluates d(g c_m^{g^-1}(i), c_m'(i)) <= D for all depths i <= l, where
// c_m^{g^-1} is m's orbit of g^{-1}. Agrees with
// neighborhood_contains(translate_dsg(g, m), m_prime, l, D) on every input.
bool translated_membership(const GroupContext& ctx, Elt g, const DSG& m,
                           const DSG& m_prime, int l, int D,
                           const HyperbolicityCertificate& cert);

// True iff y's ray stays within 2 delta of x's ray at every depth i <= l.
// For exact points this collapses to agreement of the first l letters; for
// truncated points the stored rays are compared, certifying only the
// representatives actually constructed.
bool point_neighborhood_contains(const GroupContext& ctx, const BoundaryPoint& y,
                                 const BoundaryPoint& x, int l,
                                 const HyperbolicityCertificate& cert);

/**
 * A finite cover by depth-l' neighborhoods with l' = fellow_travel_upgrade(l,
 * 4 delta, 0, cert): centers are greedily selected from the depth-l' boundary
 * samples until every sample is covered. Any two points inside one element
 * then lie in each other's depth-l neighborhood. Requires l > 8 delta.
 */
Cover cover_for_l(const GroupContext& ctx, int l, const HyperbolicityCertificate& cert);

/**
 * Smallest l (searched upward from 8 delta + 1) such that every pair of
 * depth-`sample_depth` boundary samples lying in each other's depth-l
 * neighborhood shares some cover element, certified over those samples only.
 * Throws NotFoundWithinDepth when no l up to sample_depth works.
 */
int lebesgue_l(const GroupContext& ctx, const Cover& cover,
               const HyperbolicityCertificate& cert, int sample_depth);

// The canonical action on boundary data. Exact mode prepends g's word and
// reduces across the periodic seam, so the group laws hold on the nose.
// Truncated mode translates the deepest usable ray point and re-anchors the
// ray at the identity, shortening the certified depth by the length of g;
// InsufficientDepth when nothing usable remains.
BoundaryPoint act(const GroupContext& ctx, Elt g, const BoundaryPoint& x);

}  // namespace bshadow
