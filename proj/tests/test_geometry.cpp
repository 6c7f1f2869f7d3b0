#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "bshadow/ball_group.hpp"
#include "bshadow/errors.hpp"
#include "bshadow/free_group.hpp"
#include "bshadow/geometry.hpp"
#include "bshadow/rng.hpp"
#include "doctest.h"
#include "oracle_helpers.hpp"

using namespace bshadow;

namespace {

GeneratorAlphabet two_letters() { return GeneratorAlphabet::lower_upper("ab"); }
GeneratorAlphabet four_letters() { return GeneratorAlphabet::lower_upper("abcd"); }

BallGroupContext lattice_context(int r_max, int work = -1) {
  GeneratorAlphabet alph = two_letters();
  return BallGroupContext(alph, {alph.parse("abAB")}, r_max, work);
}

BallGroupContext surface_context(int r_max, int work = -1) {
  GeneratorAlphabet alph = four_letters();
  return BallGroupContext(alph, {alph.parse("abABcdCD")}, r_max, work);
}

// edge path obtained by walking `letters` from `start`
Segment path_from(const GroupContext& ctx, Elt start, std::string_view letters) {
  Segment s;
  s.values.push_back(start);
  for (Gen g : ctx.alphabet().parse(letters))
    s.values.push_back(ctx.step(s.values.back(), g));
  return s;
}

std::string random_reduced_word(SplitMix64& rng, const GeneratorAlphabet& alph, int len) {
  Word w;
  while (static_cast<int>(w.size()) < len) {
    Gen s = static_cast<Gen>(rng.below(alph.size()));
    if (!w.empty() && s == alph.inverse(w.back())) continue;
    w.push_back(s);
  }
  return alph.spell(w);
}

}  // namespace

TEST_CASE("quasi-geodesic checks report the first bad pair") {
  FreeGroupContext f2(two_letters());
  Elt a = f2.of_string("a");

  Segment spike;
  spike.values = {kIdentity, a, kIdentity};
  QuasiGeodesicReport strict = is_quasi_geodesic(f2, spike, {1, 1, 0, {}});
  CHECK_FALSE(strict.ok);
  CHECK(strict.bad_i == 0);
  CHECK(strict.bad_j == 2);
  CHECK(is_quasi_geodesic(f2, spike, {1, 1, 2, {}}).ok);

  Segment wobble = path_from(f2, kIdentity, "aa");
  wobble.values.push_back(a);
  wobble.values.push_back(kIdentity);
  QuasiGeodesicReport windowed = is_quasi_geodesic(f2, wobble, {1, 1, 0, 2});
  CHECK_FALSE(windowed.ok);
  CHECK(windowed.bad_i == 1);
  CHECK(windowed.bad_j == 3);

  CHECK(is_quasi_geodesic(f2, path_from(f2, kIdentity, "abab"), {1, 1, 0, {}}).ok);
  CHECK(is_quasi_geodesic(f2, path_from(f2, a, "baB"), {1, 1, 0, {}}).ok);

  CHECK_THROWS_AS(is_quasi_geodesic(f2, spike, {0, 1, 0, {}}), MalformedInput);
  CHECK_THROWS_AS(is_quasi_geodesic(f2, spike, {3, 2, 0, {}}), MalformedInput);
  CHECK_THROWS_AS(is_quasi_geodesic(f2, spike, {1, 1, -1, {}}), MalformedInput);
  CHECK_THROWS_AS(is_quasi_geodesic(f2, spike, {1, 1, 0, 0}), MalformedInput);
  Segment gap;
  gap.values = {kIdentity, f2.of_string("aa")};
  CHECK_THROWS_AS(is_quasi_geodesic(f2, gap, {1, 1, 0, {}}), HypothesisViolated);
}

TEST_CASE("thinness certificates are zero on trees") {
  FreeGroupContext f2(two_letters());
  HyperbolicityCertificate cert = certify_delta(f2, 5);
  CHECK(cert.delta == 0);
  CHECK(cert.radius_certified == 5);
  CHECK(cert.method == "exhaustive-thin-triangles");
  CHECK(cert.exhaustive);
  CHECK(cert.witness.empty());
  // all unordered pairs (with repeats) of the 485 ball elements
  CHECK(cert.triangles_checked == 117855);
  CHECK(certify_delta(f2, 0).delta == 0);
}

TEST_CASE("lattice thinness matches the staircase oracle") {
  BallGroupContext lat = lattice_context(4, 9);
  const std::vector<int> frozen = {0, 1, 2, 3};
  for (int r = 0; r <= 3; ++r) {
    int want = r == 0 ? 0 : oracle::z2_thinness(r);
    HyperbolicityCertificate cert = certify_delta(lat, r, 32);
    CHECK(cert.delta == want);
    CHECK(cert.delta == frozen[r]);
    CHECK(cert.exhaustive);
  }
}

TEST_CASE("surface thinness certifies at the working scale") {
  BallGroupContext surf = surface_context(4, 6);
  HyperbolicityCertificate c1 = certify_delta(surf, 1);
  CHECK(c1.delta == 0);
  HyperbolicityCertificate c2 = certify_delta(surf, 2);
  CHECK(c2.delta == 2);
  CHECK(c2.exhaustive);
  CHECK(c2.witness == "ab|dc");
  CHECK(c2.triangles_checked == 2153);
  CHECK(c1.delta <= c2.delta);
  CHECK_THROWS_AS(certify_delta(surf, 5), OutOfCertifiedBall);
}

TEST_CASE("morse constants certify quasi-geodesic stability") {
  FreeGroupContext f2(two_letters());
  MorseConstant tree_geo = certify_morse(f2, {1, 1, 0, {}}, 4);
  CHECK(tree_geo.K == 0);
  CHECK(tree_geo.paths_checked == 160);  // reduced words of length <= 4
  CHECK(tree_geo.exhaustive);
  MorseConstant tree_slack = certify_morse(f2, {1, 1, 2, {}}, 4);
  CHECK(tree_slack.K == 1);  // depth-1 excursions survive eps = 2
  CHECK(tree_slack.paths_checked == 2184);
  CHECK(tree_slack.exhaustive);

  BallGroupContext surf = surface_context(4, 6);
  // below half the defining relator geodesics are unique, so geodesic paths
  // coincide with their own enumeration and the spread is zero
  MorseConstant inner = certify_morse(surf, {1, 1, 0, {}}, 3);
  CHECK(inner.K == 0);
  CHECK(inner.paths_checked == 456);
  // at radius 4 the relator closes up and geodesic bigons appear
  MorseConstant rim = certify_morse(surf, {1, 1, 0, {}}, 4);
  CHECK(rim.K == 2);
  CHECK(rim.paths_checked == 3200);
  CHECK(rim.exhaustive);

  MorseConstant windowed = certify_morse(f2, {1, 1, 0, 5}, 3);
  CHECK_FALSE(windowed.params.k.has_value());
  CHECK(windowed.K == 0);
}

TEST_CASE("local windows promote to global bounds") {
  FreeGroupContext f2(two_letters());
  HyperbolicityCertificate tree;  // delta 0
  LocalToGlobalResult res = local_to_global(f2, {1, 1, 0, 2}, 5, tree);
  CHECK(res.global.lambda_num == 1);
  CHECK(res.global.lambda_den == 1);
  CHECK(res.global.eps == 0);
  CHECK(res.paths_checked == 484);  // reduced words of length <= 5
  CHECK(res.exhaustive);

  BallGroupContext surf = surface_context(4, 6);
  HyperbolicityCertificate sc = certify_delta(surf, 2);
  REQUIRE(sc.delta == 2);
  LocalToGlobalResult near = local_to_global(surf, {1, 1, 4, 17}, 2, sc);
  CHECK(near.global.eps == 4);
  CHECK(near.paths_checked == 15552);
  CHECK(near.exhaustive);
  LocalToGlobalResult wide = local_to_global(surf, {1, 1, 4, 17}, 3, sc);
  CHECK(wide.global.eps == 4);
  CHECK(wide.paths_checked == 204496);
  CHECK(wide.exhaustive);

  CHECK_THROWS_AS(local_to_global(f2, {1, 1, 0, {}}, 3, tree), NoValidWindow);
  CHECK_THROWS_AS(local_to_global(surf, {1, 1, 4, 16}, 2, sc), NoValidWindow);
}

TEST_CASE("hausdorff distance is a pseudometric on paths") {
  FreeGroupContext f2(two_letters());
  Segment pa = path_from(f2, kIdentity, "a");
  Segment pb = path_from(f2, kIdentity, "b");
  CHECK(hausdorff_distance(f2, pa, pb) == 1);
  CHECK(hausdorff_distance(f2, pa, pa) == 0);

  Segment longer = path_from(f2, kIdentity, "ab");
  CHECK(hausdorff_distance(f2, pa, longer) == 1);  // one extra endpoint

  SplitMix64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Segment s[3];
    for (int i = 0; i < 3; ++i) {
      Elt base = f2.of_string(random_reduced_word(rng, f2.alphabet(), 3));
      std::string walk = random_reduced_word(rng, f2.alphabet(), 2 + static_cast<int>(rng.below(5)));
      s[i] = path_from(f2, base, walk);
    }
    int ab = hausdorff_distance(f2, s[0], s[1]);
    int bc = hausdorff_distance(f2, s[1], s[2]);
    int ac = hausdorff_distance(f2, s[0], s[2]);
    CHECK(ab == hausdorff_distance(f2, s[1], s[0]));
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("closeness of converging geodesics stays bounded") {
  FreeGroupContext f2(two_letters());
  HyperbolicityCertificate tree;  // delta 0

  Segment c = path_from(f2, f2.of_string("B"), "baa");
  Segment c_prime = path_from(f2, f2.of_string("b"), "Baa");
  ClosenessReport rep = check_closeness(f2, c, c_prime, tree);
  CHECK(rep.D == 2);
  CHECK(rep.T == 0);
  CHECK(rep.positions_checked == 4);
  CHECK(rep.max_distance == 2);

  // diverging pair: the far endpoints eat the whole window
  Segment ca = path_from(f2, kIdentity, "aaa");
  Segment cb = path_from(f2, kIdentity, "bbb");
  ClosenessReport none = check_closeness(f2, ca, cb, tree);
  CHECK(none.positions_checked == 0);
  CHECK(none.max_distance == -1);

  Segment shorter = path_from(f2, kIdentity, "aa");
  CHECK_THROWS_AS(check_closeness(f2, ca, shorter, tree), HypothesisViolated);
  Segment spike;
  spike.values = {kIdentity, f2.of_string("a"), kIdentity};
  Segment other;
  other.values = {kIdentity, f2.of_string("b"), kIdentity};
  CHECK_THROWS_AS(check_closeness(f2, spike, other, tree), HypothesisViolated);

  // every geodesic bigon of the surface group at radius 4 passes
  BallGroupContext surf = surface_context(4, 6);
  HyperbolicityCertificate sc = certify_delta(surf, 2);
  int bigons = 0;
  for (Elt v : surf.ball(4)) {
    GeodesicEnum ge = surf.geodesics(kIdentity, v, 8);
    if (ge.geodesics.size() < 2) continue;
    CHECK(ge.geodesics.size() == 2);
    ++bigons;
    ClosenessReport r = check_closeness(surf, ge.geodesics[0], ge.geodesics[1], sc);
    CHECK(r.D == 0);
    CHECK(r.T == 0);
    CHECK(r.max_distance <= sc.delta * 4);
  }
  CHECK(bigons == 8);  // the length-4 halves of the relator's rotations
}

TEST_CASE("fellow travel lengths add the offsets") {
  HyperbolicityCertificate tree;  // delta 0
  CHECK(fellow_travel_upgrade(5, 2, 0, tree) == 7);

  HyperbolicityCertificate surf;
  surf.delta = 2;
  CHECK(fellow_travel_upgrade(4, 4, 0, surf) == 10);
  CHECK(fellow_travel_upgrade(4, 4, 3, surf) == 10);
  CHECK_THROWS_AS(fellow_travel_upgrade(4, 3, 0, surf), HypothesisViolated);
  CHECK_THROWS_AS(fellow_travel_upgrade(-1, 2, 0, tree), MalformedInput);
}

TEST_CASE("divergence constants certify the jump on the tree") {
  FreeGroupContext f2(two_letters());
  HyperbolicityCertificate tree;  // delta 0
  DivergenceOptions opt;
  opt.morse_K = 0;

  DivergenceConstants dc = divergence_constants(f2, 1, 13, {1, 1, 0, {}}, 16, tree, opt);
  CHECK(dc.delta1 == 1);
  CHECK(dc.delta2 == 13);  // separation grows one per step past the split
  CHECK(dc.pairs_checked == 5778);
  CHECK(dc.pairs_asymptotic == 0);
  CHECK(dc.pairs_jumped == 5346);
  CHECK(dc.pairs_window_limited == 432);

  // same scan in a window too short for the jump target
  CHECK_THROWS_AS(divergence_constants(f2, 1, 13, {1, 1, 0, {}}, 8, tree, opt),
                  InsufficientRadius);
  try {
    divergence_constants(f2, 1, 13, {1, 1, 0, {}}, 8, tree, opt);
  } catch (const InsufficientRadius& e) {
    CHECK_FALSE(e.witness.empty());
  }
}

TEST_CASE("divergence scans classify pairs inside a short window") {
  BallGroupContext surf = surface_context(4, 6);
  DivergenceOptions opt;
  opt.stem_radius = 2;
  DivergenceScan sc = classify_divergence(surf, 2, 5, 4, opt);
  CHECK(sc.pairs_checked > 0);
  CHECK(sc.pairs_dipped == 0);
  CHECK(sc.pairs_jumped == 0);  // rays of length 4 cannot separate past 5
  CHECK(sc.pairs_asymptotic + sc.pairs_window_limited == sc.pairs_checked);
  CHECK_FALSE(sc.delta2.has_value());
  CHECK_THROWS_AS(classify_divergence(surf, 2, 2, 4, opt), MalformedInput);
}

TEST_CASE("glue concatenates fellow-traveling geodesics") {
  FreeGroupContext f2(two_letters());
  HyperbolicityCertificate tree;  // delta 0

  Segment c1 = path_from(f2, kIdentity, "abaBAba");
  Segment c2 = path_from(f2, c1.values[3], "BAbab");
  Segment joined = glue(f2, c1, c2, 3, tree);
  CHECK(joined.values == path_from(f2, kIdentity, "abaBAbab").values);

  CHECK_THROWS_AS(glue(f2, c1, c2, 2, tree), HypothesisViolated);  // corner moves
  try {
    glue(f2, c1, c2, 4, tree);
    CHECK(false);
  } catch (const HypothesisViolated& e) {
    CHECK(e.premise == "remainder length");
  }
  Segment far = path_from(f2, c1.values[3], "ABa");
  try {
    glue(f2, c1, far, 3, tree);
    CHECK(false);
  } catch (const HypothesisViolated& e) {
    CHECK(e.premise == "overlap closeness");
  }
  Segment bent;
  bent.values = {kIdentity, f2.of_string("a"), kIdentity, f2.of_string("b"),
                 f2.of_string("ba"), f2.of_string("bab"), f2.of_string("baba")};
  try {
    glue(f2, bent, c2, 3, tree);
    CHECK(false);
  } catch (const HypothesisViolated& e) {
    CHECK(e.premise == "geodesic input");
  }

  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    int n2 = 2 * n + 1 + static_cast<int>(rng.below(3));
    Segment left = path_from(f2, kIdentity, random_reduced_word(rng, f2.alphabet(), n2));
    Segment right;
    right.values.assign(left.values.begin() + n, left.values.end());
    Gen tail = f2.last_letter(left.back());
    for (int extra = 0; extra < 2; ++extra) {
      Gen s = static_cast<Gen>(rng.below(f2.num_symbols()));
      if (s == f2.alphabet().inverse(tail)) s = tail;
      right.values.push_back(f2.step(right.values.back(), s));
      tail = s;
    }
    Segment out = glue(f2, left, right, n, tree);
    CHECK(out.size() == n2 + 3);
    CHECK(is_quasi_geodesic(f2, out, {1, 1, 0, {}}).ok);
  }

  // the depth premise scales with delta and can be explicitly relaxed
  BallGroupContext surf = surface_context(4, 6);
  HyperbolicityCertificate sc = certify_delta(surf, 2);
  Elt deep = [&] {
    for (Elt v : surf.ball(5))
      if (surf.length(v) == 5) return v;
    return kIdentity;
  }();
  Segment sc1 = surf.geodesics(kIdentity, deep, 1).geodesics.front();
  Segment sc2;
  sc2.values.assign(sc1.values.begin() + 2, sc1.values.end());
  CHECK_THROWS_AS(glue(surf, sc1, sc2, 2, sc), HypothesisViolated);
  Segment relaxed = glue(surf, sc1, sc2, 2, sc, true);
  CHECK(relaxed.values == sc1.values);
}
