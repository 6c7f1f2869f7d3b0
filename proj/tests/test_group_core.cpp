#include <algorithm>
#include <string>
#include <vector>

#include "bshadow/alphabet.hpp"
#include "bshadow/ball_group.hpp"
#include "bshadow/errors.hpp"
#include "bshadow/free_group.hpp"
#include "bshadow/rng.hpp"
#include "doctest.h"
#include "oracle_helpers.hpp"

using namespace bshadow;

namespace {

GeneratorAlphabet two_letters() { return GeneratorAlphabet::lower_upper("ab"); }
GeneratorAlphabet four_letters() { return GeneratorAlphabet::lower_upper("abcd"); }

// frozen sphere sizes of the genus-2 surface group, confirmed by the disk
// model oracle below
const std::vector<long> kSurfaceSpheres = {1, 8, 56, 392, 2736, 19096, 133288};

std::string random_reduced_word(SplitMix64& rng, const GeneratorAlphabet& alph, int len) {
  Word w;
  while (static_cast<int>(w.size()) < len) {
    Gen s = static_cast<Gen>(rng.below(alph.size()));
    if (!w.empty() && s == alph.inverse(w.back())) continue;
    w.push_back(s);
  }
  return alph.spell(w);
}

BallGroupContext lattice_context(int r_max, int work = -1) {
  GeneratorAlphabet alph = two_letters();
  return BallGroupContext(alph, {alph.parse("abAB")}, r_max, work);
}

BallGroupContext surface_context(int r_max, int work = -1) {
  GeneratorAlphabet alph = four_letters();
  return BallGroupContext(alph, {alph.parse("abABcdCD")}, r_max, work);
}

}  // namespace

TEST_CASE("alphabet basics") {
  GeneratorAlphabet alph = two_letters();
  CHECK(alph.size() == 4);
  CHECK(alph.name(0) == "a");
  CHECK(alph.name(1) == "A");
  CHECK(alph.name(2) == "b");
  CHECK(alph.name(3) == "B");
  for (Gen s = 0; s < alph.size(); ++s) {
    CHECK(alph.inverse(alph.inverse(s)) == s);
    CHECK(alph.name(alph.inverse(s)) == std::string(1, oracle::flip_case(alph.name(s)[0])));
  }
  CHECK(alph.spell(alph.parse("abAB")) == "abAB");
  CHECK_THROWS_AS(alph.parse("abx"), MalformedInput);

  CHECK(alph.reduce(alph.parse("aA")).empty());
  CHECK(alph.spell(alph.reduce(alph.parse("abBA"))) == "");
  CHECK(alph.spell(alph.reduce(alph.parse("abBb"))) == "ab");
  CHECK(alph.spell(alph.invert(alph.parse("abA"))) == "aBA");
  CHECK(alph.is_reduced(alph.parse("abab")));
  CHECK(!alph.is_reduced(alph.parse("abBa")));
}

TEST_CASE("alphabet shortlex order") {
  GeneratorAlphabet alph = two_letters();
  auto less = [&](const std::string& u, const std::string& v) {
    return alph.shortlex_less(alph.parse(u), alph.parse(v));
  };
  CHECK(less("", "a"));
  CHECK(less("a", "A"));
  CHECK(less("A", "b"));
  CHECK(less("b", "B"));
  CHECK(less("B", "aa"));
  CHECK(less("ab", "ba"));
  CHECK(!less("ba", "ab"));
  CHECK(!less("a", "a"));
}

TEST_CASE("free group distances match the common prefix rule") {
  FreeGroupContext ctx(two_letters());
  SplitMix64 rng{20240811};
  for (int trial = 0; trial < 500; ++trial) {
    std::string u = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 8));
    std::string v = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 8));
    Elt gu = ctx.of_string(u);
    Elt gv = ctx.of_string(v);
    CHECK(ctx.dist(gu, gv) == oracle::f2_dist(u, v));
    CHECK(ctx.length(gu) == static_cast<int>(u.size()));
  }
  CHECK(ctx.dist(ctx.of_string("ab"), ctx.of_string("aB")) == 2);
}

TEST_CASE("free group balls and spheres") {
  FreeGroupContext ctx(two_letters());
  CHECK(ctx.ball_size(0) == 1);
  CHECK(ctx.ball_size(1) == 5);
  CHECK(ctx.ball_size(2) == 17);
  CHECK(ctx.ball_size(8) == 13121);
  CHECK(ctx.sphere_size(3) == 4 * 3 * 3);

  auto ball = ctx.ball(3);
  CHECK(ball.size() == 53);
  for (size_t i = 0; i + 1 < ball.size(); ++i) CHECK(ctx.shortlex_less(ball[i], ball[i + 1]));
  CHECK(ball[0] == kIdentity);
  CHECK(ctx.word_str(ball[1]) == "a");
  CHECK(ctx.word_str(ball[4]) == "B");
  CHECK(ctx.word_str(ball[5]) == "aa");
}

TEST_CASE("free group words round trip and reduce") {
  FreeGroupContext ctx(two_letters());
  CHECK(ctx.of_string("aA") == kIdentity);
  CHECK(ctx.of_string("abBA") == kIdentity);
  CHECK(ctx.word_str(ctx.of_string("abB")) == "a");
  CHECK(ctx.word_str(ctx.mul(ctx.of_string("ab"), ctx.of_string("Ba"))) == "aa");
  CHECK(ctx.inverse(ctx.of_string("ab")) == ctx.of_string("BA"));
  CHECK(ctx.mul(ctx.of_string("ab"), ctx.inverse(ctx.of_string("ab"))) == kIdentity);
  CHECK(ctx.alphabet().name(ctx.last_letter(ctx.of_string("ab"))) == "b");
  CHECK(ctx.parent(ctx.of_string("ab")) == ctx.of_string("a"));
}

TEST_CASE("free group geodesics are unique tree paths") {
  FreeGroupContext ctx(two_letters());
  Elt u = ctx.of_string("ab");
  Elt v = ctx.of_string("aB");
  auto ge = ctx.geodesics(u, v, 10);
  REQUIRE(ge.geodesics.size() == 1);
  CHECK(ge.total_count == 1);
  CHECK(!ge.truncated);
  const Segment& seg = ge.geodesics[0];
  CHECK(seg.size() == 3);
  CHECK(seg.front() == u);
  CHECK(seg.back() == v);
  CHECK(seg.values[1] == ctx.of_string("a"));
  ctx.validate_segment(seg);

  SplitMix64 rng{7};
  for (int trial = 0; trial < 100; ++trial) {
    Elt g = ctx.of_string(random_reduced_word(rng, ctx.alphabet(), rng.range(0, 6)));
    Elt h = ctx.of_string(random_reduced_word(rng, ctx.alphabet(), rng.range(0, 6)));
    auto e = ctx.geodesics(g, h, 4);
    REQUIRE(e.geodesics.size() == 1);
    CHECK(static_cast<int>(e.geodesics[0].size()) == ctx.dist(g, h) + 1);
    ctx.validate_segment(e.geodesics[0]);
  }
}

TEST_CASE("lattice group matches the taxicab model") {
  BallGroupContext ctx = lattice_context(5);

  SUBCASE("ball sizes") {
    for (int r = 0; r <= 5; ++r) CHECK(ctx.ball_size(r) == oracle::z2_ball(r));
  }

  SUBCASE("normal forms") {
    CHECK(ctx.of_string("abAB") == kIdentity);
    CHECK(ctx.of_string("ba") == ctx.of_string("ab"));
    CHECK(ctx.word_str(ctx.of_string("ba")) == "ab");
    CHECK(ctx.word_str(ctx.of_string("bbaA")) == "bb");
    CHECK(ctx.alphabet().name(ctx.last_letter(ctx.of_string("ab"))) == "b");
  }

  SUBCASE("distances against coordinates") {
    SplitMix64 rng{99};
    for (int trial = 0; trial < 200; ++trial) {
      std::string u = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 4));
      std::string v = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 4));
      CHECK(ctx.dist(ctx.of_string(u), ctx.of_string(v)) == oracle::z2_dist(u, v));
    }
    CHECK(ctx.dist(ctx.of_string("ab"), ctx.of_string("aB")) == 2);
  }

  SUBCASE("geodesic enumeration walks the staircases") {
    Elt u = kIdentity, v = ctx.of_string("ab");
    auto e = ctx.geodesics(u, v, 10);
    REQUIRE(e.geodesics.size() == 2);
    CHECK(e.total_count == 2);
    CHECK(!e.truncated);
    CHECK(e.geodesics[0].values[1] == ctx.of_string("a"));  // ShortLex first
    CHECK(e.geodesics[1].values[1] == ctx.of_string("b"));
    for (const auto& seg : e.geodesics) ctx.validate_segment(seg);

    auto far = ctx.geodesics(kIdentity, ctx.of_string("aabb"), 3);
    CHECK(far.total_count == 6);  // binomial(4, 2)
    CHECK(far.geodesics.size() == 3);
    CHECK(far.truncated);
  }

  SUBCASE("geodesics end at the requested vertex") {
    auto one = ctx.geodesics(kIdentity, ctx.of_string("a"), 10);
    REQUIRE(one.geodesics.size() == 1);
    CHECK(one.total_count == 1);
    CHECK(one.geodesics[0].values.back() == ctx.of_string("a"));
    auto diag = ctx.geodesics(ctx.of_string("a"), ctx.of_string("b"), 10);
    CHECK(diag.total_count == 2);
    for (const auto& seg : diag.geodesics) {
      CHECK(seg.values.front() == ctx.of_string("a"));
      CHECK(seg.values.back() == ctx.of_string("b"));
    }
  }

  SUBCASE("capped distance saturates") {
    Elt u = kIdentity, v = ctx.of_string("aabb");
    CHECK(ctx.dist(u, v) == 4);
    CHECK(ctx.dist_capped(u, v, 4) == 4);
    CHECK(ctx.dist_capped(u, v, 3) == 4);  // cap + 1 signals "more than cap"
    CHECK(ctx.dist_capped(u, v, 2) == 3);
  }
}

TEST_CASE("surface group spheres match the disk model") {
  oracle::SurfaceModel model;
  CHECK(model.relator_defect() < 1e-9);
  model.enumerate(6);
  REQUIRE(model.spheres().size() == kSurfaceSpheres.size());
  for (size_t n = 0; n < kSurfaceSpheres.size(); ++n)
    CHECK(model.spheres()[n] == kSurfaceSpheres[n]);

  BallGroupContext ctx = surface_context(4, 6);
  for (int n = 0; n <= 6; ++n) CHECK(ctx.sphere_size(n) == kSurfaceSpheres[n]);
}

TEST_CASE("surface group relations and distances") {
  BallGroupContext ctx = surface_context(4, 6);
  oracle::SurfaceModel model;

  SUBCASE("relator consequences") {
    CHECK(ctx.of_string("abABcdCD") == kIdentity);
    CHECK(ctx.of_string("abAB") == ctx.of_string("dcDC"));
    CHECK(ctx.of_string("CDab") == ctx.of_string("DCba"));
    CHECK(ctx.of_string("CDabA") == ctx.of_string("DCb"));
    CHECK(model.equal_words("abAB", "dcDC"));
    CHECK(model.equal_words("CDabA", "DCb"));
  }

  SUBCASE("hand checked distances") {
    CHECK(ctx.dist(ctx.of_string("ab"), ctx.of_string("dc")) == 4);
    CHECK(ctx.dist(ctx.of_string("Adc"), ctx.of_string("bA")) == 3);
    CHECK(ctx.dist(ctx.of_string("Adc"), ctx.of_string("bAB")) == 2);
  }

  SUBCASE("random distances against the disk model") {
    model.enumerate(6);
    SplitMix64 rng{4242};
    int checked = 0;
    while (checked < 150) {
      std::string u = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 3));
      std::string v = random_reduced_word(rng, ctx.alphabet(), rng.range(0, 3));
      int want = model.dist(u, v);
      REQUIRE(want >= 0);
      CHECK(ctx.dist(ctx.of_string(u), ctx.of_string(v)) == want);
      ++checked;
    }
  }

  SUBCASE("normal forms are shortlex least") {
    // the ShortLex form of abAB's class starts with a, not d
    CHECK(ctx.word_str(ctx.of_string("dcDC")) == "abAB");
    auto ball = ctx.ball(3);
    CHECK(ball.size() == 457);
    for (size_t i = 0; i + 1 < ball.size(); ++i) CHECK(ctx.shortlex_less(ball[i], ball[i + 1]));
  }

  SUBCASE("geodesics below half the relator are unique") {
    for (Elt v : ctx.ball(3)) {
      auto e = ctx.geodesics(kIdentity, v, 4);
      CHECK(e.total_count == 1);
      REQUIRE(e.geodesics.size() == 1);
      CHECK(e.geodesics[0].values.back() == v);
      CHECK(static_cast<int>(e.geodesics[0].values.size()) == ctx.length(v) + 1);
    }
  }
}

TEST_CASE("ball context refuses to leave its support") {
  BallGroupContext ctx = surface_context(2, 4);
  Elt rim = ctx.of_string("aaaa");
  CHECK(ctx.length(rim) == 4);
  CHECK(ctx.try_step(rim, 0) == -1);
  CHECK_THROWS_AS(ctx.step(rim, 0), OutOfCertifiedBall);
  CHECK_THROWS_AS(ctx.of_string("aaaaa"), OutOfCertifiedBall);
  CHECK_THROWS_AS(ctx.ball_size(5), OutOfCertifiedBall);
  CHECK(ctx.certified_radius() == 2);
  CHECK(ctx.support_radius() == 4);
}

TEST_CASE("distinguished geodesic structure points toward the identity") {
  SUBCASE("free") {
    FreeGroupContext ctx(two_letters());
    auto dgs = distinguished_structure(ctx, 4);
    for (Elt g : ctx.ball(4)) {
      if (g == kIdentity) continue;
      CHECK(dgs.parent(g) == ctx.parent(g));
      CHECK(ctx.length(dgs.parent(g)) == ctx.length(g) - 1);
      Gen s = dgs.toward_identity(g);
      CHECK(ctx.step(g, s) == ctx.parent(g));
    }
  }
  SUBCASE("ball") {
    BallGroupContext ctx = surface_context(3, 5);
    for (Elt g : ctx.ball(3)) {
      if (g == kIdentity) continue;
      CHECK(ctx.length(ctx.parent(g)) == ctx.length(g) - 1);
      CHECK(ctx.try_step(ctx.parent(g), ctx.last_letter(g)) == g);
    }
  }
}

TEST_CASE("malformed presentations are rejected") {
  GeneratorAlphabet alph = two_letters();
  CHECK_THROWS_AS(BallGroupContext(alph, {alph.parse("aA")}, 2), MalformedInput);
  CHECK_THROWS_AS(BallGroupContext(alph, {Word{}}, 2), MalformedInput);
  CHECK_THROWS_AS(BallGroupContext(alph, {alph.parse("abAB")}, 5, 3), MalformedInput);
}
