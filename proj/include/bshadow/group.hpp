#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "bshadow/alphabet.hpp"

namespace bshadow {

// Group element handle, valid only with the context that produced it.
// 0 is always the identity.
using Elt = int32_t;
constexpr Elt kIdentity = 0;

// Radius value meaning "no bound": large but safe to add small offsets to.
constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

/**
 * A finite path c : {start, start+1, ..., start+n-1} -> G sampled at
 * consecutive integers. Invariant (checked by validate_segment): consecutive
 * values differ by right multiplication by exactly one generator.
 */
struct Segment {
  int start = 0;
  std::vector<Elt> values;

  int size() const { return static_cast<int>(values.size()); }
  int first_index() const { return start; }
  int last_index() const { return start + size() - 1; }
  Elt at(int index) const { return values[index - start]; }
  Elt front() const { return values.front(); }
  Elt back() const { return values.back(); }
};

struct GeodesicEnum {
  std::vector<Segment> geodesics;  // ShortLex order of their letter sequences
  bool truncated = false;          // hit the budget; list is the ShortLex-first sample
  int64_t total_count = 0;         // exact count when not truncated, else a lower bound
};

/**
 * A group together with enough certified structure to do geometry in it:
 * ShortLex normal forms, the word metric, geodesics, balls.
 *
 * Two implementations: FreeGroupContext (free reduction, unbounded, exact)
 * and BallGroupContext (finite presentation, certified on a ball).
 * Elements are interned; handles index an internal table storing the ShortLex
 * normal form as (parent, last letter).
 */
class GroupContext {
 public:
  explicit GroupContext(GeneratorAlphabet alphabet) : alphabet_(std::move(alphabet)) {}
  virtual ~GroupContext() = default;

  const GeneratorAlphabet& alphabet() const { return alphabet_; }
  int num_symbols() const { return alphabet_.size(); }
  virtual bool free_mode() const = 0;

  // Normal forms and products are certified for elements within this radius.
  virtual int certified_radius() const = 0;
  // Elements up to this length are representable at all (working ball).
  virtual int support_radius() const = 0;

  // g * s. Throws OutOfCertifiedBall if the result is not representable.
  Elt step(Elt g, Gen s) const;
  // g * s, or -1 if the result is not representable
  virtual Elt try_step(Elt g, Gen s) const = 0;
  virtual int length(Elt g) const = 0;   // d(1, g)
  virtual Gen last_letter(Elt g) const = 0;  // kNoGen for the identity
  virtual Elt parent(Elt g) const = 0;   // normal form minus its last letter

  // Word metric. Exact for free mode; for ball mode see BallGroupContext docs.
  virtual int dist(Elt g, Elt h) const = 0;
  // min(dist(g, h), cap + 1): never scans further than cap
  virtual int dist_capped(Elt g, Elt h, int cap) const = 0;

  // All elements with d(1, g) <= radius, ShortLex sorted.
  virtual std::vector<Elt> ball(int radius) const = 0;
  virtual int64_t ball_size(int radius) const = 0;

  // Every geodesic from g to h (budget-capped), each a Segment starting at
  // index 0 with values[0] == g.
  virtual GeodesicEnum geodesics(Elt g, Elt h, int max_count) const = 0;

  // --- derived operations -------------------------------------------------

  Word word(Elt g) const;
  std::string word_str(Elt g) const { return alphabet_.spell(word(g)); }
  Elt of_word(const Word& w) const;  // reduces/normalizes, then interns
  Elt of_string(std::string_view text) const { return of_word(alphabet_.parse(text)); }
  Elt mul_word(Elt g, const Word& w) const;  // right multiply by a raw word
  Elt inverse(Elt g) const;
  Elt mul(Elt g, Elt h) const;

  // ShortLex order on elements via their normal forms
  bool shortlex_less(Elt a, Elt b) const;

  bool is_edge(Elt a, Elt b) const;  // differ by one generator
  // Throws HypothesisViolated if consecutive values are not edges.
  void validate_segment(const Segment& s) const;

  int64_t sphere_size(int radius) const {
    return radius == 0 ? 1 : ball_size(radius) - ball_size(radius - 1);
  }

 private:
  GeneratorAlphabet alphabet_;
};

/**
 * View of the ShortLex normal-form tree on a ball: for each element the last
 * letter of its normal form, closed under prefixes. The letter assigned to g
 * by the structure is the generator pointing back toward the identity, i.e.
 * the inverse of the final normal-form letter.
 */
struct DistinguishedGeodesicStructure {
  const GroupContext* ctx = nullptr;
  int radius = 0;

  // inverse of the last normal-form letter; kNoGen at the identity
  Gen toward_identity(Elt g) const {
    Gen l = ctx->last_letter(g);
    return l == kNoGen ? kNoGen : ctx->alphabet().inverse(l);
  }
  Elt parent(Elt g) const { return ctx->parent(g); }
};

// Validates prefix closure on ball(radius) and returns the structure view.
DistinguishedGeodesicStructure distinguished_structure(const GroupContext& ctx, int radius);

}  // namespace bshadow
