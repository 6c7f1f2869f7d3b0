#include "bshadow/group.hpp"

#include <algorithm>

#include "bshadow/errors.hpp"

namespace bshadow {

Elt GroupContext::step(Elt g, Gen s) const {
  Elt r = try_step(g, s);
  if (r < 0)
    throw OutOfCertifiedBall("product leaves the supported ball: " + word_str(g) + " * " +
                             alphabet().name(s));
  return r;
}

Word GroupContext::word(Elt g) const {
  Word w;
  for (Elt x = g; x != kIdentity; x = parent(x)) w.push_back(last_letter(x));
  std::reverse(w.begin(), w.end());
  return w;
}

Elt GroupContext::mul_word(Elt g, const Word& w) const {
  for (Gen s : w) g = step(g, s);
  return g;
}

Elt GroupContext::of_word(const Word& w) const { return mul_word(kIdentity, w); }

Elt GroupContext::inverse(Elt g) const {
  return mul_word(kIdentity, alphabet().invert(word(g)));
}

Elt GroupContext::mul(Elt g, Elt h) const { return mul_word(g, word(h)); }

bool GroupContext::shortlex_less(Elt a, Elt b) const {
  if (a == b) return false;
  int la = length(a), lb = length(b);
  if (la != lb) return la < lb;
  Word wa = word(a), wb = word(b);
  return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
}

bool GroupContext::is_edge(Elt a, Elt b) const {
  for (Gen s = 0; s < num_symbols(); ++s)
    if (try_step(a, s) == b) return true;
  return false;
}

void GroupContext::validate_segment(const Segment& s) const {
  for (size_t i = 1; i < s.values.size(); ++i)
    if (!is_edge(s.values[i - 1], s.values[i]))
      throw HypothesisViolated(
          "segment adjacency", "positions " + std::to_string(s.start + i - 1) + "," +
                                   std::to_string(s.start + i) + ": " +
                                   word_str(s.values[i - 1]) + " -> " + word_str(s.values[i]));
}

DistinguishedGeodesicStructure distinguished_structure(const GroupContext& ctx, int radius) {
  if (radius > ctx.certified_radius())
    throw OutOfCertifiedBall("distinguished structure radius " + std::to_string(radius) +
                             " exceeds certified radius");
  // prefix closure: removing the last normal-form letter must land on the
  // normal form one step shorter, all the way down
  for (Elt g : ctx.ball(radius)) {
    for (Elt x = g; x != kIdentity; x = ctx.parent(x)) {
      if (ctx.length(ctx.parent(x)) != ctx.length(x) - 1)
        throw HypothesisViolated("prefix closure", ctx.word_str(g));
    }
  }
  return DistinguishedGeodesicStructure{&ctx, radius};
}

}  // namespace bshadow
