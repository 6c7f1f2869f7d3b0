#pragma once

#include <unordered_map>

#include "bshadow/group.hpp"

namespace bshadow {

/**
 * Free group on the alphabet's generators: the Cayley graph is the regular
 * tree of reduced words, so every operation is exact and unbounded. Elements
 * are interned on demand into a prefix tree.
 *
 * Interning mutates shared tables; instances are not safe for concurrent use.
 */
class FreeGroupContext final : public GroupContext {
 public:
  explicit FreeGroupContext(GeneratorAlphabet alphabet);

  bool free_mode() const override { return true; }
  int certified_radius() const override { return kUnbounded; }
  int support_radius() const override { return kUnbounded; }

  Elt try_step(Elt g, Gen s) const override;
  int length(Elt g) const override { return depth_[g]; }
  Gen last_letter(Elt g) const override { return letter_[g]; }
  Elt parent(Elt g) const override { return parent_[g]; }

  int dist(Elt g, Elt h) const override;
  int dist_capped(Elt g, Elt h, int cap) const override;

  std::vector<Elt> ball(int radius) const override;
  int64_t ball_size(int radius) const override;
  GeodesicEnum geodesics(Elt g, Elt h, int max_count) const override;

  // depth of the longest common prefix of the normal forms
  int common_prefix(Elt g, Elt h) const;

 private:
  Elt intern_child(Elt g, Gen s) const;

  mutable std::vector<Elt> parent_;
  mutable std::vector<Gen> letter_;
  mutable std::vector<int32_t> depth_;
  mutable std::unordered_map<uint64_t, Elt> child_;
};

}  // namespace bshadow
