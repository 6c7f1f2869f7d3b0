#pragma once

#include <unordered_map>

#include "bshadow/group.hpp"

namespace bshadow {

/**
 * Finitely presented group, certified on a ball.
 *
 * Construction generates the word tree breadth-first out to work_radius and
 * closes every relator loop at every state by edge deduction and state
 * merging, iterated to a fixed point. After canonicalization, state ids are
 * sorted by (distance, ShortLex word) and each state stores its ShortLex
 * normal form as (parent, letter).
 *
 * Soundness: merges only identify words the relators prove equal, so the
 * surviving state count at each radius is an upper bound on the true ball
 * size, with equality exactly when the closure saturated at that radius.
 * Matching sphere sizes against independently derived counts is the working
 * certificate; those checks live in the tests.
 *
 * dist() is the graph distance inside the working ball: an upper bound on
 * the group distance, exact whenever some geodesic between the endpoints
 * stays inside the working ball. For endpoints of length <= r this holds
 * when r + (thinness constant) <= work_radius.
 *
 * Not safe for concurrent use (distance scratch is shared).
 */
class BallGroupContext final : public GroupContext {
 public:
  // work_radius < 0 picks r_max + 2
  BallGroupContext(GeneratorAlphabet alphabet, std::vector<Word> relators, int r_max,
                   int work_radius = -1);

  bool free_mode() const override { return false; }
  int certified_radius() const override { return r_max_; }
  int support_radius() const override { return work_radius_; }

  Elt try_step(Elt g, Gen s) const override { return next_[g * num_symbols() + s]; }
  int length(Elt g) const override { return dist_[g]; }
  Gen last_letter(Elt g) const override { return letter_[g]; }
  Elt parent(Elt g) const override { return parent_[g]; }

  int dist(Elt g, Elt h) const override;
  int dist_capped(Elt g, Elt h, int cap) const override;

  std::vector<Elt> ball(int radius) const override;
  int64_t ball_size(int radius) const override;
  GeodesicEnum geodesics(Elt g, Elt h, int max_count) const override;

  int work_radius() const { return work_radius_; }
  int64_t state_count() const { return static_cast<int64_t>(parent_.size()); }
  const std::vector<Word>& relators() const { return relators_; }

 private:
  void build();
  int bidir(Elt g, Elt h, int cap, std::unordered_map<Elt, int>* field_a,
            std::unordered_map<Elt, int>* field_b) const;

  int r_max_;
  int work_radius_;
  std::vector<Word> relators_;

  // canonical state tables; id order == (distance, ShortLex) order
  std::vector<int32_t> next_;
  std::vector<Elt> parent_;
  std::vector<Gen> letter_;
  std::vector<uint8_t> dist_;
  std::vector<int64_t> ball_count_;  // cumulative states per radius

  // level-synchronous bidirectional search scratch, epoch-stamped
  mutable std::vector<int32_t> stamp_[2];
  mutable std::vector<uint16_t> level_[2];
  mutable int32_t epoch_ = 0;
};

}  // namespace bshadow
