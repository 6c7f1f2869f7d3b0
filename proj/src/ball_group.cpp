#include "bshadow/ball_group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "bshadow/errors.hpp"

namespace bshadow {

namespace {

// Cyclically free-reduces a relator; empty result means the relator is vacuous.
Word cyclic_reduce(const GeneratorAlphabet& alphabet, Word w) {
  w = alphabet.reduce(w);
  while (w.size() >= 2 && w.front() == alphabet.inverse(w.back())) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Mutable state tables during construction, before canonical renumbering.
struct Builder {
  int nsym;
  const GeneratorAlphabet* alphabet;
  std::vector<Word> rotations;  // all cyclic rotations of each relator and inverse

  std::vector<int32_t> next;  // state * nsym + sym, raw targets (resolve on read)
  std::vector<int32_t> uf;
  std::vector<uint8_t> dist;
  std::deque<std::pair<int32_t, int32_t>> coincidences;

  int32_t find(int32_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  }

  bool live(int32_t x) { return uf[x] == x; }

  int32_t num_states() const { return static_cast<int32_t>(uf.size()); }

  int32_t create(int32_t parent_state, Gen s, uint8_t d) {
    int32_t id = num_states();
    next.resize(next.size() + nsym, -1);
    uf.push_back(id);
    dist.push_back(d);
    next[parent_state * nsym + s] = id;
    next[id * nsym + alphabet->inverse(s)] = parent_state;
    return id;
  }

  // Installs the edge u --s--> v (and its mirror), queueing a coincidence when
  // a slot already holds a different state. Returns true if anything changed.
  bool install(int32_t u, Gen s, int32_t v) {
    u = find(u);
    v = find(v);
    bool changed = false;
    int32_t& slot = next[u * nsym + s];
    int32_t cur = slot < 0 ? -1 : find(slot);
    if (cur < 0) {
      slot = v;
      changed = true;
    } else if (cur != v) {
      coincidences.emplace_back(cur, v);
      changed = true;
    }
    Gen t = alphabet->inverse(s);
    int32_t& rslot = next[v * nsym + t];
    int32_t rcur = rslot < 0 ? -1 : find(rslot);
    if (rcur < 0) {
      rslot = u;
      changed = true;
    } else if (rcur != u) {
      coincidences.emplace_back(rcur, u);
      changed = true;
    }
    return changed;
  }

  // Drains the coincidence queue. The survivor of a merge is the state with
  // the smaller (distance, id); the loser's edges are re-installed on it.
  void settle() {
    while (!coincidences.empty()) {
      auto [a, b] = coincidences.front();
      coincidences.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      int32_t keep = a, die = b;
      if (std::pair(dist[die], die) < std::pair(dist[keep], keep)) std::swap(keep, die);
      uf[die] = keep;
      for (Gen s = 0; s < nsym; ++s) {
        int32_t t = next[die * nsym + s];
        if (t >= 0) install(keep, s, find(t));
      }
    }
  }

  // Walks every relator rotation from every live state, deducing missing last
  // edges and merging states whose loops close apart. One full pass.
  bool scan_all() {
    bool changed = false;
    for (int32_t u = 0; u < num_states(); ++u) {
      if (!live(u)) continue;
      for (const Word& rot : rotations) {
        int32_t x = u;
        size_t i = 0;
        while (i < rot.size()) {
          int32_t t = next[x * nsym + rot[i]];
          if (t < 0) break;
          x = find(t);
          ++i;
        }
        if (i == rot.size()) {
          if (x != u) {
            coincidences.emplace_back(x, u);
            settle();
            changed = true;
          }
        } else if (i + 1 == rot.size()) {
          if (install(x, rot[i], u)) {
            settle();
            changed = true;
          }
        }
        if (!live(u)) break;
      }
    }
    return changed;
  }

  // Recomputes distances over the current merged graph by plain BFS from the
  // root; the labels assigned at creation only upper-bound these.
  void recompute_dist() {
    std::vector<uint8_t> fresh(num_states(), 255);
    std::vector<int32_t> frontier{find(0)};
    fresh[find(0)] = 0;
    while (!frontier.empty()) {
      std::vector<int32_t> following;
      for (int32_t u : frontier) {
        for (Gen s = 0; s < nsym; ++s) {
          int32_t t = next[u * nsym + s];
          if (t < 0) continue;
          t = find(t);
          if (fresh[t] == 255) {
            fresh[t] = static_cast<uint8_t>(fresh[u] + 1);
            following.push_back(t);
          }
        }
      }
      frontier = std::move(following);
    }
    for (int32_t u = 0; u < num_states(); ++u)
      if (live(u)) dist[u] = fresh[u];
  }
};

}  // namespace

BallGroupContext::BallGroupContext(GeneratorAlphabet alphabet, std::vector<Word> relators,
                                   int r_max, int work_radius)
    : GroupContext(std::move(alphabet)),
      r_max_(r_max),
      work_radius_(work_radius < 0 ? r_max + 2 : work_radius),
      relators_(std::move(relators)) {
  if (r_max_ < 0) throw MalformedInput("certified radius must be nonnegative");
  if (work_radius_ < r_max_) throw MalformedInput("working radius below certified radius");
  if (work_radius_ > 200) throw MalformedInput("working radius too large for this representation");
  for (Word& r : relators_) {
    r = cyclic_reduce(this->alphabet(), r);
    if (r.empty()) throw MalformedInput("relator reduces to the empty word");
  }
  build();
}

void BallGroupContext::build() {
  const int nsym = num_symbols();
  Builder b;
  b.nsym = nsym;
  b.alphabet = &alphabet();
  for (const Word& r : relators_) {
    for (const Word& base : {r, alphabet().invert(r)}) {
      for (size_t k = 0; k < base.size(); ++k) {
        Word rot(base.begin() + k, base.end());
        rot.insert(rot.end(), base.begin(), base.begin() + k);
        if (std::find(b.rotations.begin(), b.rotations.end(), rot) == b.rotations.end())
          b.rotations.push_back(rot);
      }
    }
  }

  b.uf.push_back(0);
  b.dist.push_back(0);
  b.next.assign(nsym, -1);

  // Level-synchronous generation with closure after every level, then repair
  // rounds: a merge can pull a state inward and leave it missing children.
  std::vector<std::vector<int32_t>> levels(work_radius_ + 1);
  levels[0].push_back(0);
  for (int d = 0; d < work_radius_; ++d) {
    for (size_t idx = 0; idx < levels[d].size(); ++idx) {
      int32_t u = levels[d][idx];
      if (!b.live(u) || b.dist[u] != d) continue;
      for (Gen s = 0; s < nsym; ++s) {
        if (b.next[u * nsym + s] >= 0) continue;
        int32_t v = b.create(u, s, static_cast<uint8_t>(d + 1));
        levels[d + 1].push_back(v);
      }
    }
    while (b.scan_all()) {
    }
  }

  while (true) {
    b.recompute_dist();
    int32_t created = 0;
    for (int32_t u = 0; u < b.num_states(); ++u) {
      if (!b.live(u) || b.dist[u] >= work_radius_) continue;
      for (Gen s = 0; s < nsym; ++s) {
        if (b.next[u * nsym + s] >= 0) continue;
        b.create(u, s, static_cast<uint8_t>(b.dist[u] + 1));
        ++created;
      }
    }
    if (created == 0 && b.coincidences.empty()) break;
    while (b.scan_all()) {
    }
  }
  b.recompute_dist();

  // Canonical renumbering: BFS from the root, frontier in discovery order and
  // edges in symbol order, so new ids sort by (distance, ShortLex word) and
  // each state's first discovery is its ShortLex normal form.
  std::vector<int32_t> remap(b.num_states(), -1);
  std::vector<int32_t> order;
  order.reserve(b.num_states());
  int32_t root = b.find(0);
  remap[root] = 0;
  order.push_back(root);
  ball_count_.assign(work_radius_ + 1, 0);
  parent_.assign(1, kIdentity);
  letter_.assign(1, kNoGen);
  for (size_t idx = 0; idx < order.size(); ++idx) {
    int32_t u = order[idx];
    for (Gen s = 0; s < nsym; ++s) {
      int32_t t = b.next[u * nsym + s];
      if (t < 0) continue;
      t = b.find(t);
      if (remap[t] >= 0) continue;
      remap[t] = static_cast<int32_t>(order.size());
      order.push_back(t);
      parent_.push_back(remap[u]);
      letter_.push_back(s);
    }
  }

  const int32_t n = static_cast<int32_t>(order.size());
  next_.assign(static_cast<size_t>(n) * nsym, -1);
  dist_.resize(n);
  for (int32_t id = 0; id < n; ++id) {
    int32_t u = order[id];
    dist_[id] = b.dist[u];
    for (Gen s = 0; s < nsym; ++s) {
      int32_t t = b.next[u * nsym + s];
      next_[id * nsym + s] = t < 0 ? -1 : remap[b.find(t)];
    }
  }
  for (int32_t id = 0; id < n; ++id) ++ball_count_[dist_[id]];
  for (int r = 1; r <= work_radius_; ++r) ball_count_[r] += ball_count_[r - 1];
}

std::vector<Elt> BallGroupContext::ball(int radius) const {
  int64_t n = ball_size(radius);
  std::vector<Elt> out(n);
  for (int64_t i = 0; i < n; ++i) out[i] = static_cast<Elt>(i);
  return out;
}

int64_t BallGroupContext::ball_size(int radius) const {
  if (radius < 0) return 0;
  if (radius > work_radius_)
    throw OutOfCertifiedBall("ball radius " + std::to_string(radius) +
                             " beyond working radius " + std::to_string(work_radius_));
  return ball_count_[radius];
}

// Level-synchronous bidirectional BFS. Returns min(d, cap + 1) where d is the
// graph distance inside the working ball. When fields are requested, both
// sides are expanded until their levels sum to the distance, so every vertex
// of every geodesic lands in one of the fields.
int BallGroupContext::bidir(Elt g, Elt h, int cap, std::unordered_map<Elt, int>* field_a,
                            std::unordered_map<Elt, int>* field_b) const {
  if (g == h) {
    if (field_a) (*field_a)[g] = 0;
    if (field_b) (*field_b)[h] = 0;
    return 0;
  }
  const int nsym = num_symbols();
  const size_t n = parent_.size();
  if (stamp_[0].size() != n) {
    stamp_[0].assign(n, 0);
    stamp_[1].assign(n, 0);
    level_[0].resize(n);
    level_[1].resize(n);
    epoch_ = 0;
  }
  ++epoch_;

  std::vector<Elt> frontier[2], touched[2];
  frontier[0].push_back(g);
  frontier[1].push_back(h);
  touched[0].push_back(g);
  touched[1].push_back(h);
  stamp_[0][g] = epoch_;
  level_[0][g] = 0;
  stamp_[1][h] = epoch_;
  level_[1][h] = 0;
  int depth[2] = {0, 0};
  int best = cap + 1;

  auto expand = [&](int side) {
    std::vector<Elt> following;
    for (Elt u : frontier[side]) {
      const int32_t* row = &next_[static_cast<size_t>(u) * nsym];
      for (Gen s = 0; s < nsym; ++s) {
        int32_t t = row[s];
        if (t < 0 || stamp_[side][t] == epoch_) continue;
        stamp_[side][t] = epoch_;
        level_[side][t] = static_cast<uint16_t>(depth[side] + 1);
        following.push_back(t);
        touched[side].push_back(t);
        if (stamp_[side ^ 1][t] == epoch_)
          best = std::min(best, depth[side] + 1 + level_[side ^ 1][t]);
      }
    }
    frontier[side] = std::move(following);
    ++depth[side];
  };

  while (depth[0] + depth[1] + 1 <= std::min(best - 1, cap)) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    if (frontier[side].empty()) side ^= 1;
    if (frontier[side].empty()) break;
    expand(side);
  }
  if (best > cap) return cap + 1;

  if (field_a && field_b) {
    // grow the lighter side until the levels meet the distance exactly, so
    // every vertex of every geodesic is covered by one of the two fields
    while (depth[0] + depth[1] < best) {
      int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
      if (frontier[side].empty()) side ^= 1;
      expand(side);
    }
    for (Elt u : touched[0]) (*field_a)[u] = level_[0][u];
    for (Elt u : touched[1]) (*field_b)[u] = level_[1][u];
  }
  return best;
}

int BallGroupContext::dist(Elt g, Elt h) const {
  return bidir(g, h, 2 * work_radius_, nullptr, nullptr);
}

int BallGroupContext::dist_capped(Elt g, Elt h, int cap) const {
  return bidir(g, h, std::min(cap, 2 * work_radius_), nullptr, nullptr);
}

GeodesicEnum BallGroupContext::geodesics(Elt g, Elt h, int max_count) const {
  GeodesicEnum out;
  if (g == h) {
    out.geodesics.push_back(Segment{0, {g}});
    out.total_count = 1;
    return out;
  }
  std::unordered_map<Elt, int> fa, fb;
  int d = bidir(g, h, 2 * work_radius_, &fa, &fb);
  if (d > 2 * work_radius_)
    throw OutOfCertifiedBall("no geodesic between " + word_str(g) + " and " + word_str(h) +
                             " within the working ball");
  const int nsym = num_symbols();
  int depth_a = 0;
  for (const auto& [u, lv] : fa) depth_a = std::max(depth_a, lv);

  // on-geodesic successor test: forward level from the side that covers it
  auto successors = [&](Elt u, int a) {
    std::vector<Elt> out_s;
    const int32_t* row = &next_[static_cast<size_t>(u) * nsym];
    for (Gen s = 0; s < nsym; ++s) {
      int32_t t = row[s];
      if (t < 0) continue;
      if (std::find(out_s.begin(), out_s.end(), t) != out_s.end()) continue;
      if (a + 1 <= depth_a) {
        auto it = fa.find(t);
        if (it != fa.end() && it->second == a + 1) out_s.push_back(t);
      } else {
        auto it = fb.find(t);
        if (it != fb.end() && it->second == d - a - 1) out_s.push_back(t);
      }
    }
    return out_s;
  };

  // exact path count by memoized DP over the geodesic DAG, saturating
  std::unordered_map<Elt, int64_t> memo;
  constexpr int64_t kSat = INT64_MAX / 2;
  auto count_from = [&](Elt u, int a, auto&& self) -> int64_t {
    if (a == d) return u == h ? 1 : 0;  // forward-field branches can die here
    int64_t key = (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(u);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int64_t total = 0;
    for (Elt v : successors(u, a)) {
      total += self(v, a + 1, self);
      if (total > kSat) total = kSat;
    }
    memo[key] = total;
    return total;
  };
  out.total_count = count_from(g, 0, count_from);

  // depth-first in symbol order: paths come out in ShortLex order
  std::vector<Elt> path{g};
  auto emit = [&](auto&& self) -> bool {
    int a = static_cast<int>(path.size()) - 1;
    if (a == d) {
      if (path.back() != h) return true;
      out.geodesics.push_back(Segment{0, path});
      return static_cast<int>(out.geodesics.size()) < max_count;
    }
    for (Elt v : successors(path.back(), a)) {
      path.push_back(v);
      bool more = self(self);
      path.pop_back();
      if (!more) return false;
    }
    return true;
  };
  emit(emit);
  out.truncated = out.total_count > static_cast<int64_t>(out.geodesics.size());
  return out;
}

}  // namespace bshadow
