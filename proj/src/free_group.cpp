#include "bshadow/free_group.hpp"

#include <algorithm>

#include "bshadow/errors.hpp"

namespace bshadow {

FreeGroupContext::FreeGroupContext(GeneratorAlphabet alphabet)
    : GroupContext(std::move(alphabet)) {
  parent_.push_back(-1);
  letter_.push_back(kNoGen);
  depth_.push_back(0);
}

Elt FreeGroupContext::intern_child(Elt g, Gen s) const {
  uint64_t key = (static_cast<uint64_t>(g) << 5) | static_cast<uint64_t>(s);
  auto it = child_.find(key);
  if (it != child_.end()) return it->second;
  Elt id = static_cast<Elt>(parent_.size());
  parent_.push_back(g);
  letter_.push_back(s);
  depth_.push_back(depth_[g] + 1);
  child_.emplace(key, id);
  return id;
}

Elt FreeGroupContext::try_step(Elt g, Gen s) const {
  if (letter_[g] == alphabet().inverse(s)) return parent_[g];
  return intern_child(g, s);
}

int FreeGroupContext::dist(Elt g, Elt h) const {
  int l = common_prefix(g, h);
  return (depth_[g] - l) + (depth_[h] - l);
}

int FreeGroupContext::dist_capped(Elt g, Elt h, int cap) const {
  return std::min(dist(g, h), cap + 1);
}

int FreeGroupContext::common_prefix(Elt g, Elt h) const {
  while (depth_[g] > depth_[h]) g = parent_[g];
  while (depth_[h] > depth_[g]) h = parent_[h];
  while (g != h) {
    g = parent_[g];
    h = parent_[h];
  }
  return depth_[g];
}

std::vector<Elt> FreeGroupContext::ball(int radius) const {
  std::vector<Elt> out{kIdentity};
  size_t level_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i) {
      Elt g = out[i];
      for (Gen s = 0; s < num_symbols(); ++s) {
        if (letter_[g] != kNoGen && s == alphabet().inverse(letter_[g])) continue;
        out.push_back(intern_child(g, s));
      }
    }
    level_begin = level_end;
  }
  return out;
}

int64_t FreeGroupContext::ball_size(int radius) const {
  int64_t n = num_symbols(), total = 1, sphere = n;
  for (int r = 1; r <= radius; ++r) {
    total += sphere;
    sphere *= n - 1;
  }
  return total;
}

GeodesicEnum FreeGroupContext::geodesics(Elt g, Elt h, int max_count) const {
  // unique in a tree: climb from g to the common prefix, then descend to h
  GeodesicEnum out;
  out.total_count = 1;
  Segment seg;
  seg.start = 0;
  int l = common_prefix(g, h);
  for (Elt x = g; depth_[x] > l; x = parent_[x]) seg.values.push_back(x);
  std::vector<Elt> down;
  for (Elt x = h; depth_[x] > l; x = parent_[x]) down.push_back(x);
  Elt meet = g;
  while (depth_[meet] > l) meet = parent_[meet];
  seg.values.push_back(meet);
  seg.values.insert(seg.values.end(), down.rbegin(), down.rend());
  if (max_count >= 1) out.geodesics.push_back(std::move(seg));
  return out;
}

}  // namespace bshadow
