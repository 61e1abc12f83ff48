#pragma once

#include <map>

#include "monofl/subspace.hpp"

namespace monofl {

// Increasing, exhaustive filtration of Q^n by subspaces, stored as the map
// index -> value at the jump. Below the first jump the value is zero; the
// last jump value must be the full space. Indices between jumps take the
// value of the nearest jump below.
class Filtration {
 public:
  Filtration() : ambient_(0) {}

  static Filtration from_jumps(long ambient, const std::map<long, Subspace>& values) {
    Filtration f;
    f.ambient_ = ambient;
    Subspace prev = Subspace::zero(ambient);
    for (const auto& [idx, sub] : values) {
      if (sub.ambient() != ambient)
        fail(ErrorKind::invalid_input, "filtration value ambient mismatch");
      if (sub == prev) continue;  // not an actual jump
      if (!sub.contains(prev))
        fail(ErrorKind::invalid_input, "filtration is not monotone at index " + std::to_string(idx));
      f.jumps_.emplace(idx, sub);
      prev = sub;
    }
    if (!prev.is_full())
      fail(ErrorKind::invalid_input, "filtration does not exhaust the ambient space");
    return f;
  }

  static Filtration single_jump(long ambient, long index) {
    std::map<long, Subspace> values;
    values.emplace(index, Subspace::full(ambient));
    return from_jumps(ambient, values);
  }

  long ambient() const { return ambient_; }
  const std::map<long, Subspace>& jumps() const { return jumps_; }
  bool has_jumps() const { return !jumps_.empty(); }

  std::vector<long> jump_indices() const {
    std::vector<long> out;
    out.reserve(jumps_.size());
    for (const auto& [k, v] : jumps_) out.push_back(k);
    return out;
  }

  long min_jump() const {
    if (jumps_.empty()) fail(ErrorKind::domain, "filtration of the zero space has no jumps");
    return jumps_.begin()->first;
  }

  long max_jump() const {
    if (jumps_.empty()) fail(ErrorKind::domain, "filtration of the zero space has no jumps");
    return jumps_.rbegin()->first;
  }

  const Subspace& value_at(long p) const {
    auto it = jumps_.upper_bound(p);
    if (it == jumps_.begin()) {
      zero_cache_ = Subspace::zero(ambient_);
      return zero_cache_;
    }
    --it;
    return it->second;
  }

  // shift(s): new F_p = old F_{p - s}, so every jump moves up by s.
  Filtration shift(long s) const {
    Filtration f;
    f.ambient_ = ambient_;
    for (const auto& [idx, sub] : jumps_) f.jumps_.emplace(idx + s, sub);
    return f;
  }

  std::map<long, long> graded_dims() const {
    std::map<long, long> out;
    long prev = 0;
    for (const auto& [idx, sub] : jumps_) {
      out[idx] = sub.dim() - prev;
      prev = sub.dim();
    }
    return out;
  }

  // Filtration induced on a subspace S, written in S's own coordinates
  // (via the inclusion matrix built from S's canonical basis).
  Filtration induced_on_sub(const Subspace& s) const {
    RatMatrix incl = s.basis().transpose();  // coords in S -> ambient
    std::map<long, Subspace> values;
    for (const auto& [idx, sub] : jumps_) values.emplace(idx, sub.preimage_under(incl));
    if (s.dim() > 0 && values.empty())
      fail(ErrorKind::invalid_input, "induced filtration cannot exhaust");
    return from_jumps(s.dim(), values);
  }

  // Filtration induced on Q^n / S via the canonical quotient map.
  Filtration induced_on_quotient(const Subspace& s) const {
    RatMatrix proj = s.quotient_map();
    std::map<long, Subspace> values;
    for (const auto& [idx, sub] : jumps_) values.emplace(idx, sub.image_under(proj));
    return from_jumps(ambient_ - s.dim(), values);
  }

  bool operator==(const Filtration& o) const {
    return ambient_ == o.ambient_ && jumps_ == o.jumps_;
  }
  bool operator!=(const Filtration& o) const { return !(*this == o); }

  friend Filtration block_sum(const Filtration& f, const Filtration& g) {
    std::map<long, Subspace> values;
    for (const auto& [idx, sub] : f.jumps_)
      values.emplace(idx, monofl::block_sum(sub, g.value_at(idx)));
    for (const auto& [idx, sub] : g.jumps_)
      values.insert({idx, monofl::block_sum(f.value_at(idx), sub)});
    return from_jumps(f.ambient_ + g.ambient_, values);
  }

 private:
  long ambient_;
  std::map<long, Subspace> jumps_;
  mutable Subspace zero_cache_;
};

}  // namespace monofl
