#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bundlekit {

// Worlds are dense indices 0..n-1; a WorldSet is a bitmask over them.
using WorldSet = std::uint64_t;

inline constexpr int kMaxWorlds = 64;

constexpr WorldSet world_bit(int w) { return WorldSet{1} << w; }
constexpr bool ws_contains(WorldSet s, int w) { return (s >> w) & 1; }
constexpr WorldSet ws_full(int n) {
  return n >= kMaxWorlds ? ~WorldSet{0} : (WorldSet{1} << n) - 1;
}
constexpr bool ws_subset(WorldSet a, WorldSet b) { return (a & ~b) == 0; }
constexpr int ws_size(WorldSet s) { return std::popcount(s); }

inline std::vector<int> ws_elements(WorldSet s) {
  std::vector<int> out;
  while (s) {
    int w = std::countr_zero(s);
    out.push_back(w);
    s &= s - 1;
  }
  return out;
}

inline WorldSet ws_of(std::initializer_list<int> ws) {
  WorldSet s = 0;
  for (int w : ws) s |= world_bit(w);
  return s;
}

// Visits every subset of mask (including the empty set). Stops early and
// returns false if the visitor returns false.
template <typename F>
bool ws_for_each_subset(WorldSet mask, F&& fn) {
  WorldSet s = mask;
  for (;;) {
    if (!fn(s)) return false;
    if (s == 0) return true;
    s = (s - 1) & mask;
  }
}

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int position;
  ParseError(const std::string& msg, int pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

struct Caps {
  std::size_t max_nbh_pairs = std::size_t{1} << 20;
  int max_completion_dom = 16;
  std::size_t max_definable_sets = std::size_t{1} << 13;
};

}  // namespace bundlekit
