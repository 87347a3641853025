#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zf/dp.hpp"

namespace zf::dp {

inline constexpr int kMaxKeyWords = (12 + 2 * kMaxBag * 4 + 7) / 8;

// Unpacked signature: tags, flag masks, and dep rows over 2*s events.
struct Raw {
  int s = 0;
  std::uint8_t gam[kMaxBag] = {};
  std::uint8_t phi[kMaxBag] = {};
  std::uint32_t bg = 0, bp = 0;
  std::uint32_t dep[2 * kMaxBag] = {};
};

int words_for(int s);
void pack(const Raw& r, std::uint64_t* out, int words);
void unpack(const std::uint64_t* in, int s, Raw& r);
std::uint64_t tag_bits(const Raw& r);

void close_rows(std::uint32_t* rows, int events);
bool rows_acyclic(const std::uint32_t* rows, int events);
/// Adds a -> b to closed rows, keeping them closed. False if a cycle appears.
bool add_arc_closed(std::uint32_t* rows, int events, int a, int b);
void bypass_rows(std::uint32_t* rows, int events, int pos);
void remove_position(Raw& r, int pos);
void insert_position(Raw& r, int pos);
int bottom_count(const Raw& r);
int chain_end_count(const Raw& r);

Raw to_raw(const Signature& s);
Signature from_raw(const Raw& r, const std::vector<Vertex>& bag, int weight);
std::vector<std::pair<Tag, Tag>> introduce_choices(RuleSet rs);

}  // namespace zf::dp
