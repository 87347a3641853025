#include <algorithm>
#include <bit>
#include <cstring>
#include <unordered_map>

#include "dp_internal.hpp"
#include "zf/errors.hpp"

namespace zf::dp {

char tag_char(Tag t) {
  switch (t) {
    case Tag::Bot: return '_';
    case Tag::Z: return 'Z';
    case Tag::T: return 'T';
    case Tag::D: return 'D';
  }
  return '?';
}

// ---------------------------------------------------------------- row helpers

void close_rows(std::uint32_t* rows, int events) {
  for (int k = 0; k < events; ++k) {
    const std::uint32_t bit = 1U << k, rk = rows[k];
    for (int i = 0; i < events; ++i)
      if (rows[i] & bit) rows[i] |= rk;
  }
}

bool rows_acyclic(const std::uint32_t* rows, int events) {
  std::uint32_t copy[2 * kMaxBag];
  std::memcpy(copy, rows, sizeof(std::uint32_t) * static_cast<std::size_t>(events));
  close_rows(copy, events);
  for (int i = 0; i < events; ++i)
    if ((copy[i] >> i) & 1U) return false;
  return true;
}

bool add_arc_closed(std::uint32_t* rows, int events, int a, int b) {
  if (a == b || ((rows[b] >> a) & 1U)) return false;
  const std::uint32_t add = (1U << b) | rows[b];
  const std::uint32_t abit = 1U << a;
  for (int i = 0; i < events; ++i)
    if (i == a || (rows[i] & abit)) rows[i] |= add;
  return true;
}

void bypass_rows(std::uint32_t* rows, int events, int pos) {
  const int ge = gamma_event(pos), pe = phi_event(pos);
  std::uint32_t members = (1U << ge) | (1U << pe);
  members |= rows[ge] | rows[pe];
  for (int i = 0; i < events; ++i)
    if (((rows[i] >> ge) & 1U) || ((rows[i] >> pe) & 1U)) members |= 1U << i;
  std::uint32_t sub[2 * kMaxBag] = {};
  for (int i = 0; i < events; ++i)
    if ((members >> i) & 1U) sub[i] = rows[i] & members;
  close_rows(sub, events);
  for (int i = 0; i < events; ++i) rows[i] |= sub[i];
}

namespace {

inline std::uint32_t drop_two_bits(std::uint32_t row, int at) {
  const std::uint32_t low = row & ((1U << at) - 1U);
  return low | ((at + 2 >= 32 ? 0U : (row >> (at + 2))) << at);
}

inline std::uint32_t insert_two_bits(std::uint32_t row, int at) {
  const std::uint32_t low = row & ((1U << at) - 1U);
  return low | (at + 2 >= 32 ? 0U : ((row >> at) << (at + 2)));
}

}  // namespace

void remove_position(Raw& r, int pos) {
  for (int q = pos; q + 1 < r.s; ++q) {
    r.gam[q] = r.gam[q + 1];
    r.phi[q] = r.phi[q + 1];
  }
  auto drop_bit = [pos](std::uint32_t m) {
    return (m & ((1U << pos) - 1U)) | ((m >> (pos + 1)) << pos);
  };
  r.bg = drop_bit(r.bg);
  r.bp = drop_bit(r.bp);
  const int events = 2 * r.s;
  int out = 0;
  for (int e = 0; e < events; ++e) {
    if (e == gamma_event(pos) || e == phi_event(pos)) continue;
    r.dep[out++] = drop_two_bits(r.dep[e], 2 * pos);
  }
  r.dep[out] = r.dep[out + 1] = 0;
  --r.s;
  r.gam[r.s] = r.phi[r.s] = 0;
}

void insert_position(Raw& r, int pos) {
  for (int q = r.s; q > pos; --q) {
    r.gam[q] = r.gam[q - 1];
    r.phi[q] = r.phi[q - 1];
  }
  r.gam[pos] = r.phi[pos] = 0;
  auto add_bit = [pos](std::uint32_t m) { return (m & ((1U << pos) - 1U)) | ((m >> pos) << (pos + 1)); };
  r.bg = add_bit(r.bg);
  r.bp = add_bit(r.bp);
  const int events = 2 * r.s;
  for (int e = events - 1; e >= 0; --e) {
    int ne = e < 2 * pos ? e : e + 2;
    r.dep[ne] = insert_two_bits(r.dep[e], 2 * pos);
  }
  r.dep[gamma_event(pos)] = r.dep[phi_event(pos)] = 0;
  ++r.s;
}

int bottom_count(const Raw& r) {
  int c = 0;
  for (int q = 0; q < r.s; ++q) c += r.gam[q] == 0;
  return c;
}

int chain_end_count(const Raw& r) {
  int c = 0;
  for (int q = 0; q < r.s; ++q) c += r.phi[q] == 0;
  return c;
}

// ------------------------------------------------------------------ packing

// Key layout: 8 bytes of tags, 4 bytes of flags, then 2s dependency rows in
// 1-, 2- or 4-byte lanes depending on the bag size.

namespace {

constexpr int kHeaderBytes = 12;

inline int lane_bytes(int s) { return s <= 4 ? 1 : s <= 8 ? 2 : 4; }

template <typename Lane>
void put_rows(const std::uint32_t* rows, int events, unsigned char* dst) {
  Lane tmp[2 * kMaxBag];
  for (int e = 0; e < events; ++e) tmp[e] = static_cast<Lane>(rows[e]);
  std::memcpy(dst, tmp, sizeof(Lane) * static_cast<std::size_t>(events));
}

template <typename Lane>
void get_rows(const unsigned char* src, int events, std::uint32_t* rows) {
  Lane tmp[2 * kMaxBag];
  std::memcpy(tmp, src, sizeof(Lane) * static_cast<std::size_t>(events));
  for (int e = 0; e < events; ++e) rows[e] = tmp[e];
}

}  // namespace

int words_for(int s) { return (kHeaderBytes + 2 * s * lane_bytes(s) + 7) / 8; }

void pack(const Raw& r, std::uint64_t* out, int words) {
  std::fill(out, out + words, 0ULL);
  std::uint64_t tags = 0;
  for (int q = 0; q < r.s; ++q)
    tags |= static_cast<std::uint64_t>(r.gam[q]) << (2 * q) | static_cast<std::uint64_t>(r.phi[q]) << (2 * q + 32);
  const std::uint32_t flags = r.bg | (r.bp << 16);
  auto* bytes = reinterpret_cast<unsigned char*>(out);
  std::memcpy(bytes, &tags, 8);
  std::memcpy(bytes + 8, &flags, 4);
  const int events = 2 * r.s;
  switch (lane_bytes(r.s)) {
    case 1: put_rows<std::uint8_t>(r.dep, events, bytes + kHeaderBytes); break;
    case 2: put_rows<std::uint16_t>(r.dep, events, bytes + kHeaderBytes); break;
    default: put_rows<std::uint32_t>(r.dep, events, bytes + kHeaderBytes); break;
  }
}

void unpack(const std::uint64_t* in, int s, Raw& r) {
  r.s = s;
  const auto* bytes = reinterpret_cast<const unsigned char*>(in);
  std::uint64_t tags;
  std::uint32_t flags;
  std::memcpy(&tags, bytes, 8);
  std::memcpy(&flags, bytes + 8, 4);
  for (int q = 0; q < s; ++q) {
    r.gam[q] = static_cast<std::uint8_t>((tags >> (2 * q)) & 3U);
    r.phi[q] = static_cast<std::uint8_t>((tags >> (2 * q + 32)) & 3U);
  }
  r.bg = flags & 0xFFFFU;
  r.bp = flags >> 16;
  const int events = 2 * s;
  switch (lane_bytes(s)) {
    case 1: get_rows<std::uint8_t>(bytes + kHeaderBytes, events, r.dep); break;
    case 2: get_rows<std::uint16_t>(bytes + kHeaderBytes, events, r.dep); break;
    default: get_rows<std::uint32_t>(bytes + kHeaderBytes, events, r.dep); break;
  }
}

std::uint64_t tag_bits(const Raw& r) {
  std::uint64_t k = 0;
  for (int q = 0; q < r.s; ++q) k |= static_cast<std::uint64_t>(r.gam[q] | (r.phi[q] << 2)) << (4 * q);
  return k;
}

// ------------------------------------------------------------ DepGraph / API

DepGraph::DepGraph(std::vector<Vertex> bag_) : bag(std::move(bag_)), rows(2 * bag.size(), 0) {
  if (bag.size() > static_cast<std::size_t>(kMaxBag)) throw ResourceExhausted("bag exceeds signature limit");
}

bool DepGraph::acyclic() const { return rows_acyclic(rows.data(), static_cast<int>(rows.size())); }

DepGraph DepGraph::closure() const {
  DepGraph out = *this;
  close_rows(out.rows.data(), static_cast<int>(out.rows.size()));
  return out;
}

DepGraph bypass(const DepGraph& dep, Vertex v) {
  auto it = std::find(dep.bag.begin(), dep.bag.end(), v);
  if (it == dep.bag.end()) throw InvalidInput("bypass: vertex not in bag");
  const int pos = static_cast<int>(it - dep.bag.begin());
  Raw r;
  r.s = static_cast<int>(dep.bag.size());
  std::copy(dep.rows.begin(), dep.rows.end(), r.dep);
  bypass_rows(r.dep, 2 * r.s, pos);
  remove_position(r, pos);
  std::vector<Vertex> bag = dep.bag;
  bag.erase(bag.begin() + pos);
  DepGraph out(std::move(bag));
  std::copy(r.dep, r.dep + 2 * r.s, out.rows.begin());
  return out;
}

int Signature::position(Vertex v) const {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  return it != bag.end() && *it == v ? static_cast<int>(it - bag.begin()) : -1;
}

Raw to_raw(const Signature& s) {
  Raw r;
  r.s = static_cast<int>(s.bag.size());
  if (r.s > kMaxBag) throw ResourceExhausted("bag exceeds signature limit");
  for (int q = 0; q < r.s; ++q) {
    r.gam[q] = static_cast<std::uint8_t>(s.gamma[static_cast<std::size_t>(q)]);
    r.phi[q] = static_cast<std::uint8_t>(s.phi[static_cast<std::size_t>(q)]);
    if (s.b_gamma[static_cast<std::size_t>(q)]) r.bg |= 1U << q;
    if (s.b_phi[static_cast<std::size_t>(q)]) r.bp |= 1U << q;
  }
  std::copy(s.dep.rows.begin(), s.dep.rows.end(), r.dep);
  return r;
}

Signature from_raw(const Raw& r, const std::vector<Vertex>& bag, int weight) {
  Signature s;
  s.bag = bag;
  s.dep = DepGraph(bag);
  s.weight = weight;
  for (int q = 0; q < r.s; ++q) {
    s.gamma.push_back(static_cast<Tag>(r.gam[q]));
    s.phi.push_back(static_cast<Tag>(r.phi[q]));
    s.b_gamma.push_back((r.bg >> q) & 1U);
    s.b_phi.push_back((r.bp >> q) & 1U);
  }
  std::copy(r.dep, r.dep + 2 * r.s, s.dep.rows.begin());
  return s;
}

// ------------------------------------------------------------------- table

SignatureTable::SignatureTable(std::vector<Vertex> bag) : bag_(std::move(bag)) {
  if (bag_.size() > static_cast<std::size_t>(kMaxBag))
    throw ResourceExhausted("bag of size " + std::to_string(bag_.size()) + " exceeds the limit of " +
                            std::to_string(kMaxBag));
  words_ = words_for(static_cast<int>(bag_.size()));
  slots_.assign(16, -1);
}

std::size_t SignatureTable::hash_key(const std::uint64_t* k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < words_; ++i) {
    h ^= k[i];
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

void SignatureTable::grow() {
  std::vector<std::int32_t> fresh(slots_.size() * 2, -1);
  const std::size_t mask = fresh.size() - 1;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    std::size_t h = hash_key(key(i)) & mask;
    while (fresh[h] != -1) h = (h + 1) & mask;
    fresh[h] = static_cast<std::int32_t>(i);
  }
  slots_ = std::move(fresh);
}

bool SignatureTable::insert_packed(const std::uint64_t* k, int weight, int ends, const Provenance& p, bool dedup) {
  if (dedup) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = hash_key(k) & mask;
    while (slots_[h] != -1) {
      auto idx = static_cast<std::size_t>(slots_[h]);
      if (std::equal(k, k + words_, key(idx))) {
        if (weight < weights_[idx]) {
          weights_[idx] = weight;
          ends_[idx] = ends;
          prov_[idx] = p;
          return true;
        }
        return false;
      }
      h = (h + 1) & mask;
    }
    slots_[h] = static_cast<std::int32_t>(weights_.size());
  }
  keys_.insert(keys_.end(), k, k + words_);
  weights_.push_back(weight);
  ends_.push_back(ends);
  prov_.push_back(p);
  if (dedup && weights_.size() * 2 > slots_.size()) grow();
  return true;
}

bool SignatureTable::insert(const Signature& s, const Provenance& p, bool dedup) {
  if (s.bag != bag_) throw InvalidInput("signature bag differs from table bag");
  Raw r = to_raw(s);
  std::vector<std::uint64_t> k(static_cast<std::size_t>(words_));
  pack(r, k.data(), words_);
  return insert_packed(k.data(), s.weight, 0, p, dedup);
}

long SignatureTable::find(const Signature& s) const {
  Raw r = to_raw(s);
  std::vector<std::uint64_t> k(static_cast<std::size_t>(words_));
  pack(r, k.data(), words_);
  for (std::size_t i = 0; i < size(); ++i)
    if (std::equal(k.begin(), k.end(), key(i))) return static_cast<long>(i);
  return -1;
}

Signature SignatureTable::get(std::size_t i) const {
  Raw r;
  unpack(key(i), static_cast<int>(bag_.size()), r);
  return from_raw(r, bag_, weights_[i]);
}

void SignatureTable::release() {
  std::vector<std::uint64_t>().swap(keys_);
  std::vector<std::int32_t>().swap(weights_);
  std::vector<std::int32_t>().swap(ends_);
  std::vector<Provenance>().swap(prov_);
  std::vector<std::int32_t>(16, -1).swap(slots_);
}

struct TableAccess {
  static bool insert(SignatureTable& t, const Raw& r, int weight, int ends, const Provenance& p,
                     const DpOptions& opt) {
    if (opt.weight_cap) {
      if (weight + bottom_count(r) > *opt.weight_cap) return false;
      if (opt.chain_end_bound && ends + chain_end_count(r) > *opt.weight_cap) return false;
    }
    std::uint64_t k[kMaxKeyWords];
    pack(r, k, t.words_);
    bool changed = t.insert_packed(k, weight, ends, p, opt.dedup);
    if (t.size() > opt.max_table)
      throw ResourceExhausted("signature table exceeded " + std::to_string(opt.max_table) + " entries");
    return changed;
  }
};

// ------------------------------------------------------------- transitions

SignatureTable drop_dominated(const SignatureTable& t) {
  const int s = static_cast<int>(t.bag().size()), events = 2 * s;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> groups;
  std::vector<Raw> raws(t.size());
  std::vector<int> arcs(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    unpack(t.key(i), s, raws[i]);
    const Raw& r = raws[i];
    for (int e = 0; e < events; ++e) arcs[i] += std::popcount(r.dep[e]);
    groups[tag_bits(r) * 0x9e3779b97f4a7c15ULL ^ (r.bg | (r.bp << 16))]
        .push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<char> keep(t.size(), 1);
  for (auto& [hdr, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::tie(arcs[a], t.weights_[a], a) < std::tie(arcs[b], t.weights_[b], b);
    });
    std::vector<std::uint32_t> kept;
    for (std::uint32_t c : members) {
      const Raw& rc = raws[c];
      bool dominated = false;
      for (std::uint32_t k : kept) {
        const Raw& rk = raws[k];
        if (t.weights_[k] > t.weights_[c] || rk.bg != rc.bg || rk.bp != rc.bp) continue;
        bool same_tags = true;
        for (int q = 0; q < s && same_tags; ++q) same_tags = rk.gam[q] == rc.gam[q] && rk.phi[q] == rc.phi[q];
        if (!same_tags) continue;
        bool subset = true;
        for (int e = 0; e < events && subset; ++e) subset = (rk.dep[e] & ~rc.dep[e]) == 0;
        if (subset) {
          dominated = true;
          break;
        }
      }
      if (dominated) keep[c] = 0;
      else kept.push_back(c);
    }
  }
  SignatureTable out(t.bag());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (keep[i]) out.insert_packed(t.key(i), t.weights_[i], t.ends_[i], t.prov_[i], false);
  return out;
}

SignatureTable process_leaf() {
  SignatureTable t;
  Raw r;
  TableAccess::insert(t, r, 0, 0, {}, DpOptions{});
  return t;
}

namespace {

constexpr bool excluded(std::uint8_t gam, std::uint8_t phi) {
  using enum Tag;
  auto is = [](std::uint8_t x, Tag t) { return x == static_cast<std::uint8_t>(t); };
  return (is(gam, T) && is(phi, T)) || (is(gam, D) && is(phi, Z)) || (is(gam, Bot) && is(phi, T)) ||
         (is(gam, Z) && is(phi, D)) || (is(gam, T) && is(phi, D)) || (is(gam, Bot) && is(phi, D)) ||
         (is(gam, D) && is(phi, Bot));
}

}  // namespace

std::vector<std::pair<Tag, Tag>> introduce_choices(RuleSet rs) {
  std::vector<std::uint8_t> tags{0};
  if (rs.has(RuleKind::Z)) tags.push_back(1);
  if (rs.has(RuleKind::T)) tags.push_back(2);
  if (rs.has(RuleKind::D)) tags.push_back(3);
  std::vector<std::pair<Tag, Tag>> out;
  for (auto gam : tags)
    for (auto phi : tags)
      if (!excluded(gam, phi)) out.emplace_back(static_cast<Tag>(gam), static_cast<Tag>(phi));
  return out;
}

SignatureTable process_introduce(const SignatureTable& child, Vertex v, RuleSet rs, const DpOptions& opt) {
  std::vector<Vertex> bag = child.bag();
  if (std::binary_search(bag.begin(), bag.end(), v)) throw InvalidInput("introduced vertex already in bag");
  auto at = std::upper_bound(bag.begin(), bag.end(), v);
  const int pos = static_cast<int>(at - bag.begin());
  bag.insert(at, v);
  SignatureTable out(bag);
  const auto choices = introduce_choices(rs);
  const int child_s = static_cast<int>(child.bag().size());
  for (std::size_t i = 0; i < child.size(); ++i) {
    Raw base;
    unpack(child.key(i), child_s, base);
    insert_position(base, pos);
    for (auto [gam, phi] : choices) {
      Raw r = base;
      r.gam[pos] = static_cast<std::uint8_t>(gam);
      r.phi[pos] = static_cast<std::uint8_t>(phi);
      if (gam == Tag::D || gam == Tag::Bot) r.bg |= 1U << pos;
      if (phi == Tag::D || phi == Tag::Bot) r.bp |= 1U << pos;
      if (phi == Tag::Z) r.dep[gamma_event(pos)] |= 1U << phi_event(pos);
      if (phi == Tag::T || phi == Tag::D) r.dep[phi_event(pos)] |= 1U << gamma_event(pos);
      Provenance p;
      p.child[0] = static_cast<std::int32_t>(i);
      TableAccess::insert(out, r, child.weight(i), child.chain_ends(i), p, opt);
    }
  }
  return out;
}

SignatureTable process_rule(const SignatureTable& child, Vertex v, const Graph& g, const DpOptions& opt) {
  const auto& bag = child.bag();
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) throw InvalidInput("rule vertex not in bag");
  const int p = static_cast<int>(it - bag.begin());
  const int s = static_cast<int>(bag.size()), events = 2 * s;
  std::vector<int> nb;
  for (int q = 0; q < s; ++q)
    if (q != p && g.adjacent(bag[static_cast<std::size_t>(q)], v)) nb.push_back(q);

  SignatureTable out(bag);
  std::vector<int> fs, gs;
  for (std::size_t i = 0; i < child.size(); ++i) {
    Raw r;
    unpack(child.key(i), s, r);
    const std::uint8_t gv = r.gam[p], pv = r.phi[p];
    fs.clear();
    gs.clear();
    if ((r.bg >> p) & 1U) fs.push_back(-1);
    else
      for (int q : nb)
        if (r.phi[q] == gv && !((r.bp >> q) & 1U)) fs.push_back(q);
    if ((r.bp >> p) & 1U) gs.push_back(-1);
    else
      for (int q : nb)
        if (r.gam[q] == pv && !((r.bg >> q) & 1U)) gs.push_back(q);

    for (int f : fs)
      for (int gg : gs) {
        Raw t = r;
        std::pair<int, int> arcs[2 * kMaxBag + 4];
        int na = 0;
        if (f >= 0) {
          arcs[na++] = {phi_event(f), gamma_event(p)};
          t.bg |= 1U << p;
          t.bp |= 1U << f;
          if (pv == static_cast<std::uint8_t>(Tag::T)) arcs[na++] = {phi_event(p), phi_event(f)};
        }
        if (gg >= 0) {
          arcs[na++] = {phi_event(p), gamma_event(gg)};
          t.bg |= 1U << gg;
          t.bp |= 1U << p;
          if (t.phi[gg] == static_cast<std::uint8_t>(Tag::T)) arcs[na++] = {phi_event(gg), phi_event(p)};
        }
        for (int w : nb)
          if (w != f && t.phi[w] != 0) arcs[na++] = {gamma_event(p), phi_event(w)};
        if (pv != 0)
          for (int w : nb)
            if (w != gg) arcs[na++] = {gamma_event(w), phi_event(p)};
        bool ok = true;
        if (opt.normalize_closure) {
          for (int a = 0; a < na && ok; ++a) ok = add_arc_closed(t.dep, events, arcs[a].first, arcs[a].second);
        } else {
          for (int a = 0; a < na; ++a) t.dep[arcs[a].first] |= 1U << arcs[a].second;
          ok = rows_acyclic(t.dep, events);
        }
        if (!ok) continue;
        Provenance prov;
        prov.child[0] = static_cast<std::int32_t>(i);
        prov.f = f >= 0 ? bag[static_cast<std::size_t>(f)] : -1;
        prov.g = gg >= 0 ? bag[static_cast<std::size_t>(gg)] : -1;
        TableAccess::insert(out, t, child.weight(i), child.chain_ends(i), prov, opt);
      }
  }
  return out;
}

SignatureTable process_forget(const SignatureTable& child, Vertex v, const DpOptions& opt) {
  std::vector<Vertex> bag = child.bag();
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  if (it == bag.end() || *it != v) throw InvalidInput("forgotten vertex not in bag");
  const int p = static_cast<int>(it - bag.begin());
  const int s = static_cast<int>(bag.size());
  bag.erase(it);
  SignatureTable out(bag);
  for (std::size_t i = 0; i < child.size(); ++i) {
    Raw r;
    unpack(child.key(i), s, r);
    if (!((r.bg >> p) & 1U) || !((r.bp >> p) & 1U)) continue;
    const int weight = child.weight(i) + (r.gam[p] == 0 ? 1 : 0);
    const int ends = child.chain_ends(i) + (r.phi[p] == 0 ? 1 : 0);
    // closed rows already hold every path through v's events
    if (!opt.normalize_closure) bypass_rows(r.dep, 2 * s, p);
    remove_position(r, p);
    Provenance prov;
    prov.child[0] = static_cast<std::int32_t>(i);
    TableAccess::insert(out, r, weight, ends, prov, opt);
  }
  return out;
}

SignatureTable process_join(const SignatureTable& left, const SignatureTable& right, const DpOptions& opt) {
  if (left.bag() != right.bag()) throw InvalidInput("join children have different bags");
  const int s = static_cast<int>(left.bag().size()), events = 2 * s;
  SignatureTable out(left.bag());
  std::vector<Raw> rights(right.size());
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> groups;
  for (std::size_t j = 0; j < right.size(); ++j) {
    unpack(right.key(j), s, rights[j]);
    groups[tag_bits(rights[j])].push_back(static_cast<std::int32_t>(j));
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    Raw a;
    unpack(left.key(i), s, a);
    auto grp = groups.find(tag_bits(a));
    if (grp == groups.end()) continue;
    // flags that hold from the introduction on are shared by both sides
    std::uint32_t init_g = 0, init_p = 0;
    for (int q = 0; q < s; ++q) {
      if (a.gam[q] == 0 || a.gam[q] == 3) init_g |= 1U << q;
      if (a.phi[q] == 0 || a.phi[q] == 3) init_p |= 1U << q;
    }
    for (std::int32_t j : grp->second) {
      const Raw& b = rights[static_cast<std::size_t>(j)];
      if ((a.bg & b.bg & ~init_g) || (a.bp & b.bp & ~init_p)) continue;
      Raw m = a;
      m.bg |= b.bg;
      m.bp |= b.bp;
      for (int e = 0; e < events; ++e) m.dep[e] |= b.dep[e];
      if (opt.normalize_closure) {
        close_rows(m.dep, events);
        bool ok = true;
        for (int e = 0; e < events && ok; ++e) ok = !((m.dep[e] >> e) & 1U);
        if (!ok) continue;
      } else if (!rows_acyclic(m.dep, events)) {
        continue;
      }
      Provenance prov;
      prov.child[0] = static_cast<std::int32_t>(i);
      prov.child[1] = j;
      TableAccess::insert(out, m, left.weight(i) + right.weight(static_cast<std::size_t>(j)),
                          left.chain_ends(i) + right.chain_ends(static_cast<std::size_t>(j)), prov, opt);
    }
  }
  return out;
}

}  // namespace zf::dp
