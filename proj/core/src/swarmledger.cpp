// Copyright 2026 The Autosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "autosim/swarmledger.hpp"

#include <algorithm>
#include <tuple>

#include <openssl/hmac.h>
#include <openssl/sha.h>

namespace autosim {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest d{};
  SHA256(data.data(), data.size(), d.data());
  return d;
}

Digest hmac_sha256(const Key& key, std::span<const std::uint8_t> data) {
  Digest d{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), d.data(), &len);
  return d;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Key derive_key(std::string_view secret, std::string_view author) {
  std::string material = "autosim-psk:";
  material.append(secret).append(":").append(author);
  return sha256({reinterpret_cast<const std::uint8_t*>(material.data()), material.size()});
}

void encode_entity(ByteWriter& w, const Entity& e) {
  w.str(e.id);
  w.u8(static_cast<std::uint8_t>(e.kind));
  w.f64(e.position.x);
  w.f64(e.position.y);
  w.f64(e.velocity.x);
  w.f64(e.velocity.y);
  w.f64(e.heading);
  w.str(e.classification);
  w.f64(e.priority);
  w.u8(e.neutralized ? 1 : 0);
  w.i64(e.last_update_tick);
  w.str(e.author);
  w.f64(e.radius);
}

Entity decode_entity(ByteReader& r) {
  Entity e;
  e.id = r.str();
  const std::uint8_t kind = r.u8();
  if (kind >= kNumEntityKinds) throw DecodeError("entity kind out of range");
  e.kind = static_cast<EntityKind>(kind);
  e.position.x = r.f64();
  e.position.y = r.f64();
  e.velocity.x = r.f64();
  e.velocity.y = r.f64();
  e.heading = r.f64();
  e.classification = r.str();
  e.priority = r.f64();
  const std::uint8_t neutralized = r.u8();
  if (neutralized > 1) throw DecodeError("entity neutralized flag out of range");
  e.neutralized = neutralized == 1;
  e.last_update_tick = r.i64();
  e.author = r.str();
  e.radius = r.f64();
  return e;
}

std::vector<std::uint8_t> encode_block_body(const Block& b) {
  ByteWriter w;
  w.str(b.author);
  w.u64(b.seq);
  w.i64(b.tick);
  w.bytes(b.prev_hash);
  w.u32(static_cast<std::uint32_t>(b.payload.size()));
  for (const auto& e : b.payload) encode_entity(w, e);
  return w.take();
}

std::vector<std::uint8_t> encode_block(const Block& b) {
  auto out = encode_block_body(b);
  out.insert(out.end(), b.mac.begin(), b.mac.end());
  return out;
}

Block decode_block(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Block b;
  b.author = r.str();
  b.seq = r.u64();
  b.tick = r.i64();
  auto prev = r.bytes(32);
  std::copy(prev.begin(), prev.end(), b.prev_hash.begin());
  const std::uint32_t n = r.u32();
  if (n > r.remaining()) throw DecodeError("payload count exceeds input");
  b.payload.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) b.payload.push_back(decode_entity(r));
  auto mac = r.bytes(32);
  std::copy(mac.begin(), mac.end(), b.mac.begin());
  if (!r.done()) throw DecodeError("trailing bytes after block");
  return b;
}

Digest compute_mac(const Block& b, const Key& key) { return hmac_sha256(key, encode_block_body(b)); }

Digest block_hash(const Block& b) { return sha256(encode_block(b)); }

const Block& append_block(std::vector<Block>& chain, const std::string& author, std::vector<Entity> payload, Tick tick,
                          const Key& key) {
  Block b;
  b.author = author;
  if (!chain.empty()) {
    if (tick < chain.back().tick) {
      throw LedgerError("append_block: tick " + std::to_string(tick) + " precedes head tick " +
                        std::to_string(chain.back().tick));
    }
    b.seq = chain.back().seq + 1;
    b.prev_hash = block_hash(chain.back());
  }
  b.tick = tick;
  b.payload = std::move(payload);
  b.mac = compute_mac(b, key);
  chain.push_back(std::move(b));
  return chain.back();
}

std::string_view to_string(ChainFault f) {
  switch (f) {
    case ChainFault::kGap:
      return "gap";
    case ChainFault::kBadLink:
      return "bad_link";
    case ChainFault::kBadMac:
      return "bad_mac";
  }
  return "unknown";
}

namespace {

std::optional<FirstInvalid> check_block(const Block* prev, const Block& b, std::uint64_t position, const Key& key) {
  if (b.seq != position) return FirstInvalid{position, ChainFault::kGap};
  const Digest expected = prev == nullptr ? Digest{} : block_hash(*prev);
  if (b.prev_hash != expected) return FirstInvalid{position, ChainFault::kBadLink};
  if (compute_mac(b, key) != b.mac) return FirstInvalid{position, ChainFault::kBadMac};
  return std::nullopt;
}

}  // namespace

std::optional<FirstInvalid> verify_chain(std::span<const Block> blocks, const Key& key) {
  return verify_extension({}, blocks, key);
}

std::optional<FirstInvalid> verify_extension(std::span<const Block> base, std::span<const Block> incoming,
                                             const Key& key) {
  const Block* prev = base.empty() ? nullptr : &base.back();
  std::uint64_t position = base.size();
  for (const auto& b : incoming) {
    if (auto bad = check_block(prev, b, position, key)) return bad;
    prev = &b;
    ++position;
  }
  return std::nullopt;
}

const std::vector<Block>* ChainSet::chain(const std::string& author) const {
  auto it = chains_.find(author);
  return it == chains_.end() ? nullptr : &it->second;
}

std::map<std::string, HeadInfo> ChainSet::heads() const {
  std::map<std::string, HeadInfo> out;
  for (const auto& [author, blocks] : chains_) {
    if (blocks.empty()) continue;
    out[author] = {blocks.size(), block_hash(blocks.back())};
  }
  return out;
}

std::size_t ChainSet::block_count() const {
  std::size_t n = 0;
  for (const auto& [author, blocks] : chains_) n += blocks.size();
  return n;
}

const Block& ChainSet::append(const std::string& author, std::vector<Entity> payload, Tick tick, const Key& key) {
  return append_block(chains_[author], author, std::move(payload), tick, key);
}

std::optional<FirstInvalid> ChainSet::accept(const std::string& author, std::span<const Block> blocks,
                                             const Key& key) {
  auto& chain = chains_[author];
  std::size_t skip = 0;
  while (skip < blocks.size() && blocks[skip].seq < chain.size() && blocks[skip] == chain[blocks[skip].seq]) ++skip;
  const auto fresh = blocks.subspan(skip);
  for (const auto& b : fresh) {
    if (b.author != author) return FirstInvalid{b.seq, ChainFault::kBadMac};
  }
  if (auto bad = verify_extension(chain, fresh, key)) {
    if (chain.empty()) chains_.erase(author);
    return bad;
  }
  chain.insert(chain.end(), fresh.begin(), fresh.end());
  if (chain.empty()) chains_.erase(author);
  return std::nullopt;
}

std::vector<RangeRequest> missing_ranges(const ChainSet& local, const std::map<std::string, HeadInfo>& remote) {
  std::vector<RangeRequest> out;
  for (const auto& [author, head] : remote) {
    const auto* mine = local.chain(author);
    const std::uint64_t have = mine == nullptr ? 0 : mine->size();
    if (head.length > have) out.push_back({author, have, head.length - 1});
  }
  return out;
}

StateMap merge_into_statemap(const ChainSet& chains, StateMap base) {
  struct Item {
    Tick tick;
    const std::string* author;
    std::uint64_t seq;
    const Block* block;
  };
  std::vector<Item> items;
  for (const auto& [author, blocks] : chains.chains()) {
    for (const auto& b : blocks) items.push_back({b.tick, &author, b.seq, &b});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tie(a.tick, *a.author, a.seq) < std::tie(b.tick, *b.author, b.seq);
  });
  for (const auto& item : items) {
    for (const auto& e : item.block->payload) base.upsert(e);
  }
  return base;
}

std::vector<std::uint8_t> encode_message(const Message& m) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(m.type));
  w.str(m.sender);
  w.i64(m.tick);
  w.u32(static_cast<std::uint32_t>(m.body.size()));
  w.bytes(m.body);
  return w.take();
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Message m;
  const std::uint8_t type = r.u8();
  if (type < 1 || type > 3) throw DecodeError("unknown message type " + std::to_string(type));
  m.type = static_cast<MessageType>(type);
  m.sender = r.str();
  m.tick = r.i64();
  auto body = r.bytes(r.u32());
  m.body.assign(body.begin(), body.end());
  if (!r.done()) throw DecodeError("trailing bytes after message");
  return m;
}

std::vector<std::uint8_t> encode_heads(const std::map<std::string, HeadInfo>& heads) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(heads.size()));
  for (const auto& [author, h] : heads) {
    w.str(author);
    w.u64(h.length);
    w.bytes(h.head);
  }
  return w.take();
}

std::map<std::string, HeadInfo> decode_heads(std::span<const std::uint8_t> body) {
  ByteReader r(body);
  std::map<std::string, HeadInfo> out;
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string author = r.str();
    HeadInfo h;
    h.length = r.u64();
    auto d = r.bytes(32);
    std::copy(d.begin(), d.end(), h.head.begin());
    out.emplace(std::move(author), h);
  }
  if (!r.done()) throw DecodeError("trailing bytes after heads");
  return out;
}

std::vector<std::uint8_t> encode_requests(const std::vector<RangeRequest>& requests) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(requests.size()));
  for (const auto& q : requests) {
    w.str(q.author);
    w.u64(q.from);
    w.u64(q.to);
  }
  return w.take();
}

std::vector<RangeRequest> decode_requests(std::span<const std::uint8_t> body) {
  ByteReader r(body);
  std::vector<RangeRequest> out;
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    RangeRequest q;
    q.author = r.str();
    q.from = r.u64();
    q.to = r.u64();
    out.push_back(std::move(q));
  }
  if (!r.done()) throw DecodeError("trailing bytes after requests");
  return out;
}

std::vector<std::uint8_t> encode_blocks(const std::vector<Block>& blocks) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(blocks.size()));
  for (const auto& b : blocks) {
    auto bytes = encode_block(b);
    w.u32(static_cast<std::uint32_t>(bytes.size()));
    w.bytes(bytes);
  }
  return w.take();
}

std::vector<Block> decode_blocks(std::span<const std::uint8_t> body) {
  ByteReader r(body);
  std::vector<Block> out;
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(decode_block(r.bytes(r.u32())));
  if (!r.done()) throw DecodeError("trailing bytes after blocks");
  return out;
}

TransferResult accept_transfer(ChainSet& local, const std::vector<Block>& blocks, const KeyRing& keys) {
  TransferResult result;
  std::map<std::string, std::vector<Block>> grouped;
  for (const auto& b : blocks) grouped[b.author].push_back(b);
  for (auto& [author, group] : grouped) {
    std::stable_sort(group.begin(), group.end(), [](const Block& a, const Block& b) { return a.seq < b.seq; });
  }
  ChainSet staged = local;
  for (const auto& [author, group] : grouped) {
    const std::size_t before = staged.chain(author) == nullptr ? 0 : staged.chain(author)->size();
    if (auto bad = staged.accept(author, group, keys.key(author))) {
      result.quarantine_reason =
          author + " seq " + std::to_string(bad->seq) + ": " + std::string(to_string(bad->reason));
      result.accepted.clear();
      return result;
    }
    const auto* chain = staged.chain(author);
    if (chain != nullptr) result.accepted.insert(result.accepted.end(), chain->begin() + static_cast<long>(before),
                                                 chain->end());
  }
  local = std::move(staged);
  return result;
}

bool NetSim::connected(const std::string& a, const std::string& b, Tick tick) const {
  auto group_of = [](const PartitionWindow& w, const std::string& id) -> long {
    for (std::size_t g = 0; g < w.groups.size(); ++g) {
      if (std::find(w.groups[g].begin(), w.groups[g].end(), id) != w.groups[g].end()) return static_cast<long>(g);
    }
    return -1;
  };
  for (const auto& w : partitions) {
    if (tick < w.begin || tick >= w.end) continue;
    const long ga = group_of(w, a);
    if (ga < 0 || ga != group_of(w, b)) return false;
  }
  return true;
}

std::vector<PeerDelivery> sync_round(std::map<std::string, ChainSet>& peers, const KeyRing& keys, const NetSim& net,
                                     Tick tick, SyncStats* stats) {
  SyncStats local_stats;
  SyncStats& s = stats != nullptr ? *stats : local_stats;
  Rng rng = make_rng(net.seed, Stream::kNet, static_cast<std::uint64_t>(tick));
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // Encodes, routes and decodes one message; nullopt when it is lost.
  auto transmit = [&](const std::string& from, const std::string& to, MessageType type,
                      std::vector<std::uint8_t> body) -> std::optional<Message> {
    ++s.sent;
    const auto wire = encode_message({type, from, tick, std::move(body)});
    if (!net.connected(from, to, tick)) {
      ++s.partitioned;
      return std::nullopt;
    }
    if (net.drop_prob > 0.0 && u01(rng) < net.drop_prob) {
      ++s.dropped;
      return std::nullopt;
    }
    return decode_message(wire);
  };

  std::vector<PeerDelivery> out;
  for (auto& [sender_id, sender] : peers) {
    for (auto& [receiver_id, receiver] : peers) {
      if (sender_id == receiver_id) continue;
      auto heads_msg = transmit(sender_id, receiver_id, MessageType::kHeads, encode_heads(sender.heads()));
      if (!heads_msg) continue;
      const auto wanted = missing_ranges(receiver, decode_heads(heads_msg->body));
      if (wanted.empty()) continue;
      s.requests += wanted.size();
      auto request_msg = transmit(receiver_id, sender_id, MessageType::kRequest, encode_requests(wanted));
      if (!request_msg) continue;

      std::vector<Block> reply;
      for (const auto& q : decode_requests(request_msg->body)) {
        const auto* chain = sender.chain(q.author);
        if (chain == nullptr) continue;
        for (std::uint64_t i = q.from; i <= q.to && i < chain->size(); ++i) reply.push_back((*chain)[i]);
      }
      auto blocks_msg = transmit(sender_id, receiver_id, MessageType::kBlocks, encode_blocks(reply));
      if (!blocks_msg) continue;

      auto result = accept_transfer(receiver, decode_blocks(blocks_msg->body), keys);
      if (result.quarantine_reason) {
        ++s.quarantined;
        continue;
      }
      s.blocks_accepted += result.accepted.size();
      if (!result.accepted.empty()) out.push_back({receiver_id, std::move(result.accepted)});
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_dump(const LedgerDump& dump) {
  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("ASLD"), 4));
  w.u32(kLedgerDumpVersion);
  w.u32(static_cast<std::uint32_t>(dump.size()));
  for (const auto& [author, blocks] : dump) {
    w.str(author);
    w.u64(blocks.size());
    for (const auto& b : blocks) {
      auto bytes = encode_block(b);
      w.u32(static_cast<std::uint32_t>(bytes.size()));
      w.bytes(bytes);
    }
  }
  return w.take();
}

DecodedDump decode_dump(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), "ASLD")) throw DecodeError("not a ledger dump (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kLedgerDumpVersion) throw DecodeError("unsupported ledger dump version " + std::to_string(version));
  DecodedDump out;
  const std::uint32_t authors = r.u32();
  std::string author;
  std::uint64_t index = 0;
  try {
    for (std::uint32_t a = 0; a < authors; ++a) {
      author = r.str();
      index = 0;
      auto& chain = out.chains[author];
      const std::uint64_t n = r.u64();
      for (; index < n; ++index) chain.push_back(decode_block(r.bytes(r.u32())));
    }
    if (!r.done()) throw DecodeError("trailing bytes after last chain");
  } catch (const DecodeError& e) {
    out.fault = DumpFault{author, index, e.what()};
  }
  return out;
}

std::vector<LedgerFailure> verify_dump(std::span<const std::uint8_t> bytes, const KeyRing& keys) {
  if (bytes.empty()) return {};
  const DecodedDump dump = decode_dump(bytes);
  std::vector<LedgerFailure> failures;
  for (const auto& [author, blocks] : dump.chains) {
    if (auto bad = verify_chain(blocks, keys.key(author))) {
      failures.push_back({author, bad->seq, std::string(to_string(bad->reason))});
    } else if (dump.fault && dump.fault->author == author) {
      failures.push_back({author, dump.fault->seq, "bad_mac"});
    }
  }
  if (dump.fault && !dump.chains.contains(dump.fault->author)) {
    failures.push_back({dump.fault->author, dump.fault->seq, "bad_mac"});
  }
  return failures;
}

}  // namespace autosim
