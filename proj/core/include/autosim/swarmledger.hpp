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


// Per-author hash chains of state-map observations, MAC-authenticated with
// pre-shared keys, and the anti-entropy exchange that replicates them.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autosim/bytes.hpp"
#include "autosim/common.hpp"
#include "autosim/statemap.hpp"

namespace autosim {

using Digest = std::array<std::uint8_t, 32>;
using Key = Digest;

Digest sha256(std::span<const std::uint8_t> data);
Digest hmac_sha256(const Key& key, std::span<const std::uint8_t> data);
std::string to_hex(std::span<const std::uint8_t> bytes);

/// key = SHA-256("autosim-psk:" + secret + ":" + author).
Key derive_key(std::string_view secret, std::string_view author);

struct KeyRing {
  std::string secret = "autosim";
  [[nodiscard]] Key key(std::string_view author) const { return derive_key(secret, author); }
};

struct Block {
  std::string author;
  std::uint64_t seq = 0;
  Tick tick = 0;
  Digest prev_hash{};
  std::vector<Entity> payload;
  Digest mac{};
  bool operator==(const Block&) const = default;
};

void encode_entity(ByteWriter& w, const Entity& e);
Entity decode_entity(ByteReader& r);

/// Canonical encoding of every field except the MAC, in declaration order.
std::vector<std::uint8_t> encode_block_body(const Block& b);
/// Body followed by the 32-byte MAC.
std::vector<std::uint8_t> encode_block(const Block& b);
/// Inverse of encode_block; the input must be consumed exactly.
Block decode_block(std::span<const std::uint8_t> bytes);

Digest compute_mac(const Block& b, const Key& key);
/// SHA-256 of encode_block(b).
Digest block_hash(const Block& b);

class LedgerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Appends a block for `author`. Throws LedgerError when `tick` is below the
/// head block's tick.
const Block& append_block(std::vector<Block>& chain, const std::string& author, std::vector<Entity> payload, Tick tick,
                          const Key& key);

enum class ChainFault : std::uint8_t { kGap = 0, kBadLink, kBadMac };
std::string_view to_string(ChainFault f);

struct FirstInvalid {
  std::uint64_t seq = 0;  // position in the chain
  ChainFault reason = ChainFault::kGap;
  bool operator==(const FirstInvalid&) const = default;
};

/// Earliest failure checking, per block: seq contiguity, hash link, MAC.
std::optional<FirstInvalid> verify_chain(std::span<const Block> blocks, const Key& key);

/// Verifies `incoming` as a continuation of the verified chain `base`.
std::optional<FirstInvalid> verify_extension(std::span<const Block> base, std::span<const Block> incoming,
                                             const Key& key);

struct HeadInfo {
  std::uint64_t length = 0;
  Digest head{};
  bool operator==(const HeadInfo&) const = default;
};

struct RangeRequest {
  std::string author;
  std::uint64_t from = 0;  // inclusive
  std::uint64_t to = 0;    // inclusive
  bool operator==(const RangeRequest&) const = default;
};

/// One peer's replica of every author's chain.
class ChainSet {
 public:
  [[nodiscard]] const std::map<std::string, std::vector<Block>>& chains() const { return chains_; }
  [[nodiscard]] const std::vector<Block>* chain(const std::string& author) const;
  [[nodiscard]] std::map<std::string, HeadInfo> heads() const;
  [[nodiscard]] std::size_t block_count() const;

  const Block& append(const std::string& author, std::vector<Entity> payload, Tick tick, const Key& key);

  /// Verifies blocks (all by one author) against the local head and appends
  /// them atomically. Blocks already held are skipped if identical.
  std::optional<FirstInvalid> accept(const std::string& author, std::span<const Block> blocks, const Key& key);

  bool operator==(const ChainSet&) const = default;

 private:
  std::map<std::string, std::vector<Block>> chains_;
};

/// Ranges to request for every author where the remote chain is longer.
std::vector<RangeRequest> missing_ranges(const ChainSet& local, const std::map<std::string, HeadInfo>& remote);

/// Applies every payload observation in (tick, author, seq) order.
StateMap merge_into_statemap(const ChainSet& chains, StateMap base);

// ---------------------------------------------------------------------------
// Wire messages: u8 type, str sender, i64 tick, u32 body length, body.

enum class MessageType : std::uint8_t { kHeads = 1, kRequest = 2, kBlocks = 3 };

struct Message {
  MessageType type = MessageType::kHeads;
  std::string sender;
  Tick tick = 0;
  std::vector<std::uint8_t> body;
  bool operator==(const Message&) const = default;
};

std::vector<std::uint8_t> encode_message(const Message& m);
Message decode_message(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_heads(const std::map<std::string, HeadInfo>& heads);
std::map<std::string, HeadInfo> decode_heads(std::span<const std::uint8_t> body);
std::vector<std::uint8_t> encode_requests(const std::vector<RangeRequest>& requests);
std::vector<RangeRequest> decode_requests(std::span<const std::uint8_t> body);
std::vector<std::uint8_t> encode_blocks(const std::vector<Block>& blocks);
std::vector<Block> decode_blocks(std::span<const std::uint8_t> body);

struct TransferResult {
  std::vector<Block> accepted;  // in (author, seq) order
  std::optional<std::string> quarantine_reason;
};

/// Receives a BLOCKS transfer. Every author group must verify against the
/// local chains, otherwise nothing from the transfer is kept.
TransferResult accept_transfer(ChainSet& local, const std::vector<Block>& blocks, const KeyRing& keys);

// ---------------------------------------------------------------------------
// Simulated network.

struct PartitionWindow {
  Tick begin = 0;  // inclusive
  Tick end = 0;    // exclusive
  std::vector<std::vector<std::string>> groups;  // unlisted peers are isolated
};

struct NetSim {
  double drop_prob = 0.0;
  std::vector<PartitionWindow> partitions;
  std::uint64_t seed = 0;

  /// False when an active partition separates the two peers.
  [[nodiscard]] bool connected(const std::string& a, const std::string& b, Tick tick) const;
};

struct SyncStats {
  std::size_t sent = 0;
  std::size_t dropped = 0;
  std::size_t partitioned = 0;
  std::size_t requests = 0;
  std::size_t blocks_accepted = 0;
  std::size_t quarantined = 0;
};

struct PeerDelivery {
  std::string receiver;
  std::vector<Block> blocks;
};

/// One anti-entropy round: every ordered peer pair runs HEADS, REQUEST,
/// BLOCKS, each leg subject to partition and drop. Returns newly accepted
/// blocks per receiver in processing order.
std::vector<PeerDelivery> sync_round(std::map<std::string, ChainSet>& peers, const KeyRing& keys, const NetSim& net,
                                     Tick tick, SyncStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Ledger dump: "ASLD", u32 version, u32 author count, then per author
// str author, u64 block count, and per block u32 length + encode_block bytes.

inline constexpr std::uint32_t kLedgerDumpVersion = 1;

using LedgerDump = std::map<std::string, std::vector<Block>>;

std::vector<std::uint8_t> encode_dump(const LedgerDump& dump);

struct DumpFault {
  std::string author;
  std::uint64_t seq = 0;
  std::string message;
};

struct DecodedDump {
  LedgerDump chains;               // blocks decoded before any fault
  std::optional<DumpFault> fault;  // block that failed to decode
};

/// Throws DecodeError when the header is unreadable.
DecodedDump decode_dump(std::span<const std::uint8_t> bytes);

struct LedgerFailure {
  std::string author;
  std::uint64_t seq = 0;
  std::string reason;
};

/// Decodes and verifies every chain in a dump.
std::vector<LedgerFailure> verify_dump(std::span<const std::uint8_t> bytes, const KeyRing& keys);

}  // namespace autosim
