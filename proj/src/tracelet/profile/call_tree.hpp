// Copyright 2026 The Tracelet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "tracelet/common/types.hpp"

namespace tracelet::profile {

// Call-path tree keyed by the exact sequence of region ids from the root.
// Recursion is not folded: every observed path gets its own node.
class CallTree {
 public:
  using NodeIndex = std::uint32_t;
  static constexpr NodeIndex kRoot = 0;

  struct Node {
    RegionId region;  // meaningless for the root
    NodeIndex parent = kRoot;
    std::uint64_t visits = 0;
    std::uint64_t inclusive_ns = 0;
    std::vector<NodeIndex> children;
  };

  CallTree();

  // Returns the child of parent for region, creating it if absent.
  NodeIndex child(NodeIndex parent, RegionId region);

  const Node& node(NodeIndex index) const { return nodes_[index]; }
  Node& node(NodeIndex index) { return nodes_[index]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::uint64_t exclusive_ns(NodeIndex index) const;

  // Adds visits and inclusive time of every path in other to this tree.
  void merge(const CallTree& other);

 private:
  static std::uint64_t key(NodeIndex parent, RegionId region) noexcept {
    return (static_cast<std::uint64_t>(parent) << 32) | region.value;
  }
  void merge_subtree(const CallTree& other, NodeIndex from, NodeIndex into);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, NodeIndex> index_;
};

// Online aggregation for one location. Callers guarantee well-nested input:
// exit() always names the region on top of the cursor's stack.
class Cursor {
 public:
  void enter(RegionId region, Timestamp ts);
  void exit(RegionId region, Timestamp ts);

  // Closes every open frame at ts, innermost first. Returns how many.
  std::size_t close_open(Timestamp ts);

  std::size_t depth() const noexcept { return stack_.size(); }
  const CallTree& tree() const noexcept { return tree_; }
  CallTree release() && { return std::move(tree_); }

 private:
  struct Frame {
    CallTree::NodeIndex node;
    Timestamp entered;
  };

  CallTree tree_;
  std::vector<Frame> stack_;
};

struct ProfileNode {
  RegionId region;
  std::uint64_t visits = 0;
  std::uint64_t inclusive_ns = 0;
  std::uint64_t exclusive_ns = 0;
  std::vector<ProfileNode> children;

  bool operator==(const ProfileNode&) const = default;
};

struct LocationProfile {
  LocationId location;
  std::string label;
  std::vector<ProfileNode> children;

  bool operator==(const LocationProfile&) const = default;
};

// Contents of profile.json: the merged tree plus per-location subtotals.
struct Profile {
  std::vector<ProfileNode> children;
  std::vector<LocationProfile> per_location;

  bool operator==(const Profile&) const = default;
};

struct LocationTree {
  LocationId location;
  std::string label;
  CallTree tree;
};

// Children are ordered by region id at every level.
std::vector<ProfileNode> to_nodes(const CallTree& tree);

// Merges location trees by identical region-id path.
Profile build_profile(const std::vector<LocationTree>& locations);

inline constexpr const char* kProfileFile = "profile.json";

void write_profile(const std::filesystem::path& file, const Profile& profile);
Profile read_profile(const std::filesystem::path& file);

}  // namespace tracelet::profile
