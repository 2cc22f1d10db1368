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

#include "tracelet/profile/call_tree.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tracelet/common/error.hpp"

namespace tracelet::profile {

using nlohmann::json;
using nlohmann::ordered_json;

CallTree::CallTree() { nodes_.emplace_back(); }

CallTree::NodeIndex CallTree::child(NodeIndex parent, RegionId region) {
  auto [it, inserted] = index_.try_emplace(key(parent, region), 0);
  if (!inserted) return it->second;

  const auto index = static_cast<NodeIndex>(nodes_.size());
  it->second = index;
  Node n;
  n.region = region;
  n.parent = parent;
  nodes_.push_back(std::move(n));
  nodes_[parent].children.push_back(index);
  return index;
}

std::uint64_t CallTree::exclusive_ns(NodeIndex index) const {
  const auto& n = nodes_[index];
  std::uint64_t children = 0;
  for (auto c : n.children) children += nodes_[c].inclusive_ns;
  return n.inclusive_ns - children;
}

void CallTree::merge(const CallTree& other) { merge_subtree(other, kRoot, kRoot); }

void CallTree::merge_subtree(const CallTree& other, NodeIndex from, NodeIndex into) {
  for (auto c : other.nodes_[from].children) {
    const auto& src = other.nodes_[c];
    const auto dst = child(into, src.region);
    nodes_[dst].visits += src.visits;
    nodes_[dst].inclusive_ns += src.inclusive_ns;
    merge_subtree(other, c, dst);
  }
}

void Cursor::enter(RegionId region, Timestamp ts) {
  const auto parent = stack_.empty() ? CallTree::kRoot : stack_.back().node;
  stack_.push_back({tree_.child(parent, region), ts});
}

void Cursor::exit(RegionId region, Timestamp ts) {
  if (stack_.empty() || tree_.node(stack_.back().node).region != region) {
    throw Error(ErrorCode::kInternal, "profile cursor received an unmatched exit");
  }
  const auto frame = stack_.back();
  stack_.pop_back();
  auto& n = tree_.node(frame.node);
  n.visits += 1;
  n.inclusive_ns += ts.ns - frame.entered.ns;
}

std::size_t Cursor::close_open(Timestamp ts) {
  const auto count = stack_.size();
  while (!stack_.empty()) exit(tree_.node(stack_.back().node).region, ts);
  return count;
}

namespace {

ProfileNode to_node(const CallTree& tree, CallTree::NodeIndex index) {
  const auto& n = tree.node(index);
  ProfileNode out{n.region, n.visits, n.inclusive_ns, tree.exclusive_ns(index), {}};
  out.children.reserve(n.children.size());
  for (auto c : n.children) out.children.push_back(to_node(tree, c));
  std::ranges::sort(out.children, {}, [](const ProfileNode& p) { return p.region; });
  return out;
}

ordered_json node_json(const ProfileNode& n) {
  ordered_json j;
  j["region"] = n.region.value;
  j["visits"] = n.visits;
  j["inclusive_ns"] = n.inclusive_ns;
  j["exclusive_ns"] = n.exclusive_ns;
  j["children"] = ordered_json::array();
  for (const auto& c : n.children) j["children"].push_back(node_json(c));
  return j;
}

ordered_json root_json(const std::vector<ProfileNode>& children) {
  ordered_json root;
  root["children"] = ordered_json::array();
  for (const auto& c : children) root["children"].push_back(node_json(c));
  return root;
}

[[noreturn]] void bad_profile(const std::string& what) {
  throw Error(ErrorCode::kParse, std::string(kProfileFile) + ": " + what);
}

std::uint64_t unsigned_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_unsigned()) {
    bad_profile(std::string("field '") + key + "' must be a non-negative integer");
  }
  return it->get<std::uint64_t>();
}

std::uint32_t id_field(const json& j, const char* key) {
  const auto v = unsigned_field(j, key);
  if (v > std::numeric_limits<std::uint32_t>::max()) bad_profile("id out of range");
  return static_cast<std::uint32_t>(v);
}

std::vector<ProfileNode> parse_children(const json& holder) {
  auto it = holder.find("children");
  if (it == holder.end() || !it->is_array()) bad_profile("missing 'children' array");
  std::vector<ProfileNode> out;
  out.reserve(it->size());
  for (const auto& c : *it) {
    if (!c.is_object()) bad_profile("tree node is not an object");
    ProfileNode n;
    n.region = RegionId{id_field(c, "region")};
    n.visits = unsigned_field(c, "visits");
    n.inclusive_ns = unsigned_field(c, "inclusive_ns");
    n.exclusive_ns = unsigned_field(c, "exclusive_ns");
    n.children = parse_children(c);
    out.push_back(std::move(n));
  }
  return out;
}

const json& object_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_object()) bad_profile(std::string("missing '") + key + "' object");
  return *it;
}

}  // namespace

std::vector<ProfileNode> to_nodes(const CallTree& tree) {
  return to_node(tree, CallTree::kRoot).children;
}

Profile build_profile(const std::vector<LocationTree>& locations) {
  CallTree merged;
  Profile profile;
  for (const auto& loc : locations) {
    merged.merge(loc.tree);
    profile.per_location.push_back({loc.location, loc.label, to_nodes(loc.tree)});
  }
  profile.children = to_nodes(merged);
  return profile;
}

void write_profile(const std::filesystem::path& file, const Profile& profile) {
  ordered_json doc;
  doc["root"] = root_json(profile.children);
  doc["per_location"] = ordered_json::array();
  for (const auto& loc : profile.per_location) {
    ordered_json j;
    j["location"] = loc.location.value;
    j["label"] = loc.label;
    j["root"] = root_json(loc.children);
    doc["per_location"].push_back(std::move(j));
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << doc.dump() << '\n';
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + file.string());
}

Profile read_profile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) bad_profile("not a JSON object");

  Profile profile;
  profile.children = parse_children(object_field(doc, "root"));
  if (auto it = doc.find("per_location"); it != doc.end()) {
    if (!it->is_array()) bad_profile("'per_location' must be an array");
    for (const auto& loc : *it) {
      if (!loc.is_object()) bad_profile("per_location entry is not an object");
      LocationProfile lp;
      lp.location = LocationId{id_field(loc, "location")};
      auto label = loc.find("label");
      if (label != loc.end() && label->is_string()) lp.label = label->get<std::string>();
      lp.children = parse_children(object_field(loc, "root"));
      profile.per_location.push_back(std::move(lp));
    }
  }
  return profile;
}

}  // namespace tracelet::profile
