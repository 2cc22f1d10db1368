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

#include <map>

#include <doctest.h>

#include "tracelet/common/error.hpp"
#include "tracelet/core/config.hpp"

using tracelet::Error;
using tracelet::ErrorCode;
using namespace tracelet::core;

namespace {

EnvLookup fake_env(std::map<std::string, std::string> vars) {
  return [vars = std::move(vars)](const char* name) -> std::optional<std::string> {
    if (auto it = vars.find(name); it != vars.end()) return it->second;
    return std::nullopt;
  };
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("substrate lists") {
  CHECK(parse_substrates("trace,profile") == SubstrateSet{true, true});
  CHECK(parse_substrates(" profile ") == SubstrateSet{false, true});
  CHECK(parse_substrates("none").none());
  CHECK(parse_substrates("profile,trace").names() == std::vector<std::string>{"trace", "profile"});
  CHECK(parse_substrates("none").names() == std::vector<std::string>{"none"});

  CHECK(code_of([] { parse_substrates(""); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { parse_substrates("otf2"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { parse_substrates("none,trace"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("json keys win over environment fallbacks") {
  const auto env = fake_env({{"TRACELET_OUT", "/env/out"},
                             {"TRACELET_SUBSTRATES", "trace"},
                             {"TRACELET_BUFCAP", "17"}});

  const auto from_env = config_from_json("", env);
  CHECK(from_env.output_dir == "/env/out");
  CHECK(from_env.substrates == SubstrateSet{true, false});
  CHECK(from_env.buffer_capacity == 17);

  const auto from_json = config_from_json(
      R"({"substrates":["profile"],"output_dir":"out","instrumenter":"cprofile-hook","buffer_capacity":4096})",
      env);
  CHECK(from_json.output_dir == "out");
  CHECK(from_json.substrates == SubstrateSet{false, true});
  CHECK(from_json.instrumenter_label == "cprofile-hook");
  CHECK(from_json.buffer_capacity == 4096);
}

TEST_CASE("defaults without json or environment") {
  const auto config = config_from_json("", fake_env({}));
  CHECK(config.substrates == SubstrateSet{false, true});
  CHECK(config.buffer_capacity == 4096);
  CHECK(!config.output_dir.empty());
}

TEST_CASE("invalid configs are rejected") {
  const auto env = fake_env({});
  CHECK(code_of([&] { config_from_json("[1,2]", env); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { config_from_json("{not json", env); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { config_from_json(R"({"buffer_capacity":0})", env); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { config_from_json(R"({"buffer_capacity":-3})", env); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { config_from_json(R"({"substrates":[]})", env); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { config_from_json("", fake_env({{"TRACELET_BUFCAP", "12x"}})); }) ==
        ErrorCode::kInvalidArgument);
}
