// Copyright 2026 The Pacloud Authors
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

#include <string>
#include <string_view>

#include "json.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/farm.hpp"

namespace pacloud {

// Package request protocol. One UTF-8 JSON document each way:
//   request:  {"package":"<category/name>","version":"<version>","useflags":[sorted...]}
//   response: {"status":"available"|"pending"|"failed","url":...,"error":...}

inline std::string encode_request(const BuildKey& key) {
  nlohmann::ordered_json doc;
  doc["package"] = key.package.str();
  doc["version"] = key.version.str();
  doc["useflags"] = nlohmann::ordered_json::array();
  for (const auto& f : key.useflags) doc["useflags"].push_back(f);
  return doc.dump();
}

inline BuildKey decode_request(std::string_view body) {
  try {
    auto doc = nlohmann::json::parse(body);
    BuildKey key;
    key.package = parse_package_id(doc.at("package").get<std::string>());
    key.version = parse_version(doc.at("version").get<std::string>());
    key.useflags = UseFlagSet::from(doc.at("useflags").get<std::vector<std::string>>());
    return key;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::protocol_error, std::string("bad request document: ") + e.what());
  } catch (const Error& e) {
    throw Error(Errc::protocol_error, std::string("bad request document: ") + e.what());
  }
}

inline std::string encode_response(const Response& r) {
  nlohmann::ordered_json doc;
  switch (r.status) {
    case ResponseStatus::available: doc["status"] = "available"; break;
    case ResponseStatus::pending: doc["status"] = "pending"; break;
    case ResponseStatus::failed: doc["status"] = "failed"; break;
  }
  if (r.url) doc["url"] = *r.url;
  if (r.error) doc["error"] = *r.error;
  return doc.dump();
}

inline Response decode_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::protocol_error, std::string("undecodable response: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("status") || !doc["status"].is_string()) {
    throw Error(Errc::protocol_error, "response has no \"status\" field");
  }
  auto text_field = [&](const char* name) -> std::optional<std::string> {
    if (!doc.contains(name)) return std::nullopt;
    if (!doc[name].is_string()) throw Error(Errc::protocol_error, std::string("\"") + name + "\" must be a string");
    return doc[name].get<std::string>();
  };
  const auto status = doc["status"].get<std::string>();
  if (status == "available") {
    auto url = text_field("url");
    if (!url) throw Error(Errc::protocol_error, "available response without \"url\"");
    return Response{ResponseStatus::available, url, std::nullopt};
  }
  if (status == "pending") return Response{ResponseStatus::pending, std::nullopt, std::nullopt};
  if (status == "failed") {
    auto error = text_field("error");
    return Response{ResponseStatus::failed, std::nullopt, error.value_or("")};
  }
  throw Error(Errc::protocol_error, "unknown status \"" + status + "\"");
}

}  // namespace pacloud
