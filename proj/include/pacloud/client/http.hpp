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

#include <httplib.h>

#include <memory>
#include <string>
#include <string_view>

#include "pacloud/client/transport.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

namespace detail {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // no trailing slash
};

inline SplitUrl split_http_url(std::string_view url) {
  if (!url.starts_with("http://") && !url.starts_with("https://")) {
    throw Error(Errc::invalid_config, "not an http url: \"" + std::string(url) + "\"");
  }
  const auto host_start = url.find("://") + 3;
  const auto slash = url.find('/', host_start);
  SplitUrl out;
  out.origin = std::string(url.substr(0, slash));
  out.path = slash == std::string_view::npos ? "" : std::string(url.substr(slash));
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

inline std::string percent_encode_path(std::string_view path) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : path) {
    if (std::isalnum(c) || c == '/' || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

}  // namespace detail

/// POSTs request documents to the farm's api_url.
class HttpTransport final : public FarmTransport {
 public:
  explicit HttpTransport(std::string_view api_url) : url_(detail::split_http_url(api_url)), client_(url_.origin) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(60);
  }

  std::string exchange(const std::string& request_body) override {
    auto res = client_.Post(url_.path.empty() ? "/" : url_.path, request_body, "application/json");
    if (!res) throw Error(Errc::transport_error, url_.origin + url_.path + ": " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw Error(Errc::transport_error, url_.origin + url_.path + ": HTTP " + std::to_string(res->status));
    }
    return res->body;
  }

 private:
  detail::SplitUrl url_;
  httplib::Client client_;
};

/// Reads store paths relative to an http store_url.
class HttpStore final : public RemoteStore {
 public:
  explicit HttpStore(std::string_view store_url) : url_(detail::split_http_url(store_url)), client_(url_.origin) {
    client_.set_connection_timeout(10);
    client_.set_read_timeout(300);
  }

  std::optional<std::string> fetch(std::string_view path) override {
    auto res = client_.Get(url_.path + "/" + detail::percent_encode_path(path));
    if (!res) throw Error(Errc::store_unreachable, url_.origin + url_.path + ": " + httplib::to_string(res.error()));
    if (res->status == 404) return std::nullopt;
    if (res->status != 200) {
      throw Error(Errc::store_unreachable, url_.origin + url_.path + ": HTTP " + std::to_string(res->status));
    }
    return res->body;
  }

 private:
  detail::SplitUrl url_;
  httplib::Client client_;
};

/// http(s) urls go over the network; "file://" urls and plain paths are
/// read as a directory.
inline std::unique_ptr<RemoteStore> open_store(std::string_view store_url) {
  if (store_url.starts_with("http://") || store_url.starts_with("https://")) {
    return std::make_unique<HttpStore>(store_url);
  }
  if (store_url.starts_with("file://")) store_url.remove_prefix(7);
  return std::make_unique<DirectoryStore>(std::string(store_url));
}

}  // namespace pacloud
