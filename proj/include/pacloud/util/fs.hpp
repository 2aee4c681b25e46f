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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "pacloud/error.hpp"

namespace pacloud::fsutil {

namespace fs = std::filesystem;

inline std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Write-to-temp then rename, so readers never observe a torn file.
inline void write_file_atomic(const fs::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(Errc::io_error, "cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io_error, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io_error, "cannot rename " + tmp.string() + ": " + ec.message());
}

/// Canonical build keys contain '/', so file names built from them escape
/// '%' and '/' ("sys-libs%2Fncurses-6.1-r2[]").
inline std::string escape_key(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '%') out += "%25";
    else if (c == '/') out += "%2F";
    else out += c;
  }
  return out;
}

inline std::string unescape_key(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 3) == "%2F") {
      out += '/';
      i += 2;
    } else if (text.substr(i, 3) == "%25") {
      out += '%';
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

/// Removes empty directories from `dir` upwards, stopping at `stop`.
inline void prune_empty_parents(fs::path dir, const fs::path& stop) {
  std::error_code ec;
  const auto stop_norm = fs::weakly_canonical(stop, ec);
  while (!dir.empty()) {
    auto norm = fs::weakly_canonical(dir, ec);
    if (ec || norm == stop_norm || !fs::is_directory(norm, ec) || !fs::is_empty(norm, ec)) return;
    if (std::mismatch(stop_norm.begin(), stop_norm.end(), norm.begin(), norm.end()).first != stop_norm.end()) return;
    fs::remove(norm, ec);
    if (ec) return;
    dir = norm.parent_path();
  }
}

}  // namespace pacloud::fsutil
