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
#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "pacloud/error.hpp"

namespace pacloud::tar {

struct Entry {
  std::string path;  // relative, '/' separated
  std::string content;
  std::uint32_t mode = 0644;

  friend bool operator==(const Entry&, const Entry&) = default;
};

namespace detail {

constexpr std::size_t kBlock = 512;

inline void put_octal(char* field, std::size_t width, std::uint64_t value) {
  // width - 1 digits followed by NUL
  std::string digits(width - 1, '0');
  for (std::size_t i = width - 1; i-- > 0 && value;) {
    digits[i] = static_cast<char>('0' + (value & 7));
    value >>= 3;
  }
  std::memcpy(field, digits.data(), width - 1);
  field[width - 1] = '\0';
}

inline std::uint64_t get_octal(const char* field, std::size_t width) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    char c = field[i];
    if (c == '\0' || c == ' ') {
      if (value != 0 || i > 0) break;
      continue;
    }
    if (c < '0' || c > '7') throw Error(Errc::unpack_error, "corrupt octal field in tar header");
    value = (value << 3) | static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

inline std::uint32_t header_checksum(const char* header) {
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i < kBlock; ++i) {
    sum += (i >= 148 && i < 156) ? static_cast<unsigned char>(' ') : static_cast<unsigned char>(header[i]);
  }
  return sum;
}

inline bool is_safe_path(std::string_view path) {
  if (path.empty() || path.front() == '/') return false;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto slash = path.find('/', start);
    auto part = path.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
    if (part == "..") return false;
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return true;
}

}  // namespace detail

/// Deterministic POSIX ustar archive: fixed owner, mtime 0.
inline std::string write(const std::vector<Entry>& entries) {
  using detail::kBlock;
  std::string out;
  for (const auto& e : entries) {
    if (!detail::is_safe_path(e.path)) throw Error(Errc::invalid_argument, "unsafe archive path \"" + e.path + "\"");
    std::array<char, kBlock> h{};
    std::string_view name = e.path;
    std::string_view prefix;
    if (name.size() > 100) {
      auto split = name.rfind('/', 155);
      if (split == std::string_view::npos || name.size() - split - 1 > 100) {
        throw Error(Errc::invalid_argument, "archive path too long: " + e.path);
      }
      prefix = name.substr(0, split);
      name = name.substr(split + 1);
    }
    std::memcpy(h.data(), name.data(), name.size());
    detail::put_octal(h.data() + 100, 8, e.mode);
    detail::put_octal(h.data() + 108, 8, 0);
    detail::put_octal(h.data() + 116, 8, 0);
    detail::put_octal(h.data() + 124, 12, e.content.size());
    detail::put_octal(h.data() + 136, 12, 0);
    h[156] = '0';
    std::memcpy(h.data() + 257, "ustar", 6);
    std::memcpy(h.data() + 263, "00", 2);
    std::memcpy(h.data() + 265, "root", 4);
    std::memcpy(h.data() + 297, "root", 4);
    std::memcpy(h.data() + 345, prefix.data(), prefix.size());
    detail::put_octal(h.data() + 148, 7, detail::header_checksum(h.data()));
    h[155] = ' ';
    out.append(h.data(), kBlock);
    out += e.content;
    out.append((kBlock - e.content.size() % kBlock) % kBlock, '\0');
  }
  out.append(2 * kBlock, '\0');
  return out;
}

/// Regular files only; directory entries are skipped. Anything else, a bad
/// checksum, truncation, or a path escaping the archive root is an UnpackError.
inline std::vector<Entry> read(std::string_view archive) {
  using detail::kBlock;
  std::vector<Entry> entries;
  std::size_t pos = 0;
  while (true) {
    if (pos + kBlock > archive.size()) throw Error(Errc::unpack_error, "truncated tar archive");
    const char* h = archive.data() + pos;
    if (std::all_of(h, h + kBlock, [](char c) { return c == '\0'; })) return entries;
    auto stored = static_cast<std::uint32_t>(detail::get_octal(h + 148, 8));
    if (stored != detail::header_checksum(h)) throw Error(Errc::unpack_error, "tar header checksum mismatch");
    auto size = detail::get_octal(h + 124, 12);
    char type = h[156];
    std::string name(h, strnlen(h, 100));
    std::string prefix(h + 345, strnlen(h + 345, 155));
    std::string path = prefix.empty() ? name : prefix + "/" + name;
    pos += kBlock;
    if (pos + size > archive.size()) throw Error(Errc::unpack_error, "truncated tar entry " + path);
    if (type == '0' || type == '\0') {
      if (!detail::is_safe_path(path)) throw Error(Errc::unpack_error, "unsafe path in archive: " + path);
      entries.push_back(Entry{path, std::string(archive.substr(pos, size)),
                              static_cast<std::uint32_t>(detail::get_octal(h + 100, 8))});
    } else if (type != '5') {
      throw Error(Errc::unpack_error, "unsupported tar entry type '" + std::string(1, type) + "' for " + path);
    }
    pos += size + (kBlock - size % kBlock) % kBlock;
  }
}

}  // namespace pacloud::tar
