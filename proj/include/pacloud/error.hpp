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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pacloud {

enum class Errc {
  malformed_version,
  malformed_package_id,
  malformed_use_flag,
  malformed_atom,
  malformed_build_key,
  unbalanced_parenthesis,
  dangling_conditional,
  unsupported_ebuild_construct,
  empty_input,
  duplicate_version,
  missing_package,
  no_matching_version,
  conflicting_atoms,
  not_installed,
  still_required,
  store_unreachable,
  malformed_manifest,
  malformed_category_document,
  malformed_document,
  unknown_package,
  unknown_version,
  io_error,
  malformed_config_line,
  invalid_config,
  missing_server_url,
  usage_error,
  protocol_error,
  transport_error,
  build_failed,
  timeout_error,
  unpack_error,
  unknown_machine,
  invalid_argument,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_version: return "MalformedVersion";
    case Errc::malformed_package_id: return "MalformedPackageId";
    case Errc::malformed_use_flag: return "MalformedUseFlag";
    case Errc::malformed_atom: return "MalformedAtom";
    case Errc::malformed_build_key: return "MalformedBuildKey";
    case Errc::unbalanced_parenthesis: return "UnbalancedParenthesis";
    case Errc::dangling_conditional: return "DanglingConditional";
    case Errc::unsupported_ebuild_construct: return "UnsupportedEbuildConstruct";
    case Errc::empty_input: return "EmptyInput";
    case Errc::duplicate_version: return "DuplicateVersion";
    case Errc::missing_package: return "MissingPackage";
    case Errc::no_matching_version: return "NoMatchingVersion";
    case Errc::conflicting_atoms: return "ConflictingAtoms";
    case Errc::not_installed: return "NotInstalled";
    case Errc::still_required: return "StillRequired";
    case Errc::store_unreachable: return "StoreUnreachable";
    case Errc::malformed_manifest: return "MalformedManifest";
    case Errc::malformed_category_document: return "MalformedCategoryDocument";
    case Errc::malformed_document: return "MalformedDocument";
    case Errc::unknown_package: return "UnknownPackage";
    case Errc::unknown_version: return "UnknownVersion";
    case Errc::io_error: return "IoError";
    case Errc::malformed_config_line: return "MalformedConfigLine";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::missing_server_url: return "MissingServerUrl";
    case Errc::usage_error: return "UsageError";
    case Errc::protocol_error: return "ProtocolError";
    case Errc::transport_error: return "TransportError";
    case Errc::build_failed: return "BuildFailed";
    case Errc::timeout_error: return "TimeoutError";
    case Errc::unpack_error: return "UnpackError";
    case Errc::unknown_machine: return "UnknownMachine";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure
/// class; `line()` is set for errors tied to a position in a text input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Error(Errc code, std::size_t line, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + " (line " + std::to_string(line) +
                           "): " + message),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace pacloud
