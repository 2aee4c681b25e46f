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

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include "pacloud/db/lock.hpp"
#include "pacloud/util/fs.hpp"
#include "pacloud/util/tar.hpp"
#include "support.hpp"

using namespace pacloud;
using pacloud::testing::TempDir;

TEST(Tar, RoundTrip) {
  std::vector<tar::Entry> entries{
      {"usr/bin/tool", "#!/bin/sh\necho hi\n", 0755},
      {"usr/share/doc/empty", "", 0644},
      {"usr/lib/big.so", std::string(1500, 'x'), 0644},
  };
  auto bytes = tar::write(entries);
  EXPECT_EQ(bytes.size() % 512, 0u);
  EXPECT_EQ(tar::read(bytes), entries);
  EXPECT_EQ(tar::write(entries), bytes);  // deterministic
}

TEST(Tar, LongPathsUseThePrefixField) {
  std::string dir(120, 'd');
  tar::Entry e{dir + "/" + std::string(90, 'f'), "x", 0644};
  EXPECT_EQ(tar::read(tar::write({e})), std::vector<tar::Entry>{e});
  EXPECT_THROW(tar::write({{std::string(300, 'a'), "", 0644}}), Error);
}

TEST(Tar, RejectsUnsafeOrDamagedArchives) {
  EXPECT_THROW(tar::write({{"../etc/passwd", "", 0644}}), Error);
  EXPECT_THROW(tar::write({{"/abs", "", 0644}}), Error);

  auto good = tar::write({{"a/b", "hello", 0644}});
  auto corrupt = good;
  corrupt[0] = 'z';
  EXPECT_THROW(tar::read(corrupt), Error);
  EXPECT_THROW(tar::read(good.substr(0, 600)), Error);
  EXPECT_THROW(tar::read(""), Error);
}

TEST(Tar, ReadableBySystemTar) {
  if (std::system("tar --version > /dev/null 2>&1") != 0) GTEST_SKIP() << "no tar binary";
  TempDir dir;
  fsutil::write_file_atomic(dir / "a.tar", tar::write({{"x/y.txt", "content\n", 0644}}));
  const auto cmd = "tar -xf " + (dir / "a.tar").string() + " -C " + dir.path().string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(fsutil::read_file(dir / "x/y.txt"), "content\n");
}

TEST(Fs, EscapeRoundTrip) {
  EXPECT_EQ(fsutil::escape_key("sys-libs/ncurses-6.1-r2[]"), "sys-libs%2Fncurses-6.1-r2[]");
  EXPECT_EQ(fsutil::escape_key("a%2Fb"), "a%252Fb");
  std::mt19937 rng(7);
  const std::string alphabet = "ab/%2F5-[]";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (int n = std::uniform_int_distribution<int>(0, 12)(rng); n > 0; --n) {
      s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    const auto escaped = fsutil::escape_key(s);
    EXPECT_EQ(escaped.find('/'), std::string::npos);
    EXPECT_EQ(fsutil::unescape_key(escaped), s);
  }
}

TEST(Fs, AtomicWriteAndPrune) {
  TempDir dir;
  fsutil::write_file_atomic(dir / "a/b/c/file", "1");
  fsutil::write_file_atomic(dir / "a/keep", "2");
  EXPECT_EQ(fsutil::read_file(dir / "a/b/c/file"), "1");
  EXPECT_FALSE(std::filesystem::exists(dir / "a/b/c/file.tmp"));
  std::filesystem::remove(dir / "a/b/c/file");
  fsutil::prune_empty_parents(dir / "a/b/c", dir.path());
  EXPECT_FALSE(std::filesystem::exists(dir / "a/b"));
  EXPECT_TRUE(std::filesystem::exists(dir / "a/keep"));
  EXPECT_FALSE(fsutil::read_file(dir / "missing"));
}

TEST(Lock, WritersAreSerialised) {
  TempDir dir;
  std::atomic<bool> second_held{false};
  std::thread other;
  {
    DbWriteLock first(dir.path());
    other = std::thread([&] {
      DbWriteLock second(dir.path());
      second_held = true;
    });
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    EXPECT_FALSE(second_held);
  }
  other.join();
  EXPECT_TRUE(second_held);
}
